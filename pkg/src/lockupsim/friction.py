"""Tire-road friction coefficient models over the slip interval [0, 1].

The friction coefficient mu is a continuous function of longitudinal wheel
slip.  Three model kinds are supported:

* ``burckhardt`` -- the three-parameter exponential closed form
  ``mu(lam) = c1*(1 - exp(-c2*lam)) - c3*lam``,
* ``zero``       -- identically zero (an adversary with no road knowledge),
* ``table``      -- piecewise-linear interpolation through (slip, mu) knots.

Every model caches its extrema over [0, 1]; controller gain bounds need a
numeric ``mu_max``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

SLIP_MIN = 0.0
SLIP_MAX = 1.0

# (c1, c2, c3) coefficient presets for the Burckhardt law.
ROAD_PRESETS = {
    "dry_asphalt": (1.28, 23.99, 0.52),
    "wet_asphalt": (0.86, 33.82, 0.35),
}


class FrictionDomainError(ValueError):
    """Slip argument outside the model domain [0, 1]."""


@dataclass(frozen=True)
class BurckhardtParams:
    """Coefficients of the exponential friction law.

    c1 sets the asymptotic peak level, c2 the initial rise rate (per unit
    slip), c3 the linear decay toward full slip.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        if not (self.c1 > 0.0):
            raise ValueError(f"c1 must be positive, got {self.c1}")
        if not (self.c2 > 0.0):
            raise ValueError(f"c2 must be positive, got {self.c2}")
        if not (self.c3 >= 0.0):
            raise ValueError(f"c3 must be non-negative, got {self.c3}")

    def mu(self, lam: float) -> float:
        return self.c1 * (1.0 - math.exp(-self.c2 * lam)) - self.c3 * lam

    def dmu(self, lam: float) -> float:
        return self.c1 * self.c2 * math.exp(-self.c2 * lam) - self.c3


@dataclass(frozen=True)
class FrictionModel:
    """A friction coefficient curve on [0, 1] with cached extrema."""

    kind: str
    params: BurckhardtParams | None = None
    knots_lam: tuple = ()
    knots_mu: tuple = ()
    mu_min: float = field(init=False, default=0.0)
    mu_max: float = field(init=False, default=0.0)
    lam_argmax: float = field(init=False, default=0.0)

    def __post_init__(self):
        if self.kind not in ("burckhardt", "zero", "table"):
            raise ValueError(f"unknown friction model kind {self.kind!r}")
        if self.kind == "burckhardt" and self.params is None:
            raise ValueError("burckhardt model requires coefficients")
        if self.kind == "table":
            if len(self.knots_lam) != len(self.knots_mu) or len(self.knots_lam) < 2:
                raise ValueError("table model needs >= 2 (slip, mu) knots")
            lams = self.knots_lam
            if any(b <= a for a, b in zip(lams, lams[1:])):
                raise ValueError("table knots must have strictly increasing slip")
            if lams[0] < SLIP_MIN or lams[-1] > SLIP_MAX:
                raise ValueError("table knots must lie within [0, 1]")
        lo, hi, arg = mu_extrema(self, 2001)
        object.__setattr__(self, "mu_min", lo)
        object.__setattr__(self, "mu_max", hi)
        object.__setattr__(self, "lam_argmax", arg)

    # -- constructors ------------------------------------------------------

    @classmethod
    def burckhardt(cls, c1: float, c2: float, c3: float) -> "FrictionModel":
        return cls(kind="burckhardt", params=BurckhardtParams(c1, c2, c3))

    @classmethod
    def preset(cls, name: str) -> "FrictionModel":
        try:
            c1, c2, c3 = ROAD_PRESETS[name]
        except KeyError:
            raise ValueError(
                f"unknown road preset {name!r}; options: {sorted(ROAD_PRESETS)}"
            ) from None
        return cls.burckhardt(c1, c2, c3)

    @classmethod
    def zero(cls) -> "FrictionModel":
        return cls(kind="zero")

    @classmethod
    def tabulated(cls, knots) -> "FrictionModel":
        pts = sorted((float(l), float(m)) for l, m in knots)
        return cls(
            kind="table",
            knots_lam=tuple(l for l, _ in pts),
            knots_mu=tuple(m for _, m in pts),
        )

    # -- evaluation --------------------------------------------------------

    def mu(self, lam: float) -> float:
        """Friction coefficient at slip ``lam``; raises outside [0, 1]."""
        if not (SLIP_MIN <= lam <= SLIP_MAX):
            raise FrictionDomainError(f"slip {lam} outside [0, 1]")
        return self._mu_unchecked(lam)

    def _mu_unchecked(self, lam: float) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "burckhardt":
            return self.params.mu(lam)
        return _interp_clamped(self.knots_lam, self.knots_mu, lam)

    @property
    def extrema(self) -> tuple[float, float, float]:
        """(mu_min, mu_max, slip at the maximum) over [0, 1]."""
        return (self.mu_min, self.mu_max, self.lam_argmax)


def _interp_clamped(xs, ys, x: float) -> float:
    if x <= xs[0]:
        return ys[0]
    if x >= xs[-1]:
        return ys[-1]
    # knot lists are short; linear scan keeps this trivially correct
    for i in range(1, len(xs)):
        if x <= xs[i]:
            x0, x1 = xs[i - 1], xs[i]
            y0, y1 = ys[i - 1], ys[i]
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    return ys[-1]


def mu_extrema(model: FrictionModel, grid_points: int) -> tuple[float, float, float]:
    """Extrema of mu over [0, 1] by dense grid scan.

    For the Burckhardt kind the grid maximum is refined by bisection on the
    closed-form derivative, which has a single interior zero (the derivative
    is strictly decreasing in slip).  Returns (mu_min, mu_max, lam_argmax).
    """
    if grid_points < 100:
        raise ValueError("grid_points must be >= 100")

    if model.kind == "zero":
        return (0.0, 0.0, 0.0)

    if model.kind == "table":
        # piecewise linear: extrema occur at knots
        mu_max = max(model.knots_mu)
        mu_min = min(model.knots_mu)
        arg = model.knots_lam[model.knots_mu.index(mu_max)]
        return (mu_min, mu_max, arg)

    f = model._mu_unchecked
    n = grid_points
    best_i = 0
    best = f(0.0)
    worst = best
    for i in range(n):
        lam = i / (n - 1)
        val = f(lam)
        if val > best:
            best, best_i = val, i
        if val < worst:
            worst = val

    lam_arg = best_i / (n - 1)
    p = model.params
    # refine the interior maximum: bisect dmu on the bracketing grid cells
    if 0 < best_i < n - 1 and p.c3 > 0.0:
        lo = (best_i - 1) / (n - 1)
        hi = (best_i + 1) / (n - 1)
        if p.dmu(lo) > 0.0 > p.dmu(hi):
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if p.dmu(mid) > 0.0:
                    lo = mid
                else:
                    hi = mid
            lam_arg = 0.5 * (lo + hi)
            best = f(lam_arg)
    return (worst, best, lam_arg)
