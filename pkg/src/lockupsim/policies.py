"""Brake attack controllers acting on the lockup error e_L = slip - 1.

The controller family drives e_L to zero within a configurable settling
time T_c using the scaled exponential stabilizing functions ``phi_p`` and
``phi_one``.  Analytic lower bounds on the robustness gains are provided for
vanishing and non-vanishing (lumped) slip-error disturbances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dynamics import VehicleParams
from .friction import FrictionModel

VARIANTS = ("phi_p", "sign_phi_p", "phi_one", "constant")


def _sign(x: float) -> float:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


def phi_p(x: float, p: float) -> float:
    """exp(|x|^p)/p * |x|^(1-p) * sign(x) for exponent 0 < p < 1.

    Odd, continuous, strictly increasing, zero only at zero.  A feedback
    -phi_p(x)/T_c settles to the origin within T_c from any start.
    """
    if not (0.0 < p < 1.0):
        raise ValueError(f"exponent p must lie in (0, 1), got {p}")
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    if x == 0.0:
        return 0.0
    ax = abs(x)
    return math.exp(ax**p) / p * ax ** (1.0 - p) * _sign(x)


def phi_one(x: float) -> float:
    """exp(|x|) * sign(x); the p -> 1 member of the family."""
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    if x == 0.0:
        return 0.0
    return math.exp(abs(x)) * _sign(x)


def min_gain_vanishing(
    vehicle: VehicleParams, mu_max: float, bound_v: float, v_min: float
) -> float:
    """Lower robustness gain bound against the vanishing slip-error
    disturbance: (M*g_alpha*mu_max + bound_v) / (M*v_min)."""
    if v_min <= 0.0:
        raise ValueError(f"v_min must be positive, got {v_min}")
    return (vehicle.M * vehicle.g_alpha * mu_max + bound_v) / (vehicle.M * v_min)


def min_gain_lumped(
    vehicle: VehicleParams,
    mu_max: float,
    mu_hat_max: float,
    nu_hat: float,
    bound_v: float,
    bound_w: float,
    v_min: float,
) -> float:
    """Lower gain bound against the full lumped disturbance, including model
    mismatch and the torque-channel disturbance.  Always >= the vanishing
    bound for shared arguments."""
    if v_min <= 0.0:
        raise ValueError(f"v_min must be positive, got {v_min}")
    base = min_gain_vanishing(vehicle, mu_max, bound_v, v_min)
    g_alpha = vehicle.g_alpha
    extra = (g_alpha / v_min) * (
        nu_hat * mu_hat_max
        + vehicle.nu * mu_max
        + vehicle.r * bound_w / (vehicle.J * g_alpha)
    )
    return base + extra


def control_phi_p(e_L: float, T_c: float, p: float, k: float) -> float:
    """Smooth predefined-time law -(1/T_c + k*p) * phi_p(e_L)."""
    return -(1.0 / T_c + k * p) * phi_p(e_L, p)


def control_sign_phi_p(
    e_L: float, T_c: float, p: float, k_a: float, boundary_layer: float = 0.0
) -> float:
    """Discontinuous robust law -k_a*sign(e_L) - phi_p(e_L)/T_c.

    Requires 0 < T_c < 1.  With ``boundary_layer`` > 0 the sign term blends
    linearly inside |e_L| < boundary_layer to suppress fixed-step chatter
    (a deviation from the pure law, off by default).
    """
    if not (0.0 < T_c < 1.0):
        raise ValueError(f"this variant requires 0 < T_c < 1, got {T_c}")
    if boundary_layer > 0.0 and abs(e_L) < boundary_layer:
        sgn = e_L / boundary_layer
    else:
        sgn = _sign(e_L)
    return -k_a * sgn - phi_p(e_L, p) / T_c


def control_phi_one(e_L: float, T_c: float, k_a: float) -> float:
    """Robust law -(1/T_c + k_a) * phi_one(e_L); T_c may be any positive
    value."""
    if T_c <= 0.0:
        raise ValueError(f"T_c must be positive, got {T_c}")
    return -(1.0 / T_c + k_a) * phi_one(e_L)


@dataclass(frozen=True)
class AdversaryModel:
    """What the attacker knows: an inertia-ratio estimate, a friction curve
    estimate (possibly zero), an assumed minimum speed during the attack and
    assumed disturbance bounds."""

    nu_hat: float
    mu_hat: FrictionModel = field(default_factory=FrictionModel.zero)
    v_min_assumed: float = 9.0
    bound_v_assumed: float = 0.0
    bound_w_assumed: float = 0.0

    def __post_init__(self):
        if self.nu_hat < 0.0:
            raise ValueError(f"nu_hat must be non-negative, got {self.nu_hat}")
        if self.v_min_assumed <= 0.0:
            raise ValueError(
                f"v_min_assumed must be positive, got {self.v_min_assumed}"
            )


@dataclass(frozen=True)
class AttackPolicy:
    """Controller variant plus gains and the adversary knowledge model.

    ``variant`` is one of phi_p / sign_phi_p / phi_one / constant.  ``k``
    applies to phi_p, ``k_a`` to the other two feedback variants,
    ``upsilon_const`` to the constant-torque baseline.  ``upsilon_max``
    optionally clamps the commanded torque to [0, upsilon_max].
    """

    variant: str
    adversary: AdversaryModel
    T_c: float = 0.95
    p: float = 0.15
    k: float = 0.0
    k_a: float = 0.0
    upsilon_const: float = 10.0
    boundary_layer: float = 0.0
    use_ndob: bool = False
    upsilon_max: float | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(
                f"unknown variant {self.variant!r}; options: {VARIANTS}"
            )
        if self.variant != "constant":
            if self.T_c <= 0.0:
                raise ValueError(f"T_c must be positive, got {self.T_c}")
            if self.variant == "sign_phi_p" and not (0.0 < self.T_c < 1.0):
                raise ValueError(
                    f"sign_phi_p requires 0 < T_c < 1, got {self.T_c}"
                )
        if self.variant in ("phi_p", "sign_phi_p") and not (0.0 < self.p < 1.0):
            raise ValueError(f"exponent p must lie in (0, 1), got {self.p}")
        if self.k < 0.0 or self.k_a < 0.0:
            raise ValueError("gains k and k_a must be non-negative")
        if self.use_ndob and self.variant == "constant":
            raise ValueError("the constant-torque baseline has no observer")
        if self.upsilon_max is not None and self.upsilon_max <= 0.0:
            raise ValueError("upsilon_max must be positive when set")

    def pseudo_control(self, e_L: float) -> float:
        """The slip-error feedback u (1/s); zero for the constant baseline."""
        if self.variant == "phi_p":
            return control_phi_p(e_L, self.T_c, self.p, self.k)
        if self.variant == "sign_phi_p":
            return control_sign_phi_p(
                e_L, self.T_c, self.p, self.k_a, self.boundary_layer
            )
        if self.variant == "phi_one":
            return control_phi_one(e_L, self.T_c, self.k_a)
        return 0.0


def attack_torque(
    u: float,
    v: float,
    lam: float,
    adversary: AdversaryModel,
    g_alpha: float,
    d_hat: float | None = None,
) -> float:
    """Commanded dimensionless brake torque realizing the feedback u.

    The observer output, when present, enters the same channel as u so that
    the closed-loop slip-error dynamics see exactly u + (disturbance) - d_hat:
    command = (v/g_alpha)*(u - d_hat) + nu_hat*mu_hat(lam).
    """
    if not (math.isfinite(u) and math.isfinite(v) and math.isfinite(lam)):
        raise ValueError("attack torque inputs must be finite")
    ff = u if d_hat is None else u - d_hat
    return (v / g_alpha) * ff + adversary.nu_hat * adversary.mu_hat.mu(lam)
