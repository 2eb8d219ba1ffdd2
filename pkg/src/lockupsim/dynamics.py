"""Quarter-car longitudinal traction dynamics during braking.

Two coordinate charts are provided for the same physics: (v, omega) with a
dimensionful brake torque input, and (v, lambda) with the dimensionless
torque.  Both restrict to the braking domain v > 0, 0 <= r*omega <= v
(equivalently slip in [0, 1]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .friction import FrictionModel


class DomainError(ValueError):
    """State outside the braking domain."""


class SpeedFloorError(ValueError):
    """Vehicle speed at or below the configured floor; slip dynamics are
    singular at v = 0 so the simulation must halt."""


@dataclass(frozen=True)
class VehicleParams:
    """Quarter-car constants: mass (kg), wheel radius (m), wheel inertia
    (kg m^2), road slope (rad) and gravity (m/s^2)."""

    M: float
    r: float
    J: float
    alpha: float = 0.0
    g: float = 9.81

    def __post_init__(self):
        for name in ("M", "r", "J", "g"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if not abs(self.alpha) < math.pi / 2:
            raise ValueError("slope angle must satisfy |alpha| < pi/2")

    @property
    def g_alpha(self) -> float:
        """Gravity component normal to the road, g*cos(alpha)."""
        return self.g * math.cos(self.alpha)

    @property
    def nu(self) -> float:
        """Vehicle-to-wheel inertia ratio M*r^2/J (dimensionless)."""
        return self.M * self.r * self.r / self.J


class DisturbanceBoundError(ValueError):
    """A sampled disturbance exceeded its declared uniform bound."""


@dataclass(frozen=True)
class DisturbanceSpec:
    """Force disturbance on the speed equation and torque disturbance on the
    wheel equation, each with a declared uniform bound.

    ``delta_v(t, v)`` returns N, ``delta_w(t, omega)`` returns N*m.  Built-in
    kinds (zero, constant, sinusoid) can run in the compiled simulation
    kernel; arbitrary callables fall back to the Python loop.
    """

    delta_v: Callable[[float, float], float]
    delta_w: Callable[[float, float], float]
    bound_v: float = 0.0
    bound_w: float = 0.0
    kind: str = "custom"
    params: tuple = ()

    def __post_init__(self):
        if self.bound_v < 0.0 or self.bound_w < 0.0:
            raise ValueError("disturbance bounds must be non-negative")

    @classmethod
    def zero(cls) -> "DisturbanceSpec":
        return cls(
            delta_v=lambda t, v: 0.0,
            delta_w=lambda t, w: 0.0,
            kind="zero",
        )

    @classmethod
    def constant(
        cls, force: float, torque: float, bound_v: float | None = None,
        bound_w: float | None = None,
    ) -> "DisturbanceSpec":
        bv = abs(force) if bound_v is None else bound_v
        bw = abs(torque) if bound_w is None else bound_w
        if abs(force) > bv or abs(torque) > bw:
            raise ValueError("constant disturbance exceeds its declared bound")
        return cls(
            delta_v=lambda t, v: force,
            delta_w=lambda t, w: torque,
            bound_v=bv,
            bound_w=bw,
            kind="constant",
            params=(force, torque),
        )

    @classmethod
    def sinusoid(
        cls, amp_v: float, freq_v: float, amp_w: float, freq_w: float,
        bound_v: float | None = None, bound_w: float | None = None,
    ) -> "DisturbanceSpec":
        bv = abs(amp_v) if bound_v is None else bound_v
        bw = abs(amp_w) if bound_w is None else bound_w
        if abs(amp_v) > bv or abs(amp_w) > bw:
            raise ValueError("sinusoid amplitude exceeds its declared bound")
        wv = 2.0 * math.pi * freq_v
        ww = 2.0 * math.pi * freq_w
        return cls(
            delta_v=lambda t, v: amp_v * math.sin(wv * t),
            delta_w=lambda t, w: amp_w * math.sin(ww * t),
            bound_v=bv,
            bound_w=bw,
            kind="sinusoid",
            params=(amp_v, freq_v, amp_w, freq_w),
        )

    def sample(self, t: float, v: float, omega: float) -> tuple[float, float]:
        """Evaluate both channels and assert the declared bounds."""
        dv = self.delta_v(t, v)
        dw = self.delta_w(t, omega)
        if abs(dv) > self.bound_v or abs(dw) > self.bound_w:
            raise DisturbanceBoundError(
                f"disturbance sample ({dv}, {dw}) at t={t} exceeds bounds "
                f"({self.bound_v}, {self.bound_w})"
            )
        return dv, dw


@dataclass(frozen=True)
class TractionState:
    """Braking state (speed, slip) with the domain invariant built in."""

    v: float
    lam: float

    def __post_init__(self):
        if not self.v > 0.0:
            raise DomainError(f"speed must be positive, got {self.v}")
        if not (0.0 <= self.lam <= 1.0):
            raise DomainError(f"slip must lie in [0, 1], got {self.lam}")

    def omega(self, r: float) -> float:
        """Wheel rotational speed (rad/s) for wheel radius r."""
        return self.v * (1.0 - self.lam) / r

    @property
    def e_L(self) -> float:
        """Lockup error: slip minus one; zero exactly at wheel lockup."""
        return self.lam - 1.0


def slip_from_speeds(v: float, omega: float, r: float) -> float:
    """Longitudinal slip (v - r*omega)/max(v, r*omega).

    During braking (r*omega <= v) this lies in [0, 1]; the model is undefined
    at standstill.
    """
    if not v > 0.0:
        raise DomainError(f"speed must be positive, got {v}")
    if omega < 0.0:
        raise DomainError(f"wheel speed must be non-negative, got {omega}")
    rw = r * omega
    return (v - rw) / (v if v >= rw else rw)


def speeds_from_slip(state: TractionState, r: float) -> tuple[float, float]:
    """Inverse of :func:`slip_from_speeds` in the braking regime."""
    return (state.v, state.v * (1.0 - state.lam) / r)


def _check_braking_domain(v: float, omega: float, r: float) -> None:
    if not v > 0.0 or omega < 0.0 or r * omega > v * (1.0 + 1e-12):
        raise DomainError(
            f"(v={v}, omega={omega}) outside the braking domain"
        )


def rhs_v_omega(
    t: float,
    v: float,
    omega: float,
    torque: float,
    vehicle: VehicleParams,
    friction: FrictionModel,
    disturbances: DisturbanceSpec,
) -> tuple[float, float]:
    """Time derivatives (dv/dt, domega/dt) with brake torque in N*m."""
    _check_braking_domain(v, omega, vehicle.r)
    lam = slip_from_speeds(v, omega, vehicle.r)
    mu = friction.mu(min(max(lam, 0.0), 1.0))
    dv_dist, dw_dist = disturbances.sample(t, v, omega)
    g_alpha = vehicle.g_alpha
    dv = -g_alpha * mu - dv_dist / vehicle.M
    dw = (
        vehicle.M * g_alpha * vehicle.r / vehicle.J * mu
        - torque / vehicle.J
        - dw_dist / vehicle.J
    )
    return dv, dw


def rhs_v_lambda(
    t: float,
    state: TractionState,
    upsilon_a: float,
    vehicle: VehicleParams,
    friction: FrictionModel,
    disturbances: DisturbanceSpec,
    v_floor: float = 0.5,
) -> tuple[float, float]:
    """Time derivatives (dv/dt, dlambda/dt) with dimensionless brake torque.

    The slip equation divides by v, so speeds at or below ``v_floor`` halt
    the simulation rather than evaluate.
    """
    if state.v <= v_floor:
        raise SpeedFloorError(f"speed {state.v} at or below floor {v_floor}")
    if not math.isfinite(upsilon_a):
        raise ValueError(f"torque must be finite, got {upsilon_a}")
    v, lam = state.v, state.lam
    mu = friction.mu(lam)
    omega = state.omega(vehicle.r)
    dv_dist, dw_dist = disturbances.sample(t, v, omega)
    g_alpha = vehicle.g_alpha
    ups_dw = vehicle.r * dw_dist / (vehicle.J * g_alpha)
    ups_dv = dv_dist / (vehicle.M * g_alpha)
    dv = -g_alpha * mu - dv_dist / vehicle.M
    dlam = (g_alpha / v) * (
        (lam - 1.0 - vehicle.nu) * mu + upsilon_a + ups_dw + (lam - 1.0) * ups_dv
    )
    return dv, dlam


def lumped_disturbance(
    t: float,
    state: TractionState,
    vehicle: VehicleParams,
    friction_true: FrictionModel,
    friction_hat: FrictionModel,
    nu_hat: float,
    disturbances: DisturbanceSpec,
    v_floor: float = 0.5,
) -> float:
    """Aggregate disturbance seen by the slip-error dynamics (1/s).

    Combines the vanishing slip-error term, the model mismatch between the
    adversary's (nu_hat, mu_hat) and the true (nu, mu), and the external
    torque disturbance.  This is the ground truth the disturbance observer
    tries to estimate.
    """
    if state.v <= v_floor:
        raise SpeedFloorError(f"speed {state.v} at or below floor {v_floor}")
    v, lam = state.v, state.lam
    e_L = lam - 1.0
    mu = friction_true.mu(lam)
    mu_hat = friction_hat.mu(lam)
    g_alpha = vehicle.g_alpha
    dv_dist, dw_dist = disturbances.sample(t, v, state.omega(vehicle.r))
    ups_dv = dv_dist / (vehicle.M * g_alpha)
    ups_dw = vehicle.r * dw_dist / (vehicle.J * g_alpha)
    return (g_alpha / v) * (
        e_L * (mu + ups_dv) + (nu_hat * mu_hat - vehicle.nu * mu) + ups_dw
    )


def vanishing_disturbance(
    t: float,
    state: TractionState,
    vehicle: VehicleParams,
    friction: FrictionModel,
    disturbances: DisturbanceSpec,
    v_floor: float = 0.5,
) -> float:
    """The perfect-knowledge slip-error disturbance (1/s); vanishes on the
    lockup manifold."""
    if state.v <= v_floor:
        raise SpeedFloorError(f"speed {state.v} at or below floor {v_floor}")
    v, lam = state.v, state.lam
    mu = friction.mu(lam)
    g_alpha = vehicle.g_alpha
    dv_dist, _ = disturbances.sample(t, v, state.omega(vehicle.r))
    ups_dv = dv_dist / (vehicle.M * g_alpha)
    return (g_alpha / v) * (lam - 1.0) * (mu + ups_dv)
