"""Fixed-step simulation of plant, actuator and observer with event
detection and per-run metrics.

The hot loop exists twice: a compiled Cython kernel (``lockupsim._core``)
and a pure-Python reference (``lockupsim._reference``).  The compiled kernel
is preferred when it is importable and the scenario uses only built-in
friction and disturbance kinds; the ``LOCKUPSIM_BACKEND`` environment
variable or the ``backend=`` argument force a choice.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import _reference
from .actuator import BrakeActuator
from .dynamics import DisturbanceSpec, VehicleParams
from .friction import FrictionModel
from .policies import AttackPolicy

try:
    from . import _core
except ImportError:
    _core = None

COLUMNS = (
    "t",
    "v",
    "omega",
    "lambda",
    "e_L",
    "mu",
    "torque_cmd",
    "torque_applied",
    "d_hat",
    "delta_e_actual",
)

TERMINATIONS = ("t_max", "v_floor", "lockup", "nonfinite")

# consecutive samples at or above the lockup threshold that count as a
# sustained lockup (filters single-sample chatter spikes)
LOCKUP_SUSTAIN_STEPS = 50

_FRIC_KIND = {"burckhardt": 0, "zero": 1, "table": 2}
_DIST_KIND = {"zero": 0, "constant": 1, "sinusoid": 2, "custom": 3}
_VARIANT = {"constant": 0, "phi_p": 1, "sign_phi_p": 2, "phi_one": 3}


class IntegrationError(RuntimeError):
    """A derivative evaluation produced a non-finite value."""


@dataclass(frozen=True)
class ActuatorConfig:
    """Lag time constant and deadtime of the brake response; ``ideal``
    bypasses both (the adversary's design assumption)."""

    tau_f: float = 0.016
    delta_f: float = 0.015
    ideal: bool = False

    def __post_init__(self):
        if self.tau_f < 0.0 or self.delta_f < 0.0:
            raise ValueError("tau_f and delta_f must be non-negative")


@dataclass(frozen=True)
class NdobConfig:
    enabled: bool = False
    L_d: float = 2.65
    init: str = "zero_state"

    def __post_init__(self):
        if self.L_d <= 0.0:
            raise ValueError(f"observer gain L_d must be positive, got {self.L_d}")
        if self.init not in ("zero_output", "zero_state"):
            raise ValueError(f"unknown observer init mode {self.init!r}")


@dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-4
    t_max: float = 3.0
    v0: float = 30.0
    lambda0: float = 0.0
    lockup_threshold: float = 0.99
    v_floor: float = 0.5
    coordinates: str = "v_lambda"
    stop_on_lockup: bool = True

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.t_max <= self.dt:
            raise ValueError("t_max must exceed dt")
        if self.v_floor <= 0.0:
            raise ValueError("v_floor must be positive")
        if self.v0 <= self.v_floor:
            raise ValueError("v0 must exceed v_floor")
        if not (0.0 <= self.lambda0 < self.lockup_threshold <= 1.0):
            raise ValueError(
                "need 0 <= lambda0 < lockup_threshold <= 1, got "
                f"lambda0={self.lambda0}, threshold={self.lockup_threshold}"
            )
        if self.coordinates not in ("v_lambda", "v_omega"):
            raise ValueError(
                f"coordinates must be v_lambda or v_omega, got {self.coordinates!r}"
            )

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))


@dataclass(frozen=True)
class Scenario:
    """Everything one run needs: plant truth, attacker configuration and
    simulation settings."""

    vehicle: VehicleParams
    friction: FrictionModel
    disturbances: DisturbanceSpec
    actuator: ActuatorConfig
    policy: AttackPolicy
    ndob: NdobConfig
    sim: SimConfig

    def __post_init__(self):
        if self.policy.use_ndob != self.ndob.enabled:
            raise ValueError(
                "policy.use_ndob and ndob.enabled disagree; enable the "
                "observer in both places or neither"
            )
        if not self.actuator.ideal and self.actuator.delta_f > 0.0:
            if self.sim.dt > self.actuator.delta_f:
                raise ValueError(
                    "sim.dt exceeds the actuator deadtime; the delay line "
                    "needs at least one slot"
                )


@dataclass
class KernelSpec:
    """Flat, primitive-typed description of a run, shared by both backends."""

    M: float
    r: float
    J: float
    g_alpha: float
    nu: float
    fric_true_kind: int
    fric_true_c: tuple
    fric_true_knots_lam: np.ndarray
    fric_true_knots_mu: np.ndarray
    fric_hat_kind: int
    fric_hat_c: tuple
    fric_hat_knots_lam: np.ndarray
    fric_hat_knots_mu: np.ndarray
    dist_kind: int
    dist_params: tuple
    dist_custom_v: object
    dist_custom_w: object
    bound_v: float
    bound_w: float
    ideal: int
    tau_f: float
    n_delay: int
    variant: int
    T_c: float
    p_exp: float
    k: float
    k_a: float
    ups_const: float
    boundary_layer: float
    clamp_torque: int
    ups_max: float
    use_ndob: int
    nu_hat: float
    L_d: float
    z0: float
    dt: float
    n_steps: int
    v0: float
    lam0: float
    lockup_threshold: float
    v_floor: float
    chart: int
    stop_on_lockup: int
    sustain_steps: int


@dataclass(frozen=True)
class Metrics:
    time_to_lockup: float | None
    success: bool
    final_v: float
    peak_torque_cmd: float
    settling_margin: float | None


@dataclass
class ScenarioResult:
    """Logged time series plus run outcome.  ``columns()`` maps CSV header
    names to the arrays."""

    t: np.ndarray
    v: np.ndarray
    omega: np.ndarray
    lam: np.ndarray
    e_L: np.ndarray
    mu: np.ndarray
    torque_cmd: np.ndarray
    torque_applied: np.ndarray
    d_hat: np.ndarray
    delta_e: np.ndarray
    termination: str
    clamp_events: int
    backend: str
    wall_time: float
    dt: float
    lockup_threshold: float
    T_c: float | None
    ndob_enabled: bool
    failure: str | None = None

    def __len__(self) -> int:
        return len(self.t)

    def columns(self) -> dict[str, np.ndarray]:
        return {
            "t": self.t,
            "v": self.v,
            "omega": self.omega,
            "lambda": self.lam,
            "e_L": self.e_L,
            "mu": self.mu,
            "torque_cmd": self.torque_cmd,
            "torque_applied": self.torque_applied,
            "d_hat": self.d_hat,
            "delta_e_actual": self.delta_e,
        }


def compiled_available() -> bool:
    return _core is not None


def resolve_backend(backend: str | None, kernel_ok: bool = True) -> str:
    """Pick 'compiled' or 'python'.

    Explicit argument wins, then the LOCKUPSIM_BACKEND environment variable,
    then the compiled kernel when present and usable for the scenario.
    """
    choice = backend or os.environ.get("LOCKUPSIM_BACKEND") or "auto"
    if choice not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown backend {choice!r}")
    if choice == "compiled":
        if _core is None:
            raise RuntimeError("compiled kernel is not available")
        if not kernel_ok:
            raise RuntimeError(
                "scenario uses custom callables the compiled kernel cannot run"
            )
        return "compiled"
    if choice == "python":
        return "python"
    return "compiled" if (_core is not None and kernel_ok) else "python"


def rk4_step(derivative_fn, t: float, y, dt: float):
    """One classical Runge-Kutta step for dy/dt = derivative_fn(t, y).

    The state is a 1-D float array (or sequence); raises IntegrationError
    with the offending stage state when a derivative is non-finite.
    """
    y = np.asarray(y, dtype=float)

    def f(ts, ys):
        d = np.asarray(derivative_fn(ts, ys), dtype=float)
        if not np.all(np.isfinite(d)):
            raise IntegrationError(
                f"non-finite derivative {d!r} at t={ts}, state={ys!r}"
            )
        return d

    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _friction_fields(model: FrictionModel):
    kind = _FRIC_KIND[model.kind]
    if model.kind == "burckhardt":
        c = (model.params.c1, model.params.c2, model.params.c3)
    else:
        c = (0.0, 0.0, 0.0)
    kl = np.asarray(model.knots_lam, dtype=float)
    km = np.asarray(model.knots_mu, dtype=float)
    if kl.size == 0:
        kl = np.zeros(2)
        km = np.zeros(2)
        kl[1] = 1.0
    return kind, c, kl, km


def build_kernel_spec(scn: Scenario) -> KernelSpec:
    veh = scn.vehicle
    pol = scn.policy
    sim = scn.sim
    ft = _friction_fields(scn.friction)
    fh = _friction_fields(pol.adversary.mu_hat)
    dist = scn.disturbances
    dist_kind = _DIST_KIND[dist.kind]
    dist_params = tuple(dist.params) + (0.0,) * (4 - len(dist.params))

    if scn.actuator.ideal:
        n_delay = 0
    else:
        # constructing the actuator applies the deadtime rounding rule and
        # its warning exactly once per run
        n_delay = BrakeActuator(
            scn.actuator.tau_f, scn.actuator.delta_f, sim.dt
        ).n_delay

    e_L0 = sim.lambda0 - 1.0
    if scn.ndob.enabled:
        z0 = -scn.ndob.L_d * e_L0 if scn.ndob.init == "zero_output" else 0.0
    else:
        z0 = 0.0

    return KernelSpec(
        M=veh.M,
        r=veh.r,
        J=veh.J,
        g_alpha=veh.g_alpha,
        nu=veh.nu,
        fric_true_kind=ft[0],
        fric_true_c=ft[1],
        fric_true_knots_lam=ft[2],
        fric_true_knots_mu=ft[3],
        fric_hat_kind=fh[0],
        fric_hat_c=fh[1],
        fric_hat_knots_lam=fh[2],
        fric_hat_knots_mu=fh[3],
        dist_kind=dist_kind,
        dist_params=dist_params,
        dist_custom_v=dist.delta_v,
        dist_custom_w=dist.delta_w,
        bound_v=dist.bound_v,
        bound_w=dist.bound_w,
        ideal=int(scn.actuator.ideal),
        tau_f=0.0 if scn.actuator.ideal else scn.actuator.tau_f,
        n_delay=n_delay,
        variant=_VARIANT[pol.variant],
        T_c=pol.T_c,
        p_exp=pol.p,
        k=pol.k,
        k_a=pol.k_a,
        ups_const=pol.upsilon_const,
        boundary_layer=pol.boundary_layer,
        clamp_torque=int(pol.upsilon_max is not None),
        ups_max=pol.upsilon_max if pol.upsilon_max is not None else math.inf,
        use_ndob=int(scn.ndob.enabled),
        nu_hat=pol.adversary.nu_hat,
        L_d=scn.ndob.L_d,
        z0=z0,
        dt=sim.dt,
        n_steps=sim.n_steps,
        v0=sim.v0,
        lam0=sim.lambda0,
        lockup_threshold=sim.lockup_threshold,
        v_floor=sim.v_floor,
        chart=0 if sim.coordinates == "v_lambda" else 1,
        stop_on_lockup=int(sim.stop_on_lockup),
        sustain_steps=LOCKUP_SUSTAIN_STEPS,
    )


def run_scenario(scn: Scenario, backend: str | None = None) -> ScenarioResult:
    """Simulate one scenario and return the logged series and outcome.

    Integration failures (non-finite states) terminate the run and are
    reported on the result rather than raised, so partial series remain
    inspectable.
    """
    ks = build_kernel_spec(scn)
    kernel_ok = ks.dist_kind != _DIST_KIND["custom"]
    chosen = resolve_backend(backend, kernel_ok)
    start = time.perf_counter()
    if chosen == "compiled":
        cols, n, term, clamps = _core.run_loop(ks)
    else:
        cols, n, term, clamps = _reference.run_loop(ks)
    wall = time.perf_counter() - start

    termination = TERMINATIONS[term]
    failure = None
    if termination == "nonfinite":
        failure = (
            f"non-finite state after step {n - 1} "
            f"(t={cols[0, n - 1]!r}, v={cols[1, n - 1]!r}, "
            f"lambda={cols[3, n - 1]!r})"
        )
    data = np.array(cols[:, :n])
    return ScenarioResult(
        t=data[0],
        v=data[1],
        omega=data[2],
        lam=data[3],
        e_L=data[4],
        mu=data[5],
        torque_cmd=data[6],
        torque_applied=data[7],
        d_hat=data[8],
        delta_e=data[9],
        termination=termination,
        clamp_events=clamps,
        backend=chosen,
        wall_time=wall,
        dt=scn.sim.dt,
        lockup_threshold=scn.sim.lockup_threshold,
        T_c=None if scn.policy.variant == "constant" else scn.policy.T_c,
        ndob_enabled=scn.ndob.enabled,
        failure=failure,
    )


def lockup_crossing_time(
    t: np.ndarray, lam: np.ndarray, threshold: float
) -> float | None:
    """First time the slip series reaches the threshold, linearly
    interpolated between samples; None when it never does."""
    idx = np.flatnonzero(lam >= threshold)
    if idx.size == 0:
        return None
    i = int(idx[0])
    if i == 0:
        return float(t[0])
    frac = (threshold - lam[i - 1]) / (lam[i] - lam[i - 1])
    return float(t[i - 1] + (t[i] - t[i - 1]) * frac)


def metrics_from_series(
    t: np.ndarray,
    lam: np.ndarray,
    v: np.ndarray,
    torque_cmd: np.ndarray,
    lockup_threshold: float,
    T_c: float | None = None,
) -> Metrics:
    if len(t) == 0:
        raise ValueError("series is empty")
    ttl = lockup_crossing_time(t, lam, lockup_threshold)
    margin = None
    if ttl is not None and T_c is not None:
        margin = T_c - ttl
    return Metrics(
        time_to_lockup=ttl,
        success=ttl is not None,
        final_v=float(v[-1]),
        peak_torque_cmd=float(np.max(np.abs(torque_cmd))),
        settling_margin=margin,
    )


def compute_metrics(result: ScenarioResult) -> Metrics:
    return metrics_from_series(
        result.t,
        result.lam,
        result.v,
        result.torque_cmd,
        result.lockup_threshold,
        result.T_c,
    )
