"""Nonlinear disturbance observer on the wheel slip error dynamics.

The observer estimates the lumped disturbance acting on
``de_L/dt = u + disturbance - d_hat`` so the attack policy can cancel it by
feedforward.  It is a single-state design: with auxiliary variable
``p_a = L_d * e_L`` the estimate is ``d_hat = z_a + p_a`` and the internal
state evolves as

    dz_a/dt = -L_d*z_a - L_d*( u - d_hat + p_a + (g_alpha/v)*e_L*mu_hat(lam) )

which, for a constant disturbance, drives the estimation error to zero
exponentially at rate L_d.  Only attacker-side quantities enter: e_L, u, v,
and the adversary's own friction estimate.  The true road model and the true
inertia ratio are deliberately not inputs.
"""

from __future__ import annotations

import math


def ndob_derivative(
    z_a: float,
    e_L: float,
    u: float,
    v: float,
    g_alpha: float,
    mu_hat_at_lambda: float,
    L_d: float,
    v_floor: float = 0.5,
) -> float:
    """Right-hand side dz_a/dt with p_a and d_hat recomputed from e_L."""
    if L_d <= 0.0:
        raise ValueError(f"observer gain L_d must be positive, got {L_d}")
    if v <= v_floor:
        raise ValueError(f"speed {v} at or below floor {v_floor}")
    p_a = L_d * e_L
    d_hat = z_a + p_a
    return -L_d * z_a - L_d * (
        u - d_hat + p_a + (g_alpha / v) * e_L * mu_hat_at_lambda
    )


class SlipDisturbanceObserver:
    """Stateful observer; one instance per simulation run.

    ``init`` selects the initial internal state: ``zero_state`` starts with
    z_a = 0 (the estimate then starts at L_d*e_L, which preloads the
    feedforward toward the braking disturbance), ``zero_output`` starts with
    d_hat = 0 so the attack begins with no feedforward transient.
    """

    def __init__(self, L_d: float = 2.65, init: str = "zero_state"):
        if L_d <= 0.0:
            raise ValueError(f"observer gain L_d must be positive, got {L_d}")
        if init not in ("zero_output", "zero_state"):
            raise ValueError(f"unknown init mode {init!r}")
        self.L_d = L_d
        self.init = init
        self.z_a = 0.0

    def initial_state(self, e_L0: float) -> float:
        if self.init == "zero_output":
            return -self.L_d * e_L0
        return 0.0

    def reset(self, e_L0: float) -> None:
        self.z_a = self.initial_state(e_L0)

    def d_hat(self, e_L: float) -> float:
        """Disturbance estimate z_a + L_d*e_L (1/s)."""
        return self.z_a + self.L_d * e_L

    def step(
        self,
        e_L: float,
        u: float,
        v: float,
        g_alpha: float,
        mu_hat_at_lambda: float,
        dt: float,
    ) -> float:
        """Advance z_a one step with the inputs held constant (classical
        4-stage Runge-Kutta) and return the refreshed estimate.

        The full simulation co-integrates z_a with the plant state instead;
        this standalone step serves observer-only analyses.
        """
        if dt <= 0.0:
            raise ValueError(f"dt must be positive, got {dt}")

        def f(z):
            return ndob_derivative(z, e_L, u, v, g_alpha, mu_hat_at_lambda, self.L_d)

        z = self.z_a
        k1 = f(z)
        k2 = f(z + 0.5 * dt * k1)
        k3 = f(z + 0.5 * dt * k2)
        k4 = f(z + dt * k3)
        self.z_a = z + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return self.d_hat(e_L)


def track_constant_disturbance(
    L_d: float,
    c: float,
    t_end: float,
    dt: float = 1e-5,
    v: float = 30.0,
    g_alpha: float = 9.81,
):
    """Co-integrate the scalar error dynamics de/dt = c - d_hat with the
    observer (u = 0, mu_hat = 0, e(0) = 0) and return the sampled
    (t, e_L, d_hat) arrays.

    For a constant injected disturbance c the tracking error d_hat - c decays
    as exp(-L_d*t); this is the standard verification experiment for the
    observer gain.
    """
    import numpy as np

    n = int(round(t_end / dt))
    t = np.empty(n + 1)
    e_arr = np.empty(n + 1)
    d_arr = np.empty(n + 1)
    e = 0.0
    z = 0.0  # zero_output init at e(0) = 0

    def rhs(e_s, z_s):
        d_hat = z_s + L_d * e_s
        de = c - d_hat
        dz = ndob_derivative(z_s, e_s, 0.0, v, g_alpha, 0.0, L_d)
        return de, dz

    for i in range(n + 1):
        t[i] = i * dt
        e_arr[i] = e
        d_arr[i] = z + L_d * e
        if i == n:
            break
        k1e, k1z = rhs(e, z)
        k2e, k2z = rhs(e + 0.5 * dt * k1e, z + 0.5 * dt * k1z)
        k3e, k3z = rhs(e + 0.5 * dt * k2e, z + 0.5 * dt * k2z)
        k4e, k4z = rhs(e + dt * k3e, z + dt * k3z)
        e += dt / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e)
        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
        if not (math.isfinite(e) and math.isfinite(z)):
            raise ArithmeticError("observer co-simulation diverged")
    return t, e_arr, d_arr
