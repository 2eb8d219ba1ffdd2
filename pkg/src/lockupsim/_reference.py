"""Pure-Python simulation loop; the reference for the compiled kernel.

Both backends execute the same algorithm with the same operation order:
per step the controller and observer outputs are computed from the current
state, the command passes through the actuator, and the plant (plus observer
state, when enabled) advances one classical Runge-Kutta step with the
command and applied torque held constant across the four stages.

The compiled kernel in ``_core.pyx`` mirrors this file expression for
expression; any change here must be applied there as well.
"""

from __future__ import annotations

import math

import numpy as np

# termination codes shared with the compiled kernel
TERM_T_MAX = 0
TERM_V_FLOOR = 1
TERM_LOCKUP = 2
TERM_NONFINITE = 3

FRIC_BURCKHARDT = 0
FRIC_ZERO = 1
FRIC_TABLE = 2

DIST_ZERO = 0
DIST_CONSTANT = 1
DIST_SINUSOID = 2
DIST_CUSTOM = 3

VAR_CONSTANT = 0
VAR_PHI_P = 1
VAR_SIGN_PHI_P = 2
VAR_PHI_ONE = 3


def _mu_eval(kind, c1, c2, c3, knots_lam, knots_mu, lam):
    if kind == FRIC_ZERO:
        return 0.0
    if kind == FRIC_BURCKHARDT:
        return c1 * (1.0 - math.exp(-c2 * lam)) - c3 * lam
    n = len(knots_lam)
    if lam <= knots_lam[0]:
        return knots_mu[0]
    if lam >= knots_lam[n - 1]:
        return knots_mu[n - 1]
    lo = 0
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if knots_lam[mid] <= lam:
            lo = mid
        else:
            hi = mid
    return knots_mu[lo] + (knots_mu[hi] - knots_mu[lo]) * (
        (lam - knots_lam[lo]) / (knots_lam[hi] - knots_lam[lo])
    )


def run_loop(ks):
    """Run one scenario described by a flat KernelSpec.

    Returns (columns, n_rows, termination, clamp_events) where columns is a
    (10, n_max) array filled for rows [0, n_rows).
    """
    dt = ks.dt
    n_steps = ks.n_steps
    M = ks.M
    r = ks.r
    J = ks.J
    g_alpha = ks.g_alpha
    nu = ks.nu

    ft_kind = ks.fric_true_kind
    ft_c1, ft_c2, ft_c3 = ks.fric_true_c
    ft_kl = ks.fric_true_knots_lam
    ft_km = ks.fric_true_knots_mu
    fh_kind = ks.fric_hat_kind
    fh_c1, fh_c2, fh_c3 = ks.fric_hat_c
    fh_kl = ks.fric_hat_knots_lam
    fh_km = ks.fric_hat_knots_mu

    dist_kind = ks.dist_kind
    dp = ks.dist_params
    om_v = 2.0 * math.pi * dp[1] if dist_kind == DIST_SINUSOID else 0.0
    om_w = 2.0 * math.pi * dp[3] if dist_kind == DIST_SINUSOID else 0.0
    custom_v = ks.dist_custom_v
    custom_w = ks.dist_custom_w
    bound_v = ks.bound_v
    bound_w = ks.bound_w

    ideal = ks.ideal
    tau_f = ks.tau_f
    n_delay = ks.n_delay
    decay = math.exp(-dt / tau_f) if tau_f > 0.0 else 0.0

    variant = ks.variant
    T_c = ks.T_c
    p_exp = ks.p_exp
    k = ks.k
    k_a = ks.k_a
    ups_const = ks.ups_const
    blayer = ks.boundary_layer
    clamp_torque = ks.clamp_torque
    ups_max = ks.ups_max
    use_ndob = ks.use_ndob
    nu_hat = ks.nu_hat
    L_d = ks.L_d

    thr = ks.lockup_threshold
    v_floor = ks.v_floor
    chart = ks.chart
    stop_on_lockup = ks.stop_on_lockup
    sustain = ks.sustain_steps

    def dist_v(t, v):
        if dist_kind == DIST_ZERO:
            return 0.0
        if dist_kind == DIST_CONSTANT:
            return dp[0]
        if dist_kind == DIST_SINUSOID:
            return dp[0] * math.sin(om_v * t)
        return custom_v(t, v)

    def dist_w(t, w):
        if dist_kind == DIST_ZERO:
            return 0.0
        if dist_kind == DIST_CONSTANT:
            return dp[1]
        if dist_kind == DIST_SINUSOID:
            return dp[2] * math.sin(om_w * t)
        return custom_w(t, w)

    def control(e):
        if variant == VAR_PHI_P:
            if e == 0.0:
                return 0.0
            ax = -e if e < 0.0 else e
            sgn = -1.0 if e < 0.0 else 1.0
            phi = math.exp(ax**p_exp) / p_exp * ax ** (1.0 - p_exp) * sgn
            return -(1.0 / T_c + k * p_exp) * phi
        if variant == VAR_SIGN_PHI_P:
            if blayer > 0.0 and (-blayer < e < blayer):
                sgn = e / blayer
            else:
                sgn = 0.0 if e == 0.0 else (-1.0 if e < 0.0 else 1.0)
            if e == 0.0:
                phi = 0.0
            else:
                ax = -e if e < 0.0 else e
                s = -1.0 if e < 0.0 else 1.0
                phi = math.exp(ax**p_exp) / p_exp * ax ** (1.0 - p_exp) * s
            return -k_a * sgn - phi / T_c
        if variant == VAR_PHI_ONE:
            if e == 0.0:
                return 0.0
            ax = -e if e < 0.0 else e
            sgn = -1.0 if e < 0.0 else 1.0
            return -(1.0 / T_c + k_a) * (math.exp(ax) * sgn)
        return 0.0

    # state
    v = ks.v0
    lam = ks.lam0
    w = ks.v0 * (1.0 - ks.lam0) / r
    z = ks.z0
    ups_applied = 0.0
    ring = [0.0] * n_delay
    ring_i = 0
    cnt = 0
    clamps = 0
    cols = np.empty((10, n_steps + 1))
    term = TERM_T_MAX
    u = 0.0

    i = 0
    while True:
        t = i * dt
        if chart == 0:
            lam_now = lam
            w_now = v * (1.0 - lam) / r
        else:
            rw = r * w
            lam_now = (v - rw) / (v if v >= rw else rw)
            w_now = w
        lam_c = 0.0 if lam_now < 0.0 else (1.0 if lam_now > 1.0 else lam_now)
        e = lam_now - 1.0
        mu_now = _mu_eval(ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km, lam_c)
        mu_hat_now = _mu_eval(fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km, lam_c)
        dvd = dist_v(t, v)
        dwd = dist_w(t, w_now)
        if dist_kind == DIST_CUSTOM and (abs(dvd) > bound_v or abs(dwd) > bound_w):
            raise ValueError(
                f"disturbance sample ({dvd}, {dwd}) at t={t} exceeds declared "
                f"bounds ({bound_v}, {bound_w})"
            )

        if use_ndob:
            d_hat = z + L_d * e
        else:
            d_hat = 0.0
        u = control(e)
        if variant == VAR_CONSTANT:
            cmd = ups_const
        else:
            ff = u - d_hat if use_ndob else u
            cmd = (v / g_alpha) * ff + nu_hat * mu_hat_now
        if clamp_torque:
            if cmd < 0.0:
                cmd = 0.0
            elif cmd > ups_max:
                cmd = ups_max

        if ideal:
            ups_applied = cmd
        else:
            if n_delay > 0:
                delayed = ring[ring_i]
                ring[ring_i] = cmd
                ring_i += 1
                if ring_i == n_delay:
                    ring_i = 0
            else:
                delayed = cmd
            if tau_f > 0.0:
                ups_applied = decay * ups_applied + (1.0 - decay) * delayed
            else:
                ups_applied = delayed

        delta_e_now = (g_alpha / v) * (
            e * (mu_now + dvd / (M * g_alpha))
            + (nu_hat * mu_hat_now - nu * mu_now)
            + r * dwd / (J * g_alpha)
        )

        cols[0, i] = t
        cols[1, i] = v
        cols[2, i] = w_now
        cols[3, i] = lam_now
        cols[4, i] = e
        cols[5, i] = mu_now
        cols[6, i] = cmd
        cols[7, i] = ups_applied
        cols[8, i] = d_hat
        cols[9, i] = delta_e_now

        if v <= v_floor:
            term = TERM_V_FLOOR
            break
        if lam_now >= thr:
            cnt += 1
        else:
            cnt = 0
        if stop_on_lockup and cnt >= sustain:
            term = TERM_LOCKUP
            break
        if i == n_steps:
            term = TERM_T_MAX
            break

        # one RK4 step with u and ups_applied frozen
        if chart == 0:

            def stage(ts, vs, lams, zs):
                gam = g_alpha / vs
                lsc = 0.0 if lams < 0.0 else (1.0 if lams > 1.0 else lams)
                mus = _mu_eval(ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km, lsc)
                dvs = dist_v(ts, vs)
                dws = dist_w(ts, vs * (1.0 - lams) / r)
                dv = -g_alpha * mus - dvs / M
                dlam = gam * (
                    (lams - 1.0 - nu) * mus
                    + ups_applied
                    + r * dws / (J * g_alpha)
                    + (lams - 1.0) * dvs / (M * g_alpha)
                )
                if use_ndob:
                    es = lams - 1.0
                    pa = L_d * es
                    dh = zs + pa
                    mh = _mu_eval(fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km, lsc)
                    dz = -L_d * zs - L_d * (u - dh + pa + gam * es * mh)
                else:
                    dz = 0.0
                return dv, dlam, dz

            k1v, k1x, k1z = stage(t, v, lam, z)
            k2v, k2x, k2z = stage(
                t + 0.5 * dt, v + 0.5 * dt * k1v, lam + 0.5 * dt * k1x,
                z + 0.5 * dt * k1z,
            )
            k3v, k3x, k3z = stage(
                t + 0.5 * dt, v + 0.5 * dt * k2v, lam + 0.5 * dt * k2x,
                z + 0.5 * dt * k2z,
            )
            k4v, k4x, k4z = stage(
                t + dt, v + dt * k3v, lam + dt * k3x, z + dt * k3z
            )
            v = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            lam = lam + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            z = z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
            if not (math.isfinite(v) and math.isfinite(lam) and math.isfinite(z)):
                term = TERM_NONFINITE
                break
            if lam > 1.0:
                lam = 1.0
                clamps += 1
            elif lam < 0.0:
                lam = 0.0
                clamps += 1
        else:
            torque = ups_applied * J * g_alpha / r

            def stage(ts, vs, ws, zs):
                rws = r * ws
                lams = (vs - rws) / (vs if vs >= rws else rws)
                lsc = 0.0 if lams < 0.0 else (1.0 if lams > 1.0 else lams)
                mus = _mu_eval(ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km, lsc)
                dvs = dist_v(ts, vs)
                dws = dist_w(ts, ws)
                dv = -g_alpha * mus - dvs / M
                dw = M * g_alpha * r / J * mus - torque / J - dws / J
                if use_ndob:
                    es = lams - 1.0
                    pa = L_d * es
                    dh = zs + pa
                    mh = _mu_eval(fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km, lsc)
                    dz = -L_d * zs - L_d * (
                        u - dh + pa + (g_alpha / vs) * es * mh
                    )
                else:
                    dz = 0.0
                return dv, dw, dz

            k1v, k1x, k1z = stage(t, v, w, z)
            k2v, k2x, k2z = stage(
                t + 0.5 * dt, v + 0.5 * dt * k1v, w + 0.5 * dt * k1x,
                z + 0.5 * dt * k1z,
            )
            k3v, k3x, k3z = stage(
                t + 0.5 * dt, v + 0.5 * dt * k2v, w + 0.5 * dt * k2x,
                z + 0.5 * dt * k2z,
            )
            k4v, k4x, k4z = stage(
                t + dt, v + dt * k3v, w + dt * k3x, z + dt * k3z
            )
            v = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            w = w + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            z = z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
            if not (math.isfinite(v) and math.isfinite(w) and math.isfinite(z)):
                term = TERM_NONFINITE
                break
            if w < 0.0:
                w = 0.0
                clamps += 1
            elif r * w > v:
                w = v / r
                clamps += 1

        i += 1

    return cols, i + 1, term, clamps
