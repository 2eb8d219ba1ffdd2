# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation loop; mirrors ``lockupsim._reference`` expression for
expression so both backends produce the same trajectories.  Only built-in
friction and disturbance kinds are supported here; scenarios with custom
callables run on the Python loop.
"""

import numpy as np

from libc.math cimport exp, fabs, isfinite, pow, sin

DEF PI = 3.141592653589793

cdef int FRIC_BURCKHARDT = 0
cdef int FRIC_ZERO = 1
cdef int FRIC_TABLE = 2

cdef int DIST_ZERO = 0
cdef int DIST_CONSTANT = 1
cdef int DIST_SINUSOID = 2

cdef int VAR_CONSTANT = 0
cdef int VAR_PHI_P = 1
cdef int VAR_SIGN_PHI_P = 2
cdef int VAR_PHI_ONE = 3

cdef int TERM_T_MAX = 0
cdef int TERM_V_FLOOR = 1
cdef int TERM_LOCKUP = 2
cdef int TERM_NONFINITE = 3


cdef inline double _mu_eval(int kind, double c1, double c2, double c3,
                            double[::1] kl, double[::1] km, double lam) nogil:
    cdef int lo, hi, mid, n
    if kind == FRIC_ZERO:
        return 0.0
    if kind == FRIC_BURCKHARDT:
        return c1 * (1.0 - exp(-c2 * lam)) - c3 * lam
    n = kl.shape[0]
    if lam <= kl[0]:
        return km[0]
    if lam >= kl[n - 1]:
        return km[n - 1]
    lo = 0
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if kl[mid] <= lam:
            lo = mid
        else:
            hi = mid
    return km[lo] + (km[hi] - km[lo]) * ((lam - kl[lo]) / (kl[hi] - kl[lo]))


cdef inline double _dist_v(int kind, double p0, double om_v, double t) nogil:
    if kind == DIST_ZERO:
        return 0.0
    if kind == DIST_CONSTANT:
        return p0
    return p0 * sin(om_v * t)


cdef inline double _dist_w(int kind, double p1, double p2, double om_w,
                           double t) nogil:
    if kind == DIST_ZERO:
        return 0.0
    if kind == DIST_CONSTANT:
        return p1
    return p2 * sin(om_w * t)


def run_loop(ks):
    """Run one scenario described by a flat KernelSpec; same contract as
    ``lockupsim._reference.run_loop``."""
    cdef double dt = ks.dt
    cdef long n_steps = ks.n_steps
    cdef double M = ks.M
    cdef double r = ks.r
    cdef double J = ks.J
    cdef double g_alpha = ks.g_alpha
    cdef double nu = ks.nu

    cdef int ft_kind = ks.fric_true_kind
    cdef double ft_c1 = ks.fric_true_c[0]
    cdef double ft_c2 = ks.fric_true_c[1]
    cdef double ft_c3 = ks.fric_true_c[2]
    cdef double[::1] ft_kl = np.ascontiguousarray(ks.fric_true_knots_lam)
    cdef double[::1] ft_km = np.ascontiguousarray(ks.fric_true_knots_mu)
    cdef int fh_kind = ks.fric_hat_kind
    cdef double fh_c1 = ks.fric_hat_c[0]
    cdef double fh_c2 = ks.fric_hat_c[1]
    cdef double fh_c3 = ks.fric_hat_c[2]
    cdef double[::1] fh_kl = np.ascontiguousarray(ks.fric_hat_knots_lam)
    cdef double[::1] fh_km = np.ascontiguousarray(ks.fric_hat_knots_mu)

    cdef int dist_kind = ks.dist_kind
    if dist_kind > DIST_SINUSOID:
        raise ValueError("compiled kernel cannot run custom disturbances")
    cdef double dp0 = ks.dist_params[0]
    cdef double dp1 = ks.dist_params[1]
    cdef double dp2 = ks.dist_params[2]
    cdef double dp3 = ks.dist_params[3]
    cdef double om_v = 2.0 * PI * dp1 if dist_kind == DIST_SINUSOID else 0.0
    cdef double om_w = 2.0 * PI * dp3 if dist_kind == DIST_SINUSOID else 0.0

    cdef int ideal = ks.ideal
    cdef double tau_f = ks.tau_f
    cdef int n_delay = ks.n_delay
    cdef double decay = exp(-dt / tau_f) if tau_f > 0.0 else 0.0

    cdef int variant = ks.variant
    cdef double T_c = ks.T_c
    cdef double p_exp = ks.p_exp
    cdef double k = ks.k
    cdef double k_a = ks.k_a
    cdef double ups_const = ks.ups_const
    cdef double blayer = ks.boundary_layer
    cdef int clamp_torque = ks.clamp_torque
    cdef double ups_max = ks.ups_max
    cdef int use_ndob = ks.use_ndob
    cdef double nu_hat = ks.nu_hat
    cdef double L_d = ks.L_d

    cdef double thr = ks.lockup_threshold
    cdef double v_floor = ks.v_floor
    cdef int chart = ks.chart
    cdef int stop_on_lockup = ks.stop_on_lockup
    cdef int sustain = ks.sustain_steps

    cols_arr = np.empty((10, n_steps + 1))
    cdef double[:, ::1] cols = cols_arr
    ring_arr = np.zeros(n_delay if n_delay > 0 else 1)
    cdef double[::1] ring = ring_arr

    cdef double v = ks.v0
    cdef double lam = ks.lam0
    cdef double w = ks.v0 * (1.0 - ks.lam0) / r
    cdef double z = ks.z0
    cdef double ups_applied = 0.0
    cdef int ring_i = 0
    cdef long cnt = 0
    cdef long clamps = 0
    cdef int term = TERM_T_MAX
    cdef double u = 0.0

    cdef long i = 0
    cdef double t, lam_now, w_now, lam_c, e, mu_now, mu_hat_now
    cdef double dvd, dwd, d_hat, cmd, ff, delayed, delta_e_now, rw
    cdef double ax, sgn, phi, torque
    cdef double k1v, k1x, k1z, k2v, k2x, k2z, k3v, k3x, k3z, k4v, k4x, k4z

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
        dvd = _dist_v(dist_kind, dp0, om_v, t)
        dwd = _dist_w(dist_kind, dp1, dp2, om_w, t)

        if use_ndob:
            d_hat = z + L_d * e
        else:
            d_hat = 0.0

        # controller (mirrors _reference.control)
        if variant == VAR_PHI_P:
            if e == 0.0:
                u = 0.0
            else:
                ax = -e if e < 0.0 else e
                sgn = -1.0 if e < 0.0 else 1.0
                phi = exp(pow(ax, p_exp)) / p_exp * pow(ax, 1.0 - p_exp) * sgn
                u = -(1.0 / T_c + k * p_exp) * phi
        elif variant == VAR_SIGN_PHI_P:
            if blayer > 0.0 and (-blayer < e < blayer):
                sgn = e / blayer
            else:
                sgn = 0.0 if e == 0.0 else (-1.0 if e < 0.0 else 1.0)
            if e == 0.0:
                phi = 0.0
            else:
                ax = -e if e < 0.0 else e
                phi = exp(pow(ax, p_exp)) / p_exp * pow(ax, 1.0 - p_exp) * (
                    -1.0 if e < 0.0 else 1.0
                )
            u = -k_a * sgn - phi / T_c
        elif variant == VAR_PHI_ONE:
            if e == 0.0:
                u = 0.0
            else:
                ax = -e if e < 0.0 else e
                sgn = -1.0 if e < 0.0 else 1.0
                u = -(1.0 / T_c + k_a) * (exp(ax) * sgn)
        else:
            u = 0.0

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

        if chart == 0:
            k1v, k1x, k1z = _stage0(
                t, v, lam, z, g_alpha, M, r, J, nu, ups_applied, u, use_ndob,
                L_d, nu_hat, ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km,
                fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            k2v, k2x, k2z = _stage0(
                t + 0.5 * dt, v + 0.5 * dt * k1v, lam + 0.5 * dt * k1x,
                z + 0.5 * dt * k1z, g_alpha, M, r, J, nu, ups_applied, u,
                use_ndob, L_d, nu_hat, ft_kind, ft_c1, ft_c2, ft_c3, ft_kl,
                ft_km, fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            k3v, k3x, k3z = _stage0(
                t + 0.5 * dt, v + 0.5 * dt * k2v, lam + 0.5 * dt * k2x,
                z + 0.5 * dt * k2z, g_alpha, M, r, J, nu, ups_applied, u,
                use_ndob, L_d, nu_hat, ft_kind, ft_c1, ft_c2, ft_c3, ft_kl,
                ft_km, fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            k4v, k4x, k4z = _stage0(
                t + dt, v + dt * k3v, lam + dt * k3x, z + dt * k3z,
                g_alpha, M, r, J, nu, ups_applied, u, use_ndob, L_d, nu_hat,
                ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km,
                fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            v = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            lam = lam + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            z = z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
            if not (isfinite(v) and isfinite(lam) and isfinite(z)):
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
            k1v, k1x, k1z = _stage1(
                t, v, w, z, g_alpha, M, r, J, torque, u, use_ndob, L_d,
                ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km,
                fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            k2v, k2x, k2z = _stage1(
                t + 0.5 * dt, v + 0.5 * dt * k1v, w + 0.5 * dt * k1x,
                z + 0.5 * dt * k1z, g_alpha, M, r, J, torque, u, use_ndob,
                L_d, ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km,
                fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            k3v, k3x, k3z = _stage1(
                t + 0.5 * dt, v + 0.5 * dt * k2v, w + 0.5 * dt * k2x,
                z + 0.5 * dt * k2z, g_alpha, M, r, J, torque, u, use_ndob,
                L_d, ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km,
                fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            k4v, k4x, k4z = _stage1(
                t + dt, v + dt * k3v, w + dt * k3x, z + dt * k3z,
                g_alpha, M, r, J, torque, u, use_ndob, L_d,
                ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km,
                fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km,
                dist_kind, dp0, dp1, dp2, om_v, om_w,
            )
            v = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            w = w + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            z = z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
            if not (isfinite(v) and isfinite(w) and isfinite(z)):
                term = TERM_NONFINITE
                break
            if w < 0.0:
                w = 0.0
                clamps += 1
            elif r * w > v:
                w = v / r
                clamps += 1

        i += 1

    return cols_arr, i + 1, term, clamps


cdef inline (double, double, double) _stage0(
    double ts, double vs, double lams, double zs,
    double g_alpha, double M, double r, double J, double nu,
    double ups_applied, double u, int use_ndob, double L_d, double nu_hat,
    int ft_kind, double ft_c1, double ft_c2, double ft_c3,
    double[::1] ft_kl, double[::1] ft_km,
    int fh_kind, double fh_c1, double fh_c2, double fh_c3,
    double[::1] fh_kl, double[::1] fh_km,
    int dist_kind, double dp0, double dp1, double dp2,
    double om_v, double om_w,
) nogil:
    cdef double gam = g_alpha / vs
    cdef double lsc = 0.0 if lams < 0.0 else (1.0 if lams > 1.0 else lams)
    cdef double mus = _mu_eval(ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km, lsc)
    cdef double dvs = _dist_v(dist_kind, dp0, om_v, ts)
    cdef double dws = _dist_w(dist_kind, dp1, dp2, om_w, ts)
    cdef double dv = -g_alpha * mus - dvs / M
    cdef double dlam = gam * (
        (lams - 1.0 - nu) * mus
        + ups_applied
        + r * dws / (J * g_alpha)
        + (lams - 1.0) * dvs / (M * g_alpha)
    )
    cdef double es, pa, dh, mh, dz
    if use_ndob:
        es = lams - 1.0
        pa = L_d * es
        dh = zs + pa
        mh = _mu_eval(fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km, lsc)
        dz = -L_d * zs - L_d * (u - dh + pa + gam * es * mh)
    else:
        dz = 0.0
    return dv, dlam, dz


cdef inline (double, double, double) _stage1(
    double ts, double vs, double ws, double zs,
    double g_alpha, double M, double r, double J, double torque,
    double u, int use_ndob, double L_d,
    int ft_kind, double ft_c1, double ft_c2, double ft_c3,
    double[::1] ft_kl, double[::1] ft_km,
    int fh_kind, double fh_c1, double fh_c2, double fh_c3,
    double[::1] fh_kl, double[::1] fh_km,
    int dist_kind, double dp0, double dp1, double dp2,
    double om_v, double om_w,
) nogil:
    cdef double rws = r * ws
    cdef double lams = (vs - rws) / (vs if vs >= rws else rws)
    cdef double lsc = 0.0 if lams < 0.0 else (1.0 if lams > 1.0 else lams)
    cdef double mus = _mu_eval(ft_kind, ft_c1, ft_c2, ft_c3, ft_kl, ft_km, lsc)
    cdef double dvs = _dist_v(dist_kind, dp0, om_v, ts)
    cdef double dws = _dist_w(dist_kind, dp1, dp2, om_w, ts)
    cdef double dv = -g_alpha * mus - dvs / M
    cdef double dw = M * g_alpha * r / J * mus - torque / J - dws / J
    cdef double es, pa, dh, mh, dz
    if use_ndob:
        es = lams - 1.0
        pa = L_d * es
        dh = zs + pa
        mh = _mu_eval(fh_kind, fh_c1, fh_c2, fh_c3, fh_kl, fh_km, lsc)
        dz = -L_d * zs - L_d * (u - dh + pa + (g_alpha / vs) * es * mh)
    else:
        dz = 0.0
    return dv, dw, dz
