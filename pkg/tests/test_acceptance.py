"""Acceptance suite: the nine primary exit criteria, each printing one
pass/fail line.  Run with ``pytest tests/test_acceptance.py -s`` to see the
lines on success; tolerances are pinned here and nowhere else."""

import math
import time

import numpy as np
import pytest

from lockupsim import (
    ActuatorConfig,
    AdversaryModel,
    AttackPolicy,
    DisturbanceSpec,
    FrictionModel,
    NdobConfig,
    Scenario,
    SimConfig,
    VehicleParams,
    min_gain_lumped,
    min_gain_vanishing,
    run_scenario,
)
from lockupsim.config import five_attacks_suite, from_overrides
from lockupsim.engine import lockup_crossing_time
from lockupsim.observer import track_constant_disturbance
from lockupsim.policies import control_phi_p
from lockupsim.scenario_io import write_csv

VEHICLE = VehicleParams(M=250.0, r=0.3, J=1.5)
DRY = FrictionModel.preset("dry_asphalt")

# 0.95-slip crossing times of the observer-assisted suite runs, recorded
# from the first passing build as regression baselines (criterion 4)
CROSSING_BASELINES = {
    ("dry", "phi_p_ndob"): 0.10370073450467089,
    ("dry", "phi_1_ndob"): 1.1686757048342038,
    ("wet", "phi_p_ndob"): 0.09321543436907077,
    ("wet", "phi_1_ndob"): 0.6420407226960458,
}
BASELINE_TOL = 5e-4  # seconds


def report(number: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_1_predefined_time_settling():
    """Perfect-knowledge smooth controller settles within its configured
    time for every (T_c, v0) pair; gain from the vanishing-disturbance bound
    with v_min taken from a pilot run."""
    adversary_road = DRY  # mu_hat equals the true road
    start = time.perf_counter()
    worst_e = 0.0
    worst_margin = math.inf
    for T_c in (0.5, 0.95, 2.0):
        for v0 in (20.0, 30.0, 40.0):
            def scenario(k):
                adv = AdversaryModel(nu_hat=VEHICLE.nu, mu_hat=adversary_road,
                                     v_min_assumed=0.3 * v0)
                pol = AttackPolicy(variant="phi_p", adversary=adv, T_c=T_c,
                                   p=0.15, k=k)
                return Scenario(
                    vehicle=VEHICLE, friction=DRY,
                    disturbances=DisturbanceSpec.zero(),
                    actuator=ActuatorConfig(ideal=True), policy=pol,
                    ndob=NdobConfig(enabled=False),
                    sim=SimConfig(dt=1e-4, t_max=T_c + 0.5, v0=v0,
                                  stop_on_lockup=False),
                )

            pilot = run_scenario(scenario(0.0))
            crossed = np.flatnonzero(pilot.lam >= 0.99)
            assert crossed.size, "pilot run must reach lockup"
            v_lock = float(pilot.v[crossed[0]])
            k_min = min_gain_vanishing(VEHICLE, DRY.mu_max, 0.0, v_lock)

            res = run_scenario(scenario(k_min))
            ttl = lockup_crossing_time(res.t, res.lam, 0.99)
            e_at_tc = abs(float(res.e_L[int(round(T_c / 1e-4))]))
            assert ttl is not None and ttl <= T_c, (T_c, v0, ttl)
            assert e_at_tc <= 1e-2, (T_c, v0, e_at_tc)
            worst_e = max(worst_e, e_at_tc)
            worst_margin = min(worst_margin, T_c - ttl)
    elapsed = time.perf_counter() - start
    report(
        1,
        elapsed < 10.0,
        f"settling within T_c on 3x3 grid, max |e_L(T_c)|={worst_e:.2e}, "
        f"min margin={worst_margin:.3f}s, runtime={elapsed:.2f}s (<10s)",
    )


def _robust_scenario(variant: str, T_c: float) -> Scenario:
    dist = DisturbanceSpec.sinusoid(100.0, 1.0, 10.0, 1.0,
                                    bound_v=100.0, bound_w=10.0)
    v0 = 30.0
    v_min = 0.3 * v0
    adv = AdversaryModel(nu_hat=VEHICLE.nu, mu_hat=FrictionModel.zero(),
                         v_min_assumed=v_min, bound_v_assumed=100.0,
                         bound_w_assumed=10.0)
    k_star = min_gain_lumped(VEHICLE, DRY.mu_max, 0.0, adv.nu_hat,
                             100.0, 10.0, v_min)
    pol = AttackPolicy(variant=variant, adversary=adv, T_c=T_c, p=0.15,
                       k_a=k_star)
    return Scenario(
        vehicle=VEHICLE, friction=DRY, disturbances=dist,
        actuator=ActuatorConfig(ideal=True), policy=pol,
        ndob=NdobConfig(enabled=False),
        sim=SimConfig(dt=1e-4, t_max=T_c + 1.0, v0=v0),
    )


def test_criterion_2_robust_settling_sign_variant():
    """No road knowledge, bounded sinusoidal disturbances, gain from the
    lumped bound: the sign variant settles within T_c = 0.95 s."""
    scn = _robust_scenario("sign_phi_p", 0.95)
    res = run_scenario(scn)
    ttl = lockup_crossing_time(res.t, res.lam, 0.99)
    ok = ttl is not None and ttl <= 0.95
    report(2, ok, f"sign variant with k_a={scn.policy.k_a:.3f} locked at "
                  f"t={ttl:.4f}s <= 0.95s (threshold 0.99)")


def test_criterion_3_arbitrary_settling_time_variant():
    """The exponential variant accepts T_c = 2.0 (forbidden for the sign
    variant) and still settles within it."""
    with pytest.raises(ValueError):
        AttackPolicy(
            variant="sign_phi_p",
            adversary=AdversaryModel(nu_hat=15.0,
                                     mu_hat=FrictionModel.zero(),
                                     v_min_assumed=9.0),
            T_c=2.0,
        )
    scn = _robust_scenario("phi_one", 2.0)
    res = run_scenario(scn)
    ttl = lockup_crossing_time(res.t, res.lam, 0.99)
    ok = ttl is not None and ttl <= 2.0
    report(3, ok, f"exponential variant with T_c=2.0 locked at t={ttl:.4f}s")


def test_criterion_4_five_attacks_pattern():
    """Table parameters exactly: only the two observer-assisted scenarios
    reach slip 0.95 (before the speed floor); the other three never do by
    t_max = 3 s.  Crossing times match the recorded baselines."""
    details = []
    for road in ("dry", "wet"):
        for name, cfg in five_attacks_suite(road):
            scn = cfg.build()
            res = run_scenario(scn)
            t95 = lockup_crossing_time(res.t, res.lam, 0.95)
            if name.endswith("_ndob"):
                assert t95 is not None, (road, name, "expected lockup")
                assert res.termination != "v_floor" or t95 <= res.t[-1]
                base = CROSSING_BASELINES[(road, name)]
                assert abs(t95 - base) <= BASELINE_TOL, (road, name, t95, base)
                details.append(f"{road}/{name}@{t95:.3f}s")
            else:
                assert t95 is None, (road, name, t95)
                assert res.termination == "t_max"
                assert float(res.lam.max()) < 0.95
    report(4, True,
           "observer runs lock, naive/observerless runs never reach 0.95 "
           f"({', '.join(details)})")


def test_criterion_5_observer_tracking():
    """Constant injected disturbance: estimation error decays as
    exp(-L_d t) within 5 percent; the full-run overlay channels are emitted
    for visual comparison."""
    L_d, c = 2.65, -4.0
    t, _, d_hat = track_constant_disturbance(L_d, c, t_end=3.0 / L_d, dt=1e-5)
    err = np.abs(d_hat - c)
    ideal = np.abs(c) * np.exp(-L_d * t)
    mask = ideal > 1e-9
    dev = float(np.max(np.abs(err[mask] - ideal[mask]) / ideal[mask]))
    assert dev <= 0.05

    # overlay emission: observer estimate and independently computed
    # disturbance channel, full run
    import tempfile
    from pathlib import Path

    cfg = from_overrides({"attack": {"variant": "prop3", "use_ndob": True},
                          "ndob": {"enabled": True}})
    res = run_scenario(cfg.build())
    assert np.all(np.isfinite(res.d_hat))
    assert np.all(np.isfinite(res.delta_e))
    with tempfile.TemporaryDirectory() as tmp:
        path = write_csv(res, Path(tmp) / "overlay.csv")
        header = path.read_text().splitlines()[0].split(",")
        assert "d_hat" in header and "delta_e_actual" in header
    tail = slice(len(res) // 2, None)
    sup = float(np.max(np.abs(res.d_hat[tail] - res.delta_e[tail])))
    rng = float(res.delta_e.max() - res.delta_e.min())
    report(5, True,
           f"tracking decay within {dev * 100:.3f}% of exp(-L_d t); overlay "
           f"emitted (tail sup-norm {sup:.3f} = {100 * sup / rng:.1f}% of "
           "disturbance range, reported not asserted)")


def test_criterion_6_coordinate_change_oracle():
    """Speed/wheel-speed and speed/slip integrations agree to 1e-6 in slip
    over one second (smooth policy, ideal actuator)."""
    results = {}
    for coords in ("v_lambda", "v_omega"):
        adv = AdversaryModel(nu_hat=VEHICLE.nu, mu_hat=FrictionModel.zero(),
                             v_min_assumed=9.0)
        pol = AttackPolicy(variant="phi_p", adversary=adv, T_c=0.95, p=0.15)
        scn = Scenario(
            vehicle=VEHICLE, friction=DRY,
            disturbances=DisturbanceSpec.zero(),
            actuator=ActuatorConfig(ideal=True), policy=pol,
            ndob=NdobConfig(enabled=False),
            sim=SimConfig(dt=1e-4, t_max=1.0, v0=30.0, coordinates=coords,
                          stop_on_lockup=False),
        )
        results[coords] = run_scenario(scn)
    dlam = float(np.max(np.abs(results["v_lambda"].lam
                               - results["v_omega"].lam)))
    report(6, dlam <= 1e-6,
           f"max slip discrepancy between charts = {dlam:.2e} <= 1e-6 "
           f"(slip reached {results['v_lambda'].lam.max():.3f})")


def test_criterion_7_error_dynamics_identity():
    """Central-difference slip-error rate matches the feedback plus lumped
    disturbance (minus the estimate, when the observer runs) to 10*dt on
    the smooth segment slip in [0.88, 0.98]."""
    dt = 1e-4
    worst = 0.0
    for ndob in (False, True):
        mu_hat = FrictionModel.zero() if ndob else DRY
        adv = AdversaryModel(nu_hat=VEHICLE.nu, mu_hat=mu_hat,
                             v_min_assumed=12.0)
        pol = AttackPolicy(variant="phi_p", adversary=adv, T_c=2.0, p=0.15,
                           use_ndob=ndob)
        scn = Scenario(
            vehicle=VEHICLE, friction=DRY,
            disturbances=DisturbanceSpec.zero(),
            actuator=ActuatorConfig(ideal=True), policy=pol,
            ndob=NdobConfig(enabled=ndob, L_d=2.65),
            sim=SimConfig(dt=dt, t_max=3.0, v0=40.0, stop_on_lockup=False),
        )
        res = run_scenario(scn)
        u = np.array([control_phi_p(e, 2.0, 0.15, 0.0) for e in res.e_L])
        rhs = u + res.delta_e - (res.d_hat if ndob else 0.0)
        fd = (res.lam[2:] - res.lam[:-2]) / (2.0 * dt)
        resid = np.abs(fd - rhs[1:-1])
        window = (res.lam[1:-1] >= 0.88) & (res.lam[1:-1] <= 0.98)
        assert window.sum() > 100
        worst = max(worst, float(resid[window].max()))
    report(7, worst <= 10.0 * dt,
           f"sup residual on smooth segment = {worst:.2e} <= {10 * dt:.0e}")


def test_criterion_8_parameter_consistency():
    """The inertia ratio built from the table masses is exactly 15, and the
    lumped gain bound dominates the vanishing one across configurations."""
    assert VEHICLE.nu == 15.0
    checked = 0
    for mu_max in (0.0, 0.5, 0.804, 1.17):
        for bv in (0.0, 100.0):
            for bw in (0.0, 10.0):
                for v_min in (5.0, 9.0, 10.0, 20.0):
                    for mu_hat_max in (0.0, 0.8):
                        lo = min_gain_vanishing(VEHICLE, mu_max, bv, v_min)
                        hi = min_gain_lumped(VEHICLE, mu_max, mu_hat_max,
                                             15.0, bv, bw, v_min)
                        assert hi >= lo
                        checked += 1
    report(8, True,
           f"nu == 15.0 exactly; gain ordering held on {checked} configs")


def test_criterion_9_numerical_hygiene():
    """Fourth-order convergence on a smooth feedback-free scenario and
    bit-identical reruns."""
    dist = DisturbanceSpec.sinusoid(80.0, 5.0, 8.0, 7.0,
                                    bound_v=100.0, bound_w=10.0)
    adv = AdversaryModel(nu_hat=VEHICLE.nu, mu_hat=FrictionModel.zero(),
                         v_min_assumed=9.0)

    def scenario(dt):
        pol = AttackPolicy(variant="constant", adversary=adv,
                           upsilon_const=8.0, use_ndob=False)
        return Scenario(
            vehicle=VEHICLE, friction=DRY, disturbances=dist,
            actuator=ActuatorConfig(ideal=True), policy=pol,
            ndob=NdobConfig(enabled=False),
            sim=SimConfig(dt=dt, t_max=1.0, v0=30.0, stop_on_lockup=False),
        )

    ref = run_scenario(scenario(1e-5))
    errs = []
    for dt in (2e-3, 1e-3):
        r = run_scenario(scenario(dt))
        errs.append(abs(float(r.lam[-1] - ref.lam[-1]))
                    + abs(float(r.v[-1] - ref.v[-1])))
    ratio = errs[0] / errs[1]
    assert 14.0 <= ratio <= 18.0, ratio

    cfg = from_overrides({"road": {"preset": "wet_asphalt"}})
    ra = run_scenario(cfg.build())
    rb = run_scenario(cfg.build())
    identical = all(np.array_equal(col, rb.columns()[name])
                    for name, col in ra.columns().items())
    assert identical
    report(9, True,
           f"halving dt shrank the error {ratio:.2f}x (expected 14-18); "
           "reruns bit-identical")
