"""Brake actuator tests: exact lag discretization, deadtime semantics and the
ideal pass-through, cross-checked against a brute-force fine integration."""

import math

import pytest

from lockupsim import BrakeActuator


class TestPassThrough:
    def test_identity_when_ideal(self):
        act = BrakeActuator(tau_f=0.0, delta_f=0.0, dt=1e-3)
        for cmd in (5.0, -3.25, 0.1 + 0.2):
            assert act.step(cmd) == cmd  # bit-identical

    def test_non_finite_rejected(self):
        act = BrakeActuator(tau_f=0.0, delta_f=0.0, dt=1e-3)
        with pytest.raises(ValueError):
            act.step(float("nan"))
        with pytest.raises(ValueError):
            act.step(float("inf"))


class TestLag:
    def test_single_step_value(self):
        act = BrakeActuator(tau_f=0.016, delta_f=0.0, dt=1e-3)
        out = act.step(1.0)
        assert out == pytest.approx(0.060586937186524214, rel=1e-14)
        assert out == pytest.approx(1.0 - math.exp(-1e-3 / 16e-3), rel=1e-15)

    def test_steady_state_decay_is_exact(self):
        # for a held command the discretization must reproduce the
        # exponential approach with no integration error at the samples
        tau, dt, c = 0.016, 1e-3, 7.5
        act = BrakeActuator(tau_f=tau, delta_f=0.0, dt=dt)
        for n in range(1, 200):
            out = act.step(c)
            expected = c * (1.0 - math.exp(-n * dt / tau))
            assert out == pytest.approx(expected, rel=1e-12)
        assert abs(out - c) <= abs(0.0 - c) * math.exp(-199 * dt / tau) * (1 + 1e-9)


class TestDeadtime:
    def test_output_zero_before_deadtime(self):
        act = BrakeActuator(tau_f=0.016, delta_f=0.015, dt=1e-3)
        outs = [act.step(1.0) for _ in range(40)]
        assert all(o == 0.0 for o in outs[:15])
        assert outs[15] == pytest.approx(1.0 - math.exp(-1.0 / 16.0), rel=1e-12)

    def test_against_fine_grained_integration(self):
        # brute-force oracle: integrate tau*y' = -y + u(t - delta) at
        # dt=1e-6 with the same zero-order-held command samples
        tau, delta, dt = 0.016, 0.015, 1e-3
        cmds = [0.0] * 5 + [1.0] * 20 + [-0.5] * 25
        act = BrakeActuator(tau_f=tau, delta_f=delta, dt=dt)
        coarse = [act.step(c) for c in cmds]

        fine_dt = 1e-6
        sub = int(round(dt / fine_dt))
        y = 0.0
        fine = []
        for n, _ in enumerate(cmds):
            for j in range(sub):
                t = n * dt + j * fine_dt
                td = t - delta
                idx = math.floor(td / dt + 1e-12)
                u = 0.0 if idx < 0 else cmds[min(idx, len(cmds) - 1)]
                y += fine_dt * (-y + u) / tau
            fine.append(y)
        for a, b in zip(coarse, fine):
            assert a == pytest.approx(b, abs=5e-4)

    def test_deadtime_rounding_warning(self):
        with pytest.warns(UserWarning):
            BrakeActuator(tau_f=0.0, delta_f=0.0153, dt=1e-3)

    def test_validation(self):
        with pytest.raises(ValueError):
            BrakeActuator(tau_f=0.016, delta_f=0.015, dt=0.0)
        with pytest.raises(ValueError):
            BrakeActuator(tau_f=-1.0, delta_f=0.0, dt=1e-3)
        with pytest.raises(ValueError):
            # delay line would have no slot
            BrakeActuator(tau_f=0.016, delta_f=0.015, dt=0.02)

    def test_reset(self):
        act = BrakeActuator(tau_f=0.016, delta_f=0.002, dt=1e-3)
        act.step(3.0)
        act.step(3.0)
        act.reset()
        assert act.output == 0.0
        assert act.step(1.0) == 0.0  # delay line re-primed with zeros
