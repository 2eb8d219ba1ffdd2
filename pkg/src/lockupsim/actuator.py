"""Frictional brake response: first-order lag plus transport deadtime.

The commanded torque passes through a pure delay of ``delta_f`` seconds and
a first-order lag with time constant ``tau_f``.  The lag update uses the
exact exponential discretization, which is error-free for the zero-order-held
commands produced by the simulation loop.  With tau_f = delta_f = 0 the
actuator is a bit-identical pass-through.
"""

from __future__ import annotations

import math
import warnings


class BrakeActuator:
    """Stateful actuator; one instance per simulation run.

    The deadtime is realized as a ring buffer of past commands sampled at
    ``dt``, rounded to the nearest whole number of samples.
    """

    def __init__(
        self,
        tau_f: float = 0.016,
        delta_f: float = 0.015,
        dt: float = 1e-4,
        initial: float = 0.0,
    ):
        if dt <= 0.0:
            raise ValueError(f"dt must be positive, got {dt}")
        if tau_f < 0.0 or delta_f < 0.0:
            raise ValueError("tau_f and delta_f must be non-negative")
        if delta_f > 0.0 and dt > delta_f:
            raise ValueError(
                f"dt={dt} exceeds deadtime {delta_f}; the delay line needs "
                "at least one slot"
            )
        self.tau_f = tau_f
        self.delta_f = delta_f
        self.dt = dt
        self.n_delay = int(round(delta_f / dt)) if delta_f > 0.0 else 0
        if self.n_delay > 0 and abs(delta_f - self.n_delay * dt) > dt / 10.0:
            warnings.warn(
                f"deadtime {delta_f} s rounded to {self.n_delay} samples of "
                f"{dt} s ({self.n_delay * dt} s)",
                stacklevel=2,
            )
        self._decay = math.exp(-dt / tau_f) if tau_f > 0.0 else 0.0
        self._initial = initial
        self.reset()

    def reset(self) -> None:
        """Release the brake: zero-primed delay line, initial output."""
        self.output = self._initial
        self._ring = [0.0] * self.n_delay
        self._idx = 0

    def step(self, command: float) -> float:
        """Push one command sample, advance the lag by dt, return the
        torque applied over the coming interval."""
        if not math.isfinite(command):
            raise ValueError(f"command must be finite, got {command}")
        if self.n_delay > 0:
            delayed = self._ring[self._idx]
            self._ring[self._idx] = command
            self._idx = (self._idx + 1) % self.n_delay
        else:
            delayed = command
        if self.tau_f > 0.0:
            a = self._decay
            self.output = a * self.output + (1.0 - a) * delayed
        else:
            self.output = delayed
        return self.output
