"""Benchmark the compiled simulation kernel against the pure-Python loop.

Runs the observer-assisted smooth-controller scenario (the longest-running
configuration of the five-attack suite) to a fixed horizon on each backend,
reports steps/second and the speedup, and cross-checks that the two
trajectories match.

Usage: python benchmarks/backend_benchmark.py [--repeats N]
"""

import argparse
import time

import numpy as np

from lockupsim import compiled_available, run_scenario
from lockupsim.config import from_overrides


def build_scenario():
    cfg = from_overrides(
        {
            "attack": {"variant": "prop1", "use_ndob": True},
            "ndob": {"enabled": True},
            "sim": {"stop_on_lockup": False, "t_max": 3.0},
        }
    )
    return cfg.build()


def time_backend(scenario, backend, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        result = run_scenario(scenario, backend=backend)
        best = min(best, result.wall_time)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    scenario = build_scenario()
    steps = scenario.sim.n_steps

    t_py, r_py = time_backend(scenario, "python", args.repeats)
    print(f"python   : {t_py:8.4f} s  ({steps / t_py:12.0f} steps/s)")

    if not compiled_available():
        print("compiled : not built (pip install -e . with Cython available)")
        return

    t_cy, r_cy = time_backend(scenario, "compiled", args.repeats)
    print(f"compiled : {t_cy:8.4f} s  ({steps / t_cy:12.0f} steps/s)")
    print(f"speedup  : {t_py / t_cy:8.1f} x")

    dlam = np.max(np.abs(r_py.lam - r_cy.lam))
    dv = np.max(np.abs(r_py.v - r_cy.v))
    print(f"max |slip difference|  = {dlam:.3e}")
    print(f"max |speed difference| = {dv:.3e}")
    identical = all(
        np.array_equal(a, b)
        for a, b in zip(r_py.columns().values(), r_cy.columns().values())
    )
    print(f"bit-identical series   = {identical}")


if __name__ == "__main__":
    main()
