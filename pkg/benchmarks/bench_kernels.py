"""Compare the compiled and pure-Python RK4 kernels on representative workloads.

Usage::

    python benchmarks/bench_kernels.py [--repeat N]

Reports wall time per call for each backend, the speed-up, and the largest
difference between the two backends' outputs (they implement the same
arithmetic, so the difference should be at round-off level).
"""
import argparse
import time

import numpy as np

from cavlink.constants import mhz
from cavlink.cqed import CavityRates
from cavlink.oracle import IntegrationConfig, PulseSpec, load_kernels
from cavlink.oracle.integrate import pulse_config


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads():
    for label, emit in (("emission (g=κ=50, γ=10 MHz)", CavityRates(mhz(50), mhz(50), 0.0, 0.0, mhz(10))),
                        ("emission (g=100, κ=γ=1 MHz)", CavityRates(mhz(100), mhz(1), 0.0, 0.0, mhz(1)))):
        cfg = IntegrationConfig.for_rates(emit)
        n_emit = int(np.ceil(cfg.horizon / cfg.dt))
        yield (label, n_emit,
               lambda k, e=emit, c=cfg, n=n_emit: k.emission_rk4(e.g, e.kappa, e.gamma, e.kappa_L, c.dt, n))

    scat = CavityRates(mhz(50), mhz(15), mhz(15), 0.0, mhz(3))
    for frac in (1e-2, 1e-3):
        pulse = PulseSpec(frac * scat.kappa)
        pcfg = pulse_config(scat, pulse)
        n = int(np.ceil(pcfg.horizon / pcfg.dt))
        t = -pulse.half_duration + 0.5 * pcfg.dt * np.arange(2 * n + 1)
        drive = np.ascontiguousarray(pulse.amplitude(t))
        yield (f"narrowband scatter (σ=κ·{frac:g})", n,
               lambda k, c=pcfg, d=drive: k.scatter_rk4(scat.g, scat.kappa, scat.gamma, scat.kappa_L,
                                                        0.0, 0.0, c.dt, d))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    try:
        compiled = load_kernels("cython")
    except ImportError:
        print("compiled kernels unavailable; rebuild with `pip install -e . --no-build-isolation`")
        return 1
    python = load_kernels("python")
    print(f"{'workload':34s} {'steps':>9s} {'cython [s]':>11s} {'python [s]':>11s} {'speed-up':>9s} {'max |Δ|':>9s}")
    for name, steps, call in workloads():
        tc, oc = _time(lambda: call(compiled), args.repeat)
        tp, op = _time(lambda: call(python), max(1, args.repeat // 3))
        diff = max(float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) for a, b in zip(oc, op))
        print(f"{name:34s} {steps:9d} {tc:11.4f} {tp:11.4f} {tp / tc:9.1f} {diff:9.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
