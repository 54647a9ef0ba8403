"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Needs numba installed; each kernel is compiled once before timing.
"""
import argparse
import time

import numpy as np

from braidexp import _kernels
from braidexp.fourier_oracle import closed_form_terms


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(0)
    a, b = rng.standard_normal(4097), rng.standard_normal(4097)
    terms = closed_form_terms(8)
    coefs = np.array([float(r) for r, _, _ in terms])
    pp = np.array([p for _, p, _ in terms], dtype=np.float64)
    npow = np.array([e for _, _, e in terms], dtype=np.float64)
    ns = np.concatenate([np.arange(-100_000, 0), np.arange(1, 100_001)]).astype(np.int64)
    samples = rng.random((1 << 20, 4))
    return [
        ("convolve 4097x4097", _kernels.convolve_numba, _kernels.convolve_numpy, (a, b)),
        ("closed form m=8, 2e5 indices", _kernels.closed_form_numba, _kernels.closed_form_numpy, (ns, coefs, pp, npow)),
        ("abel sum x=1-1e-6", _kernels.abel_numba, _kernels.abel_numpy, (1 - 1e-6, 10**8, 1e-15)),
        ("count ordered 2^20 x 4", _kernels.count_ordered_numba, _kernels.count_ordered_numpy, (samples,)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.convolve_numba is None:
        raise SystemExit("numba is disabled or missing; nothing to compare")
    print(f"{'kernel':32s} {'numba [ms]':>12s} {'numpy [ms]':>12s} {'ratio':>8s}")
    for name, fast, slow, inputs in cases():
        r_fast, r_slow = fast(*inputs), slow(*inputs)  # also triggers compilation
        if isinstance(r_fast, tuple):
            agree = abs(r_fast[0] - r_slow[0]) <= 1e-12 and r_fast[1] == r_slow[1]
        else:
            agree = np.allclose(r_fast, r_slow, rtol=1e-12, atol=1e-12)
        tf = best_of(lambda: fast(*inputs), args.repeat)
        ts = best_of(lambda: slow(*inputs), args.repeat)
        flag = "" if agree else "  MISMATCH"
        print(f"{name:32s} {tf * 1e3:12.3f} {ts * 1e3:12.3f} {ts / tf:8.2f}x{flag}")


if __name__ == "__main__":
    main()
