"""Time the numpy and numba backends of the hot kernels side by side.

Run with ``python benchmarks/bench_kernels.py``.  The numba column is skipped
when numba is missing or WARING_DISABLE_NUMBA is set.
"""

import time
from fractions import Fraction

import numpy as np

from waring import _accel, kernels
from waring.smoothset import enumerate_smooth


def best_of(fn, repeat=5):
    fn()  # warm-up, also triggers compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    values = np.array([x ** 3 for x in enumerate_smooth(20000, 13)], dtype=np.int64)
    alphas = rng.random(200)
    yield "phase_sums", f"{len(alphas)} alphas x {len(values)} values", \
        lambda b: kernels.phase_sums(alphas, values, backend=b)

    coeffs = rng.integers(0, 100, 200000).astype(np.int64)
    lo, hi = Fraction(3, 17), Fraction(11, 13)
    yield "cos_series_integral", f"{len(coeffs)} terms", \
        lambda b: kernels.cos_series_integral(coeffs, lo, hi, backend=b)

    res = rng.integers(0, 9973, 2_000_000)
    yield "residue_phase_sum", f"{len(res)} residues", \
        lambda b: kernels.residue_phase_sum(res, 9973, backend=b)


def main():
    print(f"{'kernel':<22}{'size':<28}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}")
    for name, size, fn in cases():
        t_np = best_of(lambda: fn("numpy"))
        if _accel.HAVE_NUMBA:
            t_nb = best_of(lambda: fn("numba"))
            print(f"{name:<22}{size:<28}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{name:<22}{size:<28}{t_np:>12.4f}{'n/a':>12}{'':>10}")


if __name__ == "__main__":
    main()
