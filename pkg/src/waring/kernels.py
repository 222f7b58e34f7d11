"""Hot numeric loops, each with a numba kernel and a numpy fallback.

The dispatchers at the bottom pick the backend from ``waring._accel``; every
dispatcher also takes ``backend="numpy"|"numba"`` so both paths can be
compared directly (see ``benchmarks/bench_kernels.py``).
"""

import math

import numpy as np

from . import _accel

TWO_PI = 2.0 * math.pi

# Rows per chunk in the numpy path; bounds the temporary (chunk x n) matrix.
_CHUNK_ELEMS = 1 << 20


# -- numpy fallbacks ---------------------------------------------------------

def _phase_sums_np(alphas, values):
    out = np.empty(alphas.shape[0], dtype=np.complex128)
    if values.shape[0] == 0:
        out[:] = 0.0
        return out
    vals = values.astype(np.float64)
    rows = max(1, _CHUNK_ELEMS // values.shape[0])
    for start in range(0, alphas.shape[0], rows):
        a = alphas[start:start + rows]
        ph = np.multiply.outer(a, vals)
        ph -= np.floor(ph)
        out[start:start + rows] = np.exp(1j * TWO_PI * ph).sum(axis=1)
    return out


def _residue_phase_sum_np(residues, den):
    if residues.shape[0] == 0:
        return 0.0 + 0.0j
    ang = TWO_PI * (residues.astype(np.float64) / float(den))
    return complex(np.cos(ang).sum(), np.sin(ang).sum())


def _cos_series_integral_np(coeffs, lo_num, lo_den, hi_num, hi_den):
    # sum_{h>=1} c_h * (sin(2 pi h hi) - sin(2 pi h lo)) / (pi h)
    h = np.arange(1, coeffs.shape[0] + 1, dtype=np.int64)
    r_hi = (h * hi_num) % hi_den
    r_lo = (h * lo_num) % lo_den
    s_hi = np.sin(TWO_PI * (r_hi.astype(np.float64) / hi_den))
    s_lo = np.sin(TWO_PI * (r_lo.astype(np.float64) / lo_den))
    return float(np.sum(coeffs * (s_hi - s_lo) / (math.pi * h)))


# -- numba kernels (plain loops; compiled only when numba is present) --------

def _phase_sums_loop(alphas, values):
    n_a = alphas.shape[0]
    n_v = values.shape[0]
    out = np.empty(n_a, dtype=np.complex128)
    for i in range(n_a):
        a = alphas[i]
        re = 0.0
        im = 0.0
        for j in range(n_v):
            t = a * values[j]
            t -= math.floor(t)
            re += math.cos(TWO_PI * t)
            im += math.sin(TWO_PI * t)
        out[i] = complex(re, im)
    return out


def _residue_phase_sum_loop(residues, den):
    re = 0.0
    im = 0.0
    for j in range(residues.shape[0]):
        t = TWO_PI * (residues[j] / den)
        re += math.cos(t)
        im += math.sin(t)
    return complex(re, im)


def _cos_series_integral_loop(coeffs, lo_num, lo_den, hi_num, hi_den):
    total = 0.0
    for i in range(coeffs.shape[0]):
        h = i + 1
        r_hi = (h * hi_num) % hi_den
        r_lo = (h * lo_num) % lo_den
        s_hi = math.sin(TWO_PI * (r_hi / hi_den))
        s_lo = math.sin(TWO_PI * (r_lo / lo_den))
        total += coeffs[i] * (s_hi - s_lo) / (math.pi * h)
    return total


_phase_sums_nb = _accel.njit(_phase_sums_loop)
_residue_phase_sum_nb = _accel.njit(_residue_phase_sum_loop)
_cos_series_integral_nb = _accel.njit(_cos_series_integral_loop)


def _use_numba(backend):
    if backend is None:
        return _accel.HAVE_NUMBA
    if backend == "numba":
        if not _accel.HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable or disabled")
        return True
    if backend == "numpy":
        return False
    raise ValueError(f"unknown backend {backend!r}")


# -- dispatchers -------------------------------------------------------------

def phase_sums(alphas, values, backend=None):
    """Return ``sum_j e(alpha_i * values_j)`` for every alpha in ``alphas``.

    ``values`` are the integer phases (typically ``x**k``); each product is
    reduced mod 1 before the exponential is taken.
    """
    alphas = np.ascontiguousarray(alphas, dtype=np.float64)
    values = np.ascontiguousarray(values, dtype=np.float64)
    if _use_numba(backend):
        return _phase_sums_nb(alphas, values)
    return _phase_sums_np(alphas, values)


def residue_phase_sum(residues, den, backend=None):
    """Return ``sum_j e(residues_j / den)`` with residues already reduced."""
    residues = np.ascontiguousarray(residues, dtype=np.int64)
    if _use_numba(backend):
        return complex(_residue_phase_sum_nb(residues, float(den)))
    return _residue_phase_sum_np(residues, den)


def cos_series_integral(coeffs, lo, hi, backend=None):
    """Integrate ``sum_{h>=1} 2 c_h cos(2 pi h x)`` over ``[lo, hi]``.

    ``coeffs[h-1]`` holds ``c_h``; ``lo`` and ``hi`` are Fractions, and each
    phase ``h * endpoint`` is reduced exactly in integer arithmetic.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    if coeffs.shape[0] == 0 or lo == hi:
        return 0.0
    H = coeffs.shape[0]
    big = max(abs(lo.numerator), abs(hi.numerator), lo.denominator, hi.denominator)
    if H * big >= 2 ** 62:
        return _cos_series_integral_exact(coeffs, lo, hi)
    args = (coeffs, int(lo.numerator), int(lo.denominator),
            int(hi.numerator), int(hi.denominator))
    if _use_numba(backend):
        return float(_cos_series_integral_nb(*args))
    return _cos_series_integral_np(*args)


def _cos_series_integral_exact(coeffs, lo, hi):
    # Python-int phase reduction for endpoints too large for int64 products.
    total = 0.0
    for i, c in enumerate(coeffs):
        if c == 0.0:
            continue
        h = i + 1
        r_hi = (h * hi.numerator) % hi.denominator
        r_lo = (h * lo.numerator) % lo.denominator
        total += c * (math.sin(TWO_PI * r_hi / hi.denominator)
                      - math.sin(TWO_PI * r_lo / lo.denominator)) / (math.pi * h)
    return total
