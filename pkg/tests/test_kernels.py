import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from waring import _accel, kernels

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def direct_phase_sums(alphas, values):
    return np.array([np.exp(2j * np.pi * a * np.asarray(values, float)).sum() for a in alphas])


def test_phase_sums_numpy_matches_direct():
    rng = np.random.default_rng(0)
    alphas, values = rng.random(30), rng.integers(0, 10 ** 6, 200)
    got = kernels.phase_sums(alphas, values, backend="numpy")
    assert np.allclose(got, direct_phase_sums(alphas, values), atol=1e-8)


@needs_numba
def test_phase_sums_parity():
    rng = np.random.default_rng(1)
    alphas, values = rng.random(40), rng.integers(0, 10 ** 6, 500)
    a = kernels.phase_sums(alphas, values, backend="numpy")
    b = kernels.phase_sums(alphas, values, backend="numba")
    assert np.allclose(a, b, atol=1e-9)


@needs_numba
def test_residue_phase_sum_parity():
    res = np.arange(0, 997, 3) % 97
    a = kernels.residue_phase_sum(res, 97, backend="numpy")
    b = kernels.residue_phase_sum(res, 97, backend="numba")
    assert abs(a - b) < 1e-10


@needs_numba
def test_cos_series_parity():
    coeffs = np.random.default_rng(2).integers(0, 50, 400).astype(np.int64)
    for lo, hi in ((Fraction(0), Fraction(1, 3)), (Fraction(2, 7), Fraction(5, 9))):
        a = kernels.cos_series_integral(coeffs, lo, hi, backend="numpy")
        b = kernels.cos_series_integral(coeffs, lo, hi, backend="numba")
        assert abs(a - b) < 1e-9 * max(1.0, abs(a))


def test_cos_series_against_exact():
    coeffs = np.array([3, 1, 0, 2, 5], dtype=np.int64)
    lo, hi = Fraction(1, 10), Fraction(7, 10)
    exact = kernels._cos_series_integral_exact(coeffs, lo, hi)
    assert abs(kernels.cos_series_integral(coeffs, lo, hi, backend="numpy") - exact) < 1e-12
    # every term integrates to zero over a full period
    assert abs(kernels.cos_series_integral(coeffs, Fraction(0), Fraction(1), backend="numpy")) < 1e-12


def test_cos_series_huge_denominator_takes_exact_path():
    coeffs = np.ones(50, dtype=np.int64)
    lo, hi = Fraction(1, 2 ** 61 - 1), Fraction(1, 3)
    got = kernels.cos_series_integral(coeffs, lo, hi)
    assert got == pytest.approx(kernels._cos_series_integral_exact(coeffs, lo, hi), abs=1e-12)


def test_disable_flag():
    env = dict(os.environ, WARING_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "import waring; print(waring.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "numpy"


def test_numba_request_without_numba(monkeypatch):
    monkeypatch.setattr(_accel, "HAVE_NUMBA", False)
    with pytest.raises(RuntimeError):
        kernels.phase_sums([0.1], [1, 2], backend="numba")
