import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from waring.errors import PreconditionError
from waring.smoothset import (
    SmoothContext,
    enumerate_kernel_divisors,
    enumerate_kernel_divisors_above,
    enumerate_smooth,
    enumerate_vaughan_block,
    kernel_split,
    prime_factors,
    primes_upto,
    vaughan_factorize,
)


def trial_primes(n):
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    return out


def smooth_oracle(P, R):
    return [n for n in range(1, int(P) + 1) if all(p <= R for p in trial_primes(n))]


def kernel_oracle(P, R, q, pi=1):
    return [n for n in smooth_oracle(P, R) if all(q % p == 0 and p > pi for p in trial_primes(n))]


def block_oracle(M, pi, R):
    return [v for v in smooth_oracle(M * pi, R)
            if v > M and v % pi == 0 and min(trial_primes(v)) >= pi]


# -- examples -------------------------------------------------------------------

def test_smooth_examples():
    assert enumerate_smooth(10, 2) == [1, 2, 4, 8]
    assert enumerate_smooth(10, 11) == list(range(1, 11))
    assert len(enumerate_smooth(100, 5)) == len(smooth_oracle(100, 5)) == 34
    assert enumerate_smooth(0, 5) == []


def test_kernel_examples():
    assert enumerate_kernel_divisors(50, 7, 1) == [1]
    assert enumerate_kernel_divisors(20, 5, 6) == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18]
    assert enumerate_kernel_divisors(10, 2, 10) == [1, 2, 4, 8]


def test_kernel_above_examples():
    assert enumerate_kernel_divisors_above(20, 5, 6, 2) == [1, 3, 9]
    assert enumerate_kernel_divisors_above(20, 5, 6, 5) == [1]
    assert enumerate_kernel_divisors_above(20, 5, 6, 1) == enumerate_kernel_divisors(20, 5, 6)


def test_vaughan_block_examples():
    assert enumerate_vaughan_block(10, 3, 5) == [15, 27]
    assert enumerate_vaughan_block(10, 2, 5) == [12, 16, 18, 20]
    with pytest.raises(PreconditionError):
        enumerate_vaughan_block(5, 7, 5)


def test_kernel_split_examples():
    assert kernel_split(12, 6) == (12, 1)
    assert kernel_split(35, 6) == (1, 35)
    assert kernel_split(1, 97) == (1, 1)


def test_vaughan_factorize_examples():
    assert vaughan_factorize(15, 10, 5) == (3, 15, 1)
    pi, m, w = vaughan_factorize(24, 10, 5)
    assert m * w == 24 and m in enumerate_vaughan_block(10, pi, 5)
    assert all(p <= pi for p in prime_factors(w))
    with pytest.raises(PreconditionError):
        vaughan_factorize(8, 10, 5)
    with pytest.raises(PreconditionError):
        vaughan_factorize(22, 10, 5)


def test_context_validation():
    for bad in [(1, 10, 5), (2, 0, 5), (2, 10, 1)]:
        with pytest.raises(PreconditionError):
            SmoothContext(*bad)


def test_fractional_heights_floor():
    assert enumerate_smooth(Fraction(21, 2), 3) == enumerate_smooth(10, 3)
    assert enumerate_kernel_divisors(Fraction(50, 7), 5, 6) == [1, 2, 3, 4, 6]


def test_primes_upto_matches_trial_division():
    assert primes_upto(100) == [n for n in range(2, 101) if trial_primes(n) == [n]]


# -- exhaustive grids ---------------------------------------------------------------

def test_enumerations_match_oracles_on_grid():
    for P in (1, 7, 30, 64, 100):
        for R in (2, 3, 5, 7, 11):
            assert enumerate_smooth(P, R) == smooth_oracle(P, R)
            for q in (1, 2, 6, 10, 12, 30):
                assert enumerate_kernel_divisors(P, R, q) == kernel_oracle(P, R, q)
                for pi in (1, 2, 3, 5):
                    assert enumerate_kernel_divisors_above(P, R, q, pi) == kernel_oracle(P, R, q, pi)


def test_vaughan_blocks_match_oracle():
    for M in range(1, 30):
        for R in (2, 3, 5, 7):
            for pi in primes_upto(R):
                assert enumerate_vaughan_block(M, pi, R) == block_oracle(M, pi, R)


def test_partition_exhaustive():
    for q in range(1, 21):
        for x in range(1, 201):
            u, v = kernel_split(x, q)
            assert u * v == x and math.gcd(v, q) == 1
            assert u in enumerate_kernel_divisors(Fraction(200, v), 200, q)


def test_vaughan_uniqueness_exhaustive():
    for R in (2, 3, 5, 7):
        smooth = enumerate_smooth(200, R)
        for M in range(R, 51):
            for v in smooth:
                if v <= M:
                    continue
                triples = []
                for pi in primes_upto(R):
                    block = set(enumerate_vaughan_block(M, pi, R))
                    for m in block:
                        if v % m == 0 and all(p <= pi for p in prime_factors(v // m)):
                            triples.append((pi, m, v // m))
                assert triples == [vaughan_factorize(v, M, R)]


def test_cardinality_bound():
    for P in (2, 10, 50, 200):
        for q in range(1, 31):
            omega = len(prime_factors(q))
            assert len(enumerate_kernel_divisors(P, P, q)) <= (math.log2(P) + 1) ** omega


# -- properties ------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(1, 300), st.integers(2, 13), st.integers(2, 13))
def test_smooth_monotone_in_R(P, R1, R2):
    lo, hi = sorted((R1, R2))
    assert set(enumerate_smooth(P, lo)) <= set(enumerate_smooth(P, hi))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 300), st.integers(2, 13), st.integers(1, 60), st.sampled_from([1, 2, 3, 5, 7]))
def test_nested_sets(P, R, q, pi):
    a = set(enumerate_smooth(P, R))
    c = set(enumerate_kernel_divisors(P, R, q))
    cp = set(enumerate_kernel_divisors_above(P, R, q, pi))
    assert cp <= c <= a


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 500), st.integers(2, 13))
def test_sorted_unique_and_smooth(P, R):
    out = enumerate_smooth(P, R)
    assert out == sorted(set(out))
    assert all(max(prime_factors(n), default=1) <= R for n in out)
