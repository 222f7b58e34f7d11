"""Enumeration of smooth-number sets and the factorizations behind the
decomposition identities.

Every set is returned as a sorted list of Python ints.  Height arguments may
be ints or Fractions (``P/v`` style heights); membership is ``n <= height``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import PreconditionError


@dataclass(frozen=True)
class SmoothContext:
    """Exponent ``k``, height ``P`` and smoothness bound ``R``."""

    k: int
    P: int
    R: int

    def __post_init__(self):
        if self.k < 2:
            raise PreconditionError(f"k must be >= 2, got {self.k}")
        if self.P < 1:
            raise PreconditionError(f"P must be >= 1, got {self.P}")
        if self.R < 2:
            raise PreconditionError(f"R must be >= 2, got {self.R}")

    def smooth_set(self):
        return enumerate_smooth(self.P, self.R)


def _floor(height):
    if isinstance(height, Fraction):
        return height.numerator // height.denominator
    if isinstance(height, int):
        return height
    return int(np.floor(height))


def primes_upto(n):
    """Primes ``p <= n`` by the sieve of Eratosthenes."""
    n = int(n)
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def prime_factors(n):
    """Distinct prime factors of ``n >= 1`` in ascending order."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def factorize(n):
    """Prime factorization of ``n >= 1`` as a list with multiplicity."""
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_smooth(n, R):
    return n >= 1 and all(p <= R for p in prime_factors(n))


def _products(limit, primes):
    # All n <= limit whose prime factors lie in ``primes`` (1 included).
    if limit < 1:
        return []
    out = [1]
    for p in primes:
        if p > limit:
            break
        new = []
        for x in out:
            y = x * p
            while y <= limit:
                new.append(y)
                y *= p
        out.extend(new)
    out.sort()
    return out


def enumerate_smooth(P, R):
    """The R-smooth integers in ``[1, P]``."""
    limit = _floor(P)
    if limit < 1:
        return []
    return _products(limit, primes_upto(min(_floor(R), limit)))


def enumerate_kernel_divisors(P, R, q):
    """R-smooth ``n <= P`` all of whose primes divide ``q``."""
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    primes = [p for p in prime_factors(q) if p <= R]
    return _products(_floor(P), primes)


def enumerate_kernel_divisors_above(P, R, q, pi):
    """Elements of ``enumerate_kernel_divisors(P, R, q)`` with every prime
    factor exceeding ``pi``.  ``pi = 1`` makes the extra condition vacuous."""
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    if pi < 1:
        raise PreconditionError(f"pi must be a prime or 1, got {pi}")
    primes = [p for p in prime_factors(q) if pi < p <= R]
    return _products(_floor(P), primes)


def enumerate_vaughan_block(M, pi, R):
    """R-smooth ``v`` with ``M < v <= M*pi``, ``pi | v`` and least prime
    factor of ``v`` at least ``pi``."""
    if pi > R or pi < 2 or len(prime_factors(pi)) != 1 or prime_factors(pi)[0] != pi:
        raise PreconditionError(f"pi must be a prime <= R, got pi={pi}, R={R}")
    if M < 1:
        raise PreconditionError(f"M must be >= 1, got {M}")
    primes = [p for p in primes_upto(R) if p >= pi]
    # v = pi * u with u <= M built from primes in [pi, R]
    return [pi * u for u in _products(_floor(M), primes) if pi * u > M]


def kernel_split(x, q):
    """Split ``x = u*v`` with ``u`` the largest divisor of ``x`` whose primes
    all divide ``q``; then ``gcd(v, q) == 1``."""
    if x < 1 or q < 1:
        raise PreconditionError("kernel_split needs x >= 1 and q >= 1")
    u, v = 1, x
    g = gcd(v, q)
    while g > 1:
        v //= g
        u *= g
        g = gcd(v, q)
    return u, v


def vaughan_factorize(v, M, R):
    """Return the unique ``(pi, m, w)`` with ``v = m*w``,
    ``m`` in ``enumerate_vaughan_block(M, pi, R)`` and ``w`` pi-smooth.

    ``m`` is the shortest run of the largest prime factors of ``v`` (taken in
    descending order, with multiplicity) whose product exceeds ``M``.
    """
    if M < R:
        raise PreconditionError(f"need M >= R, got M={M}, R={R}")
    if v <= M:
        raise PreconditionError(f"need v > M, got v={v}, M={M}")
    factors = factorize(v)
    if factors and factors[-1] > R:
        raise PreconditionError(f"{v} is not {R}-smooth")
    m = 1
    pi = None
    for p in reversed(factors):
        m *= p
        pi = p
        if m > M:
            break
    return pi, m, v // m
