"""Smooth Weyl sums, their decomposition pieces, and pointwise residuals of
the exact decomposition identities.

``alpha`` may be a float or a Fraction.  Fractions are reduced exactly:
the phase of ``n**k`` is ``(p * n**k mod q) / q`` computed in integers, so the
only rounding is in the final cos/sin.
"""

from fractions import Fraction
from math import gcd

import numpy as np

from . import kernels
from .errors import PreconditionError
from .smoothset import (
    SmoothContext,
    enumerate_kernel_divisors,
    enumerate_kernel_divisors_above,
    enumerate_smooth,
    enumerate_vaughan_block,
    primes_upto,
)

_FLOAT_EXACT = 2 ** 53

IDENTITY_RTOL = 1e-9


def phase_sum(alpha, values, k):
    """``sum_{n in values} e(alpha * n**k)``."""
    if not values:
        return 0j
    if isinstance(alpha, (Fraction, int)):
        alpha = Fraction(alpha)
        num, den = alpha.numerator % alpha.denominator, alpha.denominator
        if num == 0:
            return complex(len(values), 0.0)
        res = [(num * pow(n, k, den)) % den for n in values]
        if den < 2 ** 62:
            return kernels.residue_phase_sum(np.asarray(res, dtype=np.int64), den)
        ang = 2 * np.pi * np.array([r / den for r in res])
        return complex(np.cos(ang).sum(), np.sin(ang).sum())
    powers = [n ** k for n in values]
    if max(powers) >= _FLOAT_EXACT:
        raise PreconditionError("n**k exceeds 2**53; pass alpha as a Fraction")
    a = float(alpha)
    a -= np.floor(a)
    return complex(kernels.phase_sums(np.array([a]), np.asarray(powers, dtype=np.float64))[0])


def weyl_sum(alpha, ctx: SmoothContext):
    """The smooth Weyl sum over the R-smooth integers up to P."""
    return phase_sum(alpha, ctx.smooth_set(), ctx.k)


def weyl_sums(alphas, ctx: SmoothContext, backend=None):
    """Vectorised :func:`weyl_sum` over a float array of alphas."""
    powers = np.asarray([x ** ctx.k for x in ctx.smooth_set()], dtype=np.float64)
    a = np.asarray(alphas, dtype=np.float64)
    return kernels.phase_sums(a - np.floor(a), powers, backend=backend)


def f_star_terms(ctx, M, q):
    out = []
    for v in enumerate_smooth(ctx.P, ctx.R):
        if v <= M or gcd(v, q) != 1:
            continue
        out.extend(u * v for u in enumerate_kernel_divisors(Fraction(ctx.P, v), ctx.R, q))
    return out


def f_dagger_terms(ctx, M, q):
    out = []
    for v in enumerate_smooth(min(M, ctx.P), ctx.R):
        if gcd(v, q) != 1:
            continue
        out.extend(u * v for u in enumerate_kernel_divisors(Fraction(ctx.P, v), ctx.R, q))
    return out


def g_star_terms(ctx, m, q, pi):
    out = []
    for w in enumerate_smooth(Fraction(ctx.P, m), pi):
        if gcd(w, q) != 1:
            continue
        out.extend(w * u for u in enumerate_kernel_divisors(Fraction(ctx.P, m * w), ctx.R, q))
    return out


def g_star_split_terms(ctx, m, q, pi):
    # z runs over q-kernel numbers with all primes > pi, x over pi-smooth numbers
    out = []
    for z in enumerate_kernel_divisors_above(Fraction(ctx.P, m), ctx.R, q, pi):
        out.extend(x * z for x in enumerate_smooth(Fraction(ctx.P, m * z), pi))
    return out


def _check_q(q):
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")


def _check_pi(pi, R):
    if pi < 2 or pi > R or primes_upto(pi)[-1] != pi:
        raise PreconditionError(f"pi must be a prime <= R={R}, got {pi}")


def f_star(alpha, ctx, M, q):
    """Part of the Weyl sum whose q-coprime cofactor ``v`` exceeds ``M``."""
    _check_q(q)
    if M < 0:
        raise PreconditionError(f"M must be >= 0, got {M}")
    return phase_sum(alpha, f_star_terms(ctx, M, q), ctx.k)


def f_dagger(alpha, ctx, M, q):
    """Complementary part with ``v <= M``."""
    _check_q(q)
    if M < 0:
        raise PreconditionError(f"M must be >= 0, got {M}")
    return phase_sum(alpha, f_dagger_terms(ctx, M, q), ctx.k)


def g_star(alpha, ctx, m, q, pi):
    """``sum_{w, u} e(alpha (wu)^k)`` over pi-smooth ``w <= P/m`` coprime to
    ``q`` and q-kernel ``u <= P/(mw)``."""
    _check_q(q)
    _check_pi(pi, ctx.R)
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    return phase_sum(alpha, g_star_terms(ctx, m, q, pi), ctx.k)


def g_star_split(alpha, ctx, m, q, pi):
    """The same sum as :func:`g_star`, regrouped by the part ``z`` of the
    q-kernel made of primes above ``pi``."""
    _check_q(q)
    _check_pi(pi, ctx.R)
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    return phase_sum(alpha, g_star_split_terms(ctx, m, q, pi), ctx.k)


def identity_atol(ctx):
    return IDENTITY_RTOL * len(ctx.smooth_set())


def verify_lemma31(alpha, ctx, M, q):
    """``|f - f_star - f_dagger|``."""
    return abs(weyl_sum(alpha, ctx) - f_star(alpha, ctx, M, q) - f_dagger(alpha, ctx, M, q))


def lemma33_rhs(alpha, ctx, M, q):
    total = 0j
    for pi in primes_upto(ctx.R):
        for m in enumerate_vaughan_block(M, pi, ctx.R):
            if gcd(m, q) == 1:
                total += g_star(alpha * m ** ctx.k, ctx, m, q, pi)
    return total


def verify_lemma33(alpha, ctx, M, q):
    """Residual of ``f_star`` against its sum over Vaughan blocks of
    ``g_star`` evaluated at ``alpha * m**k``.  Requires ``M >= R``."""
    if M < ctx.R:
        raise PreconditionError(f"Vaughan regrouping needs M >= R, got M={M}, R={ctx.R}")
    _check_q(q)
    return abs(f_star(alpha, ctx, M, q) - lemma33_rhs(alpha, ctx, M, q))


def verify_lemma41(alpha, ctx, m, q, pi):
    """``|g_star - g_star_split|``."""
    return abs(g_star(alpha, ctx, m, q, pi) - g_star_split(alpha, ctx, m, q, pi))


# -- vectorised residuals over many alphas -------------------------------------

def _sums(alphas, terms, k, backend=None):
    powers = np.asarray([n ** k for n in terms], dtype=np.float64)
    if powers.size and powers.max() >= _FLOAT_EXACT:
        raise PreconditionError("n**k exceeds 2**53; use the Fraction path")
    a = np.asarray(alphas, dtype=np.float64)
    return kernels.phase_sums(a - np.floor(a), powers, backend=backend)


def lemma31_residuals(alphas, ctx, M, q, backend=None):
    k = ctx.k
    f = _sums(alphas, ctx.smooth_set(), k, backend)
    return np.abs(f - _sums(alphas, f_star_terms(ctx, M, q), k, backend)
                  - _sums(alphas, f_dagger_terms(ctx, M, q), k, backend))


def lemma33_terms(ctx, M, q):
    # e(alpha m^k y^k) = e(alpha (m y)^k): the right side as one multiset
    out = []
    for pi in primes_upto(ctx.R):
        for m in enumerate_vaughan_block(M, pi, ctx.R):
            if gcd(m, q) == 1:
                out.extend(m * y for y in g_star_terms(ctx, m, q, pi))
    return out


def lemma33_residuals(alphas, ctx, M, q, backend=None):
    if M < ctx.R:
        raise PreconditionError(f"Vaughan regrouping needs M >= R, got M={M}, R={ctx.R}")
    k = ctx.k
    return np.abs(_sums(alphas, f_star_terms(ctx, M, q), k, backend)
                  - _sums(alphas, lemma33_terms(ctx, M, q), k, backend))


def lemma41_residuals(alphas, ctx, m, q, pi, backend=None):
    _check_pi(pi, ctx.R)
    k = ctx.k
    return np.abs(_sums(alphas, g_star_terms(ctx, m, q, pi), k, backend)
                  - _sums(alphas, g_star_split_terms(ctx, m, q, pi), k, backend))
