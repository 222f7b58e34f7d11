"""Ground-truth computations: complete and arc-restricted moments of the
smooth Weyl sum, representation counts, Gauss sums and truncated singular
series.

Even moments are exact.  Writing ``b[n]`` for the number of ordered
``t``-tuples from the smooth set with ``x_1^k + ... + x_t^k = n``, one has
``|f(alpha)|^{2t} = sum_h c_h e(h alpha)`` with ``c_h = sum_n b[n] b[n+h]``,
so any integral over rational intervals has a closed form.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import kernels
from .arcs import IntervalUnion
from .errors import DEFAULT_BUDGET, BudgetExceeded, ConvergenceError, PreconditionError
from .smoothset import SmoothContext

EXACT_EVEN = "exact-even-count"
FOURIER_EXACT = "fourier-exact"
QUADRATURE = "quadrature"

_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class MomentResult:
    value: float
    method: str
    error_estimate: float = 0.0
    exact: int = None  # integer value when the moment is a solution count


# -- representation-count vectors --------------------------------------------

def power_sum_counts(values, k, t, budget=DEFAULT_BUDGET):
    """``b[n]`` = number of ordered t-tuples from ``values`` with
    ``sum x_i^k = n``, for ``0 <= n <= t * max(values)^k``.

    Uses int64 while ``len(values)**t`` fits, Python ints otherwise.
    """
    if t < 1:
        raise PreconditionError(f"t must be >= 1, got {t}")
    powers = [x ** k for x in values]
    if not powers:
        return np.zeros(1, dtype=np.int64)
    top = max(powers)
    size = t * top + 1
    ops = len(powers) * size * t
    if ops > budget:
        raise BudgetExceeded(ops, budget, "power-sum convolution")
    dtype = np.int64 if len(powers) ** t < _INT64_SAFE else object
    b = np.zeros(1, dtype=dtype)
    b[0] = 1
    for _ in range(t):
        nb = np.zeros(b.shape[0] + top, dtype=dtype)
        for p in powers:
            nb[p:p + b.shape[0]] += b
        b = np.trim_zeros(nb, "b")
    return b


def autocorrelation(b, budget=DEFAULT_BUDGET):
    """``c_h = sum_n b[n] b[n+h]`` for ``h = 0..len(b)-1`` (exact)."""
    n = b.shape[0]
    if n * n > budget:
        raise BudgetExceeded(n * n, budget, "autocorrelation")
    if b.dtype == object or int(b.sum()) ** 2 >= _INT64_SAFE:
        bo = b.astype(object)
        return np.array([int(np.dot(bo[: n - h], bo[h:])) for h in range(n)], dtype=object)
    full = np.correlate(b, b, mode="full")
    return full[n - 1:]


# -- moments --------------------------------------------------------------------

def moment_complete_even(t, ctx: SmoothContext, budget=DEFAULT_BUDGET):
    """``U_{2t}(P,R)``: the number of solutions of
    ``x_1^k+...+x_t^k = y_1^k+...+y_t^k`` in smooth numbers."""
    b = power_sum_counts(ctx.smooth_set(), ctx.k, t, budget)
    exact = int(np.dot(b.astype(object), b.astype(object)))
    return MomentResult(float(exact), EXACT_EVEN, 0.0, exact)


def moment_coefficients(t, ctx, budget=DEFAULT_BUDGET):
    """Fourier coefficients ``c_0, c_1, ...`` of ``|f|^{2t}`` (``c_{-h} = c_h``)."""
    return autocorrelation(power_sum_counts(ctx.smooth_set(), ctx.k, t, budget), budget)


def integrate_cosine_series(c, region: IntervalUnion, backend=None):
    """``integral over region of c_0 + 2 sum_{h>=1} c_h cos(2 pi h x)``."""
    c0 = int(c[0])
    total = float(c0 * region.measure())
    tail = np.asarray(c[1:], dtype=np.float64)
    for lo, hi in region:
        total += kernels.cos_series_integral(tail, lo, hi, backend=backend)
    return total


def moment_restricted_even(t, ctx, region: IntervalUnion, budget=DEFAULT_BUDGET, backend=None):
    """``integral over region of |f(alpha)|^{2t}`` in closed form."""
    c = moment_coefficients(t, ctx, budget)
    value = integrate_cosine_series(c, region, backend=backend)
    # rounding scale of the alternating sum
    scale = float(sum(abs(int(x)) for x in c[: min(len(c), 4096)]))
    err = 1e-15 * max(scale, 1.0) * max(1, len(region))
    return MomentResult(max(value, 0.0), FOURIER_EXACT, err)


def moment_quadrature(s, ctx, region: IntervalUnion, rtol=1e-10, min_width=1e-12,
                      max_panels=2_000_000, backend=None):
    """Adaptive Simpson integration of ``|f|^s`` over ``region``.

    Panels are refined level by level until the Richardson estimate
    ``|S2 - S1| / 15`` of every panel is under its share of
    ``rtol * value``; panels narrower than ``min_width`` are accepted as is.
    The initial grid resolves the highest frequency present so that
    oscillation is never aliased away.
    """
    if s < 0 or rtol <= 0:
        raise PreconditionError("need s >= 0 and rtol > 0")
    if s == 0:
        return MomentResult(float(region.measure()), QUADRATURE, 0.0)
    smooth = ctx.smooth_set()
    powers = np.asarray([x ** ctx.k for x in smooth], dtype=np.float64)
    if len(powers) == 0 or not region:
        return MomentResult(0.0, QUADRATURE, 0.0)
    fmax = float(powers.max()) * max(1.0, s / 2)

    def integrand(x):
        a = x - np.floor(x)
        return np.abs(kernels.phase_sums(a, powers, backend=backend)) ** s

    los, his = [], []
    for lo, hi in region:
        lo, hi = float(lo), float(hi)
        n = max(1, int(math.ceil((hi - lo) * fmax * 4)))
        edges = np.linspace(lo, hi, n + 1)
        los.append(edges[:-1])
        his.append(edges[1:])
    a = np.concatenate(los)
    b = np.concatenate(his)
    fa, fb = integrand(a), integrand(b)
    m = 0.5 * (a + b)
    fm = integrand(m)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    estimate = float(whole.sum())
    target = rtol * max(abs(estimate), 1e-300)

    total = 0.0
    err_total = 0.0
    total_width = float(region.measure())
    panels = len(a)
    while len(a):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = integrand(lm), integrand(rm)
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        refined = left + right
        err = np.abs(refined - whole) / 15
        allowed = target * (b - a) / total_width
        done = (err <= allowed) | ((b - a) < min_width)
        total += float((refined[done] + (refined[done] - whole[done]) / 15).sum())
        err_total += float(err[done].sum())
        keep = ~done
        if not keep.any():
            break
        panels += 2 * int(keep.sum())
        if panels > max_panels:
            rest = float(refined[keep].sum())
            raise ConvergenceError("quadrature panel budget exhausted",
                                   estimate=total + rest, error=err_total + float(err[keep].sum()))
        a_k, m_k, b_k = a[keep], m[keep], b[keep]
        fa_k, fm_k, fb_k = fa[keep], fm[keep], fb[keep]
        a = np.concatenate([a_k, m_k])
        b = np.concatenate([m_k, b_k])
        m = np.concatenate([lm[keep], rm[keep]])
        fa = np.concatenate([fa_k, fm_k])
        fb = np.concatenate([fm_k, fb_k])
        fm = np.concatenate([flm[keep], frm[keep]])
        whole = np.concatenate([left[keep], right[keep]])
    return MomentResult(total, QUADRATURE, err_total)


# -- representation counts ---------------------------------------------------------

def _ordered_counts(n, s, bases_powers):
    # ways[m] = ordered s-tuples from bases_powers summing to m, m <= n
    ways = [0] * (n + 1)
    ways[0] = 1
    for _ in range(s):
        new = [0] * (n + 1)
        for m, w in enumerate(ways):
            if w:
                for p in bases_powers:
                    if m + p > n:
                        break
                    new[m + p] += w
        ways = new
    return ways[n]


def count_representations(n, s, k):
    """Ordered representations of ``n`` as a sum of ``s`` positive k-th powers."""
    if n < 1 or s < 1:
        raise PreconditionError("need n >= 1 and s >= 1")
    powers = []
    x = 1
    while x ** k <= n:
        powers.append(x ** k)
        x += 1
    return _ordered_counts(n, s, powers)


def count_smooth_representations(n, s, ctx: SmoothContext):
    """As :func:`count_representations` with every ``x_i`` in the smooth set."""
    if n < 1 or s < 1:
        raise PreconditionError("need n >= 1 and s >= 1")
    powers = sorted(x ** ctx.k for x in ctx.smooth_set() if x ** ctx.k <= n)
    return _ordered_counts(n, s, powers)


def smooth_representation_vector(s, ctx, budget=DEFAULT_BUDGET):
    """``r[n]`` for every ``n``; sums to ``|A(P,R)|^s``."""
    return power_sum_counts(ctx.smooth_set(), ctx.k, s, budget)


# -- Gauss sums and singular series ------------------------------------------

def _power_residue_counts(q, k):
    counts = np.zeros(q, dtype=np.int64)
    for r in range(1, q + 1):
        counts[pow(r, k, q)] += 1
    return counts


def gauss_sum(q, a, k):
    """``S(q, a) = sum_{r=1}^{q} e(a r^k / q)``."""
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    res = [(a * pow(r, k, q)) % q for r in range(1, q + 1)]
    return kernels.residue_phase_sum(np.asarray(res, dtype=np.int64), q)


def singular_series_term(n, s, k, q):
    """``A(q) = sum_{(a,q)=1} (S(q,a)/q)^s e(-na/q)``, the q-th summand."""
    counts = _power_residue_counts(q, k)
    c = np.arange(q)
    total = 0j
    for a in range(1, q + 1):
        if gcd(a, q) != 1:
            continue
        ang = 2 * np.pi * ((a * c) % q) / q
        S = complex(np.dot(counts, np.cos(ang)), np.dot(counts, np.sin(ang)))
        ph = 2 * np.pi * ((-n * a) % q) / q
        total += (S / q) ** s * complex(math.cos(ph), math.sin(ph))
    return total


def singular_series_truncated(n, s, k, X, imag_tol=1e-9):
    """``sum_{q <= X} A(q)`` as a real number; the imaginary part cancels
    between ``a`` and ``q - a``."""
    if X < 1 or s < 1:
        raise PreconditionError("need X >= 1 and s >= 1")
    total = sum((singular_series_term(n, s, k, q) for q in range(1, X + 1)), 0j)
    if abs(total.imag) > imag_tol * max(1.0, abs(total.real)):
        raise ConvergenceError(f"singular series has imaginary part {total.imag:.3g}",
                               estimate=total.real)
    return total.real


def v_weight(beta, n, k):
    """``(1/k) sum_{m <= n} m^(1/k - 1) e(beta m)``."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    m = np.arange(1, n + 1, dtype=np.float64)
    w = m ** (1.0 / k - 1.0)
    if isinstance(beta, Fraction):
        ph = np.array([float((beta * int(x)) % 1) for x in range(1, n + 1)])
    else:
        ph = float(beta) * m
        ph -= np.floor(ph)
    z = np.exp(2j * np.pi * ph)
    return complex(np.dot(w, z) / k)


def local_congruence_check(n, q, s, k, budget=DEFAULT_BUDGET):
    """Whether ``x_1^k + ... + x_s^k = n (mod q)`` has a solution with
    ``gcd(x_1, q) = 1``."""
    if q < 1 or s < 1:
        raise PreconditionError("need q >= 1 and s >= 1")
    if q == 1:
        return True
    if q * q * s > budget:
        raise BudgetExceeded(q * q * s, budget, "residue dynamic programme")
    all_res = sorted({pow(x, k, q) for x in range(q)})
    unit_res = sorted({pow(x, k, q) for x in range(1, q) if gcd(x, q) == 1})
    reach = np.zeros(q, dtype=bool)
    reach[0] = True
    for _ in range(s - 1):
        nxt = np.zeros(q, dtype=bool)
        for r in all_res:
            nxt |= np.roll(reach, r)
        reach = nxt
    return any(reach[(n - u) % q] for u in unit_res)


# -- empirical scaling ---------------------------------------------------------

SCALING_HEADER = ("Q", "moment", "predictor", "ratio")


def default_q_grid(P):
    """Powers of two from 1 up to ``P``."""
    out, Q = [], 1
    while Q <= P:
        out.append(Q)
        Q *= 2
    return out


def scaling_rows(s, ctx, delta, Qs=None, budget=DEFAULT_BUDGET):
    """Rows ``(Q, moment, predictor, ratio)`` comparing the major-arc moment
    of ``|f|^s`` with ``P^(s-k) Q^(2 delta / k)``.  ``s`` must be even."""
    from .arcs import major_arcs

    if s < 2 or s % 2:
        raise PreconditionError(f"scaling report needs an even s >= 2, got {s}")
    Qs = sorted(default_q_grid(ctx.P) if Qs is None else Qs)
    c = moment_coefficients(s // 2, ctx, budget)
    rows = []
    for Q in Qs:
        value = integrate_cosine_series(c, major_arcs(Q, ctx.P, ctx.k))
        predictor = float(ctx.P) ** (s - ctx.k) * float(Q) ** (2 * delta / ctx.k)
        rows.append((Q, value, predictor, value / predictor))
    return rows


def format_scaling_csv(rows):
    lines = [",".join(SCALING_HEADER)]
    for Q, m, p, r in rows:
        lines.append(f"{Q},{m:.10g},{p:.10g},{r:.10g}")
    return "\n".join(lines) + "\n"
