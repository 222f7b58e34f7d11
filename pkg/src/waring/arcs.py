"""Hardy-Littlewood arc systems with exact rational endpoints.

Intervals are stored closed; endpoints have measure zero, so measures are
the same for open, closed or half-open readings.  Exact point membership is
answered by :func:`classify` / :func:`arc_height`, which work from the
defining inequalities rather than from the stored endpoints.

The ``a = 0`` and ``a = q`` arcs of ``q = 1`` are clipped to ``[0, r]`` and
``[1 - r, 1)``; together they are the single arc about 0 of the circle
``R/Z``, which is what a 1-periodic integrand sees.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import PreconditionError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint closed intervals inside ``[0, 1]``."""

    intervals: tuple = ()

    @classmethod
    def from_intervals(cls, pairs):
        """Clip to ``[0, 1]``, drop empty pieces and merge overlaps."""
        clipped = []
        for lo, hi in pairs:
            lo, hi = max(Fraction(lo), ZERO), min(Fraction(hi), ONE)
            if lo < hi:
                clipped.append((lo, hi))
        clipped.sort()
        merged = []
        for lo, hi in clipped:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    @classmethod
    def full(cls):
        return cls(((ZERO, ONE),))

    @classmethod
    def empty(cls):
        return cls(())

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def measure(self):
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def union(self, other):
        return IntervalUnion.from_intervals(self.intervals + other.intervals)

    def intersection(self, other):
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalUnion(tuple(out))

    def complement(self):
        out = []
        cur = ZERO
        for lo, hi in self.intervals:
            if lo > cur:
                out.append((cur, lo))
            cur = hi
        if cur < ONE:
            out.append((cur, ONE))
        return IntervalUnion(tuple(out))

    def difference(self, other):
        return self.intersection(other.complement())

    def contains(self, x):
        """Closed-interval membership test on the stored endpoints."""
        x = Fraction(x)
        return any(lo <= x <= hi for lo, hi in self.intervals)

    def is_subset(self, other):
        return self.difference(other).measure() == 0

    def to_csv_lines(self):
        return [f"{lo.numerator},{lo.denominator},{hi.numerator},{hi.denominator}"
                for lo, hi in self.intervals]

    @classmethod
    def from_csv_lines(cls, lines):
        pairs = []
        for line in lines:
            line = line.strip()
            if not line or line.startswith("num_lo"):
                continue
            a, b, c, d = (int(t) for t in line.split(","))
            pairs.append((Fraction(a, b), Fraction(c, d)))
        return cls.from_intervals(pairs)


@dataclass(frozen=True)
class ArcLabel:
    q: int
    a: int
    height: Fraction  # q + P^k |q alpha - a|


def _as_fraction(x):
    return Fraction(x)


def _pk(P, k):
    return Fraction(P) ** k


def arc_radius(q, Q, P, k):
    """Half-width of each arc ``|alpha - a/q| <= Q P^-k / q``."""
    return Fraction(Q) / (q * _pk(P, k))


def major_arcs_q(q, Q, P, k):
    """The arcs about ``a/q``, ``0 <= a <= q``, ``gcd(a, q) = 1``; empty when
    ``q > Q``."""
    Q = _as_fraction(Q)
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    if q > Q:
        return IntervalUnion.empty()
    r = arc_radius(q, Q, P, k)
    return IntervalUnion.from_intervals(
        (Fraction(a, q) - r, Fraction(a, q) + r) for a in range(q + 1) if gcd(a, q) == 1)


def major_arcs(Q, P, k):
    """Union over ``1 <= q <= Q`` of :func:`major_arcs_q`."""
    Q = _as_fraction(Q)
    if Q < 1:
        return IntervalUnion.empty()
    pk = _pk(P, k)
    pairs = []
    for q in range(1, math.floor(Q) + 1):
        r = Q / (q * pk)
        if q == 1 and 2 * r >= 1:
            # the two q = 1 arcs already cover [0, 1]
            return IntervalUnion.full()
        pairs.extend((Fraction(a, q) - r, Fraction(a, q) + r)
                     for a in range(q + 1) if gcd(a, q) == 1)
    return IntervalUnion.from_intervals(pairs)


def minor_arcs(Q, P, k):
    return major_arcs(Q, P, k).complement()


def dyadic_shell(Q, P, k):
    """``major_arcs(Q) \\ major_arcs(Q/2)``."""
    Q = _as_fraction(Q)
    return major_arcs(Q, P, k).difference(major_arcs(Q / 2, P, k))


def dyadic_shell_q(q, Q, P, k):
    Q = _as_fraction(Q)
    return major_arcs_q(q, Q, P, k).difference(major_arcs_q(q, Q / 2, P, k))


def shell_depth(P, k):
    """``L = floor(k log P / (2 log 2))``, computed exactly as the largest
    ``L`` with ``4**L <= P**k``."""
    if P < 1:
        raise PreconditionError(f"P must be >= 1, got {P}")
    return ((P ** k).bit_length() - 1) // 2


def top_height(P, k):
    """A rational ``Q0 >= P**(k/2)`` used as the top of the dyadic ladder.

    Exact when ``P**k`` is a perfect square; otherwise a dyadic upper
    approximation tight enough that ``Q0 / 2**(L+1) < 1`` still holds.
    """
    n = P ** k
    r = isqrt(n)
    if r * r == n:
        return Fraction(r)
    bits = shell_depth(P, k) + 4
    return Fraction(isqrt(n << (2 * bits)) + 1, 1 << bits)


def arc_height(alpha, P, k, q_max=None):
    """Smallest ``Q`` with ``alpha`` in ``major_arcs(Q, P, k)``.

    Returns ``(Q_min, q, a)`` where ``Q_min = max(q, P^k |q alpha - a|)`` is
    minimised over ``q``; ``alpha`` lies in ``major_arcs(Q)`` iff
    ``Q_min <= Q``.  The scan stops at ``q_max`` (default: the running best),
    so the answer is exact.
    """
    alpha = _as_fraction(alpha)
    pk = _pk(P, k)
    best = None
    q = 1
    while True:
        if best is not None and q > best[0]:
            break
        if q_max is not None and q > q_max:
            break
        qa = q * alpha
        a = math.floor(qa + Fraction(1, 2))
        d = abs(qa - a)
        h = max(Fraction(q), pk * d)
        if best is None or h < best[0]:
            best = (h, q, a)
        q += 1
    return best


def classify(alpha, Q, P, k):
    """Whether ``alpha`` lies in ``major_arcs(Q, P, k)``, with the witness of
    least ``q``."""
    alpha = _as_fraction(alpha)
    Q = _as_fraction(Q)
    if not (0 <= alpha < 1):
        raise PreconditionError(f"alpha must lie in [0, 1), got {alpha}")
    pk = _pk(P, k)
    bound = Q / pk
    for q in range(1, math.floor(Q) + 1):
        qa = q * alpha
        a = math.floor(qa + Fraction(1, 2))
        d = abs(qa - a)
        if d <= bound:
            # least q, so a/q is already in lowest terms
            return True, ArcLabel(q, a, q + pk * d)
    return False, None


def shell_index(alpha, P, k, Q0=None):
    """The unique ``j`` in ``0..L`` with ``alpha`` in the shell
    ``dyadic_shell(Q0 / 2**j)``, or ``None`` if ``alpha`` is uncovered."""
    if Q0 is None:
        Q0 = top_height(P, k)
    Q0 = Fraction(Q0)
    L = shell_depth(P, k)
    h, _, _ = arc_height(alpha, P, k)
    if h > Q0:
        return None
    # largest j with Q0 / 2**j >= h
    j = 0
    while j < L and Q0 / 2 ** (j + 1) >= h:
        j += 1
    if Q0 / 2 ** (j + 1) >= h:
        return None
    return j


@dataclass
class ShellCoverReport:
    P: int
    k: int
    Q0: Fraction
    L: int
    indices: list
    uncovered: list

    @property
    def ok(self):
        return not self.uncovered


def shell_cover_check(P, k, samples, Q0=None):
    """Locate every sample in the dyadic shell ladder and list any misses."""
    if P < 2:
        raise PreconditionError(f"P must be >= 2, got {P}")
    if Q0 is None:
        Q0 = top_height(P, k)
    idx, missed = [], []
    for alpha in samples:
        j = shell_index(alpha, P, k, Q0)
        idx.append(j)
        if j is None:
            missed.append(alpha)
    return ShellCoverReport(P, k, Fraction(Q0), shell_depth(P, k), idx, missed)


def upsilon(alpha, P, k):
    """``1 / (q + P^k |q alpha - a|)`` on the arc system of height
    ``P**(k/2) / 2`` (where those arcs are disjoint), zero off it.

    Both height conditions are tested on squares, so odd ``k`` stays exact.
    """
    alpha = _as_fraction(alpha)
    if not (0 <= alpha < 1):
        raise PreconditionError(f"alpha must lie in [0, 1), got {alpha}")
    pk = _pk(P, k)
    q = 1
    while 4 * q * q <= pk:
        qa = q * alpha
        a = math.floor(qa + Fraction(1, 2))
        d = abs(qa - a)
        if 4 * d * d * pk <= 1:
            return 1 / (q + pk * d)
        q += 1
    return ZERO


def _e(x):
    return complex(math.cos(2 * math.pi * x), math.sin(2 * math.pi * x))


def exp_integral(h, region):
    """``integral of e(h x)`` over an IntervalUnion, with each phase
    ``h * endpoint`` reduced mod 1 exactly."""
    if h == 0:
        return complex(float(region.measure()), 0.0)
    total = 0j
    for lo, hi in region:
        total += _e((h * hi) % 1) - _e((h * lo) % 1)
    return total / (2j * math.pi * h)


def trig_integral(coeffs, region, scale=1):
    """``integral over region of sum_h c_h e(h * scale * x)``."""
    return sum((c * exp_integral(h * scale, region) for h, c in coeffs.items()), 0j)


def verify_lemma23(F, q, w, Q, P, k):
    """Compare ``int_{M_q(Q,P)} F(alpha w^k)`` with
    ``w^-k int_{M_q(Q,P/w)} F(beta)`` for a trigonometric polynomial ``F``
    given as ``{frequency: coefficient}``.

    Returns ``(lhs, rhs, |lhs - rhs|)``.
    """
    Q = _as_fraction(Q)
    if gcd(q, w) != 1:
        raise PreconditionError(f"rescaling needs gcd(q, w) = 1, got q={q}, w={w}")
    if 4 * Q * Q > (Fraction(P, w)) ** k:
        raise PreconditionError(f"rescaling needs Q <= (P/w)^(k/2)/2, got Q={Q}, P={P}, w={w}, k={k}")
    if not (1 <= q <= Q):
        raise PreconditionError(f"need 1 <= q <= Q, got q={q}, Q={Q}")
    wk = w ** k
    lhs = trig_integral(F, major_arcs_q(q, Q, P, k), scale=wk)
    rhs = trig_integral(F, major_arcs_q(q, Q, Fraction(P, w), k)) / wk
    return lhs, rhs, abs(lhs - rhs)


def lemma23_measures(q, w, Q, P, k):
    """The constant-F case as exact rationals:
    ``(mes M_q(Q,P), w^-k mes M_q(Q,P/w))``."""
    Q = _as_fraction(Q)
    return (major_arcs_q(q, Q, P, k).measure(),
            major_arcs_q(q, Q, Fraction(P, w), k).measure() / w ** k)


def disjoint_measure(Q, P, k):
    """``sum_{q <= Q} phi(q) * 2Q / (q P^k)``: the arc measure when no two
    arcs overlap."""
    Q = _as_fraction(Q)
    pk = _pk(P, k)
    return sum((Fraction(2 * _phi(q)) * Q / (q * pk) for q in range(1, math.floor(Q) + 1)), ZERO)


def _phi(n):
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
