import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from waring import arcs
from waring.arcs import IntervalUnion
from waring.errors import PreconditionError

F = Fraction


def in_major_brute(alpha, Q, P, k):
    # membership straight from the definition, every (q, a) pair tried
    for q in range(1, math.floor(Q) + 1):
        for a in range(q + 1):
            if math.gcd(a, q) == 1 and abs(q * alpha - a) <= F(Q) / F(P) ** k:
                return True
    return False


def test_major_arc_examples():
    assert arcs.major_arcs(2, 10, 2).measure() == F(3, 50)
    for P, k in ((5, 2), (7, 3)):
        m = arcs.major_arcs(1, P, k)
        r = F(1, P ** k)
        assert list(m) == [(F(0), r), (1 - r, F(1))]
        assert m.measure() == 2 * r
    assert arcs.major_arcs(100, 10, 2).measure() == 1
    assert arcs.major_arcs(F(1, 2), 10, 2).measure() == 0


def test_dyadic_shell_examples():
    Q, P, k = F(2), 10, 2
    big, small = arcs.major_arcs(Q, P, k), arcs.major_arcs(Q / 2, P, k)
    shell = arcs.dyadic_shell(Q, P, k)
    assert shell.intersection(small).measure() == 0
    assert shell.measure() == big.measure() - big.intersection(small).measure()
    assert small.is_subset(big)
    assert shell.measure() == big.measure() - small.measure()


def test_shell_depth_and_cover_examples():
    assert arcs.shell_depth(100, 3) == 9
    for P, k in ((100, 3), (50, 2), (7, 5)):
        assert arcs.shell_depth(P, k) == math.floor(k * math.log(P) / (2 * math.log(2)))
    rep = arcs.shell_cover_check(50, 2, [F(0)])
    assert rep.ok and rep.indices == [rep.L]
    rnd = random.Random(7)
    samples = [F(rnd.randrange(d), d) for d in (rnd.randint(1, 10 ** 6) for _ in range(1000))]
    rep = arcs.shell_cover_check(50, 2, samples)
    assert rep.ok and all(0 <= j <= rep.L for j in rep.indices)


def test_top_height_dominates_and_ladder_bottoms_out():
    for P in range(2, 40):
        for k in (2, 3, 4, 5):
            Q0 = arcs.top_height(P, k)
            assert Q0 * Q0 >= P ** k
            assert Q0 / 2 ** (arcs.shell_depth(P, k) + 1) < 1


def test_classify_examples():
    inside, label = arcs.classify(F(1, 2), 2, 10, 2)
    assert inside and (label.q, label.a) == (2, 1)
    Q, P, k = F(2), 10, 2
    assert arcs.classify(F(1, 2) + 2 * Q / P ** k, Q, P, k) == (False, None)
    rnd = random.Random(3)
    for _ in range(200):
        alpha = F(rnd.randrange(10 ** 5), 10 ** 5)
        assert arcs.classify(alpha, arcs.top_height(10, 3), 10, 3)[0]
    with pytest.raises(PreconditionError):
        arcs.classify(F(1), 2, 10, 2)


def test_upsilon_examples():
    P, k = 10, 2
    for q in range(1, 6):
        for a in range(q):
            if math.gcd(a, q) == 1:
                assert arcs.upsilon(F(a, q), P, k) == F(1, q)
    assert arcs.upsilon(F(1, 2) + F(1, 7), 4, 2) == 0


def test_lemma23_examples():
    lhs, rhs = arcs.lemma23_measures(3, 2, F(4), 40, 2)
    assert lhs == rhs
    _, _, res = arcs.verify_lemma23({1: 1}, 1, 3, 2, 20, 2)
    assert res < 1e-12
    with pytest.raises(PreconditionError, match="gcd"):
        arcs.verify_lemma23({1: 1}, 2, 4, 2, 20, 2)
    with pytest.raises(PreconditionError, match="Q <="):
        arcs.verify_lemma23({1: 1}, 1, 3, 10, 20, 2)
    with pytest.raises(PreconditionError, match="1 <= q"):
        arcs.verify_lemma23({1: 1}, 5, 1, 2, 20, 2)


def test_exp_integral_against_quadrature():
    region = arcs.major_arcs(3, 6, 2)
    for h in (0, 1, -2, 5):
        exact = arcs.exp_integral(h, region)
        approx = 0j
        for lo, hi in region:
            n = 2000
            step = (float(hi) - float(lo)) / n
            xs = [float(lo) + (i + 0.5) * step for i in range(n)]
            approx += sum(cmath.exp(2j * math.pi * h * x) for x in xs) * step
        assert abs(exact - approx) < 1e-6


def test_csv_round_trip():
    m = arcs.major_arcs(F(5, 2), 7, 2)
    assert IntervalUnion.from_csv_lines(m.to_csv_lines()) == m


def test_membership_matches_definition():
    rnd = random.Random(11)
    for _ in range(300):
        P, k = rnd.randint(2, 12), rnd.choice((2, 3))
        Q = F(rnd.randint(2, 16), 2)
        alpha = F(rnd.randrange(2000), 2000)
        expected = in_major_brute(alpha, Q, P, k)
        assert arcs.major_arcs(Q, P, k).contains(alpha) == expected
        assert arcs.classify(alpha, Q, P, k)[0] == expected
        h, _, _ = arcs.arc_height(alpha, P, k)
        assert (h <= Q) == expected


def test_disjoint_regime_measure_exact():
    for k in (2, 3):
        for P in range(2, 101, 7):
            pk = P ** k
            for Q2 in range(2, 64):
                Q = F(Q2, 2)
                if 4 * Q * Q > pk:
                    break
                m = arcs.major_arcs(Q, P, k).measure()
                bound = arcs.disjoint_measure(Q, P, k)
                assert m <= bound
                if 2 * Q * Q <= pk:
                    assert m == bound


grid = st.tuples(st.integers(2, 15), st.sampled_from([2, 3]), st.integers(2, 40))


@settings(max_examples=80, deadline=None)
@given(grid)
def test_complement_measure(args):
    P, k, Q2 = args
    Q = F(Q2, 2)
    assert arcs.major_arcs(Q, P, k).measure() + arcs.minor_arcs(Q, P, k).measure() == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.sampled_from([2, 3]))
def test_shells_pairwise_null(P, k):
    Q0 = arcs.top_height(P, k)
    L = arcs.shell_depth(P, k)
    shells = [arcs.dyadic_shell(Q0 / 2 ** j, P, k) for j in range(L + 1)]
    for i in range(len(shells)):
        for j in range(i + 1, len(shells)):
            assert shells[i].intersection(shells[j]).measure() == 0
    total = sum((s.measure() for s in shells), F(0))
    assert total == 1 - arcs.major_arcs(Q0 / 2 ** (L + 1), P, k).measure()


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 20), st.sampled_from([2, 3]), st.integers(0, 999), st.integers(1, 1000))
def test_upsilon_bounded(P, k, num, den):
    alpha = F(num % den, den)
    u = arcs.upsilon(alpha, P, k)
    assert 0 <= u <= 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.fractions(0, 1), st.fractions(0, 1)), max_size=6),
       st.lists(st.tuples(st.fractions(0, 1), st.fractions(0, 1)), max_size=6))
def test_interval_algebra(a, b):
    A = IntervalUnion.from_intervals((min(x), max(x)) for x in a)
    B = IntervalUnion.from_intervals((min(x), max(x)) for x in b)
    assert A.measure() + A.complement().measure() == 1
    assert A.union(B).measure() == A.measure() + B.measure() - A.intersection(B).measure()
    assert A.difference(B).measure() == A.measure() - A.intersection(B).measure()
