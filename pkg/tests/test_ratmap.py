import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from belyi_degree.exact import Fraction, UniPoly
from belyi_degree.ratmap import (DegenerateMap, RationalMap, branch_locus,
                                 critical_points_special, critical_value_polynomial, is_belyi,
                                 passport_over)
from belyi_degree.reducer import belyi_poly

x, y = sympy.symbols("x y")


def sym(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(p.coeffs))


def oracle_branch_values(f):
    """Rational roots of sympy's disc_x(P - yQ).

    With y formal the leading coefficient p_n - y q_n stays symbolic, so the
    discriminant vanishes at f(inf) exactly when inf is ramified.
    """
    F = sympy.Poly(sympy.expand(sym(f.num) - y * sym(f.den)), x)
    D = sympy.Poly(sympy.discriminant(F.as_expr(), x), y)
    return {Fraction(int(r.p), int(r.q)) for r in sympy.roots(D, filter="Q")}


def passport_by_sympy(f, t):
    P, Q = sym(f.num), sym(f.den)
    G = sympy.Poly(Q if t is None else sympy.expand(P - t * Q), x)
    parts = []
    for fac, mult in sympy.factor_list(G)[1]:
        parts += [mult] * sympy.Poly(fac, x).degree()
    parts += [f.degree - G.degree()] if f.degree > G.degree() else []
    return tuple(sorted(parts, reverse=True))


small = st.integers(-6, 6)
maps = st.tuples(st.lists(small, min_size=2, max_size=5),
                 st.lists(small, min_size=1, max_size=4)).map(
    lambda pq: (UniPoly(pq[0]), UniPoly(pq[1])))


def make(pq):
    try:
        f = RationalMap(*pq)
    except (DegenerateMap, ZeroDivisionError):
        return None
    return f if f.degree >= 1 else None


def test_cubic_x3_minus_3x():
    f = RationalMap(UniPoly([0, -3, 0, 1]))
    rep = branch_locus(f)
    assert sorted(rep.branch_values) == [-2, 2]
    assert rep.infinity_branch
    assert rep.passports[None] == (3,)
    assert rep.passports[Fraction(2)] == (2, 1)
    assert not rep.is_belyi
    assert rep.ramification_total == 4


def test_belyi_polynomial_is_belyi():
    for m, n in [(1, 1), (1, 2), (3, 2), (4, 7)]:
        ok, rep = is_belyi(RationalMap(belyi_poly(m, n)))
        assert ok
        assert rep.passports[Fraction(0)] == tuple(sorted([m, n], reverse=True))
        assert rep.passports[None] == (m + n,)
        assert belyi_poly(m, n)(Fraction(m, m + n)) == 1


def test_non_rational_branch_values_are_reported():
    # x^3 - x has critical values +- 2/(3 sqrt 3), both irrational
    rep = branch_locus(RationalMap(UniPoly([0, -1, 0, 1])))
    _, rest = rep.non_rational.split()
    assert rest.degree == 2
    assert not rep.is_belyi


def test_constant_map_is_rejected():
    with pytest.raises(DegenerateMap):
        branch_locus(RationalMap(UniPoly([3]), UniPoly([1])))


@settings(max_examples=80, deadline=None)
@given(maps)
def test_branch_locus_agrees_with_direct_discriminant(pq):
    f = make(pq)
    if f is None:
        return
    rep = branch_locus(f)
    oracle = oracle_branch_values(f)
    assert set(rep.branch_values) == oracle
    assert rep.ramification_total == 2 * f.degree - 2
    for t, part in rep.passports.items():
        assert sum(part) == f.degree
        assert part == passport_by_sympy(f, t)


@settings(max_examples=80, deadline=None)
@given(maps)
def test_two_belyi_tests_agree(pq):
    f = make(pq)
    if f is None:
        return
    assert is_belyi(f)[0] == critical_points_special(f)


@settings(max_examples=40, deadline=None)
@given(maps, st.tuples(small, small, small, small))
def test_branch_values_invariant_under_moebius_precomposition(pq, abcd):
    f = make(pq)
    a, b, c, d = abcd
    if f is None or a * d - b * c == 0:
        return
    g = f.compose(RationalMap.mobius(a, b, c, d))
    r1, r2 = branch_locus(f), branch_locus(g)
    assert set(r1.branch_values) == set(r2.branch_values)
    assert r1.infinity_branch == r2.infinity_branch
    assert r1.passports == r2.passports


def test_critical_value_polynomial_vanishes_at_branch_values():
    f = RationalMap(UniPoly([0, -3, 0, 1]))
    D = critical_value_polynomial(f)
    assert D(Fraction(2)) == 0 and D(Fraction(-2)) == 0


def test_large_degree_belyi_map_verifies_quickly():
    f = RationalMap(belyi_poly(2, 1)).compose(RationalMap(belyi_poly(5, 4)))
    f = RationalMap(belyi_poly(1, 2)).compose(f)
    ok, rep = is_belyi(f)
    assert ok
    assert rep.degree == 81


def test_fiber_sizes_sum_to_degree_on_random_maps():
    rng = random.Random(11)
    for _ in range(40):
        P = UniPoly([rng.randint(-5, 5) for _ in range(rng.randint(2, 6))])
        Q = UniPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 5))])
        f = make((P, Q))
        if f is None:
            continue
        for t in [Fraction(0), Fraction(1), None, Fraction(rng.randint(-9, 9), rng.randint(1, 9))]:
            assert sum(passport_over(f, t)) == f.degree
