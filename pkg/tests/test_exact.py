import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from belyi_degree.exact import (AlgebraicSet, Fraction, UniPoly, bivariate_resultant,
                                discriminant, format_rational, parse_rational, poly_gcd,
                                rational_roots, resultant, squarefree_decomposition,
                                squarefree_part)

x = sympy.Symbol("x")

small_ints = st.integers(min_value=-9, max_value=9)
polys = st.lists(small_ints, min_size=1, max_size=6).map(UniPoly)
nonconst = polys.filter(lambda p: p.degree >= 1)


def to_sympy(p):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator)
                                     for c in p.coeffs])) or [0], x, domain="QQ")


def from_sympy(sp):
    return UniPoly([Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())])


def sylvester_resultant(p, q):
    """Determinant of the Sylvester matrix, computed with sympy as an oracle."""
    m, n = p.degree, q.degree
    a = list(reversed(p.coeffs))
    b = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (m - 1 - i))
    return Fraction(sympy.Matrix(rows).det())


def test_parse_and_format_roundtrip():
    for s in ["0", "-3", "7/9", "-12/5"]:
        assert format_rational(parse_rational(s)) == s
    assert parse_rational("4/6") == Fraction(2, 3)


def test_arithmetic_basics():
    p = UniPoly([1, 2, 3])
    q = UniPoly([-1, 1])
    assert (p * q).degree == 3
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree
    assert p(Fraction(2)) == 17
    assert p.compose(q) == UniPoly([2, -4, 3])
    assert p.derivative() == UniPoly([2, 6])


def test_zero_polynomial_has_degree_minus_one():
    assert UniPoly().degree == -1
    assert not UniPoly([0, 0])


@settings(max_examples=60, deadline=None)
@given(nonconst, nonconst)
def test_resultant_matches_sylvester_determinant(p, q):
    assert resultant(p, q) == sylvester_resultant(p, q)


@settings(max_examples=60, deadline=None)
@given(nonconst, nonconst, nonconst)
def test_resultant_is_multiplicative(p, q, r):
    assert resultant(p, q * r) == resultant(p, q) * resultant(p, r)


@settings(max_examples=60, deadline=None)
@given(nonconst, nonconst)
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    expected = from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)))
    assert g.monic() == expected.monic()


@settings(max_examples=60, deadline=None)
@given(nonconst)
def test_discriminant_matches_sympy(p):
    assert discriminant(p) == Fraction(sympy.discriminant(to_sympy(p)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.lists(small_ints, min_size=1, max_size=3))
def test_squarefree_decomposition_reassembles(roots, extra):
    p = UniPoly([c for c in extra]) if any(extra) else UniPoly([1])
    for r in roots:
        p = p * UniPoly([-r, 1])
    parts = squarefree_decomposition(p)
    prod = UniPoly([p.lc])
    for k, a in enumerate(parts, start=1):
        prod = prod * a ** k
    assert prod == p
    for a in parts:
        if a.degree >= 1:
            assert poly_gcd(a, a.derivative()).degree == 0
    assert squarefree_part(p).degree == sum(a.degree for a in parts)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12), min_size=1,
                max_size=5), st.lists(small_ints, min_size=3, max_size=3))
def test_rational_roots_recovers_planted_roots(roots, cofactor):
    p = UniPoly.from_roots(roots) * UniPoly([cofactor[0] or 1, 0, cofactor[1] ** 2 + 1])
    found = rational_roots(p)
    assert set(roots) <= found
    oracle = {Fraction(int(r.p), int(r.q)) for r in sympy.roots(to_sympy(p), filter="Q")}
    assert found == oracle


def test_rational_roots_large_coefficients():
    roots = [Fraction(10 ** 12 + 39, 7 ** 9), Fraction(-3, 10 ** 8 + 7)]
    p = UniPoly.from_roots(roots) * UniPoly([5, 0, 1])
    assert rational_roots(p) == set(roots)


def test_bivariate_resultant_eliminates_x():
    # Res_x(x^2 - y, x - 1) = 1 - y, as polynomials in y with x-coefficients listed low to high
    F = [UniPoly([0, -1]), UniPoly([0]), UniPoly([1])]
    G = [UniPoly([-1]), UniPoly([1])]
    r = bivariate_resultant(F, G)
    assert r.monic() == UniPoly([-1, 1])


def test_bivariate_resultant_agrees_with_sympy():
    rng = random.Random(7)
    y = sympy.Symbol("y")
    for _ in range(10):
        F = [UniPoly([rng.randint(-4, 4), rng.randint(-4, 4)]) for _ in range(3)]
        G = [UniPoly([rng.randint(-4, 4), rng.randint(-4, 4)]) for _ in range(3)]
        F[-1] = UniPoly([rng.randint(1, 4)])
        G[-1] = UniPoly([rng.randint(1, 4)])
        sf = sum((c[0] + c[1] * y) * x ** k for k, c in enumerate(F))
        sg = sum((c[0] + c[1] * y) * x ** k for k, c in enumerate(G))
        oracle = sympy.Poly(sympy.resultant(sf, sg, x), y)
        got = bivariate_resultant(F, G)
        want = UniPoly([Fraction(int(c)) for c in reversed(oracle.all_coeffs())])
        assert got == want


def test_algebraic_set_split_and_special():
    S = AlgebraicSet.from_points([Fraction(0), Fraction(1)], True)
    assert S.is_subset_of_special()
    T = S.union(AlgebraicSet(UniPoly([-2, 0, 1])))
    rats, rest = T.split()
    assert set(rats) == {0, 1}
    assert rest.degree == 2
    assert not T.is_subset_of_special()


def test_exact_division_rejects_remainder():
    with pytest.raises(ArithmeticError):
        UniPoly([1, 0, 1]).exact_div(UniPoly([1, 1]))
