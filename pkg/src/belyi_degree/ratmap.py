"""Branch loci and ramification passports of rational maps P/Q on P^1."""

from dataclasses import dataclass, field

from .exact import (AlgebraicSet, Fraction, UniPoly, bivariate_discriminant, bivariate_resultant,
                    format_rational, poly_gcd, rational_roots, squarefree_decomposition, squarefree_part)

__all__ = ["RationalMap", "BranchReport", "DegenerateMap", "map_degree", "branch_locus",
           "passport_over", "is_belyi", "critical_points_special", "critical_value_polynomial",
           "non_special_discriminant", "wronskian", "INFINITY"]

INFINITY = None


class DegenerateMap(ValueError):
    pass


class RationalMap:
    """f = P/Q with gcd(P, Q) = 1 and Q monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UniPoly) else UniPoly(num)
        den = UniPoly([1]) if den is None else (den if isinstance(den, UniPoly) else UniPoly(den))
        if not den:
            raise ZeroDivisionError("rational map with zero denominator")
        g = poly_gcd(num, den)
        if g.degree >= 1:
            num, den = num.exact_div(g), den.exact_div(g)
        c = den.lc
        self.num = num * (1 / c)
        self.den = den * (1 / c)

    @classmethod
    def from_json(cls, data):
        return cls(UniPoly.from_json(data["num"]), UniPoly.from_json(data.get("den", ["1"])))

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def mobius(cls, a, b, c, d):
        """x -> (a x + b) / (c x + d)."""
        if a * d - b * c == 0:
            raise DegenerateMap("singular Moebius transformation")
        return cls(UniPoly([b, a]), UniPoly([d, c]))

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    def is_constant(self):
        return self.num.degree < 1 and self.den.degree < 1

    def __eq__(self, other):
        return isinstance(other, RationalMap) and (self.num, self.den) == (other.num, other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree < 1:
            return f"RationalMap({self.num})"
        return f"RationalMap(({self.num}) / ({self.den}))"

    def __call__(self, t):
        """Evaluate at a rational or at infinity (None); returns None for infinity."""
        if t is None:
            if self.num.degree > self.den.degree:
                return None
            if self.num.degree < self.den.degree:
                return Fraction(0)
            return self.num.lc / self.den.lc
        d = self.den(t)
        if not d:
            return None
        return self.num(t) / d

    def compose(self, inner):
        """self o inner."""
        n = self.degree
        P = self.num.homogeneous_eval(inner.num, inner.den, n)
        Q = self.den.homogeneous_eval(inner.num, inner.den, n)
        return RationalMap(P, Q)


def map_degree(f):
    return f.degree


def _check(f):
    if f.is_constant():
        raise DegenerateMap("constant map has no branch locus")


def _fiber_poly(f, t):
    return f.den if t is None else f.num - f.den * t


def passport_over(f, t):
    """Ramification indices over t (a rational, or None for infinity), descending."""
    _check(f)
    n = f.degree
    G = _fiber_poly(f, t)
    if not G:
        raise DegenerateMap("fiber polynomial vanishes identically")
    parts = []
    for mult, factor in enumerate(squarefree_decomposition(G), start=1):
        parts.extend([mult] * factor.degree)
    at_inf = n - G.degree
    if at_inf > 0:
        parts.append(at_inf)
    parts.sort(reverse=True)
    if sum(parts) != n:
        raise ArithmeticError(f"fiber over {t} has size {sum(parts)} != {n}")
    return tuple(parts)


def critical_value_polynomial(f):
    """disc_x(P - yQ) as a polynomial in y, with the generic x-degree deg f."""
    _check(f)
    n = f.degree
    F = []
    for k in range(n + 1):
        F.append(UniPoly([f.num[k], -f.den[k]]))
    return bivariate_discriminant(F)


@dataclass
class BranchReport:
    degree: int
    branch_values: list
    infinity_branch: bool
    non_rational: AlgebraicSet
    passports: dict = field(default_factory=dict)
    ramification_total: int = 0
    is_belyi: bool = False

    @property
    def branch_set(self):
        return AlgebraicSet.from_points(self.branch_values, self.infinity_branch).union(
            self.non_rational)

    def to_json(self):
        keyed = {}
        for t, part in self.passports.items():
            keyed["inf" if t is None else format_rational(t)] = list(part)
        _, rest = self.non_rational.split()
        return {
            "degree": self.degree,
            "branch_values": [format_rational(t) for t in sorted(self.branch_values)]
                             + (["inf"] if self.infinity_branch else []),
            "non_rational_branch_defining": rest.to_json() if rest.degree >= 1 else None,
            "passports": keyed,
            "ramification_total": self.ramification_total,
            "riemann_hurwitz_expected": 2 * self.degree - 2,
            "is_belyi": self.is_belyi,
        }


def _ramification(part):
    return sum(e - 1 for e in part)


def _fiber_factors(G):
    return [(k, a) for k, a in enumerate(squarefree_decomposition(G), start=1) if a.degree >= 1]


def wronskian(f):
    """W = P'Q - PQ'; a finite point of index e is a root of W of order e - 1."""
    return f.num.derivative() * f.den - f.num * f.den.derivative()


def non_special_discriminant(f):
    """The factor of disc_x(P - yQ) whose roots avoid {0, 1}, as a polynomial in y.

    disc_x(P - yQ) factors through the Wronskian W: the fibers over 0, 1 and
    inf account for a known factor of W, the exact cofactor W_rest carries
    every other finite critical point, and Res_x(W_rest, P - yQ), with y a
    formal variable, is the rest of the discriminant up to a constant.
    """
    P, Q = f.num, f.den
    known = UniPoly([1])
    for G in (P, P - Q, Q):
        for k, a in _fiber_factors(G):
            if k > 1:
                known = known * a ** (k - 1)
    W_rest = wronskian(f).exact_div(known)
    if W_rest.degree < 1:
        return UniPoly([1])
    A = [UniPoly([c]) for c in W_rest.coeffs]
    B = [UniPoly([P[k], -Q[k]]) for k in range(f.degree + 1)]
    R = bivariate_resultant(A, B)
    if not R or R.degree < 1:
        raise ArithmeticError("non-special critical points without critical values")
    return R


def _index_at_infinity(f):
    val = f(None)
    if val is None:
        return val, f.num.degree - f.den.degree
    return val, f.degree - _fiber_poly(f, val).degree


def branch_locus(f):
    """Exact branch locus with passports over every rational branch value.

    Fibers over 0, 1 and inf are read off the squarefree decompositions of
    P, P - Q and Q.  The remaining branch values are the roots of
    :func:`non_special_discriminant`, plus f(inf) when inf is ramified; a
    root of multiplicity k there carries ramification k in its fiber, so
    non-rational branch values count toward the Riemann-Hurwitz total 2n - 2
    without leaving Q.  That total is asserted exactly.
    """
    _check(f)
    n = f.degree
    passports = {}
    total = 0
    for t in (Fraction(0), Fraction(1), None):
        part = passport_over(f, t)
        if _ramification(part):
            passports[t] = part
            total += _ramification(part)
    R = non_special_discriminant(f)
    extra = set(rational_roots(R)) if R.degree >= 1 else set()
    val, e_inf = _index_at_infinity(f)
    if e_inf > 1 and val is not None and val not in (0, 1):
        extra.add(val)
    rats = sorted(extra)
    for t in rats:
        part = passport_over(f, t)
        if _ramification(part) == 0:
            raise ArithmeticError(f"critical value {t} has an unramified fiber")
        passports[t] = part
        total += _ramification(part)
    rest = UniPoly([1])
    if R.degree >= 1:
        rat_poly = UniPoly.from_roots(rats)
        for mult, factor in enumerate(squarefree_decomposition(R), start=1):
            nonrat = factor.exact_div(poly_gcd(factor, rat_poly))
            total += mult * nonrat.degree
            if nonrat.degree >= 1:
                rest = rest * nonrat
    if total != 2 * n - 2:
        raise ArithmeticError(f"Riemann-Hurwitz total {total} != {2 * n - 2} for {f!r}")
    finite = sorted(t for t in passports if t is not None)
    non_rational = AlgebraicSet(rest)
    special = all(t in (0, 1) for t in finite) and non_rational.defining.degree < 1
    return BranchReport(n, finite, None in passports, non_rational, passports, total, special)


def is_belyi(f):
    """Belyi verdict with passports over 0, 1 and infinity always attached."""
    rep = branch_locus(f)
    for t in (Fraction(0), Fraction(1), None):
        if t not in rep.passports:
            rep.passports[t] = passport_over(f, t)
    return rep.is_belyi, rep


def critical_points_special(f):
    """Independent Belyi test: every critical point maps into {0, 1, inf}.

    Uses the Wronskian W = P'Q - PQ' instead of the discriminant: rad(W)
    must divide P (P - Q) Q, and the point at infinity, when ramified, must
    have a special value.
    """
    _check(f)
    P, Q = f.num, f.den
    W = P.derivative() * Q - P * Q.derivative()
    if W.degree >= 1:
        r = squarefree_part(W)
        if (P * (P - Q) * Q) % r:
            return False
    val = f(None)
    # ramification index at x = infinity
    if val is None:
        at_inf = P.degree - Q.degree
    elif val == 0:
        at_inf = Q.degree - P.degree
    else:
        G = P - Q * val
        at_inf = f.degree - G.degree
    if at_inf >= 2 and val not in (None, 0, 1):
        return False
    return True
