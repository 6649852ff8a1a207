"""Functions (a + b y) / d on hyperelliptic curves y^2 = phi(x), over Q.

Ramification is read off valuations.  Above a root x0 of a polynomial the
places are

* one place with v(x - x0) = 2 and v(y) = 1 when phi(x0) = 0 (Weierstrass);
* two places (x0, +y0), (x0, -y0) with v(x - x0) = 1 otherwise.

For g = A + B y at such a pair, v(g) = min(v(A), v(B)) at both places unless
v(A) = v(B) = k, in which case one place keeps k and the other gets
v(A^2 - B^2 phi) - k (the two valuations add up to that of the norm).
The same rule works at infinity, with one place (v(x) = -2) for odd deg phi
and two (v(x) = -1) for even deg phi.

Roots are never computed individually.  The roots of a squarefree support
polynomial are split into classes on which every relevant valuation is
constant, using gcds with successive derivatives, so each class stands for
deg(class) geometric points that behave identically.
"""

from dataclasses import dataclass, field

from .exact import (AlgebraicSet, Fraction, UniPoly, bivariate_discriminant, bivariate_resultant,
                    format_rational, poly_gcd, rational_roots, squarefree_part)
from .ratmap import RationalMap, branch_locus

__all__ = [
    "HyperellipticCurve", "HyperellipticFunction", "PlacePassport", "HyperBranchReport",
    "hf_arith", "hf_degree", "fiber_polynomial", "branch_locus_hyper", "is_belyi_hyper",
    "automorphism_candidates_check", "CurveAutomorphism", "NotAnAutomorphism",
    "ConstantFunction", "passport_over_hyper",
]

ONE = UniPoly([1])
INF = float("inf")


class ConstantFunction(ValueError):
    pass


class NotAnAutomorphism(ValueError):
    pass


class HyperellipticCurve:
    __slots__ = ("phi",)

    def __init__(self, phi):
        phi = phi if isinstance(phi, UniPoly) else UniPoly(phi)
        if phi.degree < 3:
            raise ValueError("y^2 = phi(x) needs deg phi >= 3")
        if squarefree_part(phi).degree != phi.degree:
            raise ValueError("phi must be squarefree")
        self.phi = phi

    @classmethod
    def from_json(cls, data):
        return cls(UniPoly.from_json(data["phi"]))

    def to_json(self):
        return {"phi": self.phi.to_json()}

    @property
    def genus(self):
        return (self.phi.degree + 1) // 2 - 1

    @property
    def odd(self):
        return self.phi.degree % 2 == 1

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and self.phi == other.phi

    def __hash__(self):
        return hash(self.phi)

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.phi})"


class HyperellipticFunction:
    """(a + b y) / d with gcd(a, b, d) = 1 and d monic."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d=None):
        a = a if isinstance(a, UniPoly) else UniPoly(a)
        b = b if isinstance(b, UniPoly) else UniPoly(b)
        d = ONE if d is None else (d if isinstance(d, UniPoly) else UniPoly(d))
        if not d:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(poly_gcd(a, b), d)
        if g.degree >= 1:
            a, b, d = a.exact_div(g), b.exact_div(g), d.exact_div(g)
        c = 1 / d.lc
        self.a, self.b, self.d = a * c, b * c, d * c

    @classmethod
    def from_json(cls, data):
        return cls(UniPoly.from_json(data.get("a", [])), UniPoly.from_json(data.get("b", [])),
                   UniPoly.from_json(data.get("d", ["1"])))

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json(), "d": self.d.to_json()}

    def __eq__(self, other):
        return (isinstance(other, HyperellipticFunction)
                and (self.a, self.b, self.d) == (other.a, other.b, other.d))

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"HyperellipticFunction(({self.a}) + ({self.b}) y) / ({self.d}))"

    def is_zero(self):
        return not self.a and not self.b


def hf_arith(op, f, h=None, curve=None):
    """Field operations: ``add``, ``mul``, ``div``, ``conjugate``, ``norm``.

    ``norm`` returns the RationalMap (a^2 - b^2 phi) / d^2.
    """
    if op == "conjugate":
        return HyperellipticFunction(f.a, -f.b, f.d)
    if curve is None:
        raise ValueError(f"{op} needs the curve")
    phi = curve.phi
    if op == "norm":
        if f.is_zero():
            return RationalMap(UniPoly(), ONE)
        return RationalMap(f.a * f.a - f.b * f.b * phi, f.d * f.d)
    if op == "add":
        return HyperellipticFunction(f.a * h.d + h.a * f.d, f.b * h.d + h.b * f.d, f.d * h.d)
    if op == "mul":
        return HyperellipticFunction(f.a * h.a + f.b * h.b * phi, f.a * h.b + f.b * h.a,
                                     f.d * h.d)
    if op == "div":
        if h.is_zero():
            raise ZeroDivisionError("division by the zero function")
        n = hf_arith("norm", h, curve=curve)
        # f / h = f * conj(h) / N(h), with N(h) = n.num / n.den
        prod = hf_arith("mul", f, hf_arith("conjugate", h), curve=curve)
        return HyperellipticFunction(prod.a * n.den, prod.b * n.den, prod.d * n.num)
    raise ValueError(f"unknown operation {op!r}")


# -- valuation classes ------------------------------------------------------

def _split_by_valuation(cls, h):
    """Split the roots of squarefree ``cls`` by the multiplicity of h there.

    Returns a list of (class polynomial, v) with v = INF when h = 0.
    """
    if not h:
        return [(cls, INF)]
    out = []
    current = cls
    deriv = h
    k = 0
    while current.degree >= 1:
        nxt = poly_gcd(current, deriv)
        part = current.exact_div(nxt) if nxt else current
        if part.degree >= 1:
            out.append((part.monic(), k))
        current = nxt
        deriv = deriv.derivative()
        k += 1
    return out


def _classes(support, polys):
    """Refine the roots of ``support`` so that each poly's valuation is constant."""
    classes = [(squarefree_part(support), ())]
    for h in polys:
        refined = []
        for cls, vals in classes:
            for part, v in _split_by_valuation(cls, h):
                refined.append((part, vals + (v,)))
        classes = refined
    return classes


@dataclass(frozen=True)
class _PlaceClass:
    """deg(poly) points of one kind, each carrying ``values`` (one per place)."""

    poly: object          # UniPoly, or None for the places at infinity
    kind: str             # weierstrass | pair | split | inf | inf-pair | inf-split
    values: tuple         # valuations of the function at the places above one x0

    def descriptor(self):
        where = "inf" if self.poly is None else self.poly.to_json()
        return {"x_root_of": where, "kind": self.kind,
                "points": 1 if self.poly is None else self.poly.degree}


def _pair_values(vA, vB, vN):
    if vA != vB:
        m = min(vA, vB)
        return "pair", (m, m)
    return "split", (vA, vN - vA)


def _divisor(curve, A, B, D):
    """Valuations of (A + B y) / D at every place where they can be nonzero."""
    phi = curve.phi
    N = A * A - B * B * phi
    if not N:
        raise ConstantFunction("the zero function has no divisor")
    support = squarefree_part(N * D)
    out = []
    if support.degree >= 1:
        for cls, (vA, vB, vD, vN, vphi) in _classes(support, (A, B, D, N, phi)):
            if vphi:
                v = min(2 * vA, 2 * vB + 1) - 2 * vD
                out.append(_PlaceClass(cls, "weierstrass", (v,)))
            else:
                kind, vals = _pair_values(vA, vB, vN)
                out.append(_PlaceClass(cls, kind, tuple(v - vD for v in vals)))
    out.append(_infinite_places(curve, A, B, D, N))
    return out


def _neg_deg(p):
    return INF if not p else -p.degree


def _infinite_places(curve, A, B, D, N):
    g1 = curve.genus + 1
    if curve.odd:
        vA = 2 * _neg_deg(A)
        vB = 2 * _neg_deg(B) - curve.phi.degree
        return _PlaceClass(None, "inf", (min(vA, vB) + 2 * D.degree,))
    vA = _neg_deg(A)
    vB = _neg_deg(B) - g1
    kind, vals = _pair_values(vA, vB, -N.degree)
    return _PlaceClass(None, "inf-" + kind, tuple(v + D.degree for v in vals))


def _polar_degree(places):
    total = 0
    for pc in places:
        mult = 1 if pc.poly is None else pc.poly.degree
        total += mult * sum(-v for v in pc.values if v < 0)
    return total


def _is_constant(f):
    return f.b.degree < 0 and f.a.degree < 1 and f.d.degree < 1


def hf_degree(f, curve):
    """[Q(C) : Q(f)], the degree of the polar divisor of f."""
    if _is_constant(f):
        raise ConstantFunction("constant function")
    n = _polar_degree(_divisor(curve, f.a, f.b, f.d))
    if n == 0:
        raise ConstantFunction("function without poles")
    return n


def fiber_polynomial(f, curve):
    """F_t(x) = (t d - a)^2 - b^2 phi as x-coefficients in Q[t], lowest first.

    The x-content gcd(d^2, a d, a^2 - b^2 phi) is divided out, so for
    generic t the distinct roots of F_t are the x-coordinates of the
    affine fiber of f over t.
    """
    d2 = f.d * f.d
    ad = f.a * f.d
    N = f.a * f.a - f.b * f.b * curve.phi
    G = poly_gcd(poly_gcd(d2, ad), N)
    if G.degree >= 1:
        d2, ad, N = d2.exact_div(G), ad.exact_div(G), N.exact_div(G)
    n = max(d2.degree, ad.degree, N.degree)
    return [UniPoly([N[k], -2 * ad[k], d2[k]]) for k in range(n + 1)]


def fiber_size(f, curve, t0):
    """Distinct finite x-points of the fiber over t0 (b != 0 case)."""
    F = fiber_polynomial(f, curve)
    Ft = UniPoly([c(Fraction(t0)) for c in F])
    return squarefree_part(Ft).degree if Ft.degree >= 1 else 0


# -- passports --------------------------------------------------------------

@dataclass
class PlacePassport:
    value: object                        # Fraction, or None for infinity
    entries: list = field(default_factory=list)   # (descriptor, e)

    @property
    def partition(self):
        parts = []
        for desc, e in self.entries:
            parts.extend([e] * desc["points"])
        return tuple(sorted(parts, reverse=True))

    @property
    def ramification(self):
        return sum(e - 1 for e in self.partition)

    def to_json(self):
        return {
            "value": "inf" if self.value is None else format_rational(self.value),
            "partition": list(self.partition),
            "places": [dict(desc, e=e) for desc, e in self.entries],
        }


def passport_over_hyper(f, curve, t):
    """Places above t (a rational or None) with their ramification indices."""
    if t is None:
        places = _divisor(curve, f.a, f.b, f.d)
        sign = -1
    else:
        t = Fraction(t)
        places = _divisor(curve, f.a - f.d * t, f.b, f.d)
        sign = 1
    entries = []
    for pc in places:
        for v in pc.values:
            if sign * v > 0:
                entries.append((pc.descriptor(), sign * v))
    pp = PlacePassport(t, entries)
    n = hf_degree(f, curve)
    if sum(pp.partition) != n:
        raise ArithmeticError(f"fiber over {t} has size {sum(pp.partition)} != {n}")
    return pp


@dataclass
class HyperBranchReport:
    degree: int
    genus: int
    passports: dict
    branch_values: list
    non_rational_candidates: AlgebraicSet
    unaccounted_ramification: int
    is_belyi: bool

    @property
    def expected_ramification(self):
        return 2 * self.genus - 2 + 2 * self.degree

    @property
    def special_ramification(self):
        return sum(self.passports[t].ramification for t in (Fraction(0), Fraction(1), None)
                   if t in self.passports)

    def to_json(self):
        keyed = {}
        for t in sorted(self.passports, key=lambda t: (t is None, t or 0)):
            keyed["inf" if t is None else format_rational(t)] = self.passports[t].to_json()
        _, rest = self.non_rational_candidates.split()
        return {
            "degree": self.degree,
            "genus": self.genus,
            "branch_values": [format_rational(t) for t in self.branch_values if t is not None]
                             + (["inf"] if None in self.branch_values else []),
            "passports": keyed,
            "ramification_special": self.special_ramification,
            "ramification_expected": self.expected_ramification,
            "unaccounted_ramification": self.unaccounted_ramification,
            "non_rational_candidates": rest.to_json() if rest.degree >= 1 else None,
            "is_belyi": self.is_belyi,
        }


def _candidate_values(f, curve):
    """Rational t0 that might be branch values, and the non-rational remainder."""
    rats = set()
    rest = ONE
    if f.b:
        F = fiber_polynomial(f, curve)
        if len(F) >= 2:
            D = bivariate_discriminant(F) if len(F) >= 3 else ONE
            if D.degree >= 1:
                r = rational_roots(D)
                rats |= r
                rest = squarefree_part(D).exact_div(UniPoly.from_roots(r))
            if F[-1].degree >= 1:           # fiber points escape to x = inf
                rats |= rational_roots(F[-1])
        phi_res = bivariate_resultant([UniPoly([c]) for c in curve.phi.coeffs], F)
        if phi_res.degree >= 1:
            rats |= rational_roots(phi_res)
    else:
        r = RationalMap(f.a, f.d)
        rep = branch_locus(r)
        rats |= set(rep.branch_values)
        rest = rep.non_rational.defining
        # images of the Weierstrass points under a/d
        cand = bivariate_resultant([UniPoly([c]) for c in curve.phi.coeffs],
                                   [UniPoly([f.a[k], -f.d[k]])
                                    for k in range(max(f.a.degree, f.d.degree) + 1)])
        if cand.degree >= 1:
            rats |= rational_roots(cand)
            rest = rest * squarefree_part(cand).exact_div(
                UniPoly.from_roots(rational_roots(cand)))
        if curve.odd:
            v = r(None)
            if v is not None:
                rats.add(v)
    return rats, AlgebraicSet(rest)


def branch_locus_hyper(f, curve):
    """Exact passports over 0, 1, inf and every rational branch value.

    Ramification carried by non-rational branch values is not located, but
    it is counted: Riemann-Hurwitz fixes the total at 2g - 2 + 2n, so the
    shortfall of the rational fibers is exactly the ramification over
    non-rational values.  It is zero iff the map is unramified outside the
    computed rational values.
    """
    if _is_constant(f):
        raise ConstantFunction("constant function")
    n = hf_degree(f, curve)
    g = curve.genus
    passports = {}
    for t in (Fraction(0), Fraction(1), None):
        passports[t] = passport_over_hyper(f, curve, t)
    rats, nonrat = _candidate_values(f, curve)
    for t in sorted(rats - {Fraction(0), Fraction(1)}):
        pp = passport_over_hyper(f, curve, t)
        if pp.ramification:
            passports[t] = pp
    total = sum(pp.ramification for pp in passports.values())
    expected = 2 * g - 2 + 2 * n
    if total > expected:
        raise ArithmeticError(f"ramification {total} exceeds Riemann-Hurwitz total {expected}")
    missing = expected - total
    if missing and nonrat.defining.degree < 1:
        raise ArithmeticError(f"{missing} ramification unaccounted for and no candidates left")
    branch = [t for t in passports if passports[t].ramification]
    branch.sort(key=lambda t: (t is None, t or 0))
    if not missing:
        nonrat = AlgebraicSet()
    special = not missing and all(t is None or t in (0, 1) for t in branch)
    return HyperBranchReport(n, g, passports, branch, nonrat, missing, special)


def is_belyi_hyper(f, curve):
    rep = branch_locus_hyper(f, curve)
    return rep.is_belyi, rep


# -- automorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class CurveAutomorphism:
    """(x, y) -> ((alpha x + beta) / (gamma x + delta), c y / (gamma x + delta)^(g+1))."""

    mobius: tuple
    c: Fraction
    label: str = ""

    @classmethod
    def involution(cls):
        return cls((1, 0, 0, 1), Fraction(-1), "hyperelliptic involution")

    @classmethod
    def identity(cls):
        return cls((1, 0, 0, 1), Fraction(1), "identity")

    @classmethod
    def from_json(cls, data):
        m = tuple(Fraction(v) for v in data["mobius"])
        if len(m) != 4:
            raise ValueError("mobius needs four entries")
        return cls(m, Fraction(data.get("c", "1")), data.get("label", ""))

    def to_json(self):
        return {"mobius": [format_rational(v) for v in self.mobius],
                "c": format_rational(self.c), "label": self.label}


def _hom(p, num, den, k):
    return p.homogeneous_eval(num, den, k) if p else UniPoly()


def _check_automorphism(sigma, curve):
    al, be, ga, de = (Fraction(v) for v in sigma.mobius)
    if al * de - be * ga == 0:
        raise NotAnAutomorphism(f"{sigma.label or sigma.mobius}: singular Moebius map")
    num, den = UniPoly([be, al]), UniPoly([de, ga])
    w = 2 * (curve.genus + 1)
    lhs = _hom(curve.phi, num, den, w)
    if lhs != curve.phi * (sigma.c * sigma.c):
        raise NotAnAutomorphism(f"{sigma.label or sigma.mobius} does not preserve y^2 = phi")
    return num, den


def _pullback(f, curve, sigma):
    num, den = _check_automorphism(sigma, curve)
    g1 = curve.genus + 1
    K = max(f.a.degree, f.b.degree + g1, f.d.degree, 0)
    a = _hom(f.a, num, den, K)
    b = _hom(f.b, num, den, K - g1) * sigma.c if f.b else UniPoly()
    d = _hom(f.d, num, den, K)
    return HyperellipticFunction(a, b, d)


def automorphism_candidates_check(f, curve, candidates=()):
    """Decide f o sigma == f for each candidate; the involution is always tried."""
    cands = [CurveAutomorphism.involution()]
    cands += [c for c in candidates if c != cands[0]]
    results = []
    for sigma in cands:
        h = _pullback(f, curve, sigma)
        results.append({"automorphism": sigma.to_json(), "fixes_f": h == f})
    return {
        "candidates": results,
        "fixing": [r["automorphism"] for r in results if r["fixes_f"]],
        "involution_fixes_f": results[0]["fixes_f"],
    }
