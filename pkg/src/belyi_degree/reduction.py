"""Elliptic curves over Q: invariants, global minimal models, reduction types.

Minimal models follow Laska, Kraus and Connell: scale to an integral
model, then for every prime dividing gcd(c4^3, c6^2) take the largest u
allowed by the valuations of c4, c6 and Delta, backing off by one at 2 and
3 when Kraus's congruence conditions fail.  Kodaira symbols are given for
p >= 5 only, from the valuation table.
"""

from dataclasses import dataclass, field
from math import gcd

from sympy import factorint

from .exact import Fraction, UniPoly, discriminant, format_rational

__all__ = [
    "WeierstrassModel", "Transformation", "ReductionReport", "SingularCurve",
    "UnsupportedPrime", "invariants", "minimal_model", "kodaira_type", "bad_primes",
    "stable_bad_primes", "lower_bounds", "reduction_report", "valuation",
    "weierstrass_from_phi", "hyperelliptic_candidate_bad_primes", "genus_lower_bound",
]


class SingularCurve(ValueError):
    pass


class UnsupportedPrime(ValueError):
    pass


def valuation(q, p):
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    if not q:
        raise ValueError("valuation of zero")
    v = 0
    n, d = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _v(q, p):
    return float("inf") if not q else valuation(q, p)


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_list(cls, coeffs):
        if len(coeffs) == 2:
            return cls(0, 0, 0, coeffs[0], coeffs[1])
        if len(coeffs) != 5:
            raise ValueError("expected [a1, a2, a3, a4, a6] or [a4, a6]")
        return cls(*(Fraction(c) for c in coeffs))

    @property
    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def to_json(self):
        return [format_rational(c) for c in self.coeffs]

    @property
    def b2(self):
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.coeffs
        return (a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2)

    @property
    def c4(self):
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    @property
    def j(self):
        D = self.discriminant
        if not D:
            raise SingularCurve("singular Weierstrass model (discriminant 0)")
        return self.c4 ** 3 / D

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def transform(self, u, r, s, t):
        """The model in coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        u, r, s, t = (Fraction(v) for v in (u, r, s, t))
        a1, a2, a3, a4, a6 = self.coeffs
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
        na3 = (a3 + r * a1 + 2 * t) / u ** 3
        na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
        na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
        return WeierstrassModel(na1, na2, na3, na4, na6)


def invariants(model):
    D = model.discriminant
    if not D:
        raise SingularCurve("singular Weierstrass model (discriminant 0)")
    return {
        "b2": model.b2, "b4": model.b4, "b6": model.b6, "b8": model.b8,
        "c4": model.c4, "c6": model.c6, "discriminant": D, "j": model.j,
    }


@dataclass(frozen=True)
class Transformation:
    u: Fraction
    r: Fraction
    s: Fraction
    t: Fraction

    def compose(self, other):
        """Apply self, then other (both in the x = u^2 x' + r convention)."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Transformation(u1 * u2, r1 + u1 ** 2 * r2, s1 + u1 * s2,
                              t1 + u1 ** 2 * s1 * r2 + u1 ** 3 * t2)

    def to_json(self):
        return {k: format_rational(getattr(self, k)) for k in ("u", "r", "s", "t")}


IDENTITY = Transformation(Fraction(1), Fraction(0), Fraction(0), Fraction(0))


def _integralize(model):
    """Scale x, y by u = 1/k so all a_i become integers."""
    k = 1
    while True:
        m = model.transform(Fraction(1, k), 0, 0, 0)
        if m.is_integral():
            return m, Transformation(Fraction(1, k), Fraction(0), Fraction(0), Fraction(0))
        # smallest k clearing the a_i denominators: grow by the offending primes
        bad = 1
        for c in m.coeffs:
            if c.denominator != 1:
                bad = bad * c.denominator // gcd(bad, c.denominator)
        k *= _radical(bad)


def _radical(n):
    out = 1
    for p in factorint(n):
        out *= p
    return out


def _kraus_ok(c4, c6, p):
    """Kraus's conditions for (c4, c6) to come from an integral model at p."""
    if p == 3:
        return _v(c6, 3) != 2
    if p == 2:
        return c6 % 4 == 3 or (c4 % 16 == 0 and c6 % 32 in (0, 8))
    return True


def _from_c4_c6(c4, c6):
    """An integral model with invariants (c4, c6), by Kraus's reconstruction."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4 = Fraction(b2 * b2 - c4, 24)
    b6 = Fraction(-b2 ** 3 + 36 * b2 * b4 - c6, 216)
    if b4.denominator != 1 or b6.denominator != 1:
        raise ArithmeticError(f"(c4, c6) = ({c4}, {c6}) fails Kraus's conditions")
    b4, b6 = int(b4), int(b6)
    a1 = b2 % 2
    a3 = b6 % 2
    a2 = (b2 - a1) // 4
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    return WeierstrassModel(a1, a2, a3, a4, a6)


def _solve_transformation(src, dst, u):
    """(r, s, t) with src.transform(u, r, s, t) == dst."""
    a1, a2, a3, a4, a6 = src.coeffs
    s = (u * dst.a1 - a1) / 2
    r = (u ** 2 * dst.a2 - a2 + s * a1 + s * s) / 3
    t = (u ** 3 * dst.a3 - a3 - r * a1) / 2
    tr = Transformation(Fraction(u), r, s, t)
    if src.transform(*_tuple(tr)) != dst:
        raise ArithmeticError("failed to solve for the minimal-model transformation")
    return tr


def _tuple(tr):
    return (tr.u, tr.r, tr.s, tr.t)


def minimal_model(model):
    """Global minimal model over Z and the transformation reaching it.

    Returns (minimal model, Transformation) with
    model.transform(u, r, s, t) == minimal and Delta = u^12 Delta_min.
    """
    invariants(model)
    integral, scale = _integralize(model)
    c4, c6, D = integral.c4, integral.c6, integral.discriminant
    c4, c6, D = int(c4), int(c6), int(D)
    u = 1
    primes = set(factorint(abs(D)))
    for p in sorted(primes):
        d = _v(D, p) // 12
        d = min(d, _v(c4, p) // 4 if c4 else d, _v(c6, p) // 6 if c6 else d)
        while d > 0:
            q = p ** d
            if _kraus_ok(c4 // q ** 4, c6 // q ** 6, p):
                break
            d -= 1
        u *= p ** d
    c4m, c6m = c4 // u ** 4, c6 // u ** 6
    target = _from_c4_c6(c4m, c6m)
    tr = _solve_transformation(integral, target, Fraction(u))
    total = scale.compose(tr)
    out = model.transform(*_tuple(total))
    if out != target:
        raise ArithmeticError("minimal-model composition mismatch")
    return out, total


def kodaira_type(model, p):
    """Kodaira symbol at a prime p >= 5 (the model is minimized first)."""
    if p < 5:
        raise UnsupportedPrime(f"Kodaira types are only classified for p >= 5, not {p}")
    m, _ = minimal_model(model)
    return _kodaira_from_valuations(_v(m.discriminant, p), _v(m.c4, p))


def _kodaira_from_valuations(vD, vc4):
    if vD == 0:
        return "good"
    if vc4 == 0:
        return f"I{vD}"
    table = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}
    if vD > 6 and vc4 == 2:
        return f"I{vD - 6}*"
    if vD in table:
        return table[vD]
    raise ArithmeticError(f"valuations v(Delta) = {vD}, v(c4) = {vc4} are not minimal")


def bad_primes(model):
    m, _ = minimal_model(model)
    return set(factorint(abs(int(m.discriminant))))


def stable_bad_primes(model):
    """Primes where j has negative valuation (potentially multiplicative reduction)."""
    j = model.j
    return set(factorint(j.denominator)) if j.denominator > 1 else set()


def genus_lower_bound(g):
    """Degree bound from Riemann-Hurwitz: covers of genus g branched over 3 points.

    2g - 2 = -2n + sum(e - 1) and sum(e - 1) <= 3n - 3 give n >= 2g + 1.
    """
    return 2 * g + 1


def lower_bounds(model):
    stable = stable_bad_primes(model)
    bad = bad_primes(model)
    return {
        "absolute_lb": max(stable, default=1),
        "relative_lb": max(bad, default=1),
        "genus_lb": genus_lower_bound(1),
    }


@dataclass
class ReductionReport:
    model: WeierstrassModel
    minimal: WeierstrassModel
    transformation: Transformation
    primes: list = field(default_factory=list)
    bad_primes: set = field(default_factory=set)
    stable_bad_primes: set = field(default_factory=set)
    bounds: dict = field(default_factory=dict)

    def to_json(self):
        inv = invariants(self.minimal)
        return {
            "model": self.model.to_json(),
            "minimal_model": self.minimal.to_json(),
            "transformation": self.transformation.to_json(),
            "invariants": {k: format_rational(v) for k, v in inv.items()},
            "discriminant_factorization": _factor_json(inv["discriminant"]),
            "j_factorization": _factor_json(inv["j"]) if inv["j"] else {},
            "primes": self.primes,
            "bad_primes": sorted(self.bad_primes),
            "stable_bad_primes": sorted(self.stable_bad_primes),
            "bounds": self.bounds,
        }


def _factor_json(q):
    q = Fraction(q)
    out = {}
    for p, e in factorint(abs(q.numerator)).items():
        out[str(p)] = e
    for p, e in factorint(q.denominator).items():
        out[str(p)] = -e
    return dict(sorted(out.items(), key=lambda kv: int(kv[0])))


def reduction_report(model):
    m, tr = minimal_model(model)
    D, c4 = m.discriminant, m.c4
    bad = set(factorint(abs(int(D))))
    stable = stable_bad_primes(m)
    records = []
    for p in sorted(bad):
        rec = {"p": p, "v_disc_min": _v(D, p), "v_c4": None if not c4 else _v(c4, p),
               "good": False}
        rec["kodaira_type"] = _kodaira_from_valuations(_v(D, p), _v(c4, p)) if p >= 5 else None
        records.append(rec)
    bounds = {
        "absolute_lb": max(stable, default=1),
        "relative_lb": max(bad, default=1),
        "genus_lb": genus_lower_bound(1),
    }
    return ReductionReport(model, m, tr, records, bad, stable, bounds)


def weierstrass_from_phi(phi):
    """y^2 = c3 x^3 + c2 x^2 + c1 x + c0 as a long Weierstrass model.

    X = c3 x, Y = c3 y turns it into Y^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2.
    """
    if phi.degree != 3:
        raise ValueError("a Weierstrass model needs a cubic phi")
    c0, c1, c2, c3 = phi.coeffs
    return WeierstrassModel(0, c2, 0, c1 * c3, c0 * c3 * c3)


def hyperelliptic_candidate_bad_primes(phi):
    """Primes dividing disc(phi) of the primitive integral model, plus 2.

    One-sided: every prime of bad reduction of y^2 = phi(x) is in this set,
    but a listed prime need not be bad.
    """
    ints = phi.integer_primitive()
    prim = UniPoly(ints)
    D = discriminant(prim) * prim.lc
    out = set(factorint(abs(int(D)))) | {2}
    return out
