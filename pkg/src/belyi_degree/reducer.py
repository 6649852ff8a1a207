"""Belyi's algorithm over Q, with a checkable certificate.

Stage (a) composes with the squarefree defining polynomial of the
non-rational part of the branch set until every point is rational.  Stage
(b) removes one rational point per step: a permutation of {0, 1, inf}
moves it into (0, 1), where it equals m/(m+n) in lowest terms, and
``beta_{m,n}`` sends it to 1 while keeping {0, 1, inf} special.
"""

import math
from dataclasses import dataclass, field

from .exact import (AlgebraicSet, Fraction, UniPoly, bivariate_resultant, format_rational,
                    squarefree_part)
from .ratmap import RationalMap, is_belyi

__all__ = [
    "BelyiCertificate", "ReductionCapExceeded", "belyi_poly", "s3_shift",
    "reduce_rational", "reduce_algebraic", "verify_certificate", "critical_values",
    "MOBIUS_LABELS",
]

MAX_DEGREE = 10 ** 6
MAX_BITS = 10 ** 5
MAX_ITERATIONS = 64

# the six Moebius maps permuting {0, 1, inf}, as (a, b, c, d) for (ax+b)/(cx+d)
MOBIUS_LABELS = {
    "x": (1, 0, 0, 1),
    "1-x": (-1, 1, 0, 1),
    "1/x": (0, 1, 1, 0),
    "1/(1-x)": (0, 1, -1, 1),
    "x/(x-1)": (1, 0, 1, -1),
    "(x-1)/x": (1, -1, 1, 0),
}


class ReductionCapExceeded(RuntimeError):
    """Degree, height or iteration guard tripped; ``detail`` says which."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail or {}


def belyi_poly(m, n):
    """beta_{m,n}(x) = (m+n)^(m+n) / (m^m n^n) * x^m (1-x)^n."""
    if m < 1 or n < 1:
        raise ValueError("belyi_poly needs m, n >= 1")
    c = Fraction((m + n) ** (m + n), m ** m * n ** n)
    return UniPoly([0] * m + [c * (-1) ** k * math.comb(n, k) for k in range(n + 1)])


def _beta_bits(m, n):
    """Bit length of the leading coefficient of beta_{m,n}, without building it.

    gcd(m, n) = 1 makes (m+n)^(m+n) / (m^m n^n) already reduced, so its
    numerator has about (m+n) log2(m+n) bits.
    """
    return math.ceil(max((m + n) * math.log2(m + n), m * math.log2(m) + n * math.log2(n)))


def _mobius_apply(label, t):
    a, b, c, d = MOBIUS_LABELS[label]
    if t is None:
        return None if c == 0 else Fraction(a, c)
    den = c * t + d
    if not den:
        return None
    return (a * t + b) / den


def s3_shift(lam):
    """First map (in label order) taking lam into the open interval (0, 1)."""
    lam = Fraction(lam)
    if lam in (0, 1):
        raise ValueError("s3_shift needs a point outside {0, 1, inf}")
    for label in MOBIUS_LABELS:
        v = _mobius_apply(label, lam)
        if v is not None and 0 < v < 1:
            return label, v
    raise AssertionError(f"no permutation of {{0, 1, inf}} moves {lam} into (0, 1)")


@dataclass
class BelyiCertificate:
    steps: list
    total: RationalMap
    final_branch_set: AlgebraicSet
    input_points: list = field(default_factory=list)
    input_defining: UniPoly = None
    labels: list = field(default_factory=list)

    @property
    def degree(self):
        return self.total.degree

    def to_json(self, verified=None):
        out = {
            "steps": [{"label": lab, "map": s.to_json()} for lab, s in zip(self.labels, self.steps)],
            "total": self.total.to_json(),
            "degree": self.degree,
        }
        if verified is not None:
            out["verified"] = verified
        return out


def _special(t):
    return t is None or t == 0 or t == 1


def _pick(points):
    # largest denominator first, ties by numerator
    return min(points, key=lambda t: (-t.denominator, t.numerator))


def _image(f, t):
    return f(t)


def _guard_degree(deg, max_degree):
    if deg > max_degree:
        raise ReductionCapExceeded(
            f"total degree {deg} exceeds cap {max_degree}",
            {"cap": "degree", "value": deg, "limit": max_degree})


def _guard_bits(bits, max_bits):
    if bits > max_bits:
        raise ReductionCapExceeded(
            f"coefficient size {bits} bits exceeds cap {max_bits}",
            {"cap": "bits", "value": bits, "limit": max_bits})


def _bits(f):
    return max(f.num.height_bits(), f.den.height_bits())


class _Builder:
    def __init__(self, max_degree, max_bits):
        self.steps = []
        self.labels = []
        self.degree = 1
        self.max_degree = max_degree
        self.max_bits = max_bits

    def add(self, label, step):
        deg = self.degree * step.degree
        _guard_degree(deg, self.max_degree)
        _guard_bits(_bits(step), self.max_bits)
        # composed height grows roughly like deg(outer) * bits(inner)
        self.steps.append(step)
        self.labels.append(label)
        self.degree = deg

    def total(self):
        f = RationalMap(UniPoly([0, 1]))
        for step in self.steps:
            _guard_bits(step.degree * _bits(f) + _bits(step), self.max_bits * 4)
            f = step.compose(f)
            _guard_bits(_bits(f), self.max_bits)
        return f


def _rational_stage(points, builder, trace):
    pts = {Fraction(t) for t in points if not _special(t)}
    while pts:
        lam = _pick(pts)
        label, shifted = s3_shift(lam)
        m = shifted.numerator
        n = shifted.denominator - m
        _guard_degree(builder.degree * (m + n), builder.max_degree)
        _guard_bits(_beta_bits(m, n), builder.max_bits)
        beta = RationalMap(belyi_poly(m, n))
        step = beta.compose(RationalMap.mobius(*MOBIUS_LABELS[label]))
        builder.add(f"beta_{m},{n} o {label}", step)
        new = set()
        for t in pts:
            v = step(t)
            if not _special(v):
                new.add(v)
        if len(new) >= len(pts):
            raise AssertionError("non-special point count failed to decrease")
        trace.append(sorted(new))
        pts = new
    return pts


def reduce_rational(points, max_degree=MAX_DEGREE, max_bits=MAX_BITS):
    """Certificate for a finite set of rationals; 0, 1 and inf are always included."""
    pts = sorted({Fraction(t) for t in points if t is not None})
    builder = _Builder(max_degree, max_bits)
    trace = []
    _rational_stage(pts, builder, trace)
    total = builder.total()
    return BelyiCertificate(builder.steps, total, _final_set(total, pts), pts, None,
                            builder.labels)


def critical_values(m):
    """Squarefree polynomial in y whose roots are the finite critical values of m."""
    dm = m.derivative()
    if dm.degree < 1:
        return UniPoly([1])
    A = [UniPoly([c]) for c in dm.coeffs]
    B = [UniPoly([-m[0], 1])] + [UniPoly([-c]) for c in m.coeffs[1:]]
    r = bivariate_resultant(A, B)
    return squarefree_part(r)


def reduce_algebraic(S, max_degree=MAX_DEGREE, max_bits=MAX_BITS,
                     max_iterations=MAX_ITERATIONS):
    """Certificate for an AlgebraicSet (0, 1 and inf are added)."""
    builder = _Builder(max_degree, max_bits)
    current = S.union(AlgebraicSet.from_points([0, 1], True))
    input_defining = S.defining
    original_rats = sorted(S.rational_points())
    for _ in range(max_iterations):
        rats, rest = current.split()
        if rest.degree < 1:
            break
        m = rest.monic()
        builder.add(f"defining polynomial (degree {m.degree})", RationalMap(m))
        images = {m(t) for t in rats} | {Fraction(0), Fraction(1)}
        cv = critical_values(m)
        nxt = AlgebraicSet.from_points(images, True).union(AlgebraicSet(cv, True))
        _, nxt_rest = nxt.split()
        if nxt_rest.degree >= rest.degree:
            raise AssertionError("non-rational degree failed to decrease")
        _guard_bits(nxt.defining.height_bits(), max_bits)
        current = nxt
    else:
        raise ReductionCapExceeded(f"no rational branch set after {max_iterations} iterations",
                                   {"cap": "iterations", "limit": max_iterations})
    rats, _ = current.split()
    _rational_stage(sorted(rats), builder, [])
    total = builder.total()
    cert = BelyiCertificate(builder.steps, total, None, original_rats, input_defining,
                            builder.labels)
    cert.final_branch_set = _final_set_algebraic(total, S)
    return cert


def _final_set(total, pts):
    images = {total(t) for t in list(pts) + [Fraction(0), Fraction(1), None]}
    finite = [t for t in images if t is not None]
    return AlgebraicSet.from_points(finite, None in images)


def _final_set_algebraic(total, S):
    rats, _ = S.split()
    return _final_set(total, rats)


def _maps_into_special(total, defining):
    # total sends every root of ``defining`` into {0, 1, inf}:
    # defining | num * (num - den) * den
    P, Q = total.num, total.den
    if defining is None or defining.degree < 1:
        return True
    return not (P * (P - Q) * Q) % squarefree_part(defining)


def verify_certificate(cert, S=None):
    """Independent check through the discriminant pipeline of the analyzer.

    The total must be Belyi, every input point must land in {0, 1, inf},
    and the steps must compose to the total.
    """
    ok, report = is_belyi(cert.total)
    if not ok:
        return False, report
    for t in list(cert.input_points) + [Fraction(0), Fraction(1), None]:
        if not _special(cert.total(t)):
            return False, report
    if not _maps_into_special(cert.total, cert.input_defining):
        return False, report
    f = RationalMap(UniPoly([0, 1]))
    for step in cert.steps:
        f = step.compose(f)
    if f != cert.total:
        return False, report
    deg = 1
    for step in cert.steps:
        deg *= step.degree
    if deg != cert.total.degree:
        return False, report
    return True, report


def describe_points(points):
    return [format_rational(t) for t in points]
