"""Exact rational arithmetic and univariate polynomials over Q.

Rationals are :class:`fractions.Fraction`.  Polynomials are immutable dense
coefficient tuples, lowest degree first; the zero polynomial has no
coefficients and degree -1.

The resultant kernel is a subresultant pseudo-remainder sequence written
over an arbitrary integral domain, so the same code handles Q (field
division) and Q[y] (exact polynomial division) for bivariate eliminations.
"""

from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "Fraction", "UniPoly", "AlgebraicSet", "X",
    "parse_rational", "format_rational",
    "poly_gcd", "resultant", "discriminant", "squarefree_part",
    "squarefree_decomposition", "rational_roots",
    "bivariate_resultant", "bivariate_discriminant",
]


def parse_rational(s):
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        s = s.strip()
        if not s:
            raise ValueError("empty rational string")
        return Fraction(s)
    raise TypeError(f"cannot read a rational from {s!r}")


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @classmethod
    def from_json(cls, data):
        return cls(parse_rational(s) for s in data)

    def to_json(self):
        return [format_rational(c) for c in self.coeffs]

    # -- basic queries

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = format_rational(abs(c))
            if k == 0:
                body = mag
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if abs(c) == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations

    @staticmethod
    def _lift(other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, v in enumerate(b):
            c[i] += v
        return UniPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        c = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if not u:
                continue
            for j, v in enumerate(b):
                c[i + j] += u * v
        return UniPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = UniPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(o.coeffs)
        if dq < 0:
            return UniPoly(), self
        q = [Fraction(0)] * (dq + 1)
        inv = 1 / o.lc
        db = o.degree
        for k in range(dq, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for i, v in enumerate(o.coeffs):
                    r[k + i] -= c * v
        return UniPoly(q), UniPoly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c / other for c in self.coeffs)
        return self.exact_div(other)

    # -- evaluation and composition

    def __call__(self, x):
        if isinstance(x, UniPoly):
            return self.compose(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner):
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def homogeneous_eval(self, num, den, n=None):
        """Return den^n * self(num/den) as a polynomial, n defaulting to deg."""
        n = self.degree if n is None else n
        out = UniPoly()
        if not self.coeffs:
            return out
        num_pows = [UniPoly([1])]
        for _ in range(self.degree):
            num_pows.append(num_pows[-1] * num)
        den_pow = UniPoly([1])
        for k in range(n, -1, -1):
            if k <= self.degree and self.coeffs[k]:
                out = out + num_pows[k] * den_pow * self.coeffs[k]
            if k:
                den_pow = den_pow * den
        return out

    def derivative(self):
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self):
        if not self.coeffs:
            return self
        return self * (1 / self.lc)

    def valuation(self, x0, _g=None):
        """Multiplicity of x0 as a root (None for the zero polynomial)."""
        if not self.coeffs:
            return None
        lin = UniPoly([-Fraction(x0), 1])
        k, p = 0, self
        while True:
            q, r = divmod(p, lin)
            if r:
                return k
            k, p = k + 1, q

    def integer_primitive(self):
        """Return the primitive integer polynomial (as ints) proportional to self, lc > 0."""
        if not self.coeffs:
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints

    def primitive(self):
        return UniPoly(self.integer_primitive())

    def height_bits(self):
        bits = 0
        for c in self.coeffs:
            bits = max(bits, abs(c.numerator).bit_length(), c.denominator.bit_length())
        return bits


X = UniPoly([0, 1])


# ---------------------------------------------------------------------------
# generic subresultant machinery over an integral domain
#
# Coefficient lists are lowest degree first.  ``div`` is exact division in
# the coefficient domain, ``one`` its unit element.


def _strip(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def _ring_pow(a, k, one):
    out = one
    while k:
        if k & 1:
            out = out * a
        k >>= 1
        if k:
            a = a * a
    return out


def _prem(A, B, one):
    """Pseudo-remainder: lc(B)^(degA-degB+1) * A mod B."""
    db = len(B) - 1
    lb = B[-1]
    R = list(A)
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= db:
        lr = R[-1]
        shift = len(R) - 1 - db
        R = [lb * r for r in R]
        for i, b in enumerate(B):
            R[i + shift] = R[i + shift] - lr * b
        R = _strip(R)
        e -= 1
    if e > 0:
        f = _ring_pow(lb, e, one)
        R = [f * r for r in R]
    return R


def _subresultant(A, B, one, div):
    A, B = _strip(A), _strip(B)
    zero = one - one
    if not A or not B:
        return zero
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) * (len(B) - 1) % 2:
            s = -1
        A, B = B, A
    if len(B) == 1:
        return _ring_pow(B[0], len(A) - 1, one) * s
    g = h = one
    while True:
        da, dbb = len(A) - 1, len(B) - 1
        delta = da - dbb
        if da % 2 and dbb % 2:
            s = -s
        R = _prem(A, B, one)
        A = B
        if not R:
            return zero
        q = g * _ring_pow(h, delta, one)
        B = [div(r, q) for r in R]
        g = A[-1]
        if delta:
            h = div(_ring_pow(g, delta, one), _ring_pow(h, delta - 1, one))
        if len(B) == 1:
            da = len(A) - 1
            h = div(_ring_pow(B[0], da, one), _ring_pow(h, da - 1, one))
            return h * s


def _fdiv(a, b):
    return a / b


def _int_content(c):
    g = 0
    for v in c:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _int_prem(a, b):
    lb = b[-1]
    r = list(a)
    db = len(b) - 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * v for v in r]
        for i, v in enumerate(b):
            r[i + shift] -= lr * v
        while r and not r[-1]:
            r.pop()
    return r


_GCD_PRIME = (1 << 61) - 1


def poly_gcd(p, q):
    """Monic gcd; gcd(0, 0) = 0.

    Runs a primitive pseudo-remainder sequence over Z.  A gcd that is
    constant modulo a prime not dividing either leading coefficient proves
    coprimality and short-cuts the sequence.
    """
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.degree == 0 or q.degree == 0:
        return UniPoly([1])
    a, b = p.integer_primitive(), q.integer_primitive()
    if len(a) < len(b):
        a, b = b, a
    m = _GCD_PRIME
    if a[-1] % m and b[-1] % m and _mod_poly_gcd_is_one(a, b, m):
        return UniPoly([1])
    while b:
        r = _int_prem(a, b)
        if r:
            g = _int_content(r)
            r = [v // g for v in r]
        a, b = b, r
        if b and len(b) == 1:
            return UniPoly([1])
    return UniPoly(a).monic()


def resultant(p, q):
    """Res(p, q) = lc(p)^deg q * prod q(alpha) over the roots alpha of p."""
    if not p or not q:
        raise ValueError("resultant of a zero polynomial")
    return _subresultant(list(p.coeffs), list(q.coeffs), Fraction(1), _fdiv)


def discriminant(p):
    n = p.degree
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    if n == 1:
        return Fraction(1)
    r = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / p.lc


def squarefree_decomposition(p):
    """Yun's algorithm: monic squarefree a_1, a_2, ... with p ~ prod a_i^i."""
    if not p:
        raise ValueError("squarefree decomposition of zero")
    out = []
    if p.degree < 1:
        return out
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    while b.degree >= 1:
        a = poly_gcd(b, d)
        out.append(a)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
    while out and out[-1].degree < 1:
        out.pop()
    return out


def squarefree_part(p):
    if not p:
        raise ValueError("squarefree part of zero")
    if p.degree < 1:
        return UniPoly([1])
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def _divisors(n):
    import sympy
    return sympy.divisors(n)


# divisor enumeration is used while the candidate count stays small; larger
# cases go through roots modulo a good prime, Hensel lifting and rational
# reconstruction
_FACTOR_LIMIT = 10 ** 24
_CANDIDATE_LIMIT = 4096


def rational_roots(p):
    """The set of rational roots of p (nonzero)."""
    if not p:
        raise ValueError("rational roots of the zero polynomial")
    roots = set()
    q = squarefree_part(p) if p.degree >= 1 else p
    if q.degree < 1:
        return roots
    if not q[0]:
        roots.add(Fraction(0))
        q = UniPoly(q.coeffs[1:])
    ints = q.integer_primitive()
    if len(ints) <= 1:
        return roots
    if len(ints) == 2:
        roots.add(Fraction(-ints[0], ints[1]))
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 <= _FACTOR_LIMIT and an <= _FACTOR_LIMIT:
        nums, dens = _divisors(a0), _divisors(an)
        if len(nums) * len(dens) <= _CANDIDATE_LIMIT:
            roots.update(_roots_by_divisors(q, ints, nums, dens))
            return roots
    roots.update(_roots_modular(ints))
    return roots


def _roots_by_divisors(q, ints, nums, dens):
    an = abs(ints[-1])
    # Cauchy bound prunes candidates
    bound = 1 + max(Fraction(abs(c), an) for c in ints[:-1])
    found = set()
    for num in nums:
        for den in dens:
            if gcd(num, den) != 1 or Fraction(num, den) > bound:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if not q(cand):
                    found.add(cand)
    return found


def _mod_eval(ints, x, m):
    acc = 0
    for c in reversed(ints):
        acc = (acc * x + c) % m
    return acc


def _mod_poly_gcd_is_one(a, b, p):
    def trim(c):
        while c and c[-1] % p == 0:
            c.pop()
        return c
    a = trim([c % p for c in a])
    b = trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, v in enumerate(b):
                a[i + shift] = (a[i + shift] - f * v) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) == 1


def _good_prime(ints):
    import sympy
    deriv = [k * c for k, c in enumerate(ints)][1:]
    p = 1009
    while True:
        if ints[-1] % p and _mod_poly_gcd_is_one(ints, deriv, p):
            return p
        p = sympy.nextprime(p)


def _rational_reconstruct(u, m):
    # a/b = u mod m with |a|, |b| <= sqrt(m/2)
    bound = isqrt(m // 2)
    r0, r1 = m, u % m
    t0, t1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        t0, t1 = t1, t0 - qt * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    return Fraction(r1, t1)


def _roots_modular(ints):
    p = _good_prime(ints)
    deriv = [k * c for k, c in enumerate(ints)][1:]
    a0, an = abs(ints[0]), abs(ints[-1])
    # a root a/b has |a| <= |a0| and |b| <= |an|
    target = 2 * max(a0, an) ** 2 + 1
    found = set()
    for r in range(p):
        if _mod_eval(ints, r, p):
            continue
        x, m = r, p
        while m < target:
            m2 = m * m
            fx = _mod_eval(ints, x, m2)
            dfx = _mod_eval(deriv, x, m2)
            x = (x - fx * pow(dfx, -1, m2)) % m2
            m = m2
        cand = _rational_reconstruct(x, m)
        if cand is not None and not UniPoly(ints)(cand):
            found.add(cand)
    return found


# ---------------------------------------------------------------------------
# bivariate eliminations: polynomials in x with coefficients in Q[y]


def _pdiv(a, b):
    return a.exact_div(b)


def bivariate_resultant(F, G):
    """Res_x(F, G) for F, G given as lists of UniPoly (in y), x-lowest first."""
    one = UniPoly([1])
    return _subresultant(list(F), list(G), one, _pdiv)


def bivariate_discriminant(F):
    """disc_x(F) in Q[y] for F a list of UniPoly coefficients (generic x-degree)."""
    F = _strip(F)
    n = len(F) - 1
    if n < 1:
        raise ValueError("discriminant of a polynomial constant in x")
    if n == 1:
        return UniPoly([1])
    dF = [F[k] * k for k in range(1, len(F))]
    r = bivariate_resultant(F, dF)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return r.exact_div(F[-1]) * sign


def bivariate_content(F):
    """gcd over Q[y] of the coefficients of F (monic)."""
    g = UniPoly()
    for c in F:
        g = poly_gcd(g, c) if g else c.monic()
        if g.degree == 0:
            break
    return g


class AlgebraicSet:
    """A finite Galois-stable subset of the projective line over Q.

    The finite points are the roots of a squarefree ``defining`` polynomial
    (the constant 1 when there are none); ``includes_infinity`` flags the
    point at infinity.
    """

    __slots__ = ("defining", "includes_infinity")

    def __init__(self, defining=None, includes_infinity=False):
        if defining is None or not defining or defining.degree < 1:
            defining = UniPoly([1])
        else:
            defining = squarefree_part(defining)
        self.defining = defining
        self.includes_infinity = bool(includes_infinity)

    @classmethod
    def from_points(cls, points, infinity=False):
        return cls(UniPoly.from_roots(set(Fraction(p) for p in points)), infinity)

    def __eq__(self, other):
        return (isinstance(other, AlgebraicSet) and self.defining == other.defining
                and self.includes_infinity == other.includes_infinity)

    def __hash__(self):
        return hash((self.defining, self.includes_infinity))

    def __repr__(self):
        inf = " + {inf}" if self.includes_infinity else ""
        return f"AlgebraicSet(roots of {self.defining}{inf})"

    @property
    def finite_count(self):
        return self.defining.degree

    def is_empty(self):
        return self.defining.degree < 1 and not self.includes_infinity

    def union(self, other):
        return AlgebraicSet(self.defining * other.defining,
                            self.includes_infinity or other.includes_infinity)

    def rational_points(self):
        if self.defining.degree < 1:
            return set()
        return rational_roots(self.defining)

    def split(self):
        """(rational points, defining polynomial of the non-rational part)."""
        rats = self.rational_points()
        rest = self.defining.exact_div(UniPoly.from_roots(rats)).monic()
        return rats, rest

    def contains(self, t):
        if t is None:
            return self.includes_infinity
        return self.defining.degree >= 1 and not self.defining(Fraction(t))

    def is_subset_of_special(self):
        """True when every point lies in {0, 1, inf}."""
        d = self.defining
        for r in (0, 1):
            if d.degree >= 1 and not d(Fraction(r)):
                d = d.exact_div(UniPoly([-r, 1]))
        return d.degree < 1

    def to_json(self):
        rats, rest = self.split()
        return {
            "rational": [format_rational(r) for r in sorted(rats)],
            "infinity": self.includes_infinity,
            "non_rational_defining": rest.to_json() if rest.degree >= 1 else None,
        }


def is_square_int(n):
    return n >= 0 and isqrt(n) ** 2 == n


def rational_sqrt(q):
    """Return the rational square root of q, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    if is_square_int(a) and is_square_int(b):
        return Fraction(isqrt(a), isqrt(b))
    return None
