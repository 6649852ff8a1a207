"""Dessins d'enfants as transitive pairs of permutations.

Permutations act on the right: ``(a * b)(i) = b(a(i))``.  The permutation
over infinity is fixed as ``sigma_inf = (sigma0 * sigma1)^-1`` so that
``sigma0 * sigma1 * sigma_inf`` is the identity.  Points are 0-based
internally and 1-based on the wire.
"""

from dataclasses import dataclass
from itertools import permutations

from sympy import primefactors

__all__ = [
    "Permutation", "Dessin", "Passport", "DegreeTooLarge", "ENUMERATION_CEILING",
    "sigma_infinity", "genus", "passport", "canonical_form", "automorphism_count",
    "enumerate_dessins", "monodromy_order", "beckmann_primes", "is_transitive",
    "riemann_hurwitz_genus", "partitions",
]

ENUMERATION_CEILING = 8


class DegreeTooLarge(ValueError):
    pass


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_one_based(cls, images):
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from 1-based cycles, e.g. ``from_cycles(3, [(1, 2, 3)])``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in seen:
                    raise ValueError(f"point {a} appears twice in {cycles}")
                seen.add(a)
                img[a - 1] = b - 1
        return cls(img)

    def to_json(self):
        return [i + 1 for i in self.images]

    @property
    def degree(self):
        return len(self.images)

    def __len__(self):
        return len(self.images)

    def __getitem__(self, i):
        return self.images[i]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __mul__(self, other):
        if len(other) != len(self):
            raise ValueError("permutations of different degrees")
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def conjugate(self, tau):
        """tau^-1 * self * tau, i.e. relabel every point i as tau(i)."""
        img = [0] * len(self.images)
        t = tau.images
        for i, j in enumerate(self.images):
            img[t[i]] = t[j]
        return Permutation(img)

    def cycles(self):
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def num_cycles(self):
        return len(self.cycles())

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def __repr__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return f"Permutation(id_{len(self.images)})"
        body = "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)
        return f"Permutation{body}"


def is_transitive(gens, n):
    if n == 0:
        return True
    seen = [False] * n
    seen[0] = True
    todo = [0]
    count = 1
    while todo:
        i = todo.pop()
        for g in gens:
            j = g[i]
            if not seen[j]:
                seen[j] = True
                count += 1
                todo.append(j)
    return count == n


@dataclass(frozen=True)
class Passport:
    """Cycle types over infinity, 0 and 1, each sorted descending."""

    over_infinity: tuple
    over_zero: tuple
    over_one: tuple

    def __post_init__(self):
        for name in ("over_infinity", "over_zero", "over_one"):
            part = tuple(sorted((int(e) for e in getattr(self, name)), reverse=True))
            if any(e <= 0 for e in part):
                raise ValueError(f"non-positive part in {part}")
            object.__setattr__(self, name, part)
        if not (sum(self.over_infinity) == sum(self.over_zero) == sum(self.over_one)):
            raise ValueError(f"partitions of different sizes: {self}")

    @property
    def degree(self):
        return sum(self.over_infinity)

    def fibers(self):
        return (self.over_infinity, self.over_zero, self.over_one)

    def genus(self):
        return riemann_hurwitz_genus(self.degree, self.fibers())

    def to_json(self):
        return {"inf": list(self.over_infinity), "zero": list(self.over_zero),
                "one": list(self.over_one)}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["inf"]), tuple(data["zero"]), tuple(data["one"]))


def riemann_hurwitz_genus(degree, fibers):
    """Genus of a degree-n cover of P^1 from its ramified fibers."""
    total = sum(e - 1 for part in fibers for e in part)
    twice = total - 2 * degree + 2
    if twice % 2 or twice < 0:
        raise ArithmeticError(
            f"Riemann-Hurwitz violated: ramification {total} in degree {degree}")
    return twice // 2


class Dessin:
    """A transitive pair (sigma0, sigma1) of permutations of the same degree."""

    __slots__ = ("sigma0", "sigma1")

    def __init__(self, sigma0, sigma1, check=True):
        if not isinstance(sigma0, Permutation):
            sigma0 = Permutation(sigma0)
        if not isinstance(sigma1, Permutation):
            sigma1 = Permutation(sigma1)
        if len(sigma0) != len(sigma1):
            raise ValueError("sigma0 and sigma1 have different degrees")
        if len(sigma0) == 0:
            raise ValueError("a dessin has positive degree")
        if check and not is_transitive((sigma0.images, sigma1.images), len(sigma0)):
            raise ValueError("monodromy group is not transitive")
        self.sigma0 = sigma0
        self.sigma1 = sigma1

    @classmethod
    def from_json(cls, data):
        return cls(Permutation.from_one_based(data["sigma0"]),
                   Permutation.from_one_based(data["sigma1"]))

    @property
    def degree(self):
        return len(self.sigma0)

    def key(self):
        return self.sigma0.images + self.sigma1.images

    def __eq__(self, other):
        return isinstance(other, Dessin) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Dessin({self.sigma0!r}, {self.sigma1!r})"

    def conjugate(self, tau):
        return Dessin(self.sigma0.conjugate(tau), self.sigma1.conjugate(tau), check=False)

    def to_json(self):
        return {"sigma0": self.sigma0.to_json(), "sigma1": self.sigma1.to_json()}


def sigma_infinity(d):
    return (d.sigma0 * d.sigma1).inverse()


def genus(d):
    n = d.degree
    c = d.sigma0.num_cycles() + d.sigma1.num_cycles() + sigma_infinity(d).num_cycles()
    if (n + 2 - c) % 2:
        raise ArithmeticError(f"cycle count parity violated for {d!r}")
    g = (n + 2 - c) // 2
    if g < 0:
        raise ArithmeticError(f"negative genus for {d!r}; is it transitive?")
    return g


def passport(d):
    return Passport(sigma_infinity(d).cycle_type(), d.sigma0.cycle_type(),
                    d.sigma1.cycle_type())


def _relabel_from(s0, s1, start, n):
    label = [-1] * n
    label[start] = 0
    order = [start]
    k = 0
    while k < len(order):
        i = order[k]
        k += 1
        for img in (s0[i], s1[i]):
            if label[img] < 0:
                label[img] = len(order)
                order.append(img)
    new0 = tuple(label[s0[i]] for i in order)
    new1 = tuple(label[s1[i]] for i in order)
    return new0 + new1


def _canonical_key(s0, s1, n):
    best, hits = None, 0
    for start in range(n):
        key = _relabel_from(s0, s1, start, n)
        if best is None or key < best:
            best, hits = key, 1
        elif key == best:
            hits += 1
    return best, hits


def canonical_form(d):
    """Representative of the simultaneous conjugacy class of (sigma0, sigma1).

    Each start point gives a breadth-first relabeling; transitivity makes it
    total, and the lexicographically least relabeling is the representative.
    """
    key, _ = _canonical_key(d.sigma0.images, d.sigma1.images, d.degree)
    n = d.degree
    return Dessin(Permutation(key[:n]), Permutation(key[n:]), check=False)


def automorphism_count(d):
    """Order of the centralizer of the pair in S_n (start points hitting the minimum)."""
    _, hits = _canonical_key(d.sigma0.images, d.sigma1.images, d.degree)
    return hits


def partitions(n, largest=None):
    """Partitions of n as descending tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def _permutation_of_type(part):
    img = []
    start = 0
    for k in part:
        img.extend(range(start + 1, start + k))
        img.append(start)
        start += k
    return tuple(img)


def enumerate_dessins(n, genus_filter=None, ceiling=ENUMERATION_CEILING):
    """One representative per isomorphism class of degree-n dessins.

    sigma0 is fixed to one representative per cycle type, every sigma1 in
    S_n is tried, and classes are deduplicated through :func:`canonical_form`.
    Output is sorted by (genus, passport, canonical key).
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n > ceiling:
        raise DegreeTooLarge(f"degree {n} exceeds the enumeration ceiling {ceiling}")
    classes = {}
    for part in partitions(n):
        s0 = _permutation_of_type(part)
        for s1 in permutations(range(n)):
            if not is_transitive((s0, s1), n):
                continue
            key, _ = _canonical_key(s0, s1, n)
            if key not in classes:
                classes[key] = Dessin(Permutation(key[:n]), Permutation(key[n:]), check=False)
    out = []
    for key, d in classes.items():
        g = genus(d)
        if genus_filter is not None and g != genus_filter:
            continue
        out.append((g, passport(d).fibers(), key, d))
    out.sort(key=lambda item: item[:3])
    return [item[3] for item in out]


def generated_group(gens, n, limit=None):
    """All elements of the group generated by ``gens`` (tuples), by closure."""
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = tuple(g[i] for i in e)
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
                    if limit is not None and len(elems) > limit:
                        raise DegreeTooLarge(f"group closure exceeded {limit} elements")
        frontier = nxt
    return elems


def monodromy_order(d, limit=None):
    return len(generated_group((d.sigma0.images, d.sigma1.images), d.degree, limit))


def beckmann_primes(d):
    """Primes dividing the monodromy order; stable bad primes of the cover's curve lie here."""
    return set(primefactors(monodromy_order(d)))


def census_entry(d):
    return {
        "sigma0": d.sigma0.to_json(),
        "sigma1": d.sigma1.to_json(),
        "genus": genus(d),
        "passport": passport(d).to_json(),
        "monodromy_order": monodromy_order(d),
        "beckmann_primes": sorted(beckmann_primes(d)),
    }
