"""The degree-p Belyi covers f, f~ = f o (double cover) and h for a pair (g, p).

f is a genus-0 Belyi map of prime degree p; the hyperelliptic double
cover X -> P^1 branched over the odd-index points of its fibers over 0 and
1 gives f~ of degree 2p on X, which factors as rho o h through a conic
double cover rho branched over 0 and 1.  This module writes down the three
passports, checks their degree sums and genera, factors f~ through rho by
halving indices (Abhyankar), and searches for a permutation pair
realizing the passport of f.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations

from sympy import isprime

from .constellations import (Dessin, Passport, Permutation, genus, is_transitive,
                             monodromy_order, passport)

__all__ = [
    "SharpInstance", "ParameterRange", "AbhyankarError", "BudgetExceeded", "NotFound",
    "passport_f", "passport_tilde", "passport_h", "unramified_in_ramified_fibers",
    "abhyankar_factor", "equal_up_to_relabeling", "realize", "sharp_instance",
    "realization_report", "REALIZE_CEILING", "DEFAULT_BUDGET",
]

REALIZE_CEILING = 13
DEFAULT_BUDGET = 5_000_000
MONODROMY_BFS_LIMIT = 8


class ParameterRange(ValueError):
    pass


class AbhyankarError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """The search stopped early; this says nothing about existence."""


@dataclass(frozen=True)
class NotFound:
    """The search space was exhausted without a realization."""

    tried: int


def check_parameters(g, p):
    if not isinstance(g, int) or not isinstance(p, int):
        raise ParameterRange("g and p must be integers")
    if g < 1:
        raise ParameterRange(f"genus must be positive, got {g}")
    if not isprime(p):
        raise ParameterRange(f"{p} is not prime")
    if p < 2 * g + 3:
        raise ParameterRange(f"need p >= 2g + 3 = {2 * g + 3}, got p = {p}")


def passport_f(g, p):
    check_parameters(g, p)
    k0 = (p - 3) // 2 - g
    k1 = (p + 1) // 2 - g
    return Passport((p,), (2 * g + 1, 1, 1) + (2,) * k0, (1,) * (2 * g - 1) + (2,) * k1)


def passport_tilde(g, p):
    check_parameters(g, p)
    return Passport((p, p), (4 * g + 2,) + (2,) * (p - 2 * g - 1), (2,) * p)


def passport_h(g, p):
    check_parameters(g, p)
    return Passport((p,), (p,), (2 * g + 1,) + (1,) * (p - 2 * g - 1))


def unramified_in_ramified_fibers(pf, g):
    """Count unramified points over 0 and 1 next to the claimed 2g + 2.

    Also reports the odd-index count, which is the number of branch points
    the double cover X -> P^1 actually needs, since an index-e point of f
    ramifies in the fiber product exactly when e is odd.
    """
    over0 = sum(1 for e in pf.over_zero if e == 1)
    over1 = sum(1 for e in pf.over_one if e == 1)
    odd0 = sum(1 for e in pf.over_zero if e % 2)
    odd1 = sum(1 for e in pf.over_one if e % 2)
    claimed = 2 * g + 2
    return {
        "unramified_over_zero": over0,
        "unramified_over_one": over1,
        "unramified_total": over0 + over1,
        "odd_index_over_zero": odd0,
        "odd_index_over_one": odd1,
        "odd_index_total": odd0 + odd1,
        "claimed": claimed,
        "claimed_over_zero": 3,
        "discrepancy": over0 + over1 != claimed,
        "odd_index_matches_claim": odd0 + odd1 == claimed and odd0 == 3,
    }


def _halve(part, where):
    if any(e % 2 for e in part):
        raise AbhyankarError(f"odd index in {list(part)} over {where}: Abhyankar does not apply")
    return tuple(e // 2 for e in part)


def _subset_split(part, target):
    """A sub-multiset of ``part`` summing to ``target`` (largest parts first), or None."""
    part = sorted(part, reverse=True)

    def go(i, left):
        if left == 0:
            return []
        if i == len(part) or left < 0:
            return None
        got = go(i + 1, left - part[i])
        if got is not None:
            return [part[i]] + got
        return go(i + 1, left)

    chosen = go(0, target)
    if chosen is None:
        return None
    rest = Counter(part)
    rest.subtract(chosen)
    return tuple(chosen), tuple(sorted(rest.elements(), reverse=True))


def abhyankar_factor(pt):
    """Passport of h when f~ = rho o h with rho a double cover branched over 0, 1.

    Above a branch value of rho every index halves.  The fiber of f~ over
    inf (unbranched for rho) is cut into the two fibers of h over the two
    preimages of inf, each of size deg h.
    """
    n = pt.degree
    if n % 2:
        raise AbhyankarError(f"degree {n} is odd, so no factorization through a double cover")
    half = n // 2
    over0 = _halve(pt.over_zero, "0")
    over1 = _halve(pt.over_one, "1")
    split = _subset_split(pt.over_infinity, half)
    if split is None:
        raise AbhyankarError(f"the fiber over inf cannot be cut into two halves of size {half}")
    inf_a, inf_b = split
    fibers = [over0, over1, inf_a, inf_b]
    return {"fibers": fibers, "ramified": [part for part in fibers if any(e > 1 for e in part)]}


def equal_up_to_relabeling(factored, target):
    """The ramified fibers of ``factored`` match those of the Passport ``target``."""
    mine = sorted(factored["ramified"])
    theirs = sorted(part for part in target.fibers() if any(e > 1 for e in part))
    return mine == theirs


def _rh(ps):
    try:
        return ps.genus()
    except ArithmeticError:
        return None


def _checks(g, p, pf, pt, ph):
    fac = abhyankar_factor(pt)
    return {
        "degree_f": pf.degree == p,
        "degree_tilde": pt.degree == 2 * p,
        "degree_h": ph.degree == p,
        "genus_f": _rh(pf) == 0,
        "genus_tilde": _rh(pt) == g,
        "genus_h": _rh(ph) == g,
        "abhyankar_matches_h": equal_up_to_relabeling(fac, ph),
    }


# -- realization ------------------------------------------------------------

def _pcycle(p):
    return tuple(list(range(1, p)) + [0])


def _perms_of_type(n, part):
    """All permutations of {0..n-1} with cycle type ``part``, in a fixed order."""
    part = tuple(sorted(part, reverse=True))
    seen = set()
    for perm in permutations(range(n)):
        # read perm as a sequence of cycles of the given lengths
        img = [0] * n
        pos = 0
        for k in part:
            block = perm[pos:pos + k]
            for i in range(k):
                img[block[i]] = block[(i + 1) % k]
            pos += k
        t = tuple(img)
        if t not in seen:
            seen.add(t)
            yield t


def realize(g, p, budget=DEFAULT_BUDGET, ceiling=REALIZE_CEILING):
    """Search for (sigma0, sigma1) with passport ``passport_f(g, p)``.

    sigma_inf is fixed to the p-cycle (i -> i + 1), sigma0 runs over all
    permutations of the 0-fiber type and sigma1 = sigma0^-1 sigma_inf^-1 is
    filtered by cycle type.  Returns a Dessin, or NotFound after exhausting
    the space; raises BudgetExceeded when ``budget`` candidates were tried.
    """
    check_parameters(g, p)
    if p > ceiling:
        raise ParameterRange(f"p = {p} exceeds the realization ceiling {ceiling}")
    pf = passport_f(g, p)
    s_inf = Permutation(_pcycle(p))
    s_inf_inv = s_inf.inverse()
    want1 = pf.over_one
    tried = 0
    for s0 in _perms_of_type(p, pf.over_zero):
        tried += 1
        if tried > budget:
            raise BudgetExceeded(f"no realization among the first {budget} candidates")
        sigma0 = Permutation(s0)
        sigma1 = sigma0.inverse() * s_inf_inv
        if sigma1.cycle_type() != want1:
            continue
        if not is_transitive((sigma0.images, sigma1.images), p):
            continue
        return Dessin(sigma0, sigma1)
    return NotFound(tried)


def _verify_realization(d, g, p):
    pf = passport_f(g, p)
    return {
        "passport_matches": passport(d) == pf,
        "genus_zero": genus(d) == 0,
        "transitive": is_transitive((d.sigma0.images, d.sigma1.images), d.degree),
    }


def realization_report(d, g, p):
    checks = _verify_realization(d, g, p)
    out = {"dessin": d.to_json(), "checks": checks}
    if d.degree <= MONODROMY_BFS_LIMIT:
        order = monodromy_order(d)
        out["monodromy_order"] = order
        out["p_divides_order"] = order % p == 0
    else:
        # sigma_inf has order p, so p divides the group order (Lagrange)
        out["monodromy_order"] = None
        out["p_divides_order"] = True
        out["p_divides_order_reason"] = "sigma_inf is a p-cycle"
    return out


@dataclass
class SharpInstance:
    g: int
    p: int
    passport_f: Passport
    passport_tilde: Passport
    passport_h: Passport
    checks: dict = field(default_factory=dict)
    count: dict = field(default_factory=dict)
    realization: object = None

    def to_json(self):
        fac = abhyankar_factor(self.passport_tilde)
        out = {
            "g": self.g,
            "p": self.p,
            "passports": {
                "f": self.passport_f.to_json(),
                "tilde": self.passport_tilde.to_json(),
                "h": self.passport_h.to_json(),
            },
            "abhyankar_fibers": [list(part) for part in fac["fibers"]],
            "checks": self.checks,
            "unramified_count": self.count,
        }
        if self.realization is not None:
            out["realization"] = self.realization
        return out


def sharp_instance(g, p):
    pf, pt, ph = passport_f(g, p), passport_tilde(g, p), passport_h(g, p)
    checks = _checks(g, p, pf, pt, ph)
    return SharpInstance(g, p, pf, pt, ph, checks, unramified_in_ramified_fibers(pf, g))
