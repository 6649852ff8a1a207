"""Command line front end: ``belyi-degree {enumerate,verify,reduce,bounds,sharp}``.

Every command prints one JSON document.  Values computed here are tagged
``"provenance": "computed"``; statements taken on trust are listed under
``claims`` and tagged ``"paper-claim-unverified"``.

Exit codes: 0 success, 2 usage or validation error, 3 resource cap,
4 internal consistency failure (a Riemann-Hurwitz or identity check).
"""

import argparse
import json
import sys
from importlib import resources

from .constellations import (DegreeTooLarge, ENUMERATION_CEILING, census_entry,
                             enumerate_dessins)
from .exact import AlgebraicSet, UniPoly, format_rational, parse_rational
from .hyperelliptic import (ConstantFunction, CurveAutomorphism, HyperellipticCurve,
                            HyperellipticFunction, NotAnAutomorphism,
                            automorphism_candidates_check, is_belyi_hyper)
from .ratmap import DegenerateMap, RationalMap, is_belyi
from .reducer import (MAX_BITS, MAX_DEGREE, ReductionCapExceeded, reduce_algebraic,
                      reduce_rational, verify_certificate)
from .reduction import (SingularCurve, WeierstrassModel, genus_lower_bound,
                        hyperelliptic_candidate_bad_primes, reduction_report,
                        weierstrass_from_phi)
from .sharp import (DEFAULT_BUDGET, BudgetExceeded, NotFound, ParameterRange,
                    realization_report, realize, sharp_instance)

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_INTERNAL = 0, 2, 3, 4

COMPUTED = "computed"
UNVERIFIED = "paper-claim-unverified"


class UsageError(ValueError):
    pass


def _claim(text, value=None):
    out = {"claim": text, "provenance": UNVERIFIED}
    if value is not None:
        out["value"] = value
    return out


def _section(data):
    return dict(data, provenance=COMPUTED)


def _report(command, subject, verdicts=None, witnesses=None, bounds=None, flags=None,
            claims=None):
    return {
        "command": command,
        "subject": subject,
        "verdicts": _section(verdicts or {}),
        "witnesses": _section(witnesses or {}),
        "bounds": _section(bounds or {}),
        "flags": flags or [],
        "claims": claims or [],
    }


def _read_json(path):
    if path is None or path == "-":
        text = sys.stdin.read()
    elif path.startswith("fixture:"):
        name = path[len("fixture:"):]
        try:
            text = resources.files("belyi_degree.data").joinpath(name + ".json").read_text()
        except FileNotFoundError:
            raise UsageError(f"no bundled fixture named {name!r}") from None
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


# -- enumerate --------------------------------------------------------------

def cmd_enumerate(args):
    dessins = enumerate_dessins(args.n, args.genus, ceiling=args.ceiling)
    classes = [census_entry(d) for d in dessins]
    flags = []
    if args.n >= 3:
        flags.append({
            "flag": "caveat",
            "text": "counts are isomorphism classes of dessins; several dessins can "
                    "live on the same curve, so this is not a count of curves",
        })
    claims = []
    if args.n == 4 and args.genus == 1:
        claims.append(_claim("two isomorphism classes of elliptic curves have Belyi degree 4",
                             2))
    return EXIT_OK, _report(
        "enumerate", {"degree": args.n, "genus": args.genus},
        verdicts={"class_count": len(classes)},
        witnesses={"classes": classes}, flags=flags, claims=claims)


# -- verify -----------------------------------------------------------------

def _poly(data, key):
    try:
        return UniPoly.from_json(data[key])
    except KeyError:
        raise UsageError(f"missing field {key!r}") from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad polynomial in {key!r}: {exc}") from None


def _verify_rational(data):
    num = _poly(data, "num")
    den = _poly(data, "den") if "den" in data else UniPoly([1])
    try:
        f = RationalMap(num, den)
        ok, rep = is_belyi(f)
    except (DegenerateMap, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    return _report("verify", {"map": f.to_json()},
                   verdicts={"is_belyi": ok, "degree": rep.degree},
                   witnesses={"branch_report": rep.to_json()})


def _verify_hyper(data):
    try:
        curve = HyperellipticCurve(_poly(data["curve"], "phi"))
        fd = data["function"]
        f = HyperellipticFunction(_poly(fd, "a"), _poly(fd, "b") if "b" in fd else UniPoly(),
                                  _poly(fd, "d") if "d" in fd else UniPoly([1]))
        cands = [CurveAutomorphism.from_json(c) for c in data.get("automorphisms", [])]
    except KeyError as exc:
        raise UsageError(f"missing field {exc}") from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    try:
        ok, rep = is_belyi_hyper(f, curve)
        auts = automorphism_candidates_check(f, curve, cands)
    except (ConstantFunction, NotAnAutomorphism) as exc:
        raise UsageError(str(exc)) from None
    witnesses = {"branch_report": rep.to_json(), "automorphisms": auts}
    claims = []
    flags = []
    if curve.phi.degree == 3:
        j = weierstrass_from_phi(curve.phi).j
        witnesses["j_invariant"] = format_rational(j)
        if j not in (0, 1728):
            flags.append({
                "flag": "note",
                "text": "j is neither 0 nor 1728, so every automorphism of the curve is "
                        "a translation composed with +-1; only the listed candidates are "
                        "decided here",
            })
    if not auts["involution_fixes_f"]:
        claims.append(_claim("the automorphism group of f is trivial"))
    return _report("verify", {"curve": curve.to_json(), "function": f.to_json()},
                   verdicts={"is_belyi": ok, "degree": rep.degree, "genus": rep.genus,
                             "involution_fixes_f": auts["involution_fixes_f"]},
                   witnesses=witnesses, flags=flags, claims=claims)


def cmd_verify(args):
    data = _read_json(args.input)
    if not isinstance(data, dict):
        raise UsageError("expected a JSON object")
    if "num" in data:
        return EXIT_OK, _verify_rational(data)
    if "curve" in data and "function" in data:
        return EXIT_OK, _verify_hyper(data)
    raise UsageError("expected {num, den} or {curve, function}")


# -- reduce -----------------------------------------------------------------

def _branch_input(args):
    if args.points is not None:
        data = args.points
    else:
        data = _read_json(args.input)
    defining = None
    if isinstance(data, dict):
        if "defining" in data:
            defining = _poly(data, "defining")
        data = data.get("points", [])
    if not isinstance(data, list):
        raise UsageError("branch set must be a JSON array of rational strings")
    pts = []
    for item in data:
        if isinstance(item, str) and item.strip().lower() in ("inf", "infinity", "oo"):
            continue
        try:
            pts.append(parse_rational(item))
        except (TypeError, ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational: {item!r}") from None
    return pts, defining


def cmd_reduce(args):
    pts, defining = _branch_input(args)
    if defining is not None and defining.degree >= 1:
        S = AlgebraicSet(defining).union(AlgebraicSet.from_points(pts))
        cert = reduce_algebraic(S, max_degree=args.max_degree, max_bits=args.max_bits)
    else:
        cert = reduce_rational(pts, max_degree=args.max_degree, max_bits=args.max_bits)
    ok, rep = verify_certificate(cert)
    if not ok:
        raise ArithmeticError("certificate failed independent verification")
    subject = {"points": [format_rational(t) for t in sorted(set(pts))]}
    if defining is not None:
        subject["defining"] = defining.to_json()
    return EXIT_OK, _report(
        "reduce", subject,
        verdicts={"verified": ok, "degree": cert.degree, "steps": len(cert.steps)},
        witnesses={"certificate": cert.to_json(verified=ok),
                   "final_branch_set": cert.final_branch_set.to_json(),
                   "passports": rep.to_json()["passports"]})


# -- bounds -----------------------------------------------------------------

def _curve_input(data):
    if isinstance(data, list):
        return "weierstrass", WeierstrassModel.from_list([parse_rational(c) for c in data])
    if isinstance(data, dict) and "weierstrass" in data:
        return "weierstrass", WeierstrassModel.from_list(
            [parse_rational(c) for c in data["weierstrass"]])
    if isinstance(data, dict) and "phi" in data:
        phi = _poly(data, "phi")
        if phi.degree == 3:
            return "weierstrass", weierstrass_from_phi(phi)
        return "phi", HyperellipticCurve(phi)
    raise UsageError("expected [a1, a2, a3, a4, a6], {weierstrass: [...]} or {phi: [...]}")


def _witness_degree(path):
    data = _read_json(path)
    rep = _verify_hyper(data)
    if not rep["verdicts"]["is_belyi"]:
        return None, rep
    return rep["verdicts"]["degree"], rep


def cmd_bounds(args):
    try:
        kind, curve = _curve_input(_read_json(args.input))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    flags = []
    claims = []
    witnesses = {}
    if kind == "phi":
        g = curve.genus
        cand = sorted(hyperelliptic_candidate_bad_primes(curve.phi))
        subject = {"phi": curve.phi.to_json(), "genus": g}
        bounds = {"genus_lb": genus_lower_bound(g)}
        witnesses["candidate_bad_primes"] = cand
        flags.append({"flag": "caveat",
                      "text": "candidate_bad_primes is one-sided: it contains every prime of "
                              "bad reduction, but a listed prime need not be bad"})
        verdicts = {"genus": g}
    else:
        try:
            rep = reduction_report(curve)
        except SingularCurve as exc:
            raise UsageError(str(exc)) from None
        subject = {"weierstrass": curve.to_json()}
        data = rep.to_json()
        bounds = dict(data.pop("bounds"))
        witnesses["reduction"] = data
        verdicts = {"j": data["invariants"]["j"], "bad_primes": data["bad_primes"],
                    "stable_bad_primes": data["stable_bad_primes"]}
    if args.witness:
        deg, wrep = _witness_degree(args.witness)
        witnesses["belyi_witness"] = {"verified": deg is not None, "report": wrep["witnesses"]}
        if deg is not None:
            bounds["upper_bound"] = deg
            violated = [k for k, v in bounds.items()
                        if k.endswith("_lb") and v > deg]
            verdicts["bounds_consistent"] = not violated
            if violated:
                flags.append({"flag": "inconsistent",
                              "text": f"lower bounds {violated} exceed the witness degree {deg}"})
    if kind == "weierstrass":
        claims.append(_claim("the Belyi degree over Q is at least the greatest prime of bad "
                             "reduction, and over the algebraic closure at least the "
                             "greatest stable bad prime"))
    return EXIT_OK, _report("bounds", subject, verdicts=verdicts, witnesses=witnesses,
                            bounds=bounds, flags=flags, claims=claims)


# -- sharp ------------------------------------------------------------------

def cmd_sharp(args):
    inst = sharp_instance(args.genus, args.prime)
    data = inst.to_json()
    count = data["unramified_count"]
    flags = []
    if count["discrepancy"]:
        flags.append({
            "flag": "discrepancy",
            "text": f"the fibers of f over 0 and 1 hold {count['unramified_total']} "
                    f"unramified points, not the claimed {count['claimed']}; the odd-index "
                    f"points number {count['odd_index_total']}, "
                    f"{count['odd_index_over_zero']} of them over 0",
        })
    witnesses = {"passports": data["passports"], "abhyankar_fibers": data["abhyankar_fibers"],
                 "unramified_count": count}
    verdicts = {"checks": data["checks"], "all_checks_pass": all(data["checks"].values())}
    if args.realize:
        found = realize(args.genus, args.prime, budget=args.budget)
        if isinstance(found, NotFound):
            witnesses["realization"] = {"found": False, "exhausted": True, "tried": found.tried}
        else:
            witnesses["realization"] = dict(realization_report(found, args.genus, args.prime),
                                            found=True)
    claims = [
        _claim("exactly 2g+2 unramified points lie in the ramified fibers of f",
               count["claimed"]),
        _claim("the genus g curve X has Belyi degree p and p is a stable prime of bad "
               "reduction of X"),
    ]
    return EXIT_OK, _report("sharp", {"g": args.genus, "p": args.prime}, verdicts=verdicts,
                            witnesses=witnesses, flags=flags, claims=claims)


# -- driver -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false",
                     help="compact JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    common.set_defaults(pretty=False)

    parser = argparse.ArgumentParser(
        prog="belyi-degree",
        description="Exact Belyi-map verification, dessin censuses and Belyi degree bounds. "
                    "Every command prints one JSON document.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="census of dessins of degree n")
    p.add_argument("n", type=int)
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--ceiling", type=int, default=ENUMERATION_CEILING, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common],
                       help="Belyi verdict for a rational map or a hyperelliptic function")
    p.add_argument("input", nargs="?", default="-",
                   help="JSON file, '-' for stdin, or fixture:NAME for a bundled example")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", parents=[common], help="run Belyi's algorithm on a branch set")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--points", nargs="+", default=None, metavar="Q",
                   help="branch points given inline instead of as JSON")
    p.add_argument("--max-degree", type=int, default=MAX_DEGREE)
    p.add_argument("--max-bits", type=int, default=MAX_BITS)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bounds", parents=[common], help="reduction data and degree lower bounds")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--witness", default=None,
                   help="hyperelliptic Belyi map on the same curve, used as an upper bound")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sharp", parents=[common], help="passports of the degree-p construction")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--realize", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_sharp)
    return parser


def _error(kind, message, detail=None):
    out = {"error": kind, "message": message}
    if detail:
        out["detail"] = detail
    return out


def run(argv=None):
    """Parse and execute; returns (exit code, JSON-able document, pretty flag)."""
    args = build_parser().parse_args(argv)
    try:
        code, doc = args.func(args)
    except (UsageError, DegreeTooLarge, ParameterRange) as exc:
        return EXIT_USAGE, _error("usage", str(exc)), args.pretty
    except (ReductionCapExceeded, BudgetExceeded) as exc:
        return EXIT_CAP, _error("cap", str(exc), getattr(exc, "detail", None)), args.pretty
    except ArithmeticError as exc:
        return EXIT_INTERNAL, _error("internal", str(exc)), args.pretty
    return code, doc, args.pretty


def dumps(doc, pretty=False):
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def main(argv=None):
    code, doc, pretty = run(argv)
    sys.stdout.write(dumps(doc, pretty) + "\n")
    if code != EXIT_OK:
        sys.stderr.write(f"belyi-degree: {doc['message']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
