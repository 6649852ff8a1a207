"""Exact tools for Belyi maps, dessins d'enfants and lower bounds on Belyi degrees."""

from .constellations import (Dessin, Passport, Permutation, automorphism_count, beckmann_primes,
                             canonical_form, enumerate_dessins, genus, monodromy_order, passport,
                             sigma_infinity)
from .exact import (AlgebraicSet, Fraction, UniPoly, discriminant, poly_gcd, rational_roots,
                    resultant, squarefree_part)
from .hyperelliptic import (HyperellipticCurve, HyperellipticFunction,
                            automorphism_candidates_check, hf_degree, is_belyi_hyper)
from .ratmap import RationalMap, branch_locus, is_belyi, passport_over
from .reducer import belyi_poly, reduce_algebraic, reduce_rational, verify_certificate
from .reduction import WeierstrassModel, lower_bounds, minimal_model, reduction_report
from .sharp import passport_f, passport_h, passport_tilde, realize, sharp_instance

__version__ = "0.1.0"

__all__ = [
    "AlgebraicSet", "Dessin", "Fraction", "HyperellipticCurve", "HyperellipticFunction",
    "Passport", "Permutation", "RationalMap", "UniPoly", "WeierstrassModel",
    "automorphism_candidates_check", "automorphism_count", "beckmann_primes", "belyi_poly",
    "branch_locus", "canonical_form", "discriminant", "enumerate_dessins", "genus",
    "hf_degree", "is_belyi", "is_belyi_hyper", "lower_bounds", "minimal_model",
    "monodromy_order", "passport", "passport_f", "passport_h", "passport_over",
    "passport_tilde", "poly_gcd", "rational_roots", "realize", "reduce_algebraic",
    "reduce_rational", "reduction_report", "resultant", "sharp_instance", "sigma_infinity",
    "squarefree_part", "verify_certificate",
]
