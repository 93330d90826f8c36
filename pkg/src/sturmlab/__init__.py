"""Sturmian and episturmian words: generation, factors, richness, morphisms
and exhaustive search for monochromatic prefix factorizations."""

__version__ = "0.1.0"

from .coloring import (EPISTURMIAN_K1, STURMIAN_3, Coloring, color, color_class_prefixes,
                       explain_color, make_coloring)
from .contfrac import ContinuedFraction
from .descent import (CaseTag, classify_prefix_factorization, descend_chain,
                      descend_episturmian, descend_factorization)
from .factors import (factor_table, is_balanced, richness, slope_frequency,
                      special_factors)
from .morphisms import Morphism, apply_morphism, desubstitute
from .search import (check_lemma_cp, enumerate_monochromatic, lce, sample_descent_chain,
                     verify_no_monochromatic)
from .words import detect_type, exchange, exchange_spec, parse_word_spec, prefix, window

__all__ = [
    "CaseTag", "Coloring", "ContinuedFraction", "EPISTURMIAN_K1", "Morphism", "STURMIAN_3",
    "apply_morphism", "check_lemma_cp", "classify_prefix_factorization", "color",
    "color_class_prefixes", "descend_chain", "descend_episturmian", "descend_factorization",
    "desubstitute", "detect_type", "enumerate_monochromatic", "exchange", "exchange_spec",
    "explain_color", "factor_table", "is_balanced", "lce", "make_coloring", "parse_word_spec",
    "prefix", "richness", "sample_descent_chain", "slope_frequency", "special_factors",
    "verify_no_monochromatic", "window",
]
