"""gpdlab - spans, bags and polynomials over finite groupoids.

Examples:
    from gpdlab import monomial, poly_compose, poly_to_span, check_kleisli_poly_equiv
    square = monomial(2)
    check_kleisli_poly_equiv(square, square).holds

    from gpdlab.laws import LawId, check_law
    from gpdlab.config import load_suite_config
    check_law(LawId.MONAD_TRIANGLES, load_suite_config()).passed
"""

import logging

from gpdlab._logging import setup_logging
from gpdlab.core.equivalence import find_equivalence, gcard
from gpdlab.core.groupoid import FinGroupoid, GFunctor, NatIso, discrete, unit
from gpdlab.kleisli import (
    KleisliMorphism,
    check_kleisli_poly_equiv,
    kleisli_compose,
    poly_to_span,
    span_to_poly,
)
from gpdlab.models import LawReport, SuiteConfig, SuiteReport, ValidationReport
from gpdlab.poly import Polynomial, eval_at, monomial, poly_compose, poly_equiv
from gpdlab.span import Span, canonical_form, span_compose, span_equiv

logging.getLogger("gpdlab").addHandler(logging.NullHandler())

__version__ = "0.1.0"
__all__ = [
    "FinGroupoid",
    "GFunctor",
    "KleisliMorphism",
    "LawReport",
    "NatIso",
    "Polynomial",
    "Span",
    "SuiteConfig",
    "SuiteReport",
    "ValidationReport",
    "canonical_form",
    "check_kleisli_poly_equiv",
    "discrete",
    "eval_at",
    "find_equivalence",
    "gcard",
    "kleisli_compose",
    "monomial",
    "poly_compose",
    "poly_equiv",
    "poly_to_span",
    "setup_logging",
    "span_compose",
    "span_equiv",
    "span_to_poly",
    "unit",
]
