"""Tests for polynomials: arity, evaluation, composition and bag spans."""

import pytest

from gpdlab.core.bags import Bag
from gpdlab.core.equivalence import gcard
from gpdlab.core.families import constant_family
from gpdlab.core.groupoid import FinGroupoid, GFunctor, cyclic_group, discrete, identity_functor, unit
from gpdlab.exceptions import ArityError, BoundaryMismatchError, InvalidStructureError
from gpdlab.poly import (
    Arity,
    Polynomial,
    bag_leg,
    bag_span,
    classical_compose_count,
    classical_eval_count,
    classify_arity,
    eval_at,
    eval_family,
    linear_from_span,
    monomial,
    poly_compose,
    poly_equiv,
    poly_id,
    span_from_linear,
)
from gpdlab.span import Endpoint, span_equiv, span_id


def _bz2_exponent() -> Polynomial:
    """E = BZ2 over the point; its fiber carries an automorphism."""
    one = unit()
    e = cyclic_group(2)
    to_one = GFunctor(e, one, (0,), (0, 0))
    return Polynomial(one, one, e, one, to_one, to_one, identity_functor(one))


# =============================================================================
# Arity
# =============================================================================


class TestArity:
    """Classification by the shape of the fibers of p."""

    @pytest.mark.parametrize(
        "n, arity",
        [(1, Arity.LINEAR), (0, Arity.AFFINE), (2, Arity.FINITARY), (3, Arity.FINITARY)],
    )
    def test_monomials(self, n: int, arity: Arity) -> None:
        assert classify_arity(monomial(n)).arity == arity

    def test_automorphic_fiber_is_general(self) -> None:
        verdict = classify_arity(_bz2_exponent())
        assert verdict.arity == Arity.GENERAL
        assert not verdict.finitary
        assert verdict.fibers[0].max_automorphisms == 2

    def test_empty_fiber_is_reported(self) -> None:
        report = classify_arity(monomial(0)).fibers[0]
        assert report.empty
        assert report.iso_classes == 0

    def test_identity_is_linear(self, bz2: FinGroupoid) -> None:
        assert classify_arity(poly_id(bz2)).linear


# =============================================================================
# Linear polynomials and spans
# =============================================================================


class TestLinear:
    """Spans embed as linear polynomials."""

    def test_roundtrip_through_span(self, two_point_span) -> None:
        back = span_from_linear(linear_from_span(two_point_span))
        assert span_equiv(back, two_point_span) is not None

    def test_nonlinear_is_rejected(self) -> None:
        with pytest.raises(ArityError, match="finitary"):
            span_from_linear(monomial(2))


# =============================================================================
# Evaluation
# =============================================================================


class TestEvaluation:
    """F_P(X)(j) as an exact groupoid."""

    def test_square_of_three_points(self) -> None:
        x = constant_family(unit(), discrete(3))
        result = eval_at(monomial(2), x, 0)
        assert result.object_count == 9
        assert gcard(result) == 9

    def test_identity_returns_the_fiber(self) -> None:
        x = constant_family(unit(), discrete(3))
        assert gcard(eval_at(poly_id(unit()), x, 0)) == 3

    def test_square_of_bz2(self, bz2: FinGroupoid) -> None:
        x = constant_family(unit(), bz2)
        assert gcard(eval_at(monomial(2), x, 0)) == gcard(bz2) ** 2

    def test_wrong_base(self, disc2: FinGroupoid) -> None:
        with pytest.raises(BoundaryMismatchError):
            eval_at(monomial(2), constant_family(disc2, unit()), 0)

    def test_object_out_of_range(self) -> None:
        with pytest.raises(InvalidStructureError, match="not in J"):
            eval_at(monomial(2), constant_family(unit(), unit()), 5)

    def test_eval_family_matches_pointwise(self, disc2: FinGroupoid) -> None:
        fam = eval_family(monomial(2), constant_family(unit(), disc2))
        assert fam.fiber(0).object_count == 4

    def test_classical_count(self) -> None:
        assert classical_eval_count(monomial(2), [3], 0) == 9
        assert classical_eval_count(monomial(0), [3], 0) == 1


# =============================================================================
# Composition
# =============================================================================


class TestComposition:
    """Q ∘ P by dependent sums and products."""

    def test_monomial_composite_shape(self) -> None:
        composite = poly_compose(monomial(3), monomial(2))
        assert composite.E.object_count == 6
        assert composite.B.object_count == 1
        assert composite.validate().valid

    def test_composite_is_the_product_monomial(self) -> None:
        composite = poly_compose(monomial(3), monomial(2))
        assert poly_equiv(composite, monomial(6)) is not None

    def test_composite_counts_agree(self) -> None:
        composite = poly_compose(monomial(3), monomial(2))
        want = classical_compose_count(monomial(3), monomial(2), [3], 0)
        assert want == 729
        assert classical_eval_count(composite, [3], 0) == want

    def test_middle_must_match(self, disc2: FinGroupoid) -> None:
        with pytest.raises(BoundaryMismatchError):
            poly_compose(poly_id(disc2), monomial(2))


# =============================================================================
# Bag spans and equivalence
# =============================================================================


class TestBagSpan:
    """Finitary polynomials as spans out of the bag groupoid."""

    def test_bag_leg_lists_fiber_colors(self) -> None:
        assert bag_leg(monomial(2)).on_object(0) == Bag((0, 0))

    def test_bag_span_endpoints(self) -> None:
        s = bag_span(monomial(2))
        assert s.left == Endpoint.bang(unit())
        assert s.right == Endpoint.gpd(unit())

    def test_general_polynomial_has_no_bag_leg(self) -> None:
        with pytest.raises(ArityError):
            bag_leg(_bz2_exponent())

    def test_equivalence(self) -> None:
        witness = poly_equiv(monomial(2), monomial(2))
        assert witness is not None
        assert witness.verify(monomial(2), monomial(2))
        assert poly_equiv(monomial(2), monomial(3)) is None

    def test_boundaries_must_match(self, disc2: FinGroupoid) -> None:
        with pytest.raises(BoundaryMismatchError):
            poly_equiv(poly_id(disc2), monomial(1))

    def test_linear_bag_span_matches_span(self) -> None:
        s = span_id(discrete(2))
        lin = linear_from_span(s)
        assert bag_leg(lin).on_object(1) == Bag((1,))
