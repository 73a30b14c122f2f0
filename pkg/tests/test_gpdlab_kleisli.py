"""Tests for Kleisli morphisms and their comparison with polynomials."""

import pytest

from gpdlab.core.bags import Bag
from gpdlab.core.groupoid import FinGroupoid, unit
from gpdlab.exceptions import BoundaryMismatchError, InvalidStructureError
from gpdlab.kleisli import (
    KleisliMorphism,
    check_kleisli_poly_equiv,
    kleisli_compose,
    kleisli_compose_general,
    kleisli_identity,
    poly_to_span,
    span_to_poly,
    sufficient_bound,
)
from gpdlab.poly import monomial, poly_compose, poly_equiv
from gpdlab.span import Endpoint, span_equiv, span_id


class TestKleisliMorphism:
    """Carriers are spans out of the bag groupoid."""

    def test_carrier_endpoints(self) -> None:
        m = poly_to_span(monomial(2))
        assert m.carrier.left == Endpoint.bang(unit())
        assert m.codomain == unit()

    def test_plain_span_is_rejected(self) -> None:
        with pytest.raises(InvalidStructureError, match="bag groupoid"):
            KleisliMorphism.of(span_id(unit()))

    def test_identity_is_the_counit(self, disc2: FinGroupoid) -> None:
        ident = kleisli_identity(disc2)
        assert ident.carrier.leg_l.on_object(1) == Bag((1,))

    def test_unfold_recovers_polynomial(self) -> None:
        back = span_to_poly(poly_to_span(monomial(2)))
        assert back.E.object_count == 2
        assert poly_equiv(back, monomial(2)) is not None

    def test_sufficient_bound(self) -> None:
        assert sufficient_bound(poly_to_span(monomial(3))) == 3
        assert sufficient_bound(kleisli_identity(unit())) == 1


class TestComposition:
    """Reduced and general Kleisli composition."""

    def test_identity_is_neutral(self) -> None:
        f = poly_to_span(monomial(2))
        composite = kleisli_compose(kleisli_identity(unit()), f)
        assert span_equiv(composite.carrier, f.carrier) is not None

    def test_larger_bound_is_equivalent(self) -> None:
        g, f = poly_to_span(monomial(2)), poly_to_span(monomial(2))
        default = kleisli_compose(g, f)
        padded = kleisli_compose(g, f, bound=sufficient_bound(g) + 1)
        assert span_equiv(default.carrier, padded.carrier) is not None

    def test_matches_polynomial_composite(self) -> None:
        g, f = monomial(2), monomial(1)
        via_kleisli = kleisli_compose(poly_to_span(g), poly_to_span(f))
        via_poly = poly_to_span(poly_compose(g, f))
        assert span_equiv(via_kleisli.carrier, via_poly.carrier) is not None

    def test_general_form_agrees(self) -> None:
        g, f = poly_to_span(monomial(2)), poly_to_span(monomial(1))
        reduced = kleisli_compose(g, f)
        general = kleisli_compose_general(g, f)
        assert span_equiv(general.carrier, reduced.carrier) is not None

    def test_middle_must_match(self, disc2: FinGroupoid) -> None:
        with pytest.raises(BoundaryMismatchError):
            kleisli_compose(poly_to_span(monomial(2)), kleisli_identity(disc2))


class TestPolyEquivalence:
    """Composition and identities agree on both sides."""

    def test_squares(self) -> None:
        check = check_kleisli_poly_equiv(monomial(2), monomial(2))
        assert check.holds
        assert "composite" in check.summary()

    def test_affine_factor(self) -> None:
        assert check_kleisli_poly_equiv(monomial(2), monomial(0)).holds
