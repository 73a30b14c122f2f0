"""Tests for the bag exponential: unit, flattening, Seely maps and span lifts."""

from gpdlab.bang import (
    bang_functor,
    bang_span,
    coproduct_view,
    counit_law_spans,
    counit_span,
    delta_span,
    eta,
    eta_cartesian_comparison,
    eta_naturality_mismatches,
    functoriality_mismatches,
    monad_square_mismatches,
    monad_triangle_mismatches,
    monoidal_mismatches,
    mu,
    mu_cartesian_comparison,
    mu_naturality_mismatches,
    pullback_comparison,
    seely0,
    seely2,
    seely2_comparison,
    symmetry_witness,
)
from gpdlab.core.bags import Bag, BagMorphism
from gpdlab.core.groupoid import FinGroupoid, GFunctor, discrete, identity_functor, unit
from gpdlab.core.limits import point
from gpdlab.laws.mutations import seeded_defect
from gpdlab.span import Endpoint, span_equiv, span_id

# =============================================================================
# Unit and flattening
# =============================================================================


class TestUnitAndFlatten:
    """η, μ and the monad equalities on bounded bags."""

    def test_eta_makes_singletons(self, disc2: FinGroupoid) -> None:
        assert eta(disc2).on_object(1) == Bag((1,))

    def test_mu_flattens_in_order(self) -> None:
        bb = Bag((Bag((0, 1)), Bag(()), Bag((2,))))
        assert mu(discrete(3)).on_object(bb) == Bag((0, 1, 2))

    def test_mu_on_arrows_tracks_inner_permutations(self, disc2: FinGroupoid) -> None:
        inner = Bag((0, 1))
        swap = BagMorphism(inner, Bag((1, 0)), (1, 0), (0, 1))
        outer = BagMorphism(Bag((inner,)), Bag((Bag((1, 0)),)), (0,), (swap,))
        flat = mu(disc2).on_arrow(outer)
        assert flat.sigma == (1, 0)
        assert flat.target == Bag((1, 0))

    def test_monad_triangles_hold(self, disc2: FinGroupoid) -> None:
        assert monad_triangle_mismatches(disc2, 2) == []

    def test_monad_square_holds(self, disc2: FinGroupoid) -> None:
        assert monad_square_mismatches(disc2, (2, 2, 1)) == []
        assert monad_square_mismatches(disc2, (1, 2, 2)) == []

    def test_monad_square_holds_at_every_level(self, disc2: FinGroupoid) -> None:
        """Bags nested three deep, each level of size up to 2."""
        assert monad_square_mismatches(disc2, (2, 2, 2)) == []

    def test_monad_square_single_level_at_three(self, bz2: FinGroupoid) -> None:
        for shape in [(3, 1, 1), (1, 3, 1), (1, 1, 3)]:
            assert monad_square_mismatches(bz2, shape) == [], shape

    def test_rotated_flattening_breaks_square(self, disc2: FinGroupoid) -> None:
        with seeded_defect("mu-flatten-order"):
            assert monad_square_mismatches(disc2, (2, 2, 2))

    def test_mu_is_natural_on_both_levels(self, bz2: FinGroupoid) -> None:
        assert mu_naturality_mismatches(point(bz2, 0), 2, 2) == []

    def test_rotated_flattening_breaks_triangles(self, disc2: FinGroupoid) -> None:
        with seeded_defect("mu-flatten-order"):
            mismatches = monad_triangle_mismatches(disc2, 2)
        assert mismatches
        assert "mu" in mismatches[0].where

    def test_eta_is_natural(self, bz2: FinGroupoid) -> None:
        assert eta_naturality_mismatches(identity_functor(bz2)) == []
        assert eta_naturality_mismatches(point(bz2, 0)) == []

    def test_bang_is_functorial(self, bz2: FinGroupoid) -> None:
        f = point(bz2, 0)
        g = GFunctor(bz2, unit(), (0,), (0, 0))
        assert functoriality_mismatches(f, g, 2) == []

    def test_bang_functor_recolors(self, bz2: FinGroupoid) -> None:
        f = point(bz2, 0)
        assert bang_functor(f).on_object(Bag((0, 0))) == Bag((0, 0))


# =============================================================================
# Cartesianness
# =============================================================================


class TestCartesian:
    """Comparison functors into pullbacks are equivalences."""

    def test_eta_square_is_a_pullback(self, bz2: FinGroupoid) -> None:
        _, evidence = eta_cartesian_comparison(point(bz2, 0), 2)
        assert evidence.holds

    def test_mu_square_is_a_pullback_on_both_levels(self, bz2: FinGroupoid) -> None:
        _, evidence = mu_cartesian_comparison(point(bz2, 0), 2, 2)
        assert evidence.holds

    def test_bang_preserves_pullback(self, bz2: FinGroupoid) -> None:
        pt = point(bz2, 0)
        _, evidence = pullback_comparison(pt, pt, 2)
        assert evidence.holds


# =============================================================================
# Seely structure
# =============================================================================


class TestSeely:
    """l², l⁰ and their coherence."""

    def test_seely2_concatenates_blocks(self) -> None:
        l2 = seely2(discrete(1), discrete(2))
        assert l2.on_object((Bag((0,)), Bag((1, 0)))) == Bag((0, 2, 1))

    def test_injections_carry_the_coproduct(self, bz2: FinGroupoid) -> None:
        cop, inj1, inj2 = coproduct_view(unit(), bz2)
        assert inj1.codomain is cop and inj2.codomain is cop
        assert cop.object_count == 2
        assert inj2.on_object(0) == 1

    def test_seely0_hits_empty_bag(self) -> None:
        assert seely0().on_object(0) == Bag(())

    def test_seely2_is_an_equivalence(self, bz2: FinGroupoid) -> None:
        _, evidence = seely2_comparison(unit(), bz2, 2)
        assert evidence.holds

    def test_dropped_component_is_not_faithful(self, bz2: FinGroupoid) -> None:
        with seeded_defect("l2-dropped-component"):
            _, evidence = seely2_comparison(unit(), bz2, 2)
        assert not evidence.faithful

    def test_associativity_and_units(self, bz2: FinGroupoid) -> None:
        for which in (1, 2, 3):
            assert monoidal_mismatches(which, unit(), bz2, unit(), 1) == []

    def test_symmetry_is_natural(self, bz2: FinGroupoid) -> None:
        assert symmetry_witness(unit(), bz2, 1).is_valid()


# =============================================================================
# Span lifts
# =============================================================================


class TestSpanLifts:
    """Span(!) and the comonad spans."""

    def test_bang_span_promotes_endpoints(self, disc2: FinGroupoid) -> None:
        lifted = bang_span(span_id(disc2), 2)
        assert lifted.left == Endpoint.bang(disc2)
        assert lifted.apex.object_count == 7

    def test_bang_span_of_bang_endpoint(self, disc2: FinGroupoid) -> None:
        lifted = bang_span(counit_span(disc2), 1)
        assert lifted.left == Endpoint.bangbang(disc2)

    def test_counit_shape(self, disc2: FinGroupoid) -> None:
        eps = counit_span(disc2)
        assert eps.left == Endpoint.bang(disc2)
        assert eps.right == Endpoint.gpd(disc2)

    def test_delta_shape(self) -> None:
        delta = delta_span(unit(), 1, 1)
        assert delta.right == Endpoint.bangbang(unit())
        assert delta.apex.object_count == 3

    def test_counit_laws(self) -> None:
        for name, lhs, rhs in counit_law_spans(unit(), 2):
            assert span_equiv(lhs, rhs) is not None, name
