"""Tests for families of groupoids, total spaces and sections."""

import pytest

from gpdlab.core.equivalence import find_equivalence, gcard, verify_equivalence
from gpdlab.core.families import (
    FamilyOfGroupoids,
    constant_family,
    discrete_family,
    grothendieck,
    hfiber_family,
    hfiber_reassembly,
    hsections,
    pullback_family,
)
from gpdlab.core.groupoid import FinGroupoid, GFunctor, cyclic_group, discrete, unit, validate_groupoid
from gpdlab.core.limits import point
from gpdlab.exceptions import FunctorialityError


def _swap_family(base: FinGroupoid):
    """Disc(2) over BZ2, the generator swapping the two points."""
    return discrete_family(base, [2], [(0, 1), (1, 0)])


# =============================================================================
# Strictness
# =============================================================================


class TestStrictness:
    """Transport must be a strict functor into groupoids."""

    def test_swap_family_is_strict(self, bz2: FinGroupoid) -> None:
        fam = _swap_family(bz2)
        assert fam.transport(1).obj_map == (1, 0)

    def test_identity_must_act_trivially(self, bz2: FinGroupoid) -> None:
        with pytest.raises(FunctorialityError, match="identity"):
            discrete_family(bz2, [2], [(1, 0), (1, 0)])

    def test_composites_must_match(self) -> None:
        z3 = cyclic_group(3)
        with pytest.raises(FunctorialityError, match="composite"):
            discrete_family(z3, [2], [(0, 1), (1, 0), (1, 0)])

    def test_one_fiber_per_object(self, disc2: FinGroupoid) -> None:
        with pytest.raises(FunctorialityError, match="one fiber"):
            FamilyOfGroupoids(disc2, (unit(),), ())


# =============================================================================
# Total spaces and sections
# =============================================================================


class TestTotalSpace:
    """Grothendieck construction."""

    def test_constant_family_total_is_product(self, bz2: FinGroupoid, disc2: FinGroupoid) -> None:
        total = grothendieck(constant_family(bz2, disc2))
        assert total.groupoid.object_count == 2
        assert gcard(total.groupoid) == 1
        assert validate_groupoid(total.groupoid).valid

    def test_swap_family_total_is_connected(self, bz2: FinGroupoid) -> None:
        total = grothendieck(_swap_family(bz2)).groupoid
        assert len(total.hom(0, 1)) == 1
        assert gcard(total) == 1

    def test_fibers_of_projection_recover_family(self, bz2: FinGroupoid) -> None:
        fam = _swap_family(bz2)
        fibers = hfiber_family(grothendieck(fam).projection)
        assert find_equivalence(fam.fiber(0), fibers.fiber(0)) is not None

    def test_reassembly_is_an_equivalence(self, bz2: FinGroupoid) -> None:
        to_point = GFunctor(bz2, unit(), (0,), (0, 0))
        _, comparison = hfiber_reassembly(to_point)
        assert verify_equivalence(comparison).holds


class TestSections:
    """Section groupoids are homotopy fixed points."""

    def test_sections_over_discrete_base(self, disc2: FinGroupoid) -> None:
        sections = hsections(constant_family(disc2, disc2))
        assert sections.object_count == 4

    def test_free_action_has_no_fixed_points(self, bz2: FinGroupoid) -> None:
        assert hsections(_swap_family(bz2)).is_empty()

    def test_trivial_action_on_points(self, bz2: FinGroupoid) -> None:
        sections = hsections(constant_family(bz2, discrete(2)))
        assert sections.object_count == 2
        assert gcard(sections) == 2

    def test_mapping_groupoid_of_bz2(self, bz2: FinGroupoid) -> None:
        sections = hsections(constant_family(bz2, bz2))
        assert sections.object_count == 2
        assert gcard(sections) == 1

    def test_pullback_along_point(self, bz2: FinGroupoid) -> None:
        pulled = pullback_family(_swap_family(bz2), point(bz2, 0))
        assert pulled.base == unit()
        assert pulled.fiber(0) == discrete(2)
