"""Tests for cardinality, skeleta and equivalence search."""

from fractions import Fraction

import pytest

from gpdlab.core.equivalence import (
    SearchBudget,
    are_equivalent,
    class_signature,
    find_equivalence,
    gcard,
    iso_classes,
    quasi_inverse,
    skeletalize,
)
from gpdlab.core.groupoid import cyclic_block, cyclic_group, discrete, indiscrete, unit, validate_functor
from gpdlab.exceptions import BudgetExceededError


class TestCardinality:
    """Groupoid cardinality and iso classes."""

    def test_gcard_of_indiscrete_is_one(self) -> None:
        assert gcard(indiscrete(3)) == 1

    def test_gcard_of_cyclic_group(self) -> None:
        assert gcard(cyclic_group(3)) == Fraction(1, 3)

    def test_gcard_of_connected_block(self) -> None:
        assert gcard(cyclic_block(2, 2)) == Fraction(1, 2)

    def test_iso_classes(self) -> None:
        assert iso_classes(discrete(2)) == [[0], [1]]
        assert iso_classes(indiscrete(2)) == [[0, 1]]

    def test_class_signature(self) -> None:
        assert class_signature(cyclic_block(2, 3)) == (3,)


class TestSkeleton:
    """One object per iso class."""

    def test_skeleton_of_indiscrete(self) -> None:
        skel = skeletalize(indiscrete(3))
        assert skel.groupoid.object_count == 1
        assert skel.witness.evidence.holds

    def test_retraction_is_a_functor(self) -> None:
        skel = skeletalize(cyclic_block(2, 2))
        assert validate_functor(skel.retraction).valid


class TestFindEquivalence:
    """Witness search, verification and failure modes."""

    def test_indiscrete_is_equivalent_to_point(self) -> None:
        witness = find_equivalence(indiscrete(3), unit())
        assert witness is not None
        assert witness.verify()
        assert "equivalence" in witness.summary()

    def test_different_vertex_groups(self) -> None:
        assert find_equivalence(cyclic_group(2), cyclic_group(3)) is None
        assert not are_equivalent(cyclic_group(2), unit())

    def test_different_class_counts(self) -> None:
        assert find_equivalence(discrete(2), discrete(3)) is None

    def test_quasi_inverse_is_a_functor(self) -> None:
        witness = find_equivalence(cyclic_block(2, 2), cyclic_group(2))
        assert witness is not None
        back = quasi_inverse(witness)
        assert validate_functor(back).valid

    def test_budget_exhaustion_raises(self) -> None:
        with pytest.raises(BudgetExceededError) as exc:
            find_equivalence(discrete(2), discrete(2), SearchBudget(1, "iso search"))
        assert exc.value.budget == 1
        assert "iso search" in str(exc.value)
