"""Tests for the seeded instance generators."""

from fractions import Fraction

import pytest

from gpdlab.core.equivalence import gcard
from gpdlab.core.groupoid import validate_functor, validate_groupoid
from gpdlab.laws.generators import (
    block_groupoid,
    generate,
    instance_rng,
    random_functor,
    random_polynomial,
    random_spec,
    spec_arrows,
    spec_of,
)
from gpdlab.models import SuiteConfig
from gpdlab.poly import classify_arity


class TestBlockGroupoids:
    """Disjoint unions of connected blocks with cyclic vertex groups."""

    def test_shape(self) -> None:
        g = block_groupoid(((2, 2), (1, 1)))
        assert g.object_count == 3
        assert g.arrow_count == 9
        assert validate_groupoid(g).valid

    def test_spec_roundtrip(self) -> None:
        spec = ((2, 2), (1, 3), (1, 1))
        assert spec_of(block_groupoid(spec)) == spec
        assert spec_arrows(spec) == 8 + 3 + 1

    def test_gcard_counts_blocks(self) -> None:
        assert gcard(block_groupoid(((2, 2), (1, 1)))) == Fraction(3, 2)

    @pytest.mark.parametrize("index", range(8))
    def test_random_spec_respects_limits(self, index: int) -> None:
        spec = random_spec(instance_rng(11, 0, index), 3, 6)
        assert 1 <= sum(n for n, _ in spec) <= 3
        assert spec_arrows(spec) <= 6

    def test_min_order_forces_automorphisms(self) -> None:
        spec = random_spec(instance_rng(11, 0, 0), 2, 8, min_order=2)
        assert spec[0][1] >= 2


class TestFunctors:
    """Random functors are valid by construction."""

    @pytest.mark.parametrize("index", range(5))
    def test_random_functor_is_valid(self, index: int) -> None:
        rng = instance_rng(5, 1, index)
        dom = block_groupoid(random_spec(rng, 3, 6))
        cod = block_groupoid(random_spec(rng, 3, 6))
        assert validate_functor(random_functor(rng, dom, cod)).valid

    def test_faithful_functor_is_injective_on_arrows(self) -> None:
        dom, cod = block_groupoid(((1, 2),)), block_groupoid(((1, 4),))
        f = random_functor(instance_rng(0, 0, 0), dom, cod, faithful=True)
        assert validate_functor(f).valid
        assert len(set(f.arr_map)) == 2

    def test_no_functor_into_empty(self) -> None:
        with pytest.raises(ValueError, match="empty"):
            random_functor(instance_rng(0, 0, 0), block_groupoid(((1, 1),)), block_groupoid(()))

    def test_no_faithful_target(self) -> None:
        with pytest.raises(ValueError, match="faithful"):
            random_functor(
                instance_rng(0, 0, 0), block_groupoid(((1, 3),)), block_groupoid(((1, 2),)), faithful=True
            )


class TestStreams:
    """Seeded streams are reproducible."""

    def test_same_seed_same_instances(self, suite_cfg: SuiteConfig) -> None:
        cfg = suite_cfg.model_copy(update={"instance_count": 3})
        assert list(generate("groupoid", cfg)) == list(generate("groupoid", cfg))

    def test_instance_count(self, suite_cfg: SuiteConfig) -> None:
        cfg = suite_cfg.model_copy(update={"instance_count": 4})
        assert len(list(generate("span", cfg))) == 4

    def test_unknown_kind(self, suite_cfg: SuiteConfig) -> None:
        with pytest.raises(ValueError, match="unknown instance kind"):
            next(generate("bogus", suite_cfg))  # type: ignore[arg-type]

    @pytest.mark.parametrize("index", range(4))
    def test_random_polynomials_are_finitary(self, suite_cfg: SuiteConfig, index: int) -> None:
        rng = instance_rng(suite_cfg.seed, 9, index)
        i_gpd = block_groupoid(((1, 1),))
        j_gpd = block_groupoid(((1, 2),))
        poly = random_polynomial(rng, i_gpd, j_gpd, suite_cfg)
        assert classify_arity(poly).finitary
