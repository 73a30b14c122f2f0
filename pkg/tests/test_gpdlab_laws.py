"""Tests for the law catalog, the runner and seeded defects."""

from unittest.mock import patch

import numpy as np
import pytest

from gpdlab.bang import eta
from gpdlab.core.equivalence import SearchBudget
from gpdlab.core.groupoid import discrete, unit
from gpdlab.core.limits import point
from gpdlab.exceptions import BudgetExceededError
from gpdlab.laws.catalog import (
    CATALOG,
    FULL_NESTING_BOUND,
    Law,
    LawContext,
    LawId,
    Outcome,
    _bound,
    _flattening_shapes,
    get_law,
    law_index,
)
from gpdlab.laws.mutations import MUTATIONS, describe, seeded_defect
from gpdlab.laws.runner import check_instance, check_law, run_suite
from gpdlab.models import SuiteConfig

# =============================================================================
# Catalog
# =============================================================================


class TestCatalog:
    """Every law id has exactly one entry, in a fixed order."""

    def test_every_id_is_registered(self) -> None:
        assert len(CATALOG) == len(LawId)
        assert {law.id for law in CATALOG} == set(LawId)

    def test_lookup_by_string(self) -> None:
        law = get_law("monad-triangles")
        assert law.id == LawId.MONAD_TRIANGLES
        assert law.statement

    def test_unknown_law(self) -> None:
        with pytest.raises(ValueError):
            get_law("no-such-law")

    def test_index_follows_catalog(self) -> None:
        assert law_index(LawId.SPAN_ASSOC) == 0
        assert law_index("monad-triangles") < law_index("gcard-multiplicative")


# =============================================================================
# Seeded defects
# =============================================================================


class TestMutations:
    """Each defect is caught by the law built to catch it."""

    def test_unknown_mutation(self) -> None:
        with pytest.raises(KeyError, match="unknown mutation"):
            with seeded_defect("not-a-defect"):
                pass

    def test_none_is_a_noop(self, suite_cfg: SuiteConfig) -> None:
        with seeded_defect(None):
            assert check_law(LawId.MONAD_TRIANGLES, suite_cfg).passed

    def test_patch_is_undone(self, suite_cfg: SuiteConfig) -> None:
        with seeded_defect("mu-flatten-order"):
            pass
        assert check_law(LawId.MONAD_TRIANGLES, suite_cfg).passed

    def test_descriptions(self) -> None:
        for name in MUTATIONS:
            assert describe(name)

    @pytest.mark.parametrize(
        "mutation, law",
        [
            ("mu-flatten-order", LawId.MONAD_TRIANGLES),
            ("mu-flatten-order", LawId.MONAD_SQUARE),
            ("l2-dropped-component", LawId.SEELY_SQUARE),
            ("hpullback-missing-gamma", LawId.FIBERED_INDEXED_ROUNDTRIP),
        ],
    )
    def test_defect_is_detected(self, suite_cfg: SuiteConfig, mutation: str, law: LawId) -> None:
        with seeded_defect(mutation):
            report = check_law(law, suite_cfg)
        assert not report.passed
        assert report.summary["fail"] == 1


# =============================================================================
# Bang bounds
# =============================================================================


def _context(bang_bound: int) -> LawContext:
    return LawContext(np.random.default_rng(0), SuiteConfig(bang_bound=bang_bound), SearchBudget(10))


class TestBounds:
    """Bang bounds follow the size of the bases."""

    def test_default_bound_is_three(self) -> None:
        assert SuiteConfig().bang_bound == 3

    def test_small_bases_get_three(self) -> None:
        assert _bound(_context(3), discrete(2), unit()) == 3

    def test_larger_bases_get_two(self) -> None:
        assert _bound(_context(3), discrete(2), discrete(3)) == 2

    def test_configured_bound_is_a_ceiling(self) -> None:
        assert _bound(_context(1), unit()) == 1
        assert _bound(_context(5), unit()) == 3

    def test_cap(self) -> None:
        assert _bound(_context(3), unit(), cap=FULL_NESTING_BOUND) == 2

    def test_flattening_shapes_include_both_levels(self) -> None:
        shapes = _flattening_shapes(_context(3), point(discrete(2), 0))
        assert shapes == [(3, 1), (1, 3), (2, 2)]

    def test_monad_square_at_default_bound(self) -> None:
        report = check_law(LawId.MONAD_SQUARE, SuiteConfig(seed=7, instance_count=1))
        assert report.passed, report.instances[0].detail


# =============================================================================
# Runner
# =============================================================================


def _fake_law(check) -> Law:
    return Law(LawId.TERMINAL, "stand-in", "groupoid", check)


class TestCheckInstance:
    """Verdicts and counterexamples for a single instance."""

    def test_pass_carries_witness(self, suite_cfg: SuiteConfig) -> None:
        result = check_instance(LawId.GCARD_MULTIPLICATIVE, suite_cfg, 0)
        assert result.verdict == "pass"
        assert result.witness
        assert result.counterexample is None

    def test_budget_verdict(self, suite_cfg: SuiteConfig) -> None:
        def check(ctx: LawContext) -> Outcome:
            raise BudgetExceededError("span search", 1)

        with patch("gpdlab.laws.runner.get_law", return_value=_fake_law(check)):
            result = check_instance(LawId.TERMINAL, suite_cfg, 0)
        assert result.verdict == "budget"
        assert "span search" in result.detail

    def test_crash_is_a_failure(self, suite_cfg: SuiteConfig) -> None:
        def check(ctx: LawContext) -> Outcome:
            ctx.record(a=unit())
            raise RuntimeError("boom")

        with patch("gpdlab.laws.runner.get_law", return_value=_fake_law(check)):
            result = check_instance(LawId.TERMINAL, suite_cfg, 0)
        assert result.verdict == "fail"
        assert result.detail == "RuntimeError: boom"
        assert result.counterexample["a"]["objects"] == 1

    def test_unencodable_artifact_falls_back_to_repr(self, suite_cfg: SuiteConfig) -> None:
        def check(ctx: LawContext) -> Outcome:
            ctx.record(f=eta(unit()))
            return Outcome(False, detail="no")

        with patch("gpdlab.laws.runner.get_law", return_value=_fake_law(check)):
            result = check_instance(LawId.TERMINAL, suite_cfg, 0)
        assert result.verdict == "fail"
        assert isinstance(result.counterexample["f"], str)

    def test_same_seed_same_result(self, suite_cfg: SuiteConfig) -> None:
        first = check_instance(LawId.DISCRETE_ORACLE, suite_cfg, 0)
        second = check_instance(LawId.DISCRETE_ORACLE, suite_cfg, 0)
        assert (first.verdict, first.witness) == (second.verdict, second.witness)


class TestSuite:
    """Concurrent suite runs."""

    @pytest.mark.parametrize(
        "law",
        [
            LawId.GCARD_MULTIPLICATIVE,
            LawId.MONAD_TRIANGLES,
            LawId.MONAD_SQUARE,
            LawId.MU_NATURAL,
            LawId.MU_CARTESIAN,
            LawId.SPAN_UNIT,
            LawId.POLY_UNIT,
        ],
    )
    def test_laws_hold(self, suite_cfg: SuiteConfig, law: LawId) -> None:
        report = check_law(law, suite_cfg)
        assert report.passed, report.instances[0].detail

    async def test_reports_in_catalog_order(self, suite_cfg: SuiteConfig) -> None:
        report = await run_suite(suite_cfg, ["gcard-multiplicative", "monad-triangles"])
        assert [r.law for r in report.laws] == ["monad-triangles", "gcard-multiplicative"]
        assert report.summary["laws"] == 2
        assert report.summary["laws_failed"] == 0
        assert report.passed

    async def test_mutation_is_recorded(self, suite_cfg: SuiteConfig) -> None:
        report = await run_suite(suite_cfg, ["monad-triangles"], mutation="mu-flatten-order")
        assert report.mutation == "mu-flatten-order"
        assert report.summary["laws_failed"] == 1
