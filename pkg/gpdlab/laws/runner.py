"""Run catalog laws on seeded instances and collect reports.

Checks are synchronous and pure given their instance, so the suite runs
them in worker threads via ``asyncio.to_thread`` and merges the reports in
catalog order.
"""

from __future__ import annotations

import asyncio
import logging
import time
from typing import Any, Iterable

from gpdlab._logging import _log_law_event
from gpdlab.core.equivalence import SearchBudget
from gpdlab.exceptions import BudgetExceededError, GpdlabError
from gpdlab.laws.catalog import CATALOG, LawContext, LawId, get_law, law_index
from gpdlab.laws.generators import instance_rng
from gpdlab.laws.mutations import seeded_defect
from gpdlab.models import InstanceResult, LawReport, SuiteConfig, SuiteReport
from gpdlab.serialize import to_jsonable

logger = logging.getLogger(__name__)


def _counterexample(artifacts: dict[str, Any]) -> dict:
    out: dict[str, Any] = {}
    for name, value in artifacts.items():
        try:
            out[name] = to_jsonable(value)
        except GpdlabError:
            out[name] = repr(value)
    return out


def _summarize(verdicts: Iterable[str]) -> dict[str, int]:
    summary = {"pass": 0, "fail": 0, "budget": 0}
    for v in verdicts:
        summary[v] += 1
    return summary


def check_instance(law_id: LawId | str, cfg: SuiteConfig, index: int) -> InstanceResult:
    """Generate and check instance ``index`` of a law."""
    law = get_law(law_id)
    ctx = LawContext(
        rng=instance_rng(cfg.seed, law_index(law.id), index),
        cfg=cfg,
        budget=SearchBudget(cfg.search_budget, law.id.value),
    )
    start = time.perf_counter()
    try:
        outcome = law.check(ctx)
        verdict = "pass" if outcome.passed else "fail"
        result = InstanceResult(
            seed_index=index,
            verdict=verdict,
            witness=outcome.witness if outcome.passed else None,
            counterexample=None if outcome.passed else _counterexample(ctx.artifacts),
            detail=outcome.detail,
        )
    except BudgetExceededError as e:
        result = InstanceResult(seed_index=index, verdict="budget", detail=str(e))
    except Exception as e:
        result = InstanceResult(
            seed_index=index,
            verdict="fail",
            counterexample=_counterexample(ctx.artifacts),
            detail=f"{type(e).__name__}: {e}",
        )
    millis = (time.perf_counter() - start) * 1000
    result.millis = millis
    _log_law_event(law.id.value, index, result.verdict, millis, result.detail)
    return result


def check_law(law_id: LawId | str, cfg: SuiteConfig) -> LawReport:
    """Run ``cfg.instance_count`` instances of one law."""
    law = get_law(law_id)
    instances = [check_instance(law.id, cfg, i) for i in range(cfg.instance_count)]
    report = LawReport(
        law=law.id.value,
        statement=law.statement,
        bounded=law.bounded,
        instances=instances,
        summary=_summarize(i.verdict for i in instances),
    )
    logger.debug("check_law %s: %s", law.id.value, report.summary)
    return report


async def run_suite(
    cfg: SuiteConfig,
    laws: Iterable[LawId | str] | None = None,
    mutation: str | None = None,
) -> SuiteReport:
    """Check every selected law concurrently; reports come back in catalog order."""
    selected = [LawId(law) for law in laws] if laws is not None else [law.id for law in CATALOG]
    with seeded_defect(mutation):
        reports = await asyncio.gather(*(asyncio.to_thread(check_law, law, cfg) for law in selected))
    reports = sorted(reports, key=lambda r: law_index(r.law))
    summary = _summarize(i.verdict for r in reports for i in r.instances)
    summary["laws"] = len(reports)
    summary["laws_failed"] = sum(1 for r in reports if not r.passed)
    return SuiteReport(seed=cfg.seed, mutation=mutation, laws=reports, summary=summary)


def run_suite_sync(
    cfg: SuiteConfig,
    laws: Iterable[LawId | str] | None = None,
    mutation: str | None = None,
) -> SuiteReport:
    return asyncio.run(run_suite(cfg, laws, mutation))


__all__ = ["check_instance", "check_law", "run_suite", "run_suite_sync"]
