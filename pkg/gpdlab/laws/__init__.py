"""Seeded law suite: generators, catalog, seeded defects and the runner."""

from gpdlab.laws.catalog import CATALOG, LawId, get_law
from gpdlab.laws.generators import generate
from gpdlab.laws.mutations import MUTATIONS, seeded_defect
from gpdlab.laws.runner import check_law, run_suite, run_suite_sync

__all__ = [
    "CATALOG",
    "LawId",
    "MUTATIONS",
    "check_law",
    "generate",
    "get_law",
    "run_suite",
    "run_suite_sync",
    "seeded_defect",
]
