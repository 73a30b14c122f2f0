"""Pydantic models for gpdlab reports, evidence and suite configuration."""

from typing import Literal

from pydantic import BaseModel, Field


class LawViolation(BaseModel):
    """A single failed law found while validating a structure."""

    law: str = Field(
        ...,
        description="Short name of the violated law (e.g. 'associativity')",
    )
    arrows: list[int] = Field(
        default_factory=list,
        description="Arrow ids witnessing the violation",
    )
    detail: str = Field(
        default="",
        description="Human-readable explanation",
    )


class ValidationReport(BaseModel):
    """Outcome of an exhaustive law check on a groupoid, functor or natural iso."""

    valid: bool = Field(
        ...,
        description="True iff no law was violated",
    )
    violations: list[LawViolation] = Field(
        default_factory=list,
        description="Every violated law with its witnessing arrows",
    )


class EquivalenceEvidence(BaseModel):
    """Verification record for a candidate equivalence functor."""

    full: bool = Field(..., description="Every hom-set map is surjective")
    faithful: bool = Field(..., description="Every hom-set map is injective")
    essentially_surjective: bool = Field(
        ...,
        description="Every codomain object is isomorphic to an image object",
    )
    hom_pairs_checked: int = Field(
        default=0,
        ge=0,
        description="Number of (x, y) object pairs whose hom-set map was inspected",
    )
    classes_covered: int = Field(
        default=0,
        ge=0,
        description="Iso classes of the codomain hit by the functor",
    )

    @property
    def holds(self) -> bool:
        return self.full and self.faithful and self.essentially_surjective


class FiberReport(BaseModel):
    """Shape of one homotopy fiber of a polynomial's middle map."""

    base_object: int = Field(..., ge=0, description="Object b of B")
    iso_classes: int = Field(..., ge=0, description="Iso classes in hfiber(p, b)")
    max_automorphisms: int = Field(
        default=1,
        ge=1,
        description="Largest automorphism group order among fiber objects",
    )
    contractible: bool = Field(..., description="Fiber is equivalent to the point")
    empty: bool = Field(..., description="Fiber has no objects")


class InstanceResult(BaseModel):
    """Verdict on a single generated instance of a law."""

    seed_index: int = Field(..., ge=0, description="Index of the instance in the seeded stream")
    verdict: Literal["pass", "fail", "budget"] = Field(
        ...,
        description="pass, fail, or budget (search budget exhausted)",
    )
    witness: str | None = Field(
        default=None,
        description="Summary of the re-verified witness backing a pass",
    )
    counterexample: dict | None = Field(
        default=None,
        description="Serialized artifacts reproducing a failure",
    )
    detail: str | None = Field(
        default=None,
        description="Failure or budget message",
    )
    millis: float = Field(default=0.0, ge=0.0, description="Wall time for this instance")


class LawReport(BaseModel):
    """All instances checked for one catalog law."""

    law: str = Field(..., description="Catalog identifier")
    statement: str = Field(default="", description="What the law asserts, in words")
    bounded: bool = Field(
        default=False,
        description="True when the check runs on bounded bang materializations",
    )
    instances: list[InstanceResult] = Field(default_factory=list)
    summary: dict[str, int] = Field(
        default_factory=dict,
        description="Counts of pass/fail/budget verdicts",
    )

    @property
    def passed(self) -> bool:
        return all(i.verdict == "pass" for i in self.instances)


class SuiteReport(BaseModel):
    """Aggregate of every law report in a suite run."""

    seed: int = Field(..., ge=0)
    mutation: str | None = Field(
        default=None,
        description="Seeded defect active during the run, if any",
    )
    laws: list[LawReport] = Field(default_factory=list)
    summary: dict[str, int] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.laws)

    @property
    def budget_exhausted(self) -> bool:
        return any(i.verdict == "budget" for report in self.laws for i in report.instances)


class SuiteConfig(BaseModel):
    """Sizes, bounds and seed for generated law instances."""

    seed: int = Field(default=42, ge=0, lt=2**64, description="64-bit suite seed")
    max_objects: int = Field(default=3, gt=0, description="Objects per generated groupoid")
    max_arrows: int = Field(default=12, gt=0, description="Arrows per generated groupoid")
    bang_bound: int = Field(
        default=3,
        gt=0,
        description="Ceiling on bang carrier bounds; checks over bases with more than two objects use at most 2",
    )
    instance_count: int = Field(default=5, gt=0, description="Instances checked per law")
    search_budget: int = Field(
        default=1_000_000,
        gt=0,
        description="Candidate steps allowed to each equivalence search",
    )
