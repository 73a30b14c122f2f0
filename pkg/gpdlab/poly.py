"""Polynomials ``I ← E → B → J`` between finite groupoids.

A polynomial with maps ``s: E → I``, ``p: E → B`` and ``t: B → J`` sends a
family X over I to the family over J with

    F(X)(j) = Σ_{b ∈ hfiber(t, j)} Π_{e ∈ hfiber(p, b)} X(s(e))

Sums are Grothendieck total spaces, products are section groupoids; both
are computed exactly, so results are compared up to equivalence only.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from pydantic import BaseModel, Field

from gpdlab.core.bags import Bag, BagMorphism, BangGroupoid
from gpdlab.core.equivalence import (
    SearchBudget,
    automorphisms,
    iso_classes,
    is_contractible,
    representative_paths,
)
from gpdlab.core.families import (
    FamilyOfGroupoids,
    fiber_family,
    fiber_inclusion,
    grothendieck,
    hfiber_family,
    pi_family,
    pullback_family,
)
from gpdlab.core.groupoid import (
    FinGroupoid,
    GFunctor,
    compose_functors,
    discrete,
    identity_functor,
    unit,
    validate_functor,
)
from gpdlab.core.limits import hfiber
from gpdlab.exceptions import ArityError, BoundaryMismatchError, InvalidStructureError
from gpdlab.models import FiberReport, LawViolation, ValidationReport
from gpdlab.span import Endpoint, Span, SpanEquivWitness, span_equiv

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polynomial:
    """``I ←s- E -p→ B -t→ J``."""

    I: FinGroupoid  # noqa: E741
    J: FinGroupoid
    E: FinGroupoid
    B: FinGroupoid
    s: GFunctor
    p: GFunctor
    t: GFunctor

    def __post_init__(self) -> None:
        checks = (
            (self.s.domain, self.E, "s does not start at E"),
            (self.p.domain, self.E, "p does not start at E"),
            (self.p.codomain, self.B, "p does not land in B"),
            (self.t.domain, self.B, "t does not start at B"),
            (self.s.codomain, self.I, "s does not land in I"),
            (self.t.codomain, self.J, "t does not land in J"),
        )
        for got, want, message in checks:
            if got is not want and got != want:
                raise InvalidStructureError(message)

    def validate(self) -> ValidationReport:
        violations: list[LawViolation] = []
        for name, f in (("s", self.s), ("p", self.p), ("t", self.t)):
            for v in validate_functor(f).violations:
                violations.append(v.model_copy(update={"law": f"{name}:{v.law}"}))
        return ValidationReport(valid=not violations, violations=violations)


# =============================================================================
# ARITY
# =============================================================================


class Arity(str, Enum):
    LINEAR = "linear"
    AFFINE = "affine"
    FINITARY = "finitary"
    GENERAL = "general"


class ArityClass(BaseModel):
    """Most specific arity of a polynomial, with the fibers that decided it."""

    arity: Arity = Field(..., description="linear, affine, finitary or general")
    fibers: list[FiberReport] = Field(default_factory=list, description="One report per object of B")

    @property
    def linear(self) -> bool:
        return self.arity == Arity.LINEAR

    @property
    def affine(self) -> bool:
        return self.arity in (Arity.LINEAR, Arity.AFFINE)

    @property
    def finitary(self) -> bool:
        return self.arity != Arity.GENERAL


def fiber_report(p: GFunctor, b: int) -> FiberReport:
    fib = hfiber(p, b).groupoid
    classes = iso_classes(fib)
    return FiberReport(
        base_object=b,
        iso_classes=len(classes),
        max_automorphisms=max((len(automorphisms(fib, c[0])) for c in classes), default=1),
        contractible=is_contractible(fib),
        empty=fib.is_empty(),
    )


def classify_arity(poly: Polynomial) -> ArityClass:
    """Linear: contractible fibers; affine: empty or contractible; finitary: fibers are sets.

    A fiber with a non-trivial automorphism is not equivalent to a finite
    set, which makes the polynomial ``general``.
    """
    fibers = [fiber_report(poly.p, b) for b in poly.B.objects()]
    if any(f.max_automorphisms > 1 for f in fibers):
        arity = Arity.GENERAL
    elif all(f.contractible for f in fibers):
        arity = Arity.LINEAR
    elif all(f.contractible or f.empty for f in fibers):
        arity = Arity.AFFINE
    else:
        arity = Arity.FINITARY
    return ArityClass(arity=arity, fibers=fibers)


# =============================================================================
# CONSTRUCTIONS
# =============================================================================


def poly_id(a: FinGroupoid) -> Polynomial:
    ident = identity_functor(a)
    return Polynomial(a, a, a, a, ident, ident, ident)


def monomial(n: int) -> Polynomial:
    """``x^n`` over the point: E = Disc(n), B = 𝟙."""
    one = unit()
    e = discrete(n)
    to_one = GFunctor(e, one, (0,) * n, (0,) * n)
    return Polynomial(one, one, e, one, to_one, to_one, identity_functor(one))


def linear_from_span(s: Span) -> Polynomial:
    """The linear polynomial ``(X, X, f, id, g)`` of a span ``a ←f- X -g→ b``."""
    s._require_concrete("linear_from_span")
    return Polynomial(s.left.base, s.right.base, s.apex, s.apex, s.leg_l, identity_functor(s.apex), s.leg_r)


def span_from_linear(poly: Polynomial) -> Span:
    """``I ←s- E -t∘p→ J``, defined exactly on linear polynomials."""
    verdict = classify_arity(poly)
    if not verdict.linear:
        sizes = [f.iso_classes for f in verdict.fibers if not f.contractible]
        raise ArityError(f"polynomial is {verdict.arity.value}, not linear (fiber sizes {sizes})")
    return Span(
        Endpoint.gpd(poly.I), Endpoint.gpd(poly.J), poly.E, poly.s, compose_functors(poly.t, poly.p)
    )


def _section_family(poly: Polynomial, x: FamilyOfGroupoids, index: FamilyOfGroupoids) -> FamilyOfGroupoids:
    """``c ↦ Π_{e ∈ index.fiber(c)} X(s(e))`` over ``index.base``."""
    payloads = [
        pullback_family(x, compose_functors(poly.s, fiber_inclusion(index.fiber(c), poly.E)))
        for c in index.base.objects()
    ]
    return pi_family(index, payloads)


def eval_at(poly: Polynomial, x: FamilyOfGroupoids, j: int) -> FinGroupoid:
    """``F_P(X)(j)``: total space over ``hfiber(t, j)`` of sections over ``hfiber(p, b)``.

    Objects are labelled ``(c, σ)`` with ``c`` an object of ``hfiber(t, j)``
    and ``σ`` a section of ``X ∘ s`` over the fiber of ``p`` at ``b(c)``.
    """
    if x.base != poly.I:
        raise BoundaryMismatchError("family is not indexed by the polynomial's source")
    if not 0 <= j < poly.J.object_count:
        raise InvalidStructureError(f"object {j} is not in J")
    over_j = hfiber(poly.t, j)
    index = fiber_family(poly.p, over_j.inclusion)
    result = grothendieck(_section_family(poly, x, index)).groupoid
    logger.debug("eval_at(j=%d): %d objects, %d arrows", j, result.object_count, result.arrow_count)
    return result


def eval_family(poly: Polynomial, x: FamilyOfGroupoids) -> FamilyOfGroupoids:
    """``F_P(X)`` as a family over J.

    Along ``w: j → j'`` the base point ``(b, γ)`` of ``hfiber(t, j)`` moves to
    ``(b, w∘γ)`` and sections ride along unchanged.
    """
    j_gpd, b_gpd = poly.J, poly.B
    fibers = tuple(eval_at(poly, x, j) for j in j_gpd.objects())
    bases = [hfiber(poly.t, j).groupoid for j in j_gpd.objects()]
    transports = []
    for w in j_gpd.arrows():
        j, j2 = j_gpd.source(w), j_gpd.target(w)
        src, dst = bases[j], bases[j2]
        obj_move = tuple(dst.object_index((b, b_gpd.compose(w, gamma))) for b, gamma in src.object_labels)
        arr_move = tuple(dst.arrow_index((obj_move[i], v)) for i, v in src.arrow_labels)
        total, total2 = fibers[j], fibers[j2]
        transports.append(
            GFunctor(
                total,
                total2,
                tuple(total2.object_index((obj_move[c], sigma)) for c, sigma in total.object_labels),
                tuple(total2.arrow_index((arr_move[u], m)) for u, m in total.arrow_labels),
            )
        )
    return FamilyOfGroupoids(j_gpd, fibers, tuple(transports))


def poly_compose(q: Polynomial, p: Polynomial) -> Polynomial:
    """``Q ∘ P`` for ``P: I → J`` and ``Q: J → K``.

    With ``Q = (J ←u- F -q→ C -v→ K)`` the middle groupoid is
    ``D = Σ_{c:C} Π_{x:F_c} B_{u(x)}`` and the top groupoid is
    ``Σ_{(c,α):D} Σ_{x:F_c} E_{α(x)}``.
    """
    if p.J != q.I:
        raise BoundaryMismatchError("polynomials do not share the middle groupoid")
    f_fam = hfiber_family(q.p)
    payloads = [
        fiber_family(p.t, compose_functors(q.s, fiber_inclusion(f_fam.fiber(c), q.E)))
        for c in q.B.objects()
    ]
    d_fam = pi_family(f_fam, payloads)
    d = grothendieck(d_fam)

    dx = grothendieck(pullback_family(f_fam, d.projection))
    evaluate = _evaluation_functor(p.B, f_fam, payloads, d_fam, d.groupoid, dx.groupoid)

    e_fam = hfiber_family(p.p)
    top = grothendieck(pullback_family(e_fam, evaluate))
    to_e = GFunctor(
        top.groupoid,
        p.E,
        tuple(
            e_fam.fiber(evaluate.on_object(g)).object_label(y)[0]
            for g, y in top.groupoid.object_labels
        ),
        tuple(
            e_fam.fiber(evaluate.on_object(dx.groupoid.target(w))).arrow_label(m)[1]
            for w, m in top.groupoid.arrow_labels
        ),
    )
    to_d = compose_functors(dx.projection, top.projection)
    result = Polynomial(
        p.I,
        q.J,
        top.groupoid,
        d.groupoid,
        compose_functors(p.s, to_e),
        to_d,
        compose_functors(q.t, d.projection),
    )
    logger.debug(
        "poly_compose: |E|=%d |B|=%d", result.E.object_count, result.B.object_count
    )
    return result


def _evaluation_functor(
    b_gpd: FinGroupoid,
    f_fam: FamilyOfGroupoids,
    payloads: Sequence[FamilyOfGroupoids],
    d_fam: FamilyOfGroupoids,
    d: FinGroupoid,
    dx: FinGroupoid,
) -> GFunctor:
    """``Σ_{(c,α):D} F_c → B``, ``((c, α), x) ↦ α(x)``."""

    def point(d_obj: int, x: int) -> int:
        c, sigma = d.object_label(d_obj)
        xs, _ = d_fam.fiber(c).object_label(sigma)
        return payloads[c].fiber(x).object_label(xs[x])[0]

    obj_map = tuple(point(d_obj, x) for d_obj, x in dx.object_labels)
    arr_map = []
    for a in dx.arrows():
        w, m = dx.arrow_label(a)
        _, x = dx.object_label(dx.source(a))
        z, move = d.arrow_label(w)
        c2 = d.object_label(d.target(w))[0]
        sections = d_fam.fiber(c2)
        _, ms = sections.arrow_label(move)
        y = f_fam.transport(z).on_object(x)
        beta1 = payloads[c2].fiber(y).arrow_label(ms[y])[1]
        d_tgt = dx.object_label(dx.target(a))[0]
        _, alphas = sections.object_label(d.object_label(d_tgt)[1])
        x2 = dx.object_label(dx.target(a))[1]
        beta2 = payloads[c2].fiber(x2).arrow_label(alphas[m])[1]
        arr_map.append(b_gpd.compose(beta2, beta1))
    return GFunctor(dx, b_gpd, obj_map, tuple(arr_map))


# =============================================================================
# BAG LEG AND EQUIVALENCE
# =============================================================================


def bag_leg(poly: Polynomial) -> GFunctor:
    """``b ↦`` the bag of iso classes of ``hfiber(p, b)``, colored by ``s``.

    Classes are ordered by least object index; along ``w: b → b'`` each
    class representative is transported by post-composition and brought
    back to its class representative, whose ``s``-image is the component.
    Raises ``ArityError`` when a fiber is not equivalent to a set.
    """
    verdict = classify_arity(poly)
    if not verdict.finitary:
        raise ArityError("polynomial has a fiber with non-trivial automorphisms")
    b_gpd = poly.B
    fibers = [hfiber(poly.p, b).groupoid for b in b_gpd.objects()]
    reps = [[members[0] for members in iso_classes(fib)] for fib in fibers]
    paths = [representative_paths(fib) for fib in fibers]
    bags = tuple(
        Bag(tuple(poly.s.on_object(fib.object_label(r)[0]) for r in rs))
        for fib, rs in zip(fibers, reps)
    )
    morphisms = []
    for w in b_gpd.arrows():
        b, b2 = b_gpd.source(w), b_gpd.target(w)
        fib, fib2 = fibers[b], fibers[b2]
        rep_of, path = paths[b2]
        position = {r: k for k, r in enumerate(reps[b2])}
        sigma, comps = [], []
        for r in reps[b]:
            e, gamma = fib.object_label(r)
            moved = fib2.object_index((e, b_gpd.compose(w, gamma)))
            sigma.append(position[rep_of[moved]])
            comps.append(poly.s.on_arrow(fib2.arrow_label(path[moved])[1]))
        morphisms.append(BagMorphism(bags[b], bags[b2], tuple(sigma), tuple(comps)))
    return GFunctor(b_gpd, BangGroupoid(poly.I), bags, tuple(morphisms))


def bag_span(poly: Polynomial) -> Span:
    """``!I ←s̄- B -t→ J``."""
    return Span(Endpoint.bang(poly.I), Endpoint.gpd(poly.J), poly.B, bag_leg(poly), poly.t)


@dataclass(frozen=True)
class PolyEquivWitness:
    """Equivalence of two finitary polynomials through their bag spans.

    ``span.h`` is the equivalence on B; the left triangle's bag
    isomorphisms identify the fibers of p class by class.
    """

    span: SpanEquivWitness

    def verify(self, p1: Polynomial, p2: Polynomial) -> bool:
        return self.span.verify(bag_span(p1), bag_span(p2))

    def summary(self) -> str:
        return f"polynomial equivalence via {self.span.summary()}"


def poly_equiv(
    p1: Polynomial, p2: Polynomial, budget: SearchBudget | int | None = None
) -> PolyEquivWitness | None:
    if p1.I != p2.I or p1.J != p2.J:
        raise BoundaryMismatchError("polynomials have different boundaries")
    found = span_equiv(bag_span(p1), bag_span(p2), budget)
    return PolyEquivWitness(found) if found is not None else None


# =============================================================================
# CLASSICAL COUNTS (discrete data)
# =============================================================================


def classical_eval_count(poly: Polynomial, sizes: Sequence[int], j: int) -> int:
    """``Σ_{t(b)=j} Π_{p(e)=b} sizes[s(e)]`` for a polynomial of sets."""
    return sum(
        math.prod(sizes[poly.s.on_object(e)] for e in poly.E.objects() if poly.p.on_object(e) == b)
        for b in poly.B.objects()
        if poly.t.on_object(b) == j
    )


def classical_compose_count(q: Polynomial, p: Polynomial, sizes: Sequence[int], k: int) -> int:
    """``|F_Q(F_P(X))(k)|`` by evaluating P first, then Q on the resulting sizes."""
    inner = [classical_eval_count(p, sizes, j) for j in p.J.objects()]
    return classical_eval_count(q, inner, k)


__all__ = [
    "Arity",
    "ArityClass",
    "PolyEquivWitness",
    "Polynomial",
    "bag_leg",
    "bag_span",
    "classical_compose_count",
    "classical_eval_count",
    "classify_arity",
    "eval_at",
    "eval_family",
    "fiber_report",
    "linear_from_span",
    "monomial",
    "poly_compose",
    "poly_equiv",
    "poly_id",
    "span_from_linear",
]
