"""Kleisli morphisms of the bag comonad and their comparison with polynomials.

A Kleisli morphism ``I → J`` is a span ``!I ⇸ J``. Identities are the
counit ε; composition follows the reduced form

    !I ←μ∘!ℓ_f- !B -!t→ !J   composed with   !J ←ℓ_g- C -v→ K

with the bag groupoid over B cut to the sizes that can meet ``ℓ_g``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from gpdlab.bang import bang_functor, bang_span, counit_span, delta_span, mu
from gpdlab.core.bags import BangGroupoid, bang_materialize
from gpdlab.core.equivalence import SearchBudget
from gpdlab.core.families import discrete_family, grothendieck
from gpdlab.core.groupoid import FinGroupoid, GFunctor, compose_functors, label_inclusion
from gpdlab.core.limits import hpullback
from gpdlab.exceptions import BoundaryMismatchError, InvalidStructureError
from gpdlab.poly import Polynomial, bag_span, poly_compose, poly_id
from gpdlab.span import Endpoint, Span, SpanEquivWitness, compose_all, span_equiv

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KleisliMorphism:
    domain: FinGroupoid
    codomain: FinGroupoid
    carrier: Span

    def __post_init__(self) -> None:
        if self.carrier.left != Endpoint.bang(self.domain):
            raise InvalidStructureError("Kleisli carrier must start at the bag groupoid of its domain")
        if self.carrier.right != Endpoint.gpd(self.codomain):
            raise InvalidStructureError("Kleisli carrier must end at its codomain")

    @classmethod
    def of(cls, carrier: Span) -> "KleisliMorphism":
        return cls(carrier.left.base, carrier.right.base, carrier)


def kleisli_identity(a: FinGroupoid) -> KleisliMorphism:
    return KleisliMorphism(a, a, counit_span(a))


def poly_to_span(poly: Polynomial) -> KleisliMorphism:
    """``!I ←s̄- B -t→ J``; raises ``ArityError`` on a non-finitary polynomial."""
    return KleisliMorphism(poly.I, poly.J, bag_span(poly))


def span_to_poly(m: KleisliMorphism) -> Polynomial:
    """Unfold bag carriers: E is the total space of ``x ↦ Disc(|ℓ(x)|)``.

    ``s`` reads the colors, ``p`` projects to the apex, ``t`` is the right leg.
    """
    apex = m.carrier.apex
    leg = m.carrier.leg_l
    sizes = [leg.on_object(x).size for x in apex.objects()]
    fam = discrete_family(apex, sizes, [leg.on_arrow(u).sigma for u in apex.arrows()])
    total = grothendieck(fam)
    e = total.groupoid
    obj_map = tuple(leg.on_object(x).colors[i] for x, i in e.object_labels)
    arr_map = []
    for a in e.arrows():
        _, i = e.object_label(e.source(a))
        u, _ = e.arrow_label(a)
        arr_map.append(leg.on_arrow(u).components[i])
    s = GFunctor(e, m.domain, obj_map, tuple(arr_map))
    return Polynomial(m.domain, m.codomain, e, apex, s, total.projection, m.carrier.leg_r)


def sufficient_bound(g: KleisliMorphism) -> int:
    """Largest bag in the image of ``g``'s left leg; no larger bag over J can meet it."""
    leg = g.carrier.leg_l
    return max((leg.on_object(c).size for c in g.carrier.apex.objects()), default=0)


def _require_composable(g: KleisliMorphism, f: KleisliMorphism) -> None:
    if f.codomain != g.domain:
        raise BoundaryMismatchError("Kleisli morphisms do not share the middle groupoid")


def kleisli_compose(g: KleisliMorphism, f: KleisliMorphism, bound: int | None = None) -> KleisliMorphism:
    """``g ∘ f`` in reduced form.

    ``bound`` defaults to ``sufficient_bound(g)``; any larger bound gives an
    equivalent span.
    """
    _require_composable(g, f)
    n = sufficient_bound(g) if bound is None else bound
    b_gpd = f.carrier.apex
    bags = bang_materialize(b_gpd, n)
    lifted_t = bang_functor(f.carrier.leg_r).tabulate(bags)
    pb = hpullback(lifted_t, g.carrier.leg_l)
    inclusion = compose_functors(label_inclusion(bags, BangGroupoid(b_gpd)), pb.pi1)
    left = compose_functors(mu(f.domain), compose_functors(bang_functor(f.carrier.leg_l), inclusion))
    right = compose_functors(g.carrier.leg_r, pb.pi2)
    carrier = Span(Endpoint.bang(f.domain), Endpoint.gpd(g.codomain), pb.groupoid, left, right)
    logger.debug("kleisli_compose: bound %d, apex %d objects", n, pb.groupoid.object_count)
    return KleisliMorphism(f.domain, g.codomain, carrier)


def kleisli_compose_general(
    g: KleisliMorphism, f: KleisliMorphism, bound: int | None = None
) -> KleisliMorphism:
    """``g ∘ Span(!)(f) ∘ δ`` on bounded bag groupoids."""
    _require_composable(g, f)
    n = sufficient_bound(g) if bound is None else bound
    inner = sufficient_bound(f)
    carrier = compose_all(g.carrier, bang_span(f.carrier, n), delta_span(f.domain, n, inner))
    return KleisliMorphism(f.domain, g.codomain, carrier)


@dataclass(frozen=True)
class KleisliPolyCheck:
    """Witnesses that composition and identities agree on both sides."""

    composite: SpanEquivWitness | None
    identity: SpanEquivWitness | None

    @property
    def holds(self) -> bool:
        return self.composite is not None and self.identity is not None

    def summary(self) -> str:
        parts = []
        for name, w in (("composite", self.composite), ("identity", self.identity)):
            parts.append(f"{name}: {w.summary() if w is not None else 'no equivalence'}")
        return "; ".join(parts)


def check_kleisli_poly_equiv(
    q: Polynomial, p: Polynomial, budget: SearchBudget | int | None = None
) -> KleisliPolyCheck:
    """Compare ``poly_to_span(Q ∘ P)`` with the Kleisli composite, and the identity on I."""
    via_poly = poly_to_span(poly_compose(q, p)).carrier
    via_kleisli = kleisli_compose(poly_to_span(q), poly_to_span(p)).carrier
    composite = span_equiv(via_poly, via_kleisli, budget)
    identity = span_equiv(
        poly_to_span(poly_id(p.I)).carrier, kleisli_identity(p.I).carrier, budget
    )
    return KleisliPolyCheck(composite, identity)


__all__ = [
    "KleisliMorphism",
    "KleisliPolyCheck",
    "check_kleisli_poly_equiv",
    "kleisli_compose",
    "kleisli_compose_general",
    "kleisli_identity",
    "poly_to_span",
    "span_to_poly",
    "sufficient_bound",
]
