"""Spans of finite groupoids and their structure.

A span ``a ⇸ b`` is an apex groupoid with two leg functors. Endpoints are
descriptors: a concrete FinGroupoid, or the symbolic bag groupoids !A and
!!A, so legs may land in groupoids that are never listed. Composition is the
homotopy pullback over the shared endpoint. Spans are compared up to
equivalence with ``span_equiv`` or through ``canonical_form``; the
associator and unitor 2-cells are never stored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Literal

from gpdlab.core.bags import BangGroupoid
from gpdlab.core.equivalence import (
    EquivalenceWitness,
    SearchBudget,
    class_signature,
    generated,
    group_isomorphisms,
    iso_classes,
    minimal_generating_tuples,
    representative_paths,
    verify_equivalence,
)
from gpdlab.core.groupoid import (
    FinGroupoid,
    GFunctor,
    NatIso,
    compose_functors,
    empty,
    functor_by_labels,
    identity_functor,
    unit,
    validate_functor,
)
from gpdlab.core.limits import (
    coproduct,
    coproduct_functor,
    copair_functors,
    functor_product,
    hpullback,
    pair_functors,
    product,
)
from gpdlab.exceptions import (
    BoundaryMismatchError,
    InvalidStructureError,
    UnsupportedEndpointError,
)
from gpdlab.models import LawViolation, ValidationReport

logger = logging.getLogger(__name__)

EndpointKind = Literal["gpd", "bang", "bangbang"]


@dataclass(frozen=True)
class Endpoint:
    """A span endpoint: ``base`` itself, ``!base`` or ``!!base``."""

    kind: EndpointKind
    base: FinGroupoid

    @classmethod
    def gpd(cls, a: FinGroupoid) -> "Endpoint":
        return cls("gpd", a)

    @classmethod
    def bang(cls, a: FinGroupoid) -> "Endpoint":
        return cls("bang", a)

    @classmethod
    def bangbang(cls, a: FinGroupoid) -> "Endpoint":
        return cls("bangbang", a)

    @classmethod
    def of(cls, view: Any) -> "Endpoint":
        """Recover the descriptor whose view is ``view``."""
        if isinstance(view, FinGroupoid):
            return cls.gpd(view)
        if isinstance(view, BangGroupoid):
            if isinstance(view.base, FinGroupoid):
                return cls.bang(view.base)
            if isinstance(view.base, BangGroupoid) and isinstance(view.base.base, FinGroupoid):
                return cls.bangbang(view.base.base)
        raise UnsupportedEndpointError(f"no endpoint descriptor for {view!r}")

    @property
    def view(self) -> Any:
        if self.kind == "gpd":
            return self.base
        if self.kind == "bang":
            return BangGroupoid(self.base)
        return BangGroupoid(BangGroupoid(self.base))

    @property
    def is_concrete(self) -> bool:
        return self.kind == "gpd"


@dataclass(frozen=True)
class Span:
    """``left ← apex → right`` with legs into the endpoint views."""

    left: Endpoint
    right: Endpoint
    apex: FinGroupoid
    leg_l: GFunctor
    leg_r: GFunctor

    def __post_init__(self) -> None:
        for leg, end, side in ((self.leg_l, self.left, "left"), (self.leg_r, self.right, "right")):
            if leg.domain is not self.apex and leg.domain != self.apex:
                raise InvalidStructureError(f"{side} leg does not start at the apex")
            if leg.codomain != end.view:
                raise InvalidStructureError(f"{side} leg does not land in the {side} endpoint")

    def validate(self) -> ValidationReport:
        violations: list[LawViolation] = []
        for side, leg in (("left", self.leg_l), ("right", self.leg_r)):
            for v in validate_functor(leg).violations:
                violations.append(v.model_copy(update={"law": f"{side}-leg:{v.law}"}))
        return ValidationReport(valid=not violations, violations=violations)

    def _require_concrete(self, op: str) -> None:
        if not (self.left.is_concrete and self.right.is_concrete):
            raise UnsupportedEndpointError(f"{op} needs concrete endpoints")


# =============================================================================
# CATEGORY STRUCTURE
# =============================================================================


def span_id(a: FinGroupoid) -> Span:
    ident = identity_functor(a)
    return Span(Endpoint.gpd(a), Endpoint.gpd(a), a, ident, ident)


def span_compose(g: Span, f: Span) -> Span:
    """``g ∘ f`` for ``f: a ⇸ b`` and ``g: b ⇸ c``, by homotopy pullback over b."""
    if f.right != g.left:
        raise BoundaryMismatchError(
            f"cannot compose: middle endpoints differ ({f.right.kind} vs {g.left.kind})"
        )
    pb = hpullback(f.leg_r, g.leg_l)
    return Span(
        f.left,
        g.right,
        pb.groupoid,
        compose_functors(f.leg_l, pb.pi1),
        compose_functors(g.leg_r, pb.pi2),
    )


def compose_all(*spans: Span) -> Span:
    """Compose right to left: ``compose_all(h, g, f) = h ∘ g ∘ f``."""
    result = spans[-1]
    for s in reversed(spans[:-1]):
        result = span_compose(s, result)
    return result


def l_embed(f: GFunctor) -> Span:
    """``L(f): a ⇸ b`` with legs ``(id, f)``."""
    return Span(Endpoint.gpd(f.domain), Endpoint.of(f.codomain), f.domain, identity_functor(f.domain), f)


def r_embed(f: GFunctor) -> Span:
    """``R(f): b ⇸ a`` with legs ``(f, id)``."""
    return dualize(l_embed(f))


def dualize(s: Span) -> Span:
    return Span(s.right, s.left, s.apex, s.leg_r, s.leg_l)


# =============================================================================
# MONOIDAL STRUCTURE
# =============================================================================


def tensor(s1: Span, s2: Span) -> Span:
    """Pointwise product of endpoints, apexes and legs."""
    s1._require_concrete("tensor")
    s2._require_concrete("tensor")
    left, apex_prod, left_prod = functor_product(s1.leg_l, s2.leg_l)
    right, _, right_prod = functor_product(s1.leg_r, s2.leg_r)
    right = GFunctor(left.domain, right_prod.groupoid, right.obj_map, right.arr_map)
    return Span(
        Endpoint.gpd(left_prod.groupoid),
        Endpoint.gpd(right_prod.groupoid),
        apex_prod.groupoid,
        left,
        right,
    )


def left_unitor(a: FinGroupoid) -> GFunctor:
    """``𝟙 × a → a``."""
    return functor_by_labels(product(unit(), a).groupoid, a, lambda o: o[1], lambda u: u[1])


def right_unitor(a: FinGroupoid) -> GFunctor:
    """``a × 𝟙 → a``."""
    return functor_by_labels(product(a, unit()).groupoid, a, lambda o: o[0], lambda u: u[0])


def inverse_left_unitor(a: FinGroupoid) -> GFunctor:
    return functor_by_labels(a, product(unit(), a).groupoid, lambda o: (0, o), lambda u: (0, u))


def inverse_right_unitor(a: FinGroupoid) -> GFunctor:
    return functor_by_labels(a, product(a, unit()).groupoid, lambda o: (o, 0), lambda u: (u, 0))


def associator(a: FinGroupoid, b: FinGroupoid, c: FinGroupoid) -> GFunctor:
    """``a × (b × c) → (a × b) × c``."""
    bc = product(b, c).groupoid
    ab = product(a, b).groupoid
    src = product(a, bc).groupoid
    dst = product(ab, c).groupoid

    def on_obj(lab: tuple) -> tuple:
        y, z = bc.object_label(lab[1])
        return (ab.object_index((lab[0], y)), z)

    def on_arr(lab: tuple) -> tuple:
        v, w = bc.arrow_label(lab[1])
        return (ab.arrow_index((lab[0], v)), w)

    return functor_by_labels(src, dst, on_obj, on_arr)


def inverse_associator(a: FinGroupoid, b: FinGroupoid, c: FinGroupoid) -> GFunctor:
    """``(a × b) × c → a × (b × c)``."""
    bc = product(b, c).groupoid
    ab = product(a, b).groupoid
    src = product(ab, c).groupoid
    dst = product(a, bc).groupoid

    def on_obj(lab: tuple) -> tuple:
        x, y = ab.object_label(lab[0])
        return (x, bc.object_index((y, lab[1])))

    def on_arr(lab: tuple) -> tuple:
        u, v = ab.arrow_label(lab[0])
        return (u, bc.arrow_index((v, lab[1])))

    return functor_by_labels(src, dst, on_obj, on_arr)


def symmetry(a: FinGroupoid, b: FinGroupoid) -> GFunctor:
    """``a × b → b × a``."""
    return functor_by_labels(
        product(a, b).groupoid,
        product(b, a).groupoid,
        lambda o: (o[1], o[0]),
        lambda u: (u[1], u[0]),
    )


def diagonal(a: FinGroupoid) -> GFunctor:
    prod = product(a, a)
    return pair_functors(identity_functor(a), identity_functor(a), prod)


def terminal_functor(a: FinGroupoid) -> GFunctor:
    one = unit()
    return GFunctor(a, one, (0,) * a.object_count, (0,) * a.arrow_count)


# =============================================================================
# CARTESIAN STRUCTURE (products are coproducts of the base)
# =============================================================================


def pairing(f: Span, g: Span) -> Span:
    """``⟨f, g⟩: x ⇸ a ⊎ b`` for ``f: x ⇸ a`` and ``g: x ⇸ b``."""
    if f.left != g.left:
        raise BoundaryMismatchError("pairing needs a shared left endpoint")
    f._require_concrete("pairing")
    g._require_concrete("pairing")
    apex = coproduct(f.apex, g.apex)
    left = copair_functors(f.leg_l, g.leg_l, apex)
    right, _, target = coproduct_functor(f.leg_r, g.leg_r)
    right = GFunctor(apex.groupoid, target.groupoid, right.obj_map, right.arr_map)
    return Span(f.left, Endpoint.gpd(target.groupoid), apex.groupoid, left, right)


def product_projections(a: FinGroupoid, b: FinGroupoid) -> tuple[Span, Span]:
    """``π1 = R(ι1): a ⊎ b ⇸ a`` and ``π2 = R(ι2): a ⊎ b ⇸ b``."""
    cop = coproduct(a, b)
    return r_embed(cop.iota1), r_embed(cop.iota2)


def terminal_span(x: FinGroupoid) -> Span:
    """The unique span ``x ⇸ ∅``; its apex is empty."""
    nothing = empty()
    return Span(
        Endpoint.gpd(x),
        Endpoint.gpd(nothing),
        nothing,
        GFunctor(nothing, x, (), ()),
        GFunctor(nothing, nothing, (), ()),
    )


def initial_span(x: FinGroupoid) -> Span:
    return dualize(terminal_span(x))


def copairing(f: Span, g: Span) -> Span:
    """``[f, g]: a ⊎ b ⇸ x`` for ``f: a ⇸ x`` and ``g: b ⇸ x``."""
    return dualize(pairing(dualize(f), dualize(g)))


def coproduct_injections(a: FinGroupoid, b: FinGroupoid) -> tuple[Span, Span]:
    cop = coproduct(a, b)
    return l_embed(cop.iota1), l_embed(cop.iota2)


# =============================================================================
# CLOSED AND COMPACT STRUCTURE
# =============================================================================


def curry(s: Span, a: FinGroupoid, b: FinGroupoid) -> Span:
    """``a × b ⇸ c`` to ``a ⇸ b × c`` on the same apex."""
    ab = product(a, b)
    if s.left != Endpoint.gpd(ab.groupoid) or not s.right.is_concrete:
        raise BoundaryMismatchError("curry needs a span out of a × b")
    c = s.right.base
    bc = product(b, c)
    new_left = compose_functors(ab.pi1, s.leg_l)
    new_right = pair_functors(compose_functors(ab.pi2, s.leg_l), s.leg_r, bc)
    return Span(Endpoint.gpd(a), Endpoint.gpd(bc.groupoid), s.apex, new_left, new_right)


def uncurry(s: Span, b: FinGroupoid, c: FinGroupoid) -> Span:
    """``a ⇸ b × c`` to ``a × b ⇸ c`` on the same apex."""
    bc = product(b, c)
    if s.right != Endpoint.gpd(bc.groupoid) or not s.left.is_concrete:
        raise BoundaryMismatchError("uncurry needs a span into b × c")
    a = s.left.base
    ab = product(a, b)
    new_left = pair_functors(s.leg_l, compose_functors(bc.pi1, s.leg_r), ab)
    new_right = compose_functors(bc.pi2, s.leg_r)
    return Span(Endpoint.gpd(ab.groupoid), Endpoint.gpd(c), s.apex, new_left, new_right)


def compact_structure(a: FinGroupoid) -> tuple[Span, Span]:
    """``unit: 𝟙 ⇸ a × a`` and ``counit: a × a ⇸ 𝟙``, both with apex a."""
    bang_a = terminal_functor(a)
    delta = diagonal(a)
    unit_span = Span(Endpoint.gpd(unit()), Endpoint.gpd(delta.codomain), a, bang_a, delta)
    return unit_span, dualize(unit_span)


def snake_composite(a: FinGroupoid, side: Literal["left", "right"] = "left") -> Span:
    """The zig-zag composite through ``a × a``, to be compared with ``span_id(a)``."""
    eta, eps = compact_structure(a)
    ident = span_id(a)
    if side == "left":
        return compose_all(
            l_embed(left_unitor(a)),
            tensor(eps, ident),
            l_embed(associator(a, a, a)),
            tensor(ident, eta),
            l_embed(inverse_right_unitor(a)),
        )
    return compose_all(
        l_embed(right_unitor(a)),
        tensor(ident, eps),
        l_embed(inverse_associator(a, a, a)),
        tensor(eta, ident),
        l_embed(inverse_left_unitor(a)),
    )


# =============================================================================
# LIFTS OF BASE FUNCTORS
# =============================================================================


def span_product_with(s: Span, g: FinGroupoid) -> Span:
    """``Span(− × G)(s)``."""
    return tensor(s, span_id(g))


def span_product_with_left(s: Span, g: FinGroupoid) -> Span:
    """``Span(G × −)(s)``."""
    return tensor(span_id(g), s)


def span_coproduct_with(s: Span, g: FinGroupoid) -> Span:
    """``Span(− ⊎ G)(s)``."""
    s._require_concrete("coproduct lift")
    ident = identity_functor(g)
    left, apex, left_cop = coproduct_functor(s.leg_l, ident)
    right, _, right_cop = coproduct_functor(s.leg_r, ident)
    right = GFunctor(apex.groupoid, right_cop.groupoid, right.obj_map, right.arr_map)
    return Span(
        Endpoint.gpd(left_cop.groupoid), Endpoint.gpd(right_cop.groupoid), apex.groupoid, left, right
    )


def lift_swap_square(s: Span, g: FinGroupoid) -> tuple[Span, Span]:
    """Both sides of the lifted naturality square of ``swap: − × G ⇒ G × −``.

    Returns ``L(swap_b) ∘ Span(−×G)(s)`` and ``Span(G×−)(s) ∘ L(swap_a)``.
    """
    s._require_concrete("naturality lift")
    a, b = s.left.base, s.right.base
    lhs = span_compose(l_embed(symmetry(b, g)), span_product_with(s, g))
    rhs = span_compose(span_product_with_left(s, g), l_embed(symmetry(a, g)))
    return lhs, rhs


# =============================================================================
# EQUIVALENCE OF SPANS
# =============================================================================


@dataclass(frozen=True, eq=False)
class SpanEquivWitness:
    """An apex equivalence ``h`` with iso-filled leg triangles.

    ``tri_l: leg_l2 ∘ h ⇒ leg_l1`` and ``tri_r: leg_r2 ∘ h ⇒ leg_r1``.
    """

    h: GFunctor
    tri_l: NatIso
    tri_r: NatIso
    eq: EquivalenceWitness

    def verify(self, s1: Span, s2: Span) -> bool:
        if self.h.domain != s1.apex or self.h.codomain != s2.apex:
            return False
        if self.tri_l.target != s1.leg_l or self.tri_r.target != s1.leg_r:
            return False
        if self.tri_l.source != compose_functors(s2.leg_l, self.h):
            return False
        if self.tri_r.source != compose_functors(s2.leg_r, self.h):
            return False
        return self.eq.verify() and self.tri_l.is_valid() and self.tri_r.is_valid()

    def summary(self) -> str:
        return f"span equivalence over {self.h.domain.object_count}-object apex"


def _match_object(
    s1: Span, x: int, s2: Span, y: int, budget: SearchBudget
) -> tuple[Any, Any, dict] | None:
    a, b = s1.left.view, s1.right.view
    l1, r1, l2, r2 = s1.leg_l, s1.leg_r, s2.leg_l, s2.leg_r
    for alpha in a.hom(l2.on_object(y), l1.on_object(x)):
        alpha_inv = a.inverse(alpha)
        for beta in b.hom(r2.on_object(y), r1.on_object(x)):
            budget.spend()
            beta_inv = b.inverse(beta)

            def accept(u: int, w: int, alpha=alpha, alpha_inv=alpha_inv, beta=beta, beta_inv=beta_inv) -> bool:
                return l2.on_arrow(w) == a.compose(alpha_inv, a.compose(l1.on_arrow(u), alpha)) and (
                    r2.on_arrow(w) == b.compose(beta_inv, b.compose(r1.on_arrow(u), beta))
                )

            phi = next(group_isomorphisms(s1.apex, x, s2.apex, y, budget, accept), None)
            if phi is not None:
                return alpha, beta, phi
    return None


def span_equiv(s1: Span, s2: Span, budget: SearchBudget | int | None = None) -> SpanEquivWitness | None:
    """Complete search for an equivalence of spans ``s1 ≃ s2``."""
    if s1.left != s2.left or s1.right != s2.right:
        raise BoundaryMismatchError("span_equiv needs equal endpoints")
    if class_signature(s1.apex) != class_signature(s2.apex):
        return None
    spent = budget if isinstance(budget, SearchBudget) else SearchBudget(budget, "span_equiv")
    apex1, apex2 = s1.apex, s2.apex
    rep1, path1 = representative_paths(apex1)
    reps2 = [m[0] for m in iso_classes(apex2)]
    used: set[int] = set()
    matched: dict[int, tuple[int, Any, Any, dict]] = {}
    for members in iso_classes(apex1):
        x = members[0]
        aut_order = len(apex1.hom(x, x))
        for y in reps2:
            if y in used or len(apex2.hom(y, y)) != aut_order:
                continue
            found = _match_object(s1, x, s2, y, spent)
            if found is not None:
                matched[x] = (y, *found)
                used.add(y)
                break
        else:
            logger.debug("span_equiv: apex class of %d has no partner", x)
            return None

    a, b = s1.left.view, s1.right.view
    obj_map, arr_map, comps_l, comps_r = [], [], [], []
    for xp in apex1.objects():
        y, alpha, beta, _ = matched[rep1[xp]]
        obj_map.append(y)
        comps_l.append(a.compose(a.inverse(s1.leg_l.on_arrow(path1[xp])), alpha))
        comps_r.append(b.compose(b.inverse(s1.leg_r.on_arrow(path1[xp])), beta))
    for u in apex1.arrows():
        xs, xt = apex1.source(u), apex1.target(u)
        moved = apex1.compose(path1[xt], apex1.compose(u, apex1.inverse(path1[xs])))
        arr_map.append(matched[rep1[xs]][3][moved])
    h = GFunctor(apex1, apex2, tuple(obj_map), tuple(arr_map))
    witness = SpanEquivWitness(
        h,
        NatIso(compose_functors(s2.leg_l, h), s1.leg_l, tuple(comps_l)),
        NatIso(compose_functors(s2.leg_r, h), s1.leg_r, tuple(comps_r)),
        EquivalenceWitness(h, verify_equivalence(h)),
    )
    if not witness.verify(s1, s2):
        raise InvalidStructureError("constructed span equivalence failed verification")
    return witness


# =============================================================================
# CANONICAL FORM
# =============================================================================


def _object_encoding(s: Span, x: int, paths_a: tuple, paths_b: tuple, budget: SearchBudget) -> tuple:
    apex = s.apex
    a, b = s.left.base, s.right.base
    rep_a, path_a = paths_a
    rep_b, path_b = paths_b
    ax, bx = s.leg_l.on_object(x), s.leg_r.on_object(x)
    a_star, b_star = rep_a[ax], rep_b[bx]

    def moved_a(u: int) -> int:
        return a.compose(path_a[ax], a.compose(s.leg_l.on_arrow(u), a.inverse(path_a[ax])))

    def moved_b(u: int) -> int:
        return b.compose(path_b[bx], b.compose(s.leg_r.on_arrow(u), b.inverse(path_b[bx])))

    e = apex.identity(x)
    best = None
    for gens in minimal_generating_tuples(apex, x, budget):
        elements = generated(apex, gens, e)
        idx = {h: i for i, h in enumerate(elements)}
        table = tuple(tuple(idx[apex.compose(p, q)] for q in elements) for p in elements)
        rho_a = [moved_a(u) for u in elements]
        rho_b = [moved_b(u) for u in elements]
        best_a = min(
            tuple(a.compose(h, a.compose(r, a.inverse(h))) for r in rho_a) for h in a.hom(a_star, a_star)
        )
        best_b = min(
            tuple(b.compose(h, b.compose(r, b.inverse(h))) for r in rho_b) for h in b.hom(b_star, b_star)
        )
        budget.spend(len(a.hom(a_star, a_star)) + len(b.hom(b_star, b_star)))
        candidate = (a_star, b_star, len(elements), table, best_a, best_b)
        if best is None or candidate < best:
            best = candidate
    return best


def canonical_encoding(s: Span, budget: SearchBudget | int | None = None) -> tuple:
    """Sorted per-class encodings; equal for equivalent spans."""
    s._require_concrete("canonical_form")
    spent = budget if isinstance(budget, SearchBudget) else SearchBudget(budget, "canonical_form")
    paths_a = representative_paths(s.left.base)
    paths_b = representative_paths(s.right.base)
    return tuple(
        sorted(_object_encoding(s, m[0], paths_a, paths_b, spent) for m in iso_classes(s.apex))
    )


def canonical_form(s: Span, budget: SearchBudget | int | None = None) -> Span:
    """Deterministic skeletal representative of the equivalence class of ``s``."""
    encodings = canonical_encoding(s, budget)
    objects = list(range(len(encodings)))
    arrows = [((i, k), i, i) for i, enc in enumerate(encodings) for k in range(enc[2])]
    apex = FinGroupoid.build(
        objects,
        arrows,
        compose=lambda g, f: (f[0], encodings[f[0]][3][g[1]][f[1]]),
        identity=lambda i: (i, 0),
    )
    leg_l = GFunctor(
        apex,
        s.left.base,
        tuple(enc[0] for enc in encodings),
        tuple(encodings[i][4][k] for i, k in apex.arrow_labels),
    )
    leg_r = GFunctor(
        apex,
        s.right.base,
        tuple(enc[1] for enc in encodings),
        tuple(encodings[i][5][k] for i, k in apex.arrow_labels),
    )
    return Span(s.left, s.right, apex, leg_l, leg_r)


__all__ = [
    "Endpoint",
    "Span",
    "SpanEquivWitness",
    "associator",
    "canonical_encoding",
    "canonical_form",
    "compact_structure",
    "compose_all",
    "copairing",
    "coproduct_injections",
    "curry",
    "diagonal",
    "dualize",
    "initial_span",
    "inverse_associator",
    "inverse_left_unitor",
    "inverse_right_unitor",
    "l_embed",
    "left_unitor",
    "lift_swap_square",
    "pairing",
    "product_projections",
    "r_embed",
    "right_unitor",
    "snake_composite",
    "span_compose",
    "span_coproduct_with",
    "span_equiv",
    "span_id",
    "span_product_with",
    "span_product_with_left",
    "symmetry",
    "tensor",
    "terminal_functor",
    "terminal_span",
    "uncurry",
]
