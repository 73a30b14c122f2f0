"""The bag exponential: unit, flattening, Seely maps and their span lifts.

Carrier conventions, fixed so that the monad and Seely equalities hold on
the nose:

- flattening a bag of bags enumerates ``(outer index, inner index)``
  lexicographically
- a disjoint union of bags lists the left block, then the right block

Everything infinite stays pointwise; checks run on bounded materializations
and say so in their reports.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Sequence

from gpdlab.core.bags import (
    Bag,
    BagMorphism,
    BangGroupoid,
    bags_up_to,
    bang_materialize,
    bangbang_materialize,
    effective_subgroupoid,
    iterated_bags,
)
from gpdlab.core.equivalence import verify_equivalence
from gpdlab.core.groupoid import (
    FinGroupoid,
    GFunctor,
    NatIso,
    PointwiseFunctor,
    compose_functors,
    empty,
    functor_by_labels,
    label_inclusion,
    unit,
)
from gpdlab.core.limits import (
    EffectiveCoproduct,
    EffectiveProduct,
    coproduct,
    coproduct_functor,
    hpullback,
    product,
)
from gpdlab.exceptions import InvalidStructureError, UnsupportedEndpointError
from gpdlab.models import EquivalenceEvidence
from gpdlab.span import Endpoint, Span, compose_all, l_embed, r_embed, span_compose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mismatch:
    """Two sides of an equation that should agree but do not."""

    where: str
    left: Any
    right: Any


# =============================================================================
# FUNCTORS ON BAGS
# =============================================================================


def bang_functor(f: Any) -> PointwiseFunctor:
    """``!f``: recolor bags by ``f``, keep carriers and permutations."""
    codomain = BangGroupoid(f.codomain)

    def on_object(bag: Bag) -> Bag:
        return Bag(tuple(f.on_object(c) for c in bag.colors))

    def on_arrow(m: BagMorphism) -> BagMorphism:
        return BagMorphism(
            on_object(m.source),
            on_object(m.target),
            m.sigma,
            tuple(f.on_arrow(c) for c in m.components),
        )

    return PointwiseFunctor(codomain, on_object, on_arrow, name="bang")


def _eta_object(x: Any) -> Bag:
    return Bag((x,))


def eta(a: Any) -> GFunctor | PointwiseFunctor:
    """Singleton bags; tabulated when ``a`` is a FinGroupoid."""
    codomain = BangGroupoid(a)

    def on_arrow(u: Any) -> BagMorphism:
        return BagMorphism(Bag((a.source(u),)), Bag((a.target(u),)), (0,), (u,))

    if isinstance(a, FinGroupoid):
        return GFunctor(
            a,
            codomain,
            tuple(_eta_object(x) for x in a.objects()),
            tuple(on_arrow(u) for u in a.arrows()),
        )
    return PointwiseFunctor(codomain, _eta_object, on_arrow, name="eta")


def _flatten_order(sizes: Sequence[int]) -> list[tuple[int, int]]:
    """Carrier of a flattened bag of bags, as ``(outer, inner)`` positions."""
    return [(i, j) for i, n in enumerate(sizes) for j in range(n)]


def mu(a: Any) -> PointwiseFunctor:
    """``μ: !!a → !a``, flattening bags of bags."""

    def on_object(bb: Bag) -> Bag:
        order = _flatten_order([b.size for b in bb.colors])
        return Bag(tuple(bb.colors[i].colors[j] for i, j in order))

    def on_arrow(m: BagMorphism) -> BagMorphism:
        order = _flatten_order([b.size for b in m.source.colors])
        target_order = _flatten_order([b.size for b in m.target.colors])
        position = {ij: p for p, ij in enumerate(target_order)}
        sigma = tuple(position[(m.sigma[i], m.components[i].sigma[j])] for i, j in order)
        comps = tuple(m.components[i].components[j] for i, j in order)
        return BagMorphism(on_object(m.source), on_object(m.target), sigma, comps)

    return PointwiseFunctor(BangGroupoid(a), on_object, on_arrow, name="mu")


class Injection(NamedTuple):
    on_object: Callable[[Any], Any]
    on_arrow: Callable[[Any], Any]
    codomain: Any


def coproduct_view(a: Any, b: Any) -> tuple[Any, Injection, Injection]:
    """``a ⊎ b`` and its injections; concrete when both sides are FinGroupoids."""
    if isinstance(a, FinGroupoid) and isinstance(b, FinGroupoid):
        cop = coproduct(a, b)
        g = cop.groupoid
        return (
            g,
            Injection(cop.iota1.on_object, cop.iota1.on_arrow, g),
            Injection(cop.iota2.on_object, cop.iota2.on_arrow, g),
        )
    eff = EffectiveCoproduct(a, b)
    return (
        eff,
        Injection(lambda x: (0, x), lambda u: (0, u), eff),
        Injection(lambda y: (1, y), lambda v: (1, v), eff),
    )


def _seely_components(m: BagMorphism, n: BagMorphism, inj1: Injection, inj2: Injection) -> tuple:
    """Components of ``l²(m, n)``: left block then right block."""
    return tuple(inj1.on_arrow(c) for c in m.components) + tuple(inj2.on_arrow(c) for c in n.components)


def seely2(a: Any, b: Any) -> PointwiseFunctor:
    """``l²: !a × !b → !(a ⊎ b)``, ``(E, F) ↦ E ⊎ F``."""
    cop, inj1, inj2 = coproduct_view(a, b)

    def on_object(pair: tuple[Bag, Bag]) -> Bag:
        e, f = pair
        return Bag(tuple(inj1.on_object(c) for c in e.colors) + tuple(inj2.on_object(c) for c in f.colors))

    def on_arrow(pair: tuple[BagMorphism, BagMorphism]) -> BagMorphism:
        m, n = pair
        shift = m.source.size
        sigma = m.sigma + tuple(shift + s for s in n.sigma)
        comps = _seely_components(m, n, inj1, inj2)
        return BagMorphism(
            on_object((m.source, n.source)), on_object((m.target, n.target)), sigma, comps
        )

    return PointwiseFunctor(BangGroupoid(cop), on_object, on_arrow, name="seely2")


def seely0() -> GFunctor:
    """``l⁰: 𝟙 → !∅``, hitting the empty bag."""
    nothing = BangGroupoid(empty())
    e = Bag(())
    return GFunctor(unit(), nothing, (e,), (nothing.identity(e),))


def seely_domain(a: Any, b: Any) -> EffectiveProduct:
    return EffectiveProduct(BangGroupoid(a), BangGroupoid(b))


# =============================================================================
# SPAN LIFTS
# =============================================================================


def _promote(end: Endpoint) -> Endpoint:
    if end.kind == "gpd":
        return Endpoint.bang(end.base)
    if end.kind == "bang":
        return Endpoint.bangbang(end.base)
    raise UnsupportedEndpointError("no endpoint for a third bag level")


def bang_span(s: Span, k: int) -> Span:
    """``Span(!)(s): !a ⇸ !b`` with apex bounded at carrier size k.

    A ``!a`` endpoint becomes ``!!a``; legs are recolored pointwise.
    """
    apex = bang_materialize(s.apex, k)
    return Span(
        _promote(s.left),
        _promote(s.right),
        apex,
        bang_functor(s.leg_l).tabulate(apex),
        bang_functor(s.leg_r).tabulate(apex),
    )


def bounded_identity_span(a: FinGroupoid, k: int) -> Span:
    """Identity on ``!a`` cut down to bags of carrier size ≤ k."""
    apex = bang_materialize(a, k)
    inc = label_inclusion(apex, BangGroupoid(a))
    return Span(Endpoint.bang(a), Endpoint.bang(a), apex, inc, inc)


def counit_span(a: FinGroupoid) -> Span:
    """``ε = R(η): !a ⇸ a``."""
    return r_embed(eta(a))


def delta_span(a: FinGroupoid, k_outer: int, k_inner: int) -> Span:
    """``δ = R(μ): !a ⇸ !!a`` on bags of at most ``k_outer`` bags of size ≤ ``k_inner``."""
    apex = bangbang_materialize(a, k_outer, k_inner)
    return Span(
        Endpoint.bang(a),
        Endpoint.bangbang(a),
        apex,
        mu(a).tabulate(apex),
        label_inclusion(apex, BangGroupoid(BangGroupoid(a))),
    )


def comonad_spans(a: FinGroupoid, k_outer: int = 2, k_inner: int = 2) -> tuple[Span, Span]:
    """``(ε, δ)`` with δ bounded."""
    return counit_span(a), delta_span(a, k_outer, k_inner)


def epsilon_of_bang(a: FinGroupoid, k: int) -> Span:
    """``ε_{!a}: !!a ⇸ !a`` on bags of size ≤ k."""
    apex = bang_materialize(a, k)
    return Span(
        Endpoint.bangbang(a),
        Endpoint.bang(a),
        apex,
        eta(BangGroupoid(a)).tabulate(apex),
        label_inclusion(apex, BangGroupoid(a)),
    )


def bang_of_epsilon(a: FinGroupoid, k: int) -> Span:
    """``!ε: !!a ⇸ !a`` on bags of size ≤ k."""
    apex = bang_materialize(a, k)
    return Span(
        Endpoint.bangbang(a),
        Endpoint.bang(a),
        apex,
        bang_functor(eta(a)).tabulate(apex),
        label_inclusion(apex, BangGroupoid(a)),
    )


def counit_law_spans(a: FinGroupoid, k: int) -> list[tuple[str, Span, Span]]:
    """``ε_{!a} ∘ δ`` and ``!ε ∘ δ``, each paired with the bounded identity."""
    delta = delta_span(a, k, k)
    ident = bounded_identity_span(a, k)
    return [
        ("epsilon-bang-after-delta", span_compose(epsilon_of_bang(a, k), delta), ident),
        ("bang-epsilon-after-delta", span_compose(bang_of_epsilon(a, k), delta), ident),
    ]


def seely_spans(a: FinGroupoid, b: FinGroupoid, k: int) -> tuple[Span, Span]:
    """``m² = R(l²)`` on bags of size ≤ k per side, and ``m⁰ = R(l⁰)``."""
    left = bang_materialize(a, k)
    right = bang_materialize(b, k)
    prod = product(left, right).groupoid
    l2 = seely2(a, b)
    cod = l2.codomain

    def pair(lab: tuple[int, int]) -> tuple:
        return left.object_label(lab[0]), right.object_label(lab[1])

    def arrow_pair(lab: tuple[int, int]) -> tuple:
        return left.arrow_label(lab[0]), right.arrow_label(lab[1])

    leg = GFunctor(
        prod,
        cod,
        tuple(l2.on_object(pair(lab)) for lab in prod.object_labels),
        tuple(l2.on_arrow(arrow_pair(lab)) for lab in prod.arrow_labels),
    )
    ident = GFunctor(prod, prod, tuple(prod.objects()), tuple(prod.arrows()))
    cop = cod.base
    m2 = Span(Endpoint.bang(cop), Endpoint.gpd(prod), prod, leg, ident)
    l0 = seely0()
    m0 = r_embed(l0)
    return m2, m0


def lift_eta_square(s: Span, k: int) -> tuple[Span, Span]:
    """``L(η_b) ∘ s`` and ``Span(!)(s) ∘ L(η_a)``."""
    a, b = s.left.base, s.right.base
    lhs = span_compose(l_embed(eta(b)), s)
    rhs = span_compose(bang_span(s, k), l_embed(eta(a)))
    return lhs, rhs


# =============================================================================
# MONAD LAWS AND NATURALITY (exact, on bounded parts)
# =============================================================================


def _check_pointwise(
    objects: Sequence[Any],
    arrows_of: Callable[[Any], Sequence[Any]],
    lhs: Any,
    rhs: Any,
    where: str,
) -> list[Mismatch]:
    out: list[Mismatch] = []
    for x in objects:
        lx, rx = lhs.on_object(x), rhs.on_object(x)
        if lx != rx:
            out.append(Mismatch(f"{where}: object {x!r}", lx, rx))
            continue
        for m in arrows_of(x):
            lm, rm = lhs.on_arrow(m), rhs.on_arrow(m)
            if lm != rm:
                out.append(Mismatch(f"{where}: arrow {m!r}", lm, rm))
    return out


class _Composite(NamedTuple):
    outer: Any
    inner: Any

    def on_object(self, x: Any) -> Any:
        return self.outer.on_object(self.inner.on_object(x))

    def on_arrow(self, u: Any) -> Any:
        return self.outer.on_arrow(self.inner.on_arrow(u))


class _Identity(NamedTuple):
    def on_object(self, x: Any) -> Any:
        return x

    def on_arrow(self, u: Any) -> Any:
        return u


def _chain(*functors: Any) -> Any:
    """Right-to-left composite of pointwise functors."""
    result = functors[-1]
    for f in reversed(functors[:-1]):
        result = _Composite(f, result)
    return result


def monad_triangle_mismatches(a: FinGroupoid, k: int) -> list[Mismatch]:
    """``μ ∘ η_{!a} = id`` and ``μ ∘ !η = id`` on bags of size ≤ k."""
    bang_a = BangGroupoid(a)
    bags = bags_up_to(list(a.objects()), k)
    flatten = mu(a)
    ident = _Identity()
    return _check_pointwise(
        bags, bang_a.arrows_from, _chain(flatten, eta(bang_a)), ident, "mu∘eta_!a"
    ) + _check_pointwise(bags, bang_a.arrows_from, _chain(flatten, bang_functor(eta(a))), ident, "mu∘!eta")


def monad_square_mismatches(a: FinGroupoid, bounds: Sequence[int]) -> list[Mismatch]:
    """``μ ∘ !μ = μ ∘ μ_{!a}`` on bounded bags of bags of bags."""
    gpd, objects = iterated_bags(a, bounds)
    flatten = mu(a)
    lhs = _chain(flatten, bang_functor(mu(a)))
    rhs = _chain(flatten, mu(BangGroupoid(a)))
    return _check_pointwise(objects, gpd.arrows_from, lhs, rhs, "monad-square")


def eta_naturality_mismatches(f: GFunctor) -> list[Mismatch]:
    """``!f ∘ η_a = η_b ∘ f`` on all of a."""
    a = f.domain
    return _check_pointwise(
        list(a.objects()), a.arrows_from, _chain(bang_functor(f), eta(a)), _chain(eta(f.codomain), f), "eta-natural"
    )


def mu_naturality_mismatches(f: GFunctor, k_outer: int, k_inner: int) -> list[Mismatch]:
    """``!f ∘ μ_a = μ_b ∘ !!f`` on bounded bags of bags."""
    gpd, objects = iterated_bags(f.domain, (k_outer, k_inner))
    lhs = _chain(bang_functor(f), mu(f.domain))
    rhs = _chain(mu(f.codomain), bang_functor(bang_functor(f)))
    return _check_pointwise(objects, gpd.arrows_from, lhs, rhs, "mu-natural")


def functoriality_mismatches(f: GFunctor, g: GFunctor, k: int) -> list[Mismatch]:
    """``!(g∘f) = !g ∘ !f`` on bags of size ≤ k over the domain of f."""
    bang_a = BangGroupoid(f.domain)
    bags = bags_up_to(list(f.domain.objects()), k)
    return _check_pointwise(
        bags,
        bang_a.arrows_from,
        bang_functor(compose_functors(g, f)),
        _chain(bang_functor(g), bang_functor(f)),
        "bang-functor",
    )


# =============================================================================
# CARTESIANNESS (bounded comparison functors)
# =============================================================================


def eta_cartesian_comparison(f: GFunctor, k: int = 1) -> tuple[GFunctor, EquivalenceEvidence]:
    """``a → b ×_{!b} !a`` for the naturality square of η at f."""
    if k < 1:
        raise InvalidStructureError("eta comparison needs bags of size 1")
    a, b = f.domain, f.codomain
    bang_a = bang_materialize(a, k)
    pb = hpullback(eta(b), bang_functor(f).tabulate(bang_a))
    target = pb.groupoid
    bang_b = BangGroupoid(b)

    def obj(x: int) -> tuple:
        y = f.on_object(x)
        return (y, bang_a.object_index(Bag((x,))), bang_b.identity(Bag((y,))))

    def arr(u: int) -> tuple:
        src = target.object_index(obj(a.source(u)))
        image = BagMorphism(Bag((a.source(u),)), Bag((a.target(u),)), (0,), (u,))
        return (src, f.on_arrow(u), bang_a.arrow_index(image))

    comparison = functor_by_labels(a, target, obj, arr)
    return comparison, verify_equivalence(comparison)


def mu_cartesian_comparison(
    f: GFunctor, k_outer: int, k_inner: int
) -> tuple[GFunctor, EquivalenceEvidence]:
    """``!!a → !!b ×_{!b} !a`` for the naturality square of μ at f."""
    a, b = f.domain, f.codomain
    dom = bangbang_materialize(a, k_outer, k_inner)
    bb_b = bangbang_materialize(b, k_outer, k_inner)
    flat_a = bang_materialize(a, k_outer * k_inner)
    bang_f = bang_functor(f)
    pb = hpullback(mu(b).tabulate(bb_b), bang_f.tabulate(flat_a))
    target = pb.groupoid
    bbf = bang_functor(bang_f)
    mu_a = mu(a)
    bang_b = BangGroupoid(b)

    def obj(bb: Bag) -> tuple:
        return (
            bb_b.object_index(bbf.on_object(bb)),
            flat_a.object_index(mu_a.on_object(bb)),
            bang_b.identity(mu(b).on_object(bbf.on_object(bb))),
        )

    def arr(m: BagMorphism) -> tuple:
        src = target.object_index(obj(m.source))
        return (src, bb_b.arrow_index(bbf.on_arrow(m)), flat_a.arrow_index(mu_a.on_arrow(m)))

    comparison = functor_by_labels(dom, target, obj, arr)
    return comparison, verify_equivalence(comparison)


def pullback_comparison(f: GFunctor, g: GFunctor, k: int) -> tuple[GFunctor, EquivalenceEvidence]:
    """``!(X ×_Z Y) → !X ×_{!Z} !Y`` on bags of size ≤ k."""
    pb = hpullback(f, g)
    p = pb.groupoid
    dom = bang_materialize(p, k)
    bx = bang_materialize(f.domain, k)
    by = bang_materialize(g.domain, k)
    target = hpullback(bang_functor(f).tabulate(bx), bang_functor(g).tabulate(by)).groupoid

    def obj(bag: Bag) -> tuple:
        labels = [p.object_label(c) for c in bag.colors]
        xs = Bag(tuple(x for x, _, _ in labels))
        ys = Bag(tuple(y for _, y, _ in labels))
        gamma = BagMorphism(
            Bag(tuple(f.on_object(x) for x in xs.colors)),
            Bag(tuple(g.on_object(y) for y in ys.colors)),
            tuple(range(bag.size)),
            tuple(gm for _, _, gm in labels),
        )
        return (bx.object_index(xs), by.object_index(ys), gamma)

    def arr(m: BagMorphism) -> tuple:
        src = target.object_index(obj(m.source))
        labels = [p.arrow_label(c) for c in m.components]
        sx, sy, _ = obj(m.source)
        tx, ty, _ = obj(m.target)
        mx = BagMorphism(bx.object_label(sx), bx.object_label(tx), m.sigma, tuple(u for _, u, _ in labels))
        my = BagMorphism(by.object_label(sy), by.object_label(ty), m.sigma, tuple(v for _, _, v in labels))
        return (src, bx.arrow_index(mx), by.arrow_index(my))

    comparison = functor_by_labels(dom, target, obj, arr)
    return comparison, verify_equivalence(comparison)


# =============================================================================
# SEELY STRUCTURE
# =============================================================================


def seely2_comparison(a: FinGroupoid, b: FinGroupoid, k: int) -> tuple[GFunctor, EquivalenceEvidence]:
    """l² from bags ≤ (k, k) onto bags over a ⊎ b with at most k colors from each side."""
    left, right = bang_materialize(a, k), bang_materialize(b, k)
    prod = product(left, right).groupoid
    l2 = seely2(a, b)
    cop = l2.codomain.base
    n_left = a.object_count
    targets = [
        bag
        for bag in bags_up_to(list(cop.objects()), 2 * k)
        if sum(c < n_left for c in bag.colors) <= k and sum(c >= n_left for c in bag.colors) <= k
    ]
    target = effective_subgroupoid(l2.codomain, targets)
    comparison = functor_by_labels(
        prod,
        target,
        lambda lab: l2.on_object((left.object_label(lab[0]), right.object_label(lab[1]))),
        lambda lab: l2.on_arrow((left.arrow_label(lab[0]), right.arrow_label(lab[1]))),
    )
    return comparison, verify_equivalence(comparison)


def _pair_generators(gpd: EffectiveProduct, pair: tuple) -> list[tuple]:
    """Arrows out of ``pair`` moving one coordinate at a time."""
    x, y = pair
    return [(m, gpd.right.identity(y)) for m in gpd.left.arrows_from(x)] + [
        (gpd.left.identity(x), n) for n in gpd.right.arrows_from(y)
    ]


def seely2_naturality_mismatches(f: GFunctor, g: GFunctor, k: int) -> list[Mismatch]:
    """``!(f ⊎ g) ∘ l² = l² ∘ (!f × !g)`` on bags of size ≤ k."""
    fg, _, _ = coproduct_functor(f, g)
    dom = seely_domain(f.domain, g.domain)
    pairs = [
        (e, h)
        for e in bags_up_to(list(f.domain.objects()), k)
        for h in bags_up_to(list(g.domain.objects()), k)
    ]
    bf, bg = bang_functor(f), bang_functor(g)
    both = _Pairwise(bf, bg)
    lhs = _chain(bang_functor(fg), seely2(f.domain, g.domain))
    rhs = _chain(seely2(f.codomain, g.codomain), both)
    return _check_pointwise(pairs, lambda p: _pair_generators(dom, p), lhs, rhs, "seely2-natural")


class _Pairwise(NamedTuple):
    left: Any
    right: Any

    def on_object(self, x: tuple) -> tuple:
        return (self.left.on_object(x[0]), self.right.on_object(x[1]))

    def on_arrow(self, u: tuple) -> tuple:
        return (self.left.on_arrow(u[0]), self.right.on_arrow(u[1]))


class _Copair(NamedTuple):
    """``[f, g]`` out of an effective coproduct with tags 0/1."""

    left: Any
    right: Any

    def on_object(self, x: tuple) -> Any:
        return (self.left if x[0] == 0 else self.right).on_object(x[1])

    def on_arrow(self, u: tuple) -> Any:
        return (self.left if u[0] == 0 else self.right).on_arrow(u[1])


def seely_square_paths(a: FinGroupoid, b: FinGroupoid) -> tuple[Any, Any]:
    """Both paths ``!!a × !!b → !(a ⊎ b)`` around the Seely square.

    Top: ``μ ∘ ![!ι1, !ι2] ∘ l²_{!a,!b}``; bottom: ``l²_{a,b} ∘ (μ × μ)``.
    """
    cop, inj1, inj2 = coproduct_view(a, b)
    iota1 = PointwiseFunctor(cop, inj1.on_object, inj1.on_arrow)
    iota2 = PointwiseFunctor(cop, inj2.on_object, inj2.on_arrow)
    copair = _Copair(bang_functor(iota1), bang_functor(iota2))
    copair_f = PointwiseFunctor(BangGroupoid(cop), copair.on_object, copair.on_arrow)
    top = _chain(mu(cop), bang_functor(copair_f), seely2(BangGroupoid(a), BangGroupoid(b)))
    bottom = _chain(seely2(a, b), _Pairwise(mu(a), mu(b)))
    return top, bottom


def seely_square_mismatches(a: FinGroupoid, b: FinGroupoid, k_outer: int, k_inner: int) -> list[Mismatch]:
    top, bottom = seely_square_paths(a, b)
    _, left = iterated_bags(a, (k_outer, k_inner))
    _, right = iterated_bags(b, (k_outer, k_inner))
    dom = EffectiveProduct(BangGroupoid(BangGroupoid(a)), BangGroupoid(BangGroupoid(b)))
    pairs = [(x, y) for x in left for y in right]
    return _check_pointwise(pairs, lambda p: _pair_generators(dom, p), top, bottom, "seely-square")


def _image_step(f: Any, dom: FinGroupoid, codomain_view: Any) -> tuple[GFunctor, FinGroupoid]:
    """Tabulate ``f`` into the full subgroupoid on its image objects."""
    target = effective_subgroupoid(codomain_view, [f.on_object(lab) for lab in dom.object_labels])
    return functor_by_labels(dom, target, f.on_object, f.on_arrow), target


def seely_square_spans(a: FinGroupoid, b: FinGroupoid, k_inner: int) -> tuple[Span, Span]:
    """The R-images of both Seely-square paths, on outer bound 1.

    Corners are the full subgroupoids on the objects each path reaches; the
    shared corner ``!(a ⊎ b)`` holds the images of both paths.
    """
    _, left = iterated_bags(a, (1, k_inner))
    _, right = iterated_bags(b, (1, k_inner))
    bb_a, bb_b = BangGroupoid(BangGroupoid(a)), BangGroupoid(BangGroupoid(b))
    corner = effective_subgroupoid(EffectiveProduct(bb_a, bb_b), [(x, y) for x in left for y in right])

    cop, inj1, inj2 = coproduct_view(a, b)
    iota1 = PointwiseFunctor(cop, inj1.on_object, inj1.on_arrow)
    iota2 = PointwiseFunctor(cop, inj2.on_object, inj2.on_arrow)
    copair = _Copair(bang_functor(iota1), bang_functor(iota2))
    copair_f = PointwiseFunctor(BangGroupoid(cop), copair.on_object, copair.on_arrow)
    l2_bang = seely2(BangGroupoid(a), BangGroupoid(b))
    step1, y1 = _image_step(l2_bang, corner, l2_bang.codomain)
    lifted = bang_functor(copair_f)
    step2, y2 = _image_step(lifted, y1, lifted.codomain)

    flat = _Pairwise(mu(a), mu(b))
    flat_view = EffectiveProduct(BangGroupoid(a), BangGroupoid(b))
    step3, y3 = _image_step(flat, corner, flat_view)
    l2 = seely2(a, b)

    mu_cop = mu(cop)
    finish = [mu_cop.on_object(lab) for lab in y2.object_labels] + [
        l2.on_object(lab) for lab in y3.object_labels
    ]
    shared = effective_subgroupoid(BangGroupoid(cop), finish)
    step_top = functor_by_labels(y2, shared, mu_cop.on_object, mu_cop.on_arrow)
    step_bottom = functor_by_labels(y3, shared, l2.on_object, l2.on_arrow)

    top = compose_all(r_embed(step1), r_embed(step2), r_embed(step_top))
    bottom = compose_all(r_embed(step3), r_embed(step_bottom))
    return top, bottom


class _Lambda(NamedTuple):
    on_object: Callable[[Any], Any]
    on_arrow: Callable[[Any], Any]


def _tuple_domain(gpds: Sequence[FinGroupoid], k: int) -> list[tuple]:
    return list(itertools.product(*(bags_up_to(list(g.objects()), k) for g in gpds)))


def _tuple_generators(gpds: Sequence[Any], objects: tuple) -> list[tuple]:
    """Arrows out of a tuple of bags moving one coordinate at a time."""
    out = []
    for pos, g in enumerate(gpds):
        for m in g.arrows_from(objects[pos]):
            out.append(tuple(m if i == pos else gpds[i].identity(objects[i]) for i in range(len(objects))))
    return out


def _associator(a: FinGroupoid, b: FinGroupoid, c: FinGroupoid) -> GFunctor:
    """``a ⊎ (b ⊎ c) → (a ⊎ b) ⊎ c``; identity on indices, as both list a, b, c in order."""
    left = coproduct(coproduct(a, b).groupoid, c).groupoid
    right = coproduct(a, coproduct(b, c).groupoid).groupoid
    return GFunctor(right, left, tuple(right.objects()), tuple(right.arrows()))


def monoidal_mismatches(
    which: int, a: FinGroupoid, b: FinGroupoid, c: FinGroupoid, k: int
) -> list[Mismatch]:
    """Coherence diagrams (1)-(3) for ``(!, l², l⁰)`` as exact bag equalities.

    (1) associativity over ``a, b, c``; (2) left unit over ``a``; (3) right
    unit over ``a``. Diagram (4) needs a witness, see ``symmetry_witness``.
    """
    if which == 1:
        ab, bc = coproduct(a, b).groupoid, coproduct(b, c).groupoid
        l2_ab, l2_ab_c = seely2(a, b), seely2(ab, c)
        l2_bc, l2_a_bc = seely2(b, c), seely2(a, bc)
        assoc = bang_functor(_associator(a, b, c))
        lhs = _Lambda(
            lambda t: l2_ab_c.on_object((l2_ab.on_object((t[0], t[1])), t[2])),
            lambda t: l2_ab_c.on_arrow((l2_ab.on_arrow((t[0], t[1])), t[2])),
        )
        rhs = _Lambda(
            lambda t: assoc.on_object(l2_a_bc.on_object((t[0], l2_bc.on_object((t[1], t[2]))))),
            lambda t: assoc.on_arrow(l2_a_bc.on_arrow((t[0], l2_bc.on_arrow((t[1], t[2]))))),
        )
        gpds = [BangGroupoid(a), BangGroupoid(b), BangGroupoid(c)]
        return _check_pointwise(
            _tuple_domain([a, b, c], k),
            lambda t: _tuple_generators(gpds, t),
            lhs,
            rhs,
            "monoidal-associativity",
        )

    if which not in (2, 3):
        raise ValueError(f"no exact monoidal diagram {which}")
    nothing = empty()
    l0 = seely0()
    point_obj, point_arr = l0.on_object(0), l0.on_arrow(0)
    bang_a = BangGroupoid(a)
    bags = bags_up_to(list(a.objects()), k)
    if which == 2:
        l2 = seely2(nothing, a)
        include = bang_functor(coproduct(nothing, a).iota2)
        lhs = _Lambda(
            lambda x: l2.on_object((point_obj, x)), lambda m: l2.on_arrow((point_arr, m))
        )
        where = "monoidal-left-unit"
    else:
        l2 = seely2(a, nothing)
        include = bang_functor(coproduct(a, nothing).iota1)
        lhs = _Lambda(
            lambda x: l2.on_object((x, point_obj)), lambda m: l2.on_arrow((m, point_arr))
        )
        where = "monoidal-right-unit"
    return _check_pointwise(bags, bang_a.arrows_from, lhs, include, where)


def symmetry_witness(a: FinGroupoid, b: FinGroupoid, k: int) -> NatIso:
    """Carrier-swap natural iso ``!(swap) ∘ l²_{a,b} ⇒ l²_{b,a} ∘ swap``.

    Tabulated over the product of bags of size ≤ k; its validity is
    coherence diagram (4).
    """
    left, right = bang_materialize(a, k), bang_materialize(b, k)
    prod = product(left, right).groupoid
    l2_ab, l2_ba = seely2(a, b), seely2(b, a)
    ab, ba = coproduct(a, b).groupoid, coproduct(b, a).groupoid
    n_a, n_b = a.object_count, b.object_count
    m_a, m_b = a.arrow_count, b.arrow_count
    swap = GFunctor(
        ab,
        ba,
        tuple(n_b + z if z < n_a else z - n_a for z in ab.objects()),
        tuple(m_b + w if w < m_a else w - m_a for w in ab.arrows()),
    )
    bang_swap = bang_functor(swap)

    def pair(lab: tuple) -> tuple:
        return left.object_label(lab[0]), right.object_label(lab[1])

    def arrow_pair(lab: tuple) -> tuple:
        return left.arrow_label(lab[0]), right.arrow_label(lab[1])

    cod = BangGroupoid(ba)
    source = GFunctor(
        prod,
        cod,
        tuple(bang_swap.on_object(l2_ab.on_object(pair(lab))) for lab in prod.object_labels),
        tuple(bang_swap.on_arrow(l2_ab.on_arrow(arrow_pair(lab))) for lab in prod.arrow_labels),
    )
    target = GFunctor(
        prod,
        cod,
        tuple(l2_ba.on_object(pair(lab)[::-1]) for lab in prod.object_labels),
        tuple(l2_ba.on_arrow(arrow_pair(lab)[::-1]) for lab in prod.arrow_labels),
    )
    components = []
    for lab in prod.object_labels:
        e, f = pair(lab)
        n, m = e.size, f.size
        sigma = tuple(m + i for i in range(n)) + tuple(range(m))
        src_bag = source.on_object(prod.object_index(lab))
        tgt_bag = target.on_object(prod.object_index(lab))
        comps = tuple(ba.identity(c) for c in src_bag.colors)
        components.append(BagMorphism(src_bag, tgt_bag, sigma, comps))
    return NatIso(source, target, tuple(components))


__all__ = [
    "Mismatch",
    "bang_functor",
    "bang_of_epsilon",
    "bang_span",
    "bounded_identity_span",
    "comonad_spans",
    "counit_span",
    "counit_law_spans",
    "coproduct_view",
    "delta_span",
    "epsilon_of_bang",
    "eta",
    "eta_cartesian_comparison",
    "eta_naturality_mismatches",
    "functoriality_mismatches",
    "lift_eta_square",
    "monad_square_mismatches",
    "monad_triangle_mismatches",
    "monoidal_mismatches",
    "mu",
    "mu_cartesian_comparison",
    "mu_naturality_mismatches",
    "pullback_comparison",
    "seely0",
    "seely2",
    "seely2_comparison",
    "seely2_naturality_mismatches",
    "seely_domain",
    "seely_spans",
    "seely_square_mismatches",
    "seely_square_paths",
    "seely_square_spans",
    "symmetry_witness",
]
