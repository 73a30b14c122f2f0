"""Strict families of groupoids, total spaces and section groupoids.

A family over a FinGroupoid ``base`` gives a fiber per base object and a
transport functor per base arrow. Transport must be strictly functorial;
every family built here (fibers of a functor, reindexings, constant
families) is, because homotopy fibers transport by post-composition.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

from gpdlab.core.groupoid import FinGroupoid, GFunctor, discrete, identity_functor
from gpdlab.core.limits import hfiber
from gpdlab.exceptions import FunctorialityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FamilyOfGroupoids:
    """A strict functor from ``base`` into finite groupoids."""

    base: FinGroupoid
    fibers: tuple[FinGroupoid, ...]
    transports: tuple[GFunctor, ...]

    def __post_init__(self) -> None:
        if len(self.fibers) != self.base.object_count:
            raise FunctorialityError("family needs one fiber per base object")
        if len(self.transports) != self.base.arrow_count:
            raise FunctorialityError("family needs one transport per base arrow")
        self._check_strict()

    def fiber(self, g: int) -> FinGroupoid:
        return self.fibers[g]

    def transport(self, u: int) -> GFunctor:
        return self.transports[u]

    def _check_strict(self) -> None:
        base = self.base
        for u in base.arrows():
            t = self.transports[u]
            if t.domain is not self.fibers[base.source(u)] and t.domain != self.fibers[base.source(u)]:
                raise FunctorialityError(f"transport along arrow {u} has the wrong domain")
        for g in base.objects():
            t = self.transports[base.identity(g)]
            fib = self.fibers[g]
            if t.obj_map != tuple(fib.objects()) or t.arr_map != tuple(fib.arrows()):
                raise FunctorialityError(f"transport along identity of {g} is not the identity")
        for u in base.arrows():
            tu = self.transports[u]
            for v in base.arrows_from(base.target(u)):
                tv = self.transports[v]
                tvu = self.transports[base.compose(v, u)]
                if tvu.obj_map != tuple(tv.obj_map[x] for x in tu.obj_map) or tvu.arr_map != tuple(
                    tv.arr_map[a] for a in tu.arr_map
                ):
                    raise FunctorialityError(
                        f"transport along {v}∘{u} differs from the composite of transports"
                    )


# =============================================================================
# BUILDING FAMILIES
# =============================================================================


def constant_family(base: FinGroupoid, fiber: FinGroupoid) -> FamilyOfGroupoids:
    ident = identity_functor(fiber)
    return FamilyOfGroupoids(base, (fiber,) * base.object_count, (ident,) * base.arrow_count)


def discrete_family(
    base: FinGroupoid, sizes: Sequence[int], actions: Sequence[Sequence[int]]
) -> FamilyOfGroupoids:
    """Family of discrete fibers; ``actions[u]`` permutes the points over ``source(u)``."""
    fibers = tuple(discrete(n) for n in sizes)
    transports = tuple(
        GFunctor(fibers[base.source(u)], fibers[base.target(u)], tuple(actions[u]), tuple(actions[u]))
        for u in base.arrows()
    )
    return FamilyOfGroupoids(base, fibers, transports)


def pullback_family(fam: FamilyOfGroupoids, f: GFunctor) -> FamilyOfGroupoids:
    """Reindex ``fam`` along ``f: X → base``."""
    x = f.domain
    return FamilyOfGroupoids(
        x,
        tuple(fam.fiber(f.on_object(o)) for o in x.objects()),
        tuple(fam.transport(f.on_arrow(u)) for u in x.arrows()),
    )


def fiber_family(t: GFunctor, u: GFunctor) -> FamilyOfGroupoids:
    """The family ``x ↦ hfiber(t, u(x))`` over ``u.domain``.

    Transport along ``a: x → x'`` post-composes connecting arrows with
    ``u(a)``: ``(b, γ) ↦ (b, u(a) ∘ γ)``.
    """
    j = t.codomain
    over = u.domain
    fibers = tuple(hfiber(t, u.on_object(x)).groupoid for x in over.objects())
    transports = []
    for a in over.arrows():
        src, dst = fibers[over.source(a)], fibers[over.target(a)]
        ua = u.on_arrow(a)
        obj_map = tuple(dst.object_index((b, j.compose(ua, gamma))) for b, gamma in src.object_labels)
        arr_map = tuple(dst.arrow_index((obj_map[i], w)) for i, w in src.arrow_labels)
        transports.append(GFunctor(src, dst, obj_map, arr_map))
    return FamilyOfGroupoids(over, fibers, tuple(transports))


def hfiber_family(f: GFunctor) -> FamilyOfGroupoids:
    """The fibers of ``f: E → B`` as a family over ``B``."""
    return fiber_family(f, identity_functor(f.codomain))


# =============================================================================
# TOTAL SPACE
# =============================================================================


class Grothendieck(NamedTuple):
    groupoid: FinGroupoid
    projection: GFunctor


def grothendieck(fam: FamilyOfGroupoids) -> Grothendieck:
    """Total space: objects ``(g, x)``, arrows ``(u, m: T_u(x) → x')``."""
    base = fam.base
    objects = [(g, x) for g in base.objects() for x in fam.fiber(g).objects()]
    arrows = []
    for g, x in objects:
        for u in base.arrows_from(g):
            g2 = base.target(u)
            fib = fam.fiber(g2)
            for m in fib.arrows_from(fam.transport(u).on_object(x)):
                arrows.append(((u, m), (g, x), (g2, fib.target(m))))

    def compose(a2: tuple, a1: tuple) -> tuple:
        (u2, m2), (u1, m1) = a2, a1
        fib = fam.fiber(base.target(u2))
        return (base.compose(u2, u1), fib.compose(m2, fam.transport(u2).on_arrow(m1)))

    total = FinGroupoid.build(
        objects,
        arrows,
        compose,
        identity=lambda gx: (base.identity(gx[0]), fam.fiber(gx[0]).identity(gx[1])),
    )
    projection = GFunctor(
        total, base, tuple(g for g, _ in objects), tuple(u for u, _ in total.arrow_labels)
    )
    return Grothendieck(total, projection)


def hfiber_reassembly(f: GFunctor) -> tuple[Grothendieck, GFunctor]:
    """Total space of the fibers of ``f`` and its comparison functor to ``f.domain``.

    The comparison sends ``(b, (e, γ))`` to ``e``; it is an equivalence
    commuting with the projections up to the connecting arrows γ.
    """
    fam = hfiber_family(f)
    total = grothendieck(fam)
    g = total.groupoid
    obj_map = []
    for b, x in g.object_labels:
        e, _gamma = fam.fiber(b).object_label(x)
        obj_map.append(e)
    arr_map = []
    for u, m in g.arrow_labels:
        _i, w = fam.fiber(f.codomain.target(u)).arrow_label(m)
        arr_map.append(w)
    return total, GFunctor(g, f.domain, tuple(obj_map), tuple(arr_map))


# =============================================================================
# SECTIONS
# =============================================================================


def _components(base: FinGroupoid) -> list[tuple[int, dict[int, int]]]:
    """Connected components as ``(root, {object: path arrow root → object})``."""
    seen: set[int] = set()
    comps = []
    for r in base.objects():
        if r in seen:
            continue
        paths = {r: base.identity(r)}
        seen.add(r)
        frontier = [r]
        while frontier:
            nxt = []
            for g in frontier:
                for u in base.arrows_from(g):
                    h = base.target(u)
                    if h not in paths:
                        paths[h] = base.compose(u, paths[g])
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        comps.append((r, paths))
    return comps


def _aut_cocycles(fam: FamilyOfGroupoids, r: int, xr: int) -> list[dict[int, int]]:
    """Assignments ``h ↦ α_h: T_h(x_r) → x_r`` on Aut(r) satisfying the cocycle rule."""
    base = fam.base
    fib = fam.fiber(r)
    e = base.identity(r)
    auts = [h for h in base.hom(r, r) if h != e]
    results: list[dict[int, int]] = []
    assigned: dict[int, int] = {e: fib.identity(xr)}

    def consistent(h: int) -> bool:
        for a in assigned:
            for b in assigned:
                ab = base.compose(a, b)
                if ab not in assigned or h not in (a, b, ab):
                    continue
                expected = fib.compose(assigned[a], fam.transport(a).on_arrow(assigned[b]))
                if assigned[ab] != expected:
                    return False
        return True

    def search(pos: int) -> None:
        if pos == len(auts):
            results.append(dict(assigned))
            return
        h = auts[pos]
        for cand in fib.hom(fam.transport(h).on_object(xr), xr):
            assigned[h] = cand
            if consistent(h):
                search(pos + 1)
            del assigned[h]

    search(0)
    return results


def _component_sections(fam: FamilyOfGroupoids, root: int, paths: dict[int, int]) -> list[tuple[dict, dict]]:
    """Every section restricted to one component, as ``(xs, alphas)`` dicts."""
    base = fam.base
    members = sorted(paths)
    others = [g for g in members if g != root]
    arrows = [u for g in members for u in base.arrows_from(g)]
    out = []
    for xr in fam.fiber(root).objects():
        for cocycle in _aut_cocycles(fam, root, xr):
            choices = [fam.fiber(g).arrows_from(fam.transport(paths[g]).on_object(xr)) for g in others]
            for picks in itertools.product(*choices):
                xs = {root: xr}
                alpha_p = {root: fam.fiber(root).identity(xr)}
                for g, a in zip(others, picks):
                    xs[g] = fam.fiber(g).target(a)
                    alpha_p[g] = a
                alphas = {}
                for w in arrows:
                    g, g2 = base.source(w), base.target(w)
                    fib2 = fam.fiber(g2)
                    h = base.compose(base.inverse(paths[g2]), base.compose(w, paths[g]))
                    tw = fam.transport(w)
                    alphas[w] = fib2.compose(
                        fib2.compose(alpha_p[g2], fam.transport(paths[g2]).on_arrow(cocycle[h])),
                        fib2.inverse(tw.on_arrow(alpha_p[g])),
                    )
                out.append((xs, alphas))
    return out


def hsections(fam: FamilyOfGroupoids) -> FinGroupoid:
    """Groupoid of sections of a strict family.

    Objects are labelled ``(xs, alphas)``: a fiber object per base object and
    a connecting arrow ``α_u: T_u(x_g) → x_g'`` per base arrow, with
    ``α_id = id`` and ``α_{v∘u} = α_v ∘ T_v(α_u)``. An arrow out of section
    ``i`` is labelled ``(i, ms)`` with ``ms[g]`` any fiber arrow out of
    ``x_g``; its target has ``α'_u = m_g' ∘ α_u ∘ T_u(m_g)⁻¹``.
    """
    base = fam.base
    per_component = [_component_sections(fam, r, paths) for r, paths in _components(base)]
    objects = []
    for combo in itertools.product(*per_component):
        xs: dict[int, int] = {}
        alphas: dict[int, int] = {}
        for cx, ca in combo:
            xs.update(cx)
            alphas.update(ca)
        objects.append(
            (tuple(xs[g] for g in base.objects()), tuple(alphas[u] for u in base.arrows()))
        )
    index = {obj: i for i, obj in enumerate(objects)}

    arrows = []
    for i, (xs, alphas) in enumerate(objects):
        choices = [fam.fiber(g).arrows_from(xs[g]) for g in base.objects()]
        for ms in itertools.product(*choices):
            new_xs = tuple(fam.fiber(g).target(ms[g]) for g in base.objects())
            new_alphas = []
            for u in base.arrows():
                g, g2 = base.source(u), base.target(u)
                fib2 = fam.fiber(g2)
                tm_inv = fib2.inverse(fam.transport(u).on_arrow(ms[g]))
                new_alphas.append(fib2.compose(ms[g2], fib2.compose(alphas[u], tm_inv)))
            target = (new_xs, tuple(new_alphas))
            if target not in index:
                raise FunctorialityError("section transport left the enumerated sections")
            arrows.append(((i, tuple(ms)), objects[i], target))

    def compose(a2: tuple, a1: tuple) -> tuple:
        return (
            a1[0],
            tuple(fam.fiber(g).compose(m2, m1) for g, (m2, m1) in enumerate(zip(a2[1], a1[1]))),
        )

    def identity(obj: tuple) -> tuple:
        return (index[obj], tuple(fam.fiber(g).identity(x) for g, x in enumerate(obj[0])))

    sections = FinGroupoid.build(objects, arrows, compose, identity)
    logger.debug("hsections: %d sections over %d base objects", sections.object_count, base.object_count)
    return sections


def fiber_inclusion(fib: FinGroupoid, total: FinGroupoid) -> GFunctor:
    """Forget the connecting arrows of an hfiber-labelled groupoid."""
    return GFunctor(
        fib,
        total,
        tuple(e for e, _ in fib.object_labels),
        tuple(w for _, w in fib.arrow_labels),
    )


def _reindex_sections(src: FinGroupoid, dst: FinGroupoid, phi: GFunctor) -> GFunctor:
    """Move sections over ``phi.domain`` to sections over ``phi.codomain``.

    ``phi`` must be bijective on objects and arrows.
    """
    index = phi.domain
    back_obj = {phi.on_object(x): x for x in index.objects()}
    back_arr = {phi.on_arrow(a): a for a in index.arrows()}
    obj_map = []
    for xs, alphas in src.object_labels:
        moved = (
            tuple(xs[back_obj[y]] for y in range(index.object_count)),
            tuple(alphas[back_arr[b]] for b in range(index.arrow_count)),
        )
        obj_map.append(dst.object_index(moved))
    arr_map = tuple(
        dst.arrow_index((obj_map[i], tuple(ms[back_obj[y]] for y in range(index.object_count))))
        for i, ms in src.arrow_labels
    )
    return GFunctor(src, dst, tuple(obj_map), arr_map)


def pi_family(index: FamilyOfGroupoids, payloads: Sequence[FamilyOfGroupoids]) -> FamilyOfGroupoids:
    """The family ``c ↦ hsections(payloads[c])`` over ``index.base``.

    ``payloads[c]`` is a family over ``index.fiber(c)``. Transports of
    ``index`` must be isomorphisms along which the payloads agree on the
    nose; sections then move by reindexing.
    """
    base = index.base
    fibers = tuple(hsections(fam) for fam in payloads)
    transports = tuple(
        _reindex_sections(fibers[base.source(z)], fibers[base.target(z)], index.transport(z))
        for z in base.arrows()
    )
    return FamilyOfGroupoids(base, fibers, transports)


__all__ = [
    "FamilyOfGroupoids",
    "Grothendieck",
    "constant_family",
    "discrete_family",
    "fiber_family",
    "fiber_inclusion",
    "grothendieck",
    "hfiber_family",
    "hfiber_reassembly",
    "hsections",
    "pi_family",
    "pullback_family",
]
