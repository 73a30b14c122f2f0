"""Products, coproducts, homotopy pullbacks and homotopy fibers.

Constructed groupoids are labelled:

- product: objects ``(x, y)``, arrows ``(u, v)``
- coproduct: objects ``(0, x)`` / ``(1, y)``, arrows ``(0, u)`` / ``(1, v)``
- hpullback: objects ``(x, y, γ)``, arrows ``(i, u, v)`` out of object ``i``
- hfiber: objects ``(e, γ)``, arrows ``(i, u)`` out of object ``i``
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

from gpdlab.core.groupoid import (
    FinGroupoid,
    GFunctor,
    NatIso,
    compose_functors,
    unit,
)

logger = logging.getLogger(__name__)


# =============================================================================
# PRODUCTS AND COPRODUCTS
# =============================================================================


class Product(NamedTuple):
    groupoid: FinGroupoid
    pi1: GFunctor
    pi2: GFunctor


class Coproduct(NamedTuple):
    groupoid: FinGroupoid
    iota1: GFunctor
    iota2: GFunctor


def product(a: FinGroupoid, b: FinGroupoid) -> Product:
    """Cartesian product with its two projections."""
    g = FinGroupoid.build(
        [(x, y) for x in a.objects() for y in b.objects()],
        [((u, v), (a.source(u), b.source(v)), (a.target(u), b.target(v))) for u in a.arrows() for v in b.arrows()],
        compose=lambda g2, g1: (a.compose(g2[0], g1[0]), b.compose(g2[1], g1[1])),
        identity=lambda xy: (a.identity(xy[0]), b.identity(xy[1])),
    )
    pi1 = GFunctor(g, a, tuple(x for x, _ in g.object_labels), tuple(u for u, _ in g.arrow_labels))
    pi2 = GFunctor(g, b, tuple(y for _, y in g.object_labels), tuple(v for _, v in g.arrow_labels))
    return Product(g, pi1, pi2)


def coproduct(a: FinGroupoid, b: FinGroupoid) -> Coproduct:
    """Disjoint union, left block first, with its two injections."""
    objects = [(0, x) for x in a.objects()] + [(1, y) for y in b.objects()]
    arrows = [((0, u), (0, a.source(u)), (0, a.target(u))) for u in a.arrows()] + [
        ((1, v), (1, b.source(v)), (1, b.target(v))) for v in b.arrows()
    ]
    sides = (a, b)
    g = FinGroupoid.build(
        objects,
        arrows,
        compose=lambda g2, g1: (g1[0], sides[g1[0]].compose(g2[1], g1[1])),
        identity=lambda x: (x[0], sides[x[0]].identity(x[1])),
    )
    iota1 = GFunctor(a, g, tuple(range(a.object_count)), tuple(range(a.arrow_count)))
    shift_o, shift_a = a.object_count, a.arrow_count
    iota2 = GFunctor(
        b,
        g,
        tuple(shift_o + y for y in b.objects()),
        tuple(shift_a + v for v in b.arrows()),
    )
    return Coproduct(g, iota1, iota2)


def pair_functors(f: GFunctor, g: GFunctor, target: Product) -> GFunctor:
    """The functor ``⟨f, g⟩: X → A × B`` into a computed product."""
    prod = target.groupoid
    return GFunctor(
        f.domain,
        prod,
        tuple(prod.object_index((f.on_object(x), g.on_object(x))) for x in f.domain.objects()),
        tuple(prod.arrow_index((f.on_arrow(u), g.on_arrow(u))) for u in f.domain.arrows()),
    )


def functor_product(f: GFunctor, g: GFunctor) -> tuple[GFunctor, Product, Product]:
    """``f × g: A × B → C × D``, returned with both products."""
    src = product(f.domain, g.domain)
    dst = product(f.codomain, g.codomain)
    fa = compose_functors(f, src.pi1)
    gb = compose_functors(g, src.pi2)
    return pair_functors(fa, gb, dst), src, dst


def copair_functors(f: GFunctor, g: GFunctor, source: Coproduct) -> GFunctor:
    """The functor ``[f, g]: A ⊎ B → X`` out of a computed coproduct."""
    return GFunctor(
        source.groupoid,
        f.codomain,
        tuple(f.obj_map) + tuple(g.obj_map),
        tuple(f.arr_map) + tuple(g.arr_map),
    )


def coproduct_functor(f: GFunctor, g: GFunctor) -> tuple[GFunctor, Coproduct, Coproduct]:
    """``f ⊎ g: A ⊎ B → C ⊎ D``, returned with both coproducts."""
    src = coproduct(f.domain, g.domain)
    dst = coproduct(f.codomain, g.codomain)
    left = compose_functors(dst.iota1, f)
    right = compose_functors(dst.iota2, g)
    return copair_functors(left, right, src), src, dst


@dataclass(frozen=True)
class EffectiveProduct:
    """Product of two effective groupoids; objects and arrows are pairs."""

    left: Any
    right: Any

    def hom(self, x: tuple, y: tuple) -> list[tuple]:
        return list(itertools.product(self.left.hom(x[0], y[0]), self.right.hom(x[1], y[1])))

    def arrows_from(self, x: tuple) -> list[tuple]:
        return list(itertools.product(self.left.arrows_from(x[0]), self.right.arrows_from(x[1])))

    def compose(self, g: tuple, f: tuple) -> tuple:
        return (self.left.compose(g[0], f[0]), self.right.compose(g[1], f[1]))

    def identity(self, x: tuple) -> tuple:
        return (self.left.identity(x[0]), self.right.identity(x[1]))

    def inverse(self, f: tuple) -> tuple:
        return (self.left.inverse(f[0]), self.right.inverse(f[1]))

    def source(self, f: tuple) -> tuple:
        return (self.left.source(f[0]), self.right.source(f[1]))

    def target(self, f: tuple) -> tuple:
        return (self.left.target(f[0]), self.right.target(f[1]))


@dataclass(frozen=True)
class EffectiveCoproduct:
    """Disjoint union of two effective groupoids; tags 0 and 1 mark the side."""

    left: Any
    right: Any

    def _side(self, tag: int) -> Any:
        return self.left if tag == 0 else self.right

    def hom(self, x: tuple, y: tuple) -> list[tuple]:
        if x[0] != y[0]:
            return []
        return [(x[0], a) for a in self._side(x[0]).hom(x[1], y[1])]

    def arrows_from(self, x: tuple) -> list[tuple]:
        return [(x[0], a) for a in self._side(x[0]).arrows_from(x[1])]

    def compose(self, g: tuple, f: tuple) -> tuple:
        return (f[0], self._side(f[0]).compose(g[1], f[1]))

    def identity(self, x: tuple) -> tuple:
        return (x[0], self._side(x[0]).identity(x[1]))

    def inverse(self, f: tuple) -> tuple:
        return (f[0], self._side(f[0]).inverse(f[1]))

    def source(self, f: tuple) -> tuple:
        return (f[0], self._side(f[0]).source(f[1]))

    def target(self, f: tuple) -> tuple:
        return (f[0], self._side(f[0]).target(f[1]))


def point(g: Any, obj: Any) -> GFunctor:
    """The functor ``𝟙 → g`` picking ``obj``."""
    return GFunctor(unit(), g, (obj,), (g.identity(obj),))


# =============================================================================
# HOMOTOPY PULLBACKS
# =============================================================================


class HPullback(NamedTuple):
    groupoid: FinGroupoid
    pi1: GFunctor
    pi2: GFunctor
    filler: NatIso


def _connecting_arrows(z: Any, fx: Any, gy: Any) -> Sequence[Any]:
    """Candidate connecting isomorphisms ``γ: fx → gy``."""
    return z.hom(fx, gy)


def hpullback(f: GFunctor, g: GFunctor) -> HPullback:
    """Homotopy pullback of the cospan ``X -f-> Z <-g- Y``.

    Objects are triples ``(x, y, γ: f(x) → g(y))``; an arrow out of
    ``(x, y, γ)`` is any pair ``(u, v)`` and lands on
    ``(x', y', g(v) ∘ γ ∘ f(u)⁻¹)``. The filler ``f∘π1 ⇒ g∘π2`` has
    component ``γ`` at ``(x, y, γ)``.
    """
    x_gpd, y_gpd, z = f.domain, g.domain, f.codomain
    objects = [
        (x, y, gamma)
        for x in x_gpd.objects()
        for y in y_gpd.objects()
        for gamma in _connecting_arrows(z, f.on_object(x), g.on_object(y))
    ]
    index = {obj: i for i, obj in enumerate(objects)}
    arrows = []
    for i, (x, y, gamma) in enumerate(objects):
        for u in x_gpd.arrows_from(x):
            fu_inv = z.inverse(f.on_arrow(u))
            for v in y_gpd.arrows_from(y):
                target = (
                    x_gpd.target(u),
                    y_gpd.target(v),
                    z.compose(g.on_arrow(v), z.compose(gamma, fu_inv)),
                )
                if target in index:
                    arrows.append(((i, u, v), objects[i], target))

    def compose(a2: tuple, a1: tuple) -> tuple:
        return (a1[0], x_gpd.compose(a2[1], a1[1]), y_gpd.compose(a2[2], a1[2]))

    def identity(obj: tuple) -> tuple:
        return (index[obj], x_gpd.identity(obj[0]), y_gpd.identity(obj[1]))

    pb = FinGroupoid.build(objects, arrows, compose, identity)
    pi1 = GFunctor(pb, x_gpd, tuple(o[0] for o in objects), tuple(a[1] for a in pb.arrow_labels))
    pi2 = GFunctor(pb, y_gpd, tuple(o[1] for o in objects), tuple(a[2] for a in pb.arrow_labels))
    filler = NatIso(compose_functors(f, pi1), compose_functors(g, pi2), tuple(o[2] for o in objects))
    logger.debug("hpullback: %d objects, %d arrows", pb.object_count, pb.arrow_count)
    return HPullback(pb, pi1, pi2, filler)


class HFiber(NamedTuple):
    groupoid: FinGroupoid
    inclusion: GFunctor
    base_object: Any


def hfiber(f: GFunctor, b: Any) -> HFiber:
    """Homotopy fiber of ``f: E → B`` at ``b``: objects ``(e, γ: f(e) → b)``."""
    e_gpd, base = f.domain, f.codomain
    objects = [(e, gamma) for e in e_gpd.objects() for gamma in base.hom(f.on_object(e), b)]
    index = {obj: i for i, obj in enumerate(objects)}
    arrows = []
    for i, (e, gamma) in enumerate(objects):
        for u in e_gpd.arrows_from(e):
            target = (e_gpd.target(u), base.compose(gamma, base.inverse(f.on_arrow(u))))
            arrows.append(((i, u), objects[i], target))
    fib = FinGroupoid.build(
        objects,
        arrows,
        compose=lambda a2, a1: (a1[0], e_gpd.compose(a2[1], a1[1])),
        identity=lambda obj: (index[obj], e_gpd.identity(obj[0])),
    )
    inclusion = GFunctor(
        fib, e_gpd, tuple(o[0] for o in objects), tuple(a[1] for a in fib.arrow_labels)
    )
    return HFiber(fib, inclusion, b)


__all__ = [
    "Coproduct",
    "EffectiveCoproduct",
    "EffectiveProduct",
    "HFiber",
    "HPullback",
    "Product",
    "copair_functors",
    "coproduct",
    "coproduct_functor",
    "functor_product",
    "hfiber",
    "hpullback",
    "pair_functors",
    "point",
    "product",
]
