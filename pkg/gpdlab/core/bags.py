"""Bags over a groupoid and the bag groupoid !A.

A bag over A is a finite carrier ``0..n-1`` colored by objects of A. A bag
morphism is a carrier bijection ``sigma`` with one A-arrow per carrier
element, ``components[i]: colors[i] → colors'[sigma[i]]``. Bags over bags
give !!A with no extra machinery: BangGroupoid only needs an effective base.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Sequence

from gpdlab.core.groupoid import FinGroupoid
from gpdlab.exceptions import InvalidStructureError


@dataclass(frozen=True)
class Bag:
    colors: tuple

    @property
    def size(self) -> int:
        return len(self.colors)

    def __repr__(self) -> str:
        return f"Bag{list(self.colors)}"


@dataclass(frozen=True)
class BagMorphism:
    source: Bag
    target: Bag
    sigma: tuple[int, ...]
    components: tuple

    def __repr__(self) -> str:
        return f"BagMorphism(sigma={list(self.sigma)}, components={list(self.components)})"


def invert_permutation(sigma: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, j in enumerate(sigma):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True)
class BangGroupoid:
    """The groupoid !base of bags; objects are never enumerated globally."""

    base: Any

    def _assignments(self, x: Bag, y: Bag) -> Iterator[tuple[tuple[int, ...], list[Sequence[Any]]]]:
        n = x.size
        options = [[j for j in range(n) if self.base.hom(x.colors[i], y.colors[j])] for i in range(n)]
        used = [False] * n
        sigma = [0] * n

        def search(i: int) -> Iterator[tuple[int, ...]]:
            if i == n:
                yield tuple(sigma)
                return
            for j in options[i]:
                if not used[j]:
                    used[j] = True
                    sigma[i] = j
                    yield from search(i + 1)
                    used[j] = False

        for perm in search(0):
            yield perm, [self.base.hom(x.colors[i], y.colors[perm[i]]) for i in range(n)]

    def hom(self, x: Bag, y: Bag) -> list[BagMorphism]:
        if x.size != y.size:
            return []
        return [
            BagMorphism(x, y, sigma, comps)
            for sigma, choices in self._assignments(x, y)
            for comps in itertools.product(*choices)
        ]

    def arrows_from(self, x: Bag) -> list[BagMorphism]:
        n = x.size
        out = []
        for comps in itertools.product(*(self.base.arrows_from(c) for c in x.colors)):
            moved = [self.base.target(c) for c in comps]
            for sigma in itertools.permutations(range(n)):
                colors = [None] * n
                for i, j in enumerate(sigma):
                    colors[j] = moved[i]
                out.append(BagMorphism(x, Bag(tuple(colors)), tuple(sigma), tuple(comps)))
        return out

    def compose(self, g: BagMorphism, f: BagMorphism) -> BagMorphism:
        if f.target != g.source:
            raise InvalidStructureError("bag morphisms are not composable")
        sigma = tuple(g.sigma[j] for j in f.sigma)
        comps = tuple(
            self.base.compose(g.components[f.sigma[i]], f.components[i]) for i in range(f.source.size)
        )
        return BagMorphism(f.source, g.target, sigma, comps)

    def identity(self, x: Bag) -> BagMorphism:
        return BagMorphism(
            x, x, tuple(range(x.size)), tuple(self.base.identity(c) for c in x.colors)
        )

    def inverse(self, f: BagMorphism) -> BagMorphism:
        inv = invert_permutation(f.sigma)
        comps = tuple(self.base.inverse(f.components[inv[j]]) for j in range(f.target.size))
        return BagMorphism(f.target, f.source, inv, comps)

    def source(self, f: BagMorphism) -> Bag:
        return f.source

    def target(self, f: BagMorphism) -> Bag:
        return f.target

    def depth(self) -> int:
        return 1 + (self.base.depth() if isinstance(self.base, BangGroupoid) else 0)


def bags_up_to(colors: Sequence[Any], bound: int) -> list[Bag]:
    """Every bag with carrier size ≤ ``bound`` over the given color list."""
    return [Bag(tuple(c)) for n in range(bound + 1) for c in itertools.product(colors, repeat=n)]


def effective_subgroupoid(g: Any, objects: Iterable[Any]) -> FinGroupoid:
    """Full subgroupoid of an effective groupoid on the given objects.

    Labels are the effective objects and arrows themselves.
    """
    chosen = list(dict.fromkeys(objects))
    arrows = [
        (a, x, y) for x in chosen for y in chosen for a in g.hom(x, y)
    ]
    return FinGroupoid.build(chosen, arrows, compose=g.compose, identity=g.identity)


def bang_materialize(a: FinGroupoid, k: int) -> FinGroupoid:
    """Full subgroupoid of !a on bags with carrier size ≤ k."""
    if k < 0:
        raise InvalidStructureError("bag bound must be non-negative")
    return effective_subgroupoid(BangGroupoid(a), bags_up_to(list(a.objects()), k))


def bangbang_materialize(a: FinGroupoid, k_outer: int, k_inner: int) -> FinGroupoid:
    """Bags of at most ``k_outer`` bags, each of carrier size ≤ ``k_inner``."""
    inner = bags_up_to(list(a.objects()), k_inner)
    return effective_subgroupoid(BangGroupoid(BangGroupoid(a)), bags_up_to(inner, k_outer))


def iterated_bags(a: FinGroupoid, bounds: Sequence[int]) -> tuple[Any, list[Any]]:
    """Effective groupoid ``!^d a`` (d = len(bounds)) and its bounded objects.

    ``bounds`` lists carrier bounds from the outermost level inwards.
    """
    gpd: Any = a
    objects: list[Any] = list(a.objects())
    for bound in reversed(bounds):
        gpd = BangGroupoid(gpd)
        objects = bags_up_to(objects, bound)
    return gpd, objects


__all__ = [
    "Bag",
    "BagMorphism",
    "BangGroupoid",
    "bang_materialize",
    "bangbang_materialize",
    "bags_up_to",
    "effective_subgroupoid",
    "invert_permutation",
    "iterated_bags",
]
