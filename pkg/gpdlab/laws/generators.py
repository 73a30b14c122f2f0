"""Seeded generators for small law instances.

Every generated groupoid is a disjoint union of blocks. A block ``(n, m)``
is the connected groupoid on ``n`` objects whose vertex groups are Z/m;
blocks ``(1, 1)`` are discrete padding. Functors between block groupoids
send a block into a single target block through a homomorphism
``c ↦ g·c`` of cyclic groups, so validity holds by construction.

Streams are driven by ``numpy.random.default_rng`` seeded with
``SeedSequence([seed, stream, index])``: the same config always yields the
same instances, and law streams never share state.
"""

from __future__ import annotations

from typing import Any, Iterator, Literal, Sequence

import numpy as np

from gpdlab.core.families import FamilyOfGroupoids, constant_family, discrete_family
from gpdlab.core.groupoid import FinGroupoid, GFunctor, functor_by_labels
from gpdlab.models import SuiteConfig
from gpdlab.poly import Polynomial
from gpdlab.span import Endpoint, Span

BlockSpec = tuple[int, int]
GroupoidSpec = tuple[BlockSpec, ...]
InstanceKind = Literal["groupoid", "functor", "span", "polynomial", "family"]

MAX_ORDER = 4


def instance_rng(seed: int, stream: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, stream, index]))


def _pick(rng: np.random.Generator, options: Sequence[Any]) -> Any:
    return options[int(rng.integers(len(options)))]


# =============================================================================
# GROUPOIDS
# =============================================================================


def block_groupoid(spec: GroupoidSpec) -> FinGroupoid:
    """Objects ``(block, i)``; arrow ``(block, i, j, c)`` goes ``i → j`` with phase c."""
    objects = [(b, i) for b, (n, _) in enumerate(spec) for i in range(n)]
    arrows = [
        ((b, i, j, c), (b, i), (b, j))
        for b, (n, m) in enumerate(spec)
        for i in range(n)
        for j in range(n)
        for c in range(m)
    ]
    return FinGroupoid.build(
        objects,
        arrows,
        compose=lambda g, f: (f[0], f[1], g[2], (f[3] + g[3]) % spec[f[0]][1]),
        identity=lambda x: (x[0], x[1], x[1], 0),
    )


def spec_arrows(spec: GroupoidSpec) -> int:
    return sum(n * n * m for n, m in spec)


def random_spec(
    rng: np.random.Generator,
    max_objects: int,
    max_arrows: int,
    *,
    min_objects: int = 1,
    min_order: int = 1,
    max_order: int = MAX_ORDER,
) -> GroupoidSpec:
    """A block spec within the object and arrow limits.

    ``min_order`` forces the first block to carry a vertex group of at least
    that order, so the groupoid has non-trivial automorphisms.
    """
    upper = max(min(max_objects, max_arrows), min_objects)
    total = int(rng.integers(min_objects, upper + 1))
    blocks: list[BlockSpec] = []
    used = 0
    placed = 0
    while placed < total:
        remaining = total - placed
        n = int(rng.integers(1, min(remaining, 2) + 1))
        low = min_order if not blocks else 1
        m = int(rng.integers(low, max(max_order, low) + 1))
        budget_left = max_arrows - used - (remaining - n)
        while n * n * m > budget_left and m > low:
            m -= 1
        while n * n * m > budget_left and n > 1:
            n -= 1
        blocks.append((n, m))
        used += n * n * m
        placed += n
    return tuple(blocks)


def random_groupoid(rng: np.random.Generator, cfg: SuiteConfig, **limits: int) -> FinGroupoid:
    return block_groupoid(random_spec(rng, cfg.max_objects, cfg.max_arrows, **limits))


def spec_of(g: FinGroupoid) -> GroupoidSpec:
    """Recover the block spec of a groupoid built by ``block_groupoid``."""
    sizes: dict[int, int] = {}
    orders: dict[int, int] = {}
    for b, _ in g.object_labels:
        sizes[b] = sizes.get(b, 0) + 1
    for b, i, j, c in g.arrow_labels:
        if i == 0 and j == 0:
            orders[b] = max(orders.get(b, 1), c + 1)
    return tuple((sizes[b], orders.get(b, 1)) for b in sorted(sizes))


# =============================================================================
# FUNCTORS
# =============================================================================


def _homomorphisms(m: int, n: int, injective: bool = False) -> list[int]:
    """Multipliers g with ``c ↦ g·c`` a homomorphism Z/m → Z/n."""
    gs = [g for g in range(n) if (m * g) % n == 0]
    if injective:
        gs = [g for g in gs if all((g * c) % n for c in range(1, m))]
    return gs


def random_functor(
    rng: np.random.Generator,
    dom: FinGroupoid,
    cod: FinGroupoid,
    *,
    faithful: bool = False,
) -> GFunctor:
    """A random functor between block groupoids.

    With ``faithful`` every block lands through an injective homomorphism;
    blocks with no such target are sent injectively where possible and the
    caller must supply compatible specs.
    """
    dom_spec, cod_spec = spec_of(dom), spec_of(cod)
    if dom_spec and not cod_spec:
        raise ValueError("no functor from a non-empty groupoid into the empty one")
    choices: dict[int, tuple[int, int, tuple[int, ...]]] = {}
    for b, (n, m) in enumerate(dom_spec):
        targets = [
            tb
            for tb, (_, order) in enumerate(cod_spec)
            if _homomorphisms(m, order, injective=faithful)
        ]
        if not targets:
            raise ValueError(f"block {b} has no faithful target")
        tb = _pick(rng, targets)
        size, order = cod_spec[tb]
        g = _pick(rng, _homomorphisms(m, order, injective=faithful))
        objs = tuple(int(rng.integers(size)) for _ in range(n))
        choices[b] = (tb, g, objs)

    def on_object(lab: tuple) -> tuple:
        tb, _, objs = choices[lab[0]]
        return (tb, objs[lab[1]])

    def on_arrow(lab: tuple) -> tuple:
        b, i, j, c = lab
        tb, g, objs = choices[b]
        return (tb, objs[i], objs[j], (g * c) % cod_spec[tb][1])

    return functor_by_labels(dom, cod, on_object, on_arrow)


def random_cospan(
    rng: np.random.Generator, cfg: SuiteConfig, **limits: int
) -> tuple[GFunctor, GFunctor]:
    """``X -f-> Z <-g- Y``."""
    z = random_groupoid(rng, cfg, **limits)
    x = random_groupoid(rng, cfg, **limits)
    y = random_groupoid(rng, cfg, **limits)
    return random_functor(rng, x, z), random_functor(rng, y, z)


# =============================================================================
# SPANS, POLYNOMIALS, FAMILIES
# =============================================================================


def random_span(
    rng: np.random.Generator,
    left: FinGroupoid,
    right: FinGroupoid,
    cfg: SuiteConfig,
    **limits: int,
) -> Span:
    apex = random_groupoid(rng, cfg, **limits)
    return Span(
        Endpoint.gpd(left),
        Endpoint.gpd(right),
        apex,
        random_functor(rng, apex, left),
        random_functor(rng, apex, right),
    )


def composable_spans(
    rng: np.random.Generator, cfg: SuiteConfig, length: int, **limits: int
) -> list[Span]:
    """``[f1, f2, ...]`` with ``f_i: g_{i-1} ⇸ g_i``, listed in composition order."""
    bases = [random_groupoid(rng, cfg, **limits) for _ in range(length + 1)]
    return [random_span(rng, bases[i], bases[i + 1], cfg, **limits) for i in range(length)]


def _faithful_top(rng: np.random.Generator, b_spec: GroupoidSpec, max_objects: int) -> GroupoidSpec:
    """Blocks for E whose orders divide some block order of B."""
    total = int(rng.integers(0, max_objects + 1))
    orders = sorted({m for _, m in b_spec})
    blocks: list[BlockSpec] = []
    placed = 0
    while placed < total:
        n = int(rng.integers(1, min(total - placed, 2) + 1))
        target = _pick(rng, orders)
        m = _pick(rng, [d for d in range(1, target + 1) if target % d == 0])
        blocks.append((n, m))
        placed += n
    return tuple(blocks)


def random_polynomial(
    rng: np.random.Generator,
    i_gpd: FinGroupoid,
    j_gpd: FinGroupoid,
    cfg: SuiteConfig,
    *,
    max_top: int = 3,
    max_order: int = 2,
) -> Polynomial:
    """A finitary polynomial ``I → J``: p is faithful, so every fiber is a set."""
    b_gpd = random_groupoid(rng, cfg, max_order=max_order)
    e_gpd = block_groupoid(_faithful_top(rng, spec_of(b_gpd), max_top))
    p = random_functor(rng, e_gpd, b_gpd, faithful=True)
    s = random_functor(rng, e_gpd, i_gpd)
    t = random_functor(rng, b_gpd, j_gpd)
    return Polynomial(i_gpd, j_gpd, e_gpd, b_gpd, s, p, t)


def random_family(rng: np.random.Generator, base: FinGroupoid, max_size: int = 2) -> FamilyOfGroupoids:
    """Discrete fibers, constant along each block, acted on by a swap of order 2 or trivially."""
    spec = spec_of(base)
    sizes_by_block = [int(rng.integers(0, max_size + 1)) for _ in spec]
    swaps = [
        size >= 2 and order % 2 == 0 and bool(rng.integers(2))
        for size, (_, order) in zip(sizes_by_block, spec)
    ]
    sizes = [sizes_by_block[b] for b, _ in base.object_labels]
    actions = []
    for b, _, _, c in base.arrow_labels:
        perm = list(range(sizes_by_block[b]))
        if swaps[b] and c % 2 == 1:
            perm[0], perm[1] = perm[1], perm[0]
        actions.append(tuple(perm))
    return discrete_family(base, sizes, actions)


def random_constant_family(rng: np.random.Generator, base: FinGroupoid, cfg: SuiteConfig) -> FamilyOfGroupoids:
    return constant_family(base, random_groupoid(rng, cfg, max_order=2))


# =============================================================================
# STREAMS
# =============================================================================


def generate(kind: InstanceKind, cfg: SuiteConfig, stream: int = 0) -> Iterator[Any]:
    """``cfg.instance_count`` instances of ``kind``, reproducible from ``cfg.seed``."""
    for index in range(cfg.instance_count):
        rng = instance_rng(cfg.seed, stream, index)
        if kind == "groupoid":
            yield random_groupoid(rng, cfg)
        elif kind == "functor":
            yield random_functor(rng, random_groupoid(rng, cfg), random_groupoid(rng, cfg))
        elif kind == "span":
            yield random_span(rng, random_groupoid(rng, cfg), random_groupoid(rng, cfg), cfg)
        elif kind == "polynomial":
            yield random_polynomial(rng, random_groupoid(rng, cfg), random_groupoid(rng, cfg), cfg)
        elif kind == "family":
            yield random_family(rng, random_groupoid(rng, cfg))
        else:
            raise ValueError(f"unknown instance kind: {kind}")


__all__ = [
    "BlockSpec",
    "GroupoidSpec",
    "InstanceKind",
    "block_groupoid",
    "composable_spans",
    "generate",
    "instance_rng",
    "random_constant_family",
    "random_cospan",
    "random_family",
    "random_functor",
    "random_groupoid",
    "random_polynomial",
    "random_span",
    "random_spec",
    "spec_of",
]
