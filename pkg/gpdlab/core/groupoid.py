"""Finite groupoids, functors and natural isomorphisms.

A FinGroupoid stores objects as indices ``0..n-1`` and arrows as globally
unique ids ``0..m-1`` with explicit source/target, composition, identity and
inverse tables. Groupoids built by the library also remember the *labels*
they were built from (pairs for products, triples for pullbacks, bags for
bang materializations, ...) so later constructions can look objects up by
meaning instead of by position. Equality of groupoids ignores labels.

Anything that can enumerate hom-sets and compose, without listing its
objects, is an EffectiveGroupoid; legs of spans may land in one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Protocol, Sequence, runtime_checkable

from gpdlab.exceptions import InvalidStructureError, SchemaError
from gpdlab.models import LawViolation, ValidationReport

logger = logging.getLogger(__name__)


@runtime_checkable
class EffectiveGroupoid(Protocol):
    """A groupoid that can answer local questions about its arrows."""

    def hom(self, x: Any, y: Any) -> Sequence[Any]: ...

    def arrows_from(self, x: Any) -> Iterable[Any]: ...

    def compose(self, g: Any, f: Any) -> Any: ...

    def identity(self, x: Any) -> Any: ...

    def inverse(self, f: Any) -> Any: ...

    def source(self, f: Any) -> Any: ...

    def target(self, f: Any) -> Any: ...


class FinGroupoid:
    """Explicit finite groupoid.

    ``compose_table`` maps ``(g, f)`` to ``g ∘ f`` for every pair with
    ``target(f) == source(g)``.
    """

    __slots__ = (
        "_n",
        "_src",
        "_dst",
        "_compose",
        "_identity",
        "_inverse",
        "_hom",
        "_out",
        "_object_labels",
        "_arrow_labels",
        "_object_index",
        "_arrow_index",
    )

    def __init__(
        self,
        object_count: int,
        sources: Sequence[int],
        targets: Sequence[int],
        compose_table: dict[tuple[int, int], int],
        identities: Sequence[int],
        inverses: Sequence[int],
        object_labels: Sequence[Hashable] | None = None,
        arrow_labels: Sequence[Hashable] | None = None,
        *,
        check: bool = True,
    ) -> None:
        self._n = object_count
        self._src = tuple(sources)
        self._dst = tuple(targets)
        self._compose = dict(compose_table)
        self._identity = tuple(identities)
        self._inverse = tuple(inverses)
        self._object_labels = tuple(object_labels) if object_labels is not None else None
        self._arrow_labels = tuple(arrow_labels) if arrow_labels is not None else None
        self._object_index: dict[Hashable, int] | None = None
        self._arrow_index: dict[Hashable, int] | None = None
        if check:
            self._check_tables()

        self._hom: dict[tuple[int, int], list[int]] = {}
        self._out: list[list[int]] = [[] for _ in range(self._n)]
        for a, (s, t) in enumerate(zip(self._src, self._dst)):
            self._hom.setdefault((s, t), []).append(a)
            self._out[s].append(a)

    # -- syntactic checks -------------------------------------------------

    def _check_tables(self) -> None:
        n, m = self._n, len(self._src)
        if n < 0:
            raise SchemaError("object count must be non-negative", "/objects")
        if len(self._dst) != m:
            raise SchemaError("source and target tables differ in length", "/arrows")
        for a, (s, t) in enumerate(zip(self._src, self._dst)):
            if not 0 <= s < n:
                raise SchemaError(f"arrow {a} has dangling source {s}", f"/arrows/{a}/src")
            if not 0 <= t < n:
                raise SchemaError(f"arrow {a} has dangling target {t}", f"/arrows/{a}/dst")
        if len(self._identity) != n:
            raise SchemaError(f"expected {n} identities, got {len(self._identity)}", "/identity")
        for x, a in enumerate(self._identity):
            if not 0 <= a < m:
                raise SchemaError(f"identity of object {x} is dangling arrow {a}", f"/identity/{x}")
        if len(self._inverse) != m:
            raise SchemaError(f"expected {m} inverses, got {len(self._inverse)}", "/inverse")
        for a, b in enumerate(self._inverse):
            if not 0 <= b < m:
                raise SchemaError(f"inverse of arrow {a} is dangling arrow {b}", f"/inverse/{a}")
        for (g, f), h in self._compose.items():
            for value in (g, f, h):
                if not 0 <= value < m:
                    raise SchemaError(f"compose entry {(g, f, h)} names dangling arrow {value}", "/compose")
            if self._dst[f] != self._src[g]:
                raise SchemaError(f"compose entry {(g, f, h)} is not composable", "/compose")
        for f in range(m):
            for g in range(m):
                if self._src[g] == self._dst[f] and (g, f) not in self._compose:
                    raise SchemaError(f"compose table missing composable pair {(g, f)}", "/compose")

    # -- builder ----------------------------------------------------------

    @classmethod
    def build(
        cls,
        objects: Sequence[Hashable],
        arrows: Iterable[tuple[Hashable, Hashable, Hashable]],
        compose: Callable[[Hashable, Hashable], Hashable],
        identity: Callable[[Hashable], Hashable],
    ) -> "FinGroupoid":
        """Build a groupoid from labelled objects and arrows.

        ``arrows`` yields ``(label, source_label, target_label)``;
        ``compose(g, f)`` and ``identity(x)`` answer in labels. Inverses are
        found by search in the opposite hom-set.
        """
        object_labels = list(objects)
        obj_index = {label: i for i, label in enumerate(object_labels)}
        if len(obj_index) != len(object_labels):
            raise InvalidStructureError("duplicate object labels")
        arrow_labels: list[Hashable] = []
        sources: list[int] = []
        targets: list[int] = []
        for label, s, t in arrows:
            arrow_labels.append(label)
            sources.append(obj_index[s])
            targets.append(obj_index[t])
        arr_index = {label: i for i, label in enumerate(arrow_labels)}
        if len(arr_index) != len(arrow_labels):
            raise InvalidStructureError("duplicate arrow labels")

        hom: dict[tuple[int, int], list[int]] = {}
        out: list[list[int]] = [[] for _ in object_labels]
        for a, (s, t) in enumerate(zip(sources, targets)):
            hom.setdefault((s, t), []).append(a)
            out[s].append(a)

        table: dict[tuple[int, int], int] = {}
        for f, t in enumerate(targets):
            for g in out[t]:
                table[(g, f)] = arr_index[compose(arrow_labels[g], arrow_labels[f])]

        identities = [arr_index[identity(label)] for label in object_labels]
        inverses: list[int] = []
        for f, (s, t) in enumerate(zip(sources, targets)):
            inv = next(
                (g for g in hom.get((t, s), ()) if table[(g, f)] == identities[s]),
                None,
            )
            if inv is None:
                raise InvalidStructureError(f"arrow {arrow_labels[f]!r} has no inverse")
            inverses.append(inv)
        return cls(
            len(object_labels),
            sources,
            targets,
            table,
            identities,
            inverses,
            object_labels,
            arrow_labels,
            check=False,
        )

    # -- EffectiveGroupoid ------------------------------------------------

    @property
    def object_count(self) -> int:
        return self._n

    @property
    def arrow_count(self) -> int:
        return len(self._src)

    def objects(self) -> range:
        return range(self._n)

    def arrows(self) -> range:
        return range(len(self._src))

    def source(self, a: int) -> int:
        return self._src[a]

    def target(self, a: int) -> int:
        return self._dst[a]

    def hom(self, x: int, y: int) -> Sequence[int]:
        return self._hom.get((x, y), ())

    def arrows_from(self, x: int) -> Sequence[int]:
        return self._out[x]

    def compose(self, g: int, f: int) -> int:
        try:
            return self._compose[(g, f)]
        except KeyError:
            raise InvalidStructureError(f"arrows {g} and {f} are not composable") from None

    def identity(self, x: int) -> int:
        return self._identity[x]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    @property
    def sources(self) -> tuple[int, ...]:
        return self._src

    @property
    def targets(self) -> tuple[int, ...]:
        return self._dst

    @property
    def identities(self) -> tuple[int, ...]:
        return self._identity

    @property
    def inverses(self) -> tuple[int, ...]:
        return self._inverse

    def compose_items(self) -> list[tuple[int, int, int]]:
        """Composition table as sorted ``(g, f, g∘f)`` triples."""
        return sorted((g, f, h) for (g, f), h in self._compose.items())

    def is_empty(self) -> bool:
        return self._n == 0

    # -- labels -----------------------------------------------------------

    def object_label(self, x: int) -> Hashable:
        return self._object_labels[x] if self._object_labels is not None else x

    def arrow_label(self, a: int) -> Hashable:
        return self._arrow_labels[a] if self._arrow_labels is not None else a

    @property
    def object_labels(self) -> tuple[Hashable, ...]:
        return self._object_labels if self._object_labels is not None else tuple(range(self._n))

    @property
    def arrow_labels(self) -> tuple[Hashable, ...]:
        if self._arrow_labels is not None:
            return self._arrow_labels
        return tuple(range(len(self._src)))

    def object_index(self, label: Hashable) -> int:
        if self._object_index is None:
            self._object_index = {lab: i for i, lab in enumerate(self.object_labels)}
        return self._object_index[label]

    def arrow_index(self, label: Hashable) -> int:
        if self._arrow_index is None:
            self._arrow_index = {lab: i for i, lab in enumerate(self.arrow_labels)}
        return self._arrow_index[label]

    def unlabelled(self) -> "FinGroupoid":
        return FinGroupoid(
            self._n, self._src, self._dst, self._compose, self._identity, self._inverse, check=False
        )

    # -- value semantics --------------------------------------------------

    def _key(self) -> tuple:
        return (self._n, self._src, self._dst, self._identity, self._inverse)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinGroupoid):
            return NotImplemented
        return self._key() == other._key() and self._compose == other._compose

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FinGroupoid(objects={self._n}, arrows={len(self._src)})"


# =============================================================================
# STANDARD GROUPOIDS
# =============================================================================


def discrete(n: int) -> FinGroupoid:
    """Disc(n): n objects, identities only."""
    return FinGroupoid(n, range(n), range(n), {(a, a): a for a in range(n)}, range(n), range(n))


def unit() -> FinGroupoid:
    """The terminal groupoid 𝟙."""
    return discrete(1)


def empty() -> FinGroupoid:
    return discrete(0)


def cyclic_block(objects: int, order: int) -> FinGroupoid:
    """Connected groupoid on ``objects`` objects with vertex group Z/order.

    Arrow ``(i, j, k)`` goes from ``i`` to ``j``; composition adds ``k``.
    """
    obj = list(range(objects))
    arrows = [((i, j, k), i, j) for i in obj for j in obj for k in range(order)]
    return FinGroupoid.build(
        obj,
        arrows,
        compose=lambda g, f: (f[0], g[1], (f[2] + g[2]) % order),
        identity=lambda x: (x, x, 0),
    )


def cyclic_group(order: int) -> FinGroupoid:
    """B(Z/order): one object whose automorphisms form the cyclic group."""
    return cyclic_block(1, order)


def indiscrete(objects: int) -> FinGroupoid:
    """Exactly one arrow between any two objects."""
    return cyclic_block(objects, 1)


def action_groupoid(points: int, group: Sequence[Sequence[int]]) -> FinGroupoid:
    """Action groupoid of a permutation group on ``range(points)``.

    ``group`` must be closed under composition and contain the identity.
    Arrow ``(g, x)`` goes from ``x`` to ``g[x]``.
    """
    perms = [tuple(p) for p in group]
    members = set(perms)
    ident = tuple(range(points))
    if ident not in members:
        raise InvalidStructureError("permutation group lacks the identity")
    for p in perms:
        for q in perms:
            if tuple(p[q[i]] for i in range(points)) not in members:
                raise InvalidStructureError("permutation group not closed under composition")
    arrows = [((p, x), x, p[x]) for p in perms for x in range(points)]
    return FinGroupoid.build(
        list(range(points)),
        arrows,
        compose=lambda g, f: (tuple(g[0][f[0][i]] for i in range(points)), f[1]),
        identity=lambda x: (ident, x),
    )


# =============================================================================
# VALIDATION
# =============================================================================


def validate_groupoid(g: FinGroupoid) -> ValidationReport:
    """Check every groupoid law exhaustively; report each violation."""
    violations: list[LawViolation] = []

    def fail(law: str, arrows: list[int], detail: str) -> None:
        violations.append(LawViolation(law=law, arrows=arrows, detail=detail))

    composable = [
        (h, f) for f in g.arrows() for h in g.arrows_from(g.target(f))
    ]
    table = {}
    for h, f in composable:
        try:
            c = g.compose(h, f)
        except InvalidStructureError:
            fail("compose-total", [h, f], "composable pair has no composite")
            continue
        table[(h, f)] = c
        if g.source(c) != g.source(f) or g.target(c) != g.target(h):
            fail("compose-typing", [h, f, c], "composite has wrong endpoints")

    for x in g.objects():
        e = g.identity(x)
        if g.source(e) != x or g.target(e) != x:
            fail("identity-typing", [e], f"identity of object {x} is not an endo-arrow of {x}")
            continue
    for f in g.arrows():
        s, t = g.source(f), g.target(f)
        if table.get((f, g.identity(s))) != f:
            fail("right-unit", [f, g.identity(s)], "f ∘ id ≠ f")
        if table.get((g.identity(t), f)) != f:
            fail("left-unit", [g.identity(t), f], "id ∘ f ≠ f")
        inv = g.inverse(f)
        if g.source(inv) != t or g.target(inv) != s:
            fail("inverse-typing", [f, inv], "inverse has wrong endpoints")
            continue
        if table.get((inv, f)) != g.identity(s):
            fail("left-inverse", [inv, f], "inverse(f) ∘ f ≠ id")
        if table.get((f, inv)) != g.identity(t):
            fail("right-inverse", [f, inv], "f ∘ inverse(f) ≠ id")

    for (h, f), hf in table.items():
        for k in g.arrows_from(g.target(h)):
            kh = table.get((k, h))
            if kh is None:
                continue
            left = table.get((kh, f))
            right = table.get((k, hf))
            if left != right:
                fail("associativity", [k, h, f], "(k∘h)∘f ≠ k∘(h∘f)")

    if violations:
        logger.debug("groupoid validation found %d violations", len(violations))
    return ValidationReport(valid=not violations, violations=violations)


# =============================================================================
# FUNCTORS
# =============================================================================


class Functor(Protocol):
    codomain: Any

    def on_object(self, x: Any) -> Any: ...

    def on_arrow(self, a: Any) -> Any: ...


@dataclass(frozen=True, eq=False)
class GFunctor:
    """Functor out of a FinGroupoid, tabulated on every object and arrow."""

    domain: FinGroupoid
    codomain: Any
    obj_map: tuple
    arr_map: tuple

    def __post_init__(self) -> None:
        if len(self.obj_map) != self.domain.object_count:
            raise InvalidStructureError("functor object map does not cover the domain")
        if len(self.arr_map) != self.domain.arrow_count:
            raise InvalidStructureError("functor arrow map does not cover the domain")

    def on_object(self, x: int) -> Any:
        return self.obj_map[x]

    def on_arrow(self, a: int) -> Any:
        return self.arr_map[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GFunctor):
            return NotImplemented
        return (
            self.obj_map == other.obj_map
            and self.arr_map == other.arr_map
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self) -> int:
        return hash((self.obj_map, self.arr_map))


@dataclass(frozen=True, eq=False)
class PointwiseFunctor:
    """Functor between effective groupoids, evaluated on demand."""

    codomain: Any
    object_fn: Callable[[Any], Any]
    arrow_fn: Callable[[Any], Any]
    name: str = "functor"

    def on_object(self, x: Any) -> Any:
        return self.object_fn(x)

    def on_arrow(self, a: Any) -> Any:
        return self.arrow_fn(a)

    def tabulate(self, domain: FinGroupoid) -> GFunctor:
        """Restrict to a FinGroupoid whose labels are objects/arrows of our domain."""
        return GFunctor(
            domain,
            self.codomain,
            tuple(self.object_fn(label) for label in domain.object_labels),
            tuple(self.arrow_fn(label) for label in domain.arrow_labels),
        )


def identity_functor(g: FinGroupoid) -> GFunctor:
    return GFunctor(g, g, tuple(g.objects()), tuple(g.arrows()))


def label_inclusion(g: FinGroupoid, codomain: Any) -> GFunctor:
    """Send each object/arrow of ``g`` to its label, read in ``codomain``."""
    return GFunctor(g, codomain, g.object_labels, g.arrow_labels)


def functor_by_labels(
    domain: FinGroupoid,
    codomain: FinGroupoid,
    object_fn: Callable[[Hashable], Hashable],
    arrow_fn: Callable[[Hashable], Hashable],
) -> GFunctor:
    """Tabulate a functor described on labels, landing on labels of ``codomain``."""
    return GFunctor(
        domain,
        codomain,
        tuple(codomain.object_index(object_fn(lab)) for lab in domain.object_labels),
        tuple(codomain.arrow_index(arrow_fn(lab)) for lab in domain.arrow_labels),
    )


def constant_functor(domain: FinGroupoid, codomain: Any, obj: Any) -> GFunctor:
    ident = codomain.identity(obj)
    return GFunctor(domain, codomain, (obj,) * domain.object_count, (ident,) * domain.arrow_count)


def compose_functors(g: Any, f: Any) -> Any:
    """``g ∘ f``; tabulated whenever ``f`` is."""
    if isinstance(f, GFunctor):
        return GFunctor(
            f.domain,
            g.codomain,
            tuple(g.on_object(v) for v in f.obj_map),
            tuple(g.on_arrow(v) for v in f.arr_map),
        )
    return PointwiseFunctor(
        g.codomain,
        lambda x: g.on_object(f.on_object(x)),
        lambda a: g.on_arrow(f.on_arrow(a)),
        name=f"{getattr(g, 'name', 'g')}∘{getattr(f, 'name', 'f')}",
    )


def validate_functor(f: GFunctor) -> ValidationReport:
    """Check typing, identities and composition exhaustively on the domain."""
    dom, cod = f.domain, f.codomain
    violations: list[LawViolation] = []
    for a in dom.arrows():
        image = f.on_arrow(a)
        if cod.source(image) != f.on_object(dom.source(a)) or cod.target(image) != f.on_object(
            dom.target(a)
        ):
            violations.append(LawViolation(law="functor-typing", arrows=[a], detail=repr(image)))
    for x in dom.objects():
        if f.on_arrow(dom.identity(x)) != cod.identity(f.on_object(x)):
            violations.append(
                LawViolation(law="functor-identity", arrows=[dom.identity(x)], detail=f"object {x}")
            )
    if not violations:
        for a in dom.arrows():
            for b in dom.arrows_from(dom.target(a)):
                if f.on_arrow(dom.compose(b, a)) != cod.compose(f.on_arrow(b), f.on_arrow(a)):
                    violations.append(
                        LawViolation(law="functor-composition", arrows=[b, a], detail="F(b∘a) ≠ Fb∘Fa")
                    )
    return ValidationReport(valid=not violations, violations=violations)


def functors_agree(f: Any, g: Any, domain: FinGroupoid) -> bool:
    """Pointwise equality on every object and arrow of ``domain``."""
    return all(f.on_object(x) == g.on_object(x) for x in domain.objects()) and all(
        f.on_arrow(a) == g.on_arrow(a) for a in domain.arrows()
    )


# =============================================================================
# NATURAL ISOMORPHISMS
# =============================================================================


@dataclass(frozen=True, eq=False)
class NatIso:
    """Natural isomorphism ``source ⇒ target`` between functors out of a FinGroupoid.

    ``components[x]`` is an arrow ``source(x) → target(x)`` of the codomain.
    """

    source: GFunctor
    target: GFunctor
    components: tuple

    def validate(self) -> ValidationReport:
        dom = self.source.domain
        cod = self.source.codomain
        violations: list[LawViolation] = []
        if len(self.components) != dom.object_count:
            violations.append(LawViolation(law="nat-coverage", arrows=[], detail="missing components"))
            return ValidationReport(valid=False, violations=violations)
        for x in dom.objects():
            c = self.components[x]
            if cod.source(c) != self.source.on_object(x) or cod.target(c) != self.target.on_object(x):
                violations.append(LawViolation(law="nat-typing", arrows=[], detail=f"component at {x}"))
                continue
            if cod.compose(cod.inverse(c), c) != cod.identity(self.source.on_object(x)):
                violations.append(LawViolation(law="nat-invertible", arrows=[], detail=f"component at {x}"))
        if violations:
            return ValidationReport(valid=False, violations=violations)
        for u in dom.arrows():
            x, y = dom.source(u), dom.target(u)
            lhs = cod.compose(self.target.on_arrow(u), self.components[x])
            rhs = cod.compose(self.components[y], self.source.on_arrow(u))
            if lhs != rhs:
                violations.append(LawViolation(law="naturality", arrows=[u], detail="square fails"))
        return ValidationReport(valid=not violations, violations=violations)

    def is_valid(self) -> bool:
        return self.validate().valid


__all__ = [
    "EffectiveGroupoid",
    "FinGroupoid",
    "Functor",
    "GFunctor",
    "NatIso",
    "PointwiseFunctor",
    "action_groupoid",
    "compose_functors",
    "constant_functor",
    "cyclic_block",
    "cyclic_group",
    "discrete",
    "empty",
    "functor_by_labels",
    "functors_agree",
    "identity_functor",
    "indiscrete",
    "label_inclusion",
    "unit",
    "validate_functor",
    "validate_groupoid",
]
