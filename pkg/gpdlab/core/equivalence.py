"""Skeleta, groupoid cardinality and decidable equivalence of finite groupoids.

Two finite groupoids are equivalent iff their iso classes can be matched so
that matched classes have isomorphic automorphism groups. The search below
is complete; when it would need more candidate steps than the configured
budget it raises BudgetExceededError instead of answering "no".
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator, NamedTuple, Sequence

from gpdlab.config import get_search_budget
from gpdlab.core.groupoid import FinGroupoid, GFunctor, validate_functor
from gpdlab.exceptions import BudgetExceededError, InvalidStructureError
from gpdlab.models import EquivalenceEvidence

logger = logging.getLogger(__name__)


class SearchBudget:
    """Counts candidate steps and raises once the limit is passed."""

    def __init__(self, limit: int | None = None, what: str = "search") -> None:
        self.limit = get_search_budget(limit)
        self.what = what
        self.spent = 0

    def spend(self, steps: int = 1) -> None:
        self.spent += steps
        if self.spent > self.limit:
            logger.warning("%s exhausted a budget of %d steps", self.what, self.limit)
            raise BudgetExceededError(self.what, self.limit)


def _budget(budget: "SearchBudget | int | None", what: str) -> SearchBudget:
    return budget if isinstance(budget, SearchBudget) else SearchBudget(budget, what)


# =============================================================================
# ISO CLASSES AND SKELETA
# =============================================================================


def iso_classes(g: FinGroupoid) -> list[list[int]]:
    """Iso classes as sorted object lists, ordered by least member."""
    seen: set[int] = set()
    classes = []
    for x in g.objects():
        if x in seen:
            continue
        members = sorted({g.target(a) for a in g.arrows_from(x)})
        seen.update(members)
        classes.append(members)
    return classes


def automorphisms(g: Any, x: Any) -> Sequence[Any]:
    return g.hom(x, x)


def representative_paths(g: FinGroupoid) -> tuple[dict[int, int], dict[int, int]]:
    """``rep[x]`` (least object of x's class) and an arrow ``path[x]: x → rep[x]``."""
    rep: dict[int, int] = {}
    path: dict[int, int] = {}
    for members in iso_classes(g):
        r = members[0]
        for x in members:
            rep[x] = r
            path[x] = g.identity(r) if x == r else g.hom(x, r)[0]
    return rep, path


def full_subgroupoid(g: FinGroupoid, objects: Sequence[int]) -> FinGroupoid:
    """Full subgroupoid on ``objects``; labels are the original indices."""
    chosen = list(objects)
    keep = set(chosen)
    arrows = [(a, g.source(a), g.target(a)) for x in chosen for a in g.arrows_from(x) if g.target(a) in keep]
    return FinGroupoid.build(chosen, arrows, compose=g.compose, identity=g.identity)


class Skeleton(NamedTuple):
    groupoid: FinGroupoid
    inclusion: GFunctor
    retraction: GFunctor
    witness: "EquivalenceWitness"


def skeletalize(g: FinGroupoid) -> Skeleton:
    """One object per iso class (its least member), with inclusion and retraction."""
    rep, path = representative_paths(g)
    reps = [members[0] for members in iso_classes(g)]
    skel = full_subgroupoid(g, reps)
    inclusion = GFunctor(skel, g, skel.object_labels, skel.arrow_labels)
    arr_map = []
    for u in g.arrows():
        x, y = g.source(u), g.target(u)
        moved = g.compose(path[y], g.compose(u, g.inverse(path[x])))
        arr_map.append(skel.arrow_index(moved))
    retraction = GFunctor(
        g, skel, tuple(skel.object_index(rep[x]) for x in g.objects()), tuple(arr_map)
    )
    witness = EquivalenceWitness(inclusion, verify_equivalence(inclusion))
    return Skeleton(skel, inclusion, retraction, witness)


def gcard(g: FinGroupoid) -> Fraction:
    """Groupoid cardinality: Σ over iso classes of 1/|Aut|."""
    return sum((Fraction(1, len(g.arrows_from(x))) for x in g.objects()), Fraction(0))


def class_signature(g: FinGroupoid) -> tuple[int, ...]:
    """Sorted automorphism group orders, one per iso class."""
    return tuple(sorted(len(g.hom(m[0], m[0])) for m in iso_classes(g)))


def is_contractible(g: FinGroupoid) -> bool:
    return class_signature(g) == (1,)


# =============================================================================
# VERTEX GROUPS
# =============================================================================


def element_order(g: Any, h: Any) -> int:
    e = g.identity(g.source(h))
    k, n = h, 1
    while k != e:
        k = g.compose(h, k)
        n += 1
    return n


def generated(g: Any, gens: Sequence[Any], e: Any) -> list[Any]:
    """Elements of the subgroup generated by ``gens`` in BFS order from ``e``."""
    order = [e]
    seen = {e}
    queue = deque([e])
    while queue:
        h = queue.popleft()
        for t in gens:
            k = g.compose(h, t)
            if k not in seen:
                seen.add(k)
                order.append(k)
                queue.append(k)
    return order


def generating_set(g: Any, r: Any) -> list[Any]:
    """Greedy generating set of Aut(r), preferring high-order elements."""
    auts = list(g.hom(r, r))
    e = g.identity(r)
    by_order = sorted(auts, key=lambda h: -element_order(g, h))
    gens: list[Any] = []
    closure = {e}
    for h in by_order:
        if h not in closure:
            gens.append(h)
            closure = set(generated(g, gens, e))
    return gens


def _extend(
    ga: Any, gens: Sequence[Any], images: Sequence[Any], gb: Any, ea: Any, eb: Any
) -> dict[Any, Any] | None:
    """Extend a generator assignment to the generated subgroup, or None on conflict."""
    phi = {ea: eb}
    queue = deque([ea])
    while queue:
        h = queue.popleft()
        for t, ti in zip(gens, images):
            k = ga.compose(h, t)
            ki = gb.compose(phi[h], ti)
            if k in phi:
                if phi[k] != ki:
                    return None
            else:
                phi[k] = ki
                queue.append(k)
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def group_isomorphisms(
    ga: Any,
    ra: Any,
    gb: Any,
    rb: Any,
    budget: SearchBudget,
    accept: Callable[[Any, Any], bool] | None = None,
) -> Iterator[dict[Any, Any]]:
    """Isomorphisms ``Aut(ra) → Aut(rb)``, optionally filtered elementwise by ``accept``."""
    auts_a = list(ga.hom(ra, ra))
    auts_b = list(gb.hom(rb, rb))
    if len(auts_a) != len(auts_b):
        return
    orders_a = {h: element_order(ga, h) for h in auts_a}
    orders_b = {h: element_order(gb, h) for h in auts_b}
    if sorted(orders_a.values()) != sorted(orders_b.values()):
        return
    ea, eb = ga.identity(ra), gb.identity(rb)
    if accept is not None and not accept(ea, eb):
        return
    gens = generating_set(ga, ra)

    def search(k: int, images: list[Any]) -> Iterator[dict[Any, Any]]:
        phi = _extend(ga, gens[:k], images, gb, ea, eb)
        if phi is None:
            return
        if accept is not None and not all(accept(h, hi) for h, hi in phi.items()):
            return
        if k == len(gens):
            yield phi
            return
        t = gens[k]
        for cand in auts_b:
            if orders_b[cand] != orders_a[t]:
                continue
            budget.spend()
            yield from search(k + 1, images + [cand])

    yield from search(0, [])


def minimal_generating_tuples(g: Any, r: Any, budget: SearchBudget) -> list[tuple[Any, ...]]:
    """All ordered generating tuples of Aut(r) of the least possible length."""
    auts = list(g.hom(r, r))
    e = g.identity(r)
    if len(auts) == 1:
        return [()]
    for d in range(1, len(auts)):
        found = []
        for tup in itertools.product(auts, repeat=d):
            budget.spend()
            if len(generated(g, tup, e)) == len(auts):
                found.append(tup)
        if found:
            return found
    raise InvalidStructureError("vertex group has no generating tuple")


# =============================================================================
# EQUIVALENCE WITNESSES
# =============================================================================


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """A functor together with its full/faithful/essentially-surjective evidence."""

    functor: GFunctor
    evidence: EquivalenceEvidence

    def verify(self) -> bool:
        return verify_equivalence(self.functor).holds

    def summary(self) -> str:
        f = self.functor
        return (
            f"equivalence {f.domain.object_count}→"
            f"{getattr(f.codomain, 'object_count', '?')} objects, "
            f"{self.evidence.hom_pairs_checked} hom-sets checked"
        )


def verify_equivalence(f: GFunctor, targets: Sequence[Any] | None = None) -> EquivalenceEvidence:
    """Check that ``f`` is full, faithful and essentially surjective.

    Essential surjectivity is checked against ``targets`` when given,
    otherwise against every object of a FinGroupoid codomain.
    """
    dom, cod = f.domain, f.codomain
    if not validate_functor(f).valid:
        return EquivalenceEvidence(full=False, faithful=False, essentially_surjective=False)
    full = faithful = True
    pairs = 0
    for x in dom.objects():
        fx = f.on_object(x)
        for y in dom.objects():
            fy = f.on_object(y)
            pairs += 1
            images = [f.on_arrow(u) for u in dom.hom(x, y)]
            if len(set(images)) != len(images):
                faithful = False
            if len(set(images)) != len(cod.hom(fx, fy)):
                full = False
    if targets is None:
        if not isinstance(cod, FinGroupoid):
            raise InvalidStructureError("essential surjectivity needs enumerable targets")
        targets = list(cod.objects())
    image_objects = {f.on_object(x) for x in dom.objects()}
    covered = set()
    ess = True
    for y in targets:
        hit = next((z for z in image_objects if cod.hom(z, y)), None)
        if hit is None:
            ess = False
        else:
            covered.add(hit)
    return EquivalenceEvidence(
        full=full,
        faithful=faithful,
        essentially_surjective=ess,
        hom_pairs_checked=pairs,
        classes_covered=len(covered),
    )


def quasi_inverse(witness: EquivalenceWitness) -> GFunctor:
    """An inverse equivalence for a verified witness with a FinGroupoid codomain."""
    f = witness.functor
    dom, cod = f.domain, f.codomain
    pre: dict[int, tuple[int, Any]] = {}
    for y in cod.objects():
        for x in dom.objects():
            arrows = cod.hom(f.on_object(x), y)
            if arrows:
                pre[y] = (x, arrows[0])
                break
        else:
            raise InvalidStructureError(f"object {y} is not in the essential image")
    hom_lookup: dict[tuple[int, int], dict[Any, int]] = {}
    arr_map = []
    for v in cod.arrows():
        y, y2 = cod.source(v), cod.target(v)
        (x, c), (x2, c2) = pre[y], pre[y2]
        wanted = cod.compose(cod.inverse(c2), cod.compose(v, c))
        table = hom_lookup.setdefault((x, x2), {f.on_arrow(u): u for u in dom.hom(x, x2)})
        arr_map.append(table[wanted])
    return GFunctor(cod, dom, tuple(pre[y][0] for y in cod.objects()), tuple(arr_map))


def find_equivalence(
    a: FinGroupoid, b: FinGroupoid, budget: SearchBudget | int | None = None
) -> EquivalenceWitness | None:
    """A verified equivalence ``a → b``, or None when none exists."""
    spent = _budget(budget, "find_equivalence")
    if class_signature(a) != class_signature(b):
        return None
    rep_a, path_a = representative_paths(a)
    classes_b = [m[0] for m in iso_classes(b)]
    used: set[int] = set()
    matched: dict[int, tuple[int, dict]] = {}
    for members in iso_classes(a):
        r = members[0]
        for s in classes_b:
            if s in used:
                continue
            spent.spend()
            phi = next(group_isomorphisms(a, r, b, s, spent), None)
            if phi is not None:
                matched[r] = (s, phi)
                used.add(s)
                break
        else:
            logger.debug("find_equivalence: class of %d has no partner", r)
            return None
    obj_map = tuple(matched[rep_a[x]][0] for x in a.objects())
    arr_map = []
    for u in a.arrows():
        x, y = a.source(u), a.target(u)
        moved = a.compose(path_a[y], a.compose(u, a.inverse(path_a[x])))
        arr_map.append(matched[rep_a[x]][1][moved])
    functor = GFunctor(a, b, obj_map, tuple(arr_map))
    evidence = verify_equivalence(functor)
    if not evidence.holds:
        raise InvalidStructureError("constructed equivalence failed verification")
    return EquivalenceWitness(functor, evidence)


def are_equivalent(a: FinGroupoid, b: FinGroupoid, budget: SearchBudget | int | None = None) -> bool:
    return find_equivalence(a, b, budget) is not None


__all__ = [
    "EquivalenceWitness",
    "SearchBudget",
    "Skeleton",
    "are_equivalent",
    "automorphisms",
    "class_signature",
    "element_order",
    "find_equivalence",
    "full_subgroupoid",
    "gcard",
    "generated",
    "generating_set",
    "group_isomorphisms",
    "iso_classes",
    "is_contractible",
    "minimal_generating_tuples",
    "quasi_inverse",
    "representative_paths",
    "skeletalize",
    "verify_equivalence",
]
