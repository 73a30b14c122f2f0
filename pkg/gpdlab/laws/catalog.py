"""The law catalog: one runnable check per structural law.

Each entry pairs a statement with a check. A check draws its instance from
the context's random stream, records the generated inputs as artifacts
(serialized into the report if the instance fails), and returns an
``Outcome`` whose witness summary backs a pass. Exact equalities are
reported as mismatches; "up to equivalence" laws go through ``span_equiv``,
``poly_equiv`` or ``find_equivalence`` under the instance's search budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from gpdlab.bang import (
    Mismatch,
    bang_span,
    counit_law_spans,
    eta_cartesian_comparison,
    eta_naturality_mismatches,
    functoriality_mismatches,
    lift_eta_square,
    monad_square_mismatches,
    monad_triangle_mismatches,
    monoidal_mismatches,
    mu_cartesian_comparison,
    mu_naturality_mismatches,
    pullback_comparison,
    seely2_comparison,
    seely2_naturality_mismatches,
    seely_square_mismatches,
    seely_square_spans,
    symmetry_witness,
)
from gpdlab.core.bags import bang_materialize
from gpdlab.core.equivalence import SearchBudget, find_equivalence, gcard, skeletalize, verify_equivalence
from gpdlab.core.families import (
    discrete_family,
    grothendieck,
    hfiber_family,
    hfiber_reassembly,
)
from gpdlab.core.groupoid import FinGroupoid, GFunctor, unit
from gpdlab.core.limits import coproduct, hfiber, hpullback, pair_functors, point, product
from gpdlab.kleisli import (
    check_kleisli_poly_equiv,
    kleisli_compose,
    kleisli_compose_general,
    kleisli_identity,
    poly_to_span,
    span_to_poly,
    sufficient_bound,
)
from gpdlab.laws.generators import (
    block_groupoid,
    composable_spans,
    random_cospan,
    random_family,
    random_functor,
    random_polynomial,
    random_span,
    random_spec,
    spec_of,
)
from gpdlab.models import EquivalenceEvidence, SuiteConfig
from gpdlab.poly import (
    Polynomial,
    classical_compose_count,
    classical_eval_count,
    classify_arity,
    eval_at,
    eval_family,
    linear_from_span,
    poly_compose,
    poly_equiv,
    poly_id,
    span_from_linear,
)
from gpdlab.span import (
    Endpoint,
    Span,
    curry,
    dualize,
    initial_span,
    lift_swap_square,
    pairing,
    product_projections,
    snake_composite,
    span_compose,
    span_coproduct_with,
    span_equiv,
    span_id,
    span_product_with,
    tensor,
    terminal_span,
    uncurry,
)


class LawId(str, Enum):
    SPAN_ASSOC = "span-assoc"
    SPAN_UNIT = "span-unit"
    SPAN_FUNCTOR_LIFT = "span-functor-lift"
    SPAN_NAT_LIFT = "span-nat-lift"
    PRODUCT_UP = "product-UP"
    TERMINAL = "terminal"
    CURRY_ROUNDTRIP = "curry-roundtrip"
    SNAKE = "snake"
    MONAD_TRIANGLES = "monad-triangles"
    MONAD_SQUARE = "monad-square"
    ETA_NATURAL = "eta-natural"
    MU_NATURAL = "mu-natural"
    ETA_CARTESIAN = "eta-cartesian"
    MU_CARTESIAN = "mu-cartesian"
    BANG_PRESERVES_PULLBACK = "bang-preserves-pullback"
    COMONAD_COUNIT = "comonad-counit"
    SEELY_SQUARE = "seely-square"
    MONOIDAL_1 = "monoidal-1"
    MONOIDAL_2 = "monoidal-2"
    MONOIDAL_3 = "monoidal-3"
    MONOIDAL_4 = "monoidal-4"
    POLY_UNIT = "poly-unit"
    POLY_ASSOC = "poly-assoc"
    POLY_EVAL = "poly-eval"
    KLEISLI_UNIT = "kleisli-unit"
    KLEISLI_POLY_EQUIV = "kleisli-poly-equiv"
    FIBERED_INDEXED_ROUNDTRIP = "fibered-indexed-roundtrip"
    GCARD_MULTIPLICATIVE = "gcard-multiplicative"
    DISCRETE_ORACLE = "discrete-oracle"


@dataclass(frozen=True)
class Outcome:
    passed: bool
    witness: str | None = None
    detail: str | None = None


@dataclass
class LawContext:
    """Everything one instance check may draw on."""

    rng: np.random.Generator
    cfg: SuiteConfig
    budget: SearchBudget
    artifacts: dict[str, Any] = field(default_factory=dict)

    def record(self, **values: Any) -> None:
        self.artifacts.update(values)

    @property
    def k(self) -> int:
        return self.cfg.bang_bound

    def small(self, objects: int = 2, arrows: int = 4) -> SuiteConfig:
        return self.cfg.model_copy(
            update={
                "max_objects": min(self.cfg.max_objects, objects),
                "max_arrows": min(self.cfg.max_arrows, arrows),
            }
        )

    def groupoid(self, objects: int = 2, arrows: int = 4, **limits: int) -> FinGroupoid:
        limits.setdefault("max_order", 2)
        small = self.small(objects, arrows)
        return block_groupoid(random_spec(self.rng, small.max_objects, small.max_arrows, **limits))

    def functor(self, dom: FinGroupoid, cod: FinGroupoid) -> GFunctor:
        return random_functor(self.rng, dom, cod)

    def span(self, left: FinGroupoid, right: FinGroupoid) -> Span:
        return random_span(self.rng, left, right, self.small(), max_order=2)


@dataclass(frozen=True)
class Law:
    id: LawId
    statement: str
    generator: str
    check: Callable[[LawContext], Outcome]
    bounded: bool = False


# =============================================================================
# OUTCOME HELPERS
# =============================================================================


def _spans_agree(ctx: LawContext, cases: Sequence[tuple[str, Span, Span]]) -> Outcome:
    notes = []
    for name, lhs, rhs in cases:
        witness = span_equiv(lhs, rhs, ctx.budget)
        if witness is None:
            return Outcome(False, detail=f"{name}: no span equivalence")
        notes.append(f"{name}: {witness.summary()}")
    return Outcome(True, witness="; ".join(notes))


def _exact(mismatches: Sequence[Mismatch], what: str) -> Outcome:
    if mismatches:
        shown = "; ".join(f"{m.where}: {m.left!r} != {m.right!r}" for m in mismatches[:3])
        return Outcome(False, detail=f"{len(mismatches)} mismatches, first: {shown}")
    return Outcome(True, witness=f"{what}: exact equality")


def _equivalence(evidence: EquivalenceEvidence, what: str) -> Outcome:
    if evidence.holds:
        return Outcome(True, witness=f"{what}: equivalence, {evidence.hom_pairs_checked} hom-sets checked")
    return Outcome(False, detail=f"{what}: comparison is not an equivalence ({evidence.model_dump()})")


def _combine(*outcomes: Outcome) -> Outcome:
    for o in outcomes:
        if not o.passed:
            return o
    return Outcome(True, witness="; ".join(o.witness for o in outcomes if o.witness))


SMALL_BASE_BOUND = 3
LARGE_BASE_BOUND = 2
SPAN_LEVEL_BOUND = 2
FULL_NESTING_BOUND = 2


def _bound(ctx: LawContext, *bases: FinGroupoid, cap: int | None = None) -> int:
    """Bang bound for checks over ``bases``.

    3 when every base has at most two objects, 2 otherwise, never above the
    configured ``bang_bound`` or ``cap``.
    """
    by_size = SMALL_BASE_BOUND if all(b.object_count <= 2 for b in bases) else LARGE_BASE_BOUND
    k = min(ctx.k, by_size)
    return k if cap is None else min(k, cap)


def _flattening_shapes(ctx: LawContext, f: GFunctor) -> list[tuple[int, int]]:
    """``(k_outer, k_inner)`` shapes for the flattening checks at ``f``.

    One-level shapes run at the full bound; the shape with both levels
    non-trivial runs at ``FULL_NESTING_BOUND``.
    """
    k = _bound(ctx, f.domain, f.codomain)
    n = _bound(ctx, f.domain, f.codomain, cap=FULL_NESTING_BOUND)
    return [(k, 1), (1, k), (n, n)]


# =============================================================================
# SPANS
# =============================================================================


def _span_assoc(ctx: LawContext) -> Outcome:
    f, g, h = composable_spans(ctx.rng, ctx.small(), 3, max_order=2)
    ctx.record(f=f, g=g, h=h)
    return _spans_agree(
        ctx,
        [("associativity", span_compose(h, span_compose(g, f)), span_compose(span_compose(h, g), f))],
    )


def _span_unit(ctx: LawContext) -> Outcome:
    s, t = composable_spans(ctx.rng, ctx.small(), 2, max_order=2)
    ctx.record(s=s, t=t)
    a, b = s.left.base, s.right.base
    return _spans_agree(
        ctx,
        [
            ("right unit", span_compose(s, span_id(a)), s),
            ("left unit", span_compose(span_id(b), s), s),
            ("dual reverses composition", dualize(span_compose(t, s)), span_compose(dualize(s), dualize(t))),
        ],
    )


def _span_functor_lift(ctx: LawContext) -> Outcome:
    f, g = composable_spans(ctx.rng, ctx.small(2, 3), 2, max_order=2)
    extra = ctx.groupoid(1, 2)
    k = _bound(ctx, cap=SPAN_LEVEL_BOUND)
    ctx.record(f=f, g=g, extra=extra)
    spans = _spans_agree(
        ctx,
        [
            (
                "product lift",
                span_product_with(span_compose(g, f), extra),
                span_compose(span_product_with(g, extra), span_product_with(f, extra)),
            ),
            (
                "coproduct lift",
                span_coproduct_with(span_compose(g, f), extra),
                span_compose(span_coproduct_with(g, extra), span_coproduct_with(f, extra)),
            ),
            (
                "bang lift",
                bang_span(span_compose(g, f), k),
                span_compose(bang_span(g, k), bang_span(f, k)),
            ),
        ],
    )
    a, b, c = ctx.groupoid(), ctx.groupoid(), ctx.groupoid()
    u, v = ctx.functor(a, b), ctx.functor(b, c)
    ctx.record(u=u, v=v)
    return _combine(spans, _exact(functoriality_mismatches(u, v, _bound(ctx, a, b)), "bang functoriality"))


def _span_nat_lift(ctx: LawContext) -> Outcome:
    s = ctx.span(ctx.groupoid(), ctx.groupoid())
    extra = ctx.groupoid(1, 2)
    ctx.record(s=s, extra=extra)
    swap_l, swap_r = lift_swap_square(s, extra)
    eta_l, eta_r = lift_eta_square(s, _bound(ctx, cap=SPAN_LEVEL_BOUND))
    return _spans_agree(ctx, [("swap square", swap_l, swap_r), ("unit square", eta_l, eta_r)])


def _product_up(ctx: LawContext) -> Outcome:
    x, a, b = ctx.groupoid(), ctx.groupoid(), ctx.groupoid()
    f, g = ctx.span(x, a), ctx.span(x, b)
    ab = block_groupoid(spec_of(a) + spec_of(b))
    h = ctx.span(x, ab)
    ctx.record(f=f, g=g, h=h)
    p1, p2 = product_projections(a, b)
    paired = pairing(f, g)
    return _spans_agree(
        ctx,
        [
            ("first projection", span_compose(p1, paired), f),
            ("second projection", span_compose(p2, paired), g),
            ("pairing of projections", pairing(span_compose(p1, h), span_compose(p2, h)), h),
        ],
    )


def _terminal(ctx: LawContext) -> Outcome:
    x, y = ctx.groupoid(), ctx.groupoid()
    s = ctx.span(y, x)
    ctx.record(s=s)
    if terminal_span(x).apex.object_count:
        return Outcome(False, detail="terminal span has a non-empty apex")
    return _spans_agree(
        ctx,
        [
            ("terminal", span_compose(terminal_span(x), s), terminal_span(y)),
            ("initial", span_compose(s, initial_span(y)), initial_span(x)),
        ],
    )


def _product_leg(ctx: LawContext, apex: FinGroupoid, a: FinGroupoid, b: FinGroupoid) -> GFunctor:
    return pair_functors(ctx.functor(apex, a), ctx.functor(apex, b), product(a, b))


def _curry_roundtrip(ctx: LawContext) -> Outcome:
    a, b, c = ctx.groupoid(2, 2), ctx.groupoid(2, 2), ctx.groupoid(2, 2)
    apex = ctx.groupoid()
    s = Span(
        Endpoint.gpd(product(a, b).groupoid),
        Endpoint.gpd(c),
        apex,
        _product_leg(ctx, apex, a, b),
        ctx.functor(apex, c),
    )
    apex2 = ctx.groupoid()
    t = Span(
        Endpoint.gpd(a),
        Endpoint.gpd(product(b, c).groupoid),
        apex2,
        ctx.functor(apex2, a),
        _product_leg(ctx, apex2, b, c),
    )
    ctx.record(s=s, t=t)
    if uncurry(curry(s, a, b), b, c) != s:
        return Outcome(False, detail="uncurry after curry changed the span")
    if curry(uncurry(t, b, c), a, b) != t:
        return Outcome(False, detail="curry after uncurry changed the span")
    return Outcome(True, witness="curry and uncurry are mutually inverse on the nose")


def _snake(ctx: LawContext) -> Outcome:
    a = ctx.groupoid(2, 4)
    ctx.record(a=a)
    ident = span_id(a)
    return _spans_agree(
        ctx,
        [
            ("left snake", snake_composite(a, "left"), ident),
            ("right snake", snake_composite(a, "right"), ident),
        ],
    )


# =============================================================================
# THE BAG MONAD AND COMONAD
# =============================================================================


def _monad_triangles(ctx: LawContext) -> Outcome:
    a = ctx.groupoid(2, 4, min_objects=2)
    ctx.record(a=a)
    return _exact(monad_triangle_mismatches(a, _bound(ctx, a)), "unit triangles")


def _monad_square(ctx: LawContext) -> Outcome:
    a = ctx.groupoid(2, 4)
    d = ctx.groupoid(2, 2, min_objects=2, max_order=1)
    ctx.record(a=a, discrete=d)
    k = _bound(ctx, a)
    n = _bound(ctx, a, cap=FULL_NESTING_BOUND)
    shapes = [(k, 1, 1), (1, k, 1), (1, 1, k), (n, n, 1), (1, n, n)]
    full = _bound(ctx, d, cap=FULL_NESTING_BOUND)
    return _combine(
        *(_exact(monad_square_mismatches(a, shape), f"square at {shape}") for shape in shapes),
        _exact(monad_square_mismatches(d, (full,) * 3), f"square at {(full,) * 3}, discrete base"),
    )


def _eta_natural(ctx: LawContext) -> Outcome:
    f = ctx.functor(ctx.groupoid(), ctx.groupoid())
    ctx.record(f=f)
    return _exact(eta_naturality_mismatches(f), "unit naturality")


def _mu_natural(ctx: LawContext) -> Outcome:
    f = ctx.functor(ctx.groupoid(2, 2), ctx.groupoid(2, 2))
    ctx.record(f=f)
    return _combine(
        *(
            _exact(mu_naturality_mismatches(f, *shape), f"flattening naturality at {shape}")
            for shape in _flattening_shapes(ctx, f)
        )
    )


def _eta_cartesian(ctx: LawContext) -> Outcome:
    f = ctx.functor(ctx.groupoid(), ctx.groupoid())
    ctx.record(f=f)
    _, evidence = eta_cartesian_comparison(f, _bound(ctx, f.domain, f.codomain))
    return _equivalence(evidence, "unit square")


def _mu_cartesian(ctx: LawContext) -> Outcome:
    f = ctx.functor(ctx.groupoid(2, 2), ctx.groupoid(2, 2))
    ctx.record(f=f)
    return _combine(
        *(
            _equivalence(mu_cartesian_comparison(f, *shape)[1], f"flattening square at {shape}")
            for shape in _flattening_shapes(ctx, f)
        )
    )


def _bang_preserves_pullback(ctx: LawContext) -> Outcome:
    f, g = random_cospan(ctx.rng, ctx.small(2, 2), max_order=2)
    ctx.record(f=f, g=g)
    _, evidence = pullback_comparison(f, g, _bound(ctx, f.domain, g.domain, f.codomain))
    return _equivalence(evidence, "bag pullback comparison")


def _comonad_counit(ctx: LawContext) -> Outcome:
    a = ctx.groupoid(2, 2)
    ctx.record(a=a)
    return _spans_agree(ctx, counit_law_spans(a, _bound(ctx, cap=SPAN_LEVEL_BOUND)))


# =============================================================================
# SEELY STRUCTURE
# =============================================================================


def _seely_square(ctx: LawContext) -> Outcome:
    a = ctx.groupoid(1, 2)
    b = ctx.groupoid(1, 2, min_order=2)
    f = ctx.functor(a, ctx.groupoid(1, 2))
    g = ctx.functor(b, ctx.groupoid(1, 2))
    ctx.record(a=a, b=b, f=f, g=g)
    k = _bound(ctx, a, b)
    _, evidence = seely2_comparison(a, b, k)
    top, bottom = seely_square_spans(a, b, _bound(ctx, a, b, cap=SPAN_LEVEL_BOUND))
    return _combine(
        _equivalence(evidence, "l2 on bounded bags"),
        _exact(seely2_naturality_mismatches(f, g, k), "l2 naturality"),
        _exact(seely_square_mismatches(a, b, k, 1), "square (k, 1)"),
        _exact(seely_square_mismatches(a, b, 1, k), "square (1, k)"),
        _spans_agree(ctx, [("square of spans", top, bottom)]),
    )


def _monoidal(which: int) -> Callable[[LawContext], Outcome]:
    def check(ctx: LawContext) -> Outcome:
        a, b, c = ctx.groupoid(1, 2), ctx.groupoid(1, 2, min_order=2), ctx.groupoid(1, 2)
        ctx.record(a=a, b=b, c=c)
        k = _bound(ctx, a, b, c)
        if which == 4:
            report = symmetry_witness(a, b, k).validate()
            if report.valid:
                return Outcome(True, witness="carrier swap is a natural isomorphism")
            return Outcome(False, detail="; ".join(f"{v.law}: {v.detail}" for v in report.violations[:3]))
        return _exact(monoidal_mismatches(which, a, b, c, k), f"coherence diagram {which}")

    return check


# =============================================================================
# POLYNOMIALS AND KLEISLI
# =============================================================================


def _max_fiber(poly: Polynomial) -> int:
    return max((f.iso_classes for f in classify_arity(poly).fibers), default=0)


def _finitary(ctx: LawContext, i_gpd: FinGroupoid, j_gpd: FinGroupoid, max_top: int = 2) -> Polynomial:
    """A finitary polynomial whose fibers fit the bang bound."""
    for _ in range(8):
        poly = random_polynomial(ctx.rng, i_gpd, j_gpd, ctx.small(), max_top=max_top)
        if _max_fiber(poly) <= ctx.k:
            return poly
    return linear_from_span(ctx.span(i_gpd, j_gpd))


def _polys_agree(ctx: LawContext, cases: Sequence[tuple[str, Polynomial, Polynomial]]) -> Outcome:
    notes = []
    for name, lhs, rhs in cases:
        witness = poly_equiv(lhs, rhs, ctx.budget)
        if witness is None:
            return Outcome(False, detail=f"{name}: no polynomial equivalence")
        notes.append(f"{name}: {witness.summary()}")
    return Outcome(True, witness="; ".join(notes))


def _poly_unit(ctx: LawContext) -> Outcome:
    i_gpd, j_gpd = ctx.groupoid(), ctx.groupoid()
    p = _finitary(ctx, i_gpd, j_gpd)
    ctx.record(p=p)
    s = ctx.span(i_gpd, j_gpd)
    if span_from_linear(linear_from_span(s)) != s:
        return Outcome(False, detail="linear polynomial of a span does not give the span back")
    return _polys_agree(
        ctx,
        [
            ("right unit", poly_compose(p, poly_id(i_gpd)), p),
            ("left unit", poly_compose(poly_id(j_gpd), p), p),
        ],
    )


def _poly_assoc(ctx: LawContext) -> Outcome:
    gs = [ctx.groupoid(1, 2) for _ in range(4)]
    p, q, r = (_finitary(ctx, gs[i], gs[i + 1], max_top=1) for i in range(3))
    ctx.record(p=p, q=q, r=r)
    return _polys_agree(
        ctx,
        [("associativity", poly_compose(r, poly_compose(q, p)), poly_compose(poly_compose(r, q), p))],
    )


def _poly_eval(ctx: LawContext) -> Outcome:
    i_gpd, j_gpd, k_gpd = ctx.groupoid(), ctx.groupoid(), ctx.groupoid()
    p = _finitary(ctx, i_gpd, j_gpd)
    q = _finitary(ctx, j_gpd, k_gpd)
    x = random_family(ctx.rng, i_gpd)
    ctx.record(p=p, q=q, x=x)
    composite = poly_compose(q, p)
    inner = eval_family(p, x)
    notes = []
    for k in k_gpd.objects():
        lhs, rhs = eval_at(composite, x, k), eval_at(q, inner, k)
        witness = find_equivalence(lhs, rhs, ctx.budget)
        if witness is None:
            return Outcome(False, detail=f"evaluation of the composite differs at object {k}")
        notes.append(witness.summary())
    return Outcome(True, witness=f"composite evaluation: {len(notes)} fibers equivalent")


def _kleisli_unit(ctx: LawContext) -> Outcome:
    i_gpd, j_gpd = ctx.groupoid(), ctx.groupoid()
    m = poly_to_span(_finitary(ctx, i_gpd, j_gpd))
    ctx.record(m=m.carrier)
    return _spans_agree(
        ctx,
        [
            ("right unit", kleisli_compose(m, kleisli_identity(i_gpd)).carrier, m.carrier),
            ("left unit", kleisli_compose(kleisli_identity(j_gpd), m).carrier, m.carrier),
        ],
    )


def _kleisli_poly_equiv(ctx: LawContext) -> Outcome:
    i_gpd, j_gpd, k_gpd = ctx.groupoid(), ctx.groupoid(), ctx.groupoid()
    p = _finitary(ctx, i_gpd, j_gpd)
    q = _finitary(ctx, j_gpd, k_gpd)
    ctx.record(p=p, q=q)
    check = check_kleisli_poly_equiv(q, p, ctx.budget)
    if not check.holds:
        return Outcome(False, detail=check.summary())
    mp, mq = poly_to_span(p), poly_to_span(q)
    reduced = kleisli_compose(mq, mp)
    cases = [
        ("larger bound", kleisli_compose(mq, mp, bound=sufficient_bound(mq) + 1).carrier, reduced.carrier),
    ]
    if sufficient_bound(mq) <= 2 and sufficient_bound(mp) <= 2:
        cases.append(("general form", kleisli_compose_general(mq, mp).carrier, reduced.carrier))
    spans = _spans_agree(ctx, cases)
    round_trip = _polys_agree(ctx, [("span_to_poly after poly_to_span", span_to_poly(mp), p)])
    return _combine(Outcome(True, witness=check.summary()), spans, round_trip)


# =============================================================================
# GROUPOID FOUNDATIONS AND ORACLES
# =============================================================================


def _fibered_indexed_roundtrip(ctx: LawContext) -> Outcome:
    base = ctx.groupoid(2, 4, min_order=2)
    e = ctx.groupoid()
    f = ctx.functor(e, base)
    fam = random_family(ctx.rng, base)
    ctx.record(f=f, family=fam)
    _, comparison = hfiber_reassembly(f)
    evidence = verify_equivalence(comparison)
    if not evidence.holds:
        return _equivalence(evidence, "total space of fibers")
    pointer = point(base, 0)
    for g in (f, pointer):
        for b in base.objects():
            if find_equivalence(hfiber(g, b).groupoid, hpullback(g, point(base, b)).groupoid, ctx.budget) is None:
                return Outcome(False, detail=f"hfiber differs from the pullback along the point {b}")
    fibers = hfiber_family(grothendieck(fam).projection)
    for b in base.objects():
        if find_equivalence(fam.fiber(b), fibers.fiber(b), ctx.budget) is None:
            return Outcome(False, detail=f"fiber over {b} lost in the total-space round trip")
    return Outcome(True, witness=f"round trips over {base.object_count} base objects")


def _exp_partial_sum(k: int) -> Fraction:
    return sum((Fraction(1, math.factorial(n)) for n in range(k + 1)), Fraction(0))


def _gcard_multiplicative(ctx: LawContext) -> Outcome:
    a, b = ctx.groupoid(3, 6, max_order=4), ctx.groupoid(3, 6, max_order=4)
    ctx.record(a=a, b=b)
    ga, gb = gcard(a), gcard(b)
    checks = [
        ("product", gcard(product(a, b).groupoid), ga * gb),
        ("coproduct", gcard(coproduct(a, b).groupoid), ga + gb),
        ("skeleton", gcard(skeletalize(a).groupoid), ga),
        ("bags over the point", gcard(bang_materialize(unit(), ctx.k)), _exp_partial_sum(ctx.k)),
    ]
    for name, got, want in checks:
        if got != want:
            return Outcome(False, detail=f"{name}: gcard {got} != {want}")
    return Outcome(True, witness=f"gcard {ga} · {gb} = {ga * gb}")


def _fiber_count(leg: GFunctor, b: int) -> int:
    return sum(1 for x in leg.domain.objects() if leg.on_object(x) == b)


def _discrete_oracle(ctx: LawContext) -> Outcome:
    f, g = composable_spans(ctx.rng, ctx.small(3, 3), 2, max_order=1)
    ctx.record(f=f, g=g)
    middle = f.right.base
    want = sum(_fiber_count(f.leg_r, b) * _fiber_count(g.leg_l, b) for b in middle.objects())
    got = gcard(span_compose(g, f).apex)
    if got != want:
        return Outcome(False, detail=f"span composite has gcard {got}, count {want}")
    if gcard(tensor(f, g).apex) != gcard(f.apex) * gcard(g.apex):
        return Outcome(False, detail="tensor apex is not the product of apexes")

    i_gpd, j_gpd, k_gpd = (ctx.groupoid(2, 2, max_order=1) for _ in range(3))
    p = random_polynomial(ctx.rng, i_gpd, j_gpd, ctx.small(2, 2), max_order=1)
    q = random_polynomial(ctx.rng, j_gpd, k_gpd, ctx.small(2, 2), max_order=1)
    sizes = [int(ctx.rng.integers(0, 4)) for _ in i_gpd.objects()]
    x = discrete_family(i_gpd, sizes, [tuple(range(sizes[i_gpd.source(u)])) for u in i_gpd.arrows()])
    ctx.record(p=p, q=q, x=x)
    for j in j_gpd.objects():
        got, want = gcard(eval_at(p, x, j)), classical_eval_count(p, sizes, j)
        if got != want:
            return Outcome(False, detail=f"evaluation at {j}: gcard {got}, count {want}")
    composite = poly_compose(q, p)
    for k in k_gpd.objects():
        got, want = gcard(eval_at(composite, x, k)), classical_compose_count(q, p, sizes, k)
        if got != want:
            return Outcome(False, detail=f"composite evaluation at {k}: gcard {got}, count {want}")
    return Outcome(True, witness="span composite, evaluations and composite evaluations match direct counts")


# =============================================================================
# CATALOG
# =============================================================================


CATALOG: list[Law] = [
    Law(
        LawId.SPAN_ASSOC,
        "Composition of spans is associative up to equivalence of spans.",
        "span",
        _span_assoc,
    ),
    Law(
        LawId.SPAN_UNIT,
        "Identity spans are units for composition; dualizing reverses composition.",
        "span",
        _span_unit,
    ),
    Law(
        LawId.SPAN_FUNCTOR_LIFT,
        "Pullback-preserving functors (− × G, − ⊎ G, bags) lift to functors on spans.",
        "span",
        _span_functor_lift,
        bounded=True,
    ),
    Law(
        LawId.SPAN_NAT_LIFT,
        "Cartesian natural transformations (factor swap, unit) lift to natural squares of spans.",
        "span",
        _span_nat_lift,
        bounded=True,
    ),
    Law(
        LawId.PRODUCT_UP,
        "Pairing into a ⊎ b and composing with the projections are mutually inverse.",
        "span",
        _product_up,
    ),
    Law(
        LawId.TERMINAL,
        "The empty groupoid is terminal and initial among spans.",
        "span",
        _terminal,
    ),
    Law(
        LawId.CURRY_ROUNDTRIP,
        "Currying and uncurrying spans are mutually inverse.",
        "span",
        _curry_roundtrip,
    ),
    Law(
        LawId.SNAKE,
        "The compact structure on a × a satisfies both snake identities.",
        "groupoid",
        _snake,
    ),
    Law(
        LawId.MONAD_TRIANGLES,
        "Flattening after either unit is the identity on bags.",
        "groupoid",
        _monad_triangles,
        bounded=True,
    ),
    Law(
        LawId.MONAD_SQUARE,
        "Flattening is associative on bags of bags of bags.",
        "groupoid",
        _monad_square,
        bounded=True,
    ),
    Law(
        LawId.ETA_NATURAL,
        "The singleton-bag unit is natural.",
        "functor",
        _eta_natural,
    ),
    Law(
        LawId.MU_NATURAL,
        "Flattening is natural.",
        "functor",
        _mu_natural,
        bounded=True,
    ),
    Law(
        LawId.ETA_CARTESIAN,
        "The naturality squares of the unit are homotopy pullbacks.",
        "functor",
        _eta_cartesian,
        bounded=True,
    ),
    Law(
        LawId.MU_CARTESIAN,
        "The naturality squares of flattening are homotopy pullbacks.",
        "functor",
        _mu_cartesian,
        bounded=True,
    ),
    Law(
        LawId.BANG_PRESERVES_PULLBACK,
        "The bag functor preserves homotopy pullbacks.",
        "functor",
        _bang_preserves_pullback,
        bounded=True,
    ),
    Law(
        LawId.COMONAD_COUNIT,
        "Both counit laws of the bag comonad hold on spans.",
        "groupoid",
        _comonad_counit,
        bounded=True,
    ),
    Law(
        LawId.SEELY_SQUARE,
        "Bags turn coproducts into products compatibly with flattening.",
        "groupoid",
        _seely_square,
        bounded=True,
    ),
    Law(
        LawId.MONOIDAL_1,
        "The Seely map is associative.",
        "groupoid",
        _monoidal(1),
        bounded=True,
    ),
    Law(
        LawId.MONOIDAL_2,
        "The Seely map is left unital.",
        "groupoid",
        _monoidal(2),
        bounded=True,
    ),
    Law(
        LawId.MONOIDAL_3,
        "The Seely map is right unital.",
        "groupoid",
        _monoidal(3),
        bounded=True,
    ),
    Law(
        LawId.MONOIDAL_4,
        "The Seely map is symmetric up to the carrier swap.",
        "groupoid",
        _monoidal(4),
        bounded=True,
    ),
    Law(
        LawId.POLY_UNIT,
        "Identity polynomials are units for composition; linear polynomials are spans.",
        "polynomial",
        _poly_unit,
    ),
    Law(
        LawId.POLY_ASSOC,
        "Composition of polynomials is associative up to equivalence.",
        "polynomial",
        _poly_assoc,
    ),
    Law(
        LawId.POLY_EVAL,
        "Evaluating a composite polynomial agrees with evaluating in stages.",
        "polynomial",
        _poly_eval,
    ),
    Law(
        LawId.KLEISLI_UNIT,
        "The counit is a two-sided identity for Kleisli composition.",
        "polynomial",
        _kleisli_unit,
        bounded=True,
    ),
    Law(
        LawId.KLEISLI_POLY_EQUIV,
        "Polynomials and Kleisli spans compose and unit the same way.",
        "polynomial",
        _kleisli_poly_equiv,
        bounded=True,
    ),
    Law(
        LawId.FIBERED_INDEXED_ROUNDTRIP,
        "Functors and families of groupoids correspond through fibers and total spaces.",
        "functor",
        _fibered_indexed_roundtrip,
    ),
    Law(
        LawId.GCARD_MULTIPLICATIVE,
        "Groupoid cardinality is multiplicative on products and additive on coproducts.",
        "groupoid",
        _gcard_multiplicative,
        bounded=True,
    ),
    Law(
        LawId.DISCRETE_ORACLE,
        "On sets, cardinalities of composites and evaluations match direct counts.",
        "span",
        _discrete_oracle,
    ),
]

_BY_ID: dict[LawId, Law] = {law.id: law for law in CATALOG}


def get_law(law_id: LawId | str) -> Law:
    return _BY_ID[LawId(law_id)]


def law_index(law_id: LawId | str) -> int:
    """Position of the law in the catalog; names its random stream."""
    return list(_BY_ID).index(LawId(law_id))


__all__ = [
    "CATALOG",
    "Law",
    "LawContext",
    "LawId",
    "Outcome",
    "get_law",
    "law_index",
]
