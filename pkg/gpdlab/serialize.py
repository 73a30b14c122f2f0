"""JSON artifacts: groupoids, functors, spans, polynomials, families, reports.

Output is sorted-key, two-space indented JSON ending in a newline, so a
parsed artifact serializes back to the same bytes. Parsing validates the
schema with pydantic, then the invariants of the value; every failure is a
``SchemaError`` whose ``pointer`` locates the offending value.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from gpdlab.core.bags import Bag, BagMorphism, BangGroupoid
from gpdlab.core.families import FamilyOfGroupoids
from gpdlab.core.groupoid import FinGroupoid, GFunctor, validate_functor, validate_groupoid
from gpdlab.exceptions import GpdlabError, SchemaError
from gpdlab.kleisli import KleisliMorphism
from gpdlab.models import LawReport, SuiteReport
from gpdlab.poly import Polynomial
from gpdlab.span import Endpoint, Span

Artifact = Union[FinGroupoid, GFunctor, Span, Polynomial, FamilyOfGroupoids, LawReport, SuiteReport]

_DEPTH = {"gpd": 0, "bang": 1, "bangbang": 2}


# =============================================================================
# RAW SCHEMAS
# =============================================================================


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RawArrow(_Strict):
    id: int = Field(..., ge=0)
    src: int
    dst: int


class RawGroupoid(_Strict):
    objects: int = Field(..., ge=0, description="Number of objects")
    arrows: list[RawArrow] = Field(default_factory=list)
    compose: list[tuple[int, int, int]] = Field(
        default_factory=list, description="Entries [g, f, g∘f]"
    )
    identity: list[int] = Field(default_factory=list, description="Identity arrow per object")
    inverse: list[int] = Field(default_factory=list, description="Inverse per arrow")


class RawFunctorMaps(_Strict):
    obj: list[Any] = Field(default_factory=list)
    arr: list[Any] = Field(default_factory=list)


class RawFunctor(_Strict):
    domain: RawGroupoid
    codomain: RawGroupoid
    obj: list[int] = Field(default_factory=list)
    arr: list[int] = Field(default_factory=list)


class RawEndpoint(_Strict):
    kind: Literal["gpd", "bang", "bangbang"]
    base: RawGroupoid


class RawSpan(_Strict):
    left: RawEndpoint
    right: RawEndpoint
    apex: RawGroupoid
    leg_l: RawFunctorMaps
    leg_r: RawFunctorMaps


class RawPolynomial(_Strict):
    I: RawGroupoid  # noqa: E741
    J: RawGroupoid
    E: RawGroupoid
    B: RawGroupoid
    s: RawFunctorMaps
    p: RawFunctorMaps
    t: RawFunctorMaps


class RawFamily(_Strict):
    base: RawGroupoid
    fibers: list[RawGroupoid]
    transports: list[RawFunctorMaps]


def _pointer(loc: tuple) -> str:
    return "".join(f"/{part}" for part in loc)


def _validate(model: type[BaseModel], data: Any) -> Any:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise SchemaError(first["msg"], _pointer(first["loc"])) from e


@contextmanager
def _at(prefix: str) -> Iterator[None]:
    """Re-anchor nested schema errors under ``prefix``."""
    try:
        yield
    except SchemaError as e:
        raise SchemaError(e.message, prefix + e.pointer) from e


# =============================================================================
# ENCODING
# =============================================================================


def encode_value(value: Any) -> Any:
    if isinstance(value, Bag):
        return {"size": value.size, "colors": [encode_value(c) for c in value.colors]}
    if isinstance(value, BagMorphism):
        return {"sigma": list(value.sigma), "components": [encode_value(c) for c in value.components]}
    return value


def encode_groupoid(g: FinGroupoid) -> dict:
    return {
        "objects": g.object_count,
        "arrows": [{"id": a, "src": g.source(a), "dst": g.target(a)} for a in g.arrows()],
        "compose": [list(item) for item in g.compose_items()],
        "identity": list(g.identities),
        "inverse": list(g.inverses),
    }


def encode_maps(f: GFunctor) -> dict:
    return {"obj": [encode_value(v) for v in f.obj_map], "arr": [encode_value(v) for v in f.arr_map]}


def encode_endpoint(end: Endpoint) -> dict:
    return {"kind": end.kind, "base": encode_groupoid(end.base)}


def encode_span(s: Span) -> dict:
    return {
        "left": encode_endpoint(s.left),
        "right": encode_endpoint(s.right),
        "apex": encode_groupoid(s.apex),
        "leg_l": encode_maps(s.leg_l),
        "leg_r": encode_maps(s.leg_r),
    }


def to_jsonable(value: Any) -> Any:
    """JSON-ready form of any artifact."""
    if isinstance(value, FinGroupoid):
        return encode_groupoid(value)
    if isinstance(value, KleisliMorphism):
        return encode_span(value.carrier)
    if isinstance(value, Span):
        return encode_span(value)
    if isinstance(value, Polynomial):
        return {
            "I": encode_groupoid(value.I),
            "J": encode_groupoid(value.J),
            "E": encode_groupoid(value.E),
            "B": encode_groupoid(value.B),
            "s": encode_maps(value.s),
            "p": encode_maps(value.p),
            "t": encode_maps(value.t),
        }
    if isinstance(value, FamilyOfGroupoids):
        return {
            "base": encode_groupoid(value.base),
            "fibers": [encode_groupoid(f) for f in value.fibers],
            "transports": [encode_maps(t) for t in value.transports],
        }
    if isinstance(value, GFunctor):
        if not isinstance(value.codomain, FinGroupoid):
            raise GpdlabError("only functors between finite groupoids are standalone artifacts")
        return {
            "domain": encode_groupoid(value.domain),
            "codomain": encode_groupoid(value.codomain),
            **encode_maps(value),
        }
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    return encode_value(value)


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_artifact(value: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(value), encoding="utf-8")


# =============================================================================
# DECODING
# =============================================================================


def decode_groupoid(raw: RawGroupoid) -> FinGroupoid:
    ordered = sorted(range(len(raw.arrows)), key=lambda k: raw.arrows[k].id)
    for rank, k in enumerate(ordered):
        if raw.arrows[k].id != rank:
            raise SchemaError(f"arrow ids must be 0..{len(raw.arrows) - 1}", f"/arrows/{k}/id")
    arrows = [raw.arrows[k] for k in ordered]
    table: dict[tuple[int, int], int] = {}
    for pos, (g, f, h) in enumerate(raw.compose):
        if (g, f) in table:
            raise SchemaError(f"duplicate compose entry for {(g, f)}", f"/compose/{pos}")
        table[(g, f)] = h
    gpd = FinGroupoid(
        raw.objects,
        [a.src for a in arrows],
        [a.dst for a in arrows],
        table,
        raw.identity,
        raw.inverse,
    )
    report = validate_groupoid(gpd)
    if not report.valid:
        v = report.violations[0]
        raise SchemaError(f"{v.law} fails at arrows {v.arrows}: {v.detail}", "/compose")
    return gpd


def _int(raw: Any, pointer: str) -> int:
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise SchemaError("expected an integer", pointer)
    return raw


def decode_object(raw: Any, base: FinGroupoid, depth: int, pointer: str) -> Any:
    """An object of ``base``, ``!base`` or ``!!base`` by ``depth``."""
    if depth == 0:
        x = _int(raw, pointer)
        if not 0 <= x < base.object_count:
            raise SchemaError(f"object {x} is out of range", pointer)
        return x
    if not isinstance(raw, dict) or set(raw) != {"size", "colors"}:
        raise SchemaError("expected a bag {size, colors}", pointer)
    colors = raw["colors"]
    if not isinstance(colors, list) or raw["size"] != len(colors):
        raise SchemaError("bag size does not match its colors", pointer)
    return Bag(
        tuple(decode_object(c, base, depth - 1, f"{pointer}/colors/{i}") for i, c in enumerate(colors))
    )


def decode_arrow(raw: Any, base: FinGroupoid, depth: int, source: Any, target: Any, pointer: str) -> Any:
    """An arrow ``source → target`` of ``base``, ``!base`` or ``!!base``."""
    if depth == 0:
        a = _int(raw, pointer)
        if not 0 <= a < base.arrow_count:
            raise SchemaError(f"arrow {a} is out of range", pointer)
        if base.source(a) != source or base.target(a) != target:
            raise SchemaError(f"arrow {a} does not go {source} → {target}", pointer)
        return a
    if not isinstance(raw, dict) or set(raw) != {"sigma", "components"}:
        raise SchemaError("expected a bag morphism {sigma, components}", pointer)
    sigma, comps = raw["sigma"], raw["components"]
    n = source.size
    if target.size != n or not isinstance(sigma, list) or sorted(sigma) != list(range(n)):
        raise SchemaError("sigma is not a permutation of the carrier", f"{pointer}/sigma")
    if not isinstance(comps, list) or len(comps) != n:
        raise SchemaError("need one component per carrier element", f"{pointer}/components")
    decoded = tuple(
        decode_arrow(c, base, depth - 1, source.colors[i], target.colors[sigma[i]], f"{pointer}/components/{i}")
        for i, c in enumerate(comps)
    )
    return BagMorphism(source, target, tuple(sigma), decoded)


def decode_maps(raw: RawFunctorMaps, domain: FinGroupoid, end: Endpoint, pointer: str) -> GFunctor:
    depth = _DEPTH[end.kind]
    if len(raw.obj) != domain.object_count:
        raise SchemaError(f"expected {domain.object_count} object images", f"{pointer}/obj")
    if len(raw.arr) != domain.arrow_count:
        raise SchemaError(f"expected {domain.arrow_count} arrow images", f"{pointer}/arr")
    obj = tuple(
        decode_object(v, end.base, depth, f"{pointer}/obj/{x}") for x, v in enumerate(raw.obj)
    )
    arr = tuple(
        decode_arrow(
            v,
            end.base,
            depth,
            obj[domain.source(a)],
            obj[domain.target(a)],
            f"{pointer}/arr/{a}",
        )
        for a, v in enumerate(raw.arr)
    )
    f = GFunctor(domain, end.view, obj, arr)
    report = validate_functor(f)
    if not report.valid:
        v = report.violations[0]
        raise SchemaError(f"{v.law} fails at arrows {v.arrows}", pointer)
    return f


def _groupoid_at(raw: RawGroupoid, pointer: str) -> FinGroupoid:
    with _at(pointer):
        return decode_groupoid(raw)


def decode_span(raw: RawSpan) -> Span:
    left = Endpoint(raw.left.kind, _groupoid_at(raw.left.base, "/left/base"))
    right = Endpoint(raw.right.kind, _groupoid_at(raw.right.base, "/right/base"))
    apex = _groupoid_at(raw.apex, "/apex")
    return Span(
        left,
        right,
        apex,
        decode_maps(raw.leg_l, apex, left, "/leg_l"),
        decode_maps(raw.leg_r, apex, right, "/leg_r"),
    )


def decode_polynomial(raw: RawPolynomial) -> Polynomial:
    i = _groupoid_at(raw.I, "/I")
    j = _groupoid_at(raw.J, "/J")
    e = _groupoid_at(raw.E, "/E")
    b = _groupoid_at(raw.B, "/B")
    return Polynomial(
        i,
        j,
        e,
        b,
        decode_maps(raw.s, e, Endpoint.gpd(i), "/s"),
        decode_maps(raw.p, e, Endpoint.gpd(b), "/p"),
        decode_maps(raw.t, b, Endpoint.gpd(j), "/t"),
    )


def decode_family(raw: RawFamily) -> FamilyOfGroupoids:
    base = _groupoid_at(raw.base, "/base")
    if len(raw.fibers) != base.object_count:
        raise SchemaError(f"expected {base.object_count} fibers", "/fibers")
    if len(raw.transports) != base.arrow_count:
        raise SchemaError(f"expected {base.arrow_count} transports", "/transports")
    fibers = tuple(_groupoid_at(f, f"/fibers/{k}") for k, f in enumerate(raw.fibers))
    transports = tuple(
        decode_maps(
            t,
            fibers[base.source(u)],
            Endpoint.gpd(fibers[base.target(u)]),
            f"/transports/{u}",
        )
        for u, t in enumerate(raw.transports)
    )
    try:
        return FamilyOfGroupoids(base, fibers, transports)
    except GpdlabError as e:
        raise SchemaError(str(e), "/transports") from e


def decode_functor(raw: RawFunctor) -> GFunctor:
    domain = _groupoid_at(raw.domain, "/domain")
    codomain = _groupoid_at(raw.codomain, "/codomain")
    maps = RawFunctorMaps(obj=list(raw.obj), arr=list(raw.arr))
    return decode_maps(maps, domain, Endpoint.gpd(codomain), "")


def parse_data(data: Any) -> Artifact:
    """Dispatch on the top-level keys and decode."""
    if not isinstance(data, dict):
        raise SchemaError("artifact must be a JSON object")
    keys = set(data)
    if {"left", "right", "apex"} <= keys:
        return decode_span(_validate(RawSpan, data))
    if {"I", "J", "E", "B"} <= keys:
        return decode_polynomial(_validate(RawPolynomial, data))
    if {"fibers", "transports"} <= keys:
        return decode_family(_validate(RawFamily, data))
    if {"domain", "codomain"} <= keys:
        return decode_functor(_validate(RawFunctor, data))
    if {"objects", "arrows"} <= keys:
        return decode_groupoid(_validate(RawGroupoid, data))
    if {"seed", "laws"} <= keys:
        return _validate(SuiteReport, data)
    if {"law", "instances"} <= keys:
        return _validate(LawReport, data)
    raise SchemaError(f"unrecognised artifact with keys {sorted(keys)}")


def loads(text: str) -> Artifact:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} (line {e.lineno})") from e
    return parse_data(data)


def parse_artifact(path: str | Path) -> Artifact:
    """Read, schema-check and validate an artifact file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from e
    return loads(text)


def as_kleisli(s: Span) -> KleisliMorphism:
    """View a ``!I ⇸ J`` span as a Kleisli morphism."""
    try:
        return KleisliMorphism.of(s)
    except GpdlabError as e:
        raise SchemaError(str(e), "/left") from e


__all__ = [
    "Artifact",
    "as_kleisli",
    "decode_groupoid",
    "dumps",
    "encode_groupoid",
    "encode_span",
    "encode_value",
    "loads",
    "parse_artifact",
    "parse_data",
    "to_jsonable",
    "write_artifact",
]
