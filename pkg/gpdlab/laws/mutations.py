"""Documented seeded defects for checking that the law suite has teeth.

Each defect swaps one internal helper for a subtly wrong version while the
context manager is active. The suite must fail on every one of them.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Any, Callable, Iterator, Sequence
from unittest.mock import patch

from gpdlab.bang import Injection, _flatten_order, _seely_components
from gpdlab.core.bags import BagMorphism
from gpdlab.core.limits import _connecting_arrows


def _rotated_flatten_order(sizes: Sequence[int]) -> list[tuple[int, int]]:
    order = _flatten_order(sizes)
    return order[1:] + order[:1]


def _dropped_right_components(m: BagMorphism, n: BagMorphism, inj1: Injection, inj2: Injection) -> tuple:
    kept = _seely_components(m, n, inj1, inj2)[: len(m.components)]
    return kept + tuple(inj2.codomain.identity(inj2.on_object(c)) for c in n.source.colors)


def _first_connecting_arrow(z: Any, fx: Any, gy: Any) -> Sequence[Any]:
    return list(_connecting_arrows(z, fx, gy))[:1]


MUTATIONS: dict[str, tuple[str, str, Callable[..., Any]]] = {
    "mu-flatten-order": (
        "gpdlab.bang._flatten_order",
        "flattening starts one position late and wraps around",
        _rotated_flatten_order,
    ),
    "l2-dropped-component": (
        "gpdlab.bang._seely_components",
        "the Seely map forgets the components of its right argument",
        _dropped_right_components,
    ),
    "hpullback-missing-gamma": (
        "gpdlab.core.limits._connecting_arrows",
        "homotopy pullbacks keep only the first connecting isomorphism",
        _first_connecting_arrow,
    ),
}


def describe(name: str) -> str:
    return MUTATIONS[name][1]


@contextmanager
def seeded_defect(name: str | None) -> Iterator[None]:
    """Run the body with the named defect switched on; ``None`` is a no-op."""
    if name is None:
        yield
        return
    if name not in MUTATIONS:
        raise KeyError(f"unknown mutation {name!r}; known: {', '.join(sorted(MUTATIONS))}")
    target, _, replacement = MUTATIONS[name]
    with patch(target, replacement):
        yield


__all__ = ["MUTATIONS", "describe", "seeded_defect"]
