"""Property-based checks on generated block groupoids."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gpdlab.core.equivalence import find_equivalence, gcard, skeletalize
from gpdlab.core.groupoid import validate_groupoid
from gpdlab.core.limits import coproduct, product
from gpdlab.laws.generators import block_groupoid, spec_arrows, spec_of

block = st.tuples(st.integers(1, 2), st.integers(1, 3))
specs = st.lists(block, min_size=0, max_size=3).map(tuple)
small_specs = st.lists(block, min_size=1, max_size=2).map(tuple)


@settings(max_examples=20, deadline=None)
@given(specs)
def test_block_groupoids_are_valid(spec) -> None:
    g = block_groupoid(spec)
    assert validate_groupoid(g).valid
    assert g.arrow_count == spec_arrows(spec)
    assert spec_of(g) == spec


@settings(max_examples=20, deadline=None)
@given(specs)
def test_gcard_sums_inverse_orders(spec) -> None:
    want = sum((Fraction(1, m) for _, m in spec), Fraction(0))
    assert gcard(block_groupoid(spec)) == want


@settings(max_examples=15, deadline=None)
@given(small_specs, small_specs)
def test_gcard_is_multiplicative_and_additive(s1, s2) -> None:
    a, b = block_groupoid(s1), block_groupoid(s2)
    assert gcard(product(a, b).groupoid) == gcard(a) * gcard(b)
    assert gcard(coproduct(a, b).groupoid) == gcard(a) + gcard(b)


@settings(max_examples=15, deadline=None)
@given(small_specs)
def test_skeleton_is_equivalent(spec) -> None:
    g = block_groupoid(spec)
    skel = skeletalize(g)
    assert skel.groupoid.object_count == len(spec)
    assert find_equivalence(g, skel.groupoid) is not None
