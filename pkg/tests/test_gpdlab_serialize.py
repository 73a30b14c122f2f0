"""Tests for JSON artifacts: encoding, schema errors and dispatch."""

import json
from pathlib import Path

import pytest

from gpdlab.bang import counit_span, eta
from gpdlab.core.bags import Bag, BagMorphism
from gpdlab.core.families import FamilyOfGroupoids, constant_family
from gpdlab.core.groupoid import FinGroupoid, unit
from gpdlab.exceptions import GpdlabError, SchemaError
from gpdlab.models import SuiteReport
from gpdlab.poly import Polynomial, monomial
from gpdlab.serialize import (
    as_kleisli,
    dumps,
    encode_groupoid,
    encode_value,
    loads,
    parse_artifact,
    parse_data,
    to_jsonable,
    write_artifact,
)
from gpdlab.span import Span, span_id

# =============================================================================
# Encoding
# =============================================================================


class TestEncoding:
    """Artifacts to JSON."""

    def test_groupoid_layout(self, bz2: FinGroupoid) -> None:
        data = encode_groupoid(bz2)
        assert data["objects"] == 1
        assert [a["src"] for a in data["arrows"]] == [0, 0]
        assert len(data["compose"]) == 4

    def test_bag_layout(self) -> None:
        assert encode_value(Bag((0, 0))) == {"size": 2, "colors": [0, 0]}
        assert encode_value(BagMorphism(Bag((0,)), Bag((0,)), (0,), (0,))) == {
            "sigma": [0],
            "components": [0],
        }

    def test_output_is_byte_stable(self, two_point_span: Span) -> None:
        text = dumps(two_point_span)
        assert dumps(loads(text)) == text

    def test_functor_into_bags_is_not_an_artifact(self, disc2: FinGroupoid) -> None:
        with pytest.raises(GpdlabError, match="standalone"):
            to_jsonable(eta(disc2))


# =============================================================================
# Decoding and dispatch
# =============================================================================


class TestDecoding:
    """JSON back to validated artifacts."""

    def test_span_roundtrip(self, two_point_span: Span) -> None:
        assert loads(dumps(two_point_span)) == two_point_span

    def test_bang_endpoint_roundtrip(self, disc2: FinGroupoid) -> None:
        eps = counit_span(disc2)
        back = loads(dumps(eps))
        assert back.left == eps.left
        assert back.leg_l.on_object(1) == Bag((1,))

    def test_polynomial_dispatch(self) -> None:
        back = loads(dumps(monomial(2)))
        assert isinstance(back, Polynomial)
        assert back.E.object_count == 2

    def test_family_dispatch(self, bz2: FinGroupoid, disc2: FinGroupoid) -> None:
        back = loads(dumps(constant_family(bz2, disc2)))
        assert isinstance(back, FamilyOfGroupoids)
        assert back.fiber(0) == disc2

    def test_report_dispatch(self) -> None:
        report = SuiteReport(seed=3)
        assert parse_data(json.loads(dumps(report))) == report

    def test_file_roundtrip(self, tmp_path: Path, bz2: FinGroupoid) -> None:
        path = tmp_path / "bz2.json"
        write_artifact(bz2, path)
        assert parse_artifact(path) == bz2

    def test_kleisli_view(self, disc2: FinGroupoid) -> None:
        assert as_kleisli(counit_span(disc2)).domain == disc2


# =============================================================================
# Schema errors
# =============================================================================


class TestSchemaErrors:
    """Failures carry a JSON pointer to the offending value."""

    def test_invalid_json(self) -> None:
        with pytest.raises(SchemaError, match="invalid JSON"):
            loads("{not json")

    def test_not_an_object(self) -> None:
        with pytest.raises(SchemaError, match="JSON object"):
            loads("[1, 2]")

    def test_unrecognised_keys(self) -> None:
        with pytest.raises(SchemaError, match="unrecognised"):
            parse_data({"foo": 1})

    def test_unknown_field(self) -> None:
        data = encode_groupoid(unit())
        data["bogus"] = 1
        with pytest.raises(SchemaError) as exc:
            parse_data(data)
        assert exc.value.pointer == "/bogus"

    def test_broken_inverse(self, bz2: FinGroupoid) -> None:
        data = encode_groupoid(bz2)
        data["inverse"] = [0, 0]
        with pytest.raises(SchemaError) as exc:
            parse_data(data)
        assert exc.value.pointer == "/compose"

    def test_nested_error_is_reanchored(self, two_point_span: Span) -> None:
        data = json.loads(dumps(two_point_span))
        data["apex"]["arrows"][0]["src"] = 9
        with pytest.raises(SchemaError) as exc:
            parse_data(data)
        assert exc.value.pointer == "/apex/arrows/0/src"

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(SchemaError, match="cannot read"):
            parse_artifact(tmp_path / "absent.json")

    def test_plain_span_is_not_kleisli(self) -> None:
        with pytest.raises(SchemaError) as exc:
            as_kleisli(span_id(unit()))
        assert exc.value.pointer == "/left"
