import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys
from jacmap.analyzer import certify
from jacmap.parse_io import (
    ArityError,
    NegativeExponent,
    ParseError,
    UnknownIdentifier,
    emit_certificate,
    format_map,
    format_poly,
    load_certificate,
    parse_map,
    parse_poly,
)
from jacmap.poly import Poly2, PolyMap, X, Y


def test_parse_gapset_example():
    assert parse_poly("x^3 + y^3 + x^2*y^2 + y^7") == X**3 + Y**3 + X**2 * Y**2 + Y**7


def test_parse_zero():
    assert parse_poly("0").is_zero()
    assert parse_poly("x - x").is_zero()


def test_parse_cubic_example():
    p = parse_poly("2*x - y + x^3 + x^2*y + (1/3)*x*y^2 + (1/27)*y^3")
    assert p == Poly2({(1, 0): 2, (0, 1): -1, (3, 0): 1, (2, 1): 1,
                       (1, 2): Fraction(1, 3), (0, 3): Fraction(1, 27)})


@pytest.mark.parametrize("text,expected", [
    ("(1/27)y^3", Poly2({(0, 3): Fraction(1, 27)})),
    ("(x+1)y", X * Y + Y),
    ("-x^2", -(X**2)),
    ("--x", X),
    ("(x+y)^2", X**2 + 2 * X * Y + Y**2),
    ("  2 *\tx ", 2 * X),
    ("3/6", Poly2.const(Fraction(1, 2))),
    ("x^0", Poly2.const(1)),
    ("x − y", X - Y),
])
def test_grammar(text, expected):
    assert parse_poly(text) == expected


@pytest.mark.parametrize("text,exc", [
    ("2x", ParseError),
    ("x y", ParseError),
    ("z + 1", UnknownIdentifier),
    ("x^-1", NegativeExponent),
    ("x^y", ParseError),
    ("x/2", ParseError),
    ("1/0", ParseError),
    ("(x + 1", ParseError),
    ("x +", ParseError),
    ("", ParseError),
    ("x^2^2", ParseError),
    ("x^100000", ParseError),
    ("#", ParseError),
    ("(" * 500 + "x" + ")" * 500, ParseError),
    ("-" * 500 + "x", ParseError),
])
def test_syntax_errors(text, exc):
    with pytest.raises(exc):
        parse_poly(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x + 2x")
    assert info.value.pos == 5


def test_parse_map_examples():
    assert parse_map("(x + y^3, y)") == PolyMap(X + Y**3, Y)
    assert parse_map("(x, y)").is_identity()
    assert parse_map("(x + y^2, x^6 + y^2)") == PolyMap(X + Y**2, X**6 + Y**2)
    assert parse_map("x + y^3; y") == PolyMap(X + Y**3, Y)
    assert parse_map("(x+1)*y; y") == PolyMap(X * Y + Y, Y)


@pytest.mark.parametrize("text", ["(x, y, x)", "(x)", "x", "x; y; 1"])
def test_parse_map_arity(text):
    with pytest.raises(ArityError):
        parse_map(text)


def test_format_canonical_order():
    assert format_poly(parse_poly("y^7 + x^2*y^2 + y^3 + x^3")) == "x^3 + y^3 + x^2*y^2 + y^7"
    assert format_poly(parse_poly("-y^3 + x")) == "x - y^3"
    assert format_poly(parse_poly("-1/3 + (2/5)*x*y - x")) == "-1/3 - x + (2/5)*x*y"
    assert format_map(parse_map("(x - y^3, y)")) == "(x - y^3, y)"


@given(polys(max_exp=6, max_terms=10))
def test_roundtrip(p):
    assert parse_poly(format_poly(p)) == p


@settings(max_examples=300)
@given(st.one_of(st.text(), st.binary()))
def test_parser_is_total(data):
    try:
        parse_poly(data)
    except ParseError:
        pass
    try:
        parse_map(data)
    except ParseError:
        pass


@settings(max_examples=300)
@given(st.text(alphabet="xy0123456789+-*^/()., ;z", max_size=30))
def test_parser_is_total_on_grammar_alphabet(data):
    try:
        parse_map(data)
    except ParseError:
        pass


def test_certificate_identity():
    doc = json.loads(emit_certificate(certify(PolyMap.identity())))
    assert doc["schema"] == "jacmap-cert/1"
    assert doc["verdict"] == "invertible"
    assert doc["mechanism"] == "linear nonsingular"


def test_certificate_shear_lists_conditions():
    doc = json.loads(emit_certificate(certify(parse_map("(x + y^3, y)"))))
    assert doc["conditions"]["theorem2"] == ["i", "iii", "iv"]
    assert doc["verdict"] == "invertible"
    assert doc["jacobian"]["det_value"] == "1/1"


def test_certificate_not_jacobian():
    doc = json.loads(emit_certificate(certify(parse_map("(x^2, y)"))))
    assert doc["verdict"] == "not a jacobian map"
    assert doc["jacobian"]["det"]["text"] == "2*x"


def test_certificate_sorted_and_deterministic():
    text = emit_certificate(certify(parse_map("(2*x - y + (1/3)*x^3, 3*x - 3*y + x^3)")))
    assert text == emit_certificate(certify(parse_map("(2*x - y + (1/3)*x^3, 3*x - 3*y + x^3)")))
    doc = json.loads(text)
    assert list(doc) == sorted(doc)


@pytest.mark.parametrize("text", [
    "(x + y^3, y)", "(x, y)", "(x^2, y)", "(x + y^2, x^6 + y^2)",
    "(1 + x + y^2, 2 + y)", "(x + y^2, y + (x + y^2)^2)",
    "(2*x - y + x^3 + x^2*y + (1/3)*x*y^2 + (1/27)*y^3, 3*x - 3*y + (12/5)*x^3 + (12/5)*x^2*y + (4/5)*x*y^2 + (4/45)*y^3)",
])
def test_certificate_roundtrip(text):
    cert = certify(parse_map(text))
    again = load_certificate(emit_certificate(cert))
    assert again == cert
    assert emit_certificate(again) == emit_certificate(cert)


def test_load_rejects_unknown_schema():
    doc = json.loads(emit_certificate(certify(PolyMap.identity())))
    doc["schema"] = "other/9"
    with pytest.raises(ValueError):
        load_certificate(json.dumps(doc))
