"""Expression and operator grammar."""

import pytest

from hypertrans.errors import ParseError
from hypertrans.field import FieldElem
from hypertrans.parse import parse_expr, parse_operator


def test_basic_expressions():
    x, t = FieldElem.x(), FieldElem.t()
    assert parse_expr("1 - t^2/x^2") == (x * x - t * t) / (x * x)
    assert parse_expr("(x+t)*(x-t)") == x ** 2 - t ** 2
    assert parse_expr("-x + 2") == FieldElem.const(2) - x
    assert parse_expr("3/2") == FieldElem.const(3) / FieldElem.const(2)


def test_negative_exponent_rejected():
    with pytest.raises(ParseError):
        parse_expr("x^-1")
    with pytest.raises(ParseError) as e:
        parse_expr("x^(-1)")
    assert e.value.position >= 0


def test_malformed_inputs():
    for bad in ("", "x +", "((x)", "x^t", "y", "1..2"):
        with pytest.raises(ParseError):
            parse_expr(bad)


def test_operator_parse():
    op = parse_operator("D^2 + (1/x)*D + (1 - t^2/x^2)")
    assert int(op.order) == 2
    x = FieldElem.x()
    t = FieldElem.t()
    assert op.coeffs[2] == FieldElem.const(1)
    assert op.coeffs[1] == FieldElem.const(1) / x
    assert op.coeffs[0] == FieldElem.const(1) - t * t / (x * x)


def test_operator_edge_cases():
    d = parse_operator("D")
    assert int(d.order) == 1 and d.coeffs[0].is_zero()
    c = parse_operator("3")
    assert int(c.order) == 0 and c.coeffs[0] == FieldElem.const(3)
    # coefficients may follow or precede nothing but D powers may repeat
    op = parse_operator("x*D + D")
    assert op.coeffs[1] == FieldElem.x() + FieldElem.const(1)


def test_roundtrip_through_str():
    for text in ("x", "t", "x/t", "(x^2 + t)/(x - 3)", "1/2*x + 1/3"):
        f = parse_expr(text)
        assert parse_expr(str(f)) == f
