from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ssharp.curves.bipoly import BiPoly
from ssharp.curves.field import CyclotomicField
from ssharp.parser import PolySyntaxError, format_poly, parse_field, parse_poly

x, y = BiPoly.x(), BiPoly.y()


def test_basic_polynomial():
    assert parse_poly("x^2 - y^3 - x*y") == x**2 - y**3 - x * y


def test_generator_in_declared_field():
    K = parse_field("zeta:2")
    P = parse_poly("((x)^2 - w*y^3)", K)
    assert P == BiPoly.x(K) ** 2 + BiPoly.y(K) ** 3


def test_round_trip():
    P = parse_poly("1/2*x*y + x")
    assert parse_poly(format_poly(P)) == P
    assert P == x * y * Fraction(1, 2) + x


def test_precedence():
    assert parse_poly("-x^2") == -(x**2)
    assert parse_poly("2^3^2") == BiPoly.const(2**9)
    assert parse_poly("x**2*y") == x**2 * y
    assert parse_poly("x - y - 1") == x - y - 1
    assert parse_poly("(x + y)^2 / 4") == (x + y) ** 2 / 4


@pytest.mark.parametrize("text,line,col", [
    ("x +", 1, 4), ("x $ y", 1, 3), ("x^y", 1, 2), ("x / y", 1, 3), ("(x", 1, 3),
    ("x\n + z", 2, 4), ("", 1, 1), ("x^(-1)", 1, 2),
])
def test_syntax_errors(text, line, col):
    with pytest.raises(PolySyntaxError) as err:
        parse_poly(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_generator_needs_field():
    with pytest.raises(PolySyntaxError):
        parse_poly("w*x")


def test_field_spec():
    assert parse_field(None) is None
    assert parse_field("zeta:5") == CyclotomicField(5)
    with pytest.raises(ValueError):
        parse_field("zeta5")


small = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                        st.fractions(min_value=-5, max_value=5, max_denominator=6), max_size=5)


@given(small)
def test_printer_parser_round_trip(terms):
    P = BiPoly(terms=terms)
    assert parse_poly(format_poly(P)) == P


@given(small.map(lambda t: {k: v for k, v in t.items() if v}),
       st.lists(st.integers(-2, 2), min_size=1, max_size=3))
def test_round_trip_over_cyclotomic_field(terms, gen):
    K = CyclotomicField(5)
    P = BiPoly(K, {k: K(v) * K(gen) for k, v in terms.items()})
    assert parse_poly(format_poly(P), K) == P
