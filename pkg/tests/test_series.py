from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ssharp.series import (DEFAULT_ORDER, INFINITY, LaurentU, PrecisionExhausted, SeriesQ,
                           TruncationMismatch, add, embed_laurent_u, mul, scale, u_series,
                           valuation)

N = DEFAULT_ORDER
lam = SeriesQ.lam(N)


def _oracle_u(order: int) -> list[Fraction]:
    # closed-form root of (u - 1)^2 = u lambda^2, expanded by sympy
    t = sympy.symbols("t")
    expr = 1 + (t**2 + t * sympy.sqrt(t**2 + 4)) / 2
    poly = sympy.series(expr, t, 0, order).removeO()
    return [Fraction(str(poly.coeff(t, k))) for k in range(order)]


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
series = st.lists(rationals, max_size=6).map(lambda cs: SeriesQ(tuple(cs), N))
laurent = st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=4).map(
    LaurentU.from_dict)


def test_monomial_product():
    assert mul(lam, lam) == SeriesQ.monomial(2, 1, N)


@given(series)
def test_additive_inverse_is_exact_zero(x):
    z = add(x, scale(-1, x))
    assert z.exact_zero if x.exact else z == SeriesQ.zero(N)


def test_difference_of_squares():
    assert mul(1 + lam, 1 - lam) == 1 - SeriesQ.monomial(2, 1, N)


def test_valuations():
    assert valuation(mul(SeriesQ.monomial(3, 1, N), 2 + lam)) == 3
    assert valuation(SeriesQ.zero(N)) == INFINITY


def test_u_series_matches_closed_form():
    u = u_series(N)
    assert list(u.coeffs[:5]) == [1, 1, Fraction(1, 2), Fraction(1, 8), 0]
    oracle = _oracle_u(N)
    assert [u[k] for k in range(N)] == oracle


def test_u_series_defining_equation():
    u = u_series(N)
    assert (u - 1) * (u - 1) - u * SeriesQ.monomial(2, 1, N) == SeriesQ.zero(N)
    assert valuation(u - 1) == 1


def test_embed_lambda_squared():
    p = LaurentU.u(-1) * (LaurentU.u(1) - 1) ** 2
    assert embed_laurent_u(p, N) == SeriesQ.monomial(2, 1, N)
    assert embed_laurent_u(LaurentU.constant(1), N) == SeriesQ.one(N)


def test_embed_one_minus_u_squared():
    s = embed_laurent_u(1 - LaurentU.u(2), N)
    assert valuation(s) == 1
    assert s.leading_coefficient() == -2


@given(series, series)
def test_valuation_multiplicative(a, b):
    va, vb = valuation(a), valuation(b)
    if va != INFINITY and vb != INFINITY and va + vb < N:
        assert valuation(mul(a, b)) == va + vb


@given(series, series)
def test_valuation_ultrametric(a, b):
    va, vb = valuation(a), valuation(b)
    vs = valuation(add(a, b))
    assert vs >= min(va, vb)
    if va != vb:
        assert vs == min(va, vb)


@given(laurent, laurent)
def test_embed_is_ring_homomorphism(p, q):
    assert embed_laurent_u(p * q, N) == embed_laurent_u(p, N) * embed_laurent_u(q, N)
    assert embed_laurent_u(p + q, N) == embed_laurent_u(p, N) + embed_laurent_u(q, N)


def test_truncation_zero_is_not_structural():
    # lambda^30 is invisible at order 24 but was dropped, so it is not exact zero
    tiny = SeriesQ.monomial(30, 1, N)
    assert not tiny.exact_zero
    with pytest.raises(PrecisionExhausted):
        tiny.valuation()


def test_mismatched_orders_rejected():
    with pytest.raises(TruncationMismatch):
        SeriesQ.one(8) + SeriesQ.one(12)


@given(series)
def test_inverse_of_unit(a):
    if a.is_unit():
        assert a * a.inverse() == SeriesQ.one(N)


def test_string_round_trip():
    s = u_series(N)
    assert SeriesQ.from_strings(s.to_strings()) == s
