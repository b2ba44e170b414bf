from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from ssharp.curves.bipoly import BiPoly, UPoly
from ssharp.curves.field import QQ, CyclotomicField
from ssharp.curves.resultant import coprime, resultant, sylvester_matrix, univariate_resultant
from ssharp.curves.singular import to_sympy

X, Y, T = sympy.symbols("x y t")
x, y = BiPoly.x(), BiPoly.y()


def bipolys(field=QQ, max_deg=3):
    gen = st.integers(-3, 3) if field.d == 1 else st.lists(st.integers(-2, 2), min_size=1,
                                                             max_size=field.degree)
    key = st.tuples(st.integers(0, max_deg), st.integers(0, max_deg))
    return st.dictionaries(key, gen, max_size=5).map(
        lambda d: BiPoly(field, {k: field(v) for k, v in d.items()}))


def _sym_upoly(p: UPoly, var):
    return sum(sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator) * var**i
               for i, c in enumerate(p.coeffs))


# -- BiPoly -----------------------------------------------------------------------

def test_printing():
    assert str(x**2 - y**3 - x * y) == "-y^3 + x^2 - x*y"
    K = CyclotomicField(4)
    P = x.change_field(K) ** 2 * y.change_field(K) * (K.zeta() ** 3 + 2) \
        + y.change_field(K) * (-K.zeta()) + Fraction(3, 4)
    assert str(P) == "(-w + 2)*x^2*y + (-w)*y + 3/4"


@given(bipolys(), bipolys())
def test_ring_operations_match_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sympy.expand(to_sympy(f - g) - (to_sympy(f) - to_sympy(g))) == 0


@given(bipolys())
def test_derivatives_match_sympy(f):
    assert sympy.expand(to_sympy(f.diff_x()) - sympy.diff(to_sympy(f), X)) == 0
    assert sympy.expand(to_sympy(f.diff_y()) - sympy.diff(to_sympy(f), Y)) == 0


@given(bipolys(), st.integers(-3, 3), st.integers(-3, 3))
def test_shift_and_evaluate(f, a, b):
    shifted = f.shift(a, b)
    assert shifted(0, 0) == f(a, b)
    assert sympy.expand(to_sympy(shifted) - to_sympy(f).subs({X: X + a, Y: Y + b},
                                                               simultaneous=True)) == 0


def test_degrees_and_parts():
    P = x**3 * y + y**2 - 5
    assert (P.deg_x, P.deg_y, P.total_degree) == (3, 2, 4)
    assert P.homogeneous_part(2) == y**2
    assert P.specialize("y", 1) == UPoly(QQ, [-4, 0, 0, 1])


# -- UPoly -----------------------------------------------------------------------

upolys = st.lists(st.integers(-4, 4), max_size=5).map(lambda cs: UPoly(QQ, cs))


@given(upolys, upolys)
def test_division_with_remainder(a, b):
    assume(not b.is_zero())
    q, r = divmod(a, b)
    assert q * b + r == a and r.degree < b.degree


@given(upolys, upolys)
def test_gcd_matches_sympy(a, b):
    assume(not (a.is_zero() and b.is_zero()))
    g = a.gcd(b)
    want = sympy.Poly(sympy.gcd(_sym_upoly(a, T), _sym_upoly(b, T)), T)
    assert g.degree == want.degree()


def test_squarefree():
    assert UPoly(QQ, [-1, 0, 1]).is_squarefree()
    assert not UPoly(QQ, [1, 2, 1]).is_squarefree()


# -- resultants ------------------------------------------------------------------------

def test_small_resultants():
    assert resultant(x - y, x + y, "x") == UPoly(QQ, [0, 2])
    assert resultant(x**2 - y**3, (x**2 - y**3).diff_x(), "x") == UPoly(QQ, [0, 0, 0, -4])


def test_sylvester_layout():
    f, g = UPoly(QQ, [1, 2]), UPoly(QQ, [3, 0, 1])
    rows = sylvester_matrix(f, g)
    assert [[int(c.to_fraction()) for c in r] for r in rows] == [[2, 1, 0], [0, 2, 1], [1, 0, 3]]
    assert univariate_resultant(f, g) == QQ(13)


@given(bipolys(max_deg=2), bipolys(max_deg=2))
def test_resultant_matches_sympy(f, g):
    assume(f.deg_x > 0 and g.deg_x > 0)
    want = sympy.Poly(sympy.resultant(to_sympy(f), to_sympy(g), X), Y)
    got = resultant(f, g, "x")
    assert sympy.expand(_sym_upoly(got, Y) - want.as_expr()) == 0


@given(bipolys(max_deg=2), bipolys(max_deg=2), bipolys(max_deg=2))
def test_resultant_multiplicative(f, g, h):
    assume(min(f.deg_y, g.deg_y, h.deg_y) > 0)
    assert resultant(f * g, h, "y") == resultant(f, h, "y") * resultant(g, h, "y")


@given(bipolys(max_deg=2))
def test_common_factor_gives_zero(f):
    assume(f.deg_x > 0)
    assert resultant((x - y) * f, (x - y) * (f + 1), "x").is_zero()
    assert not coprime((x - y) * f, x - y)


def test_coprime():
    assert coprime(x**2 - y**3, x - 1)
    assert not coprime((x - y) ** 2, x - y)


def test_resultant_over_cyclotomic_field():
    K = CyclotomicField(3)
    w = K.zeta()
    xk, yk = BiPoly.x(K), BiPoly.y(K)
    r = resultant(xk**2 - yk * w, xk - 1, "x")
    # Res_x(x^2 - w y, x - 1) = 1 - w y  (sign fixed by f-rows-first layout)
    assert r == UPoly(K, [K(1), -w])


def test_mismatched_fields_rejected():
    with pytest.raises(ValueError):
        x + BiPoly.x(CyclotomicField(3))
