from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from ssharp.curves.field import QQ, CyclotomicField, cyclotomic_polynomial

t = sympy.symbols("t")


def test_cyclotomic_polynomials_match_sympy():
    for d in range(1, 25):
        want = sympy.Poly(sympy.cyclotomic_poly(d, t), t).all_coeffs()[::-1]
        assert list(cyclotomic_polynomial(d)) == [Fraction(int(c)) for c in want]


def test_zeta_powers():
    K = CyclotomicField(6)
    z = K.zeta()
    assert z ** 6 == 1 and z ** 3 == -1 and z ** 2 != 1
    assert K.zeta(7) == z
    assert CyclotomicField(2).zeta() == -1


def test_degrees_and_names():
    assert CyclotomicField(12).degree == 4
    assert str(QQ) == "Q" and str(CyclotomicField(5)) == "Q(zeta_5)"


elem = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=1,
                max_size=4)


def _sym(K, e):
    return sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(e.coeffs))


@given(st.sampled_from([3, 4, 5, 8, 12]), elem, elem)
def test_arithmetic_matches_sympy_reduction(d, a, b):
    K = CyclotomicField(d)
    x, y = K(a), K(b)
    mod = sympy.cyclotomic_poly(d, t)
    for got, want in ((x + y, _sym(K, x) + _sym(K, y)), (x * y, _sym(K, x) * _sym(K, y))):
        assert sympy.expand(sympy.rem(want - _sym(K, got), mod, t)) == 0


@given(st.sampled_from([3, 5, 7, 8]), elem)
def test_inverse(d, a):
    K = CyclotomicField(d)
    x = K(a)
    if not x.is_zero():
        assert x * x.inverse() == 1
        assert (x / x) == K.one()


def test_embedding_and_complex_value():
    K, L = CyclotomicField(3), CyclotomicField(6)
    w = K.zeta()
    assert w.embed(L) == L.zeta(2)
    assert abs(w.to_complex() - complex(-0.5, 3 ** 0.5 / 2)) < 1e-12


def test_printing():
    K = CyclotomicField(3)
    assert str(K([Fraction(-2, 3), Fraction(-1, 3)])) == "-1/3*w - 2/3"
    assert str(K(0)) == "0"


def test_rational_elements():
    K = CyclotomicField(5)
    assert K(Fraction(3, 4)).is_rational() and K(Fraction(3, 4)).to_fraction() == Fraction(3, 4)
    assert not K.zeta().is_rational()
