from __future__ import annotations

import random

import sympy
from hypothesis import given, strategies as st

from ssharp.module import (MINUS, PLUS, ModuleMap, basis, birth_map, death_map, frobenius,
                           identity, index_string, merge_map, parse_index, split_map, tensor,
                           torus_map, twist_scalar)
from ssharp.series import DEFAULT_ORDER, INFINITY, SeriesQ

N = DEFAULT_ORDER
t, X = sympy.symbols("t X")


def as_expr(s: SeriesQ):
    return sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(s.coeffs))


def oracle_product(a, b):
    """u_a * u_b in Q[t][X]/(X^2 - t^2), as {sign: coefficient}."""
    gen = {PLUS: sympy.Integer(1), MINUS: X}
    prod = sympy.rem(sympy.expand(gen[a] * gen[b]), X**2 - t**2, X)
    return {PLUS: sympy.expand(prod.coeff(X, 0)), MINUS: sympy.expand(prod.coeff(X, 1))}


def test_merge_matches_algebra_multiplication():
    m = merge_map(N)
    for a in (PLUS, MINUS):
        for b in (PLUS, MINUS):
            want = oracle_product(a, b)
            for s in (PLUS, MINUS):
                assert sympy.expand(as_expr(m.entry((s,), (a, b))) - want[s]) == 0


def test_stated_merge_values():
    m = merge_map(N)
    lam2 = SeriesQ.monomial(2, 1, N)
    assert m.image((MINUS, MINUS)) == {(PLUS,): lam2}
    assert m.image((MINUS, PLUS))[(MINUS,)] == 1
    assert m.image((PLUS, PLUS))[(PLUS,)] == 1


def test_torus_values():
    T = torus_map(N)
    assert T.image((PLUS,)) == {(MINUS,): SeriesQ.constant(2, N)}
    T2 = T @ T
    assert T2.image((PLUS,))[(PLUS,)] == SeriesQ.monomial(2, 4, N)
    assert T.valuation_pattern() == [[INFINITY, 2], [0, INFINITY]]


def test_torus_squared_is_scalar():
    assert torus_map(N) @ torus_map(N) == identity(1, N).scale(SeriesQ.monomial(2, 4, N))


def test_merge_split_is_torus_and_counit():
    assert merge_map(N) @ split_map(N) == torus_map(N)
    assert tensor(death_map(N), identity(1, N)) @ split_map(N) == identity(1, N)


def test_unit_law():
    for side in (0, 1):
        pieces = (birth_map(N), identity(1, N)) if side == 0 else (identity(1, N), birth_map(N))
        assert merge_map(N) @ tensor(*pieces) == identity(1, N)


def test_frobenius_axioms():
    assert all(frobenius(N).axioms().values())


def test_twist_scalars():
    plus = twist_scalar("+", N)
    assert plus.valuation() == 1 and plus.leading_coefficient() == -2
    assert twist_scalar("-", N) == SeriesQ.one(N)


def test_tensor_identities():
    assert tensor(identity(1, N), identity(2, N)) == identity(3, N)
    img = tensor(torus_map(N), identity(1, N)).image((PLUS, PLUS))
    assert img == {(MINUS, PLUS): SeriesQ.constant(2, N)}


def _random_map(rng: random.Random) -> ModuleMap:
    cols = {J: {I: SeriesQ.monomial(rng.randint(0, 3), rng.randint(-2, 2), N)
                for I in basis(1)} for J in basis(1)}
    return ModuleMap.from_columns(1, 1, cols, N)


@given(st.integers(0, 10_000))
def test_tensor_associative(seed):
    rng = random.Random(seed)
    f, g, h = (_random_map(rng) for _ in range(3))
    assert tensor(tensor(f, g), h) == tensor(f, tensor(g, h))


@given(st.integers(0, 10_000))
def test_composition_of_tensors(seed):
    rng = random.Random(seed)
    f, g, h, k = (_random_map(rng) for _ in range(4))
    assert tensor(f, g) @ tensor(h, k) == tensor(f @ h, g @ k)


def test_fixed_maps_have_monomial_entries():
    for m in (merge_map(N), split_map(N), birth_map(N), death_map(N), torus_map(N)):
        for row in m.entries:
            for e in row:
                assert e.exact_zero or sum(1 for c in e.coeffs if c) == 1


def test_index_strings():
    assert index_string((PLUS, MINUS)) == "+-"
    assert parse_index("+-+") == (PLUS, MINUS, PLUS)
    assert [index_string(I) for I in basis(2)] == ["++", "+-", "-+", "--"]


def test_json_round_trip():
    m = merge_map(N)
    assert ModuleMap.from_json(m.to_json()) == m
