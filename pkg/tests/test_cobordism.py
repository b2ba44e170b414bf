from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from ssharp.cobordism import (AddGenus, Birth, CobordismPresentation, Component, Curve, Death,
                              FingerMove, IllFormed, Merge, NegativeTwist, PositiveTwist, Split,
                              compose, disjoint_union, induced_map, validate)
from ssharp.module import identity, tensor, torus_map, twist_scalar
from ssharp.sampling import FuzzConfig, random_presentation
from ssharp.series import DEFAULT_ORDER, SeriesQ

N = DEFAULT_ORDER
U = [Component()]


def P(l, *moves):
    return CobordismPresentation(l, tuple(moves))


def test_ledger_examples():
    cyl = validate(P(1))
    assert (cyl.genus, cyl.p, cyl.component_preserving) == (0, 0, True)
    assert validate(P(1, AddGenus(0))).genus == 1
    assert validate(P(1, Birth(), Merge(0, 1))).genus == 0
    assert validate(P(1, AddGenus(0))).chi == -2


def test_induced_map_examples():
    assert induced_map(P(1, AddGenus(0))) == torus_map(N)
    tw = induced_map(P(1, PositiveTwist(0)))
    assert tw == identity(1, N).scale(twist_scalar("+", N))
    assert tw.valuation_pattern()[0][0] == tw.valuation_pattern()[1][1] == 1
    assert induced_map(P(1, Birth(), Merge(1, 0))) == identity(1, N)


def test_compose_examples():
    g = P(1, AddGenus(0))
    assert compose(g, P(1)) == g
    assert induced_map(compose(g, g)) == identity(1, N).scale(SeriesQ.monomial(2, 4, N))


def test_stacked_curves_merge_with_one_double_point():
    # a curve for K and a one-node curve for a torus knot, placed side by side and merged
    chain = P(1, Birth(), Curve((0,), (2,), 0, (0,), (0,)), Curve((1,), (0,), 1, (0,), (1,)),
              Merge(0, 1))
    led = validate(chain)
    assert led.p == 1 and led.genus == 2 and led.connected


def test_bad_moves_rejected():
    with pytest.raises(IllFormed):
        validate(P(1, Merge(0, 0)))
    with pytest.raises(IllFormed):
        validate(P(1, AddGenus(3)))
    with pytest.raises(IllFormed):
        Curve((0,), (1,), 0, (2,), (0,))
    with pytest.raises(IllFormed):
        compose(P(1, Split(0)), P(1))


def _pair(seed: int):
    rng = random.Random(seed)
    cfg = FuzzConfig(max_length=5)
    a = random_presentation(rng, U, cfg)
    kinds = validate(a).target_kinds
    b = random_presentation(rng, kinds, cfg)
    return a, b


@given(st.integers(0, 100_000))
def test_functoriality(seed):
    a, b = _pair(seed)
    kinds = validate(a).target_kinds
    assert induced_map(compose(a, b)) == induced_map(b, kinds) @ induced_map(a)


@given(st.integers(0, 100_000), st.integers(0, 100_000))
def test_disjoint_union_is_tensor(s1, s2):
    rng1, rng2 = random.Random(s1), random.Random(s2)
    cfg = FuzzConfig(max_length=4, curve_weight=0.0)
    a = random_presentation(rng1, U, cfg)
    b = random_presentation(rng2, U, cfg)
    union, perm = disjoint_union(a, b)
    assert induced_map(union).permute_target(perm) == tensor(induced_map(a), induced_map(b))


@given(st.integers(0, 100_000))
def test_homotopy_rewriting(seed):
    rng = random.Random(seed)
    a = random_presentation(rng, U, FuzzConfig(max_length=5))
    l = validate(a).target_components
    if l == 0:
        return
    c = rng.randrange(l)
    base = induced_map(a)
    scalar = twist_scalar("+", N)
    assert induced_map(a.then(FingerMove(c))) == base.scale(scalar)
    assert induced_map(a.then(PositiveTwist(c))) == base.scale(scalar)
    assert induced_map(a.then(NegativeTwist(c))) == base


@given(st.integers(0, 100_000))
def test_genus_invariant_under_disjoint_reordering(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 3)
    moves = [AddGenus(rng.randrange(k)) for _ in range(3)] + [PositiveTwist(rng.randrange(k))]
    shuffled = moves[:]
    rng.shuffle(shuffled)
    assert validate(P(k, *moves)).genus == validate(P(k, *shuffled)).genus


def test_json_round_trip():
    pres = P(1, Birth(), Curve((1,), (1,), 2, (0,), (1,)), Merge(0, 1), Split(0), Death(1))
    assert CobordismPresentation.from_json(pres.to_json()) == pres


def test_json_rejects_unknown_move():
    with pytest.raises(IllFormed):
        CobordismPresentation.from_json({"source_components": 1, "moves": [{"kind": "Twirl"}]})


def test_knotted_merge_has_ledger_but_no_map():
    chain = P(1, Birth(), Curve((0,), (1,), 0, (0,), (1,)), Curve((1,), (1,), 0, (0,), (1,)),
              Merge(0, 1))
    assert validate(chain).genus == 2
    with pytest.raises(IllFormed):
        induced_map(chain)
