from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from ssharp.cobordism import (AddGenus, Birth, CobordismPresentation, Component, Curve, Merge,
                              Split, validate)
from ssharp.curves.certificate import certify_connected_sum, certify_family, certify_torus_knot
from ssharp.deduction import deduce_valuations
from ssharp.invariants import (NotComponentPreserving, NotConnected, check_difference_bounds,
                               check_inequality_component, check_inequality_total,
                               closed_form_torus_link, curve_invariants, curve_presentations,
                               difference_matrix, inequality_component_rows,
                               inequality_total_row, node_smoothing_system, node_valuations,
                               quasipositive_bounds, quasipositive_system, s_sharp_I,
                               s_sharp_I_table, s_sharp_pm, s_sharp_total, switching_crossings,
                               torus_link_crosscheck)
from ssharp.sampling import connected_corpus, random_component_preserving

EMPTY = CobordismPresentation(1, ())
TREFOIL = CobordismPresentation(1, (Curve((0,), (0,), 1, (0,), (1,)),))


def hand_pm(g, p, mp, mm):
    # s_+/s_- of a single curve piece on the unknot, evaluated by hand
    if g % 2 == 0:
        return g + p - mp, g + p - mm
    return g + p - mm + 1, g + p - mp - 1


def test_unknot_and_torus():
    assert s_sharp_pm(EMPTY) == (0, 0)
    # torus map: u_+ -> 2u_-, u_- -> 2 lambda^2 u_+, so m = (0, 2) with odd genus
    assert s_sharp_pm(CobordismPresentation(1, (AddGenus(0),))) == hand_pm(1, 0, 0, 2) == (0, 0)


def test_trefoil_node_presentation():
    assert curve_presentations(certify_torus_knot(2, 3))[1] == TREFOIL
    assert s_sharp_pm(TREFOIL) == (1, 0)
    assert s_sharp_total(TREFOIL) == 1


@given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 2))
def test_single_curve_matches_hand_formula(g, p, gap):
    pres = CobordismPresentation(1, (Curve((0,), (g,), p, (0,), (gap,)),))
    assert s_sharp_pm(pres) == hand_pm(g, p, 0, gap)


def test_s_I_examples():
    assert s_sharp_I(EMPTY, "+") == 0
    per_component, _ = curve_presentations(certify_family(2, 3, 2))
    # two genus-0 nodal pieces with 8 double points: s_I = 8 - n(I) by the same hand rule
    assert s_sharp_I_table(per_component) == {"++": 8, "+-": 7, "-+": 7, "--": 6}


def test_closed_form_values():
    assert closed_form_torus_link(2, 3, 2, "++") == 10
    assert closed_form_torus_link(2, 3, 2, "--") == 4
    assert closed_form_torus_link(2, 5, 2, "+-") == 13
    assert closed_form_torus_link(2, 3, 1, "+") == 2


def test_crosscheck_reports_both_sides():
    cc = torus_link_crosscheck(2, 5, 2)
    assert cc.agree
    cc = torus_link_crosscheck(2, 3, 2)
    assert cc.closed_form["++"] == 10 and cc.computed["++"] == 8
    assert set(cc.mismatches) == {"++", "--"}


def test_total_and_difference_examples():
    assert s_sharp_total(EMPTY) == 0 and check_difference_bounds(EMPTY)
    sp, sm = s_sharp_pm(TREFOIL)
    assert sp - sm == 1


CORPUS = connected_corpus(11, 150)


@pytest.mark.parametrize("k", range(0, 150, 5))
def test_total_is_sum_and_difference_bounded(k):
    pres = CORPUS[k]
    sp, sm = s_sharp_pm(pres)
    assert s_sharp_total(pres) == sp + sm
    assert 0 <= sp - sm <= 2


def test_difference_matrix_patterns():
    u = difference_matrix(EMPTY)
    assert u.case == 0 and u.describe() == [["0", "λ^2"], ["1", "0"]]
    t = difference_matrix(TREFOIL)
    assert t.case == 1 and t.describe() == [["0", "λ"], ["λ", "0"]]


def test_difference_matrix_case_is_difference():
    knots = [p for p in CORPUS if validate(p).target_components == 1]
    assert knots
    for pres in knots:
        sp, sm = s_sharp_pm(pres)
        assert difference_matrix(pres).case == sp - sm


def test_inequality_identity_and_genus():
    rows = inequality_component_rows(EMPTY, EMPTY)
    assert [(r.lhs, r.rhs) for r in rows] == [(0, 0), (0, 0)]
    row = inequality_total_row(EMPTY, EMPTY)
    assert (row.lhs, row.rhs) == (0, 0)
    row = inequality_total_row(EMPTY, CobordismPresentation(1, (AddGenus(0),)))
    assert row.rhs == 2 and row.holds


@given(st.integers(0, 100_000))
def test_inequalities_on_fuzzed_instances(seed):
    rng = random.Random(seed)
    pre = random_component_preserving(rng, [Component()] * rng.randint(1, 2))
    kinds = validate(pre).target_kinds
    assert check_inequality_component(pre, random_component_preserving(rng, kinds))
    emb = random_component_preserving(rng, kinds, embedded=True)
    assert all(r.lhs == 0 for r in inequality_component_rows(pre, emb))


def test_total_inequality_on_split_then_merge():
    pre = CobordismPresentation(1, (Split(0),))
    cob = CobordismPresentation(2, (Merge(0, 1),))
    assert check_inequality_total(pre, cob)


def test_errors():
    with pytest.raises(NotConnected):
        s_sharp_pm(CobordismPresentation(2, ()))
    with pytest.raises(NotConnected):
        s_sharp_pm(CobordismPresentation(1, (Birth(),)))
    with pytest.raises(NotComponentPreserving):
        s_sharp_I(CobordismPresentation(1, (Split(0),)), "++")


def test_node_deduction():
    d = deduce_valuations(node_smoothing_system())
    assert d.unique and node_valuations() == (0, 1)


def test_quasipositive_deduction():
    d = deduce_valuations(quasipositive_system())
    assert d.values("mp") == [0] and d.values("mm") == [0, 1]


def test_quasipositive_bounds():
    b0 = quasipositive_bounds(0)
    assert (b0.s_plus, b0.s_minus) == ((0, 0), (-1, 0))
    b1 = quasipositive_bounds(1)
    assert (b1.s_plus, b1.s_minus) == ((1, 2), (0, 0))
    assert quasipositive_bounds(6).contains(6, 5)


@pytest.mark.parametrize("k_neg,k_pos", [(1, 1), (0, 0), (3, 2)])
def test_switching_crossings(k_neg, k_pos):
    assert switching_crossings(k_neg, k_pos) == (0, 0)


def test_curve_invariants():
    assert curve_invariants(certify_torus_knot(2, 3)).s_total == 1
    assert curve_invariants(certify_torus_knot(3, 4)).s_total == 5
    cs = curve_invariants(certify_connected_sum(3, 4, 3, 4, a=10, b=3))
    assert cs.s_total == 11 != 2 * 5
