"""Named regression checks, shared by the CLI and the acceptance tests."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .cobordism import (AddGenus, CobordismPresentation, Component, FingerMove,
                        NegativeTwist, PositiveTwist, compile_presentation)
from .curves.certificate import certify_connected_sum, certify_family, certify_torus_knot
from .curves.families import family_factors, family_intersections, torus_knot_poly
from .curves.singular import singular_points
from .deduction import deduce_valuations
from .invariants import (check_difference_bounds, check_inequality_total,
                         closed_form_torus_link, curve_invariants, curve_presentations,
                         difference_matrix, inequality_component_rows,
                         node_smoothing_system, quasipositive_bounds, quasipositive_system,
                         report, s_sharp_pm, switching_crossings)
from .module import basis, frobenius, index_string
from .sampling import (connected_corpus, random_component_preserving, random_connected,
                       random_touching)
from .series import DEFAULT_ORDER, LaurentU, SeriesQ, embed_laurent_u

DEFAULT_SEED = 2024


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _ring(seed: int) -> CheckResult:
    u = LaurentU.u(1)
    lhs = embed_laurent_u(LaurentU.u(-1) * (u - 1) ** 2, DEFAULT_ORDER)
    lam2 = SeriesQ.monomial(2, 1, DEFAULT_ORDER)
    v = embed_laurent_u(1 - LaurentU.u(2), DEFAULT_ORDER).valuation()
    return CheckResult("", lhs == lam2 and v == 1,
                       {"lambda_squared_exact": lhs == lam2, "valuation_1_minus_u2": v})


def _frobenius(seed: int) -> CheckResult:
    axioms = frobenius().axioms()
    return CheckResult("", all(axioms.values()), {"axioms": axioms})


_STABILIZERS = (AddGenus, PositiveTwist, NegativeTwist, FingerMove)


def _invariants(pres: CobordismPresentation) -> tuple:
    rep = report(pres)
    return rep.s_plus, rep.s_minus, rep.s_total, tuple(sorted(rep.s_I.items()))


def _well_defined(seed: int) -> CheckResult:
    rng = random.Random(seed + 1)
    bad = []
    for k, pres in enumerate(connected_corpus(seed, 500)):
        base = _invariants(pres)
        targets = compile_presentation(pres).ledger.target_components
        for move in _STABILIZERS:
            c = rng.randrange(targets)
            if _invariants(pres.then(move(c))) != base:
                bad.append([k, move.__name__, c])
    return CheckResult("", not bad, {"presentations": 500, "failures": bad[:10]})


def _difference_bounds(seed: int) -> CheckResult:
    corpus = connected_corpus(seed, 500)
    bad = [k for k, p in enumerate(corpus) if not check_difference_bounds(p)]
    return CheckResult("", not bad, {"presentations": len(corpus), "failures": bad[:10]})


def _trichotomy(seed: int) -> CheckResult:
    bad, knots = [], 0
    for k, pres in enumerate(connected_corpus(seed, 500)):
        if compile_presentation(pres).ledger.target_components != 1:
            continue
        knots += 1
        sp, sm = s_sharp_pm(pres)
        if difference_matrix(pres).case != sp - sm:
            bad.append(k)
    unknot = difference_matrix(CobordismPresentation(1, ())).case
    trefoil = difference_matrix(curve_presentations(certify_torus_knot(2, 3))[1]).case
    return CheckResult("", not bad and unknot == 0 and trefoil == 1,
                       {"knots": knots, "failures": bad[:10], "unknot_case": unknot,
                        "trefoil_case": trefoil})


def _torus_knots(seed: int) -> CheckResult:
    values = {}
    ok = True
    for (p, q), want in (((2, 3), 1), ((3, 4), 5), ((4, 5), 11)):
        rep = curve_invariants(certify_torus_knot(p, q))
        g = (p - 1) * (q - 1) // 2
        values[f"T({p},{q})"] = rep.s_total
        ok &= rep.s_total == want == 2 * g - 1
    return CheckResult("", ok, {"s_sharp": values})


def _non_additive(seed: int) -> CheckResult:
    cs = curve_invariants(certify_connected_sum(3, 4, 3, 4, a=10, b=3)).s_total
    single = curve_invariants(certify_torus_knot(3, 4)).s_total
    return CheckResult("", cs == 11 and cs != 2 * single,
                       {"connected_sum": cs, "twice_single": 2 * single})


TORUS_LINK_CASES = ((2, 3, 2), (2, 3, 3), (2, 5, 2), (3, 4, 2))


def _torus_links(seed: int) -> CheckResult:
    cases = {}
    ok = True
    for m, n, d in TORUS_LINK_CASES:
        computed = curve_invariants(certify_family(m, n, d)).s_I
        closed = {index_string(I): closed_form_torus_link(m, n, d, I) for I in basis(d)}
        agree = computed == closed
        ok &= agree
        cases[f"({m},{n},{d})"] = {"agree": agree, "certificate": computed, "closed_form": closed}
    return CheckResult("", ok, cases)


def _curve_counts(seed: int) -> CheckResult:
    a, eps = [0, 1], [1, 1]
    f0, f1 = family_factors(2, 3, 2, a, eps)
    pts = singular_points(f0 * f1)
    lone = [p for p in pts if p.location is not None and p.location[1].is_zero()
            and p.location[0] in (f0.field(0), f0.field(1))]
    inter = [p for p in pts if p not in lone]
    pair = family_intersections(2, 3, 2, a, eps)[0]
    # x-coordinates of the inter-component points are exactly the roots of Res_y(f0, f1)
    res = pair.resultant
    on_resultant = all(_divides(p.minimal_polynomials[0] if p.location is None
                                else (-p.location[0].to_fraction(), 1), res) for p in inter)
    ok = (len(pts) == 8 and all(p.is_node for p in pts) and len(lone) == 2
          and len(inter) == 6 == pair.count and on_resultant)
    return CheckResult("", ok, {
        "singular_points": len(pts), "nodes": sum(p.is_node for p in pts),
        "inter_component": len(inter), "x_on_resultant": on_resultant,
        "closed_form_x": [str(x) for x in pair.closed_form],
        "closed_form_checked_on": "eps = 0 base resultant"})


def _divides(minpoly, res) -> bool:
    from .curves.bipoly import UPoly
    K = res.field
    return (res % UPoly(K, list(minpoly))).is_zero()


def _lone_singularity(seed: int) -> CheckResult:
    out = {}
    for m, n, e in ((2, 3, 1), (3, 4, 1), (2, 5, "1/2")):
        pts = singular_points(torus_knot_poly(m, n, e))
        out[f"({m},{n},{e})"] = (len(pts) == 1 and pts[0].is_node and pts[0].location is not None
                                 and all(c.is_zero() for c in pts[0].location))
    return CheckResult("", all(out.values()), out)


def _deduction(seed: int) -> CheckResult:
    node = deduce_valuations(node_smoothing_system())
    node_ok = node.unique and (node.assignment["mp1"], node.assignment["mm1"]) == (0, 1)
    qp = deduce_valuations(quasipositive_system())
    qp_ok = qp.values("mp") == [0] and qp.values("mm") == [0, 1]
    bounds = quasipositive_bounds(6)
    return CheckResult("", node_ok and qp_ok and bounds.contains(6, 5), {
        "node_smoothing": node.to_json(), "quasipositive_mp": qp.values("mp"),
        "quasipositive_mm": qp.values("mm"), "bounds_g6": bounds.to_json()})


def _crossing_switch(seed: int) -> CheckResult:
    values = {f"{a},{b}": list(switching_crossings(a, b)) for a in range(4) for b in range(4)}
    return CheckResult("", all(v == [0, 0] for v in values.values()), {"values": values})


def _inequalities(seed: int) -> CheckResult:
    rng = random.Random(seed)
    comp_bad = total_bad = annulus_bad = 0
    for _ in range(1000):
        src = [Component()] * rng.randint(1, 2)
        pre = random_component_preserving(rng, src)
        kinds = compile_presentation(pre).ledger.target_kinds
        cob = random_component_preserving(rng, kinds)
        if not all(r.holds for r in inequality_component_rows(pre, cob)):
            comp_bad += 1
        emb = random_component_preserving(rng, kinds, embedded=True)
        if any(r.lhs != 0 for r in inequality_component_rows(pre, emb)):
            annulus_bad += 1
    for _ in range(1000):
        pre = random_connected(rng)
        kinds = compile_presentation(pre).ledger.target_kinds
        cob = random_touching(rng, kinds)
        if not check_inequality_total(pre, cob):
            total_bad += 1
    return CheckResult("", comp_bad == total_bad == annulus_bad == 0, {
        "component_failures": comp_bad, "total_failures": total_bad,
        "annulus_failures": annulus_bad, "instances": 1000})


CHECKS: tuple[tuple[str, Callable[[int], CheckResult]], ...] = (
    ("01-ring-sanity", _ring),
    ("02-frobenius-consistency", _frobenius),
    ("03-well-definedness-fuzz", _well_defined),
    ("04-difference-bounds", _difference_bounds),
    ("05-trichotomy", _trichotomy),
    ("06-torus-knots", _torus_knots),
    ("07-non-additivity", _non_additive),
    ("08-torus-links", _torus_links),
    ("09-curve-counts", _curve_counts),
    ("10-lone-singularity", _lone_singularity),
    ("11-deduction-engine", _deduction),
    ("12-crossing-switch", _crossing_switch),
    ("13-inequality-fuzz", _inequalities),
)


class UnknownFilter(ValueError):
    pass


def select(filter_text: str | None = None) -> list[tuple[str, Callable[[int], CheckResult]]]:
    if not filter_text:
        return list(CHECKS)
    chosen = [c for c in CHECKS if filter_text in c[0]]
    if not chosen:
        raise UnknownFilter(f"no check matches {filter_text!r}")
    return chosen


def run_check(name: str, fn: Callable[[int], CheckResult], seed: int = DEFAULT_SEED
              ) -> CheckResult:
    start = time.perf_counter()
    res = fn(seed)
    res.name = name
    res.seconds = time.perf_counter() - start
    return res


def run_checks(filter_text: str | None = None, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    return [run_check(name, fn, seed) for name, fn in select(filter_text)]
