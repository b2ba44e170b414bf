"""s-sharp invariants from cobordism presentations and from curve certificates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from .cobordism import (AddGenus, CobordismPresentation, Compiled, Component, Curve,
                        FingerMove, IllFormed, NegativeTwist, PositiveTwist, Split,
                        compile_presentation, compose)
from .deduction import (Deduction, ValuationConstraintSystem, deduce_valuations, eq)
from .module import MINUS, PLUS, Index, basis, index_string, n_minus, parse_index
from .series import DEFAULT_ORDER

if TYPE_CHECKING:
    from .curves.certificate import CurveCertificate


class NotConnected(ValueError):
    pass


class NotComponentPreserving(ValueError):
    pass


class CertificateIncomplete(ValueError):
    pass


def _index(I: Sequence[int] | str) -> Index:
    return parse_index(I) if isinstance(I, str) else tuple(I)


# -- m-values --------------------------------------------------------------------

def m_value(compiled: Compiled, J: Sequence[int]) -> int:
    """lambda-adic valuation of the image of u_J."""
    J = tuple(J)
    col = compiled.columns[J]
    if compiled.target_exp == 1 and len(col) > 1:
        raise AssertionError(f"image of u_{index_string(J)} is not on a single generator")
    v = compiled.column_valuation(J)
    if v == math.inf:
        raise ValueError(f"u_{index_string(J)} maps to zero; m is undefined")
    return int(v)


def _compiled_from_unknot(pres: CobordismPresentation, order: int) -> Compiled:
    if pres.source_components != 1:
        raise NotConnected("s_plus/s_minus need a cobordism from the unknot")
    comp = compile_presentation(pres, order=order)
    if not comp.ledger.connected:
        raise NotConnected("s_plus/s_minus need a connected cobordism")
    if comp.ledger.target_components == 0:
        raise NotConnected("the target link is empty")
    return comp


def _pm_from(comp: Compiled) -> tuple[int, int]:
    g, p = comp.ledger.genus, comp.ledger.p
    mp, mm = m_value(comp, (PLUS,)), m_value(comp, (MINUS,))
    if g % 2 == 0:
        return g + p - mp, g + p - mm
    return g + p - mm + 1, g + p - mp - 1


def s_sharp_pm(pres: CobordismPresentation, order: int = DEFAULT_ORDER) -> tuple[int, int]:
    return _pm_from(_compiled_from_unknot(pres, order))


def s_sharp_total(pres: CobordismPresentation, order: int = DEFAULT_ORDER) -> int:
    comp = _compiled_from_unknot(pres, order)
    g, p = comp.ledger.genus, comp.ledger.p
    return 2 * g + 2 * p - m_value(comp, (PLUS,)) - m_value(comp, (MINUS,))


def check_difference_bounds(pres: CobordismPresentation, order: int = DEFAULT_ORDER) -> bool:
    sp, sm = s_sharp_pm(pres, order)
    return 0 <= sp - sm <= 2


def _flip(I: Index, genus: Sequence[int]) -> Index:
    return tuple(s if g % 2 == 0 else -s for s, g in zip(I, genus))


def _bookkeeping(I: Index, genus: Sequence[int]) -> int:
    return sum(2 * (g // 2 + (1 if s == PLUS and g % 2 else 0)) for s, g in zip(I, genus))


def _s_I_from(comp: Compiled, I: Index) -> int:
    ledger = comp.ledger
    if not ledger.component_preserving:
        raise NotComponentPreserving("s_I needs a component-preserving cobordism")
    if len(I) != ledger.target_components:
        raise ValueError(f"index {index_string(I)} has the wrong length")
    genus = ledger.component_genus
    flipped = _flip(I, genus)
    J = [PLUS] * ledger.source_components
    for k, j in enumerate(ledger.component_map):
        J[j] = flipped[k]
    return _bookkeeping(I, genus) + ledger.p - m_value(comp, tuple(J))


def s_sharp_I(pres: CobordismPresentation, I: Sequence[int] | str,
              order: int = DEFAULT_ORDER) -> int:
    comp = compile_presentation(pres, order=order)
    return _s_I_from(comp, _index(I))


def s_sharp_I_table(pres: CobordismPresentation, order: int = DEFAULT_ORDER
                    ) -> dict[str, int]:
    comp = compile_presentation(pres, order=order)
    return {index_string(I): _s_I_from(comp, I)
            for I in basis(comp.ledger.target_components)}


# -- reports ---------------------------------------------------------------------

@dataclass
class InvariantReport:
    s_plus: int | None = None
    s_minus: int | None = None
    s_total: int | None = None
    s_I: dict[str, int] = field(default_factory=dict)
    presentation: CobordismPresentation | None = None
    ledger: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "s_plus": self.s_plus,
            "s_minus": self.s_minus,
            "s_total": self.s_total,
            "s_I": dict(self.s_I),
            "presentation": self.presentation.to_json() if self.presentation else None,
            "ledger": self.ledger,
            "notes": list(self.notes),
        }


def report(pres: CobordismPresentation, order: int = DEFAULT_ORDER) -> InvariantReport:
    """Every invariant the presentation determines."""
    comp = compile_presentation(pres, order=order)
    rep = InvariantReport(presentation=pres, ledger=comp.ledger.to_json())
    if pres.source_components == 1 and comp.ledger.connected and comp.ledger.target_components:
        rep.s_plus, rep.s_minus = _pm_from(comp)
        rep.s_total = rep.s_plus + rep.s_minus
    if comp.ledger.component_preserving:
        rep.s_I = {index_string(I): _s_I_from(comp, I)
                   for I in basis(comp.ledger.target_components)}
    if rep.s_total is None and not rep.s_I:
        rep.notes.append("presentation is neither connected from the unknot "
                         "nor component-preserving; no invariant is defined")
    return rep


# -- genus-one self-cobordism --------------------------------------------------------

@dataclass(frozen=True)
class DifferencePattern:
    case: int
    a: int
    b: int

    @property
    def valuations(self) -> list[list[float | int]]:
        """Valuation matrix in the (v_+, v_-) basis: columns are images."""
        return [[math.inf, self.b], [self.a, math.inf]]

    def describe(self) -> list[list[str]]:
        def lam(e):
            return "1" if e == 0 else ("λ" if e == 1 else f"λ^{e}")
        return [["0", lam(self.b)], [lam(self.a), "0"]]


def difference_matrix(pres: CobordismPresentation, order: int = DEFAULT_ORDER
                      ) -> DifferencePattern:
    """Valuation pattern of the genus-one self-cobordism of the target knot.

    Compares Sigma (made even genus) with AddGenus after it, reads
    a = m_+(C' Sigma) - m_+(Sigma) and b = m_-(C' Sigma) - m_-(Sigma), and checks
    a = m_- - m_+, b = 2 + m_+ - m_-.
    """
    comp = _compiled_from_unknot(pres, order)
    if comp.ledger.target_components != 1:
        raise ValueError("the difference matrix is defined for knots")
    if comp.ledger.genus % 2:
        pres = pres.then(AddGenus(0))
        comp = compile_presentation(pres, order=order)
    after = compile_presentation(pres.then(AddGenus(0)), order=order)
    mp, mm = m_value(comp, (PLUS,)), m_value(comp, (MINUS,))
    a = m_value(after, (PLUS,)) - mp
    b = m_value(after, (MINUS,)) - mm
    if a != mm - mp or b != 2 + mp - mm or a + b != 2 or not 0 <= a <= 2:
        raise AssertionError(f"composite comparison failed: a={a}, b={b}, m=({mp},{mm})")
    return DifferencePattern(a, a, b)


# -- cobordism inequalities ---------------------------------------------------------

@dataclass(frozen=True)
class InequalityRow:
    index: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def inequality_component_rows(pre: CobordismPresentation, cob: CobordismPresentation,
                              order: int = DEFAULT_ORDER) -> list[InequalityRow]:
    """Both sides of the component-preserving inequality for every index I."""
    first = compile_presentation(pre, order=order)
    if not first.ledger.component_preserving:
        raise NotComponentPreserving("pre must be component-preserving from an unlink")
    kinds = first.ledger.target_kinds
    cob_ledger = compile_presentation(cob, kinds, order).ledger
    if not cob_ledger.component_preserving:
        raise NotComponentPreserving("cob must be component-preserving")
    whole = compile_presentation(compose(pre, cob), order=order)
    genus, cmap = cob_ledger.component_genus, cob_ledger.component_map
    rows = []
    for I in basis(cob_ledger.target_components):
        flipped = _flip(I, genus)
        J = [PLUS] * cob_ledger.source_components
        for k, j in enumerate(cmap):
            J[j] = flipped[k]
        lhs = _s_I_from(whole, I) - _s_I_from(first, tuple(J))
        rhs = _bookkeeping(I, genus) + cob_ledger.p
        rows.append(InequalityRow(index_string(I), lhs, rhs))
    return rows


def check_inequality_component(pre: CobordismPresentation, cob: CobordismPresentation,
                               order: int = DEFAULT_ORDER) -> bool:
    return all(r.holds for r in inequality_component_rows(pre, cob, order))


def inequality_total_row(pre: CobordismPresentation, cob: CobordismPresentation,
                         order: int = DEFAULT_ORDER) -> InequalityRow:
    first = _compiled_from_unknot(pre, order)
    cob_ledger = compile_presentation(cob, first.ledger.target_kinds, order).ledger
    if not cob_ledger.touches_source:
        raise ValueError("every component of cob must meet the source link")
    whole = _compiled_from_unknot(compose(pre, cob), order)
    s1, s2 = sum(_pm_from(first)), sum(_pm_from(whole))
    ell = cob_ledger.source_components - cob_ledger.target_components
    return InequalityRow("total", s2 - s1, 2 * cob_ledger.p - cob_ledger.chi + ell)


def check_inequality_total(pre: CobordismPresentation, cob: CobordismPresentation,
                           order: int = DEFAULT_ORDER) -> bool:
    return inequality_total_row(pre, cob, order).holds


# -- torus links -------------------------------------------------------------------

def _check_torus_params(m: int, n: int, d: int) -> None:
    if m <= 1 or n <= 1 or d < 1 or math.gcd(m, n) != 1:
        raise ValueError(f"need coprime m, n > 1 and d >= 1, got ({m}, {n}, {d})")


def closed_form_torus_link(m: int, n: int, d: int, I: Sequence[int] | str) -> int:
    """Two-branch closed form for s_I of T(md, nd), split on the parity of the component genus."""
    _check_torus_params(m, n, d)
    I = _index(I)
    if len(I) != d:
        raise ValueError(f"index must have {d} signs")
    G = (m - 1) * (n - 1) // 2
    inter = m * n * d * (d - 1) // 2
    if G % 2 == 0:
        return d * G + inter - n_minus(I)
    return d * G + d + inter - 3 * n_minus(I)


def family_presentations(m: int, n: int, d: int, component_m: tuple[int, int] = (0, 1)
                         ) -> tuple[CobordismPresentation, CobordismPresentation]:
    """Cobordisms U_d -> T(md, nd) and U -> T(md, nd) modelled on the nodal family curve."""
    _check_torus_params(m, n, d)
    G = (m - 1) * (n - 1) // 2
    mp, mm = component_m
    piece = Curve(tuple(range(d)), (G - 1,) * d, m * n * d * (d - 1) // 2 + d,
                  (mp,) * d, (mm,) * d)
    per_component = CobordismPresentation(d, (piece,))
    connected = CobordismPresentation(1, (Split(0),) * (d - 1) + (piece,))
    return per_component, connected


@dataclass(frozen=True)
class CrossCheck:
    m: int
    n: int
    d: int
    closed_form: dict[str, int]
    computed: dict[str, int]

    @property
    def agree(self) -> bool:
        return self.closed_form == self.computed

    @property
    def mismatches(self) -> dict[str, tuple[int, int]]:
        return {k: (self.closed_form[k], self.computed[k]) for k in self.closed_form
                if self.closed_form[k] != self.computed[k]}


def torus_link_crosscheck(m: int, n: int, d: int, order: int = DEFAULT_ORDER) -> CrossCheck:
    """Closed form next to the presentation pipeline; reports both, asserts nothing."""
    per_component, _ = family_presentations(m, n, d, node_valuations(order))
    computed = s_sharp_I_table(per_component, order)
    closed = {index_string(I): closed_form_torus_link(m, n, d, I) for I in basis(d)}
    return CrossCheck(m, n, d, closed, computed)


# -- deduction systems ---------------------------------------------------------------

def _valuations(pres: CobordismPresentation, order: int) -> tuple[int, int]:
    comp = compile_presentation(pres, order=order)
    return m_value(comp, (PLUS,)), m_value(comp, (MINUS,))


def node_smoothing_system(order: int = DEFAULT_ORDER, bound: int = 4
                          ) -> ValuationConstraintSystem:
    """Nodal curve Sigma1 after the genus-one torus vs smoothed Sigma2 after one positive twist.

    Both composites have equal genus and double points, so their valuations agree.
    The torus and twist valuations are read off the engine.
    """
    tp, tm = _valuations(CobordismPresentation(1, (AddGenus(0),)), order)
    sp, sm = _valuations(CobordismPresentation(1, (PositiveTwist(0),)), order)
    return ValuationConstraintSystem(
        ("mp1", "mm1", "mp2", "mm2"),
        (eq({"mm1": 1, "mp2": -1}, sp - tp),     # u_+ : tp + m_-(S1) = sp + m_+(S2)
         eq({"mp1": 1, "mm2": -1}, sm - tm)),    # u_- : tm + m_+(S1) = sm + m_-(S2)
        (("mp1", "mm1"), ("mp2", "mm2")),
        bound,
    )


def node_valuations(order: int = DEFAULT_ORDER) -> tuple[int, int]:
    """(m_+, m_-) of a punctured nodal curve, by deduction."""
    a = deduce_valuations(node_smoothing_system(order)).assignment
    if (a["mp1"], a["mm1"]) != (a["mp2"], a["mm2"]):
        raise AssertionError("nodal and smoothed curves disagree")
    return a["mp1"], a["mm1"]


def quasipositive_system(order: int = DEFAULT_ORDER, bound: int = 4
                         ) -> ValuationConstraintSystem:
    """Sigma for K, stacked with the nodal curve for an even-genus torus knot and merged.

    mp, mm: valuations of Sigma; ep, em: extra factors from the final merge.
    The composite is a nodal curve for K # T, whose valuations are deduced first.
    """
    cp, cm = node_valuations(order)
    return ValuationConstraintSystem(
        ("mp", "mm", "ep", "em"),
        (eq({"mp": 1, "ep": 1}, cp), eq({"mm": 1, "em": 1}, cm)),
        (("mp", "mm"),),
        bound,
    )


@dataclass(frozen=True)
class InvariantInterval:
    s_plus: tuple[int, int]
    s_minus: tuple[int, int]

    def __post_init__(self):
        if self.s_plus[0] > self.s_plus[1] or self.s_minus[0] > self.s_minus[1]:
            raise ValueError("empty interval")

    def contains(self, s_plus: int, s_minus: int) -> bool:
        return (self.s_plus[0] <= s_plus <= self.s_plus[1]
                and self.s_minus[0] <= s_minus <= self.s_minus[1])

    def to_json(self) -> dict:
        return {"s_plus": list(self.s_plus), "s_minus": list(self.s_minus)}


def quasipositive_bounds(g: int, order: int = DEFAULT_ORDER) -> InvariantInterval:
    """Bounds on s_plus, s_minus of a quasi-positive knot whose curve has genus g."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    sol = deduce_valuations(quasipositive_system(order))
    plus, minus = [], []
    for s in sol.solutions:
        mp, mm = s[0], s[1]
        if g % 2 == 0:
            plus.append(g - mp)
            minus.append(g - mm)
        else:
            plus.append(g - mm + 1)
            minus.append(g - mp - 1)
    return InvariantInterval((min(plus), max(plus)), (min(minus), max(minus)))


def crossing_switch_system(k_neg: int, k_pos: int, order: int = DEFAULT_ORDER
                           ) -> ValuationConstraintSystem:
    """Sigma_- (U -> K) followed by Sigma_+ (K -> U); the composite has only negative
    double points, so its valuations are those of a negative-twisted cylinder."""
    if k_neg < 0 or k_pos < 0:
        raise ValueError("crossing counts must be nonnegative")
    composite = CobordismPresentation(1, (NegativeTwist(0),) * (k_neg + k_pos))
    ledger = compile_presentation(composite, order=order).ledger
    cp, cm = _valuations(composite, order)
    bound = ledger.genus + ledger.p + 2
    return ValuationConstraintSystem(
        ("mp", "mm", "ep", "em"),
        (eq({"mp": 1, "ep": 1}, cp), eq({"mm": 1, "em": 1}, cm)),
        (),
        bound,
    )


def switching_crossings(k_neg: int, k_pos: int, order: int = DEFAULT_ORDER
                        ) -> tuple[int, int]:
    """s_plus, s_minus of a knot unknotted both by negative and by positive switches."""
    a = deduce_valuations(crossing_switch_system(k_neg, k_pos, order)).assignment
    sigma = CobordismPresentation(1, (NegativeTwist(0),) * k_neg)
    ledger = compile_presentation(sigma, order=order).ledger
    g, p = ledger.genus, ledger.p
    return g + p - a["mp"], g + p - a["mm"]


# -- curves --------------------------------------------------------------------------

def curve_presentations(cert: "CurveCertificate", order: int = DEFAULT_ORDER
                        ) -> tuple[CobordismPresentation, CobordismPresentation]:
    """(component-preserving from U_d, connected from U) presentations of a certified curve."""
    d = cert.components
    if d < 1 or len(cert.component_nodes) != d or len(cert.component_genus) != d:
        raise CertificateIncomplete("certificate fields do not match its component count")
    if any(k != 1 for k in cert.component_nodes):
        raise CertificateIncomplete("the pipeline needs exactly one node on each component")
    mp, mm = node_valuations(order)
    p = sum(cert.component_nodes) + cert.inter_component_nodes
    piece = Curve(tuple(range(d)), tuple(cert.component_genus), p, (mp,) * d, (mm,) * d)
    return (CobordismPresentation(d, (piece,)),
            CobordismPresentation(1, (Split(0),) * (d - 1) + (piece,)))


def curve_invariants(cert: "CurveCertificate", order: int = DEFAULT_ORDER) -> InvariantReport:
    per_component, connected = curve_presentations(cert, order)
    rep = InvariantReport(presentation=connected)
    comp = compile_presentation(connected, order=order)
    rep.ledger = comp.ledger.to_json()
    rep.s_plus, rep.s_minus = _pm_from(comp)
    rep.s_total = rep.s_plus + rep.s_minus
    rep.s_I = s_sharp_I_table(per_component, order)
    if cert.components == 1:
        # the smoothed curve must give the same values
        g = cert.smooth_genus[0]
        mp, mm = node_valuations(order)
        smooth = CobordismPresentation(1, (Curve((0,), (g,), 0, (mp,), (mm,)),))
        if s_sharp_pm(smooth, order) != (rep.s_plus, rep.s_minus):
            raise AssertionError("nodal and smoothed presentations disagree")
        rep.notes.append(f"s_total = 2g - 1 with g = {g}")
    return rep


def torus_knot_interval_check(g: int, order: int = DEFAULT_ORDER) -> bool:
    """The exact curve values (g, g - 1) lie in the quasi-positive interval."""
    return quasipositive_bounds(g, order).contains(g, g - 1)


__all__ = [
    "CertificateIncomplete", "CrossCheck", "DifferencePattern", "InequalityRow",
    "InvariantInterval", "InvariantReport", "NotComponentPreserving", "NotConnected",
    "check_difference_bounds", "check_inequality_component", "check_inequality_total",
    "closed_form_torus_link", "crossing_switch_system", "curve_invariants",
    "curve_presentations", "difference_matrix", "family_presentations",
    "inequality_component_rows", "inequality_total_row", "m_value", "node_smoothing_system",
    "node_valuations", "quasipositive_bounds", "quasipositive_system", "report",
    "s_sharp_I", "s_sharp_I_table", "s_sharp_pm", "s_sharp_total", "switching_crossings",
    "torus_knot_interval_check", "torus_link_crosscheck",
]
