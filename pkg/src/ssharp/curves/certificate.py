"""Curve certificates: checked node counts and genera for the curve families.

A certificate records the discrete data the invariant pipeline consumes: how
many components, one node per component, the number of inter-component nodes
and the genus of each component before and after smoothing its node.  The
analytic hypothesis that each curve is irreducible in a ball is recorded as a
trusted family fact rather than computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .bipoly import BiPoly
from .families import (InvalidParameters, construct_connected_sum, family_factor,
                       family_factors, family_intersections, torus_knot_poly, _family_args)
from .singular import finite_singular_locus, jacobian_dimension, singular_points

TRUSTED_BALL = "irreducible in a ball (family-level fact, not computed)"


class CountMismatch(ValueError):
    """Computed singular data contradicts the family formula."""


@dataclass(frozen=True)
class CurveCertificate:
    components: int
    component_nodes: tuple[int, ...]
    inter_component_nodes: int
    component_genus: tuple[int, ...]     # genus of each nodal component
    smooth_genus: tuple[int, ...]        # genus once its node is smoothed
    family: str
    params: tuple[tuple[str, str], ...] = ()
    trusted: tuple[str, ...] = field(default=(TRUSTED_BALL,))

    @property
    def total_nodes(self) -> int:
        return sum(self.component_nodes) + self.inter_component_nodes

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": dict(self.params),
            "components": self.components,
            "component_nodes": list(self.component_nodes),
            "inter_component_nodes": self.inter_component_nodes,
            "component_genus": list(self.component_genus),
            "smooth_genus": list(self.smooth_genus),
            "trusted": list(self.trusted),
        }


def _lone_node_at(P: BiPoly, a, b, what: str) -> None:
    pts = singular_points(P)
    if len(pts) != 1:
        raise CountMismatch(f"{what}: expected one singular point, found {len(pts)}")
    pt = pts[0]
    if pt.location is None or pt.location != (P.field(a), P.field(b)):
        raise CountMismatch(f"{what}: the singular point is not at ({a}, {b})")
    if not pt.is_node:
        raise CountMismatch(f"{what}: the singular point is not a node")


def _milnor_genus(m: int, n: int) -> int:
    mu = jacobian_dimension(torus_knot_poly(m, n, 0))
    if mu != (m - 1) * (n - 1):
        raise CountMismatch(f"Milnor number {mu} != ({m}-1)({n}-1)")
    return mu // 2


def certify_torus_knot(m: int, n: int, eps=1) -> CurveCertificate:
    """x^m - y^n - eps*x*y: one node at the origin on a fiber of genus (m-1)(n-1)/2 - 1."""
    if min(m, n) < 2 or gcd(m, n) != 1:
        raise InvalidParameters("need coprime m, n >= 2")
    if Fraction(eps) == 0:
        raise InvalidParameters("eps must be nonzero")
    _lone_node_at(torus_knot_poly(m, n, eps), 0, 0, f"x^{m} - y^{n} - {eps}xy")
    g = _milnor_genus(m, n)
    return CurveCertificate(1, (1,), 0, (g - 1,), (g,), "torus_knot",
                            (("m", str(m)), ("n", str(n)), ("eps", str(Fraction(eps)))))


def certify_family(m: int, n: int, d: int, a=None, eps=None, full: bool = False
                   ) -> CurveCertificate:
    """The d-component torus-link family.

    Each factor has a lone node at (a_i, 0); every pair meets transversally in
    mn points (see family_intersections) that avoid the other components.  With
    full=True the product is also solved directly and the counts compared.
    """
    a, eps = _family_args(m, n, d, a, eps)
    for i in range(d):
        _lone_node_at(family_factor(m, n, d, i, a[i], eps[i]), a[i], 0, f"component {i}")
    pairs = family_intersections(m, n, d, a, eps)
    inter = sum(p.count for p in pairs)
    if inter != m * n * comb(d, 2):
        raise CountMismatch(f"{inter} inter-component nodes, expected {m * n * comb(d, 2)}")
    if full:
        P = BiPoly.const(1, family_factors(m, n, d, a, eps)[0].field)
        for f in family_factors(m, n, d, a, eps):
            P = P * f
        pts = singular_points(P)
        if len(pts) != d + inter or not all(p.is_node for p in pts):
            raise CountMismatch(f"direct solve found {len(pts)} singular points, "
                                f"{sum(p.is_node for p in pts)} nodes")
    g = _milnor_genus(m, n)
    params = (("m", str(m)), ("n", str(n)), ("d", str(d)),
              ("a", ",".join(map(str, a))), ("eps", ",".join(map(str, eps))))
    return CurveCertificate(d, (1,) * d, inter, (g - 1,) * d, (g,) * d, "torus_link", params)


def newton_principal_part(R: BiPoly, p: int, q: int) -> bool:
    """R has principal part c x^p + e y^q (c, e nonzero) at the origin.

    Every other monomial x^i y^j must lie strictly above the segment, i.e.
    i q + j p > p q.  Such a singularity is Newton-nondegenerate with Milnor
    number (p-1)(q-1).
    """
    if R.coeff(p, 0).is_zero() or R.coeff(0, q).is_zero():
        return False
    for (i, j) in R.terms:
        if (i, j) in ((p, 0), (0, q)):
            continue
        if i * q + j * p <= p * q:
            return False
    return True


def certify_connected_sum(km: int, kn: int, p: int, q: int, a, b, delta=1) -> CurveCertificate:
    """K # T_{p,q} with K the quasi-positive torus knot T_{km,kn}.

    K bounds the smooth Milnor fiber P = x^km - y^kn - delta.  The curve
    Q = P (x - a)^p + (y - b)^q keeps that piece and acquires a T_{p,q}
    singularity at (a, b), checked through its Newton principal part.
    Smoothing it adds genus (p-1)(q-1)/2; one node is then split off.
    """
    if Fraction(delta) == 0:
        raise InvalidParameters("delta must be nonzero")
    P = torus_knot_poly(km, kn, 0) - Fraction(delta)
    if singular_points(P):
        raise CountMismatch("the quasi-positive piece is not smooth")
    Q = construct_connected_sum(P, p, q, a, b)
    if not finite_singular_locus(Q):
        raise CountMismatch("Q has a non-isolated singular locus")
    R = Q.shift(Fraction(a), Fraction(b))
    if not newton_principal_part(R, p, q):
        raise CountMismatch(f"the singularity at ({a}, {b}) is not of type x^{p} + y^{q}")
    g = _milnor_genus(km, kn) + _milnor_genus(p, q)
    params = (("K", f"T({km},{kn})"), ("p", str(p)), ("q", str(q)), ("a", str(Fraction(a))),
              ("b", str(Fraction(b))), ("delta", str(Fraction(delta))))
    return CurveCertificate(1, (1,), 0, (g - 1,), (g,), "connected_sum", params,
                            (TRUSTED_BALL, "a >> b >> R places the knot K in the ball"))


def certificate(family: str, **params) -> CurveCertificate:
    dispatch = {"torus_knot": certify_torus_knot, "torus_link": certify_family,
                "connected_sum": certify_connected_sum}
    if family not in dispatch:
        raise InvalidParameters(f"unknown family {family!r}")
    return dispatch[family](**params)
