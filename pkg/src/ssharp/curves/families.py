"""Polynomial constructions: torus-knot and torus-link families, quasi-positive
curves, connected sums with a torus-knot singularity, and node perturbations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .bipoly import BiPoly, UPoly
from .field import QQ, CyclotomicField, FieldElem
from .resultant import resultant

Number = int | Fraction


class GenericityViolated(ValueError):
    def __init__(self, pair, reason: str):
        super().__init__(f"pair {pair}: {reason}")
        self.pair = pair
        self.reason = reason


class InvalidParameters(ValueError):
    pass


def _rational(v) -> Fraction:
    try:
        return Fraction(v)
    except (TypeError, ValueError):
        raise InvalidParameters(f"expected a rational number, got {v!r}") from None


def torus_knot_poly(m: int, n: int, eps: Number = 1, field: CyclotomicField = QQ) -> BiPoly:
    """x^m - y^n - eps*x*y."""
    x, y = BiPoly.x(field), BiPoly.y(field)
    return x ** m - y ** n - x * y * _rational(eps)


def _check_torus(m: int, n: int, d: int) -> None:
    if min(m, n) < 2 or d < 1:
        raise InvalidParameters("need m, n >= 2 and d >= 1")
    if gcd(m, n) != 1:
        raise InvalidParameters(f"gcd({m}, {n}) != 1")


def default_family_parameters(d: int) -> tuple[list[Fraction], list[Fraction]]:
    # equal eps_i make the m = 3 families symmetric under (x, y) -> (a_0 + a_1 - x, -y)
    return [Fraction(i) for i in range(d)], [Fraction(1, i + 1) for i in range(d)]


def family_factor(m: int, n: int, d: int, i: int, a: Number, eps: Number) -> BiPoly:
    """(x - a)^m - omega^i y^n - eps (x - a) y over Q(zeta_d)."""
    K = CyclotomicField(d)
    x, y = BiPoly.x(K), BiPoly.y(K)
    u = x - _rational(a)
    return u ** m - y ** n * K.zeta(i) - u * y * _rational(eps)


def _family_args(m, n, d, a, eps):
    _check_torus(m, n, d)
    da, de = default_family_parameters(d)
    a = [_rational(v) for v in (da if a is None else a)]
    eps = [_rational(v) for v in (de if eps is None else eps)]
    if len(a) != d or len(eps) != d:
        raise InvalidParameters(f"need {d} values of a and of eps")
    if len(set(a)) != d:
        raise InvalidParameters("the a_i must be pairwise distinct")
    if any(e == 0 for e in eps):
        raise InvalidParameters("the eps_i must be nonzero")
    return a, eps


def family_factors(m: int, n: int, d: int, a: Sequence | None = None,
                   eps: Sequence | None = None) -> list[BiPoly]:
    a, eps = _family_args(m, n, d, a, eps)
    return [family_factor(m, n, d, i, a[i], eps[i]) for i in range(d)]


@dataclass(frozen=True)
class PairIntersection:
    """Intersection data of components i < j of the torus-link family."""

    pair: tuple[int, int]
    resultant: UPoly              # Res_y(f_i, f_j), a polynomial in x
    base_resultant: UPoly         # the same with every eps set to 0
    closed_form: tuple[FieldElem, ...]   # (a_i - eta a_j)/(1 - eta) in Q(zeta_{dm})

    @property
    def count(self) -> int:
        return self.resultant.degree


def _closed_form_points(m: int, d: int, i: int, j: int, ai: Fraction, aj: Fraction
                        ) -> tuple[FieldElem, ...]:
    L = CyclotomicField(d * m)
    k = (i - j) % d
    # eta^m = zeta_d^k  <=>  eta = zeta_{dm}^(k + d s)
    pts = []
    for s in range(m):
        eta = L.zeta(k + d * s)
        pts.append((L(ai) - eta * aj) / (1 - eta))
    return tuple(pts)


def family_intersections(m: int, n: int, d: int, a: Sequence | None = None,
                         eps: Sequence | None = None) -> list[PairIntersection]:
    """Pairwise intersection certificates; raises GenericityViolated.

    With a constant leading coefficient in y, the multiplicity of a root x0 of
    Res_y(f_i, f_j) is the total intersection number on the line x = x0.  A
    squarefree resultant of degree mn therefore means mn transverse
    intersection points with distinct x-coordinates.
    """
    a, eps = _family_args(m, n, d, a, eps)
    K = CyclotomicField(d)
    L = CyclotomicField(d * m)
    f = [family_factor(m, n, d, i, a[i], eps[i]) for i in range(d)]
    f0 = [family_factor(m, n, d, i, a[i], 0) for i in range(d)]
    out = []
    for i, j in combinations(range(d), 2):
        r = resultant(f[i], f[j], "y")
        if r.degree != m * n:
            raise GenericityViolated((i, j), f"resultant has degree {r.degree}, expected {m * n}")
        if not r.is_squarefree():
            raise GenericityViolated((i, j), "intersection points are not transverse or share x")
        r0 = resultant(f0[i], f0[j], "y")
        xi = UPoly(K, [-a[i], 1])
        xj = UPoly(K, [-a[j], 1])
        s = xi ** m - xj ** m * K.zeta(i - j)
        sn = s ** n
        if r0 != sn * (r0.lc / sn.lc):
            raise GenericityViolated((i, j), "base resultant is not a multiple of s(x)^n")
        pts = _closed_form_points(m, d, i, j, a[i], a[j])
        s_L = UPoly(L, [c.embed(L) for c in s.coeffs])
        if len(set(pts)) != m or any(not s_L(p).is_zero() for p in pts):
            raise GenericityViolated((i, j), "closed-form points are not the roots of s(x)")
        out.append(PairIntersection((i, j), r, r0, pts))
    for p, q in combinations(out, 2):
        if p.resultant.gcd(q.resultant).degree > 0:
            raise GenericityViolated((p.pair, q.pair), "two pairs meet over a common x-coordinate")
    return out


def construct_family_torus_link(m: int, n: int, d: int, a: Sequence | None = None,
                                eps: Sequence | None = None) -> BiPoly:
    """prod_i ((x - a_i)^m - omega^i y^n - eps_i (x - a_i) y), genericity checked."""
    factors = family_factors(m, n, d, a, eps)
    family_intersections(m, n, d, a, eps)
    out = BiPoly.const(1, factors[0].field)
    for fct in factors:
        out = out * fct
    return out


def construct_rudolph(r: Sequence[Number], eps0: Number) -> BiPoly:
    """(x - r_1)...(x - r_n)(x - y) + eps0."""
    if not r:
        raise InvalidParameters("need at least one root")
    x, y = BiPoly.x(), BiPoly.y()
    out = x - y
    for ri in r:
        out = out * (x - _rational(ri))
    return out + _rational(eps0)


def construct_connected_sum(P: BiPoly, p: int, q: int, a: Number, b: Number,
                            normalize: bool = False) -> BiPoly:
    """P(x, y)(x - a)^p + (y - b)^q, optionally divided by (-a)^p."""
    if min(p, q) < 2 or gcd(p, q) != 1:
        raise InvalidParameters("need coprime p, q >= 2")
    a, b = _rational(a), _rational(b)
    x, y = BiPoly.x(P.field), BiPoly.y(P.field)
    Q = P * (x - a) ** p + (y - b) ** q
    if normalize:
        if a == 0:
            raise InvalidParameters("normalization needs a != 0")
        Q = Q / ((-a) ** p)
    return Q


def perturb_node(P: BiPoly, eps: Number = 1) -> BiPoly:
    """P + eps*x*y."""
    return P + BiPoly(P.field, {(1, 1): _rational(eps)})


def perturb_global(P: BiPoly, z: Number) -> BiPoly:
    """P + z*x^2."""
    return P + BiPoly(P.field, {(2, 0): _rational(z)})
