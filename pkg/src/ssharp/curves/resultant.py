"""Sylvester resultants over Q(zeta_d).

Convention: the Sylvester matrix lists the rows of f before the rows of g, with
coefficients from the highest degree down.  Bivariate resultants are computed by
specializing the other variable at rational points, taking the exact univariate
determinant, and interpolating; specialization commutes with the resultant at
points where neither leading coefficient vanishes.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .bipoly import BiPoly, UPoly
from .field import CyclotomicField, FieldElem


class ZeroPolynomial(ValueError):
    """A resultant was requested for the zero polynomial."""


def sylvester_matrix(f: UPoly, g: UPoly) -> list[list[FieldElem]]:
    m, n = f.degree, g.degree
    size = m + n
    zero = f.field.zero()
    rows = []
    for poly, copies in ((f, n), (g, m)):
        top = list(reversed(poly.coeffs))
        for i in range(copies):
            rows.append([zero] * i + top + [zero] * (size - i - len(top)))
    return rows


def determinant(rows: list[list[FieldElem]], field: CyclotomicField) -> FieldElem:
    """Gaussian elimination with nonzero pivoting."""
    a = [list(r) for r in rows]
    n = len(a)
    det = field.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return field.zero()
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if a[r][col].is_zero():
                continue
            c = a[r][col] * inv
            row_r, row_c = a[r], a[col]
            for k in range(col + 1, n):
                if not row_c[k].is_zero():
                    row_r[k] = row_r[k] - c * row_c[k]
    return det


def univariate_resultant(f: UPoly, g: UPoly) -> FieldElem:
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    return determinant(sylvester_matrix(f, g), f.field)


def _sample_points() -> Iterator[Fraction]:
    yield Fraction(0)
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


def interpolate(points: list[Fraction], values: list[FieldElem], field: CyclotomicField) -> UPoly:
    """Newton divided differences at rational nodes."""
    n = len(points)
    table = list(values)
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (points[i + level] - points[i])
                 for i in range(n - level)]
        newton.append(table[0])
    out = UPoly(field, [newton[-1]])
    for k in range(n - 2, -1, -1):
        out = out * UPoly(field, [-points[k], 1]) + UPoly(field, [newton[k]])
    return out


def resultant(f: BiPoly, g: BiPoly, wrt: str = "x") -> UPoly:
    """Res_wrt(f, g) as a polynomial in the other variable."""
    if wrt not in ("x", "y"):
        raise ValueError(f"wrt must be 'x' or 'y', got {wrt!r}")
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    if f.field != g.field:
        raise ValueError("polynomials over different fields")
    other = "y" if wrt == "x" else "x"
    fc, gc = f.as_upoly(wrt), g.as_upoly(wrt)
    m, n = len(fc) - 1, len(gc) - 1

    def deg(p: BiPoly) -> int:
        return p.deg_y if other == "y" else p.deg_x

    bound = min(n * deg(f) + m * deg(g), f.total_degree * g.total_degree)
    lf, lg = fc[-1], gc[-1]
    pts: list[Fraction] = []
    vals: list[FieldElem] = []
    for t in _sample_points():
        if len(pts) > bound:
            break
        if lf(t).is_zero() or lg(t).is_zero():
            continue
        pts.append(t)
        fu = UPoly(f.field, [c(t) for c in fc])
        gu = UPoly(f.field, [c(t) for c in gc])
        vals.append(univariate_resultant(fu, gu))
    return interpolate(pts, vals, f.field)


def coprime(f: BiPoly, g: BiPoly) -> bool:
    """True iff f and g share no nonconstant factor, i.e. V(f, g) is finite."""
    if f.is_zero() or g.is_zero():
        return False
    if f.is_constant() or g.is_constant():
        return True
    if f.deg_y >= 1 and g.deg_y >= 1 and resultant(f, g, "y").is_zero():
        return False
    if f.deg_x >= 1 and g.deg_x >= 1 and resultant(f, g, "x").is_zero():
        return False
    return True
