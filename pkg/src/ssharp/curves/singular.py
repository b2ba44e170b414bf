"""Singular points of affine plane curves P(x, y) = 0 over Q(zeta_d).

Exact tier: a grevlex Groebner basis of (P, P_x, P_y), together with Phi_d(t)
when the field is not Q, gives the finite quotient algebra.  A separating linear
form (certified by the rank of the Hermite trace form) yields a rational
univariate representation, so every coordinate and the tangent-cone
discriminant of each Galois orbit of points is an exact element of Q[T]/(q).
A point is a node iff its local multiplicity is 1, and this is cross-checked
against the discriminant being nonzero.

Numeric tier: points outside the field are located by isolating the roots of q
with interval arithmetic, doubling the working precision up to a cap.
"""
from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import sympy
from mpmath import iv
from sympy.polys.matrices import DomainMatrix

from .bipoly import BiPoly
from .field import FieldElem, cyclotomic_polynomial
from .resultant import coprime

QQ = sympy.QQ
_X, _Y, _T, _S = sympy.symbols("x y t T")

# candidate separating forms x + a*y + b*t
_SEPARATORS = ((1, 0), (2, 3), (3, 7), (5, 11), (7, 13), (-4, 17), (11, -19), (13, 23))


class InfiniteLocus(ValueError):
    """P, P_x and P_y share a curve component."""


class CertificationFailed(ArithmeticError):
    """Interval enclosures could not be certified within the precision cap."""


def finite_singular_locus(P: BiPoly) -> bool:
    """True iff P has finitely many singular points (equivalently P is squarefree)."""
    if P.is_zero():
        return False
    if P.is_constant():
        return True
    if P.deg_y == 0 or P.deg_x == 0:
        var = "x" if P.deg_y == 0 else "y"
        return P.specialize("y" if var == "x" else "x", 0).is_squarefree()
    Px, Py = P.diff_x(), P.diff_y()
    for c in range(P.total_degree + 2):
        g = Px + Py * c
        if g.is_zero():
            continue
        if coprime(P, g):
            return True
    return False


# --- conversion to sympy ---------------------------------------------------------

def _uses_t(P: BiPoly) -> bool:
    return P.field.degree > 1


def _coeff_expr(c: FieldElem):
    return sum((sympy.Rational(q.numerator, q.denominator) * _T ** k for k, q in c.terms()),
               sympy.Integer(0))


def to_sympy(P: BiPoly):
    """Expression in x, y (and t standing for zeta when the field is not Q)."""
    expr = sympy.Integer(0)
    for (i, j), c in P.terms.items():
        coeff = _coeff_expr(c) if _uses_t(P) else sympy.Rational(c.coeffs[0].numerator,
                                                                    c.coeffs[0].denominator)
        expr += coeff * _X ** i * _Y ** j
    return sympy.expand(expr)


def _fraction(q) -> Fraction:
    q = QQ.convert(q)
    return Fraction(int(q.numerator), int(q.denominator))


# --- quotient algebra ----------------------------------------------------------

class QuotientAlgebra:
    """Q[x, y(, t)] modulo a zero-dimensional ideal, with multiplication matrices."""

    def __init__(self, generators: Sequence, gens: Sequence):
        self.gens = tuple(gens)
        self.G = sympy.groebner(list(generators), *self.gens, order="grevlex", domain=QQ)
        self.trivial = list(self.G.exprs) == [1]
        if self.trivial:
            self.basis: list[tuple[int, ...]] = []
        else:
            if not self.G.is_zero_dimensional:
                raise InfiniteLocus("the ideal is not zero-dimensional")
            self.basis = self._standard_monomials()
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._mats: dict[tuple[int, ...], DomainMatrix] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _standard_monomials(self) -> list[tuple[int, ...]]:
        leads = [p.monoms(order="grevlex")[0] for p in self.G.polys]
        n = len(self.gens)
        out, stack, seen = [], [(0,) * n], {(0,) * n}
        while stack:
            m = stack.pop()
            if any(all(m[i] >= l[i] for i in range(n)) for l in leads):
                continue
            out.append(m)
            for i in range(n):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return sorted(out, key=lambda m: (sum(m), m))

    def _monomial(self, m: tuple[int, ...]):
        return sympy.Mul(*[g ** e for g, e in zip(self.gens, m)])

    def normal_form(self, expr) -> list:
        """Coordinates of the normal form in the standard-monomial basis."""
        rem = self.G.reduce(sympy.expand(expr))[1]
        vec = [QQ(0)] * self.dim
        if rem != 0:
            for m, c in sympy.Poly(rem, *self.gens).terms():
                vec[self.index[m]] = QQ.convert(c)
        return vec

    def mult_matrix(self, expr) -> DomainMatrix:
        cols = [self.normal_form(expr * self._monomial(m)) for m in self.basis]
        rows = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return DomainMatrix(rows, (self.dim, self.dim), QQ)

    def monomial_matrix(self, m: tuple[int, ...]) -> DomainMatrix:
        if m in self._mats:
            return self._mats[m]
        if not any(m):
            mat = DomainMatrix.eye(self.dim, QQ)
        else:
            i = next(k for k, e in enumerate(m) if e)
            prev = m[:i] + (m[i] - 1,) + m[i + 1:]
            mat = self.variable_matrix(i) * self.monomial_matrix(prev)
        self._mats[m] = mat
        return mat

    def variable_matrix(self, i: int) -> DomainMatrix:
        key = ("var", i)
        if key not in self._mats:
            self._mats[key] = self.mult_matrix(self.gens[i])
        return self._mats[key]

    def trace_vector(self) -> list:
        """tau_j = trace of multiplication by the j-th standard monomial."""
        out = []
        for m in self.basis:
            rows = self.monomial_matrix(m).to_list()
            out.append(sum((rows[i][i] for i in range(self.dim)), QQ(0)))
        return out

    def distinct_points(self, tau: list) -> int:
        """Rank of the Hermite trace form = number of distinct complex points."""
        rows = []
        for m in self.basis:
            flat = self.monomial_matrix(m).to_list()
            rows.append([sum((tau[k] * flat[k][j] for k in range(self.dim)), QQ(0))
                         for j in range(self.dim)])
        return DomainMatrix(rows, (self.dim, self.dim), QQ).rank() if rows else 0


# --- rational univariate representation ------------------------------------------

@dataclass
class _Orbit:
    q: sympy.Poly            # irreducible over Q, in T
    multiplicity: int
    coords: dict             # name -> Poly in T, reduced mod q


def _rur(alg: QuotientAlgebra, values: dict) -> tuple[list[_Orbit], sympy.Expr]:
    tau = alg.trace_vector()
    n_points = alg.distinct_points(tau)
    has_t = len(alg.gens) == 3
    for a, b in _SEPARATORS:
        ell = _X + a * _Y + (b * _T if has_t else 0)
        M = alg.mult_matrix(ell)
        chi = sympy.Poly([_fraction(c) for c in M.charpoly()], _S, domain=QQ)
        _, factors = chi.factor_list()
        sqfree = sympy.Poly(1, _S, domain=QQ)
        for q, _ in factors:
            sqfree *= q
        if sqfree.degree() == n_points:
            break
    else:
        raise CertificationFailed("no separating linear form among the candidates")

    coeffs = list(reversed(sqfree.all_coeffs()))   # a_0 .. a_n
    n = len(coeffs) - 1

    def sigma(vec: list) -> list:
        out = []
        v = DomainMatrix([[c] for c in vec], (alg.dim, 1), QQ)
        for _ in range(n):
            col = v.to_list()
            out.append(sum((tau[k] * col[k][0] for k in range(alg.dim)), QQ(0)))
            v = M * v
        return out

    def g_poly(vec: list) -> sympy.Poly:
        s = sigma(vec)
        gc = [sum((coeffs[i] * s[i - j - 1] for i in range(j + 1, n + 1)), QQ(0))
              for j in range(n)]
        return sympy.Poly(list(reversed(gc)), _S, domain=QQ)

    g1 = g_poly(alg.normal_form(sympy.Integer(1)))
    gv = {name: g_poly(alg.normal_form(expr)) for name, expr in values.items()}
    orbits = []
    for q, e in factors:
        inv = sympy.invert(g1, q)
        coords = {name: (g * inv).rem(q) for name, g in gv.items()}
        orbits.append(_Orbit(q.monic(), int(e), coords))
    return orbits, ell


# --- reports ---------------------------------------------------------------------

def _poly_tuple(p: sympy.Poly) -> tuple[Fraction, ...]:
    return tuple(_fraction(c) for c in reversed(p.all_coeffs()))


@dataclass(frozen=True)
class SingularPointReport:
    location: tuple[FieldElem, FieldElem] | None
    is_node: bool
    tangent_cone_discriminant: FieldElem | None
    multiplicity: int
    minimal_polynomials: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None = None
    approx: tuple[complex, complex] | None = None
    radius: float | None = None
    tier: str = "exact"
    tangent_cone: BiPoly | None = None

    def to_json(self) -> dict:
        out: dict = {"tier": self.tier, "is_node": self.is_node, "multiplicity": self.multiplicity}
        if self.location is not None:
            out["x"], out["y"] = str(self.location[0]), str(self.location[1])
            out["tangent_cone"] = str(self.tangent_cone)
            out["tangent_cone_discriminant"] = str(self.tangent_cone_discriminant)
        else:
            out["x_minpoly"] = [str(c) for c in self.minimal_polynomials[0]]
            out["y_minpoly"] = [str(c) for c in self.minimal_polynomials[1]]
            out["x_approx"] = [repr(self.approx[0].real), repr(self.approx[0].imag)]
            out["y_approx"] = [repr(self.approx[1].real), repr(self.approx[1].imag)]
            out["radius"] = repr(self.radius)
        return out


def _minpoly(coord: sympy.Poly, q: sympy.Poly) -> tuple[Fraction, ...]:
    """Minimal polynomial over Q of coord(theta), theta a root of q.

    The characteristic polynomial of multiplication by coord on Q[T]/(q) is a
    power of the minimal polynomial.
    """
    n = q.degree()
    cols = []
    basis_elem = sympy.Poly(1, _S, domain=QQ)
    for _ in range(n):
        prod = (basis_elem * coord).rem(q)
        cs = list(reversed(prod.all_coeffs())) if not prod.is_zero else []
        cols.append([QQ.convert(cs[i]) if i < len(cs) else QQ(0) for i in range(n)])
        basis_elem = (basis_elem * sympy.Poly(_S, _S, domain=QQ)).rem(q)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    chi = sympy.Poly([_fraction(c) for c in DomainMatrix(rows, (n, n), QQ).charpoly()],
                     _S, domain=QQ)
    factors = chi.factor_list()[1]
    if len(factors) != 1:
        raise AssertionError("characteristic polynomial is not a prime power")
    return _poly_tuple(factors[0][0].monic())


def _to_field_elem(coord: sympy.Poly, tcoord: sympy.Poly | None, q: sympy.Poly, P: BiPoly
                   ) -> FieldElem:
    """Write coord as a polynomial in the t-coordinate, i.e. an element of Q(zeta)."""
    K = P.field
    if tcoord is None:
        root = -q.all_coeffs()[1] / q.all_coeffs()[0]
        return K(_fraction(coord.eval(root)))
    n = K.degree
    powers = [sympy.Poly(1, _S, domain=QQ)]
    for _ in range(n - 1):
        powers.append((powers[-1] * tcoord).rem(q))
    A = sympy.Matrix([[_coef(pw, i) for pw in powers] for i in range(n)])
    b = sympy.Matrix([_coef(coord, i) for i in range(n)])
    sol = A.LUsolve(b)
    return K([Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in sol])


def _coef(p: sympy.Poly, i: int):
    cs = list(reversed(p.all_coeffs()))
    return cs[i] if i < len(cs) else 0


# --- numeric tier ----------------------------------------------------------------

@contextlib.contextmanager
def _ivprec(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _iv_rational(c) -> object:
    c = QQ.convert(c)
    return iv.mpf(int(c.numerator)) / iv.mpf(int(c.denominator))


class _CBox:
    """Complex rectangle re + i*im with interval parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re, self.im = re, im

    def __add__(self, o):
        return _CBox(self.re + o.re, self.im + o.im)

    def __mul__(self, o):
        return _CBox(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def abs2(self):
        return self.re ** 2 + self.im ** 2

    def contains_zero(self) -> bool:
        return 0 in self.re and 0 in self.im


def _horner(p: sympy.Poly, z: _CBox) -> _CBox:
    acc = _CBox(iv.mpf(0), iv.mpf(0))
    for c in p.all_coeffs():
        acc = acc * z + _CBox(_iv_rational(c), iv.mpf(0))
    return acc


def _box(center, radius) -> _CBox:
    re, im = mpmath.mpf(center.real), mpmath.mpf(center.imag)
    return _CBox(iv.mpf([re - radius, re + radius]), iv.mpf([im - radius, im + radius]))


def _isolate(q: sympy.Poly, bits: int) -> list[tuple]:
    """Disjoint discs (center, radius) each holding exactly one root of q."""
    deg = q.degree()
    coeffs = [_fraction(c) for c in q.all_coeffs()]
    with mpmath.workprec(bits):
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in coeffs],
                                 maxsteps=200, extraprec=bits)
    if deg == 1:
        roots = [roots] if not isinstance(roots, list) else roots
    dq = q.diff(_S)
    discs = []
    with _ivprec(bits):
        for z in roots:
            pt = _box(mpmath.mpc(z), 0)
            num = _horner(q, pt).abs2()
            den = _horner(dq, pt).abs2()
            if 0 in den:
                raise CertificationFailed("derivative enclosure contains zero")
            # some root lies within deg * |q(z)| / |q'(z)|
            r = deg * iv.sqrt(num / den)
            discs.append((mpmath.mpc(z), mpmath.mpf(r.b)))
    for i in range(len(discs)):
        for j in range(i + 1, len(discs)):
            if abs(discs[i][0] - discs[j][0]) <= discs[i][1] + discs[j][1]:
                raise CertificationFailed("root discs overlap")
    return discs


def _enclose(p: sympy.Poly, center, radius, bits: int) -> _CBox:
    with _ivprec(bits):
        return _horner(p, _box(center, radius))


def _mid(box: _CBox) -> complex:
    return complex(float(box.re.mid), float(box.im.mid))


def _rad(box: _CBox) -> float:
    return float(max(box.re.delta, box.im.delta)) / 2


def _numeric_points(orbit: _Orbit, d: int, has_t: bool, precision: int, max_precision: int
                    ) -> list[tuple[complex, complex, float, bool]]:
    bits = precision
    while True:
        try:
            return _numeric_attempt(orbit, d, has_t, bits)
        except CertificationFailed:
            bits *= 2
            if bits > max_precision:
                raise CertificationFailed(
                    f"could not certify points at {max_precision} bits") from None


def _numeric_attempt(orbit, d, has_t, bits):
    out = []
    for center, radius in _isolate(orbit.q, bits):
        if has_t:
            tb = _enclose(orbit.coords["t"], center, radius, bits)
            hits = [k for k in range(1, d + 1) if math.gcd(k, d) == 1
                    and mpmath.expjpi(mpmath.mpf(2 * k) / d).real in tb.re
                    and mpmath.expjpi(mpmath.mpf(2 * k) / d).imag in tb.im]
            if len(hits) != 1:
                raise CertificationFailed("t enclosure does not pick out one root of unity")
            if hits[0] != 1:
                continue
        xb = _enclose(orbit.coords["x"], center, radius, bits)
        yb = _enclose(orbit.coords["y"], center, radius, bits)
        db = _enclose(orbit.coords["disc"], center, radius, bits)
        out.append((_mid(xb), _mid(yb), max(_rad(xb), _rad(yb)), not db.contains_zero()))
    return out


# --- main entry point --------------------------------------------------------------

def _ideal(P: BiPoly):
    expr = to_sympy(P)
    gens = (_X, _Y, _T) if _uses_t(P) else (_X, _Y)
    polys = [expr, sympy.diff(expr, _X), sympy.diff(expr, _Y)]
    if len(gens) == 3:
        polys.append(sum(c * _T ** k for k, c in enumerate(cyclotomic_polynomial(P.field.d))))
    return polys, gens


def singular_points(P: BiPoly, precision: int = 64, max_precision: int = 4096
                    ) -> list[SingularPointReport]:
    if not finite_singular_locus(P):
        raise InfiniteLocus("P is not squarefree: its singular locus contains a curve")
    if P.is_constant():
        return []
    polys, gens = _ideal(P)
    alg = QuotientAlgebra(polys, gens)
    if alg.trivial:
        return []
    expr = polys[0]
    disc = sympy.expand(sympy.diff(expr, _X, _Y) ** 2 - sympy.diff(expr, _X, 2) * sympy.diff(expr, _Y, 2))
    has_t = len(gens) == 3
    values = {"x": _X, "y": _Y, "disc": disc}
    if has_t:
        values["t"] = _T
    orbits, _ = _rur(alg, values)
    phi = P.field.degree
    exact, numeric = [], []
    for orb in orbits:
        disc_zero = orb.coords["disc"].is_zero
        is_node = orb.multiplicity == 1
        if is_node == disc_zero:
            raise AssertionError("local multiplicity and tangent-cone discriminant disagree")
        if orb.q.degree() == phi:
            tc = orb.coords.get("t")
            loc = tuple(_to_field_elem(orb.coords[v], tc, orb.q, P) for v in ("x", "y"))
            dval = _to_field_elem(orb.coords["disc"], tc, orb.q, P)
            cone = P.shift(*loc).homogeneous_part(2)
            if quadratic_discriminant(P, *loc) != dval:
                raise AssertionError("discriminant mismatch between RUR and local expansion")
            exact.append(SingularPointReport(loc, is_node, dval, orb.multiplicity,
                                             tangent_cone=cone))
            continue
        mins = (_minpoly(orb.coords["x"], orb.q), _minpoly(orb.coords["y"], orb.q))
        for xa, ya, rad, sep in _numeric_points(orb, P.field.d, has_t, precision, max_precision):
            if is_node and not sep:
                raise CertificationFailed("discriminant enclosure does not exclude zero")
            numeric.append(SingularPointReport(None, is_node, None, orb.multiplicity, mins,
                                               (xa, ya), rad, "numeric"))
    exact.sort(key=lambda r: (str(r.location[0]), str(r.location[1])))
    numeric.sort(key=lambda r: (r.approx[0].real, r.approx[0].imag, r.approx[1].real,
                                r.approx[1].imag))
    return exact + numeric


def jacobian_dimension(P: BiPoly) -> int:
    """dim Q[x, y] / (P_x, P_y); the Milnor number when the origin is the only critical point."""
    expr = to_sympy(P)
    gens = (_X, _Y, _T) if _uses_t(P) else (_X, _Y)
    polys = [sympy.diff(expr, _X), sympy.diff(expr, _Y)]
    if len(gens) == 3:
        polys.append(sum(c * _T ** k for k, c in enumerate(cyclotomic_polynomial(P.field.d))))
    alg = QuotientAlgebra(polys, gens)
    return alg.dim // P.field.degree


def quadratic_discriminant(P: BiPoly, a: FieldElem, b: FieldElem) -> FieldElem:
    """b^2 - 4ac of the quadratic part of P at (a, b)."""
    Q = P.shift(a, b).homogeneous_part(2)
    return Q.coeff(1, 1) ** 2 - Q.coeff(2, 0) * Q.coeff(0, 2) * 4
