"""Univariate and sparse bivariate polynomials over a cyclotomic field."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .field import QQ, CyclotomicField, FieldElem

Coeff = FieldElem | int | Fraction


class UPoly:
    """Dense univariate polynomial, lowest degree first, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: Iterable[Coeff] = ()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs: tuple[FieldElem, ...] = tuple(cs)

    @classmethod
    def monomial(cls, field: CyclotomicField, k: int, c: Coeff = 1) -> UPoly:
        return cls(field, [0] * k + [c])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldElem:
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    def __getitem__(self, k: int) -> FieldElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __add__(self, other: UPoly) -> UPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, [self[i] + other[i] for i in range(n)])

    def __neg__(self) -> UPoly:
        return UPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: UPoly) -> UPoly:
        return self + (-other)

    def __mul__(self, other: UPoly | Coeff) -> UPoly:
        if not isinstance(other, UPoly):
            return UPoly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UPoly(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UPoly:
        out = UPoly(self.field, [1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: UPoly) -> tuple[UPoly, UPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [self.field.zero()] * max(len(r) - other.degree, 1)
        inv = other.lc.inverse()
        while len(r) > other.degree and r:
            k = len(r) - 1 - other.degree
            c = r[-1] * inv
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[k + i] = r[k + i] - c * b
            r.pop()
            while r and r[-1].is_zero():
                r.pop()
        return UPoly(self.field, q), UPoly(self.field, r)

    def __mod__(self, other: UPoly) -> UPoly:
        return divmod(self, other)[1]

    def monic(self) -> UPoly:
        return self * self.lc.inverse() if self.coeffs else self

    def gcd(self, other: UPoly) -> UPoly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> UPoly:
        return UPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree <= 0

    def __call__(self, value: Coeff) -> FieldElem:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def format(self, var: str = "t") -> str:
        text = str(BiPoly(self.field, {(i, 0): c for i, c in enumerate(self.coeffs)}))
        return text.replace("x", var)

    def __str__(self) -> str:
        return self.format()

    __repr__ = __str__


class BiPoly:
    """Sparse polynomial in x, y: a map (i, j) -> coefficient of x^i y^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field: CyclotomicField = QQ, terms: Mapping[tuple[int, int], Coeff] = ()):
        clean: dict[tuple[int, int], FieldElem] = {}
        for (i, j), c in dict(terms).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = field(c)
            if not c.is_zero():
                clean[(int(i), int(j))] = c
        self.field = field
        self.terms: dict[tuple[int, int], FieldElem] = clean

    # constructors
    @classmethod
    def const(cls, c: Coeff, field: CyclotomicField = QQ) -> BiPoly:
        return cls(field, {(0, 0): c})

    @classmethod
    def x(cls, field: CyclotomicField = QQ) -> BiPoly:
        return cls(field, {(1, 0): 1})

    @classmethod
    def y(cls, field: CyclotomicField = QQ) -> BiPoly:
        return cls(field, {(0, 1): 1})

    @classmethod
    def from_upoly(cls, p: UPoly, var: str = "x") -> BiPoly:
        key = (lambda k: (k, 0)) if var == "x" else (lambda k: (0, k))
        return cls(p.field, {key(k): c for k, c in enumerate(p.coeffs)})

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def coeff(self, i: int, j: int) -> FieldElem:
        return self.terms.get((i, j), self.field.zero())

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, FieldElem)):
            other = BiPoly.const(other, self.field)
        return isinstance(other, BiPoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, frozenset(self.terms.items())))

    # arithmetic
    def _lift(self, other) -> BiPoly:
        if isinstance(other, BiPoly):
            if other.field != self.field:
                raise ValueError(f"cannot mix polynomials over {self.field} and {other.field}")
            return other
        return BiPoly.const(other, self.field)

    def __add__(self, other) -> BiPoly:
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> BiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> BiPoly:
        return (-self) + other

    def __mul__(self, other) -> BiPoly:
        if not isinstance(other, BiPoly):
            c = self.field(other)
            return BiPoly(self.field, {k: v * c for k, v in self.terms.items()})
        other = self._lift(other)
        out: dict[tuple[int, int], FieldElem] = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out[key] + a * b if key in out else a * b
        return BiPoly(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, c: Coeff) -> BiPoly:
        inv = self.field(c).inverse()
        return self * inv

    def __pow__(self, k: int) -> BiPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = BiPoly.const(1, self.field), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # calculus and evaluation
    def diff_x(self) -> BiPoly:
        return BiPoly(self.field, {(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def diff_y(self) -> BiPoly:
        return BiPoly(self.field, {(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def __call__(self, x: Coeff, y: Coeff) -> FieldElem:
        x, y = self.field(x), self.field(y)
        acc = self.field.zero()
        for (i, j), c in self.terms.items():
            acc = acc + c * x ** i * y ** j
        return acc

    def as_upoly(self, var: str) -> list[UPoly]:
        """Coefficients in `var`, each a polynomial in the other variable."""
        if var not in ("x", "y"):
            raise ValueError(f"variable must be 'x' or 'y', got {var!r}")
        main = 0 if var == "x" else 1
        deg = self.deg_x if var == "x" else self.deg_y
        rows: list[dict[int, FieldElem]] = [dict() for _ in range(deg + 1)]
        for key, c in self.terms.items():
            rows[key[main]][key[1 - main]] = c
        return [UPoly(self.field, [r.get(k, 0) for k in range(max(r, default=-1) + 1)])
                for r in rows]

    def specialize(self, var: str, value: Coeff) -> UPoly:
        """Substitute var = value; the result is a polynomial in the other variable."""
        value = self.field(value)
        other: dict[int, FieldElem] = {}
        for (i, j), c in self.terms.items():
            e, k = (i, j) if var == "x" else (j, i)
            other[k] = other.get(k, self.field.zero()) + c * value ** e
        return UPoly(self.field, [other.get(k, 0) for k in range(max(other, default=-1) + 1)])

    def shift(self, a: Coeff, b: Coeff) -> BiPoly:
        """P(x + a, y + b)."""
        a, b = self.field(a), self.field(b)
        out: dict[tuple[int, int], FieldElem] = {}
        for (i, j), c in self.terms.items():
            for k in range(i + 1):
                ca = c * comb(i, k) * a ** (i - k)
                if ca.is_zero():
                    continue
                for l in range(j + 1):
                    term = ca * comb(j, l) * b ** (j - l)
                    out[(k, l)] = out[(k, l)] + term if (k, l) in out else term
        return BiPoly(self.field, out)

    def homogeneous_part(self, degree: int) -> BiPoly:
        return BiPoly(self.field, {k: c for k, c in self.terms.items() if sum(k) == degree})

    def change_field(self, field: CyclotomicField) -> BiPoly:
        return BiPoly(field, {k: c.embed(field) for k, c in self.terms.items()})

    def uses_generator(self) -> bool:
        return any(not c.is_rational() for c in self.terms.values())

    # printing
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e)
            if c.is_rational():
                r = c.to_fraction()
                sign, mag = ("-" if r < 0 else "+"), abs(r)
                if not mono:
                    body = str(mag)
                else:
                    body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                sign = "+"
                body = f"({c})" + (f"*{mono}" if mono else "")
            pieces.append((sign, body))
        head = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        return head + "".join(f" {s} {b}" for s, b in pieces[1:])

    __repr__ = __str__


def linear_upoly(field: CyclotomicField, roots: Sequence[Coeff]) -> UPoly:
    """prod (t - r)."""
    out = UPoly(field, [1])
    for r in roots:
        out = out * UPoly(field, [-field(r), 1])
    return out
