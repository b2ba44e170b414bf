"""Exact arithmetic in the cyclotomic field Q(zeta_d).

Elements are stored densely as coefficient vectors in the power basis
1, zeta, ..., zeta^(phi(d)-1), always reduced modulo Phi_d.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


# dense polynomials over Q, lowest degree first, no trailing zeros

def _trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _pmul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _psub(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 1)
    lc = Fraction(b[-1])
    while len(_trim(r)) >= len(b):
        r = list(_trim(r))
        k = len(r) - len(b)
        c = r[-1] / lc
        q[k] = c
        for i, bi in enumerate(b):
            r[k + i] -= c * bi
    return _trim(q), _trim(r)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d via t^d - 1 = prod over e | d of Phi_e."""
    if d < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {d}")
    num: tuple = (-1,) + (0,) * (d - 1) + (1,)
    for e in range(1, d):
        if d % e == 0:
            num, rem = _pdivmod(num, cyclotomic_polynomial(e))
            assert not rem
    return tuple(int(c) for c in num)


@dataclass(frozen=True)
class CyclotomicField:
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"cyclotomic order must be a positive integer, got {self.d!r}")

    @property
    def modulus(self) -> tuple[int, ...]:
        return cyclotomic_polynomial(self.d)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def __call__(self, value: Rational | FieldElem | Sequence[Rational]) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElem(self, _reduce(self, (Fraction(value),)))
        return FieldElem(self, _reduce(self, tuple(Fraction(c) for c in value)))

    def zero(self) -> FieldElem:
        return self(0)

    def one(self) -> FieldElem:
        return self(1)

    def zeta(self, k: int = 1) -> FieldElem:
        """zeta^k for any integer k."""
        k %= self.d
        return self((0,) * k + (1,))

    def __str__(self) -> str:
        return "Q" if self.d <= 2 else f"Q(zeta_{self.d})"


@lru_cache(maxsize=None)
def _powers(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced forms of t^k for k < 2 * deg Phi_d."""
    mod = cyclotomic_polynomial(d)
    n = len(mod) - 1
    out = []
    for k in range(max(2 * n - 1, 1)):
        _, r = _pdivmod((0,) * k + (1,), mod)
        out.append(tuple(Fraction(c) for c in r) + (Fraction(0),) * (n - len(r)))
    return tuple(out)


def _reduce(field: CyclotomicField, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = field.degree
    if len(coeffs) <= n:
        return tuple(coeffs) + (Fraction(0),) * (n - len(coeffs))
    if len(coeffs) > 2 * n - 1:
        _, r = _pdivmod(coeffs, field.modulus)
        return tuple(Fraction(c) for c in r) + (Fraction(0),) * (n - len(r))
    pw = _powers(field.d)
    out = list(coeffs[:n])
    for k in range(n, len(coeffs)):
        c = coeffs[k]
        if c:
            for i, v in enumerate(pw[k]):
                if v:
                    out[i] += c * v
    return tuple(out)


@dataclass(frozen=True)
class FieldElem:
    field: CyclotomicField
    coeffs: tuple[Fraction, ...]

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError(f"cannot mix {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.degree == 1:
            return FieldElem(self.field, (self.coeffs[0] * other.coeffs[0],))
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return FieldElem(self.field, _reduce(self.field, prod))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.field.degree == 1:
            return FieldElem(self.field, (1 / self.coeffs[0],))
        # extended Euclid: s * self + t * Phi = 1
        r0, r1 = tuple(self.field.modulus), _trim(self.coeffs)
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = Fraction(r1[0])
        return self.field(tuple(x / c for x in s1))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElem(self.field, tuple(a / other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> FieldElem:
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, FieldElem):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.d, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, target: CyclotomicField) -> FieldElem:
        """Image under zeta_d -> zeta_L^(L/d), for d dividing L."""
        if target.d % self.field.d:
            raise ValueError(f"Q(zeta_{self.field.d}) does not embed in {target}")
        step = target.d // self.field.d
        out = target.zero()
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + target.zeta(i * step) * c
        return out

    def to_complex(self, dps: int = 30):
        import mpmath
        with mpmath.workdps(dps):
            z = mpmath.expjpi(mpmath.mpf(2) / self.field.d)
            return sum((mpmath.mpf(c.numerator) / c.denominator * z ** i
                        for i, c in enumerate(self.coeffs) if c), mpmath.mpc(0))

    def terms(self) -> Iterable[tuple[int, Fraction]]:
        return ((i, c) for i, c in enumerate(self.coeffs) if c)

    def __str__(self) -> str:
        parts = []
        for i, c in sorted(self.terms(), reverse=True):
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                gen = "w" if i == 1 else f"w^{i}"
                body = gen if mag == 1 else f"{mag}*{gen}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    __repr__ = __str__


QQ = CyclotomicField(1)
