"""Truncated power series over Q in the variable lambda.

The completed ring Q[[lambda]] is the coefficient ring of every map in the
package.  The local variable u of the holonomy local system embeds into it
through lambda^2 = u^{-1}(u - 1)^2, on the branch u = 1 + lambda + O(lambda^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

DEFAULT_ORDER = 24
INFINITY = math.inf

Valuation = Union[int, float]
Scalar = Union[int, Fraction]


class PrecisionExhausted(ArithmeticError):
    """Every stored coefficient vanishes but the series is not known to be zero."""


class TruncationMismatch(ValueError):
    pass


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class SeriesQ:
    """Element of Q[[lambda]] stored modulo lambda^order.

    ``exact`` records that no terms of degree >= order were dropped, i.e. the
    value is a polynomial held in full.  Only an exact series with no stored
    coefficients is the structural zero.
    """

    coeffs: tuple[Fraction, ...] = ()
    order: int = DEFAULT_ORDER
    exact: bool = True

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be positive")
        coeffs = _trim(Fraction(c) for c in self.coeffs[: self.order])
        if len(self.coeffs) > self.order and any(self.coeffs[self.order:]):
            object.__setattr__(self, "exact", False)
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> SeriesQ:
        return cls((), order, True)

    @classmethod
    def constant(cls, c: Scalar, order: int = DEFAULT_ORDER) -> SeriesQ:
        return cls((Fraction(c),), order, True)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> SeriesQ:
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1, order: int = DEFAULT_ORDER) -> SeriesQ:
        if degree < 0:
            raise ValueError("negative power of lambda")
        if c == 0:
            return cls.zero(order)
        if degree >= order:
            return cls((), order, False)
        return cls((0,) * degree + (Fraction(c),), order, True)

    @classmethod
    def lam(cls, order: int = DEFAULT_ORDER) -> SeriesQ:
        return cls.monomial(1, 1, order)

    # -- queries ------------------------------------------------------------
    @property
    def exact_zero(self) -> bool:
        return self.exact and not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if k < 0 or k >= self.order:
            raise IndexError(k)
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self) -> Valuation:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        if self.exact:
            return INFINITY
        raise PrecisionExhausted(
            f"valuation >= {self.order}; raise the truncation order"
        )

    def leading_coefficient(self) -> Fraction:
        v = self.valuation()
        return Fraction(0) if v == INFINITY else self.coeffs[v]

    def is_unit(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] != 0

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: SeriesQ) -> None:
        if self.order != other.order:
            raise TruncationMismatch(f"orders {self.order} and {other.order}")

    def _coerce(self, other) -> SeriesQ:
        if isinstance(other, SeriesQ):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesQ.constant(other, self.order)
        return NotImplemented

    def __add__(self, other) -> SeriesQ:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return SeriesQ(tuple(x + y for x, y in zip(a, b)), self.order,
                       self.exact and other.exact)

    __radd__ = __add__

    def __neg__(self) -> SeriesQ:
        return SeriesQ(tuple(-c for c in self.coeffs), self.order, self.exact)

    def __sub__(self, other) -> SeriesQ:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> SeriesQ:
        return (-self) + other

    def scale(self, c: Scalar) -> SeriesQ:
        c = Fraction(c)
        if c == 0:
            return SeriesQ.zero(self.order)
        return SeriesQ(tuple(c * x for x in self.coeffs), self.order, self.exact)

    def __mul__(self, other) -> SeriesQ:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SeriesQ):
            return NotImplemented
        self._check(other)
        if self.exact_zero or other.exact_zero:
            return SeriesQ.zero(self.order)
        a, b, n = self.coeffs, other.coeffs, self.order
        out = [Fraction(0)] * min(n, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] += x * b[j]
        exact = self.exact and other.exact and len(a) + len(b) - 2 < n
        return SeriesQ(tuple(out), n, exact)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SeriesQ:
        if k < 0:
            return self.inverse() ** (-k)
        result = SeriesQ.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> SeriesQ:
        """Multiplicative inverse of a unit (nonzero constant term)."""
        if not self.is_unit():
            raise ZeroDivisionError("series with zero constant term is not a unit")
        a, n = self.coeffs, self.order
        inv = [Fraction(0)] * n
        inv[0] = 1 / a[0]
        for k in range(1, n):
            s = sum((a[j] * inv[k - j] for j in range(1, min(k, len(a) - 1) + 1)),
                    Fraction(0))
            inv[k] = -s * inv[0]
        exact = len(a) == 1
        return SeriesQ(tuple(inv), n, exact)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SeriesQ.constant(other, self.order)
        if not isinstance(other, SeriesQ):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def truncate(self, order: int) -> SeriesQ:
        """Re-express at a different truncation order (lower only, unless exact)."""
        if order > self.order and not self.exact:
            raise PrecisionExhausted("cannot extend an inexact series")
        exact = self.exact and len(self.coeffs) <= order
        return SeriesQ(self.coeffs[:order], order, exact)

    # -- serialization ----------------------------------------------------
    def to_strings(self) -> list[str]:
        return [f"{self[k].numerator}/{self[k].denominator}" for k in range(self.order)]

    @classmethod
    def from_strings(cls, items: list[str], exact: bool = False) -> SeriesQ:
        return cls(tuple(Fraction(s) for s in items), len(items), exact)

    def __repr__(self) -> str:
        if self.exact_zero:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("λ" if k == 1 else f"λ^{k}")
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{mono}" if c.denominator == 1 else f"({c}){mono}")
        body = " + ".join(terms) if terms else "0"
        return body if self.exact else f"{body} + O(λ^{self.order})"


def add(a: SeriesQ, b: SeriesQ) -> SeriesQ:
    return a + b


def mul(a: SeriesQ, b: SeriesQ) -> SeriesQ:
    return a * b


def scale(c: Scalar, a: SeriesQ) -> SeriesQ:
    return a.scale(c)


def valuation(a: SeriesQ) -> Valuation:
    return a.valuation()


@lru_cache(maxsize=None)
def u_series(order: int = DEFAULT_ORDER) -> SeriesQ:
    """The root u(lambda) of (u - 1)^2 = u lambda^2 with u - 1 = lambda + O(lambda^2).

    Writing u - 1 = lambda * w turns the quadratic into w^2 - lambda w - 1 = 0,
    whose derivative 2w - lambda is a unit, so Newton iteration from w = 1
    doubles the number of correct coefficients each step.
    """
    lam = SeriesQ.lam(order)
    w = SeriesQ.one(order)
    for _ in range(max(1, order.bit_length() + 1)):
        g = w * w - lam * w - 1
        w = w - g * (w.scale(2) - lam).inverse()
    return SeriesQ(((lam * w) + 1).coeffs, order, False)


@lru_cache(maxsize=None)
def _u_power(k: int, order: int) -> SeriesQ:
    if k == 0:
        return SeriesQ.one(order)
    u = u_series(order)
    if k < 0:
        return _u_power(k + 1, order) * u.inverse()
    return _u_power(k - 1, order) * u


@dataclass(frozen=True)
class LaurentU:
    """Laurent polynomial in u with rational coefficients."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        acc: dict[int, Fraction] = {}
        for e, c in self.terms:
            acc[int(e)] = acc.get(int(e), Fraction(0)) + Fraction(c)
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c))
        )

    @classmethod
    def from_dict(cls, d: Mapping[int, Scalar]) -> LaurentU:
        return cls(tuple(d.items()))

    @classmethod
    def u(cls, power: int = 1) -> LaurentU:
        return cls(((power, Fraction(1)),))

    @classmethod
    def constant(cls, c: Scalar) -> LaurentU:
        return cls(((0, Fraction(c)),))

    def _coerce(self, other) -> LaurentU:
        if isinstance(other, LaurentU):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentU.constant(other)
        return NotImplemented

    def __add__(self, other) -> LaurentU:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentU(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentU:
        return LaurentU(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> LaurentU:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentU:
        return (-self) + other

    def __mul__(self, other) -> LaurentU:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentU(tuple((e1 + e2, c1 * c2)
                              for e1, c1 in self.terms for e2, c2 in other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentU:
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms
            return LaurentU(((-e * (-k), 1 / c ** (-k)),))
        out = LaurentU.constant(1)
        for _ in range(k):
            out = out * self
        return out


def embed_laurent_u(p: LaurentU, order: int = DEFAULT_ORDER) -> SeriesQ:
    """Image of p under u -> u(lambda) in the completion at u = 1."""
    out = SeriesQ.zero(order)
    for e, c in p.terms:
        out = out + _u_power(e, order).scale(c)
    if all(e == 0 for e, _ in p.terms):
        return SeriesQ(out.coeffs, order, True)
    return SeriesQ(out.coeffs, order, False)
