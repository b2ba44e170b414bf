"""Free Q[[lambda]]-modules with the u_I basis and the elementary cobordism maps.

The rank-2 module of an unknot is the Frobenius algebra A = R[X]/(X^2 - lambda^2)
with u_+ = 1 and u_- = X.  A link with l components gets the tensor power,
indexed by sign vectors I in {+1, -1}^l ordered lexicographically with +1 first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .series import DEFAULT_ORDER, SeriesQ, embed_laurent_u, LaurentU

PLUS, MINUS = 1, -1
Index = tuple[int, ...]


def basis(l: int) -> list[Index]:
    return list(itertools.product((PLUS, MINUS), repeat=l))


def index_of(I: Sequence[int]) -> int:
    """Position of I in the lexicographic order (first factor most significant)."""
    pos = 0
    for s in I:
        if s not in (PLUS, MINUS):
            raise ValueError(f"bad sign {s!r}")
        pos = 2 * pos + (s == MINUS)
    return pos


def index_string(I: Sequence[int]) -> str:
    return "".join("+" if s == PLUS else "-" for s in I)


def parse_index(text: str) -> Index:
    out = []
    for ch in text.strip():
        if ch == "+":
            out.append(PLUS)
        elif ch in "-−":
            out.append(MINUS)
        else:
            raise ValueError(f"index must use '+' and '-' only: {text!r}")
    return tuple(out)


def n_minus(I: Sequence[int]) -> int:
    return sum(1 for s in I if s == MINUS)


@dataclass(frozen=True)
class ModuleMap:
    """Matrix over SeriesQ; columns are images of source basis vectors."""

    source_exp: int
    target_exp: int
    entries: tuple[tuple[SeriesQ, ...], ...]

    def __post_init__(self):
        rows, cols = 2 ** self.target_exp, 2 ** self.source_exp
        entries = tuple(tuple(r) for r in self.entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"expected a {rows}x{cols} matrix")
        orders = {e.order for r in entries for e in r}
        if len(orders) > 1:
            raise ValueError("entries have mixed truncation orders")
        object.__setattr__(self, "entries", entries)

    @property
    def order(self) -> int:
        return self.entries[0][0].order

    @property
    def shape(self) -> tuple[int, int]:
        return 2 ** self.target_exp, 2 ** self.source_exp

    @classmethod
    def from_columns(cls, source_exp: int, target_exp: int,
                     columns: Mapping[Index, Mapping[Index, SeriesQ]],
                     order: int = DEFAULT_ORDER) -> ModuleMap:
        rows, cols = 2 ** target_exp, 2 ** source_exp
        grid = [[SeriesQ.zero(order)] * cols for _ in range(rows)]
        for J, col in columns.items():
            j = index_of(J)
            for I, c in col.items():
                grid[index_of(I)][j] = grid[index_of(I)][j] + c
        return cls(source_exp, target_exp, tuple(tuple(r) for r in grid))

    def entry(self, I: Sequence[int], J: Sequence[int]) -> SeriesQ:
        return self.entries[index_of(I)][index_of(J)]

    def image(self, J: Sequence[int]) -> dict[Index, SeriesQ]:
        """Nonzero coordinates of the image of u_J."""
        j = index_of(J)
        return {I: self.entries[i][j] for i, I in enumerate(basis(self.target_exp))
                if not self.entries[i][j].exact_zero}

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        """self after other."""
        if other.target_exp != self.source_exp:
            raise ValueError("composition of incompatible maps")
        n_rows, n_mid = self.shape
        n_cols = other.shape[1]
        zero = SeriesQ.zero(self.order)
        out = []
        for i in range(n_rows):
            row = []
            for j in range(n_cols):
                acc = zero
                for k in range(n_mid):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not (a.exact_zero or b.exact_zero):
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return ModuleMap(other.source_exp, self.target_exp, tuple(out))

    def scale(self, c: SeriesQ | int | Fraction) -> ModuleMap:
        if not isinstance(c, SeriesQ):
            c = SeriesQ.constant(c, self.order)
        return ModuleMap(self.source_exp, self.target_exp,
                         tuple(tuple(c * e for e in r) for r in self.entries))

    def __add__(self, other: ModuleMap) -> ModuleMap:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ModuleMap(self.source_exp, self.target_exp,
                         tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    def valuation_pattern(self) -> list[list[float | int]]:
        return [[e.valuation() for e in r] for r in self.entries]

    def permute_target(self, perm: Sequence[int]) -> ModuleMap:
        """Reorder target tensor factors: new factor i is old factor perm[i]."""
        l = self.target_exp
        if sorted(perm) != list(range(l)):
            raise ValueError("not a permutation")
        rows = [None] * (2 ** l)
        for I in basis(l):
            new = tuple(I[perm[i]] for i in range(l))
            rows[index_of(new)] = self.entries[index_of(I)]
        return ModuleMap(self.source_exp, l, tuple(rows))

    def to_json(self) -> dict:
        return {
            "source_exp": self.source_exp,
            "target_exp": self.target_exp,
            "source_basis": [index_string(I) for I in basis(self.source_exp)],
            "target_basis": [index_string(I) for I in basis(self.target_exp)],
            "entries": [[e.to_strings() for e in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> ModuleMap:
        return cls(int(data["source_exp"]), int(data["target_exp"]),
                   tuple(tuple(SeriesQ.from_strings(e) for e in r)
                         for r in data["entries"]))


def identity(l: int, order: int = DEFAULT_ORDER) -> ModuleMap:
    n = 2 ** l
    one, zero = SeriesQ.one(order), SeriesQ.zero(order)
    return ModuleMap(l, l, tuple(tuple(one if i == j else zero for j in range(n))
                                 for i in range(n)))


def tensor(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    """Kronecker product; f's factors come first."""
    if f.order != g.order:
        raise ValueError("truncation orders differ")
    fr, fc = f.shape
    gr, gc = g.shape
    rows = []
    for i in range(fr):
        for k in range(gr):
            rows.append(tuple(f.entries[i][j] * g.entries[k][l]
                              for j in range(fc) for l in range(gc)))
    return ModuleMap(f.source_exp + g.source_exp, f.target_exp + g.target_exp,
                     tuple(rows))


def _lam(k: int, order: int, c: int | Fraction = 1) -> SeriesQ:
    return SeriesQ.monomial(k, c, order)


def x_action(sign: int, knot_class: int = 0, order: int = DEFAULT_ORDER
             ) -> tuple[int, SeriesQ]:
    """X acting on v_sign in the rank-2 module M_k of a knot of class k.

    X v_+ = lambda^k v_-, X v_- = lambda^(2-k) v_+; M_0 is A itself.
    """
    if sign == PLUS:
        return MINUS, _lam(knot_class, order)
    return PLUS, _lam(2 - knot_class, order)


def _map(source_exp: int, target_exp: int, images: Mapping[Index, Mapping[Index, SeriesQ]],
         order: int) -> ModuleMap:
    return ModuleMap.from_columns(source_exp, target_exp, images, order)


def merge_map(order: int = DEFAULT_ORDER) -> ModuleMap:
    one = SeriesQ.one(order)
    return _map(2, 1, {
        (PLUS, PLUS): {(PLUS,): one},
        (PLUS, MINUS): {(MINUS,): one},
        (MINUS, PLUS): {(MINUS,): one},
        (MINUS, MINUS): {(PLUS,): _lam(2, order)},
    }, order)


def split_map(order: int = DEFAULT_ORDER) -> ModuleMap:
    one = SeriesQ.one(order)
    return _map(1, 2, {
        (PLUS,): {(PLUS, MINUS): one, (MINUS, PLUS): one},
        (MINUS,): {(MINUS, MINUS): one, (PLUS, PLUS): _lam(2, order)},
    }, order)


def birth_map(order: int = DEFAULT_ORDER) -> ModuleMap:
    return _map(0, 1, {(): {(PLUS,): SeriesQ.one(order)}}, order)


def death_map(order: int = DEFAULT_ORDER) -> ModuleMap:
    return _map(1, 0, {(MINUS,): {(): SeriesQ.one(order)}}, order)


def torus_map(order: int = DEFAULT_ORDER) -> ModuleMap:
    return _map(1, 1, {
        (PLUS,): {(MINUS,): SeriesQ.constant(2, order)},
        (MINUS,): {(PLUS,): _lam(2, order, 2)},
    }, order)


def twist_scalar(sign: str, order: int = DEFAULT_ORDER) -> SeriesQ:
    """Factor picked up by a positive (or finger) move, or by a negative twist."""
    if sign in ("+", PLUS):
        return embed_laurent_u(1 - LaurentU.u(2), order)
    if sign in ("-", MINUS):
        return SeriesQ.one(order)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True)
class FrobeniusData:
    merge: ModuleMap
    split: ModuleMap
    birth: ModuleMap
    death: ModuleMap
    torus: ModuleMap

    @classmethod
    def standard(cls, order: int = DEFAULT_ORDER) -> FrobeniusData:
        return cls(merge_map(order), split_map(order), birth_map(order),
                   death_map(order), torus_map(order))

    def axioms(self) -> dict[str, bool]:
        m, s, b, e, t = self.merge, self.split, self.birth, self.death, self.torus
        order = m.order
        i1 = identity(1, order)
        i0 = identity(0, order)
        return {
            "merge_split_is_torus": m @ s == t,
            "associative": m @ tensor(m, i1) == m @ tensor(i1, m),
            "coassociative": tensor(s, i1) @ s == tensor(i1, s) @ s,
            "frobenius_left": tensor(m, i1) @ tensor(i1, s) == s @ m,
            "frobenius_right": tensor(i1, m) @ tensor(s, i1) == s @ m,
            "unit_left": m @ tensor(b, i1) == i1,
            "unit_right": m @ tensor(i1, b) == i1,
            "counit_left": tensor(e, i1) @ s == i1,
            "counit_right": tensor(i1, e) @ s == i1,
            "commutative": m @ swap_map(order) == m,
            "cocommutative": swap_map(order) @ s == s,
            "torus_squared": t @ t == i1.scale(SeriesQ.monomial(2, 4, order)),
            "sphere_is_zero": e @ b == i0.scale(0),
        }


def swap_map(order: int = DEFAULT_ORDER) -> ModuleMap:
    one = SeriesQ.one(order)
    return _map(2, 2, {(a, b): {(b, a): one} for a in (PLUS, MINUS) for b in (PLUS, MINUS)},
                order)


def frobenius(order: int = DEFAULT_ORDER) -> FrobeniusData:
    return FrobeniusData.standard(order)

