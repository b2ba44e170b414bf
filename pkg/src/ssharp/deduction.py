"""Bounded exhaustive search for small nonnegative integer valuation unknowns."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

OPS = ("==", "<=", ">=")


class Inconsistent(ValueError):
    """No assignment satisfies the system."""


@dataclass(frozen=True)
class LinearConstraint:
    """sum(coeff * unknown) <op> rhs."""

    coeffs: tuple[tuple[str, int], ...]
    op: str
    rhs: int

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"op must be one of {OPS}, got {self.op!r}")
        merged: dict[str, int] = {}
        for name, c in self.coeffs:
            merged[name] = merged.get(name, 0) + int(c)
        object.__setattr__(self, "coeffs",
                           tuple(sorted((n, c) for n, c in merged.items() if c)))

    @classmethod
    def of(cls, lhs: Mapping[str, int], op: str, rhs: int) -> LinearConstraint:
        return cls(tuple(lhs.items()), op, rhs)

    def holds(self, values: Mapping[str, int]) -> bool:
        total = sum(c * values[n] for n, c in self.coeffs)
        if self.op == "==":
            return total == self.rhs
        if self.op == "<=":
            return total <= self.rhs
        return total >= self.rhs

    @property
    def names(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.coeffs)


def eq(lhs: Mapping[str, int], rhs: int = 0) -> LinearConstraint:
    return LinearConstraint.of(lhs, "==", rhs)


@dataclass(frozen=True)
class ValuationConstraintSystem:
    unknowns: tuple[str, ...]
    constraints: tuple[LinearConstraint, ...] = ()
    min_zero: tuple[tuple[str, ...], ...] = ()   # axiom: min over the group is 0
    bound: int = 8

    def __post_init__(self):
        object.__setattr__(self, "unknowns", tuple(self.unknowns))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "min_zero", tuple(tuple(g) for g in self.min_zero))
        if len(set(self.unknowns)) != len(self.unknowns):
            raise ValueError("duplicate unknown names")
        declared = set(self.unknowns)
        for c in self.constraints:
            if not c.names <= declared:
                raise ValueError(f"undeclared unknowns {sorted(c.names - declared)}")
        for g in self.min_zero:
            if not set(g) <= declared or not g:
                raise ValueError(f"bad min-zero group {g}")
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")

    def to_json(self) -> dict:
        return {
            "unknowns": list(self.unknowns),
            "constraints": [{"lhs": dict(c.coeffs), "op": c.op, "rhs": c.rhs}
                            for c in self.constraints],
            "min_zero": [list(g) for g in self.min_zero],
            "bound": self.bound,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> ValuationConstraintSystem:
        try:
            unknowns = tuple(str(u) for u in data["unknowns"])
            constraints = tuple(LinearConstraint.of({str(k): int(v) for k, v in c["lhs"].items()},
                                                    c["op"], int(c["rhs"]))
                                for c in data.get("constraints", []))
            groups = tuple(tuple(g) for g in data.get("min_zero", []))
            bound = int(data.get("bound", 8))
        except (KeyError, TypeError, AttributeError) as e:
            raise ValueError(f"malformed constraint system: {e}") from None
        return cls(unknowns, constraints, groups, bound)


@dataclass(frozen=True)
class Deduction:
    unknowns: tuple[str, ...]
    solutions: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def unique(self) -> bool:
        return bool(self.unknowns) and len(self.solutions) == 1

    @property
    def assignment(self) -> dict[str, int]:
        if not self.unique:
            raise ValueError("system is underdetermined")
        return dict(zip(self.unknowns, self.solutions[0]))

    def values(self, name: str) -> list[int]:
        i = self.unknowns.index(name)
        return sorted({s[i] for s in self.solutions})

    @property
    def ranges(self) -> dict[str, tuple[int, int]]:
        return {n: (min(self.values(n)), max(self.values(n))) for n in self.unknowns}

    def to_json(self) -> dict:
        if self.unique:
            return {"status": "unique", "assignment": self.assignment}
        return {"status": "underdetermined",
                "values": {n: self.values(n) for n in self.unknowns},
                "ranges": {n: list(r) for n, r in self.ranges.items()},
                "solutions": len(self.solutions)}


def deduce_valuations(system: ValuationConstraintSystem) -> Deduction:
    """All assignments in [0, bound]^n satisfying the system, by backtracking.

    A constraint is checked as soon as its last unknown is assigned.
    Raises Inconsistent if nothing survives.
    """
    names = system.unknowns
    pos = {n: i for i, n in enumerate(names)}
    checks: list[list] = [[] for _ in names]
    for c in system.constraints:
        if c.names:
            checks[max(pos[n] for n in c.names)].append(c.holds)
        elif not c.holds({}):
            raise Inconsistent(f"constant constraint {c} fails")
    for g in system.min_zero:
        checks[max(pos[n] for n in g)].append(
            lambda v, g=g: min(v[n] for n in g) == 0)

    solutions: list[tuple[int, ...]] = []
    values: dict[str, int] = {}

    def search(i: int) -> None:
        if i == len(names):
            solutions.append(tuple(values[n] for n in names))
            return
        for x in range(system.bound + 1):
            values[names[i]] = x
            if all(chk(values) for chk in checks[i]):
                search(i + 1)
        del values[names[i]]

    search(0)
    if not solutions:
        raise Inconsistent("no assignment within bounds satisfies the system")
    return Deduction(names, tuple(solutions))
