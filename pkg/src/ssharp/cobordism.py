"""Presentations of immersed cobordisms as move sequences, and their induced maps.

Components of the current link are kept in a list.  Birth and Split append a
new component at the end; Merge(a, b) keeps the result at min(a, b) and drops
the higher index.  Each component is either an unknot (module A) or a knotted
component of class k in {0, 1, 2} whose module M_k has
X v_+ = lambda^k v_-, X v_- = lambda^(2-k) v_+.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .module import MINUS, PLUS, Index, ModuleMap, basis, twist_scalar, x_action
from .series import DEFAULT_ORDER, SeriesQ


class IllFormed(ValueError):
    pass


# -- moves ---------------------------------------------------------------------

@dataclass(frozen=True)
class Birth:
    pass


@dataclass(frozen=True)
class Death:
    c: int


@dataclass(frozen=True)
class Merge:
    a: int
    b: int


@dataclass(frozen=True)
class Split:
    c: int


@dataclass(frozen=True)
class AddGenus:
    c: int


@dataclass(frozen=True)
class PositiveTwist:
    c: int


@dataclass(frozen=True)
class NegativeTwist:
    c: int


@dataclass(frozen=True)
class FingerMove:
    c: int


@dataclass(frozen=True)
class Curve:
    """A piece of complex curve capping unknots into knotted components.

    Per component: genus g, and the lambda-exponents m_+ and m_- of the images
    of u_+ and u_-.  Even g sends u_+ to the v_+ line, odd g to the v_- line.
    double_points counts all (positive) nodes of the piece, including nodes
    between different components.
    """

    components: tuple[int, ...]
    genus: tuple[int, ...]
    double_points: int
    m_plus: tuple[int, ...]
    m_minus: tuple[int, ...]

    def __post_init__(self):
        for name in ("components", "genus", "m_plus", "m_minus"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        n = len(self.components)
        if n == 0 or any(len(getattr(self, k)) != n for k in ("genus", "m_plus", "m_minus")):
            raise IllFormed("Curve fields must be nonempty lists of equal length")
        if len(set(self.components)) != n:
            raise IllFormed("Curve components must be distinct")
        if self.double_points < 0 or min(self.genus + self.m_plus + self.m_minus) < 0:
            raise IllFormed("Curve data must be nonnegative")
        for mp, mm in zip(self.m_plus, self.m_minus):
            if not 0 <= mm - mp <= 2:
                raise IllFormed("Curve needs 0 <= m_minus - m_plus <= 2")

    def knot_class(self, i: int) -> int:
        g, mp, mm = self.genus[i], self.m_plus[i], self.m_minus[i]
        return mm - mp if g % 2 == 0 else 2 + mp - mm


Move = Union[Birth, Death, Merge, Split, AddGenus, PositiveTwist, NegativeTwist,
             FingerMove, Curve]
MOVE_KINDS = {cls.__name__: cls for cls in
              (Birth, Death, Merge, Split, AddGenus, PositiveTwist, NegativeTwist,
               FingerMove, Curve)}


def move_to_json(move: Move) -> dict:
    out: dict = {"kind": type(move).__name__}
    for f in fields(move):
        v = getattr(move, f.name)
        out[f.name] = list(v) if isinstance(v, tuple) else v
    return out


def move_from_json(data: Mapping) -> Move:
    try:
        cls = MOVE_KINDS[data["kind"]]
    except KeyError:
        raise IllFormed(f"unknown move kind {data.get('kind')!r}") from None
    try:
        kwargs = {f.name: data[f.name] for f in fields(cls)}
    except KeyError as e:
        raise IllFormed(f"{cls.__name__} is missing field {e.args[0]!r}") from None
    for k, v in kwargs.items():
        if isinstance(v, bool) or not isinstance(v, (int, list)):
            raise IllFormed(f"{cls.__name__}.{k} has invalid value {v!r}")
    return cls(**kwargs)


@dataclass(frozen=True)
class CobordismPresentation:
    source_components: int
    moves: tuple[Move, ...] = ()

    def __post_init__(self):
        if self.source_components < 0:
            raise IllFormed("negative component count")
        object.__setattr__(self, "moves", tuple(self.moves))

    def then(self, *moves: Move) -> CobordismPresentation:
        return CobordismPresentation(self.source_components, self.moves + moves)

    def to_json(self) -> dict:
        return {"source_components": self.source_components,
                "moves": [move_to_json(m) for m in self.moves]}

    @classmethod
    def from_json(cls, data: Mapping) -> CobordismPresentation:
        if not isinstance(data, Mapping) or "source_components" not in data:
            raise IllFormed("presentation needs 'source_components' and 'moves'")
        return cls(int(data["source_components"]),
                   tuple(move_from_json(m) for m in data.get("moves", [])))


# -- component state -------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    knot_class: int = 0
    knotted: bool = False


UNKNOT = Component()


# -- ledger --------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """A connected component of the (abstract) surface."""

    chi: int
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    @property
    def boundary(self) -> int:
        return len(self.sources) + len(self.targets)

    @property
    def genus(self) -> int:
        twice = 2 - self.chi - self.boundary
        if twice < 0 or twice % 2:
            raise IllFormed(f"inconsistent Euler characteristic {self.chi}")
        return twice // 2


@dataclass(frozen=True)
class TopologyLedger:
    source_components: int
    target_components: int
    pieces: tuple[Piece, ...]
    p: int
    n_neg: int
    target_kinds: tuple[Component, ...]

    @property
    def chi(self) -> int:
        return sum(pc.chi for pc in self.pieces)

    @property
    def genus(self) -> int:
        return sum(pc.genus for pc in self.pieces)

    @property
    def connected(self) -> bool:
        return len(self.pieces) == 1

    @property
    def component_preserving(self) -> bool:
        return (self.source_components == self.target_components
                and all(len(pc.sources) == 1 and len(pc.targets) == 1
                        for pc in self.pieces))

    @property
    def touches_source(self) -> bool:
        return all(pc.sources for pc in self.pieces)

    def _piece_of_target(self) -> dict[int, Piece]:
        return {k: pc for pc in self.pieces for k in pc.targets}

    @property
    def component_map(self) -> tuple[int, ...]:
        """Source component of each target component (component-preserving only)."""
        if not self.component_preserving:
            raise IllFormed("component map needs a component-preserving cobordism")
        by_target = self._piece_of_target()
        return tuple(by_target[k].sources[0] for k in range(self.target_components))

    @property
    def component_genus(self) -> tuple[int, ...]:
        if not self.component_preserving:
            raise IllFormed("per-component genus needs a component-preserving cobordism")
        by_target = self._piece_of_target()
        return tuple(by_target[k].genus for k in range(self.target_components))

    def to_json(self) -> dict:
        out = {
            "source_components": self.source_components,
            "target_components": self.target_components,
            "chi": self.chi,
            "genus": self.genus,
            "p": self.p,
            "n_neg": self.n_neg,
            "connected": self.connected,
            "component_preserving": self.component_preserving,
            "pieces": [{"chi": pc.chi, "genus": pc.genus, "sources": list(pc.sources),
                        "targets": list(pc.targets)} for pc in self.pieces],
        }
        if self.component_preserving:
            out["component_map"] = list(self.component_map)
            out["component_genus"] = list(self.component_genus)
        return out


# -- replay ----------------------------------------------------------------------

Column = dict[Index, SeriesQ]


@dataclass
class _State:
    comps: list[Component]
    piece_of: list[int]          # piece id of each current component
    chi: dict[int, int]
    sources: dict[int, list[int]]
    columns: dict[Index, Column] | None
    order: int
    p: int = 0
    n_neg: int = 0
    twists: int = 0
    next_piece: int = 0

    def new_piece(self, chi: int, sources: list[int]) -> int:
        pid = self.next_piece
        self.next_piece += 1
        self.chi[pid] = chi
        self.sources[pid] = sources
        return pid

    def union(self, a: int, b: int) -> int:
        if a == b:
            return a
        keep, drop = min(a, b), max(a, b)
        self.chi[keep] += self.chi.pop(drop)
        self.sources[keep] += self.sources.pop(drop)
        self.piece_of = [keep if q == drop else q for q in self.piece_of]
        return keep


def _check_index(state: _State, c: int, move: Move) -> None:
    if not isinstance(c, int) or not 0 <= c < len(state.comps):
        raise IllFormed(f"{move}: component {c} out of range "
                        f"(link has {len(state.comps)} components)")


def _transform(state: _State, rule) -> None:
    """Apply a basis-level rule: key -> list of (new_key, coefficient)."""
    if state.columns is None:
        return
    new_cols = {}
    for J, col in state.columns.items():
        out: Column = {}
        for key, coeff in col.items():
            for nkey, c in rule(key):
                term = coeff * c
                if nkey in out:
                    out[nkey] = out[nkey] + term
                else:
                    out[nkey] = term
        new_cols[J] = {k: v for k, v in out.items() if not v.exact_zero}
    state.columns = new_cols


def _replay(pres: CobordismPresentation, source_kinds: Sequence[Component] | None,
            order: int, with_map: bool) -> _State:
    l = pres.source_components
    kinds = list(source_kinds) if source_kinds is not None else [UNKNOT] * l
    if len(kinds) != l:
        raise IllFormed("source_kinds length must equal source_components")
    one = SeriesQ.one(order)
    state = _State(comps=kinds, piece_of=[], chi={}, sources={},
                   columns={J: {J: one} for J in basis(l)} if with_map else None,
                   order=order)
    for j in range(l):
        state.piece_of.append(state.new_piece(0, [j]))

    for move in pres.moves:
        if isinstance(move, Birth):
            state.comps.append(UNKNOT)
            state.piece_of.append(state.new_piece(1, []))
            _transform(state, lambda key: [(key + (PLUS,), one)])
        elif isinstance(move, Death):
            c = move.c
            _check_index(state, c, move)
            if state.comps[c].knotted:
                raise IllFormed(f"{move}: only unknotted components can be capped")
            state.chi[state.piece_of[c]] += 1
            del state.comps[c]
            del state.piece_of[c]
            _transform(state, lambda key, c=c:
                       [(key[:c] + key[c + 1:], one)] if key[c] == MINUS else [])
        elif isinstance(move, Merge):
            a, b = move.a, move.b
            _check_index(state, a, move)
            _check_index(state, b, move)
            if a == b:
                raise IllFormed(f"{move}: cannot merge a component with itself")
            ka, kb = state.comps[a], state.comps[b]
            if ka.knotted and kb.knotted and state.columns is not None:
                # the topology is still tracked by validate(); only the map is undetermined
                raise IllFormed(f"{move}: the map of a merge of two knotted components "
                                "is not determined")
            lo, hi = min(a, b), max(a, b)
            # the knotted side (if any) is the module, the unknot acts on it
            mod, act = (a, b) if ka.knotted else (b, a)
            k = state.comps[mod].knot_class
            pid = state.union(state.piece_of[a], state.piece_of[b])
            state.chi[pid] -= 1
            state.comps[lo] = state.comps[mod]
            del state.comps[hi]
            del state.piece_of[hi]

            def rule(key, mod=mod, act=act, lo=lo, hi=hi, k=k):
                s_mod, s_act = key[mod], key[act]
                if s_act == PLUS:
                    sign, c = s_mod, one
                else:
                    sign, c = x_action(s_mod, k, order)
                nkey = list(key)
                nkey[lo] = sign
                del nkey[hi]
                return [(tuple(nkey), c)]
            _transform(state, rule)
        elif isinstance(move, Split):
            c = move.c
            _check_index(state, c, move)
            k = state.comps[c].knot_class
            state.chi[state.piece_of[c]] -= 1
            state.comps.append(UNKNOT)
            state.piece_of.append(state.piece_of[c])

            def rule(key, c=c, k=k):
                sign, coeff = x_action(key[c], k, order)
                moved = key[:c] + (sign,) + key[c + 1:]
                return [(moved + (PLUS,), coeff), (key + (MINUS,), one)]
            _transform(state, rule)
        elif isinstance(move, AddGenus):
            c = move.c
            _check_index(state, c, move)
            k = state.comps[c].knot_class
            state.chi[state.piece_of[c]] -= 2
            two = SeriesQ.constant(2, order)

            def rule(key, c=c, k=k):
                sign, coeff = x_action(key[c], k, order)
                return [(key[:c] + (sign,) + key[c + 1:], coeff * two)]
            _transform(state, rule)
        elif isinstance(move, (PositiveTwist, NegativeTwist, FingerMove)):
            _check_index(state, move.c, move)
            if isinstance(move, NegativeTwist):
                state.n_neg += 1
            else:
                state.p += 1
                state.twists += 1
                if isinstance(move, FingerMove):
                    state.n_neg += 1
        elif isinstance(move, Curve):
            for c in move.components:
                _check_index(state, c, move)
                if state.comps[c].knotted:
                    raise IllFormed(f"{move}: component {c} is already knotted")
            for i, c in enumerate(move.components):
                state.chi[state.piece_of[c]] -= 2 * move.genus[i]
                state.comps[c] = Component(move.knot_class(i), True)
            state.p += move.double_points

            def rule(key, move=move):
                nkey = list(key)
                coeff = one
                for i, c in enumerate(move.components):
                    odd = move.genus[i] % 2
                    if key[c] == PLUS:
                        nkey[c] = MINUS if odd else PLUS
                        e = move.m_plus[i]
                    else:
                        nkey[c] = PLUS if odd else MINUS
                        e = move.m_minus[i]
                    coeff = coeff * SeriesQ.monomial(e, 1, order)
                return [(tuple(nkey), coeff)]
            _transform(state, rule)
        else:
            raise IllFormed(f"unknown move {move!r}")
    return state


def _ledger(pres: CobordismPresentation, state: _State) -> TopologyLedger:
    pieces = []
    for pid in sorted(state.chi):
        targets = tuple(k for k, q in enumerate(state.piece_of) if q == pid)
        pieces.append(Piece(state.chi[pid], tuple(sorted(state.sources[pid])), targets))
    ledger = TopologyLedger(pres.source_components, len(state.comps), tuple(pieces),
                            state.p, state.n_neg, tuple(state.comps))
    for pc in ledger.pieces:
        pc.genus  # raises on inconsistent chi
    return ledger


def validate(pres: CobordismPresentation,
             source_kinds: Sequence[Component] | None = None) -> TopologyLedger:
    return _ledger(pres, _replay(pres, source_kinds, DEFAULT_ORDER, with_map=False))


@dataclass(frozen=True)
class Compiled:
    """Induced map kept as polynomial columns times twist_scalar(+)^twists."""

    source_exp: int
    target_exp: int
    columns: Mapping[Index, Column]
    twists: int
    ledger: TopologyLedger
    order: int

    def column_valuation(self, J: Index) -> int | float:
        """lambda-adic valuation of the image of u_J (minimum over coordinates)."""
        col = self.columns[tuple(J)]
        if not col:
            return float("inf")
        return min(c.valuation() for c in col.values()) + self.twists

    def to_module_map(self) -> ModuleMap:
        base = ModuleMap.from_columns(self.source_exp, self.target_exp, self.columns,
                                      self.order)
        if self.twists:
            base = base.scale(_twist_power(self.twists, self.order))
        return base


@lru_cache(maxsize=None)
def _twist_power(t: int, order: int) -> SeriesQ:
    return twist_scalar("+", order) ** t


def compile_presentation(pres: CobordismPresentation,
                         source_kinds: Sequence[Component] | None = None,
                         order: int = DEFAULT_ORDER) -> Compiled:
    state = _replay(pres, source_kinds, order, with_map=True)
    return Compiled(pres.source_components, len(state.comps), state.columns,
                    state.twists, _ledger(pres, state), order)


def induced_map(pres: CobordismPresentation,
                source_kinds: Sequence[Component] | None = None,
                order: int = DEFAULT_ORDER) -> ModuleMap:
    return compile_presentation(pres, source_kinds, order).to_module_map()


def compose(a: CobordismPresentation, b: CobordismPresentation,
            source_kinds: Sequence[Component] | None = None) -> CobordismPresentation:
    """b after a, as one presentation."""
    target = validate(a, source_kinds).target_components
    if target != b.source_components:
        raise IllFormed(f"cannot compose: {target} target components "
                        f"vs {b.source_components} source components")
    return CobordismPresentation(a.source_components, a.moves + b.moves)


def disjoint_union(a: CobordismPresentation, b: CobordismPresentation
                   ) -> tuple[CobordismPresentation, tuple[int, ...]]:
    """Side-by-side presentation of a and b.

    Returns the presentation and the permutation perm with
    induced_map(union).permute_target(perm) == tensor(induced_map(a), induced_map(b)).
    """
    owner = ["a"] * a.source_components + ["b"] * b.source_components
    moves: list[Move] = []

    def glob(side: str, i: int) -> int:
        pos = [g for g, o in enumerate(owner) if o == side]
        if not 0 <= i < len(pos):
            raise IllFormed(f"component {i} out of range")
        return pos[i]

    for side, pres in (("a", a), ("b", b)):
        for mv in pres.moves:
            if isinstance(mv, Birth):
                moves.append(mv)
                owner.append(side)
            elif isinstance(mv, Merge):
                ga, gb = glob(side, mv.a), glob(side, mv.b)
                moves.append(Merge(ga, gb))
                del owner[max(ga, gb)]
            elif isinstance(mv, Death):
                g = glob(side, mv.c)
                moves.append(Death(g))
                del owner[g]
            elif isinstance(mv, Split):
                moves.append(Split(glob(side, mv.c)))
                owner.append(side)
            elif isinstance(mv, Curve):
                moves.append(Curve(tuple(glob(side, c) for c in mv.components),
                                   mv.genus, mv.double_points, mv.m_plus, mv.m_minus))
            else:
                moves.append(type(mv)(glob(side, mv.c)))
    perm = tuple(g for g, o in enumerate(owner) if o == "a") + \
        tuple(g for g, o in enumerate(owner) if o == "b")
    return CobordismPresentation(a.source_components + b.source_components,
                                 tuple(moves)), perm
