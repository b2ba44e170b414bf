"""Seeded random presentations for property checks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .cobordism import (AddGenus, Birth, CobordismPresentation, Component, Curve, Death,
                        FingerMove, Merge, Move, NegativeTwist, PositiveTwist, Split,
                        validate)

TWISTS = (PositiveTwist, NegativeTwist, FingerMove)


@dataclass(frozen=True)
class FuzzConfig:
    max_length: int = 8
    max_components: int = 3
    max_genus: int = 2
    max_double_points: int = 2
    curve_weight: float = 0.15


def random_curve(rng: random.Random, comps: Sequence[int], cfg: FuzzConfig) -> Curve:
    # curve maps are not divisible by lambda: min(m_+, m_-) = 0 with m_+ <= m_-
    genus = [rng.randint(0, cfg.max_genus) for _ in comps]
    mp = [0] * len(comps)
    mm = [rng.randint(0, 2) for _ in comps]
    return Curve(tuple(comps), tuple(genus), rng.randint(0, cfg.max_double_points),
                 tuple(mp), tuple(mm))


def random_move(rng: random.Random, kinds: Sequence[Component], cfg: FuzzConfig) -> Move:
    n = len(kinds)
    unknots = [i for i, k in enumerate(kinds) if not k.knotted]
    options: list = []
    if n < cfg.max_components:
        options += ["birth"] + (["split"] if n else [])
    if n:
        options += ["genus", "twist", "twist"]
    if unknots and n > 1:
        options.append("death")
    if n > 1 and len(unknots) >= 1:
        options += ["merge", "merge"]
    if unknots and rng.random() < cfg.curve_weight * 4:
        options.append("curve")
    kind = rng.choice(options)
    if kind == "birth":
        return Birth()
    if kind == "split":
        return Split(rng.randrange(n))
    if kind == "genus":
        return AddGenus(rng.randrange(n))
    if kind == "twist":
        return rng.choice(TWISTS)(rng.randrange(n))
    if kind == "death":
        return Death(rng.choice(unknots))
    if kind == "merge":
        a = rng.choice(unknots)
        b = rng.choice([i for i in range(n) if i != a])
        return Merge(a, b) if rng.random() < 0.5 else Merge(b, a)
    k = rng.randint(1, len(unknots))
    return random_curve(rng, sorted(rng.sample(unknots, k)), cfg)


def random_presentation(rng: random.Random, source: Sequence[Component],
                        cfg: FuzzConfig = FuzzConfig()) -> CobordismPresentation:
    kinds = list(source)
    pres = CobordismPresentation(len(kinds))
    for _ in range(rng.randint(0, cfg.max_length)):
        pres = pres.then(random_move(rng, kinds, cfg))
        kinds = list(validate(pres, source).target_kinds)
    return pres


def random_connected(rng: random.Random, cfg: FuzzConfig = FuzzConfig()
                     ) -> CobordismPresentation:
    """Connected presentation from the unknot to a nonempty link."""
    while True:
        pres = random_presentation(rng, [Component()], cfg)
        ledger = validate(pres)
        if ledger.connected and ledger.target_components:
            return pres


def connected_corpus(seed: int, size: int, cfg: FuzzConfig = FuzzConfig()
                     ) -> list[CobordismPresentation]:
    rng = random.Random(seed)
    return [random_connected(rng, cfg) for _ in range(size)]


# component-preserving macros: each keeps one source and one target circle per piece
def _macro(rng: random.Random, kinds: list[Component], embedded: bool, cfg: FuzzConfig
           ) -> list[Move]:
    n = len(kinds)
    c = rng.randrange(n)
    options = ["birth_merge", "split_death"]
    if not embedded:
        options += ["split_merge", "genus", "twist", "twist"]
        if any(not k.knotted for k in kinds):
            options.append("curve")
    kind = rng.choice(options)
    if kind == "birth_merge":
        return [Birth(), Merge(c, n) if rng.random() < 0.5 else Merge(n, c)]
    if kind == "split_death":
        return [Split(c), Death(n)]
    if kind == "split_merge":
        return [Split(c), Merge(c, n) if rng.random() < 0.5 else Merge(n, c)]
    if kind == "genus":
        return [AddGenus(c)]
    if kind == "twist":
        return [rng.choice(TWISTS)(c)]
    unknots = [i for i, k in enumerate(kinds) if not k.knotted]
    picked = sorted(rng.sample(unknots, rng.randint(1, len(unknots))))
    return [random_curve(rng, picked, cfg)]


def random_component_preserving(rng: random.Random, source: Sequence[Component],
                                cfg: FuzzConfig = FuzzConfig(), embedded: bool = False
                                ) -> CobordismPresentation:
    kinds = list(source)
    moves: list[Move] = []
    budget = rng.randint(0, cfg.max_length)
    while kinds:
        macro = _macro(rng, kinds, embedded, cfg)
        if len(moves) + len(macro) > budget:
            break
        moves += macro
        kinds = list(validate(CobordismPresentation(len(source), tuple(moves)),
                              source).target_kinds)
    return CobordismPresentation(len(source), tuple(moves))


def random_touching(rng: random.Random, source: Sequence[Component],
                    cfg: FuzzConfig = FuzzConfig()) -> CobordismPresentation:
    """Cobordism from a link in which every surface piece meets the source."""
    while True:
        pres = random_presentation(rng, source, cfg)
        ledger = validate(pres, source)
        if ledger.touches_source and ledger.target_components:
            return pres
