#!/usr/bin/env python3
"""Append stabilizing moves to random presentations and confirm nothing changes."""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from ssharp.cobordism import AddGenus, FingerMove, NegativeTwist, PositiveTwist, validate
from ssharp.invariants import report
from ssharp.sampling import FuzzConfig, connected_corpus


@dataclass
class Config:
    seed: int = 2024
    size: int = 500
    max_length: int = 8
    max_components: int = 3


def invariants(pres):
    rep = report(pres)
    return rep.s_plus, rep.s_minus, rep.s_total, tuple(sorted(rep.s_I.items()))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = Config(**{k: v for k, v in vars(ap.parse_args()).items()})

    rng = random.Random(cfg.seed + 1)
    fuzz = FuzzConfig(max_length=cfg.max_length, max_components=cfg.max_components)
    corpus = connected_corpus(cfg.seed, cfg.size, fuzz)
    failures = 0
    for k, pres in enumerate(corpus):
        base = invariants(pres)
        l = validate(pres).target_components
        for move in (AddGenus, PositiveTwist, NegativeTwist, FingerMove):
            c = rng.randrange(l)
            if invariants(pres.then(move(c))) != base:
                failures += 1
                print(f"presentation {k}: {move.__name__}({c}) changed {base}")
    print(f"{cfg.size} presentations, {4 * cfg.size} stabilizations, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
