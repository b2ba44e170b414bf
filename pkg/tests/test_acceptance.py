"""Acceptance criteria 1-13, one test each.

Each criterion prints a PASS/FAIL line; the lines are repeated in the pytest
terminal summary and also printed when this file is run as a script.
"""
from __future__ import annotations

import json
import sys

import pytest

from ssharp.verify import CHECKS, DEFAULT_SEED, run_check

RESULTS: dict[str, str] = {}


def _line(res) -> str:
    status = "PASS" if res.passed else "FAIL"
    return f"{status}  {res.name}  ({res.seconds:.2f}s)"


@pytest.mark.parametrize("name,fn", CHECKS, ids=[c[0] for c in CHECKS])
def test_criterion(name, fn):
    res = run_check(name, fn, DEFAULT_SEED)
    RESULTS[name] = _line(res)
    print(RESULTS[name])
    assert res.passed, json.dumps(res.detail, sort_keys=True)


if __name__ == "__main__":
    failed = 0
    for name, fn in CHECKS:
        res = run_check(name, fn, DEFAULT_SEED)
        print(_line(res))
        failed += not res.passed
    sys.exit(1 if failed else 0)
