#!/usr/bin/env python3
"""Print s_I of T(md, nd) from the certified curve next to the closed form."""
from __future__ import annotations

import argparse

from ssharp.curves.certificate import certify_family
from ssharp.invariants import closed_form_torus_link, curve_invariants
from ssharp.module import basis, index_string

CASES = ((2, 3, 2), (2, 3, 3), (2, 5, 2), (3, 4, 2))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", action="append", metavar="M,N,D",
                    help="torus link parameters; repeatable (default: four standard cases)")
    args = ap.parse_args()
    cases = [tuple(int(v) for v in c.split(",")) for c in args.case] if args.case else CASES

    disagreements = 0
    for m, n, d in cases:
        cert = curve_invariants(certify_family(m, n, d)).s_I
        print(f"T({m * d},{n * d})  d={d}")
        print(f"  {'I':<{d + 2}} {'curve':>6} {'closed':>7}")
        for I in basis(d):
            key = index_string(I)
            closed = closed_form_torus_link(m, n, d, I)
            mark = "" if cert[key] == closed else "  *"
            disagreements += cert[key] != closed
            print(f"  {key:<{d + 2}} {cert[key]:>6} {closed:>7}{mark}")
    print(f"{disagreements} entries differ (marked *)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
