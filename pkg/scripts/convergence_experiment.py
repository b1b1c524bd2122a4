#!/usr/bin/env python3
"""Run the canyon-family convergence experiment and dump the report.

Defaults reproduce the acceptance run: hexagonal-Gram ellipse, corridor
counts 2..6, a 64-direction unit-circle sample, background grid 64.
"""

from __future__ import annotations

import argparse
import json
import sys

from stablenorm import run_convergence
from stablenorm.cli import parse_norm


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--norm", default=None,
                    help="euclidean | hexagonal | pnorm:P | ellipse:q11,q12,q22")
    ap.add_argument("--ks", default="2,3,4,5,6")
    ap.add_argument("--grid-n", type=int, default=64)
    ap.add_argument("--directions", type=int, default=64)
    ap.add_argument("--n-max", type=int, default=2)
    ap.add_argument("--out", default=None, help="JSON path (default stdout)")
    args = ap.parse_args(argv)

    norm = parse_norm(args.norm) if args.norm else None
    ks = tuple(int(part) for part in args.ks.split(","))
    report = run_convergence(
        norm=norm,
        ks=ks,
        grid_resolution=args.grid_n,
        directions=args.directions,
        n_max=args.n_max,
    )
    text = json.dumps(report.to_jsonable(), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    worst = report.stages[-1]
    print(
        f"stages {ks}: final sup deviation {worst.sup_pinned_deviation:.5f}, "
        f"monotone={report.monotone}, lipschitz_ok={report.lipschitz_ok}",
        file=sys.stderr,
    )
    return 0 if (report.monotone and report.lipschitz_ok) else 1


if __name__ == "__main__":
    sys.exit(main())
