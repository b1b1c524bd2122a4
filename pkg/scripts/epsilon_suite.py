#!/usr/bin/env python3
"""Sweep tube constants over a family of norms and corridor counts.

For every (norm, k) pair the script builds the geodesic graph of the k
shortest primitive classes, runs the competitor-cycle search, and
reports zeta, the strict gap, and the hub budget as CSV.  Pass --seed
to vary the randomized ellipse/p-norm panel.
"""

from __future__ import annotations

import argparse
import csv
import math
import random
import sys

from stablenorm import (
    Ellipse,
    NormSpec,
    PNorm,
    build_graph,
    compute_zeta_epsilon_theta,
    leading_primitive_classes,
)


def random_panel(seed: int, ellipses: int, pnorm_reps: int) -> list[tuple[str, NormSpec]]:
    rng = random.Random(seed)
    panel: list[tuple[str, NormSpec]] = []
    for i in range(ellipses):
        angle = rng.uniform(0.0, math.pi)
        l1 = rng.uniform(0.5, 2.0)
        l2 = rng.uniform(0.5, 2.0)
        c, s = math.cos(angle), math.sin(angle)
        spec = NormSpec(
            Ellipse(
                q11=l1 * c * c + l2 * s * s,
                q12=(l1 - l2) * c * s,
                q22=l1 * s * s + l2 * c * c,
            ),
            1.0,
        )
        panel.append((f"ellipse-{i}", spec))
    for p in (1.5, 2.0, 3.0, 4.0):
        for j in range(pnorm_reps):
            spec = NormSpec(PNorm(p=p), rng.uniform(0.7, 1.5))
            panel.append((f"pnorm-{p}-{j}", spec))
    return panel


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=52060817)
    ap.add_argument("--ellipses", type=int, default=12)
    ap.add_argument("--pnorm-reps", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--cross-check", action="store_true",
                    help="re-derive each cycle's class from crossing counts")
    ap.add_argument("--out", default=None, help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    rows = []
    for name, norm in random_panel(args.seed, args.ellipses, args.pnorm_reps):
        for k in range(1, args.k_max + 1):
            classes = leading_primitive_classes(norm, k)
            graph = build_graph(classes)
            ell_k = max(length for _cls, length in classes)
            consts = compute_zeta_epsilon_theta(
                graph, norm, ell_k, cross_check=args.cross_check
            )
            rows.append((
                name, k, f"{consts.zeta:.12g}",
                "inf" if math.isinf(consts.epsilon) else f"{consts.epsilon:.12g}",
                f"{consts.theta:.12g}", consts.edge_bound, consts.cycles_checked,
            ))

    sink = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["norm", "k", "zeta", "epsilon", "theta",
                         "edge_bound", "cycles_checked"])
        writer.writerows(rows)
    finally:
        if args.out:
            sink.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
