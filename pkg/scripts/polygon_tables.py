#!/usr/bin/env python3
"""Print the minimal-area and symmetric-interior tables.

Columns: k, A(k), i(k) for convex k-gons, then 2m, interior minimum,
f(m) for the centrally symmetric family, each with its witness.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from stablenorm import (
    EIGHT_PI_SQUARED_FLOOR,
    min_area_convex_kgon,
    min_interior_symmetric,
)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=8)
    ap.add_argument("--m-max", type=int, default=4)
    ap.add_argument("--coord-bound", type=int, default=None)
    args = ap.parse_args(argv)

    kwargs = {}
    if args.coord_bound is not None:
        kwargs["coord_bound"] = args.coord_bound

    print("k  A(k)   i(k)  A(k)/k^3 > 1/(8pi^2)  witness")
    for k in range(3, args.k_max + 1):
        res = min_area_convex_kgon(k, **kwargs)
        interior = res.area + Fraction(2 - k, 2)
        ok = Fraction(1) / EIGHT_PI_SQUARED_FLOOR < res.area / k**3
        print(f"{k}  {str(res.area):5}  {int(interior):3}   {str(ok):5}"
              f"              {res.witness.vertices}")

    print()
    print("2m  interior  f(m)  witness")
    for m in range(1, args.m_max + 1):
        res = min_interior_symmetric(2 * m, **kwargs)
        f_m = (res.interior + 1) // 2
        print(f"{2 * m:2}  {res.interior:7}  {f_m:4}  {res.witness_vertices}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
