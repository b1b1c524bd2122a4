"""Convex lattice polygon combinatorics, in exact arithmetic.

Pick's identity, minimal areas of convex integer k-gons, their interior
counts, and the centrally symmetric minimum interior count over 2m-gons
together with the halved count f(m).

Enumeration principle: a convex polygon is the same thing as a set of
distinct primitive edge directions with positive multiplicities whose
weighted sum vanishes; reading the directions in angle order traces the
boundary.  Cutting the cyclic order at the 0-degree ray turns every
polygon into a strictly increasing subsequence of the angle-sorted
direction list, so one monotone sweep over that list enumerates each
polygon exactly once.  The running shoelace sum relative to the start
vertex is twice the swept area; it never decreases along chains that
can still close convexly (each increment is twice a fan triangle of the
final polygon as seen from the start vertex), which makes both the
incumbent prune and the minimum-merge on repeated (edges used, partial
sum) states sound.  A closing edge always runs straight back to the
start, so closures happen exactly at the anti-parallel steps.

No floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from stablenorm.errors import ConstructionError, SearchBudgetError, ValidationError

IntVec = tuple[int, int]

#: 8*pi^2 = 78.9568352...; any smaller positive rational gives a sound
#: stand-in L with 1/L >= 1/(8*pi^2), so `ratio > 1/L` certifies
#: `ratio > 1/(8*pi^2)` exactly.
EIGHT_PI_SQUARED_FLOOR = Fraction(789568, 10000)

#: Certified rational upper bound for 1/(8*pi^2).
MIN_AREA_CUBIC_FLOOR = 1 / EIGHT_PI_SQUARED_FLOOR

DEFAULT_SEARCH_BUDGET = 200_000_000

_ROOT = (0, 0, 0, True)


def _cross(a: IntVec, b: IntVec) -> int:
    return a[0] * b[1] - a[1] * b[0]


def angle_key(v: IntVec) -> tuple[int, Fraction]:
    """Exact total order on nonzero integer vectors by angle in [0, 2pi).

    Quadrants [0,90), [90,180), [180,270), [270,360) come first in the
    key; within each quadrant a monotone rational slope substitutes for
    the angle, so no trigonometry is involved.
    """
    x, y = v
    if x == 0 and y == 0:
        raise ValidationError("zero vector has no direction")
    if x > 0 and y >= 0:
        return (0, Fraction(y, x))
    if x <= 0 and y > 0:
        return (1, Fraction(-x, y))
    if x < 0 and y <= 0:
        return (2, Fraction(y, x))
    return (3, Fraction(-x, y))


@dataclass(frozen=True)
class LatticePolygon:
    """Strictly convex lattice polygon with counterclockwise vertices.

    Every vertex must be a genuine corner: consecutive edges turn
    strictly left, and the edge directions wind around the circle
    exactly once (which rules out self-overlapping traversals).
    """

    vertices: tuple[IntVec, ...]

    def __post_init__(self):
        v = self.vertices
        n = len(v)
        if n < 3:
            raise ValidationError(f"a polygon needs at least 3 vertices, got {n}")
        for p in v:
            if not (isinstance(p[0], int) and isinstance(p[1], int)):
                raise ValidationError(f"vertex {p!r} is not a lattice point")
        if len(set(v)) != n:
            raise ValidationError("vertices repeat")
        edges = self.edge_vectors
        for i in range(n):
            if _cross(edges[i], edges[(i + 1) % n]) <= 0:
                raise ValidationError(
                    f"not strictly convex counterclockwise at vertex {(i + 1) % n}"
                )
        keys = [angle_key(e) for e in edges]
        wraps = sum(1 for i in range(n) if keys[(i + 1) % n] < keys[i])
        if wraps != 1:
            raise ValidationError("edge directions wind around more than once")

    @property
    def edge_vectors(self) -> tuple[IntVec, ...]:
        v = self.vertices
        n = len(v)
        return tuple(
            (v[(i + 1) % n][0] - v[i][0], v[(i + 1) % n][1] - v[i][1]) for i in range(n)
        )

    def is_centrally_symmetric(self) -> bool:
        """Vertex multiset closed under negation (symmetry about the origin)."""
        return sorted(self.vertices) == sorted((-x, -y) for (x, y) in self.vertices)

    def translated(self, dx: int, dy: int) -> "LatticePolygon":
        return LatticePolygon(tuple((x + dx, y + dy) for (x, y) in self.vertices))

    def to_jsonable(self) -> list[list[int]]:
        return [[x, y] for (x, y) in self.vertices]


@dataclass(frozen=True)
class PickCounts:
    area: Fraction
    interior: int
    boundary: int


def pick_counts(p: LatticePolygon, self_check: bool = False) -> PickCounts:
    """Exact (area, interior points, boundary points) of a lattice polygon.

    Area by the shoelace sum, boundary count as the sum of edge gcds,
    interior count from Pick's identity A = i + b/2 - 1.  `self_check`
    re-derives both counts by classifying every lattice point of the
    bounding box against the edge half-planes and insists they agree.
    """
    v = p.vertices
    n = len(v)
    twice_area = sum(_cross(v[i], v[(i + 1) % n]) for i in range(n))
    if twice_area <= 0:
        raise ValidationError("polygon is not positively oriented")
    area = Fraction(twice_area, 2)
    boundary = sum(gcd(abs(ex), abs(ey)) for (ex, ey) in p.edge_vectors)
    interior_f = area - Fraction(boundary, 2) + 1
    if interior_f.denominator != 1 or interior_f < 0:
        raise ValidationError(f"interior count came out as {interior_f}, not a count")
    interior = int(interior_f)
    if self_check:
        got_i, got_b = _scan_counts(v)
        if (got_i, got_b) != (interior, boundary):
            raise AssertionError(
                "point scan disagrees with Pick: "
                f"formula ({interior}, {boundary}), scan ({got_i}, {got_b})"
            )
    return PickCounts(area=area, interior=interior, boundary=boundary)


def _scan_counts(v: Sequence[IntVec]) -> tuple[int, int]:
    n = len(v)
    xs = [q[0] for q in v]
    ys = [q[1] for q in v]
    interior = boundary = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            strict = True
            on_edge = False
            for i in range(n):
                a = v[i]
                b = v[(i + 1) % n]
                s = _cross((b[0] - a[0], b[1] - a[1]), (x - a[0], y - a[1]))
                if s < 0:
                    strict = False
                    on_edge = False
                    break
                if s == 0:
                    strict = False
                    on_edge = True
            if strict:
                interior += 1
            elif on_edge:
                boundary += 1
    return interior, boundary


def canonical_form(
    vertices: Sequence[IntVec], translate: bool = True
) -> tuple[IntVec, ...]:
    """Lexicographically minimal presentation over the 8 lattice symmetries.

    Reflections get their orientation restored to counterclockwise, the
    cyclic order is rotated to start at the smallest vertex, and with
    `translate` the bounding box corner moves to the origin.  Symmetric
    witnesses pass translate=False so the center stays at the origin.
    """
    best: Optional[tuple[IntVec, ...]] = None
    for sx in (1, -1):
        for sy in (1, -1):
            for swap in (False, True):
                pts = [
                    (sx * (y if swap else x), sy * (x if swap else y))
                    for (x, y) in vertices
                ]
                n = len(pts)
                twice = sum(_cross(pts[i], pts[(i + 1) % n]) for i in range(n))
                if twice < 0:
                    pts.reverse()
                if translate:
                    mx = min(q[0] for q in pts)
                    my = min(q[1] for q in pts)
                    pts = [(x - mx, y - my) for (x, y) in pts]
                start = pts.index(min(pts))
                rotated = tuple(pts[(start + i) % n] for i in range(n))
                if best is None or rotated < best:
                    best = rotated
    assert best is not None
    return best


def _primitive_directions(bound: int, upper_half_only: bool = False) -> list[IntVec]:
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if (x, y) == (0, 0) or gcd(abs(x), abs(y)) != 1:
                continue
            if upper_half_only and not (y > 0 or (y == 0 and x > 0)):
                continue
            out.append((x, y))
    out.sort(key=angle_key)
    return out


class _Sweep:
    """Shared monotone DP over angle-sorted primitive directions.

    States are keyed (edges used, partial sum x, partial sum y, all
    edges primitive so far) and carry (accumulated cost, chain link).
    A link is the immutable triple (parent link, direction, mult),
    captured at extension time; climbing links reconstructs exactly the
    path that produced the stored cost, no matter how the parent state
    is later improved.  Cost merging keeps the minimum, which is sound
    because every continuation adds a cost that depends only on the
    partial sum, never on the path that reached it.
    """

    def __init__(self, budget: int):
        self.states: dict[tuple[int, int, int, bool], tuple[int, Optional[tuple]]] = {
            _ROOT: (0, None)
        }
        self.budget = budget
        self.ops = 0

    def check_budget(self, best_so_far: str) -> None:
        """Called between direction layers, so overshoot is one layer at most."""
        if self.ops > self.budget:
            raise SearchBudgetError(
                f"polygon search exhausted its budget of {self.budget} transitions; "
                f"best non-certified bound so far: {best_so_far}",
                nodes_expanded=self.ops,
                budget=self.budget,
            )

    def offer(self, key, cost: int, link: tuple) -> None:
        old = self.states.get(key)
        if old is None or cost < old[0]:
            self.states[key] = (cost, link)


#: How many tying optimal chains to keep per slot for witness selection.
_WITNESS_POOL = 64


def _chain_steps(link) -> list[tuple[IntVec, int]]:
    steps = []
    while link is not None:
        link, d, m = link
        steps.append((d, m))
    steps.reverse()
    return steps


def _expand_edges(steps: Sequence[tuple[IntVec, int]]) -> list[IntVec]:
    edges: list[IntVec] = []
    for d, m in steps:
        edges.extend([d] * m)
    return edges


def _corners_from_edges(edges: Sequence[IntVec], start: IntVec) -> tuple[IntVec, ...]:
    """Walk the edge cycle from `start`, dropping the division points
    that edge multiplicities introduce along straight runs."""
    verts = [start]
    for e in edges[:-1]:
        verts.append((verts[-1][0] + e[0], verts[-1][1] + e[1]))
    n = len(verts)
    corners = []
    for i in range(n):
        prev = verts[i - 1]
        cur = verts[i]
        nxt = verts[(i + 1) % n]
        if _cross((cur[0] - prev[0], cur[1] - prev[1]), (nxt[0] - cur[0], nxt[1] - cur[1])) != 0:
            corners.append(cur)
    return tuple(corners)


@dataclass(frozen=True)
class MinAreaResult:
    """Minimal-area search outcome for convex lattice k-gons.

    `certified` marks values that meet the unconditional Pick floor
    k/2 - 1, where no polygon outside the coordinate bound can do
    better; otherwise the minimum is exact only over polygons whose
    edge vectors fit the bound.
    """

    k: int
    area: Fraction
    witness: LatticePolygon
    certified: bool
    coord_bound: int
    states_explored: int


AreaSlot = dict[bool, tuple[int, list]]


def _record_closure(slot: AreaSlot, prim: bool, c2: int, link: tuple) -> None:
    for flag in (True, False) if prim else (False,):
        cur = slot.get(flag)
        if cur is None or c2 < cur[0]:
            slot[flag] = (c2, [link])
        elif c2 == cur[0] and len(cur[1]) < _WITNESS_POOL:
            cur[1].append(link)


def _sweep_areas(
    k_max: int,
    coord_bound: int,
    incumbent_doubled: Optional[int],
    budget: int,
) -> tuple[dict[int, AreaSlot], int]:
    """Run the sweep; return per edge-count closures and the op count.

    `found[k][prim]` holds the best doubled area over k-gons plus a
    capped pool of chain links attaining it; the all-primitive optimum
    is tracked separately so callers can prefer witnesses whose boundary
    points are exactly the corners.  Passing `incumbent_doubled` prunes
    partial sums whose swept doubled area already reaches it; None keeps
    the enumeration complete.
    """
    sweep = _Sweep(budget)
    found: dict[int, AreaSlot] = {}

    for d in _primitive_directions(coord_bound):
        dx, dy = d
        mult_cap = coord_bound // max(abs(dx), abs(dy))
        additions: list[tuple[tuple[int, int, int, bool], int, tuple]] = []
        for key, (c, link) in sweep.states.items():
            j, wx, wy, prim = key
            if j >= k_max:
                continue
            if (wx, wy) == (0, 0):
                sweep.ops += mult_cap
                for m in range(1, mult_cap + 1):
                    additions.append(
                        ((1, m * dx, m * dy, m == 1), 0, (link, d, m))
                    )
                continue
            cr = wx * dy - wy * dx
            if cr < 0:
                continue
            if cr == 0:
                # the closing edge runs straight back to the start
                sweep.ops += 1
                if dx != 0:
                    m, r = divmod(-wx, dx)
                else:
                    m, r = divmod(-wy, dy)
                if r == 0 and 1 <= m <= mult_cap and (wx + m * dx, wy + m * dy) == (0, 0):
                    if j + 1 >= 3:
                        _record_closure(
                            found.setdefault(j + 1, {}), prim and m == 1, c, (link, d, m)
                        )
                continue
            reach = coord_bound * (k_max - j - 1)
            for m in range(1, mult_cap + 1):
                sweep.ops += 1
                nc = c + m * cr
                if incumbent_doubled is not None and nc >= incumbent_doubled:
                    break
                nwx = wx + m * dx
                nwy = wy + m * dy
                if max(abs(nwx), abs(nwy)) > reach:
                    continue
                additions.append(((j + 1, nwx, nwy, prim and m == 1), nc, (link, d, m)))
        for key, cost, link in additions:
            sweep.offer(key, cost, link)
        sweep.check_budget(
            str({k: Fraction(slot[False][0], 2) for k, slot in sorted(found.items())})
        )

    return found, sweep.ops


def _pick_area_witness(slot: AreaSlot) -> tuple[int, LatticePolygon]:
    """Most compact canonical witness among the pooled optimal chains,
    drawn from the all-primitive pool when it ties the optimum."""
    c2, links = slot[False]
    if True in slot and slot[True][0] == c2:
        links = slot[True][1]
    best: Optional[tuple[tuple, LatticePolygon]] = None
    for link in links:
        corners = _corners_from_edges(_expand_edges(_chain_steps(link)), (0, 0))
        poly = LatticePolygon(canonical_form(corners))
        spread = max(max(abs(x), abs(y)) for (x, y) in poly.vertices)
        score = (spread, poly.vertices)
        if best is None or score < best[0]:
            best = (score, poly)
    assert best is not None
    return c2, best[1]


def _merge_slots(a: Optional[AreaSlot], b: Optional[AreaSlot]) -> Optional[AreaSlot]:
    if a is None or b is None:
        return a if b is None else b
    out: AreaSlot = {}
    for flag in (False, True):
        pools = [s[flag] for s in (a, b) if flag in s]
        if not pools:
            continue
        best_c2 = min(c2 for c2, _links in pools)
        links: list = []
        for c2, pool in pools:
            if c2 == best_c2:
                links.extend(pool)
        out[flag] = (best_c2, links[:_WITNESS_POOL])
    return out


def min_area_convex_kgon(
    k: int,
    coord_bound: Optional[int] = None,
    pruned: bool = True,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> MinAreaResult:
    """Minimal area of a strictly convex lattice k-gon, with witness.

    Polygons are enumerated as zero-sum multisets of primitive edge
    directions whose edge vectors have coordinates within `coord_bound`
    (default 6 for k <= 8, else 10).  With `pruned`, a quick small-bound
    pass seeds an incumbent and partial sums that already sweep that
    much area are cut; otherwise the enumeration is exhaustive within
    the bound.  The witness comes back in canonical position, preferring
    one whose edges are all primitive when that ties the minimum.
    """
    if not isinstance(k, int) or not 3 <= k <= 12:
        raise ValidationError(f"k must be an integer in 3..12, got {k!r}")
    if coord_bound is None:
        coord_bound = 6 if k <= 8 else 10
    if coord_bound < 2:
        raise ValidationError(f"coordinate bound must be at least 2, got {coord_bound}")

    total_ops = 0
    incumbent: Optional[int] = None
    seed_slot: Optional[AreaSlot] = None
    if pruned:
        seed_bound = min(coord_bound, 2 if k <= 8 else 3)
        seeded, ops = _sweep_areas(k, seed_bound, None, budget)
        total_ops += ops
        seed_slot = seeded.get(k)
        if seed_slot is not None:
            incumbent = seed_slot[False][0]

    found, ops = _sweep_areas(k, coord_bound, incumbent, budget - total_ops)
    total_ops += ops
    slot = _merge_slots(found.get(k), seed_slot)
    if slot is None:
        raise ConstructionError(
            f"no convex {k}-gon exists with edge coordinates within {coord_bound}"
        )

    c2, witness = _pick_area_witness(slot)
    area = Fraction(c2, 2)
    check = pick_counts(witness)
    if check.area != area:
        raise AssertionError(
            f"witness area {check.area} disagrees with search result {area}"
        )
    certified = area == Fraction(k, 2) - 1
    return MinAreaResult(
        k=k,
        area=area,
        witness=witness,
        certified=certified,
        coord_bound=coord_bound,
        states_explored=total_ops,
    )


def min_area_table(
    k_min: int = 3,
    k_max: int = 8,
    coord_bound: Optional[int] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[MinAreaResult]:
    """Exhaustive minimal areas for every k in [k_min, k_max] in one sweep."""
    if not 3 <= k_min <= k_max <= 12:
        raise ValidationError(f"need 3 <= k_min <= k_max <= 12, got {k_min}..{k_max}")
    if coord_bound is None:
        coord_bound = 6 if k_max <= 8 else 10
    found, ops = _sweep_areas(k_max, coord_bound, None, budget)
    results = []
    for k in range(k_min, k_max + 1):
        slot = found.get(k)
        if slot is None:
            raise ConstructionError(
                f"no convex {k}-gon exists with edge coordinates within {coord_bound}"
            )
        c2, witness = _pick_area_witness(slot)
        area = Fraction(c2, 2)
        results.append(
            MinAreaResult(
                k=k,
                area=area,
                witness=witness,
                certified=area == Fraction(k, 2) - 1,
                coord_bound=coord_bound,
                states_explored=ops,
            )
        )
    return results


def i_of_k(k: int, **search_kwargs) -> int:
    """Interior lattice points of the minimal-area convex k-gon.

    Computed as A(k) + (2 - k)/2, which presumes the minimizer's
    boundary points are exactly its k corners; the witness's own Pick
    counts are required to confirm that, so a failure here would flag
    a minimal polygon with a non-primitive edge.
    """
    res = min_area_convex_kgon(k, **search_kwargs)
    value = res.area + Fraction(2 - k, 2)
    if value.denominator != 1 or value < 0:
        raise AssertionError(f"interior count for k={k} came out as {value}")
    counts = pick_counts(res.witness, self_check=True)
    if counts.boundary != k or counts.interior != int(value):
        raise AssertionError(
            f"minimal {k}-gon witness has counts {counts}, "
            f"inconsistent with interior {value}"
        )
    return int(value)


@dataclass(frozen=True)
class SymmetricInteriorResult:
    """Minimum interior count over centrally symmetric convex 2m-gons.

    `witness` is None only in the degenerate two_m=2 case, where the
    optimum is the segment spanned by a primitive vector and its
    negation, with the origin as its single interior point.
    """

    two_m: int
    interior: int
    witness: Optional[LatticePolygon]
    witness_vertices: tuple[IntVec, ...]
    all_primitive: bool
    certified: bool
    coord_bound: int
    states_explored: int


def min_interior_symmetric(
    two_m: int,
    coord_bound: int = 6,
    prefer_primitive: bool = False,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> SymmetricInteriorResult:
    """Least interior lattice point count of a symmetric convex 2m-gon.

    A polygon symmetric about the origin is determined by one edge
    direction per antipodal pair; taking the representatives with angle
    in [0, 180) and sweeping them in order gives a half-chain whose
    doubled-area sum equals the full area (the offset to the true start
    vertex -S/2 cancels against the closing half).  Lattice symmetry of
    the center forces the half-chain sum S to be even.  Interior count
    is A - (sum of multiplicities) + 1 by Pick, and the origin is always
    interior, so 1 certifies itself as the global floor.

    With `prefer_primitive`, a witness whose edges are all primitive is
    returned whenever one attains the minimum.
    """
    if not isinstance(two_m, int) or two_m < 2 or two_m % 2 != 0 or two_m > 16:
        raise ValidationError(f"two_m must be an even integer in 2..16, got {two_m!r}")
    if two_m == 2:
        return SymmetricInteriorResult(
            two_m=2,
            interior=1,
            witness=None,
            witness_vertices=((1, 0), (-1, 0)),
            all_primitive=True,
            certified=True,
            coord_bound=coord_bound,
            states_explored=0,
        )
    m_target = two_m // 2
    sweep = _Sweep(budget)
    for d in _primitive_directions(coord_bound, upper_half_only=True):
        dx, dy = d
        mult_cap = coord_bound // max(abs(dx), abs(dy))
        additions: list[tuple[tuple[int, int, int, bool], int, tuple]] = []
        for key, (cost, link) in sweep.states.items():
            j, wx, wy, prim = key
            if j >= m_target:
                continue
            if (wx, wy) == (0, 0):
                cr = 0
            else:
                cr = wx * dy - wy * dx
                # directions confined to a half-plane sweep strictly left
                assert cr > 0, "half-plane chain lost convexity"
            for mult in range(1, mult_cap + 1):
                sweep.ops += 1
                additions.append(
                    (
                        (j + 1, wx + mult * dx, wy + mult * dy, prim and mult == 1),
                        cost + mult * (cr - 1),
                        (link, d, mult),
                    )
                )
        for key, cost, link in additions:
            sweep.offer(key, cost, link)
        sweep.check_budget("(no symmetric polygon completed yet)")

    min_cost: Optional[int] = None
    prim_ties = False
    finals: list[tuple[int, bool, tuple]] = []
    for key, (cost, link) in sweep.states.items():
        j, wx, wy, prim = key
        if j != m_target or wx % 2 != 0 or wy % 2 != 0:
            continue
        finals.append((cost, prim, link))
        if min_cost is None or cost < min_cost:
            min_cost = cost
            prim_ties = prim
        elif cost == min_cost and prim:
            prim_ties = True
    if min_cost is None:
        raise ConstructionError(
            f"no symmetric {two_m}-gon with even half-sum exists within bound {coord_bound}"
        )
    interior = min_cost + 1
    if interior < 1:
        raise AssertionError(f"interior count {interior} below the origin floor")
    want_prim = prefer_primitive and prim_ties

    best_pick: Optional[tuple[tuple, LatticePolygon, bool]] = None
    for cost, prim, link in finals:
        if cost != min_cost or (want_prim and not prim):
            continue
        half_edges = _expand_edges(_chain_steps(link))
        sx = sum(e[0] for e in half_edges)
        sy = sum(e[1] for e in half_edges)
        edges = half_edges + [(-ex, -ey) for (ex, ey) in half_edges]
        corners = _corners_from_edges(edges, (-sx // 2, -sy // 2))
        poly = LatticePolygon(canonical_form(corners, translate=False))
        spread = max(max(abs(x), abs(y)) for (x, y) in poly.vertices)
        score = (spread, poly.vertices)
        if best_pick is None or score < best_pick[0]:
            best_pick = (score, poly, prim)
    assert best_pick is not None
    witness = best_pick[1]
    prim = best_pick[2]
    counts = pick_counts(witness)
    if counts.interior != interior:
        raise AssertionError(
            f"witness interior {counts.interior} disagrees with search cost {interior}"
        )
    if not witness.is_centrally_symmetric():
        raise AssertionError("witness lost its central symmetry")
    return SymmetricInteriorResult(
        two_m=two_m,
        interior=interior,
        witness=witness,
        witness_vertices=witness.vertices,
        all_primitive=prim,
        certified=interior == 1,
        coord_bound=coord_bound,
        states_explored=sweep.ops,
    )


def f_of_m(m: int, **search_kwargs) -> int:
    """Half of (minimum symmetric interior count + 1); integral because
    the count is odd, which the computation asserts."""
    if not isinstance(m, int) or not 1 <= m <= 8:
        raise ValidationError(f"m must be an integer in 1..8, got {m!r}")
    res = min_interior_symmetric(2 * m, **search_kwargs)
    if res.interior % 2 != 1:
        raise AssertionError(
            f"symmetric minimum interior count {res.interior} is even"
        )
    return (res.interior + 1) // 2


def cubic_ratio_exceeds_floor(k: int, area: Fraction) -> bool:
    """Strict exact check that area/k^3 clears 1/(8*pi^2).

    Compares against MIN_AREA_CUBIC_FLOOR, a rational that is provably
    at least 1/(8*pi^2), so a True answer is a certificate.
    """
    return Fraction(area) / k**3 > MIN_AREA_CUBIC_FLOOR
