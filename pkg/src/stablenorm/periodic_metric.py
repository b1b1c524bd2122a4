"""Periodic weighted graphs modeling a corridor-plus-background metric.

The construction mirrors a two-regime picture: a corridor network that
realizes the prescribed class lengths exactly, and an expensive
background grid glued on through connector edges, so that any cycle
leaving the corridors pays a full background crossing.  Corridor
intersections are shared nodes; switching corridors there is free,
which keeps the switch cost within any nonnegative hub budget.

Marked lengths come from shortest cycles with prescribed displacement
in the Z^2 cover.  Every query certifies its own search window from a
constructive upper bound (grid row/column loops), and the per-start
searches are guided by an admissible displacement-rate heuristic, so
background regions far from the optimum are barely touched.

Corridor edges carry their exact rational share of the class length;
witness lengths are recomputed from those shares, so a pure corridor
loop reports the prescribed length bit for bit.
"""

from __future__ import annotations

import heapq
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from stablenorm.errors import ValidationError, WindowTooSmallError
from stablenorm.norms import IntegralClass
from stablenorm.toral_graph import ToralGeodesicGraph

NodeId = tuple
IntVec = tuple[int, int]

#: Relative slack for float comparisons in the cover search.
SEARCH_RTOL = 1e-12

#: The heuristic is deflated by this factor to stay admissible under
#: float rounding.
_HEUR_DEFLATE = 1e-12

#: Paths within this relative margin of the incumbent are treated as
#: ties and pruned.  Strictly wider than the heuristic deflation, so a
#: tie plateau never survives the bar; returned lengths are minimal up
#: to this relative tolerance, then recomputed exactly.
_PRUNE_RTOL = 4e-12

#: Default relative tolerance when grouping spectrum lengths.
GROUP_RTOL = 1e-6

_MIN_GRID_RESOLUTION = 64


@dataclass(frozen=True)
class PeriodicEdge:
    """Undirected edge of the quotient graph.

    `disp` counts the Z^2 period crossings when traversed from u to v;
    the reverse traversal negates it.  Corridor edges remember their
    class index and exact length share for exact recomputation.
    """

    u: NodeId
    v: NodeId
    weight: float
    disp: IntVec
    kind: str
    corridor: Optional[tuple[int, Fraction]] = None


@dataclass(frozen=True)
class PeriodicWeightedGraph:
    nodes: tuple[NodeId, ...]
    positions: Mapping[NodeId, tuple[float, float]]
    edges: tuple[PeriodicEdge, ...]
    class_lengths: Optional[tuple[tuple[IntegralClass, float], ...]] = None
    hub_budget: Optional[float] = None
    background_systole: Optional[float] = None
    grid_resolution: Optional[int] = None
    row_loop_cost: Optional[float] = None
    col_loop_cost: Optional[float] = None

    def __post_init__(self):
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise ValidationError("node list repeats")
        parent = {n: n for n in self.nodes}

        def find(n):
            while parent[n] != n:
                parent[n] = parent[parent[n]]
                n = parent[n]
            return n

        for e in self.edges:
            if e.weight <= 0 or not math.isfinite(e.weight):
                raise ValidationError(f"edge {e.u}-{e.v} has weight {e.weight}")
            if e.u not in node_set or e.v not in node_set:
                raise ValidationError(f"edge {e.u}-{e.v} references a missing node")
            parent[find(e.u)] = find(e.v)
        if self.nodes:
            root = find(self.nodes[0])
            if any(find(n) != root for n in self.nodes):
                raise ValidationError("quotient graph is not connected")

    def min_edge_weight(self) -> float:
        return min(e.weight for e in self.edges)


def _adjacency(pg: PeriodicWeightedGraph):
    adj: dict[NodeId, list] = {n: [] for n in pg.nodes}
    for idx, e in enumerate(pg.edges):
        adj[e.u].append((e.v, e.weight, e.disp, idx))
        adj[e.v].append((e.u, e.weight, (-e.disp[0], -e.disp[1]), idx))
    return adj


def _crossing_rates(pg: PeriodicWeightedGraph) -> tuple[float, float, float]:
    """Cheapest cost per unit of lifted x, y, and x+y advance.

    Any cycle of homology (a, b) moves its lift by exactly a in x, so
    its length is at least |a| times the x rate; same in y.  The rates
    combine only through max, never sum, because a single edge may
    advance both coordinates at once; the third rate prices combined
    L^1 advance and is sound on its own.
    """
    rate_x = math.inf
    rate_y = math.inf
    rate_1 = math.inf
    for e in pg.edges:
        ux, uy = pg.positions[e.u]
        vx, vy = pg.positions[e.v]
        dx = abs(vx + e.disp[0] - ux)
        dy = abs(vy + e.disp[1] - uy)
        if dx > 1e-15:
            rate_x = min(rate_x, e.weight / dx)
        if dy > 1e-15:
            rate_y = min(rate_y, e.weight / dy)
        if dx + dy > 1e-15:
            rate_1 = min(rate_1, e.weight / (dx + dy))
    return rate_x, rate_y, rate_1


def _gauge_normals(pg: PeriodicWeightedGraph) -> Optional[tuple[tuple[float, float], ...]]:
    """Facet normals of the displacement-per-cost hull.

    Every edge contributes its lifted displacement divided by its
    weight, both orientations.  The gauge of that hull evaluated on a
    remaining displacement lower-bounds the cost of any path closing
    it: each step's rate point lies in the hull, so its weight is at
    least the gauge of its displacement, and the gauge is subadditive.
    Returns None when the rays do not surround the origin; callers
    fall back to the axis rates.
    """
    reps: dict[tuple[float, float], tuple[float, float]] = {}
    for e in pg.edges:
        ux, uy = pg.positions[e.u]
        vx, vy = pg.positions[e.v]
        dx = (vx + e.disp[0] - ux) / e.weight
        dy = (vy + e.disp[1] - uy) / e.weight
        if abs(dx) + abs(dy) <= 1e-15:
            continue
        for px, py in ((dx, dy), (-dx, -dy)):
            reps.setdefault((round(px, 12), round(py, 12)), (px, py))
    pts = sorted(reps.values())
    if len(pts) < 3:
        return None

    def half(seq):
        out: list[tuple[float, float]] = []
        for p in seq:
            while len(out) >= 2:
                (ox, oy), (px, py) = out[-2], out[-1]
                if (px - ox) * (p[1] - oy) - (py - oy) * (p[0] - ox) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return None
    normals = []
    for i, (px, py) in enumerate(hull):
        qx, qy = hull[(i + 1) % len(hull)]
        t = qx * py - qy * px
        if abs(t) < 1e-18:
            return None
        # a . p = a . q = 1, so a . r is the gauge on this facet's cone
        normals.append(((py - qy) / t, (qx - px) / t))
    return tuple(normals)


def uniform_grid(resolution: int, edge_weight: Optional[float] = None) -> PeriodicWeightedGraph:
    """4-neighbor N x N torus grid with equal edge weights.

    The default weight 1/N makes the marked lengths the L^1 norm of the
    class, a convenient exactly-known baseline.
    """
    n = resolution
    if not isinstance(n, int) or n < 2:
        raise ValidationError(f"grid resolution must be an integer >= 2, got {n!r}")
    w = 1.0 / n if edge_weight is None else float(edge_weight)
    if w <= 0:
        raise ValidationError(f"edge weight must be positive, got {w}")
    nodes = []
    positions = {}
    edges = []
    for i in range(n):
        for j in range(n):
            node = ("g", i, j)
            nodes.append(node)
            positions[node] = (i / n, j / n)
    for i in range(n):
        for j in range(n):
            right = ("g", (i + 1) % n, j)
            up = ("g", i, (j + 1) % n)
            edges.append(PeriodicEdge(("g", i, j), right, w, (1 if i == n - 1 else 0, 0), "grid"))
            edges.append(PeriodicEdge(("g", i, j), up, w, (0, 1 if j == n - 1 else 0), "grid"))
    return PeriodicWeightedGraph(
        nodes=tuple(nodes),
        positions=positions,
        edges=tuple(edges),
        grid_resolution=n,
        row_loop_cost=n * w,
        col_loop_cost=n * w,
    )


def build_canyon_graph(
    graph: ToralGeodesicGraph,
    theta: float,
    background_systole: float,
    grid_resolution: int,
) -> PeriodicWeightedGraph:
    """Corridor network embedded in an expensive background grid.

    Corridor edges reproduce the toral graph segments with their exact
    lengths, subdivided for spatial fidelity; corridor intersections are
    shared nodes, so switching corridors is free, within any positive
    hub budget `theta`.  Background edges cost `background_systole`
    per unit so a grid loop around either period costs exactly that
    much, and corridor-to-grid connectors cost half of it apiece:
    leaving and re-entering the corridors always pays a full crossing.
    """
    ell = [length for _cls, length in graph.classes]
    ell_k = max(ell)
    if not theta > 0:
        raise ValidationError(f"hub budget must be positive, got {theta}")
    if background_systole < ell_k:
        raise ValidationError(
            f"background systole {background_systole} is below the largest "
            f"prescribed length {ell_k}"
        )
    n = grid_resolution
    if not isinstance(n, int) or n < _MIN_GRID_RESOLUTION:
        raise ValidationError(
            f"grid resolution must be an integer >= {_MIN_GRID_RESOLUTION}, got {n!r}"
        )
    verts = graph.vertices
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            gap = Fraction(0)
            for c in range(2):
                delta = abs(verts[i][c] - verts[j][c])
                gap = max(gap, min(delta, 1 - delta))
            if gap <= Fraction(2, n):
                raise ValidationError(
                    f"resolution {n} cannot separate hubs {i} and {j}: "
                    f"torus gap {gap} needs more than {Fraction(2, n)}"
                )

    b = float(background_systole)
    nodes: list[NodeId] = []
    positions: dict[NodeId, tuple[float, float]] = {}
    edges: list[PeriodicEdge] = []

    for idx in range(len(verts)):
        node = ("v", idx)
        nodes.append(node)
        positions[node] = (float(verts[idx][0]), float(verts[idx][1]))

    # corridor segments, subdivided roughly every four grid cells
    corridor_nodes: list[NodeId] = [("v", i) for i in range(len(verts))]
    for edge_idx, ge in enumerate(graph.edges):
        cls_index = ge.cls
        cls, length_i = graph.classes[cls_index]
        h = (Fraction(cls.a), Fraction(cls.b))
        start = graph.vertices[ge.tail]
        speed = math.hypot(cls.a, cls.b)
        pieces = max(1, math.ceil(float(ge.q) * speed * n / 4))
        lift_prev = start
        prev_node: NodeId = ("v", ge.tail)
        for piece in range(1, pieces + 1):
            t = ge.q * piece / pieces
            lift = (start[0] + t * h[0], start[1] + t * h[1])
            if piece == pieces:
                node: NodeId = ("v", ge.head)
                expected = (lift[0] % 1, lift[1] % 1)
                assert expected == tuple(graph.vertices[ge.head]), "corridor endpoint drifted"
            else:
                node = ("c", edge_idx, piece)
                nodes.append(node)
                positions[node] = (float(lift[0] % 1), float(lift[1] % 1))
                corridor_nodes.append(node)
            share = ge.q / pieces
            disp = (
                math.floor(lift[0]) - math.floor(lift_prev[0]),
                math.floor(lift[1]) - math.floor(lift_prev[1]),
            )
            edges.append(
                PeriodicEdge(
                    prev_node,
                    node,
                    float(share) * length_i,
                    disp,
                    "corridor",
                    corridor=(cls_index, share),
                )
            )
            lift_prev = lift
            prev_node = node

    for i in range(n):
        for j in range(n):
            node = ("g", i, j)
            nodes.append(node)
            positions[node] = (i / n, j / n)
    gw = b / n
    for i in range(n):
        for j in range(n):
            right = ("g", (i + 1) % n, j)
            up = ("g", i, (j + 1) % n)
            edges.append(PeriodicEdge(("g", i, j), right, gw, (1 if i == n - 1 else 0, 0), "grid"))
            edges.append(PeriodicEdge(("g", i, j), up, gw, (0, 1 if j == n - 1 else 0), "grid"))

    for cnode in corridor_nodes:
        x, y = positions[cnode]
        gi = math.floor(x * n + 0.5)
        gj = math.floor(y * n + 0.5)
        target = ("g", gi % n, gj % n)
        edges.append(
            PeriodicEdge(cnode, target, b / 2, (gi // n, gj // n), "connector")
        )

    return PeriodicWeightedGraph(
        nodes=tuple(nodes),
        positions=positions,
        edges=tuple(edges),
        class_lengths=graph.classes,
        hub_budget=float(theta),
        background_systole=b,
        grid_resolution=n,
        row_loop_cost=b,
        col_loop_cost=b,
    )


@dataclass(frozen=True)
class SpectrumEntry:
    """One marked length: canonical class, length, and a witness path
    in the cover as (node, shift_x, shift_y) triples."""

    cls: IntegralClass
    length: float
    witness: tuple[tuple[NodeId, int, int], ...]

    def to_jsonable(self, include_witness: bool = False) -> dict:
        out = {"class": [self.cls.a, self.cls.b], "length": self.length}
        if include_witness:
            out["witness"] = [[list(node), sx, sy] for (node, sx, sy) in self.witness]
        return out


def _certified_window(pg: PeriodicWeightedGraph, h: IntegralClass) -> tuple[int, float]:
    """(window, upper bound) such that no optimal cycle can shift past
    the window: a path reaching shift s uses at least s edges, hence
    costs at least s times the cheapest edge, and the grid loops give a
    concrete cycle of the returned upper cost."""
    if pg.row_loop_cost is None or pg.col_loop_cost is None:
        raise ValidationError(
            "graph carries no background loops to certify a search window; "
            "build it with build_canyon_graph or uniform_grid"
        )
    upper = abs(h.a) * pg.row_loop_cost + abs(h.b) * pg.col_loop_cost
    window = math.ceil(upper / pg.min_edge_weight())
    return max(window, abs(h.a), abs(h.b)), upper


def _grid_loop_seed(pg: PeriodicWeightedGraph, adj, h: IntegralClass):
    """Concrete cycle of class h from grid row and column loops.

    Returns (cost, witness states, path edges) or None when the graph
    has no background grid.  Seeding the search with it means classes
    whose optimum ties the background bound finish without exploring
    the tie plateau at all.
    """
    n = pg.grid_resolution
    start: NodeId = ("g", 0, 0)
    if n is None or start not in pg.positions:
        return None
    states = [(start, 0, 0)]
    path_edges: list[tuple[int, int]] = []
    cost = 0.0
    cur = start
    sx = sy = 0

    def step(nxt: NodeId, disp: IntVec) -> bool:
        nonlocal cur, sx, sy, cost
        for (nbr, w, d, idx) in adj[cur]:
            if nbr == nxt and d == disp:
                cur = nbr
                sx += d[0]
                sy += d[1]
                cost += w
                states.append((cur, sx, sy))
                path_edges.append((idx, 1))
                return True
        return False

    for _loop in range(abs(h.a)):
        for i in range(n):
            if not step(("g", (i + 1) % n, 0), (1 if i == n - 1 else 0, 0)):
                return None
    down = h.b < 0
    for _loop in range(abs(h.b)):
        for j in range(n):
            if down:
                nxt = ("g", 0, (n - j - 1) % n)
                disp = (0, -1 if j == 0 else 0)
            else:
                nxt = ("g", 0, (j + 1) % n)
                disp = (0, 1 if j == n - 1 else 0)
            if not step(nxt, disp):
                return None
    assert (sx, sy) == (h.a, h.b)
    return cost, tuple(states), path_edges


def _cycle_starts(pg: PeriodicWeightedGraph, h: IntegralClass) -> list[NodeId]:
    """Endpoints of period-crossing edges in one coordinate.

    Every cycle with nonzero x-displacement uses an edge whose disp has
    a nonzero x component, so the shortest cycle passes through one of
    these endpoints; restricting the start set this way loses nothing.
    """
    xs: set[NodeId] = set()
    ys: set[NodeId] = set()
    for e in pg.edges:
        if e.disp[0] != 0:
            xs.update((e.u, e.v))
        if e.disp[1] != 0:
            ys.update((e.u, e.v))
    if h.a != 0 and (h.b == 0 or len(xs) <= len(ys)):
        chosen = xs
    else:
        chosen = ys
    # corridor starts first: they bound the optimum early and let the
    # heuristic close off the background almost immediately
    return sorted(chosen, key=lambda node: (node[0] == "g", node))


def _exact_length(pg: PeriodicWeightedGraph, path_edges: Iterable[tuple[int, int]]) -> float:
    """Recompute a witness length from exact corridor shares.

    Corridor shares accumulate as Fractions per class and multiply the
    class length once, so full corridor loops reproduce the prescribed
    lengths exactly; other edges group by weight before summing.
    """
    shares: dict[int, Fraction] = {}
    counts: dict[float, int] = {}
    for edge_idx, _sign in path_edges:
        e = pg.edges[edge_idx]
        if e.corridor is not None:
            idx, share = e.corridor
            shares[idx] = shares.get(idx, Fraction(0)) + share
        else:
            counts[e.weight] = counts.get(e.weight, 0) + 1
    total = 0.0
    assert pg.class_lengths is not None or not shares
    for idx in sorted(shares):
        total += float(shares[idx]) * pg.class_lengths[idx][1]
    for w in sorted(counts):
        total += counts[w] * w
    return total


def marked_min_length(
    pg: PeriodicWeightedGraph,
    h: IntegralClass | tuple[int, int],
    window: Optional[int] = None,
) -> SpectrumEntry:
    """Shortest cycle length among loops with total displacement h.

    Equals the minimum over all quotient nodes of the cover distance
    from the node's origin lift to its h-translate.  The search runs
    only from endpoints of period-crossing edges, which every such
    cycle must visit, and is guided by the admissible rate-hull gauge
    heuristic; a certified window derived from the background loop
    bound caps the deck shifts.
    """
    if not isinstance(h, IntegralClass):
        h = IntegralClass(int(h[0]), int(h[1]))
    h = h.canonical()
    if h.is_trivial:
        return SpectrumEntry(cls=h, length=0.0, witness=((pg.nodes[0], 0, 0),))

    needed, upper = _certified_window(pg, h)
    if window is None:
        window = needed
    elif window < needed:
        raise WindowTooSmallError(
            f"window {window} cannot certify class {h}; "
            f"the background loop bound needs {needed}",
            window=needed,
        )

    adj = _adjacency(pg)
    rate_x, rate_y, rate_1 = _crossing_rates(pg)
    normals = _gauge_normals(pg)
    cutoff = upper * (1 + SEARCH_RTOL)
    best = math.inf
    best_states: Optional[tuple] = None
    best_edges: Optional[list[tuple[int, int]]] = None
    seed = _grid_loop_seed(pg, adj, h)
    if seed is not None:
        best, best_states, best_edges = seed

    deflate = 1 - _HEUR_DEFLATE
    for start in _cycle_starts(pg, h):
        sx0, sy0 = pg.positions[start]
        goal_x = sx0 + h.a
        goal_y = sy0 + h.b
        bar = min(best * (1 - _PRUNE_RTOL), cutoff)

        def heuristic(node: NodeId, sx: int, sy: int) -> float:
            px, py = pg.positions[node]
            dx = goal_x - (px + sx)
            dy = goal_y - (py + sy)
            if normals is not None:
                return max(ax * dx + ay * dy for ax, ay in normals) * deflate
            dx = abs(dx)
            dy = abs(dy)
            hx = rate_x * dx if math.isfinite(rate_x) else 0.0
            hy = rate_y * dy if math.isfinite(rate_y) else 0.0
            h1 = rate_1 * (dx + dy) if math.isfinite(rate_1) else 0.0
            return max(hx, hy, h1) * deflate

        dist: dict[tuple, float] = {}
        pred: dict[tuple, tuple] = {}
        state0 = (start, 0, 0)
        target = (start, h.a, h.b)
        dist[state0] = 0.0
        tick = 0
        heap = [(heuristic(start, 0, 0), tick, 0.0, state0)]
        while heap:
            f, _t, g, state = heapq.heappop(heap)
            if f >= bar:
                break
            if g > dist.get(state, math.inf):
                continue
            if state == target:
                best = g
                path = []
                cur = state
                while cur != state0:
                    prev, edge_idx, sign = pred[cur]
                    path.append((cur, edge_idx, sign))
                    cur = prev
                path.reverse()
                best_states = (state0,) + tuple(st for (st, _e, _s) in path)
                best_edges = [(e, s) for (_st, e, s) in path]
                break
            node, sx, sy = state
            for (nbr, w, (dx, dy), edge_idx) in adj[node]:
                nsx = sx + dx
                nsy = sy + dy
                if abs(nsx) > window or abs(nsy) > window:
                    continue
                ng = g + w
                nstate = (nbr, nsx, nsy)
                if ng < dist.get(nstate, math.inf):
                    nf = ng + heuristic(nbr, nsx, nsy)
                    if nf >= bar:
                        continue
                    dist[nstate] = ng
                    sign = 1 if pg.edges[edge_idx].u == node else -1
                    pred[nstate] = (state, edge_idx, sign)
                    tick += 1
                    heapq.heappush(heap, (nf, tick, ng, nstate))

    if best_states is None or best_edges is None:
        raise ValidationError(
            f"no cycle of class {h} found within the certified window; "
            "the graph may not wrap in that direction"
        )
    exact = _exact_length(pg, best_edges)
    assert abs(exact - best) <= 1e-9 * max(1.0, best), "exact recompute drifted"
    return SpectrumEntry(cls=h, length=exact, witness=best_states)


@dataclass(frozen=True)
class StableNormEstimate:
    """Ratios f(n h)/n for n = 1..n_max and their minimum.

    `stable` is set when n = 1 already attains the minimum; combined
    with subadditivity this certifies f(n h) = n f(h) for every n
    computed, the discrete stability criterion.
    """

    cls: IntegralClass
    ratios: tuple[float, ...]
    estimate: float
    stable: bool
    stable_at: Optional[int]


def stable_norm_estimate(
    pg: PeriodicWeightedGraph,
    h: IntegralClass | tuple[int, int],
    n_max: int,
    window: Optional[int] = None,
) -> StableNormEstimate:
    if not isinstance(n_max, int) or n_max < 1:
        raise ValidationError(f"n_max must be a positive integer, got {n_max!r}")
    if not isinstance(h, IntegralClass):
        h = IntegralClass(int(h[0]), int(h[1]))
    h = h.canonical()
    if h.is_trivial:
        raise ValidationError("stable norm of the trivial class is 0; nothing to estimate")
    ratios = []
    for n in range(1, n_max + 1):
        entry = marked_min_length(pg, IntegralClass(n * h.a, n * h.b), window)
        ratios.append(entry.length / n)
    estimate = min(ratios)
    stable = ratios[0] <= estimate * (1 + 1e-9)
    return StableNormEstimate(
        cls=h,
        ratios=tuple(ratios),
        estimate=estimate,
        stable=stable,
        stable_at=1 if stable else None,
    )


@dataclass(frozen=True)
class MultiplicityGroup:
    """Classes tied at one length: m is the tie count and n the number
    of strictly shorter entries."""

    length: float
    classes: tuple[IntegralClass, ...]
    multiplicity: int
    shorter_count: int


@dataclass(frozen=True)
class SpectrumResult:
    entries: tuple[SpectrumEntry, ...]
    groups: tuple[MultiplicityGroup, ...]
    norm_bound: float
    group_rtol: float

    def to_jsonable(self, include_witnesses: bool = False) -> dict:
        return {
            "norm_bound": self.norm_bound,
            "group_rtol": self.group_rtol,
            "entries": [e.to_jsonable(include_witnesses) for e in self.entries],
            "groups": [
                {
                    "length": g.length,
                    "classes": [[c.a, c.b] for c in g.classes],
                    "multiplicity": g.multiplicity,
                    "shorter_count": g.shorter_count,
                }
                for g in self.groups
            ],
        }


def _worker_count() -> int:
    env = os.environ.get("SNL_THREADS", "").strip()
    if env:
        try:
            v = int(env)
        except ValueError as exc:
            raise ValidationError(f"SNL_THREADS must be an integer, got {env!r}") from exc
        if v < 1:
            raise ValidationError(f"SNL_THREADS must be positive, got {v}")
        return v
    return min(4, os.cpu_count() or 1)


def spectrum(
    pg: PeriodicWeightedGraph,
    norm_bound: float,
    window: Optional[int] = None,
    group_rtol: Optional[float] = None,
) -> SpectrumResult:
    """Marked lengths of every class that could fit under norm_bound.

    Candidate classes come from the crossing-rate lower bound, so the
    enumeration box provably contains every class whose marked length
    can be at or below the bound.  Classes are measured independently
    (in a thread pool; see SNL_THREADS) and sorted deterministically by
    (length, class); ties group under the declared relative tolerance.
    """
    if not norm_bound > 0:
        raise ValidationError(f"norm bound must be positive, got {norm_bound}")
    rtol = GROUP_RTOL if group_rtol is None else float(group_rtol)
    if rtol < 0:
        raise ValidationError(f"grouping tolerance must be nonnegative, got {rtol}")
    rate_x, rate_y, _rate_1 = _crossing_rates(pg)
    amax = math.floor(norm_bound / rate_x + 1e-9) if math.isfinite(rate_x) else 0
    bmax = math.floor(norm_bound / rate_y + 1e-9) if math.isfinite(rate_y) else 0
    candidates = [IntegralClass(0, b) for b in range(1, bmax + 1)]
    candidates.extend(
        IntegralClass(a, b)
        for a in range(1, amax + 1)
        for b in range(-bmax, bmax + 1)
    )

    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        measured = list(pool.map(lambda c: marked_min_length(pg, c, window), candidates))

    entries = [marked_min_length(pg, IntegralClass(0, 0))]
    entries.extend(e for e in measured if e.length <= norm_bound * (1 + SEARCH_RTOL))
    entries.sort(key=lambda e: (e.length, e.cls.tie_key()))

    groups: list[MultiplicityGroup] = []
    bucket: list[SpectrumEntry] = []
    shorter = 0
    for e in entries:
        if bucket and e.length - bucket[0].length > rtol * max(bucket[0].length, 1e-300):
            groups.append(
                MultiplicityGroup(
                    length=bucket[0].length,
                    classes=tuple(x.cls for x in bucket),
                    multiplicity=len(bucket),
                    shorter_count=shorter,
                )
            )
            shorter += len(bucket)
            bucket = []
        bucket.append(e)
    if bucket:
        groups.append(
            MultiplicityGroup(
                length=bucket[0].length,
                classes=tuple(x.cls for x in bucket),
                multiplicity=len(bucket),
                shorter_count=shorter,
            )
        )
    return SpectrumResult(
        entries=tuple(entries),
        groups=tuple(groups),
        norm_bound=float(norm_bound),
        group_rtol=rtol,
    )


def quotient_distance(pg: PeriodicWeightedGraph, u: NodeId, v: NodeId) -> float:
    """Shortest-path distance on the quotient graph, ignoring shifts."""
    if u not in pg.positions or v not in pg.positions:
        raise ValidationError("both endpoints must be graph nodes")
    adj = _adjacency(pg)
    dist = {u: 0.0}
    heap = [(0.0, 0, u)]
    tick = 0
    while heap:
        d, _t, node = heapq.heappop(heap)
        if node == v:
            return d
        if d > dist.get(node, math.inf):
            continue
        for (nbr, w, _disp, _idx) in adj[node]:
            nd = d + w
            if nd < dist.get(nbr, math.inf):
                dist[nbr] = nd
                tick += 1
                heapq.heappush(heap, (nd, tick, nbr))
    raise ValidationError(f"node {v} unreachable from {u}")


def spectrum_csv_rows(result: SpectrumResult) -> list[tuple[int, int, float, int]]:
    """Rows (a, b, length, multiplicity_group_id) for CSV export."""
    group_of: dict[tuple[int, int], int] = {}
    for gid, g in enumerate(result.groups):
        for c in g.classes:
            group_of[(c.a, c.b)] = gid
    return [
        (e.cls.a, e.cls.b, e.length, group_of[(e.cls.a, e.cls.b)])
        for e in result.entries
    ]
