"""Geodesic graphs of closed flat-torus geodesics, with exact geometry.

For pairwise non-proportional primitive classes h_1..h_k, the closed
geodesics through a common base point are the lines t*(a_i, b_i) on
R^2/Z^2.  Two such geodesics meet in exactly |det(h_i, h_j)| points,
and on gamma_i those points sit at parameters r/|det| with exact
rational values, so the whole graph (vertices, segment fractions q_ij,
lift displacements) is computed in Fraction arithmetic and the stated
identities (sum of q over a class is 1, displacements sum to h_i) hold
exactly, not approximately.

Cycle machinery: shortest representatives of integral classes via
Dijkstra in the Z^2-cover, and a depth-first enumeration of cyclically
reduced cycles up to an edge bound that yields the minimal excess
length over the prescribed norm along with the tube constants zeta,
epsilon, theta used by the corridor metric construction.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from stablenorm.errors import SearchBudgetError, ValidationError, WindowTooSmallError
from stablenorm.norms import IntegralClass, NormSpec, eval_norm

FracVec = tuple[Fraction, Fraction]

#: Absolute slack for comparisons of real edge-length sums.
LENGTH_SLACK = 1e-12


@dataclass(frozen=True)
class GraphEdge:
    """One geodesic segment between consecutive intersection points.

    The segment covers the parameter interval of width `q` on its
    geodesic, so its length is q * ell_i and its lift displacement is
    q * h_i, stored exactly.
    """

    tail: int
    head: int
    cls: int
    q: Fraction
    disp: FracVec
    length: float

    def shift(self, coords: Sequence[FracVec]) -> tuple[int, int]:
        """Integer deck transformation: disp minus the coordinate jump."""
        sx = self.disp[0] - (coords[self.head][0] - coords[self.tail][0])
        sy = self.disp[1] - (coords[self.head][1] - coords[self.tail][1])
        if sx.denominator != 1 or sy.denominator != 1:
            raise AssertionError(f"non-integral deck shift ({sx},{sy})")
        return (int(sx), int(sy))


@dataclass(frozen=True)
class ToralGeodesicGraph:
    """Vertices in [0,1)^2 with exact rational coordinates, segment edges,
    and the class table (h_i, ell_i)."""

    vertices: tuple[FracVec, ...]
    edges: tuple[GraphEdge, ...]
    classes: tuple[tuple[IntegralClass, float], ...]

    @cached_property
    def oriented(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        """Per vertex: outgoing oriented steps (edge index, sign, to)."""
        adj: list[list[tuple[int, int, int]]] = [[] for _ in self.vertices]
        for i, e in enumerate(self.edges):
            adj[e.tail].append((i, +1, e.head))
            adj[e.head].append((i, -1, e.tail))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def shifts(self) -> tuple[tuple[int, int], ...]:
        return tuple(e.shift(self.vertices) for e in self.edges)

    @cached_property
    def min_speed(self) -> float:
        """Smallest length-per-Euclidean-displacement ratio over classes;
        every path of length L stays within L / min_speed of its start."""
        return min(ell / math.hypot(h.a, h.b) for h, ell in self.classes)

    def class_edges(self, cls: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.cls == cls]

    def to_jsonable(self) -> dict:
        return {
            "vertices": [[str(x), str(y)] for (x, y) in self.vertices],
            "edges": [
                {
                    "tail": e.tail,
                    "head": e.head,
                    "class_index": e.cls,
                    "q": str(e.q),
                    "displacement": [str(e.disp[0]), str(e.disp[1])],
                    "length": e.length,
                }
                for e in self.edges
            ],
            "classes": [
                {"class": [h.a, h.b], "length": ell} for (h, ell) in self.classes
            ],
        }


def build_graph(classes: Sequence[tuple[IntegralClass, float]]) -> ToralGeodesicGraph:
    """Build the geodesic graph of the given primitive classes.

    Args:
        classes: pairs (h_i, ell_i); the h_i must be pairwise
            non-proportional primitives and the lengths positive.

    Returns:
        ToralGeodesicGraph with deterministic lexicographic vertex order
        (the base point (0,0) is always vertex 0) and edges grouped by
        class in parameter order.
    """
    if not classes:
        raise ValidationError("at least one class is required")
    for h, ell in classes:
        if not h.is_primitive:
            raise ValidationError(f"class {h} is not primitive")
        if not (ell > 0 and math.isfinite(ell)):
            raise ValidationError(f"class {h} has nonpositive length {ell!r}")
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if classes[i][0].det(classes[j][0]) == 0:
                raise ValidationError(
                    f"classes {classes[i][0]} and {classes[j][0]} are proportional"
                )

    def torus_point(h: IntegralClass, t: Fraction) -> FracVec:
        return ((t * h.a) % 1, (t * h.b) % 1)

    vertex_ix: dict[FracVec, int] = {}

    def vertex_of(p: FracVec) -> int:
        if p not in vertex_ix:
            vertex_ix[p] = len(vertex_ix)
        return vertex_ix[p]

    raw_edges: list[tuple[int, int, int, Fraction, FracVec]] = []
    for i, (h, ell) in enumerate(classes):
        params = {Fraction(0)}
        for j, (g, _) in enumerate(classes):
            if j == i:
                continue
            d = abs(h.det(g))
            params.update(Fraction(r, d) for r in range(d))
        cuts = sorted(params)
        for r, t0 in enumerate(cuts):
            t1 = cuts[r + 1] if r + 1 < len(cuts) else Fraction(1)
            q = t1 - t0
            tail = vertex_of(torus_point(h, t0))
            head = vertex_of(torus_point(h, t1 % 1))
            raw_edges.append((tail, head, i, q, (q * h.a, q * h.b)))

    insertion = list(vertex_ix)
    order = sorted(range(len(insertion)), key=lambda ix: insertion[ix])
    remap = {old: new for new, old in enumerate(order)}
    coords = tuple(sorted(vertex_ix))
    edges = tuple(
        GraphEdge(
            tail=remap[t],
            head=remap[hd],
            cls=c,
            q=q,
            disp=d,
            length=float(q) * classes[c][1],
        )
        for (t, hd, c, q, d) in raw_edges
    )
    return ToralGeodesicGraph(vertices=coords, edges=edges, classes=tuple(classes))


@dataclass(frozen=True)
class Cycle:
    """Closed edge path as (edge index, orientation) steps."""

    steps: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.steps)

    def length(self, graph: ToralGeodesicGraph) -> float:
        return sum(graph.edges[e].length for e, _ in self.steps)

    def length_exact(self, graph: ToralGeodesicGraph) -> float:
        """Length via per-class exact fraction totals.

        Summing the rationals first makes whole-geodesic traversals come
        out bitwise equal to ell_i, which downstream equality assertions
        rely on.
        """
        totals: dict[int, Fraction] = {}
        for e, _ in self.steps:
            edge = graph.edges[e]
            totals[edge.cls] = totals.get(edge.cls, Fraction(0)) + edge.q
        return sum(float(q) * graph.classes[c][1] for c, q in sorted(totals.items()))

    def homology(self, graph: ToralGeodesicGraph) -> IntegralClass:
        """Sum of oriented lift displacements; exact and always integral."""
        dx = sum((s * graph.edges[e].disp[0] for e, s in self.steps), Fraction(0))
        dy = sum((s * graph.edges[e].disp[1] for e, s in self.steps), Fraction(0))
        if dx.denominator != 1 or dy.denominator != 1:
            raise AssertionError(f"cycle displacement ({dx},{dy}) is not integral")
        return IntegralClass(int(dx), int(dy))

    def class_by_crossings(self, graph: ToralGeodesicGraph) -> IntegralClass:
        """Homology via algebraic intersection numbers with reference
        circles {x = x0} and {y = y0}, an independent computation.

        The reference levels are chosen in the widest gaps of the vertex
        coordinates so no step starts or ends on a circle; each step's
        signed crossing count is then an exact floor difference.
        """
        x0 = _gap_midpoint(sorted({v[0] for v in graph.vertices}))
        y0 = _gap_midpoint(sorted({v[1] for v in graph.vertices}))
        a = b = 0
        px: Fraction
        py: Fraction
        if not self.steps:
            return IntegralClass(0, 0)
        e0, s0 = self.steps[0]
        start = graph.edges[e0].tail if s0 > 0 else graph.edges[e0].head
        px, py = graph.vertices[start]
        for e, s in self.steps:
            edge = graph.edges[e]
            dx, dy = s * edge.disp[0], s * edge.disp[1]
            a += math.floor(px + dx - x0) - math.floor(px - x0)
            b += math.floor(py + dy - y0) - math.floor(py - y0)
            px, py = px + dx, py + dy
        return IntegralClass(a, b)

    def is_closed(self, graph: ToralGeodesicGraph) -> bool:
        if not self.steps:
            return True
        seq = [
            (graph.edges[e].tail, graph.edges[e].head) if s > 0 else (graph.edges[e].head, graph.edges[e].tail)
            for e, s in self.steps
        ]
        return all(seq[i][1] == seq[(i + 1) % len(seq)][0] for i in range(len(seq)))

    def is_cyclically_reduced(self) -> bool:
        n = len(self.steps)
        if n < 2:
            return True
        return all(
            self.steps[i][0] != self.steps[(i + 1) % n][0]
            or self.steps[i][1] == self.steps[(i + 1) % n][1]
            for i in range(n)
        )

    def classes_used(self, graph: ToralGeodesicGraph) -> set[int]:
        return {graph.edges[e].cls for e, _ in self.steps}

    def to_jsonable(self, graph: ToralGeodesicGraph) -> dict:
        h = self.homology(graph)
        return {
            "steps": [[e, s] for e, s in self.steps],
            "class": [h.a, h.b],
            "length": self.length(graph),
        }


def _gap_midpoint(values: list[Fraction]) -> Fraction:
    """Midpoint of the widest circular gap among fractions in [0,1)."""
    if not values:
        return Fraction(1, 2)
    best_gap = Fraction(0)
    best_mid = Fraction(1, 2)
    for i, v in enumerate(values):
        nxt = values[i + 1] if i + 1 < len(values) else values[0] + 1
        gap = nxt - v
        if gap > best_gap:
            best_gap = gap
            best_mid = (v + nxt) / 2 % 1
    return best_mid


def _solve_integer_combo(
    gens: list[tuple[int, int]], target: tuple[int, int]
) -> Optional[list[int]]:
    """Integer coefficients x with sum x_i * gens_i = target, or None.

    Column-style Hermite reduction with coefficient tracking; two gcd
    elimination passes suffice in rank 2.
    """
    m = len(gens)
    cols = [[gx, gy, *([1 if i == j else 0 for j in range(m)])] for i, (gx, gy) in enumerate(gens)]

    def eliminate(cols: list[list[int]], row: int) -> Optional[list[int]]:
        live = [c for c in cols if c[row] != 0]
        rest = [c for c in cols if c[row] == 0]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[row]))
            a, b = live[0], live[1]
            k = b[row] // a[row]
            for t in range(len(b)):
                b[t] -= k * a[t]
            if b[row] == 0:
                rest.append(b)
                live = [a] + live[2:]
        cols[:] = rest
        return live[0] if live else None

    u = eliminate(cols, 0)
    w = eliminate(cols, 1)
    ax, ay = target
    coeffs = [0] * m
    if u is None:
        if ax != 0:
            return None
        alpha = 0
    else:
        if ax % u[0] != 0:
            return None
        alpha = ax // u[0]
        for i in range(m):
            coeffs[i] += alpha * u[2 + i]
    resid = ay - alpha * (u[1] if u else 0)
    if w is None:
        if resid != 0:
            return None
    else:
        if resid % w[1] != 0:
            return None
        beta = resid // w[1]
        for i in range(m):
            coeffs[i] += beta * w[2 + i]
    return coeffs


def _fundamental_cycles(graph: ToralGeodesicGraph) -> tuple[list[tuple[int, int]], list[float]]:
    """Integer classes and lengths of a fundamental cycle basis.

    Spanning tree by breadth-first search from vertex 0; every non-tree
    edge closes one cycle whose class is the accumulated deck shift.
    """
    nv = len(graph.vertices)
    parent: list[Optional[tuple[int, int]]] = [None] * nv  # (edge, sign) into vertex
    pot: list[Optional[tuple[int, int]]] = [None] * nv  # integer shift from root
    dist: list[float] = [0.0] * nv
    pot[0] = (0, 0)
    queue = [0]
    in_tree: set[int] = set()
    while queue:
        v = queue.pop(0)
        for e, s, w in graph.oriented[v]:
            if pot[w] is None:
                sx, sy = graph.shifts[e]
                pot[w] = (pot[v][0] + s * sx, pot[v][1] + s * sy)
                dist[w] = dist[v] + graph.edges[e].length
                parent[w] = (e, s)
                in_tree.add(e)
                queue.append(w)
    gens: list[tuple[int, int]] = []
    lens: list[float] = []
    for i, e in enumerate(graph.edges):
        if i in in_tree:
            continue
        sx, sy = graph.shifts[i]
        gens.append(
            (pot[e.tail][0] + sx - pot[e.head][0], pot[e.tail][1] + sy - pot[e.head][1])
        )
        lens.append(dist[e.tail] + e.length + dist[e.head])
    return gens, lens


def minimal_cycle(
    graph: ToralGeodesicGraph, h: IntegralClass, window: Optional[int] = None
) -> Optional[tuple[Cycle, float]]:
    """Shortest cycle in the graph with homology class h.

    Runs Dijkstra in the Z^2-cover restricted to deck shifts bounded by
    `window`, from every start vertex.  With `window=None` a provably
    sufficient window is derived from an explicit cycle decomposition of
    h, so the returned minimum is certified global.

    Returns:
        (cycle, length), or None when h is outside the integer span of
        the graph's cycle classes.

    Raises:
        WindowTooSmallError: a caller-supplied window could not certify
            the minimum; the message names a sufficient window.
    """
    if h.is_trivial:
        return Cycle(()), 0.0
    gens, lens = _fundamental_cycles(graph)
    combo = _solve_integer_combo(gens, (h.a, h.b))
    if combo is None:
        return None
    upper = sum(abs(c) * ln for c, ln in zip(combo, lens))
    speed = graph.min_speed
    auto = max(int(math.ceil(upper / speed)) + 2, max(abs(h.a), abs(h.b)) + 1)
    win = auto if window is None else window
    if window is not None and window < max(abs(h.a), abs(h.b)) + 1:
        raise WindowTooSmallError(
            f"window {window} cannot even contain the target shift; use window >= {auto}",
            window=window,
        )

    best: Optional[tuple[float, int, tuple]] = None
    nv = len(graph.vertices)
    for s0 in range(nv):
        start = (s0, 0, 0)
        target = (s0, h.a, h.b)
        dist: dict[tuple, float] = {start: 0.0}
        pred: dict[tuple, tuple] = {}
        heap: list[tuple[float, int, tuple]] = [(0.0, 0, start)]
        tick = 0
        while heap:
            d, _, state = heapq.heappop(heap)
            if d > dist.get(state, math.inf):
                continue
            if state == target:
                break
            v, mx, my = state
            for e, sg, w in graph.oriented[v]:
                sx, sy = graph.shifts[e]
                nxt = (w, mx + sg * sx, my + sg * sy)
                if abs(nxt[1]) > win or abs(nxt[2]) > win:
                    continue
                nd = d + graph.edges[e].length
                if nd < dist.get(nxt, math.inf) - 1e-15:
                    dist[nxt] = nd
                    pred[nxt] = (state, e, sg)
                    tick += 1
                    heapq.heappush(heap, (nd, tick, nxt))
        if target in dist and (best is None or dist[target] < best[0] - 1e-15):
            steps = []
            cur = target
            while cur != start:
                prev, e, sg = pred[cur]
                steps.append((e, sg))
                cur = prev
            best = (dist[target], s0, tuple(reversed(steps)))

    if best is None:
        raise WindowTooSmallError(
            f"no representative of {h} within window {win}; a window of {auto} suffices",
            window=win,
        )
    length, _, steps = best
    if length > (win - 1) * speed + LENGTH_SLACK:
        raise WindowTooSmallError(
            f"window {win} cannot certify the minimum for {h}; use window >= {auto}",
            window=win,
        )
    return Cycle(steps), length


@dataclass(frozen=True)
class TubeConstants:
    """Outputs of the corridor-width computation.

    epsilon is +inf when no competitor cycle exists under the edge
    bound; theta then falls back to the configured cap.
    """

    zeta: float
    edge_bound: int
    epsilon: float
    theta: float
    witness: Optional[Cycle]
    witness_class: Optional[IntegralClass]
    cycles_checked: int
    nodes_expanded: int


@dataclass(frozen=True)
class InequalityReport:
    ok: bool
    min_gap: float
    witness: Optional[Cycle]
    cycles_checked: int
    gap_quantiles: tuple[float, float, float]
    nodes_expanded: int


def _min_gap_search(
    graph: ToralGeodesicGraph,
    norm: NormSpec,
    edge_bound: int,
    node_budget: int,
    cross_check: bool = False,
) -> tuple[float, Optional[Cycle], list[float], int]:
    """Minimum of L(c) - ||h_c|| over cyclically reduced cycles with at
    most `edge_bound` edges that mix classes or orientations.

    Soundness of the pruning: with prescribed class lengths the norm of
    an edge displacement equals the edge length, so the slack
    L(path) - ||delta(path)|| never decreases along a path and equals
    the final gap at closure.  A partial path whose slack already
    reaches the best known gap cannot produce anything smaller, and a
    path reaching a repeated (vertex, delta) state at greater depth and
    length is dominated outright.
    """
    best_gap = math.inf
    best_cycle: Optional[Cycle] = None
    gaps: list[float] = []
    nodes = 0
    steps: list[tuple[int, int]] = []

    for s0 in range(len(graph.vertices)):
        # first and last step are part of the state: closure legality under
        # cyclic reduction depends on the first step and continuation
        # legality on the last, so dominance may only compare paths that
        # agree on both
        memo: dict[tuple, list[tuple[int, float]]] = {}

        def walk(v: int, depth: int, length: float, dx: Fraction, dy: Fraction) -> None:
            nonlocal best_gap, best_cycle, nodes
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetError(
                    f"cycle enumeration spent its node budget of {node_budget}",
                    nodes_expanded=nodes,
                    budget=node_budget,
                )
            slack = length - eval_norm(norm, (float(dx), float(dy)))
            if slack >= best_gap:
                return
            first = steps[0] if steps else None
            last = steps[-1] if steps else None
            key = (v, dx, dy, first, last)
            front = memo.setdefault(key, [])
            for d0, l0 in front:
                if d0 <= depth and l0 <= length + 1e-15:
                    return
            front[:] = [(d0, l0) for d0, l0 in front if not (depth <= d0 and length <= l0)]
            front.append((depth, length))
            if depth == edge_bound:
                return
            for e, sg, w in graph.oriented[v]:
                if last is not None and e == last[0] and sg == -last[1]:
                    continue
                if w < s0:
                    continue
                edge = graph.edges[e]
                ndx, ndy = dx + sg * edge.disp[0], dy + sg * edge.disp[1]
                steps.append((e, sg))
                if w == s0 and not (first is not None and e == first[0] and sg == -first[1]):
                    cls_set = {graph.edges[se].cls for se, _ in steps}
                    if len(cls_set) > 1:
                        gap = (length + edge.length) - eval_norm(norm, (float(ndx), float(ndy)))
                        gaps.append(gap)
                        if gap < best_gap:
                            best_gap = gap
                            best_cycle = Cycle(tuple(steps))
                        if cross_check:
                            c = Cycle(tuple(steps))
                            if c.homology(graph) != c.class_by_crossings(graph):
                                raise AssertionError(
                                    f"homology mismatch on cycle {c.steps}"
                                )
                walk(w, depth + 1, length + edge.length, ndx, ndy)
                steps.pop()

        walk(s0, 0, 0.0, Fraction(0), Fraction(0))
    return best_gap, best_cycle, gaps, nodes


def compute_zeta_epsilon_theta(
    graph: ToralGeodesicGraph,
    norm: NormSpec,
    ell_k: float,
    node_budget: int = 10_000_000,
    theta_cap: float = 0.25,
    cross_check: bool = False,
) -> TubeConstants:
    """Corridor constants of the graph under its prescribing norm.

    zeta is half the shortest segment; the edge bound is
    floor(ell_k / zeta); epsilon is the minimal excess L(c) - ||h_c||
    over edge-bounded mixed cycles (single-class uniform iterates carry
    zero excess by construction and are excluded); theta = epsilon
    divided by twice the edge bound, capped at `theta_cap` when no
    competitor exists.
    """
    zeta = 0.5 * min(e.length for e in graph.edges)
    edge_bound = int(math.floor(ell_k / zeta + 1e-9))
    gap, witness, gaps, nodes = _min_gap_search(
        graph, norm, edge_bound, node_budget, cross_check
    )
    if math.isinf(gap):
        return TubeConstants(
            zeta=zeta,
            edge_bound=edge_bound,
            epsilon=math.inf,
            theta=theta_cap,
            witness=None,
            witness_class=None,
            cycles_checked=len(gaps),
            nodes_expanded=nodes,
        )
    theta = gap / (2.0 * edge_bound)
    return TubeConstants(
        zeta=zeta,
        edge_bound=edge_bound,
        epsilon=gap,
        theta=min(theta, theta_cap),
        witness=witness,
        witness_class=witness.homology(graph),
        cycles_checked=len(gaps),
        nodes_expanded=nodes,
    )


def verify_strict_inequality(
    graph: ToralGeodesicGraph,
    norm: NormSpec,
    edge_bound: int,
    node_budget: int = 10_000_000,
) -> InequalityReport:
    """Check L(c) > ||h_c|| over all mixed reduced cycles within the
    edge bound.  A nonpositive minimum would be returned as a failing
    report with its witness cycle."""
    gap, witness, gaps, nodes = _min_gap_search(graph, norm, edge_bound, node_budget)
    if not gaps:
        return InequalityReport(True, math.inf, None, 0, (math.inf,) * 3, nodes)
    ordered = sorted(gaps)
    quant = (
        ordered[0],
        ordered[len(ordered) // 2],
        ordered[-1],
    )
    return InequalityReport(
        ok=gap > 0.0,
        min_gap=gap,
        witness=witness,
        cycles_checked=len(gaps),
        gap_quantiles=quant,
        nodes_expanded=nodes,
    )
