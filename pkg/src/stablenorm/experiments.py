"""Convergence of canyon stable norms toward their prescribing norm.

Each stage prescribes the k leading primitive classes of a fixed
strictly convex norm and measures the canyon's stable norm.  At the
graph level the stable norm is the gauge of the convex hull of the
scaled classes +-h_i / ell_i, so adding classes can only shrink the
gap to the prescribing norm: deviations are nonincreasing in k, both
at pinned integer classes (measured through the cover search) and on
a fan of unit directions (evaluated on the hull).

Every gauge is 1-homogeneous and sandwiched between fixed multiples of
the Euclidean norm, so all stages share one Lipschitz constant; the
report checks it pairwise on the sampled values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from stablenorm.errors import ValidationError
from stablenorm.norms import (
    IntegralClass,
    NormSpec,
    eval_norm,
    hexagonal,
    leading_primitive_classes,
    lipschitz_bound,
)
from stablenorm.periodic_metric import build_canyon_graph, stable_norm_estimate
from stablenorm.toral_graph import build_graph, compute_zeta_epsilon_theta

DEFAULT_KS = (2, 3, 4, 5, 6)
DEFAULT_PINNED = ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1))

#: Slack for the pairwise Lipschitz comparison.
LIPSCHITZ_TOL = 1e-9


def _convex_hull(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    pts = sorted(set(points))
    if len(pts) < 3:
        return list(pts)

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
    return lower[:-1] + upper[:-1]


def hull_gauge(hull: Sequence[tuple[float, float]], u: tuple[float, float]) -> float:
    """Gauge of the origin-symmetric convex hull at u.

    Writes u = s*p + t*q over each hull edge (p, q); the edge crossed
    by the ray has s, t >= 0 and gauge s + t.
    """
    ux, uy = u
    if ux == 0.0 and uy == 0.0:
        return 0.0
    best = 0.0
    n = len(hull)
    for i in range(n):
        px, py = hull[i]
        qx, qy = hull[(i + 1) % n]
        d = px * qy - py * qx
        if abs(d) < 1e-15:
            continue
        s = (ux * qy - uy * qx) / d
        t = (px * uy - py * ux) / d
        if s >= -1e-12 and t >= -1e-12:
            best = max(best, s + t)
    if best <= 0.0:
        raise ValidationError(f"direction {u} escapes the hull fan; hull degenerate")
    return best


@dataclass(frozen=True)
class PinnedDeviation:
    cls: IntegralClass
    estimate: float
    target: float

    @property
    def deviation(self) -> float:
        return self.estimate / self.target - 1.0


@dataclass(frozen=True)
class StageReport:
    k: int
    classes: tuple[tuple[IntegralClass, float], ...]
    theta: float
    background: float
    pinned: tuple[PinnedDeviation, ...]
    sup_pinned_deviation: float
    hull_sup_deviation: float
    lipschitz_excess: float

    def to_jsonable(self) -> dict:
        return {
            "k": self.k,
            "classes": [[c.a, c.b] for c, _l in self.classes],
            "lengths": [length for _c, length in self.classes],
            "theta": self.theta,
            "background": self.background,
            "pinned": [
                {
                    "class": [p.cls.a, p.cls.b],
                    "estimate": p.estimate,
                    "target": p.target,
                    "deviation": p.deviation,
                }
                for p in self.pinned
            ],
            "sup_pinned_deviation": self.sup_pinned_deviation,
            "hull_sup_deviation": self.hull_sup_deviation,
            "lipschitz_excess": self.lipschitz_excess,
        }


@dataclass(frozen=True)
class ConvergenceReport:
    stages: tuple[StageReport, ...]
    pinned: tuple[IntegralClass, ...]
    directions: int
    lipschitz_bound: float
    monotone: bool
    final_deviation: float
    lipschitz_ok: bool

    def to_jsonable(self) -> dict:
        return {
            "stages": [s.to_jsonable() for s in self.stages],
            "pinned": [[c.a, c.b] for c in self.pinned],
            "directions": self.directions,
            "lipschitz_bound": self.lipschitz_bound,
            "monotone": self.monotone,
            "final_deviation": self.final_deviation,
            "lipschitz_ok": self.lipschitz_ok,
        }


def run_convergence(
    norm: Optional[NormSpec] = None,
    ks: Sequence[int] = DEFAULT_KS,
    pinned: Sequence[tuple[int, int]] = DEFAULT_PINNED,
    grid_resolution: int = 64,
    directions: int = 64,
    n_max: int = 2,
) -> ConvergenceReport:
    """Measure canyon stable norms against their prescribing norm.

    The per-stage deviation is relative and nonnegative: corridor
    combinations are genuine cycles, so estimates can only overshoot
    the norm.  `monotone` records whether the sup over pinned classes
    is nonincreasing in k, and `final_deviation` is the last stage's.
    """
    if norm is None:
        norm = hexagonal()
    ks = tuple(ks)
    if not ks or list(ks) != sorted(ks) or len(set(ks)) != len(ks):
        raise ValidationError(f"stage list must be strictly increasing, got {ks!r}")
    if any(not isinstance(k, int) or k < 2 for k in ks):
        raise ValidationError(f"every stage needs k >= 2, got {ks!r}")
    if directions < 8:
        raise ValidationError(f"need at least 8 directions, got {directions}")
    pinned_classes = tuple(IntegralClass(a, b).canonical() for (a, b) in pinned)
    if any(c.is_trivial for c in pinned_classes):
        raise ValidationError("pinned classes must be nontrivial")

    b_lip = lipschitz_bound(eval_norm(norm, (1, 0)), eval_norm(norm, (0, 1)))
    fan = [
        (math.cos(2 * math.pi * j / directions), math.sin(2 * math.pi * j / directions))
        for j in range(directions)
    ]

    stages = []
    for k in ks:
        classes = leading_primitive_classes(norm, k)
        graph = build_graph(classes)
        ell_k = max(length for _c, length in classes)
        consts = compute_zeta_epsilon_theta(graph, norm, ell_k)
        canyon = build_canyon_graph(
            graph, theta=consts.theta, background_systole=ell_k,
            grid_resolution=grid_resolution,
        )

        devs = []
        for cls in pinned_classes:
            est = stable_norm_estimate(canyon, cls, n_max).estimate
            devs.append(PinnedDeviation(cls=cls, estimate=est, target=eval_norm(norm, cls)))

        hull = _convex_hull(
            [(c.a / length, c.b / length) for c, length in classes]
            + [(-c.a / length, -c.b / length) for c, length in classes]
        )
        gauge_samples = [hull_gauge(hull, u) for u in fan]
        hull_dev = max(
            g / eval_norm(norm, u) - 1.0 for g, u in zip(gauge_samples, fan)
        )

        # one shared Lipschitz constant over hull samples and pinned
        # estimates alike: |g(u) - g(v)| <= B |u - v|
        samples = list(zip(fan, gauge_samples))
        samples.extend(
            ((float(p.cls.a), float(p.cls.b)), p.estimate) for p in devs
        )
        excess = 0.0
        for i in range(len(samples)):
            (x1, y1), g1 = samples[i]
            for j in range(i + 1, len(samples)):
                (x2, y2), g2 = samples[j]
                excess = max(excess, abs(g1 - g2) - b_lip * math.hypot(x1 - x2, y1 - y2))

        stages.append(
            StageReport(
                k=k,
                classes=tuple(classes),
                theta=consts.theta,
                background=ell_k,
                pinned=tuple(devs),
                sup_pinned_deviation=max(p.deviation for p in devs),
                hull_sup_deviation=hull_dev,
                lipschitz_excess=excess,
            )
        )

    sups = [s.sup_pinned_deviation for s in stages]
    monotone = all(b <= a + 1e-9 for a, b in zip(sups, sups[1:]))
    return ConvergenceReport(
        stages=tuple(stages),
        pinned=pinned_classes,
        directions=directions,
        lipschitz_bound=b_lip,
        monotone=monotone,
        final_deviation=sups[-1],
        lipschitz_ok=all(s.lipschitz_excess <= LIPSCHITZ_TOL for s in stages),
    )
