"""Lattice polygon counts and minimal-area searches.

Expected values are frozen from the exhaustive bounded enumeration and
double-checked structurally: every witness must reproduce its reported
counts through Pick's identity and through the brute-force point scan.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablenorm.errors import SearchBudgetError, ValidationError
from stablenorm.lattice_polygons import (
    EIGHT_PI_SQUARED_FLOOR,
    MIN_AREA_CUBIC_FLOOR,
    LatticePolygon,
    angle_key,
    canonical_form,
    cubic_ratio_exceeds_floor,
    f_of_m,
    i_of_k,
    min_area_convex_kgon,
    min_area_table,
    min_interior_symmetric,
    pick_counts,
)

UNIT_SQUARE = LatticePolygon(((0, 0), (1, 0), (1, 1), (0, 1)))

EXPECTED_MIN_AREA = {
    3: Fraction(1, 2),
    4: Fraction(1),
    5: Fraction(5, 2),
    6: Fraction(3),
    7: Fraction(13, 2),
    8: Fraction(7),
}
EXPECTED_INTERIOR = {3: 0, 4: 0, 5: 1, 6: 1, 7: 4, 8: 4}
EXPECTED_SYMMETRIC_INTERIOR = {2: 1, 4: 1, 6: 1, 8: 7, 10: 13, 12: 19, 14: 35, 16: 57}
EXPECTED_F = {1: 1, 2: 1, 3: 1, 4: 4, 5: 7, 6: 10, 7: 18, 8: 29}


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def strict_hull(points):
    """Monotone-chain hull keeping only genuine corners; None if the
    input cannot support a 2-dimensional polygon."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return None

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(
                (out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                (p[0] - out[-1][0], p[1] - out[-1][1]),
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return None
    return tuple(hull)


points_strategy = st.lists(
    st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=3, max_size=24
)


class TestPickCounts:
    def test_unit_square(self):
        c = pick_counts(UNIT_SQUARE, self_check=True)
        assert (c.area, c.interior, c.boundary) == (Fraction(1), 0, 4)

    def test_doubled_triangle(self):
        tri = LatticePolygon(((0, 0), (2, 0), (0, 2)))
        c = pick_counts(tri, self_check=True)
        assert (c.area, c.interior, c.boundary) == (Fraction(2), 0, 6)

    def test_symmetric_hexagon(self):
        hexagon = LatticePolygon(((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)))
        c = pick_counts(hexagon, self_check=True)
        assert (c.area, c.interior, c.boundary) == (Fraction(3), 1, 6)
        assert hexagon.is_centrally_symmetric()

    def test_random_hulls_bulk(self):
        # a deterministic bulk run; the self-check re-counts every point
        import random

        rng = random.Random(20260817)
        checked = 0
        for _ in range(1000):
            pts = [(rng.randint(0, 12), rng.randint(0, 12)) for _ in range(rng.randint(3, 12))]
            hull = strict_hull(pts)
            if hull is None:
                continue
            poly = LatticePolygon(hull)
            c = pick_counts(poly, self_check=True)
            assert c.area == c.interior + Fraction(c.boundary, 2) - 1
            checked += 1
        assert checked > 700

    @given(points_strategy)
    def test_pick_identity_on_hulls(self, pts):
        hull = strict_hull(pts)
        if hull is None:
            return
        c = pick_counts(LatticePolygon(hull), self_check=True)
        assert c.area == c.interior + Fraction(c.boundary, 2) - 1
        assert c.boundary >= len(hull)


class TestLatticePolygonValidation:
    def test_clockwise_rejected(self):
        with pytest.raises(ValidationError):
            LatticePolygon(((0, 0), (0, 1), (1, 0)))

    def test_collinear_run_rejected(self):
        with pytest.raises(ValidationError):
            LatticePolygon(((0, 0), (1, 0), (2, 0), (1, 1)))

    def test_repeated_vertex_rejected(self):
        with pytest.raises(ValidationError):
            LatticePolygon(((0, 0), (1, 0), (1, 1), (1, 0)))

    def test_too_few_vertices(self):
        with pytest.raises(ValidationError):
            LatticePolygon(((0, 0), (1, 0)))

    def test_non_integer_vertex(self):
        with pytest.raises(ValidationError):
            LatticePolygon(((0, 0), (1, 0), (0.5, 1.0)))

    def test_double_wound_loop_rejected(self):
        # every turn is a left turn and all vertices are distinct, but
        # the edge directions sweep two full revolutions
        verts = ((0, 0), (3, 0), (3, 3), (-1, 3), (-1, 1), (1, 1), (1, 2), (0, 2))
        with pytest.raises(ValidationError, match="wind"):
            LatticePolygon(verts)

    def test_pick_rejects_nonsense_k(self):
        for bad in (2, 13, "5", 4.0):
            with pytest.raises(ValidationError):
                min_area_convex_kgon(bad)


class TestAngleKey:
    def test_counterclockwise_order(self):
        ring = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1),
                (-2, 1), (-1, 0), (-2, -1), (-1, -1), (-1, -2), (0, -1),
                (1, -2), (1, -1), (2, -1)]
        assert sorted(ring, key=angle_key) == ring

    def test_zero_vector_rejected(self):
        with pytest.raises(ValidationError):
            angle_key((0, 0))


class TestMinArea:
    def test_triangle_is_fundamental(self):
        res = min_area_convex_kgon(3)
        assert res.area == Fraction(1, 2)
        assert res.certified
        assert res.witness.vertices == ((0, 0), (1, 0), (0, 1))

    def test_quadrilateral(self):
        res = min_area_convex_kgon(4)
        assert res.area == Fraction(1)
        assert res.certified
        assert pick_counts(res.witness).area == Fraction(1)

    def test_frozen_minimal_areas(self):
        for k, expected in EXPECTED_MIN_AREA.items():
            assert min_area_convex_kgon(k).area == expected, k

    def test_pentagon_pruned_matches_oracle(self):
        pruned = min_area_convex_kgon(5, pruned=True)
        oracle = min_area_convex_kgon(5, pruned=False)
        assert pruned.area == oracle.area == Fraction(5, 2)
        assert pruned.states_explored < oracle.states_explored

    def test_table_matches_per_k_runs(self):
        table = min_area_table(3, 8)
        assert [r.area for r in table] == [EXPECTED_MIN_AREA[k] for k in range(3, 9)]
        for r in table:
            counts = pick_counts(r.witness, self_check=True)
            assert counts.area == r.area
            assert len(r.witness.vertices) == r.k

    def test_areas_nondecreasing(self):
        areas = [min_area_convex_kgon(k).area for k in range(3, 9)]
        assert areas == sorted(areas)

    def test_certification_flags(self):
        # only the Pick floor k/2 - 1 certifies unboundedly
        assert min_area_convex_kgon(3).certified
        assert min_area_convex_kgon(4).certified
        assert not min_area_convex_kgon(5).certified

    def test_witness_in_canonical_position(self):
        for k in range(3, 9):
            w = min_area_convex_kgon(k).witness
            assert canonical_form(w.vertices) == w.vertices
            assert min(x for x, _ in w.vertices) == 0
            assert min(y for _, y in w.vertices) == 0

    def test_budget_exhaustion(self):
        with pytest.raises(SearchBudgetError) as exc:
            min_area_convex_kgon(8, pruned=False, budget=500)
        assert exc.value.budget == 500
        assert exc.value.nodes_expanded > 500

    def test_coord_bound_validation(self):
        with pytest.raises(ValidationError):
            min_area_convex_kgon(4, coord_bound=1)


class TestInteriorCounts:
    def test_frozen_interior_counts(self):
        for k, expected in EXPECTED_INTERIOR.items():
            assert i_of_k(k) == expected, k

    def test_interior_nondecreasing(self):
        values = [i_of_k(k) for k in range(3, 9)]
        assert values == sorted(values)

    def test_cubic_ratio_strictly_above_floor(self):
        for k, area in EXPECTED_MIN_AREA.items():
            assert cubic_ratio_exceeds_floor(k, area)
            assert Fraction(area) / k**3 > MIN_AREA_CUBIC_FLOOR

    def test_floor_constant_is_sane(self):
        # 8*pi^2 is a little above 78.9568, so the reciprocal floor sits
        # just above the true asymptotic constant
        assert Fraction(78) < EIGHT_PI_SQUARED_FLOOR < Fraction(79)
        assert Fraction(1, 80) < MIN_AREA_CUBIC_FLOOR < Fraction(1, 78)


class TestSymmetricMinimum:
    def test_degenerate_pair(self):
        res = min_interior_symmetric(2)
        assert res.interior == 1
        assert res.witness is None
        assert res.witness_vertices == ((1, 0), (-1, 0))
        assert res.certified

    def test_frozen_symmetric_minima(self):
        for two_m, expected in EXPECTED_SYMMETRIC_INTERIOR.items():
            res = min_interior_symmetric(two_m)
            assert res.interior == expected, two_m
            assert res.interior % 2 == 1, two_m

    def test_witnesses_are_symmetric_and_consistent(self):
        for two_m in range(4, 17, 2):
            res = min_interior_symmetric(two_m, prefer_primitive=True)
            w = res.witness
            assert w is not None
            assert w.is_centrally_symmetric()
            assert len(w.vertices) == two_m
            counts = pick_counts(w, self_check=True)
            assert counts.interior == res.interior
            if res.all_primitive:
                assert counts.boundary == two_m

    def test_quadrilateral_minimum_matches_square(self):
        square = LatticePolygon(((1, 0), (0, 1), (-1, 0), (0, -1)))
        assert pick_counts(square).interior == 1
        assert min_interior_symmetric(4).interior == 1

    def test_hexagon_witness_matches_example(self):
        hexagon = LatticePolygon(((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)))
        assert pick_counts(hexagon).interior == 1
        assert min_interior_symmetric(6).interior == 1

    def test_minimum_dominates_unrestricted(self):
        for two_m in (4, 6, 8):
            assert min_interior_symmetric(two_m).interior >= i_of_k(two_m)

    def test_nondecreasing_in_m(self):
        values = [min_interior_symmetric(t).interior for t in range(2, 17, 2)]
        assert values == sorted(values)

    def test_validation(self):
        for bad in (3, 0, -2, 18, "4"):
            with pytest.raises(ValidationError):
                min_interior_symmetric(bad)


class TestHalvedCount:
    def test_frozen_values(self):
        for m, expected in EXPECTED_F.items():
            assert f_of_m(m) == expected, m

    def test_small_cases_are_one(self):
        assert [f_of_m(m) for m in (1, 2, 3)] == [1, 1, 1]

    def test_validation(self):
        for bad in (0, 9, "1"):
            with pytest.raises(ValidationError):
                f_of_m(bad)


class TestCanonicalForm:
    def test_idempotent_on_square(self):
        assert canonical_form(UNIT_SQUARE.vertices) == UNIT_SQUARE.vertices

    @given(points_strategy, st.integers(0, 7))
    @settings(max_examples=60)
    def test_symmetry_invariant(self, pts, sym):
        hull = strict_hull(pts)
        if hull is None:
            return
        sx = 1 if sym & 1 else -1
        sy = 1 if sym & 2 else -1
        swap = bool(sym & 4)
        moved = [(sx * (y if swap else x), sy * (x if swap else y)) for (x, y) in hull]
        if sum(_cross(moved[i], moved[(i + 1) % len(moved)]) for i in range(len(moved))) < 0:
            moved.reverse()
        assert canonical_form(moved) == canonical_form(hull)

    @given(points_strategy, st.integers(-9, 9), st.integers(-9, 9))
    @settings(max_examples=60)
    def test_translation_invariant(self, pts, dx, dy):
        hull = strict_hull(pts)
        if hull is None:
            return
        shifted = [(x + dx, y + dy) for (x, y) in hull]
        assert canonical_form(shifted) == canonical_form(hull)
