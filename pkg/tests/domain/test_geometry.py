import math
from pathlib import Path

import numpy as np
import pytest

from core.domain.errors import DomainError, ParseError
from core.domain.geometry import (
    PUBLISHED_VALID_COUNT,
    DrawableArea,
    ParamGrid,
    WedgeParams,
    compare_with_published,
    distance_band,
    enumerate_grid,
    footprint,
    is_valid,
    load_grid,
    offscreen_part,
    onscreen_part,
    published_grid,
    valid_mask,
    viewing_angle_deg,
    vw_params,
    wedge_polygon,
)
from core.domain.geometry.grid import dump_grid

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


class TestVanillaWedge:
    def test_near_poi(self):
        p = vw_params(1.0)
        assert p.leg == pytest.approx(6.5962, abs=1e-4)
        assert p.theta == pytest.approx(0.80350, abs=1e-5)
        assert p.vertex_dist == 1.0

    def test_far_poi(self):
        p = vw_params(11.0)
        assert p.leg == pytest.approx(20.4908, abs=1e-4)
        assert p.theta == pytest.approx(0.40506, abs=1e-5)

    @pytest.mark.parametrize("d_poi", [0.0, -1.0, -8.0, float("nan")])
    def test_rejects_non_positive(self, d_poi):
        with pytest.raises(DomainError):
            vw_params(d_poi)

    def test_arc_identity_and_monotone_leg(self):
        legs = []
        for d in np.linspace(0.5, 11.0, 22):
            p = vw_params(float(d))
            assert p.theta * p.leg == pytest.approx(5 + 0.3 * d, rel=1e-12)
            legs.append(p.leg)
        assert all(b > a for a, b in zip(legs, legs[1:]))

    def test_view_distance_scale(self):
        ref = vw_params(3.0)
        scaled = vw_params(6.0, scale=2.0)
        assert scaled.theta == pytest.approx(ref.theta, rel=1e-12)
        assert scaled.leg == pytest.approx(2 * ref.leg, rel=1e-12)
        assert scaled.vertex_dist == 6.0


class TestFootprint:
    def test_right_angle(self):
        w, h = footprint(WedgeParams(math.pi / 2, math.sqrt(2), 1e-12))
        assert w == pytest.approx(1.0, abs=1e-9)
        assert h == pytest.approx(2.0, abs=1e-12)

    def test_vanilla_near_poi(self):
        w, h = footprint(WedgeParams(0.80350, 6.5962, 1.0))
        assert w == pytest.approx(5.073, abs=5e-3)
        assert h == pytest.approx(5.162, abs=5e-3)

    def test_boundary_limit(self):
        theta, leg, eps = 1.0, 5.0, 1e-6
        w, _ = footprint(WedgeParams(theta, leg, leg * math.cos(theta / 2) - eps))
        assert w == pytest.approx(eps, rel=1e-4)

    def test_rejects_non_params(self):
        with pytest.raises(DomainError):
            footprint((1.0, 2.0, 0.5))

    def test_positive_over_grid(self, grid):
        for cell in enumerate_grid(grid).valid_cells():
            w, h = footprint(cell.params)
            assert w > 0 and h > 0
            assert math.isfinite(w) and math.isfinite(h)


class TestDomain:
    def test_examples(self):
        assert not is_valid(math.radians(150), 2, 1)
        assert is_valid(math.radians(10), 12, 11)
        assert not is_valid(math.pi, 5, 1)
        assert not is_valid(0.0, 5, 1)

    def test_total_function(self):
        assert not is_valid(None, 1, 1)
        assert not is_valid(float("nan"), 1, 1)
        assert not is_valid(1.0, -1, 0.5)

    def test_boundary_excluded(self):
        theta, leg = 1.0, 4.0
        assert not is_valid(theta, leg, leg * math.cos(theta / 2))
        assert not is_valid(theta, leg, 0.0)

    def test_homogeneous_in_lengths(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            theta = rng.uniform(0.01, math.pi - 0.01)
            leg, dist = rng.uniform(0.1, 12, size=2)
            k = rng.uniform(0.1, 10)
            assert is_valid(theta, leg, dist) == is_valid(theta, k * leg, k * dist)

    def test_valid_mask_agrees(self, grid):
        cells = enumerate_grid(grid).cells
        x = np.array([(c.theta, c.leg, c.dist) for c in cells])
        np.testing.assert_array_equal(valid_mask(x), [c.valid for c in cells])

    def test_params_validate(self):
        with pytest.raises(DomainError):
            WedgeParams(math.radians(150), 2, 1)
        with pytest.raises(DomainError):
            WedgeParams(1.0, float("inf"), 1.0)


class TestGrid:
    def test_published_grid_totals(self, grid):
        result = enumerate_grid(grid)
        assert result.total == 968 == grid.size
        assert result.valid_count == 384

    def test_published_count_discrepancy_logged(self, grid, log_messages):
        diff = compare_with_published(enumerate_grid(grid))
        assert diff == 384 - PUBLISHED_VALID_COUNT
        assert any(level == "WARNING" for level, _ in log_messages)

    def test_single_cell(self):
        result = enumerate_grid(ParamGrid.from_degrees([90], [2], [1]))
        assert result.total == 1
        assert result.cells[0].valid

    def test_theta_major_order(self):
        g = ParamGrid.from_degrees([30, 60], [4, 5], [1, 2])
        cells = enumerate_grid(g).cells
        assert [(round(math.degrees(c.theta)), c.leg, c.dist) for c in cells[:3]] == [
            (30, 4.0, 1.0),
            (30, 4.0, 2.0),
            (30, 5.0, 1.0),
        ]

    @pytest.mark.parametrize(
        "thetas, legs, dists",
        [([], [1], [1]), ([10, 10], [1], [1]), ([10], [2, 1], [1]), ([10], [1], [-1])],
    )
    def test_grid_invariants(self, thetas, legs, dists):
        with pytest.raises(DomainError):
            ParamGrid.from_degrees(thetas, legs, dists)

    def test_fixture_document(self):
        assert load_grid(FIXTURES / "published_grid.json") == published_grid()

    def test_document_roundtrip(self, tmp_path):
        path = tmp_path / "grid.json"
        path.write_text(dump_grid(published_grid()))
        loaded = load_grid(path)
        np.testing.assert_allclose(loaded.thetas, published_grid().thetas, rtol=1e-12)
        assert loaded.legs == published_grid().legs

    def test_bad_document(self, tmp_path):
        path = tmp_path / "grid.json"
        path.write_text('{"theta_deg": [10], "leg_m": "x"}')
        with pytest.raises(ParseError):
            load_grid(path)


class TestPolygons:
    def test_onscreen_bounds_match_footprint(self):
        for d in (1.0, 4.0, 9.0):
            p = vw_params(d)
            minx, miny, _, maxy = onscreen_part(p).bounds
            w, h = footprint(p)
            assert -minx == pytest.approx(w, rel=1e-9)
            assert maxy - miny == pytest.approx(h, rel=1e-9)

    def test_parts_partition_the_wedge(self):
        p = WedgeParams(1.2, 6.0, 2.5)
        whole = wedge_polygon(p)
        assert whole.area == pytest.approx(0.5 * p.leg**2 * math.sin(p.theta), rel=1e-12)
        assert onscreen_part(p).area + offscreen_part(p).area == pytest.approx(whole.area, rel=1e-9)
        assert offscreen_part(p).bounds[2] == pytest.approx(p.vertex_dist)


class TestViewing:
    def test_angle(self):
        assert viewing_angle_deg(10.0) == pytest.approx(45.0)
        assert viewing_angle_deg(0.0) == 0.0

    def test_bands(self):
        assert distance_band(2.0) == "near"
        assert distance_band(5.0) == "medium"
        assert distance_band(8.0) == "far"
        assert distance_band(4.0, view_distance=20.0) == "near"

    def test_drawable_area(self):
        assert DrawableArea(14, 14).scaled(0.5) == DrawableArea(7, 7)
        with pytest.raises(DomainError):
            DrawableArea(0, 14)
