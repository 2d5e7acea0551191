import math

import numpy as np
import pytest

from core.domain.cost import CostContext, cost_f
from core.domain.errors import DomainError, InfeasibleError
from core.domain.geometry import DrawableArea, WedgeParams, is_valid, vw_params
from core.domain.optimize import (
    ConstraintSet,
    constraint_jacobian,
    constraint_values,
    feasible_start,
    grid_landscape,
    optimize_all,
    optimize_bow,
    optimize_one,
    optimize_uow,
    penalized_objective,
    penalty,
    penalty_grad,
    project,
    vw_result,
)
from tests.conftest import perfect_model, two_basin_model

TIGHT = ConstraintSet(f_tol=1e-12)


def _monotone(trace) -> bool:
    return all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))


class TestConstraints:
    def test_values(self):
        g = constraint_values((math.pi / 2, 10.0, 2.0), DrawableArea(5.0, 8.0))
        assert g[0] == pytest.approx(10 * math.cos(math.pi / 4) - 2 - 5)
        assert g[1] == pytest.approx(2 * 10 * math.sin(math.pi / 4) - 8)

    def test_jacobian_matches_differences(self):
        x = np.array([1.1, 7.0, 3.0])
        area = DrawableArea(4.0, 4.0)
        h = 1e-6
        num = np.column_stack(
            [
                (constraint_values(x + h * e, area) - constraint_values(x - h * e, area)) / (2 * h)
                for e in np.eye(3)
            ]
        )
        np.testing.assert_allclose(constraint_jacobian(x), num, atol=1e-7)

    def test_penalty_zero_inside(self):
        cons = ConstraintSet()
        x = (0.8, 6.0, 2.0)
        assert penalty(x, cons, 1e6) == 0.0
        assert not np.any(penalty_grad(x, cons, 1e6))

    def test_penalty_grad(self):
        cons = ConstraintSet(drawable=DrawableArea(2.0, 2.0))
        x = np.array([1.2, 8.0, 3.0])
        h = 1e-6
        num = [
            (penalty(x + h * e, cons, 10.0) - penalty(x - h * e, cons, 10.0)) / (2 * h) for e in np.eye(3)
        ]
        np.testing.assert_allclose(penalty_grad(x, cons, 10.0), num, rtol=1e-6)

    def test_schedule(self):
        cons = ConstraintSet()
        assert cons.stage_weights() == [10.0**k for k in range(8)]
        assert cons.mu_max == pytest.approx(1e7)

    def test_leg_cap(self):
        assert ConstraintSet(leg_max=30.0).leg_upper(5.0) == 30.0
        assert ConstraintSet().leg_upper(0.0) == pytest.approx(2 * math.hypot(14, 7))

    def test_invalid_schedule(self):
        with pytest.raises(DomainError):
            ConstraintSet(growth=1.0)
        with pytest.raises(DomainError):
            ConstraintSet(mu0=0.0)


class TestProjection:
    def test_uow_pins_dist(self):
        x = project((0.5, 1.0, 9.0), "UOW", ConstraintSet(), d_poi=4.0)
        assert x[2] == 4.0
        assert is_valid(*x)

    def test_bow_clips_dist(self):
        x = project((3.5, 5.0, 9.0), "BOW", ConstraintSet(), d_poi=4.0)
        assert 0 < x[0] < math.pi
        assert x[2] < x[1] * math.cos(x[0] / 2)

    def test_unreachable_poi(self):
        with pytest.raises(InfeasibleError):
            project((0.5, 5.0, 4.0), "UOW", ConstraintSet(leg_max=3.0), d_poi=4.0)

    def test_feasible_start_shrinks(self):
        cons = ConstraintSet(drawable=DrawableArea(3.0, 3.0))
        seed = vw_params(5.0)
        assert np.any(constraint_values(seed.as_tuple(), cons.drawable) > 0)
        x = feasible_start(seed.as_tuple(), "UOW", cons, 5.0)
        assert np.all(constraint_values(x, cons.drawable) <= cons.feasibility_tol)
        assert x[2] == 5.0


class TestUow:
    def test_bowl_minimum(self, bowl):
        ctx = CostContext(bowl, d_poi=2.0)
        result = optimize_uow(ctx, TIGHT)
        assert result.params.theta == pytest.approx(0.6, abs=1e-3)
        assert result.params.leg == pytest.approx(4.0, abs=1e-3)
        assert result.params.vertex_dist == 2.0
        assert result.pure_cost == pytest.approx(0.0, abs=1e-4)
        assert result.converged

    def test_not_worse_than_seed(self, field_model):
        cons = ConstraintSet()
        for d in (1.0, 4.0, 9.0):
            ctx = CostContext(field_model, d_poi=d)
            assert optimize_uow(ctx, cons).objective <= vw_result(ctx, cons).objective

    def test_stagewise_monotone(self, field_model):
        result = optimize_uow(CostContext(field_model, d_poi=3.0), ConstraintSet())
        assert result.stage_offsets[0] == 0
        assert all(_monotone(t) for t in result.stage_traces())

    def test_beats_dense_grid(self, field_model):
        cons = ConstraintSet()
        for d in range(1, 12):
            ctx = CostContext(field_model, d_poi=float(d))
            land = grid_landscape(ctx, cons, 200)
            assert optimize_uow(ctx, cons).objective - land.min_objective <= 1e-4

    def test_non_positive_distance(self, field_model):
        with pytest.raises(InfeasibleError):
            optimize_uow(CostContext(field_model, d_poi=0.0), ConstraintSet())

    def test_grid_start_leaves_local_basin(self):
        ctx = CostContext(two_basin_model(), d_poi=2.0)
        trapped = WedgeParams(2.0, 4.0, 2.0)
        local = optimize_uow(ctx, ConstraintSet(seed_resolution=0), seed=trapped)
        found = optimize_uow(ctx, ConstraintSet(), seed=trapped)
        assert local.params.theta > 1.5
        assert found.params.theta == pytest.approx(0.6, abs=1e-2)
        assert found.objective < local.objective - 0.1
        land = grid_landscape(ctx, ConstraintSet(), 200)
        assert found.objective <= land.min_objective + 1e-4

    def test_seed_resolution_checked(self):
        with pytest.raises(DomainError):
            ConstraintSet(seed_resolution=1)

    def test_small_drawable_area(self, field_model):
        cons = ConstraintSet(drawable=DrawableArea(3.0, 3.0))
        result = optimize_uow(CostContext(field_model, d_poi=5.0), cons)
        assert result.feasible(tol=1e-4)
        assert result.objective == pytest.approx(
            penalized_objective(CostContext(field_model, d_poi=5.0), cons, result.params)
        )


class TestBow:
    def test_ordering(self, field_model):
        cons = ConstraintSet()
        ctx = CostContext(field_model, d_poi=1.0)
        for t in optimize_all(ctx, [float(d) for d in range(1, 12)], cons):
            assert t.bow.objective <= t.uow.objective + 1e-9
            assert t.uow.objective <= t.vw.objective + 1e-9

    def test_far_vertex_beyond_poi(self, field_model):
        # the field biases estimates short of the vertex, so the vertex moves out
        ctx = CostContext(field_model, d_poi=1.0)
        triples = optimize_all(ctx, [10.0, 11.0], ConstraintSet())
        assert all(t.e2 for t in triples)

    def test_vertex_free(self, bowl):
        ctx = CostContext(bowl, d_poi=2.0)
        uow = optimize_uow(ctx, TIGHT)
        bow = optimize_bow(ctx, TIGHT, uow=uow)
        assert bow.mode == "BOW"
        assert bow.objective <= uow.objective
        assert is_valid(*bow.params.as_tuple())

    def test_vw_scored_without_iterations(self, field_model):
        ctx = CostContext(field_model, d_poi=3.0)
        vw = vw_result(ctx, ConstraintSet())
        assert vw.iterations == 0
        assert vw.params == vw_params(3.0)
        assert vw.pure_cost == pytest.approx(cost_f(ctx, *vw_params(3.0).as_tuple()))


class TestBatch:
    def test_every_distance(self, field_model):
        ctx = CostContext(field_model, d_poi=1.0)
        triples = optimize_all(ctx, [1.0, 2.0, 3.0], ConstraintSet(), workers=2)
        assert [t.d_poi for t in triples] == [1.0, 2.0, 3.0]
        assert all(r.d_poi == t.d_poi for t in triples for r in t.results())
        assert [r.mode for r in triples[0].results()] == ["VW", "UOW", "BOW"]

    def test_parallel_matches_serial(self, field_model):
        ctx = CostContext(field_model, d_poi=1.0)
        a = optimize_all(ctx, [2.0, 7.0], ConstraintSet(), workers=1)
        b = optimize_all(ctx, [2.0, 7.0], ConstraintSet(), workers=2)
        for x, y in zip(a, b):
            assert x.bow.params == y.bow.params

    def test_error_labelled(self, field_model):
        ctx = CostContext(field_model, d_poi=1.0)
        with pytest.raises(InfeasibleError, match="d_poi=2"):
            optimize_all(ctx, [2.0], ConstraintSet(leg_max=1.5))

    def test_effect_flags(self, field_model):
        t = optimize_one(CostContext(field_model, d_poi=4.0), ConstraintSet())
        assert t.e1 == (t.uow.params.theta > t.vw.params.theta)
        assert t.e2 == (t.bow.params.vertex_dist > 4.0)


class TestLandscape:
    def test_bowl_argmin(self, bowl):
        ctx = CostContext(bowl, d_poi=2.0)
        land = grid_landscape(ctx, ConstraintSet(), 100, theta_range=(0.1, 1.1), leg_range=(2.5, 5.5))
        p = land.argmin_params
        assert p.theta == pytest.approx(0.6, abs=0.011)
        assert p.leg == pytest.approx(4.0, abs=0.031)
        assert p.vertex_dist == 2.0

    def test_infeasible_cells_are_nan(self, field_model):
        land = grid_landscape(CostContext(field_model, d_poi=5.0), ConstraintSet(), 40)
        assert np.all(np.isnan(land.objective[~land.feasible]))
        assert np.all(np.isfinite(land.objective[land.feasible]))
        assert len(land.rows()) == 1600
        t, leg, _, ok = land.rows()[0]
        assert (t, leg) == (float(land.thetas[0]), float(land.legs[0]))
        assert not ok

    def test_nothing_feasible(self, field_model):
        land = grid_landscape(
            CostContext(field_model, d_poi=5.0), ConstraintSet(), 10, leg_range=(0.1, 1.0)
        )
        assert land.argmin is None
        assert land.min_objective is None

    def test_resolution(self, field_model):
        with pytest.raises(DomainError):
            grid_landscape(CostContext(field_model, d_poi=5.0), ConstraintSet(), 1)

    def test_single_feasible_cell(self, field_model):
        ctx = CostContext(field_model, d_poi=3.0)
        land = grid_landscape(ctx, ConstraintSet(), 2, theta_range=(0.5, 2.5), leg_range=(2.0, 6.0))
        assert int(land.feasible.sum()) == 1
        assert land.argmin == (0, 1)
        assert land.min_objective == pytest.approx(cost_f(ctx, 0.5, 6.0, 3.0))


class TestPerfectModel:
    D_POI = 4.0

    @pytest.fixture
    def ctx(self):
        return CostContext(perfect_model(self.D_POI), d_poi=self.D_POI)

    def test_every_wedge_keeps_the_seed(self, ctx):
        t = optimize_one(ctx, ConstraintSet())
        seed = vw_params(self.D_POI)
        for r in t.results():
            assert r.params.as_tuple() == pytest.approx(seed.as_tuple(), abs=1e-12)
            assert r.objective == pytest.approx(0.0, abs=1e-12)
            assert r.iterations == 0
            assert r.converged

    def test_flat_landscape(self, ctx):
        land = grid_landscape(ctx, ConstraintSet(), 50)
        assert np.nanmax(land.objective) == pytest.approx(0.0, abs=1e-12)
        first = tuple(int(v) for v in np.argwhere(land.feasible)[0])
        assert land.argmin == first


def test_result_params_are_wedge_params(field_model):
    result = optimize_uow(CostContext(field_model, d_poi=2.0), ConstraintSet())
    assert isinstance(result.params, WedgeParams)
