import math

import numpy as np
import pytest

from core.domain.errors import DegenerateSampleError, DomainError, InsufficientDataError
from core.domain.geometry import WedgeParams
from core.domain.trials import (
    CognitiveFactors,
    TrialRecord,
    chi2_threshold,
    extract_all,
    extract_factors,
    group_by_params,
    hotelling_filter,
    mahalanobis_sq,
)

P = WedgeParams(math.radians(50), 6.0, 3.0)
Q = WedgeParams(math.radians(90), 8.0, 2.0)


def _trials(points, params=P):
    return [TrialRecord(f"P{i:02d}", params, float(x), float(y)) for i, (x, y) in enumerate(points)]


def _circle_with_far_point():
    angles = np.linspace(0, 2 * np.pi, 100, endpoint=False)
    pts = [(math.cos(a), math.sin(a)) for a in angles]
    return pts + [(50.0, 50.0)]


class TestHotellingFilter:
    def test_threshold(self):
        assert chi2_threshold(0.05) == pytest.approx(5.9915, abs=1e-4)

    def test_far_point_removed(self):
        pts = _circle_with_far_point()
        kept, removed = hotelling_filter(pts)
        assert removed == [(50.0, 50.0)]
        assert kept == pts[:-1]

    def test_statistic_matches_direct_formula(self):
        pts = np.array(_circle_with_far_point())
        mu = pts.mean(axis=0)
        inv = np.linalg.inv(np.cov(pts.T, ddof=1))
        direct = [(p - mu) @ inv @ (p - mu) for p in pts]
        np.testing.assert_allclose(mahalanobis_sq(pts), direct, rtol=1e-10)

    def test_symmetric_clusters_kept(self):
        pts = [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0), (-1.1, 0.9), (1.1, -0.9)]
        kept, removed = hotelling_filter(pts)
        assert removed == []
        assert kept == pts

    def test_partition(self):
        rng = np.random.default_rng(3)
        pts = [tuple(p) for p in rng.normal(size=(40, 2))] + [(20.0, -20.0)]
        kept, removed = hotelling_filter(pts)
        assert sorted(kept + removed) == sorted(pts)
        assert (20.0, -20.0) in removed

    def test_identical_points(self):
        with pytest.raises(DegenerateSampleError):
            hotelling_filter([(1.0, 2.0)] * 5)

    def test_collinear_points(self):
        with pytest.raises(DegenerateSampleError):
            hotelling_filter([(t, 2 * t) for t in range(6)])

    def test_too_few_points(self):
        with pytest.raises(InsufficientDataError):
            hotelling_filter([(0.0, 0.0), (1.0, 1.0)])


class TestExtractFactors:
    def test_point_mass_on_vertex(self):
        f = extract_factors(_trials([(P.vertex_dist, 0.0)] * 4))
        assert (f.bias_b, f.sigma_x, f.sigma_y) == (0.0, 0.0, 0.0)
        assert f.n_used == 4 and f.n_removed == 0

    def test_lateral_zero_spread(self):
        d = P.vertex_dist
        f = extract_factors(_trials([(d + 1, 0), (d - 1, 0), (d, 0)]))
        assert f.bias_b == pytest.approx(0.0, abs=1e-12)
        assert f.sigma_x == pytest.approx(1.0)
        assert f.sigma_y == 0.0

    def test_depth_zero_spread(self):
        d = P.vertex_dist
        f = extract_factors(_trials([(d + 2, 1), (d + 2, -1), (d + 2, 0)]))
        assert f.bias_b == pytest.approx(2.0)
        assert f.sigma_x == 0.0
        assert f.sigma_y == pytest.approx(1.0)

    def test_outlier_excluded_from_factors(self):
        rng = np.random.default_rng(11)
        pts = [(P.vertex_dist + x, y) for x, y in rng.normal(scale=0.5, size=(30, 2))]
        clean = extract_factors(_trials(pts))
        dirty = extract_factors(_trials(pts + [(P.vertex_dist + 40, 40)]))
        assert dirty.n_removed >= 1
        assert dirty.bias_b == pytest.approx(clean.bias_b, abs=0.2)

    def test_translation_equivariant(self):
        rng = np.random.default_rng(5)
        pts = rng.normal(loc=(3.0, 0.0), scale=(0.7, 0.4), size=(25, 2))
        base = extract_factors(_trials(pts))
        moved = extract_factors(_trials(pts + np.array([1.25, 0.0])))
        assert moved.bias_b == pytest.approx(base.bias_b + 1.25, abs=1e-12)
        assert moved.sigma_x == pytest.approx(base.sigma_x, abs=1e-12)
        assert moved.sigma_y == pytest.approx(base.sigma_y, abs=1e-12)

    def test_reflection_invariant(self):
        rng = np.random.default_rng(6)
        pts = rng.normal(loc=(3.0, 0.2), scale=(0.7, 0.4), size=(25, 2))
        base = extract_factors(_trials(pts))
        flipped = extract_factors(_trials(pts * np.array([1.0, -1.0])))
        assert flipped.bias_b == pytest.approx(base.bias_b, abs=1e-12)
        assert flipped.sigma_y == pytest.approx(base.sigma_y, abs=1e-12)

    def test_convergence_rate(self):
        rng = np.random.default_rng(12)
        b_star, sx, sy = -0.4, 0.8, 0.5

        def error(n):
            pts = np.column_stack(
                [P.vertex_dist + b_star + sx * rng.standard_normal(n), sy * rng.standard_normal(n)]
            )
            return abs(extract_factors(_trials(pts), alpha=1e-12).bias_b - b_star)

        assert error(10_000) < 3 * sx / math.sqrt(10_000) * 1.5
        assert np.mean([error(10_000) for _ in range(5)]) < np.mean([error(100) for _ in range(5)])

    def test_too_few_trials(self):
        with pytest.raises(InsufficientDataError):
            extract_factors(_trials([(1.0, 0.0), (2.0, 0.0)]))

    def test_single_condition_only(self):
        mixed = _trials([(1, 0), (2, 1)]) + _trials([(3, 0)], params=Q)
        with pytest.raises(DomainError):
            extract_factors(mixed)


class TestBatch:
    def test_group_order(self):
        trials = _trials([(1, 0)], Q) + _trials([(2, 0)], P) + _trials([(3, 0)], Q)
        groups = group_by_params(trials)
        assert list(groups) == [Q, P]
        assert [t.estimate_x for t in groups[Q]] == [1.0, 3.0]

    def test_small_conditions_skipped(self, log_messages):
        rng = np.random.default_rng(2)
        good = _trials(rng.normal(loc=(3, 0), size=(10, 2)), P)
        short = _trials([(1, 0), (2, 1)], Q)
        factors = extract_all(good + short, workers=2)
        assert [f.params for f in factors] == [P]
        assert any(level == "WARNING" for level, _ in log_messages)


class TestValues:
    def test_factors_invariants(self):
        with pytest.raises(DomainError):
            CognitiveFactors(P, 0.0, -0.1, 0.1, 5)
        with pytest.raises(DomainError):
            CognitiveFactors(P, 0.0, 0.1, 0.1, 1)

    def test_trial_finite(self):
        with pytest.raises(DomainError):
            TrialRecord("P01", P, float("nan"), 0.0)


def test_planted_outliers_recall():
    angles = np.linspace(0, 2 * np.pi, 100, endpoint=False)
    inliers = [(math.cos(a), math.sin(a)) for a in angles]
    planted = [(40.0, 0.0), (-40.0, 0.0), (0.0, 40.0), (0.0, -40.0)]
    kept, removed = hotelling_filter(inliers + planted)
    assert sorted(removed) == sorted(planted)
    assert kept == inliers
