"""Tests for the linear impact fit and the participation curve."""

import math

import numpy as np
import pytest
from scipy import stats

from tests.unit.test_aggregation import episode
from tick2impact.infrastructure.analytics.aggregation import bin_statistics
from tick2impact.infrastructure.analytics.regression import (
    estimate_impact,
    estimate_impact_price,
    fit_linear,
    lambda_error,
    participation_curve,
)
from tick2impact.shared.exceptions import DegenerateDesignError, InsufficientDataError

GRID = np.arange(1, 21) * 0.25


def normal_equations(v: np.ndarray, y: np.ndarray, w: np.ndarray) -> tuple[float, float]:
    design = np.column_stack([np.ones_like(v), v]) * np.sqrt(w)[:, None]
    (mu, lam), *_ = np.linalg.lstsq(design, y * np.sqrt(w), rcond=None)
    return float(mu), float(lam)


def noisy_datasets(seed: int, count: int = 100) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Random subsets of the volume grid with a noisy linear response and bin counts."""
    rng = np.random.default_rng(seed)
    datasets = []
    for _ in range(count):
        size = int(rng.integers(4, len(GRID) + 1))
        v = np.sort(rng.choice(GRID, size=size, replace=False))
        y = rng.normal(0.3, 0.2) + rng.normal(0.5, 0.2) * v + rng.normal(0, 0.3, size)
        datasets.append((v, y, rng.integers(1, 200, size)))
    return datasets


class TestFitLinear:
    def test_exact_line(self) -> None:
        fit = fit_linear([(v, 0.1 + 0.5 * v, 40) for v in (0.5, 1.0, 1.5, 2.0)])
        assert fit.mu == pytest.approx(0.1)
        assert fit.lam == pytest.approx(0.5)
        assert fit.r2 == pytest.approx(1.0)
        assert fit.p_value == pytest.approx(0.0, abs=1e-12)
        assert fit.lambda_err == pytest.approx(0.0, abs=1e-9)
        assert fit.n_points == 4

    def test_constant_response(self) -> None:
        fit = fit_linear([(v, 0.25, 10) for v in (1.0, 2.0, 3.0)])
        assert (fit.mu, fit.lam, fit.r2, fit.p_value) == (0.25, 0.0, 1.0, 1.0)

    def test_too_few_points(self) -> None:
        with pytest.raises(InsufficientDataError):
            fit_linear([(1.0, 0.5, 10), (2.0, 1.0, 10)])

    def test_single_volume(self) -> None:
        with pytest.raises(DegenerateDesignError):
            fit_linear([(1.0, 0.5, 10), (1.0, 0.7, 10), (1.0, 0.2, 10)])

    def test_from_bins(self) -> None:
        bins = [bin_statistics(v, 10, [episode(0.5 * v)] * 3) for v in (1.0, 2.0, 3.0)]
        fit = fit_linear(bins)
        assert fit.lam == pytest.approx(0.5)
        assert fit.mu == pytest.approx(0.0, abs=1e-12)

    def test_weights_change_the_fit(self) -> None:
        points = [(1.0, 0.0, 1), (2.0, 1.0, 1), (3.0, 0.0, 100)]
        assert fit_linear(points).lam != pytest.approx(fit_linear(points, weighted=True).lam)
        assert fit_linear(points, weighted=True).weighted

    @pytest.mark.parametrize("weighted", [False, True])
    def test_matches_normal_equations(self, weighted: bool) -> None:
        rng = np.random.default_rng(11)
        for _ in range(100):
            size = int(rng.integers(3, len(GRID) + 1))
            v = np.sort(rng.choice(GRID, size=size, replace=False))
            y = rng.normal(0.3, 0.2) + rng.normal(0.5, 0.2) * v + rng.normal(0, 0.3, size)
            n = rng.integers(1, 200, size)
            w = n.astype(float) if weighted else np.ones(size)

            fit = fit_linear(list(zip(v, y, n, strict=True)), weighted=weighted)
            mu, lam = normal_equations(v, y, w)
            assert fit.mu == pytest.approx(mu, rel=1e-10, abs=1e-12)
            assert fit.lam == pytest.approx(lam, rel=1e-10, abs=1e-12)

    def test_matches_scipy_linregress(self) -> None:
        rng = np.random.default_rng(5)
        for _ in range(50):
            v = GRID[: int(rng.integers(4, len(GRID) + 1))]
            y = 0.2 + 0.4 * v + rng.normal(0, 0.5, v.size)
            fit = fit_linear([(a, b, 30) for a, b in zip(v, y, strict=True)])
            reference = stats.linregress(v, y)
            assert fit.lam == pytest.approx(reference.slope, rel=1e-9)
            assert fit.r2 == pytest.approx(reference.rvalue**2, rel=1e-9)
            assert fit.slope_stderr == pytest.approx(reference.stderr, rel=1e-9)
            assert fit.p_value == pytest.approx(reference.pvalue, rel=1e-8, abs=1e-300)

    @pytest.mark.parametrize("weighted", [False, True])
    def test_residuals_orthogonal_to_design(self, weighted: bool) -> None:
        for v, y, n in noisy_datasets(seed=21):
            w = n.astype(float) if weighted else np.ones(v.size)
            fit = fit_linear(list(zip(v, y, n, strict=True)), weighted=weighted)
            residuals = y - (fit.mu + fit.lam * v)
            scale = float(np.abs(w * y).sum() * v.max())
            assert abs(float((w * residuals).sum())) <= 1e-9 * scale
            assert abs(float((w * residuals * v).sum())) <= 1e-9 * scale

    @pytest.mark.parametrize("weighted", [False, True])
    def test_r2_is_explained_share(self, weighted: bool) -> None:
        for v, y, n in noisy_datasets(seed=22):
            w = n.astype(float) if weighted else np.ones(v.size)
            fit = fit_linear(list(zip(v, y, n, strict=True)), weighted=weighted)
            residuals = y - (fit.mu + fit.lam * v)
            y_bar = float((w * y).sum() / w.sum())
            sse = float((w * residuals**2).sum())
            sst = float((w * (y - y_bar) ** 2).sum())
            assert fit.r2 == pytest.approx(1 - sse / sst, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("weighted", [False, True])
    def test_p_value_from_correlation(self, weighted: bool) -> None:
        for v, y, n in noisy_datasets(seed=23):
            w = n.astype(float) if weighted else np.ones(v.size)
            fit = fit_linear(list(zip(v, y, n, strict=True)), weighted=weighted)
            dv = v - (w * v).sum() / w.sum()
            dy = y - (w * y).sum() / w.sum()
            r = (w * dv * dy).sum() / math.sqrt((w * dv * dv).sum() * (w * dy * dy).sum())
            dof = v.size - 2
            t = r * math.sqrt(dof / (1 - r * r))
            expected = 2 * stats.t.sf(abs(t), dof)
            assert fit.p_value == pytest.approx(expected, rel=1e-7, abs=1e-300)


class TestEstimator:
    def test_half_tick_per_touch(self) -> None:
        assert estimate_impact(2.0) == 1.0
        assert estimate_impact_price(2.0, 0.01) == pytest.approx(0.01)

    @pytest.mark.parametrize(("lam", "err"), [(0.5, 0.0), (0.64, 28.0), (1.10, 120.0), (0.25, 50.0)])
    def test_lambda_error(self, lam: float, err: float) -> None:
        assert lambda_error(lam) == pytest.approx(err)

    @pytest.mark.parametrize(
        ("lam", "published"),
        [(0.64, 28.0), (1.10, 120.0), (0.52, 4.0), (0.50, 1.9), (0.46, 7.4), (0.37, 26.9)],
    )
    def test_two_decimal_slopes(self, lam: float, published: float) -> None:
        # slopes rounded to two decimals move the error by at most 2.5 points
        assert abs(lambda_error(lam) - published) <= 2.5


class TestParticipationCurve:
    def test_asymptote_at_largest_volume(self) -> None:
        bins = [
            bin_statistics(2.0, 20, [episode(0, target=20, total=40)]),
            bin_statistics(1.0, 10, [episode(0, target=10, total=10)]),
        ]
        curve = participation_curve(bins)
        assert curve.points == ((1.0, 1.0), (2.0, 0.5))
        assert curve.asymptote == 0.5
        assert curve.asymptote_v == 2.0

    def test_empty(self) -> None:
        curve = participation_curve([])
        assert curve.points == ()
        assert math.isnan(curve.asymptote)
