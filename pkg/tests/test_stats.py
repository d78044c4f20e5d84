import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaps.refdist import RescaleConstants
from gaps.stats import (
    FitResult,
    Histogram,
    fit_loglinear,
    fit_loglog,
    histogram,
    ks_distance,
    ks_two_sample,
    rescale_xmin,
    rescale_ymin,
    rescale_zmax,
)


# --------------------------------------------------------------------------
# histogram


def test_histogram_hand_example():
    h = histogram([0.1, 0.2, 0.2, 0.7], edges=[0.0, 0.5, 1.0])
    assert np.array_equal(h.counts, [3, 1])
    assert h.n_samples == 4
    assert h.n_underflow == 0 and h.n_overflow == 0
    assert np.allclose(h.density, [1.5, 0.5])
    assert np.allclose(h.widths, [0.5, 0.5])
    assert np.allclose(h.centers, [0.25, 0.75])


def test_histogram_inner_edges_are_half_open():
    h = histogram([0.5], edges=[0.0, 0.5, 1.0])
    assert np.array_equal(h.counts, [0, 1])


def test_histogram_top_edge_is_exclusive():
    h = histogram([1.0, 0.99], edges=[0.0, 0.5, 1.0])
    assert np.array_equal(h.counts, [0, 1])
    assert h.n_overflow == 1
    assert h.n_samples == 1


def test_histogram_underflow_is_counted_not_binned():
    h = histogram([-0.3, 0.1], edges=[0.0, 1.0])
    assert h.n_underflow == 1
    assert np.array_equal(h.counts, [1])


def test_histogram_density_integrates_to_one():
    rng = np.random.default_rng(5)
    samples = rng.random(1000)
    h = histogram(samples, edges=np.linspace(0.0, 1.0, 14))
    assert abs(float(np.sum(h.density * h.widths)) - 1.0) < 1e-12


def test_histogram_rejects_bad_edges():
    with pytest.raises(ValueError):
        histogram([0.5], edges=[0.0])
    with pytest.raises(ValueError):
        histogram([0.5], edges=[0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        histogram([0.5], edges=[0.0, np.inf])


def test_histogram_accepts_empty_input():
    h = histogram([], edges=[0.0, 1.0])
    assert h.n_samples == 0
    assert np.array_equal(h.counts, [0])
    assert np.all(h.density == 0.0)


@settings(max_examples=40, deadline=None)
@given(
    samples=st.lists(
        st.floats(min_value=-2.0, max_value=3.0, allow_nan=False), min_size=1, max_size=60),
    n_bins=st.integers(min_value=1, max_value=9),
)
def test_histogram_accounts_for_every_sample(samples, n_bins):
    edges = np.linspace(0.0, 1.0, n_bins + 1)
    h = histogram(samples, edges)
    assert int(h.counts.sum()) == h.n_samples
    assert h.n_samples + h.n_underflow + h.n_overflow == len(samples)
    if h.n_samples:
        assert abs(float(np.sum(h.density * h.widths)) - 1.0) < 1e-9
    else:
        assert np.all(h.density == 0.0)


# --------------------------------------------------------------------------
# KS distances


def test_ks_distance_hand_case():
    # Single point at the uniform median: F_emp jumps 0 -> 1 at 0.5.
    d = ks_distance([0.5], cdf=lambda x: np.clip(x, 0.0, 1.0))
    assert d == pytest.approx(0.5, abs=1e-15)


def test_ks_distance_perfect_grid_is_small():
    n = 1000
    samples = (np.arange(n) + 0.5) / n
    assert ks_distance(samples, cdf=lambda x: np.clip(x, 0.0, 1.0)) <= 0.5 / n + 1e-12


def test_ks_two_sample_extremes():
    a = np.array([0.1, 0.2, 0.3])
    assert ks_two_sample(a, a) == 0.0
    assert ks_two_sample(a, a + 10.0) == 1.0


def test_ks_two_sample_hand_value():
    # F_a jumps to 1 at 1.0; F_b is 0 until 2.0. Max gap is 1 on [1, 2) ...
    assert ks_two_sample([1.0], [2.0]) == 1.0
    # ... interleaved case: gap 0.5 after the first point.
    assert ks_two_sample([1.0, 3.0], [2.0, 4.0]) == pytest.approx(0.5)


def test_ks_two_sample_close_distributions():
    rng = np.random.default_rng(11)
    a = rng.random(4000)
    b = rng.random(4000)
    assert ks_two_sample(a, b) < 0.05


# --------------------------------------------------------------------------
# line fits


def test_fit_loglog_recovers_power_law():
    x = np.array([2.0, 4.0, 8.0, 16.0, 32.0])
    y = 3.0 * x**-0.5
    fit = fit_loglog(x, y)
    assert isinstance(fit, FitResult)
    assert fit.slope == pytest.approx(-0.5, abs=1e-12)
    assert fit.intercept == pytest.approx(np.log(3.0), abs=1e-12)
    assert fit.residual_rms < 1e-12
    assert fit.n_points == 5


def test_fit_loglog_rejects_nonpositive_data():
    with pytest.raises(ValueError):
        fit_loglog([1.0, 2.0], [1.0, -1.0])
    with pytest.raises(ValueError):
        fit_loglog([0.0, 2.0], [1.0, 1.0])


def test_fit_loglinear_recovers_log_law():
    x = np.array([2.0, 4.0, 8.0, 16.0])
    y = 1.25 * np.log(x) + 0.3
    fit = fit_loglinear(x, y)
    assert fit.slope == pytest.approx(1.25, abs=1e-12)
    assert fit.intercept == pytest.approx(0.3, abs=1e-12)


def test_fits_need_two_distinct_points():
    with pytest.raises(ValueError):
        fit_loglog([2.0], [1.0])
    with pytest.raises(ValueError):
        fit_loglinear([2.0, 2.0], [1.0, 2.0])


def test_fit_reports_scatter():
    rng = np.random.default_rng(3)
    x = np.geomspace(2.0, 256.0, 20)
    y = x**-1.0 * np.exp(rng.normal(0.0, 0.05, size=20))
    fit = fit_loglog(x, y)
    assert fit.slope == pytest.approx(-1.0, abs=0.1)
    assert 0.0 < fit.residual_rms < 0.2


# --------------------------------------------------------------------------
# rescalings


def test_rescale_xmin_frozen_factors():
    s = np.array([0.01, 0.02])
    assert np.allclose(rescale_xmin(s, n=100, beta=0), s * 100.0, atol=0.0)
    assert np.allclose(rescale_xmin(s, n=100, beta=1), s * 10.0, atol=0.0)
    expected = (np.pi / 3.0) ** (2.0 / 3.0) * 100.0 ** (1.0 / 3.0) * s
    assert np.allclose(rescale_xmin(s, n=100, beta=2), expected, atol=1e-15)


def test_rescale_xmin_accepts_custom_constants():
    consts = RescaleConstants(a_beta=(1.0, 0.9069, 1.0))
    out = rescale_xmin(np.array([0.1]), n=4, beta=1, consts=consts)
    assert out[0] == pytest.approx(0.9069 * 2.0 * 0.1, abs=1e-15)


def test_rescale_xmin_rejects_bad_beta():
    with pytest.raises(ValueError):
        rescale_xmin(np.array([0.1]), n=4, beta=5)


def test_rescale_ymin_gives_unit_mean():
    rng = np.random.default_rng(9)
    s = rng.random(500) + 0.1
    y = rescale_ymin(s)
    assert float(np.mean(y)) == pytest.approx(1.0, abs=1e-12)


def test_rescale_ymin_rejects_degenerate_input():
    with pytest.raises(ValueError):
        rescale_ymin(np.array([]))
    with pytest.raises(ValueError):
        rescale_ymin(np.zeros(4))


def test_rescale_zmax_standardizes_to_gumbel_moments():
    rng = np.random.default_rng(21)
    s = rng.gumbel(loc=3.0, scale=0.7, size=2000)
    z = rescale_zmax(s)
    assert float(np.mean(z)) == pytest.approx(0.0, abs=1e-9)
    assert float(np.var(z, ddof=1)) == pytest.approx(np.pi**2 / 6.0, abs=1e-9)


def test_rescale_zmax_needs_spread():
    with pytest.raises(ValueError):
        rescale_zmax(np.array([1.0]))
    with pytest.raises(ValueError):
        rescale_zmax(np.full(5, 2.0))
