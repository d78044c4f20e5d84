import numpy as np
import pytest

from gaps import refdist
from gaps.refdist import (
    DEFAULT_CONSTANTS,
    RescaleConstants,
    cdf_from_pdf,
    cdf_xmin,
    gumbel_cdf,
    gumbel_pdf,
    get_reference,
    integral_of,
    mean_of,
    pdf_exp_unit,
    pdf_min_cpe4,
    pdf_min_cue2x2,
    pdf_min_cue4,
    pdf_smin,
    pdf_xmin,
    reference_names,
    tail_min_cpe,
    wigner_coe,
    wigner_coe_cdf,
    wigner_cue,
    wigner_cue_cdf,
)


def _deriv5(f, x, h=1e-3):
    """Five-point central difference, O(h^4)."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


# --------------------------------------------------------------------------
# exact n=4 densities


def test_exact_density_endpoint_values():
    assert abs(pdf_min_cpe4(0.0) - 3.0) < 1e-12
    assert abs(pdf_min_cpe4(1.0)) < 1e-12
    assert abs(pdf_min_cue2x2(0.0) - 1.5) < 1e-12
    assert abs(pdf_min_cue2x2(1.0)) < 1e-12
    assert abs(pdf_min_cue4(0.0)) < 1e-12
    assert abs(pdf_min_cue4(1.0)) < 1e-12


def test_exact_densities_are_normalized():
    for pdf in (pdf_min_cpe4, pdf_min_cue2x2, pdf_min_cue4):
        assert abs(integral_of(pdf, 0.0, 1.0) - 1.0) < 1e-6


def test_exact_densities_vanish_outside_support():
    for pdf in (pdf_min_cpe4, pdf_min_cue2x2, pdf_min_cue4):
        assert pdf(-0.25) == 0.0
        assert pdf(1.25) == 0.0


def test_cue4_density_repels_quadratically_near_zero():
    s = np.array([1e-3, 2e-3, 4e-3])
    vals = pdf_min_cue4(s)
    # doubling s quadruples the density while s^2 dominates
    assert vals[1] / vals[0] == pytest.approx(4.0, rel=5e-3)
    assert vals[2] / vals[1] == pytest.approx(4.0, rel=2e-2)


def test_cpe_tail_and_density_are_consistent():
    # P(s) = -d/dt of the tail at n=4, checked by central differences.
    for t in (0.1, 0.35, 0.6, 0.85):
        deriv = _deriv5(lambda u: tail_min_cpe(u, 4), t)
        assert abs(-deriv - pdf_min_cpe4(t)) < 1e-10


def test_cpe_tail_values():
    assert tail_min_cpe(0.0, 4) == 1.0
    assert tail_min_cpe(1.0, 4) == 0.0
    assert np.isclose(tail_min_cpe(0.5, 4), 0.125, atol=1e-15)
    assert np.isclose(tail_min_cpe(0.25, 7), 0.75**6, atol=1e-15)


def test_cue2x2_mean_matches_quadrature():
    # Frozen from the analytic form; used by the transition-figure rescaling.
    assert mean_of(pdf_min_cue2x2, 0.0, 1.0) == pytest.approx(0.3946017006152232, abs=1e-12)


# --------------------------------------------------------------------------
# universal rescaled-minimum family


def test_xmin_point_values():
    assert abs(pdf_xmin(0.0, 0) - 1.0) < 1e-15
    assert abs(pdf_xmin(0.0, 2)) < 1e-15
    assert abs(pdf_xmin(1.0, 1) - 2.0 * np.exp(-1.0)) < 1e-15


def test_xmin_tail_structure():
    # F(x) = f'(x) exp(-f(x)) with f = x^(beta+1), so the CDF is closed form.
    for beta in (0, 1, 2):
        for x in (0.2, 0.9, 1.7):
            quad = integral_of(lambda t: pdf_xmin(t, beta), 0.0, x)
            assert abs(quad - (1.0 - np.exp(-(x ** (beta + 1))))) < 1e-10
            assert abs(cdf_xmin(x, beta) - (1.0 - np.exp(-(x ** (beta + 1))))) < 1e-15


def test_xmin_masses():
    for beta, hi in ((0, 40.0), (1, 8.0), (2, 5.0)):
        assert abs(integral_of(lambda t: pdf_xmin(t, beta), 0.0, hi) - 1.0) < 1e-6


def test_xmin_rejects_bad_beta():
    with pytest.raises(ValueError):
        pdf_xmin(0.5, 3)


def test_pdf_smin_change_of_variables():
    for beta in (0, 1, 2):
        for n in (10, 100):
            s = np.linspace(0.0, 1.0, 100)
            scale = DEFAULT_CONSTANTS.a(beta) * n ** (1.0 / (1.0 + beta))
            expected = pdf_xmin(scale * s, beta) * scale
            assert np.max(np.abs(pdf_smin(s, n, beta) - expected)) < 1e-12


def test_pdf_smin_is_normalized():
    for beta in (0, 1, 2):
        for n in (10, 100):
            mass = integral_of(lambda s: pdf_smin(s, n, beta), 0.0, 10.0)
            assert abs(mass - 1.0) < 1e-6


def test_pdf_smin_honors_custom_constants():
    consts = RescaleConstants(a_beta=(1.0, 0.9, 1.1))
    scale = 0.9 * 100.0**0.5
    assert pdf_smin(0.05, 100, 1, consts) == pytest.approx(
        pdf_xmin(scale * 0.05, 1) * scale, abs=1e-15)


# --------------------------------------------------------------------------
# surmises, exponential, Gumbel


def test_wigner_surmises_are_unit_mean_densities():
    for pdf in (wigner_coe, wigner_cue):
        assert abs(integral_of(pdf, 0.0, 10.0) - 1.0) < 1e-9
        assert abs(mean_of(pdf, 0.0, 12.0) - 1.0) < 1e-9


def test_wigner_cdfs_match_their_densities():
    for pdf, cdf in ((wigner_coe, wigner_coe_cdf), (wigner_cue, wigner_cue_cdf)):
        for s in (0.3, 0.8, 1.5, 2.5):
            assert abs(_deriv5(cdf, s) - pdf(s)) < 1e-8
        assert cdf(0.0) == 0.0


def test_wigner_small_s_repulsion_orders():
    s = 1e-4
    assert wigner_coe(s) == pytest.approx(np.pi / 2.0 * s, rel=1e-6)
    assert wigner_cue(s) == pytest.approx(32.0 / np.pi**2 * s**2, rel=1e-6)


def test_exponential_law():
    assert pdf_exp_unit(0.0) == 1.0
    assert abs(integral_of(pdf_exp_unit, 0.0, 50.0) - 1.0) < 1e-9
    assert abs(mean_of(pdf_exp_unit, 0.0, 60.0) - 1.0) < 1e-9


def test_gumbel_has_zero_mean_and_unit_mass():
    assert abs(integral_of(gumbel_pdf, -8.0, 30.0) - 1.0) < 1e-9
    assert abs(mean_of(gumbel_pdf, -8.0, 40.0)) < 1e-9


def test_gumbel_mode_sits_at_minus_gamma():
    gamma = DEFAULT_CONSTANTS.gamma_euler
    assert gumbel_pdf(-gamma) == pytest.approx(np.exp(-1.0), abs=1e-15)
    assert gumbel_pdf(-gamma) > gumbel_pdf(-gamma + 0.05)
    assert gumbel_pdf(-gamma) > gumbel_pdf(-gamma - 0.05)


def test_gumbel_cdf_matches_density():
    for z in (-1.5, -0.3, 0.8, 2.5):
        assert abs(_deriv5(gumbel_cdf, z) - gumbel_pdf(z)) < 1e-8


# --------------------------------------------------------------------------
# rescale constants


def test_rescale_constants_defaults():
    assert DEFAULT_CONSTANTS.a(0) == 1.0
    assert DEFAULT_CONSTANTS.a(1) == 1.0
    assert DEFAULT_CONSTANTS.a(2) == pytest.approx((np.pi / 3.0) ** (2.0 / 3.0), abs=0.0)
    assert abs(DEFAULT_CONSTANTS.a(2) ** 3 - np.pi**2 / 9.0) < 1e-12
    assert DEFAULT_CONSTANTS.gamma_euler == pytest.approx(0.5772156649015329, abs=1e-15)


def test_rescale_constants_reject_bad_beta():
    with pytest.raises(ValueError):
        DEFAULT_CONSTANTS.a(3)


# --------------------------------------------------------------------------
# registry


def test_registry_names_are_stable():
    assert reference_names() == [
        "exp", "gumbel", "min-cpe4", "min-cue2x2", "min-cue4",
        "wigner-coe", "wigner-cue", "xmin-beta0", "xmin-beta1", "xmin-beta2",
    ]


def test_registry_lookup_and_error():
    ref = get_reference("min-cue4")
    assert ref.name == "min-cue4"
    assert ref.support == (0.0, 1.0)
    with pytest.raises(ValueError, match="unknown reference density"):
        get_reference("nope")


def test_registry_pdfs_are_nonnegative_on_support():
    for name in reference_names():
        ref = get_reference(name)
        lo = ref.support[0] if np.isfinite(ref.support[0]) else -6.0
        hi = ref.support[1] if np.isfinite(ref.support[1]) else 8.0
        grid = np.linspace(lo, hi, 301)
        assert np.all(np.asarray(ref.pdf(grid)) >= 0.0), name


def test_registry_cdfs_match_quadrature():
    for name in ("min-cue2x2", "min-cue4", "min-cpe4"):
        ref = get_reference(name)
        for s in (0.2, 0.5, 0.8):
            assert abs(ref.cdf(s) - integral_of(ref.pdf, 0.0, s)) < 1e-6


def test_cdf_from_pdf_against_closed_form():
    # linear interpolation between the 8193 grid nodes caps accuracy near 2e-6
    cdf = cdf_from_pdf(pdf_exp_unit, 0.0, 30.0)
    for t in (0.1, 1.0, 3.0):
        assert abs(cdf(t) - (1.0 - np.exp(-t))) < 5e-6


# --------------------------------------------------------------------------
# scaling predictions


def test_mean_predictions():
    assert refdist.mean_smin_prediction(8, 2) == pytest.approx(0.5, abs=1e-15)
    assert refdist.mean_smin_prediction(16, 0) == pytest.approx(1.0 / 16.0, abs=1e-15)
    assert refdist.mean_smax_prediction(100, 0) == pytest.approx(np.log(100.0), abs=1e-12)
    assert refdist.mean_smax_prediction(100, 1) == pytest.approx(
        np.sqrt(4.0 / np.pi * np.log(100.0)), abs=1e-12)
    assert refdist.mean_smax_prediction(100, 2) == pytest.approx(
        np.sqrt(np.pi / 4.0 * np.log(100.0)), abs=1e-12)


def test_fitting_the_minimum_scale_constant_recovers_truth():
    # Synthetic beta=1 minima with a known constant: s = x / (A sqrt(N)) with
    # x drawn from the limit law 2 x exp(-x^2). The moment estimator
    # A_hat = (sqrt(pi)/2) / (sqrt(N) <s>) must recover A.
    rng = np.random.default_rng(2024)
    true_a, n, reps = 0.95, 100, 200000
    x = np.sqrt(-np.log1p(-rng.random(reps)))
    s = x / (true_a * np.sqrt(n))
    a_hat = (np.sqrt(np.pi) / 2.0) / (np.sqrt(n) * s.mean())
    assert a_hat == pytest.approx(true_a, abs=0.01)
