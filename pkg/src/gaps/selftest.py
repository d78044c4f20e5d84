"""Fast self-contained oracle checks, wired to `gaps selftest`.

Each check compares one piece of the pipeline against an exact result or an
independent route: closed-form masses by quadrature, the dense sampler
against the exact two-level laws, the Metropolis chain against the dense
sampler, and the batch runner against its own determinism contract.
Runs in well under a minute on one core.
"""

from __future__ import annotations

import numpy as np

from . import mcmc, poisson_oracle, refdist, stats
from .ensembles import EnsembleSpec, Spectrum, sample_cpe, sample_cue2_direct, sample_ensemble
from .runner import ExperimentConfig, run_batch
from .seeding import SeedSpec, derive_master
from .spacings import compute_spacings

_SEED = 987654321


def _check_constants() -> None:
    consts = refdist.DEFAULT_CONSTANTS
    assert abs(consts.a(2) ** 3 - np.pi**2 / 9.0) < 1e-12, "A_2^3 != pi^2/9"
    assert all(consts.a(b) > 0.0 for b in (0, 1, 2)), "rescale constants must be positive"
    assert abs(consts.gamma_euler - 0.5772156649015329) < 1e-15


def _check_density_masses() -> None:
    cases = [
        (refdist.pdf_min_cpe4, 0.0, 1.0),
        (refdist.pdf_min_cue2x2, 0.0, 1.0),
        (refdist.pdf_min_cue4, 0.0, 1.0),
        (lambda x: refdist.pdf_xmin(x, 0), 0.0, 40.0),
        (lambda x: refdist.pdf_xmin(x, 1), 0.0, 8.0),
        (lambda x: refdist.pdf_xmin(x, 2), 0.0, 5.0),
    ]
    for pdf, lo, hi in cases:
        mass = refdist.integral_of(pdf, lo, hi)
        assert abs(mass - 1.0) < 1e-6, f"density mass {mass} != 1"


def _check_xmin_tail_identity() -> None:
    for beta in (0, 1, 2):
        for x in (0.3, 0.7, 1.4):
            quad = refdist.integral_of(lambda t: refdist.pdf_xmin(t, beta), 0.0, x)
            closed = refdist.cdf_xmin(x, beta)
            assert abs(quad - closed) < 1e-9, f"beta={beta}: CDF mismatch at {x}"


def _check_poisson_oracle() -> None:
    n, batches = 16, 20000
    rng = SeedSpec(_SEED, 0).rng()
    draws = -np.log1p(-rng.random((batches, n)))
    mins, maxes = draws.min(axis=1), draws.max(axis=1)
    for observed, exact in [
        (mins, poisson_oracle.exact_mean_min(n)),
        (maxes, poisson_oracle.exact_mean_max(n)),
    ]:
        se = observed.std(ddof=1) / np.sqrt(batches)
        assert abs(observed.mean() - exact) < 3.0 * se, "Poisson extreme mean off"
    t = 0.05
    tail = np.mean(mins > t)
    expect = poisson_oracle.cdf_min_exceed(t, n)
    se = np.sqrt(expect * (1.0 - expect) / batches)
    assert abs(tail - expect) < 3.0 * se, "Poisson min tail off"


def _check_two_level_laws() -> None:
    reps = 4096
    # Dense route at n=2, beta=2: the wrapped gap delta has density
    # (1 - cos delta)/(2 pi), so s = delta/pi has CDF (s - sin(pi s)/pi)/2.
    spacings = np.concatenate([
        compute_spacings(sample_ensemble(EnsembleSpec.cue(2), SeedSpec(_SEED, i))).raw
        for i in range(reps)
    ])
    cdf = lambda s: 0.5 * (s - np.sin(np.pi * s) / np.pi)
    d = stats.ks_distance(spacings, cdf)
    assert d < 0.05, f"dense n=2 spacing law KS {d}"
    # Rejection route, same law.
    direct = np.concatenate([
        compute_spacings(sample_cue2_direct(SeedSpec(_SEED + 1, i))).raw
        for i in range(reps)
    ])
    d = stats.ks_distance(direct, cdf)
    assert d < 0.05, f"rejection n=2 spacing law KS {d}"


def _check_mcmc_route() -> None:
    n, n_samples = 6, 128
    chain = mcmc.CircularBetaChain(n, 2, SeedSpec(_SEED, 1).rng())
    chain_spacings = np.concatenate([
        compute_spacings(Spectrum(row)).raw for row in chain.sample_batch(n_samples)
    ])
    dense_spacings = np.concatenate([
        compute_spacings(sample_ensemble(EnsembleSpec.cue(n), SeedSpec(_SEED, i))).raw
        for i in range(4 * n_samples)
    ])
    d = stats.ks_two_sample(chain_spacings, dense_spacings)
    assert d < 0.12, f"MCMC vs dense spacing KS {d}"


def _check_spacing_sum() -> None:
    spectrum = sample_cpe(257, SeedSpec(_SEED, 2))
    raw = compute_spacings(spectrum).raw
    assert abs(raw.sum() - 257.0) < 1e-9, "rescaled spacings must sum to N"
    assert np.all(raw >= 0.0)


def _check_seeding() -> None:
    a = SeedSpec(_SEED, 7).rng().random(4)
    b = SeedSpec(_SEED, 7).rng().random(4)
    c = SeedSpec(_SEED, 8).rng().random(4)
    assert np.array_equal(a, b), "substreams must be reproducible"
    assert not np.array_equal(a, c), "substreams must differ across reps"
    assert derive_master(_SEED, 1, 4) != derive_master(_SEED, 2, 4)


def _check_runner_determinism() -> None:
    config = ExperimentConfig(ensemble=EnsembleSpec.cpe(16), reps=64,
                              master_seed=_SEED, statistic="min")
    first = run_batch(config)
    second = run_batch(config)
    assert np.array_equal(first.samples, second.samples), "run_batch must be deterministic"
    assert first.mean == second.mean


_CHECKS = [
    ("rescale constants", _check_constants),
    ("closed-form density masses", _check_density_masses),
    ("rescaled-minimum tail identity", _check_xmin_tail_identity),
    ("Poisson spacing oracle", _check_poisson_oracle),
    ("two-level spacing laws", _check_two_level_laws),
    ("Metropolis vs dense route", _check_mcmc_route),
    ("spacing sum invariant", _check_spacing_sum),
    ("seed substream contract", _check_seeding),
    ("batch determinism", _check_runner_determinism),
]


def run_selftest() -> int:
    """Run every check; print one line each; 0 when all pass."""
    failures = 0
    for name, check in _CHECKS:
        try:
            check()
        except AssertionError as exc:
            print(f"FAIL - {name}: {exc}")
            failures += 1
        else:
            print(f"ok - {name}")
    if failures:
        print(f"{failures} of {len(_CHECKS)} checks failed")
    else:
        print(f"all {len(_CHECKS)} checks passed")
    return 1 if failures else 0
