"""Extreme spacing statistics of random unitary spectra.

Samplers for the circular ensembles and tensor products of unitaries,
closed-form reference laws for extremal spacings, scaling experiments,
and a deterministic seeded CLI that emits CSV datasets for plotting.
"""

from .ensembles import EnsembleSpec, Spectrum, haar_unitary, sample_ensemble
from .poisson_oracle import PoissonSpacings, sample_exp_spacings
from .refdist import (
    DEFAULT_CONSTANTS,
    RefDensity,
    RescaleConstants,
    get_reference,
    reference_names,
)
from .runner import (
    ExperimentConfig,
    ExperimentResult,
    ScalingResult,
    reproduce_figure,
    run_batch,
    run_scaling_sweep,
)
from .seeding import SeedSpec, derive_master
from .spacings import SpacingSet, compute_spacings, extremal, mth_spacing
from .stats import (
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

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONSTANTS",
    "EnsembleSpec",
    "ExperimentConfig",
    "ExperimentResult",
    "FitResult",
    "Histogram",
    "PoissonSpacings",
    "RefDensity",
    "RescaleConstants",
    "ScalingResult",
    "SeedSpec",
    "SpacingSet",
    "Spectrum",
    "compute_spacings",
    "derive_master",
    "extremal",
    "fit_loglinear",
    "fit_loglog",
    "get_reference",
    "haar_unitary",
    "histogram",
    "ks_distance",
    "ks_two_sample",
    "mth_spacing",
    "reference_names",
    "reproduce_figure",
    "rescale_xmin",
    "rescale_ymin",
    "rescale_zmax",
    "run_batch",
    "run_scaling_sweep",
    "sample_ensemble",
    "sample_exp_spacings",
]
