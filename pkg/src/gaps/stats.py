"""Histogramming, goodness of fit, scaling fits, and the rescaling maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .refdist import DEFAULT_CONSTANTS, RescaleConstants, _check_beta


@dataclass(frozen=True)
class Histogram:
    """Density histogram over half-open bins [e_i, e_{i+1}).

    Samples outside [edges[0], edges[-1]) land in the underflow/overflow
    counters and are excluded from the density normalization, so
    counts.sum() == n_samples and sum(density * widths) == 1 whenever any
    sample is in range.
    """

    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    n_samples: int
    n_underflow: int
    n_overflow: int

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


def histogram(samples, edges) -> Histogram:
    """Count samples into half-open bins and normalize to a density."""
    x = np.asarray(samples, dtype=float).ravel()
    e = np.asarray(edges, dtype=float)
    if e.ndim != 1 or e.size < 2:
        raise ValueError("edges must be a 1-d array with at least 2 entries")
    if not np.all(np.isfinite(e)):
        raise ValueError("edges must be finite")
    if np.any(np.diff(e) <= 0.0):
        raise ValueError("edges must be strictly increasing")
    nbins = e.size - 1
    idx = np.searchsorted(e, x, side="right") - 1
    under = int(np.count_nonzero(idx < 0))
    over = int(np.count_nonzero(idx >= nbins)) if x.size else 0
    in_range = (idx >= 0) & (idx < nbins)
    counts = np.bincount(idx[in_range], minlength=nbins).astype(np.int64)
    n_in = int(counts.sum())
    widths = np.diff(e)
    if n_in > 0:
        density = counts / (n_in * widths)
    else:
        density = np.zeros(nbins)
    return Histogram(edges=e, counts=counts, density=density,
                     n_samples=n_in, n_underflow=under, n_overflow=over)


def ks_distance(samples, cdf: Callable) -> float:
    """Kolmogorov-Smirnov sup distance between a sample and a CDF.

    The CDF callable must accept numpy arrays.
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    if x.size < 1:
        raise ValueError("need at least one sample")
    f = np.asarray(cdf(x), dtype=float)
    n = x.size
    i = np.arange(1, n + 1)
    return float(max(np.max(np.abs(i / n - f)), np.max(np.abs((i - 1) / n - f))))


def ks_two_sample(a, b) -> float:
    """Two-sample KS sup distance between the empirical CDFs of a and b."""
    x = np.sort(np.asarray(a, dtype=float).ravel())
    y = np.sort(np.asarray(b, dtype=float).ravel())
    if x.size < 1 or y.size < 1:
        raise ValueError("need at least one sample on each side")
    grid = np.concatenate([x, y])
    fx = np.searchsorted(x, grid, side="right") / x.size
    fy = np.searchsorted(y, grid, side="right") / y.size
    return float(np.max(np.abs(fx - fy)))


@dataclass(frozen=True)
class FitResult:
    """Least-squares line y = slope * x + intercept in the fit coordinates."""

    slope: float
    intercept: float
    residual_rms: float
    n_points: int


def _fit_line(x: np.ndarray, y: np.ndarray) -> FitResult:
    if x.size != y.size:
        raise ValueError("x and y must have equal length")
    if x.size < 2:
        raise ValueError("need at least 2 points to fit a line")
    if np.unique(x).size < 2:
        raise ValueError("need at least 2 distinct x values to fit a line")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return FitResult(slope=float(slope), intercept=float(intercept),
                     residual_rms=float(np.sqrt(np.mean(resid**2))),
                     n_points=int(x.size))


def fit_loglog(sizes: Sequence[float], means: Sequence[float]) -> FitResult:
    """Fit ln(mean) = slope * ln(size) + intercept; slope is the scaling exponent."""
    n = np.asarray(sizes, dtype=float)
    m = np.asarray(means, dtype=float)
    if np.any(n <= 0.0) or np.any(m <= 0.0):
        raise ValueError("log-log fit needs positive sizes and means")
    return _fit_line(np.log(n), np.log(m))


def fit_loglinear(sizes: Sequence[float], values: Sequence[float]) -> FitResult:
    """Fit value = slope * ln(size) + intercept."""
    n = np.asarray(sizes, dtype=float)
    v = np.asarray(values, dtype=float)
    if np.any(n <= 0.0):
        raise ValueError("log-linear fit needs positive sizes")
    return _fit_line(np.log(n), v)


# --------------------------------------------------------------------------
# rescaling maps for extreme-value samples


def rescale_xmin(
    smin_samples, n: int, beta: int, consts: RescaleConstants = DEFAULT_CONSTANTS
) -> np.ndarray:
    """x = A_beta * n^(1/(1+beta)) * s, the universal minimum variable."""
    _check_beta(beta)
    if n < 1:
        raise ValueError(f"system size must be at least 1, got {n}")
    s = np.asarray(smin_samples, dtype=float)
    return consts.a(beta) * float(n) ** (1.0 / (1.0 + beta)) * s


def rescale_ymin(smin_samples) -> np.ndarray:
    """y = s / mean(s); the output has unit sample mean."""
    s = np.asarray(smin_samples, dtype=float)
    if s.size < 1:
        raise ValueError("need at least one sample")
    m = s.mean()
    if not m > 0.0:
        raise ValueError(f"mean rescaling needs a positive sample mean, got {m}")
    return s / m


def rescale_zmax(smax_samples) -> np.ndarray:
    """z = pi / sqrt(6 Var(s)) * (s - mean(s)), Gumbel-normalized maxima.

    Uses the unbiased sample variance; the output has sample mean 0 and
    sample variance pi^2/6.
    """
    s = np.asarray(smax_samples, dtype=float)
    if s.size < 2:
        raise ValueError("need at least two samples for variance rescaling")
    var = s.var(ddof=1)
    if not var > 0.0:
        raise ValueError("variance rescaling needs nonzero sample variance")
    return (s - s.mean()) * (np.pi / np.sqrt(6.0 * var))
