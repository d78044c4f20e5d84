"""Independent-spacing oracle: extremes of n iid unit-mean exponentials.

This is the analytically solvable stand-in for the no-repulsion ensemble.
Spacing vectors here are unconstrained (they do not sum to n), which is
what makes every extreme-value law exact and closed-form:

    P(min > t) = exp(-n t)          E[min] = 1/n
    P(max <= t) = (1 - exp(-t))^n   E[max] = H_n = sum_{k=1..n} 1/k

Monte Carlo batches drawn here validate the statistics pipeline end to
end against those formulas.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .seeding import SeedSpec


@dataclasses.dataclass(frozen=True)
class PoissonSpacings:
    """A batch of iid Exp(1) variates, the spacing law of a unit-rate Poisson stream."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("values must be a nonempty 1-d array")
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise ValueError("spacings must be finite and nonnegative")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.size)


def sample_exp_spacings(n: int, seed: SeedSpec) -> PoissonSpacings:
    """One batch of n iid Exp(1) draws via inverse CDF -log(1 - U)."""
    if n < 1:
        raise ValueError(f"batch size must be at least 1, got {n}")
    u = seed.rng().random(n)
    return PoissonSpacings(values=-np.log1p(-u))


def exact_mean_min(n: int) -> float:
    if n < 1:
        raise ValueError(f"batch size must be at least 1, got {n}")
    return 1.0 / n


def exact_mean_max(n: int) -> float:
    """Harmonic number H_n."""
    if n < 1:
        raise ValueError(f"batch size must be at least 1, got {n}")
    return float(np.sum(1.0 / np.arange(1, n + 1)))


def cdf_min_exceed(t, n: int):
    """Survival function of the batch minimum, P(min > t) = exp(-n t)."""
    if n < 1:
        raise ValueError(f"batch size must be at least 1, got {n}")
    t = np.asarray(t, dtype=float)
    return np.where(t < 0.0, 1.0, np.exp(-n * np.where(t > 0.0, t, 0.0)))


def cdf_max(t, n: int):
    """CDF of the batch maximum, P(max <= t) = (1 - exp(-t))^n."""
    if n < 1:
        raise ValueError(f"batch size must be at least 1, got {n}")
    t = np.asarray(t, dtype=float)
    return np.where(t < 0.0, 0.0, (1.0 - np.exp(-np.where(t > 0.0, t, 0.0))) ** n)
