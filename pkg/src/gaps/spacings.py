"""Rescaled circular spacings of a spectrum.

For n sorted phases the i-th spacing is (phi_{i+1} - phi_i) * n / (2*pi),
with a wraparound term closing the circle, so the spacings are nonnegative
and sum to exactly n (unit mean).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensembles import TWO_PI, Spectrum


@dataclass(frozen=True)
class SpacingSet:
    """All n spacings of one spectrum.

    raw      spectral order, the wraparound gap last
    ordered  the same values sorted ascending
    """

    raw: np.ndarray
    ordered: np.ndarray

    @property
    def n(self) -> int:
        return self.raw.size


def compute_spacings(spectrum: Spectrum) -> SpacingSet:
    """Spacings of a spectrum, rescaled to unit mean."""
    ph = spectrum.phases
    n = ph.size
    raw = np.empty(n)
    raw[: n - 1] = np.diff(ph)
    # written as (2*pi - last) + first to avoid cancellation when the
    # extreme phases sit close to the wrap point
    raw[n - 1] = (TWO_PI - ph[-1]) + ph[0]
    raw *= n / TWO_PI
    return SpacingSet(raw=raw, ordered=np.sort(raw))


def extremal(spacing_set: SpacingSet) -> tuple[float, float]:
    """(smallest, largest) spacing."""
    return float(spacing_set.ordered[0]), float(spacing_set.ordered[-1])


def mth_spacing(spacing_set: SpacingSet, m: int) -> float:
    """The m-th smallest spacing, 1-based: m = 1 is the minimum."""
    if not 1 <= m <= spacing_set.n:
        raise IndexError(f"m must be in [1, {spacing_set.n}], got {m}")
    return float(spacing_set.ordered[m - 1])
