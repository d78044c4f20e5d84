"""Samplers for circular spectra: independent phases, repulsive phases, tensor products.

A spectrum is the sorted vector of eigenphases in [0, 2*pi). Three families
are supported:

* ``cpe``  - independent uniform phases (no repulsion, beta = 0),
* ``coe`` / ``cue`` - joint density with repulsion |e^{i a} - e^{i b}|^beta,
  beta = 1 or 2, drawn by decomposing a random unitary matrix,
* ``tensor_cue`` - eigenphases of a tensor product of independent CUE
  factors, built by summing factor phases mod 2*pi (no matrices formed).

All samplers take a :class:`~gaps.seeding.SeedSpec`; equal seeds give
bit-identical spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import mcmc
from .seeding import SeedSpec

TWO_PI = 2.0 * np.pi

# Size caps. Dense decomposition gets cubic in n; the tensor route only
# ever touches phase vectors, so it is capped by memory and sort time.
MAX_DENSE_N = 4096
MAX_MCMC_N = 256
MAX_FACTOR_N = 64
MAX_TENSOR_N = 1 << 22


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenphase vector, every entry in [0, 2*pi)."""

    phases: np.ndarray

    def __post_init__(self) -> None:
        ph = self.phases
        if ph.ndim != 1 or ph.size < 1:
            raise ValueError("phases must be a nonempty 1-d array")
        if not np.all(np.isfinite(ph)):
            raise ValueError("phases must be finite")
        if ph[0] < 0.0 or ph[-1] >= TWO_PI:
            raise ValueError("phases must lie in [0, 2*pi)")
        if np.any(np.diff(ph) < 0.0):
            raise ValueError("phases must be sorted ascending")

    @property
    def n(self) -> int:
        return self.phases.size


@dataclass(frozen=True)
class EnsembleSpec:
    """Which ensemble to draw from. Use the class methods to construct."""

    kind: str
    n: int = 0
    factors: tuple[int, ...] = ()

    @classmethod
    def cpe(cls, n: int) -> "EnsembleSpec":
        return cls(kind="cpe", n=n)

    @classmethod
    def coe(cls, n: int) -> "EnsembleSpec":
        return cls(kind="coe", n=n)

    @classmethod
    def cue(cls, n: int) -> "EnsembleSpec":
        return cls(kind="cue", n=n)

    @classmethod
    def tensor_cue(cls, factors: Sequence[int]) -> "EnsembleSpec":
        return cls(kind="tensor_cue", factors=tuple(int(f) for f in factors))

    def __post_init__(self) -> None:
        if self.kind not in ("cpe", "coe", "cue", "tensor_cue"):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.kind == "tensor_cue":
            if len(self.factors) < 1:
                raise ValueError("tensor_cue needs at least one factor")
            for f in self.factors:
                if not 2 <= f <= MAX_FACTOR_N:
                    raise ValueError(
                        f"tensor factor sizes must be in [2, {MAX_FACTOR_N}], got {f}")
            if self.size > MAX_TENSOR_N:
                raise ValueError(
                    f"tensor spectrum size {self.size} exceeds cap {MAX_TENSOR_N}")
        else:
            if self.n < 1:
                raise ValueError(f"ensemble size must be at least 1, got {self.n}")

    @property
    def size(self) -> int:
        """Number of eigenphases per draw."""
        if self.kind == "tensor_cue":
            return int(np.prod(self.factors, dtype=np.int64))
        return self.n

    @property
    def beta(self) -> int:
        """Repulsion exponent. Undefined for tensor products."""
        if self.kind == "cpe":
            return 0
        if self.kind == "coe":
            return 1
        if self.kind == "cue":
            return 2
        raise ValueError("beta is undefined for tensor_cue spectra")

    def label(self) -> str:
        if self.kind == "tensor_cue":
            return "tensor_cue_" + "x".join(str(f) for f in self.factors)
        return f"{self.kind}_n{self.n}"


# --------------------------------------------------------------------------
# low-level phase generators, all driven by an explicit Generator


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The R diagonal's phases are divided out; without that fix the QR
    factor is not Haar.
    """
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _wrap_sorted(angles: np.ndarray) -> np.ndarray:
    ph = np.mod(angles, TWO_PI)
    # mod can land exactly on 2*pi when the input is a hair below zero
    ph[ph >= TWO_PI] = 0.0
    ph.sort()
    return ph


def _eigenphases(u: np.ndarray) -> np.ndarray:
    return _wrap_sorted(np.angle(np.linalg.eigvals(u)))


def _cpe_phases(n: int, rng: np.random.Generator) -> np.ndarray:
    ph = rng.random(n) * TWO_PI
    ph.sort()
    return ph


def _cue_phases(n: int, rng: np.random.Generator) -> np.ndarray:
    return _eigenphases(haar_unitary(n, rng))


def _coe_phases(n: int, rng: np.random.Generator) -> np.ndarray:
    w = haar_unitary(n, rng)
    return _eigenphases(w.T @ w)


def _draw_cue2_gap(rng: np.random.Generator) -> tuple[float, int]:
    """Gap between the two CUE(2) phases: density (1 - cos d)/(2*pi).

    Rejection from Uniform[0, 2*pi) with envelope constant 2; accepts a
    proposal with probability (1 - cos d)/2, so the mean acceptance rate
    is exactly 1/2. Returns (gap, number of proposals used).
    """
    proposals = 0
    while True:
        d = rng.random() * TWO_PI
        proposals += 1
        if rng.random() < (1.0 - math.cos(d)) / 2.0:
            return d, proposals


def _cue2_phases(rng: np.random.Generator) -> np.ndarray:
    first = rng.random() * TWO_PI
    gap, _ = _draw_cue2_gap(rng)
    ph = np.array([first, (first + gap) % TWO_PI])
    ph.sort()
    return ph


# --------------------------------------------------------------------------
# public samplers


def sample_cpe(n: int, seed: SeedSpec) -> Spectrum:
    """n independent uniform phases, sorted."""
    if n < 1:
        raise ValueError(f"system size must be at least 1, got {n}")
    return Spectrum(_cpe_phases(n, seed.rng()))


def sample_cue2_direct(seed: SeedSpec) -> Spectrum:
    """Exact two-phase CUE draw: uniform first phase, rejection-sampled gap."""
    return Spectrum(_cue2_phases(seed.rng()))


def sample_circular_beta(n: int, beta: int, seed: SeedSpec,
                         backend: str = "dense") -> Spectrum:
    """One spectrum with eigenphase repulsion exponent beta in {1, 2}.

    backend "dense" decomposes a random unitary (Haar CUE for beta = 2,
    its symmetrized transpose product for beta = 1). backend "mcmc" runs
    the Metropolis chain in :mod:`gaps.mcmc`; it is slow and exists as an
    independent validation route.
    """
    if n < 1:
        raise ValueError(f"system size must be at least 1, got {n}")
    if beta not in (1, 2):
        raise ValueError(f"beta must be 1 or 2, got {beta}")
    if backend == "dense":
        if n > MAX_DENSE_N:
            raise ValueError(f"dense backend supports n <= {MAX_DENSE_N}, got {n}")
        rng = seed.rng()
        return Spectrum(_coe_phases(n, rng) if beta == 1 else _cue_phases(n, rng))
    if backend == "mcmc":
        if n > MAX_MCMC_N:
            raise ValueError(f"mcmc backend supports n <= {MAX_MCMC_N}, got {n}")
        return Spectrum(np.sort(mcmc.sample_phases_mcmc(n, beta, seed.rng())))
    raise ValueError(f"unknown backend {backend!r}")


def tensor_spectrum(factor_spectra: Sequence[Spectrum]) -> Spectrum:
    """Spectrum of the tensor product: all sums of factor phases mod 2*pi.

    Never forms a matrix; the result has prod(n_i) phases.
    """
    if len(factor_spectra) < 1:
        raise ValueError("need at least one factor spectrum")
    total = 1
    for f in factor_spectra:
        total *= f.n
    if total > MAX_TENSOR_N:
        raise ValueError(f"tensor spectrum size {total} exceeds cap {MAX_TENSOR_N}")
    acc = np.zeros(1)
    for f in factor_spectra:
        acc = (acc[:, None] + f.phases[None, :]).ravel()
    return Spectrum(_wrap_sorted(acc))


def sample_ensemble(spec: EnsembleSpec, seed: SeedSpec) -> Spectrum:
    """Draw one spectrum from any supported ensemble.

    Tensor factors are drawn sequentially from the seed's stream, size-2
    factors through the exact rejection sampler and larger ones through
    the dense CUE route.
    """
    if spec.kind == "cpe":
        return sample_cpe(spec.n, seed)
    if spec.kind == "coe":
        return sample_circular_beta(spec.n, 1, seed)
    if spec.kind == "cue":
        return sample_circular_beta(spec.n, 2, seed)
    rng = seed.rng()
    factors = []
    for f in spec.factors:
        if f == 2:
            factors.append(Spectrum(_cue2_phases(rng)))
        else:
            factors.append(Spectrum(_cue_phases(f, rng)))
    return tensor_spectrum(factors)
