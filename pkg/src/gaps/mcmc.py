"""Random-walk Metropolis sampler for circular beta ensembles.

This is the slow, dependency-free route to the joint eigenphase law with
repulsion exponent beta. The dense decomposition backend in `ensembles` is
orders of magnitude faster, so this module mainly serves as an independent
cross-check: the self-test battery compares the two routes on small systems.

Chain layout: state is the vector of n phases, proposals move one phase at
a time by a wrapped Gaussian step of width 2*pi/n, and the acceptance ratio
comes from the log weight sum(beta * log|2 sin((phi_j - phi_k)/2)|).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

# Hard bounds on the proposal acceptance rate. The tuned target band is
# 0.2..0.5; far outside that band the chain is effectively stuck or
# diffusing without repulsion, so sampling aborts.
ACCEPT_RATE_MIN = 0.05
ACCEPT_RATE_MAX = 0.95


@dataclass(frozen=True)
class McmcDiagnostics:
    """Counters reported by a chain, attached to convergence errors."""

    n_sweeps: int
    n_proposals: int
    n_accepted: int

    @property
    def acceptance_rate(self) -> float:
        if self.n_proposals == 0:
            return float("nan")
        return self.n_accepted / self.n_proposals


class ConvergenceError(RuntimeError):
    """Raised when chain diagnostics leave their acceptable bounds."""

    def __init__(self, message: str, diagnostics: McmcDiagnostics):
        super().__init__(f"{message} (acceptance_rate={diagnostics.acceptance_rate:.3f}, "
                         f"sweeps={diagnostics.n_sweeps})")
        self.diagnostics = diagnostics


def log_repulsion(phases: np.ndarray, beta: float) -> float:
    """Log of the unnormalized joint density at a phase configuration."""
    ph = np.asarray(phases, dtype=float)
    diffs = ph[:, None] - ph[None, :]
    iu = np.triu_indices(ph.size, k=1)
    gaps = np.abs(2.0 * np.sin(diffs[iu] / 2.0))
    if np.any(gaps == 0.0):
        return -np.inf
    return float(beta * np.log(gaps).sum())


class CircularBetaChain:
    """Single Metropolis chain over n phases with repulsion exponent beta."""

    def __init__(self, n: int, beta: int, rng: np.random.Generator,
                 proposal_width: float | None = None):
        if n < 1:
            raise ValueError(f"system size must be at least 1, got {n}")
        if beta not in (1, 2):
            raise ValueError(f"beta must be 1 or 2, got {beta}")
        self.n = n
        self.beta = beta
        self.rng = rng
        self.width = TWO_PI / n if proposal_width is None else float(proposal_width)
        self.phases = rng.random(n) * TWO_PI
        self.n_sweeps = 0
        self.n_proposals = 0
        self.n_accepted = 0

    # default schedule, in sweeps
    @property
    def default_burn_in(self) -> int:
        return 50 * self.n

    @property
    def default_thinning(self) -> int:
        return 10 * self.n

    def _site_log_weight(self, j: int, phase_j: float) -> float:
        others = np.delete(self.phases, j)
        gaps = np.abs(2.0 * np.sin((phase_j - others) / 2.0))
        if np.any(gaps == 0.0):
            return -np.inf
        return self.beta * float(np.log(gaps).sum())

    def sweep(self) -> None:
        """One sweep: a single-site Metropolis proposal at every site."""
        rng = self.rng
        steps = rng.standard_normal(self.n) * self.width
        accept_u = rng.random(self.n)
        for j in range(self.n):
            old = self.phases[j]
            new = (old + steps[j]) % TWO_PI
            delta = self._site_log_weight(j, new) - self._site_log_weight(j, old)
            self.n_proposals += 1
            if delta >= 0.0 or accept_u[j] < np.exp(delta):
                self.phases[j] = new
                self.n_accepted += 1
        self.n_sweeps += 1

    def run(self, n_sweeps: int) -> None:
        for _ in range(n_sweeps):
            self.sweep()

    def diagnostics(self) -> McmcDiagnostics:
        return McmcDiagnostics(self.n_sweeps, self.n_proposals, self.n_accepted)

    def check_acceptance(self) -> None:
        d = self.diagnostics()
        rate = d.acceptance_rate
        if not (ACCEPT_RATE_MIN <= rate <= ACCEPT_RATE_MAX):
            raise ConvergenceError("proposal acceptance rate out of bounds", d)

    def sample_batch(self, n_samples: int, burn_in: int | None = None,
                     thinning: int | None = None) -> np.ndarray:
        """Burn in once, then return thinned retained states, sorted per row."""
        if n_samples < 1:
            raise ValueError(f"n_samples must be at least 1, got {n_samples}")
        burn = self.default_burn_in if burn_in is None else burn_in
        thin = self.default_thinning if thinning is None else thinning
        self.run(burn)
        out = np.empty((n_samples, self.n))
        for i in range(n_samples):
            self.run(thin)
            out[i] = np.sort(self.phases)
        self.check_acceptance()
        return out


def sample_phases_mcmc(n: int, beta: int, rng: np.random.Generator) -> np.ndarray:
    """One independent draw: fresh chain, full burn-in, one thinned state."""
    chain = CircularBetaChain(n, beta, rng)
    if n == 1:
        return chain.phases.copy()
    return chain.sample_batch(1)[0]
