"""Closed-form reference laws for extreme spacing statistics.

Exact n = 4 minimal-spacing densities, the universal rescaled-minimum
family, Wigner surmises, the Gumbel law for rescaled maxima, and the
scaling predictions for mean extremes. Densities evaluate to zero outside
their support so they can be applied to arbitrary grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate, special

EULER_GAMMA = float(np.euler_gamma)


def _check_beta(beta: int) -> int:
    if beta not in (0, 1, 2):
        raise ValueError(f"beta must be 0, 1 or 2, got {beta}")
    return beta


@dataclass(frozen=True)
class RescaleConstants:
    """Constants of the universal minimum rescaling x = A_beta n^(1/(1+beta)) s.

    A_0 and A_1 are 1 (spacings are already unit mean); A_2 = (pi/3)^(2/3),
    so A_2 cubed is pi^2/9. gamma_euler centers the Gumbel law.
    """

    a_beta: tuple[float, float, float] = (1.0, 1.0, (np.pi / 3.0) ** (2.0 / 3.0))
    gamma_euler: float = EULER_GAMMA

    def a(self, beta: int) -> float:
        _check_beta(beta)
        return self.a_beta[beta]


DEFAULT_CONSTANTS = RescaleConstants()


# --------------------------------------------------------------------------
# exact minimal-spacing densities at n = 4


def pdf_min_cue2x2(s):
    """Minimal-spacing density for the tensor product of two CUE(2) factors."""
    s = np.asarray(s, dtype=float)
    a = np.pi * s
    val = (
        2.0 * np.pi * (1.0 - s) * (4.0 - np.cos(a / 2.0))
        - 3.0 * np.sin(a / 2.0)
        + 8.0 * np.sin(a)
        - 3.0 * np.sin(3.0 * a / 2.0)
    ) / (4.0 * np.pi)
    return np.where((s >= 0.0) & (s <= 1.0), val, 0.0)


def pdf_min_cue4(s):
    """Minimal-spacing density for CUE(4)."""
    s = np.asarray(s, dtype=float)
    q = 1.0 - s
    a = np.pi * s
    bracket = (
        666.0
        + 720.0 * np.pi**2 * q**2
        + 36.0 * (11.0 + 16.0 * np.pi**2 * q**2) * np.cos(a / 2.0)
        + 18.0 * (8.0 * np.pi**2 * q**2 - 13.0) * np.cos(a)
        - 100.0 * np.cos(3.0 * a / 2.0)
        - 608.0 * np.cos(2.0 * a)
        - 380.0 * np.cos(5.0 * a / 2.0)
        + 234.0 * np.cos(3.0 * a)
        + 74.0 * np.cos(7.0 * a / 2.0)
        - 58.0 * np.cos(4.0 * a)
        + 10.0 * np.cos(9.0 * a / 2.0)
        + 24.0 * np.pi * q * (
            60.0 * np.sin(a / 2.0)
            + 63.0 * np.sin(a)
            + 22.0 * np.sin(3.0 * a / 2.0)
            + 2.0 * np.sin(2.0 * a)
            - 4.0 * np.sin(5.0 * a / 2.0)
        )
    )
    val = np.sin(a / 4.0) ** 2 * bracket / (72.0 * np.pi**2)
    # the bracket cancels to ~1e-16 at s=1 and can land barely below zero
    val = np.maximum(val, 0.0)
    return np.where((s >= 0.0) & (s <= 1.0), val, 0.0)


def pdf_min_cpe4(s):
    """Minimal-spacing density for four independent uniform phases: 3(1-s)^2."""
    s = np.asarray(s, dtype=float)
    return np.where((s >= 0.0) & (s <= 1.0), 3.0 * (1.0 - s) ** 2, 0.0)


def tail_min_cpe(t, n: int):
    """P(s_min > t) for n independent uniform phases: (1-t)^(n-1) on [0, 1]."""
    if n < 2:
        raise ValueError(f"need at least 2 phases for a spacing tail, got n={n}")
    t = np.asarray(t, dtype=float)
    return np.where(t < 0.0, 1.0, np.where(t > 1.0, 0.0, (1.0 - t) ** (n - 1)))


# --------------------------------------------------------------------------
# universal rescaled-minimum family


def pdf_xmin(x, beta: int):
    """Density of x_min = A_beta * n^(1/(1+beta)) * s_min in the large-n limit:
    (beta+1) x^beta exp(-x^(beta+1))."""
    _check_beta(beta)
    x = np.asarray(x, dtype=float)
    xp = np.where(x > 0.0, x, 0.0)
    val = (beta + 1.0) * xp**beta * np.exp(-(xp ** (beta + 1.0)))
    return np.where(x >= 0.0, val, 0.0)


def cdf_xmin(x, beta: int):
    """CDF of the rescaled minimum: 1 - exp(-x^(beta+1))."""
    _check_beta(beta)
    x = np.asarray(x, dtype=float)
    xp = np.where(x > 0.0, x, 0.0)
    return np.where(x >= 0.0, 1.0 - np.exp(-(xp ** (beta + 1.0))), 0.0)


def pdf_smin(s, n: int, beta: int, consts: RescaleConstants = DEFAULT_CONSTANTS):
    """Large-n minimal-spacing density in the raw variable s, the pushforward
    of pdf_xmin through s = x / (A_beta * n^(1/(1+beta)))."""
    _check_beta(beta)
    if n < 1:
        raise ValueError(f"system size must be at least 1, got {n}")
    scale = consts.a(beta) * float(n) ** (1.0 / (1.0 + beta))
    s = np.asarray(s, dtype=float)
    return pdf_xmin(scale * s, beta) * scale


# --------------------------------------------------------------------------
# nearest-neighbor surmises and the exponential law


def wigner_coe(s):
    """Wigner surmise with linear repulsion: (pi/2) s exp(-pi s^2 / 4)."""
    s = np.asarray(s, dtype=float)
    return np.where(s >= 0.0, (np.pi / 2.0) * s * np.exp(-np.pi * s**2 / 4.0), 0.0)


def wigner_coe_cdf(s):
    s = np.asarray(s, dtype=float)
    return np.where(s >= 0.0, 1.0 - np.exp(-np.pi * s**2 / 4.0), 0.0)


def wigner_cue(s):
    """Wigner surmise with quadratic repulsion: (32/pi^2) s^2 exp(-4 s^2 / pi)."""
    s = np.asarray(s, dtype=float)
    return np.where(s >= 0.0, (32.0 / np.pi**2) * s**2 * np.exp(-4.0 * s**2 / np.pi), 0.0)


def wigner_cue_cdf(s):
    s = np.asarray(s, dtype=float)
    sp = np.where(s > 0.0, s, 0.0)
    val = special.erf(2.0 * sp / np.sqrt(np.pi)) - (4.0 * sp / np.pi) * np.exp(-4.0 * sp**2 / np.pi)
    return np.where(s >= 0.0, val, 0.0)


def pdf_exp_unit(y):
    """Unit-mean exponential density, the no-repulsion spacing law."""
    y = np.asarray(y, dtype=float)
    return np.where(y >= 0.0, np.exp(-np.where(y > 0.0, y, 0.0)), 0.0)


def cdf_exp_unit(y):
    y = np.asarray(y, dtype=float)
    return np.where(y >= 0.0, 1.0 - np.exp(-np.where(y > 0.0, y, 0.0)), 0.0)


# --------------------------------------------------------------------------
# Gumbel law for the rescaled maximum


def gumbel_pdf(z):
    """Zero-mean Gumbel density exp(-(z+g) - exp(-(z+g))), g Euler's constant.

    Variance is pi^2/6, matching the z_max = pi/sqrt(6 Var) (s - <s>)
    rescaling convention.
    """
    z = np.asarray(z, dtype=float)
    w = z + EULER_GAMMA
    with np.errstate(over="ignore"):
        return np.exp(-w - np.exp(-w))


def gumbel_cdf(z):
    z = np.asarray(z, dtype=float)
    with np.errstate(over="ignore"):
        return np.exp(-np.exp(-(z + EULER_GAMMA)))


# --------------------------------------------------------------------------
# scaling predictions for mean extremes


def mean_smin_prediction(n: int, beta: int) -> float:
    """Leading-order mean minimal spacing: n^(-1/(1+beta))."""
    _check_beta(beta)
    if n < 1:
        raise ValueError(f"system size must be at least 1, got {n}")
    return float(n) ** (-1.0 / (1.0 + beta))


def mean_smax_prediction(n: int, beta: int) -> float:
    """Leading-order mean maximal spacing.

    beta = 0: ln n; beta = 1: sqrt((4/pi) ln n); beta = 2: sqrt((pi/4) ln n).
    """
    _check_beta(beta)
    if n < 2:
        raise ValueError(f"maximum scaling needs n >= 2, got {n}")
    ln = np.log(float(n))
    if beta == 0:
        return float(ln)
    if beta == 1:
        return float(np.sqrt(4.0 / np.pi * ln))
    return float(np.sqrt(np.pi / 4.0 * ln))


# --------------------------------------------------------------------------
# quadrature helpers and the named-density registry


def integral_of(pdf: Callable, lo: float, hi: float) -> float:
    """Adaptive quadrature of a density over [lo, hi]."""
    mass, _ = integrate.quad(pdf, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200)
    return mass


def mean_of(pdf: Callable, lo: float, hi: float) -> float:
    """First moment of a density over [lo, hi] by adaptive quadrature."""
    m, _ = integrate.quad(lambda t: t * pdf(t), lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200)
    return m


def cdf_from_pdf(pdf: Callable, lo: float, hi: float, n_grid: int = 8193) -> Callable:
    """Tabulated CDF of a density on [lo, hi], linear interpolation between knots.

    For an unbounded upper end, pass a truncation point where the tail mass
    is negligible for the intended comparison.
    """
    if not hi > lo:
        raise ValueError(f"need hi > lo, got [{lo}, {hi}]")
    xs = np.linspace(lo, hi, n_grid)
    cs = integrate.cumulative_simpson(pdf(xs), x=xs, initial=0.0)

    def cdf(t):
        t = np.asarray(t, dtype=float)
        return np.interp(t, xs, cs, left=0.0, right=cs[-1])

    return cdf


@dataclass(frozen=True)
class RefDensity:
    """A named reference law: density, matching CDF, and support."""

    name: str
    pdf: Callable = field(repr=False)
    cdf: Callable = field(repr=False)
    support: tuple[float, float]
    description: str


def _registry() -> dict[str, RefDensity]:
    entries = [
        RefDensity("min-cue2x2", pdf_min_cue2x2, cdf_from_pdf(pdf_min_cue2x2, 0.0, 1.0),
                   (0.0, 1.0), "minimal spacing of CUE(2) x CUE(2), exact at n=4"),
        RefDensity("min-cue4", pdf_min_cue4, cdf_from_pdf(pdf_min_cue4, 0.0, 1.0),
                   (0.0, 1.0), "minimal spacing of CUE(4), exact"),
        RefDensity("min-cpe4", pdf_min_cpe4, cdf_from_pdf(pdf_min_cpe4, 0.0, 1.0),
                   (0.0, 1.0), "minimal spacing of 4 independent uniform phases, exact"),
        RefDensity("xmin-beta0", lambda x: pdf_xmin(x, 0), lambda x: cdf_xmin(x, 0),
                   (0.0, np.inf), "rescaled minimum, no repulsion"),
        RefDensity("xmin-beta1", lambda x: pdf_xmin(x, 1), lambda x: cdf_xmin(x, 1),
                   (0.0, np.inf), "rescaled minimum, linear repulsion"),
        RefDensity("xmin-beta2", lambda x: pdf_xmin(x, 2), lambda x: cdf_xmin(x, 2),
                   (0.0, np.inf), "rescaled minimum, quadratic repulsion"),
        RefDensity("wigner-coe", wigner_coe, wigner_coe_cdf,
                   (0.0, np.inf), "nearest-neighbor surmise, linear repulsion"),
        RefDensity("wigner-cue", wigner_cue, wigner_cue_cdf,
                   (0.0, np.inf), "nearest-neighbor surmise, quadratic repulsion"),
        RefDensity("exp", pdf_exp_unit, cdf_exp_unit,
                   (0.0, np.inf), "unit-mean exponential spacing law"),
        RefDensity("gumbel", gumbel_pdf, gumbel_cdf,
                   (-np.inf, np.inf), "zero-mean Gumbel law for the rescaled maximum"),
    ]
    return {e.name: e for e in entries}


_REGISTRY: dict[str, RefDensity] | None = None


def reference_names() -> list[str]:
    return sorted(_get_registry())


def get_reference(name: str) -> RefDensity:
    """Look up a reference law by its stable name."""
    reg = _get_registry()
    if name not in reg:
        raise ValueError(f"unknown reference density {name!r}; known: {', '.join(sorted(reg))}")
    return reg[name]


def _get_registry() -> dict[str, RefDensity]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _registry()
    return _REGISTRY
