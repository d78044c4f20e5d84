"""Experiment orchestration: seeded Monte Carlo batches, scaling sweeps,
and the figure datasets consumed by the plotting scripts.

A batch is a pure function of its config: rep i draws its spectrum from the
substream SeedSpec(batch_master, i), where batch_master folds the ensemble
identity into the master seed. Work is split into contiguous rep ranges, one
per worker, and merged in range order, so results are identical for any
worker count. Nothing is written to disk until a dataset is complete.
"""

from __future__ import annotations

import dataclasses
import json
import os
import time
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import refdist, stats
from .ensembles import EnsembleSpec, sample_ensemble
from .seeding import SeedSpec, derive_master
from .spacings import compute_spacings

STATISTICS = ("min", "max", "mth", "nn")
RESCALINGS = ("none", "xmin", "ymin", "zmax")
SCALING_KINDS = ("cpe", "coe", "cue", "qubits", "qunits")
FIGURE_IDS = ("fig1", "fig2", "fig3a", "fig3b", "fig4",
              "fig5a", "fig5b", "fig6", "fig7", "fig8")
SCALES = ("desk", "paper")

HISTOGRAM_SCHEMA = "# gaps-histogram v1"
REFCURVE_SCHEMA = "# gaps-refcurve v1"
POINTS_SCHEMA = "# gaps-points v1"
FITLINE_SCHEMA = "# gaps-fitline v1"
SCALING_SCHEMA = "# gaps-scaling v1"
MANIFEST_SCHEMA = "gaps-figure-manifest v1"

# Domain tags keeping distinct ensembles on distinct substreams even when
# they share a master seed.
_KIND_TAG = {"cpe": 1, "coe": 2, "cue": 3, "tensor_cue": 4}

_ZMAX_RANGE = (-4.0, 8.0)


# --------------------------------------------------------------------------
# configs and results


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo batch: ensemble, rep count, seed, and what to record."""

    ensemble: EnsembleSpec
    reps: int
    master_seed: int
    statistic: str = "min"
    m: int = 0
    rescaling: str = "none"
    bins: int = 40
    out_prefix: str | None = None

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise ValueError(f"reps must be at least 1, got {self.reps}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in an unsigned 64-bit word")
        if self.statistic not in STATISTICS:
            raise ValueError(f"unknown statistic {self.statistic!r}; known: {STATISTICS}")
        if self.statistic == "mth":
            if not 1 <= self.m <= self.ensemble.size:
                raise ValueError(
                    f"m must lie in [1, {self.ensemble.size}], got {self.m}")
        elif self.m != 0:
            raise ValueError("m is only meaningful for the mth statistic")
        if self.rescaling not in RESCALINGS:
            raise ValueError(f"unknown rescaling {self.rescaling!r}; known: {RESCALINGS}")
        if self.rescaling == "xmin":
            if self.statistic != "min":
                raise ValueError("xmin rescaling applies to the min statistic")
            if self.ensemble.kind == "tensor_cue":
                raise ValueError("xmin rescaling needs a defined beta; "
                                 "tensor products have none")
        if self.rescaling == "ymin" and self.statistic != "min":
            raise ValueError("ymin rescaling applies to the min statistic")
        if self.rescaling == "zmax":
            if self.statistic != "max":
                raise ValueError("zmax rescaling applies to the max statistic")
            if self.reps < 2:
                raise ValueError("zmax rescaling needs at least 2 reps")
        if self.bins < 1:
            raise ValueError(f"bins must be at least 1, got {self.bins}")

    def statistic_label(self) -> str:
        if self.statistic == "mth":
            return f"mth:{self.m}"
        return self.statistic

    def to_dict(self) -> dict:
        """JSON-ready echo of the config (output paths excluded)."""
        return {
            "ensemble": {
                "kind": self.ensemble.kind,
                "n": self.ensemble.n,
                "factors": list(self.ensemble.factors),
            },
            "reps": self.reps,
            "master_seed": self.master_seed,
            "statistic": self.statistic_label(),
            "rescaling": self.rescaling,
            "bins": self.bins,
        }


@dataclasses.dataclass(frozen=True, eq=False)
class ExperimentResult:
    """Batch output. Everything except elapsed_s is a pure function of config."""

    config: ExperimentConfig
    samples: np.ndarray
    mean: float
    variance: float | None
    count: int
    histogram: stats.Histogram
    fit: stats.FitResult | None
    elapsed_s: float


@dataclasses.dataclass(frozen=True, eq=False)
class ScalingResult:
    """Mean extremal spacings over a size sweep, with the scaling fits.

    params holds the swept parameter (matrix size, or k for qubit systems,
    or the factor size n for qunit pairs); sizes holds the total spectrum
    sizes N used as the fit abscissa.
    """

    kind: str
    params: tuple[int, ...]
    sizes: tuple[int, ...]
    mean_min: np.ndarray
    mean_max: np.ndarray
    min_fit: stats.FitResult
    max_fit: stats.FitResult
    max_fit_variable: str
    reps: int
    master_seed: int
    elapsed_s: float


# --------------------------------------------------------------------------
# batch execution


def _batch_master(ensemble: EnsembleSpec, master_seed: int) -> int:
    if ensemble.kind == "tensor_cue":
        tags = (_KIND_TAG[ensemble.kind], len(ensemble.factors), *ensemble.factors)
    else:
        tags = (_KIND_TAG[ensemble.kind], ensemble.n)
    return derive_master(master_seed, *tags)


def _stat_chunk(ensemble: EnsembleSpec, batch_master: int, statistic: str, m: int,
                start: int, stop: int) -> np.ndarray:
    """Statistic values for reps [start, stop), one spectrum per rep."""
    if statistic == "nn":
        parts = []
        for i in range(start, stop):
            spacing_set = compute_spacings(sample_ensemble(ensemble, SeedSpec(batch_master, i)))
            parts.append(spacing_set.raw)
        return np.concatenate(parts) if parts else np.empty(0)
    out = np.empty(stop - start)
    for i in range(start, stop):
        spacing_set = compute_spacings(sample_ensemble(ensemble, SeedSpec(batch_master, i)))
        if statistic == "min":
            out[i - start] = spacing_set.ordered[0]
        elif statistic == "max":
            out[i - start] = spacing_set.ordered[-1]
        else:
            out[i - start] = spacing_set.ordered[m - 1]
    return out


def _minmax_chunk(ensemble: EnsembleSpec, batch_master: int,
                  start: int, stop: int) -> np.ndarray:
    """(s_min, s_max) rows for reps [start, stop) from a single sampling pass."""
    out = np.empty((stop - start, 2))
    for i in range(start, stop):
        spacing_set = compute_spacings(sample_ensemble(ensemble, SeedSpec(batch_master, i)))
        out[i - start, 0] = spacing_set.ordered[0]
        out[i - start, 1] = spacing_set.ordered[-1]
    return out


def resolve_workers(reps: int) -> int:
    """Worker count: GAPS_THREADS if set, else the CPU count, capped by reps."""
    raw = os.environ.get("GAPS_THREADS")
    if raw is not None:
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(f"GAPS_THREADS must be an integer, got {raw!r}") from None
        if workers < 1:
            raise ValueError(f"GAPS_THREADS must be at least 1, got {workers}")
    else:
        workers = os.cpu_count() or 1
    return max(1, min(workers, reps))


def _chunk_ranges(reps: int, workers: int) -> list[tuple[int, int]]:
    base, extra = divmod(reps, workers)
    ranges = []
    start = 0
    for w in range(workers):
        stop = start + base + (1 if w < extra else 0)
        if stop > start:
            ranges.append((start, stop))
        start = stop
    return ranges


def _run_chunked(worker: Callable, args: tuple, reps: int) -> list[np.ndarray]:
    """Run worker(*args, start, stop) over a static partition of rep indices.

    Merging in range order makes the output independent of the worker count.
    """
    workers = resolve_workers(reps)
    ranges = _chunk_ranges(reps, workers)
    if workers == 1:
        return [worker(*args, start, stop) for start, stop in ranges]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(worker, *args, start, stop) for start, stop in ranges]
        return [f.result() for f in futures]


def _apply_rescaling(config: ExperimentConfig, samples: np.ndarray) -> np.ndarray:
    if config.rescaling == "xmin":
        return stats.rescale_xmin(samples, config.ensemble.size, config.ensemble.beta)
    if config.rescaling == "ymin":
        return stats.rescale_ymin(samples)
    if config.rescaling == "zmax":
        return stats.rescale_zmax(samples)
    return samples


def default_edges(rescaling: str, samples: np.ndarray, bins: int) -> np.ndarray:
    """Bin edges: fixed [-4, 8) for zmax, else [0, just past the sample max)."""
    if rescaling == "zmax":
        return np.linspace(_ZMAX_RANGE[0], _ZMAX_RANGE[1], bins + 1)
    top = float(samples.max()) if samples.size else 0.0
    hi = np.nextafter(top, np.inf) if top > 0.0 else 1.0
    return np.linspace(0.0, hi, bins + 1)


def run_batch(config: ExperimentConfig) -> ExperimentResult:
    """Sample the configured statistic over reps independent spectra."""
    t0 = time.perf_counter()
    batch_master = _batch_master(config.ensemble, config.master_seed)
    chunks = _run_chunked(
        _stat_chunk,
        (config.ensemble, batch_master, config.statistic, config.m),
        config.reps,
    )
    samples = np.concatenate(chunks)
    samples = _apply_rescaling(config, samples)
    mean = float(samples.mean())
    variance = float(samples.var(ddof=1)) if samples.size > 1 else None
    hist = stats.histogram(samples, default_edges(config.rescaling, samples, config.bins))
    return ExperimentResult(
        config=config,
        samples=samples,
        mean=mean,
        variance=variance,
        count=config.reps,
        histogram=hist,
        fit=None,
        elapsed_s=time.perf_counter() - t0,
    )


# --------------------------------------------------------------------------
# scaling sweeps


def ensemble_for(kind: str, param: int) -> EnsembleSpec:
    """Map a sweep kind and its swept parameter to an ensemble.

    qubits: param = k, a product of k size-2 factors; qunits: param = n,
    a product of two size-n factors; otherwise param = matrix size.
    """
    if kind == "qubits":
        return EnsembleSpec.tensor_cue((2,) * param)
    if kind == "qunits":
        return EnsembleSpec.tensor_cue((param, param))
    if kind == "cpe":
        return EnsembleSpec.cpe(param)
    if kind == "coe":
        return EnsembleSpec.coe(param)
    if kind == "cue":
        return EnsembleSpec.cue(param)
    raise ValueError(f"unknown sweep kind {kind!r}; known: {SCALING_KINDS}")


def fit_scaling_table(kind: str, sizes, mean_min, mean_max):
    """Scaling fits from a (N, mean_min, mean_max) table.

    The minimum follows a power law, fit on log-log axes. The maximum grows
    like sqrt(ln N) under repulsion, so its square is fit against ln N for
    coe/cue; without repulsion the mean itself is linear in ln N.
    """
    sizes = np.asarray(sizes, dtype=float)
    min_fit = stats.fit_loglog(sizes, mean_min)
    if kind in ("coe", "cue"):
        max_fit = stats.fit_loglinear(sizes, np.asarray(mean_max, dtype=float) ** 2)
        max_variable = "mean_smax_sq"
    else:
        max_fit = stats.fit_loglinear(sizes, mean_max)
        max_variable = "mean_smax"
    return min_fit, max_fit, max_variable


def run_scaling_sweep(kind: str, params: Sequence[int], reps: int,
                      master_seed: int) -> ScalingResult:
    """Mean extremal spacings per size, plus the min/max scaling fits.

    Both extremes of a rep come from the same spectrum, and the substreams
    match what run_batch would use for the same ensemble and seed.
    """
    if kind not in SCALING_KINDS:
        raise ValueError(f"unknown sweep kind {kind!r}; known: {SCALING_KINDS}")
    params = tuple(int(p) for p in params)
    if len(params) < 2:
        raise ValueError("a scaling sweep needs at least 2 sizes")
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    t0 = time.perf_counter()
    sizes = []
    mean_min = np.empty(len(params))
    mean_max = np.empty(len(params))
    for j, param in enumerate(params):
        ensemble = ensemble_for(kind, param)
        batch_master = _batch_master(ensemble, master_seed)
        rows = np.concatenate(
            _run_chunked(_minmax_chunk, (ensemble, batch_master), reps))
        sizes.append(ensemble.size)
        mean_min[j] = rows[:, 0].mean()
        mean_max[j] = rows[:, 1].mean()
    min_fit, max_fit, max_variable = fit_scaling_table(kind, sizes, mean_min, mean_max)
    return ScalingResult(
        kind=kind,
        params=params,
        sizes=tuple(sizes),
        mean_min=mean_min,
        mean_max=mean_max,
        min_fit=min_fit,
        max_fit=max_fit,
        max_fit_variable=max_variable,
        reps=reps,
        master_seed=master_seed,
        elapsed_s=time.perf_counter() - t0,
    )


# --------------------------------------------------------------------------
# serialization: CSV datasets, JSON summaries, figure manifests


def _fmt(value: float) -> str:
    """Shortest round-trip decimal form; plain Python float repr."""
    return repr(float(value))


def histogram_csv(hist: stats.Histogram) -> str:
    lines = [HISTOGRAM_SCHEMA, "bin_left,bin_right,density,count"]
    for left, right, dens, count in zip(hist.edges[:-1], hist.edges[1:],
                                        hist.density, hist.counts):
        lines.append(f"{_fmt(left)},{_fmt(right)},{_fmt(dens)},{int(count)}")
    return "\n".join(lines) + "\n"


def refcurve_csv(xs, pdf_values) -> str:
    lines = [REFCURVE_SCHEMA, "x,pdf"]
    for x, p in zip(xs, pdf_values):
        lines.append(f"{_fmt(x)},{_fmt(p)}")
    return "\n".join(lines) + "\n"


def _xy_csv(schema: str, xs, ys) -> str:
    lines = [schema, "x,y"]
    for x, y in zip(xs, ys):
        lines.append(f"{_fmt(x)},{_fmt(y)}")
    return "\n".join(lines) + "\n"


def points_csv(xs, ys) -> str:
    return _xy_csv(POINTS_SCHEMA, xs, ys)


def fitline_csv(xs, ys) -> str:
    return _xy_csv(FITLINE_SCHEMA, xs, ys)


def scaling_csv(result: ScalingResult) -> str:
    lines = [SCALING_SCHEMA, "n,mean_min,mean_max"]
    for n, lo, hi in zip(result.sizes, result.mean_min, result.mean_max):
        lines.append(f"{int(n)},{_fmt(lo)},{_fmt(hi)}")
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fit_dict(fit: stats.FitResult) -> dict:
    return {"slope": fit.slope, "intercept": fit.intercept,
            "residual_rms": fit.residual_rms}


def summary_json(result: ExperimentResult) -> str:
    """The batch summary: {config, mean, variance, n, fit?}."""
    payload = {
        "config": result.config.to_dict(),
        "mean": result.mean,
        "variance": result.variance,
        "n": result.count,
    }
    if result.fit is not None:
        payload["fit"] = _fit_dict(result.fit)
    return _json_text(payload)


def scaling_summary_json(result: ScalingResult) -> str:
    payload = {
        "schema": "gaps-scaling-summary v1",
        "config": {
            "kind": result.kind,
            "params": list(result.params),
            "sizes": list(result.sizes),
            "reps": result.reps,
            "master_seed": result.master_seed,
        },
        "n": len(result.sizes),
        "min_fit": _fit_dict(result.min_fit),
        "max_fit": _fit_dict(result.max_fit),
        "max_fit_variable": result.max_fit_variable,
    }
    return _json_text(payload)


MANIFEST_AXES = ("linear", "log-log", "log-linear")
MANIFEST_ROLES = ("histogram", "reference", "fitline")


def manifest_json(figure_id: str, axes: str, series: list[tuple[str, str, str]]) -> str:
    """Figure manifest: axes is linear, log-log, or log-linear; each series
    is (csv path relative to the manifest, role, label)."""
    if axes not in MANIFEST_AXES:
        raise ValueError(f"axes must be one of {MANIFEST_AXES}, got {axes!r}")
    for _, role, _ in series:
        if role not in MANIFEST_ROLES:
            raise ValueError(f"series role must be one of {MANIFEST_ROLES}, got {role!r}")
    payload = {
        "schema": MANIFEST_SCHEMA,
        "figure": figure_id,
        "axes": axes,
        "series": [{"path": path, "role": role, "label": label}
                   for path, role, label in series],
    }
    return _json_text(payload)


def write_files(out_dir: str | Path, files: Sequence[tuple[str, str]]) -> list[Path]:
    """Write fully built (name, text) pairs under out_dir; nothing partial."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in files:
        path = root / name
        path.write_text(text)
        paths.append(path)
    return paths


# --------------------------------------------------------------------------
# figure datasets
#
# Every builder assembles its complete (name, text) list before anything is
# written. The desk scale trims rep counts and the largest systems so a full
# pass stays under roughly half an hour on one laptop core; paper scale
# restores the full parameters and can take hours for the big sweeps.


def _pow2(lo_exp: int, hi_exp: int) -> tuple[int, ...]:
    return tuple(1 << j for j in range(lo_exp, hi_exp + 1))


_QUNIT_PARAMS = {
    "desk": (2, 3, 4, 6, 8, 11, 16, 23, 32),
    "paper": (2, 3, 4, 6, 8, 11, 16, 23, 32, 45, 64),
}

_GRID_POINTS = 513


def _power_fitline(fit: stats.FitResult, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    grid = np.geomspace(lo, hi, 64)
    return grid, np.exp(fit.intercept) * grid**fit.slope


def _loglinear_fitline(fit: stats.FitResult, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    grid = np.geomspace(lo, hi, 64)
    return grid, fit.slope * np.log(grid) + fit.intercept


def _build_fig1(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Minimal-spacing histograms at N=4 against the three exact densities."""
    reps = 1 << 14
    systems = [
        ("cpe4", EnsembleSpec.cpe(4), "min-cpe4", "CPE(4)"),
        ("cue2x2", EnsembleSpec.tensor_cue((2, 2)), "min-cue2x2", "CUE(2) x CUE(2)"),
        ("cue4", EnsembleSpec.cue(4), "min-cue4", "CUE(4)"),
    ]
    edges = np.linspace(0.0, 1.0, 41)
    grid = np.linspace(0.0, 1.0, _GRID_POINTS)
    files = []
    series = []
    for key, ensemble, _, label in systems:
        config = ExperimentConfig(ensemble=ensemble, reps=reps,
                                  master_seed=master_seed, statistic="min")
        result = run_batch(config)
        hist = stats.histogram(result.samples, edges)
        files.append((f"fig1_{key}_hist.csv", histogram_csv(hist)))
        files.append((f"fig1_{key}_summary.json", summary_json(result)))
        series.append((f"fig1_{key}_hist.csv", "histogram", label))
    for key, _, ref_name, label in systems:
        ref = refdist.get_reference(ref_name)
        files.append((f"fig1_{key}_ref.csv", refcurve_csv(grid, ref.pdf(grid))))
        series.append((f"fig1_{key}_ref.csv", "reference", f"{label} exact"))
    files.append(("fig1.manifest.json", manifest_json("fig1", "linear", series)))
    return files


def _scaling_series(figure_id: str, kind: str, sweep: ScalingResult,
                    which: str) -> tuple[list[tuple[str, str]], list[tuple[str, str, str]]]:
    """Points and fit line for one sweep extreme, in plot coordinates."""
    lo, hi = sweep.sizes[0], sweep.sizes[-1]
    if which == "min":
        ys = sweep.mean_min
        fit = sweep.min_fit
        grid, line = _power_fitline(fit, lo, hi)
        label = "min"
    else:
        fit = sweep.max_fit
        if sweep.max_fit_variable == "mean_smax_sq":
            ys = sweep.mean_max**2
        else:
            ys = sweep.mean_max
        grid, line = _loglinear_fitline(fit, lo, hi)
        label = "max"
    stem = f"{figure_id}_{kind}_{which}"
    files = [
        (f"{stem}_points.csv", points_csv(sweep.sizes, ys)),
        (f"{stem}_fit.csv", fitline_csv(grid, line)),
    ]
    series = [
        (f"{stem}_points.csv", "histogram", f"{kind} {label}"),
        (f"{stem}_fit.csv", "fitline", f"{kind} {label} slope {fit.slope:.2f}"),
    ]
    return files, series


def _build_fig2(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Mean minimal spacing vs matrix size, log-log, with power-law fits."""
    reps = (1 << 13) if scale == "desk" else (1 << 14)
    sizes = _pow2(1, 7)
    files = []
    series = []
    for kind in ("cpe", "coe", "cue"):
        sweep = run_scaling_sweep(kind, sizes, reps, master_seed)
        part_files, part_series = _scaling_series("fig2", kind, sweep, "min")
        files.extend(part_files)
        files.append((f"fig2_{kind}_table.csv", scaling_csv(sweep)))
        files.append((f"fig2_{kind}_scaling.json", scaling_summary_json(sweep)))
        series.extend(part_series)
    files.append(("fig2.manifest.json", manifest_json("fig2", "log-log", series)))
    return files


def _build_fig3a(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Squared mean maximal spacing vs ln N for the repulsive ensembles."""
    if scale == "desk":
        reps, sizes = 1 << 11, _pow2(1, 8)
    else:
        reps, sizes = 1 << 13, _pow2(1, 10)
    files = []
    series = []
    for kind in ("coe", "cue"):
        sweep = run_scaling_sweep(kind, sizes, reps, master_seed)
        part_files, part_series = _scaling_series("fig3a", kind, sweep, "max")
        files.extend(part_files)
        files.append((f"fig3a_{kind}_table.csv", scaling_csv(sweep)))
        files.append((f"fig3a_{kind}_scaling.json", scaling_summary_json(sweep)))
        series.extend(part_series)
    files.append(("fig3a.manifest.json", manifest_json("fig3a", "log-linear", series)))
    return files


def _build_fig3b(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Mean maximal spacing vs ln N without repulsion (harmonic growth)."""
    reps = (1 << 13) if scale == "desk" else (1 << 14)
    sweep = run_scaling_sweep("cpe", _pow2(1, 10), reps, master_seed)
    files, series = _scaling_series("fig3b", "cpe", sweep, "max")
    files.append(("fig3b_cpe_table.csv", scaling_csv(sweep)))
    files.append(("fig3b_cpe_scaling.json", scaling_summary_json(sweep)))
    files.append(("fig3b.manifest.json", manifest_json("fig3b", "log-linear", series)))
    return files


def _build_fig4(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Minimal-spacing laws at N=100, raw and in the universal variable."""
    reps = (1 << 15) if scale == "desk" else (1 << 17)
    n = 100
    systems = [
        ("cpe", EnsembleSpec.cpe(n), 0),
        ("coe", EnsembleSpec.coe(n), 1),
        ("cue", EnsembleSpec.cue(n), 2),
    ]
    x_edges = np.linspace(0.0, 6.0, 61)
    x_grid = np.linspace(0.0, 6.0, _GRID_POINTS)
    files = []
    raw_series = []
    x_series = []
    for key, ensemble, beta in systems:
        config = ExperimentConfig(ensemble=ensemble, reps=reps,
                                  master_seed=master_seed, statistic="min")
        result = run_batch(config)
        raw_hist = result.histogram
        files.append((f"fig4_{key}_smin_hist.csv", histogram_csv(raw_hist)))
        files.append((f"fig4_{key}_smin_summary.json", summary_json(result)))
        raw_series.append((f"fig4_{key}_smin_hist.csv", "histogram", key.upper()))
        s_grid = np.linspace(0.0, raw_hist.edges[-1], _GRID_POINTS)
        files.append((f"fig4_{key}_smin_ref.csv",
                      refcurve_csv(s_grid, refdist.pdf_smin(s_grid, n, beta))))
        raw_series.append((f"fig4_{key}_smin_ref.csv", "reference",
                           f"{key.upper()} limit law"))
        x = stats.rescale_xmin(result.samples, n, beta)
        x_hist = stats.histogram(x, x_edges)
        files.append((f"fig4_{key}_xmin_hist.csv", histogram_csv(x_hist)))
        x_config = dataclasses.replace(config, rescaling="xmin", bins=60)
        x_payload = {
            "config": x_config.to_dict(),
            "mean": float(x.mean()),
            "variance": float(x.var(ddof=1)),
            "n": reps,
        }
        files.append((f"fig4_{key}_xmin_summary.json", _json_text(x_payload)))
        x_series.append((f"fig4_{key}_xmin_hist.csv", "histogram", key.upper()))
    for key, _, beta in systems:
        files.append((f"fig4_{key}_xmin_ref.csv",
                      refcurve_csv(x_grid, refdist.pdf_xmin(x_grid, beta))))
        x_series.append((f"fig4_{key}_xmin_ref.csv", "reference", f"beta={beta}"))
    files.append(("fig4.manifest.json", manifest_json("fig4", "linear", x_series)))
    files.append(("fig4_raw.manifest.json", manifest_json("fig4", "linear", raw_series)))
    return files


def _build_fig5(figure_id: str, kind: str, params: Sequence[int], scale: str,
                master_seed: int) -> list[tuple[str, str]]:
    reps = (1 << 12) if scale == "desk" else (1 << 14)
    sweep = run_scaling_sweep(kind, params, reps, master_seed)
    files = []
    series = []
    for which in ("min", "max"):
        part_files, part_series = _scaling_series(figure_id, kind, sweep, which)
        files.extend(part_files)
        series.extend(part_series)
    files.append((f"{figure_id}_{kind}_table.csv", scaling_csv(sweep)))
    files.append((f"{figure_id}_{kind}_scaling.json", scaling_summary_json(sweep)))
    files.append((f"{figure_id}.manifest.json",
                  manifest_json(figure_id, "log-log", series)))
    return files


def _build_fig5a(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Extremal spacing scaling for products of k two-level factors."""
    return _build_fig5("fig5a", "qubits", tuple(range(2, 15)), scale, master_seed)


def _build_fig5b(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Extremal spacing scaling for products of two size-n factors."""
    return _build_fig5("fig5b", "qunits", _QUNIT_PARAMS[scale], scale, master_seed)


def _build_fig6(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Mean-rescaled minimal spacing for U(n) x U(n): the drift from the
    exact 2x2 law toward the exponential law of independent phases."""
    reps = 1 << 13
    edges = np.linspace(0.0, 6.0, 49)
    files = []
    series = []
    for n in (2, 3, 8):
        config = ExperimentConfig(ensemble=EnsembleSpec.tensor_cue((n, n)),
                                  reps=reps, master_seed=master_seed,
                                  statistic="min", rescaling="ymin", bins=48)
        result = run_batch(config)
        hist = stats.histogram(result.samples, edges)
        files.append((f"fig6_n{n}_hist.csv", histogram_csv(hist)))
        files.append((f"fig6_n{n}_summary.json", summary_json(result)))
        series.append((f"fig6_n{n}_hist.csv", "histogram", f"{n} x {n}"))
    mean_2x2 = refdist.mean_of(refdist.pdf_min_cue2x2, 0.0, 1.0)
    y_grid = np.linspace(0.0, 1.0 / mean_2x2, _GRID_POINTS)
    files.append(("fig6_cue2x2_ref.csv",
                  refcurve_csv(y_grid, mean_2x2 * refdist.pdf_min_cue2x2(mean_2x2 * y_grid))))
    series.append(("fig6_cue2x2_ref.csv", "reference", "2 x 2 exact"))
    exp_grid = np.linspace(0.0, 6.0, _GRID_POINTS)
    files.append(("fig6_exp_ref.csv",
                  refcurve_csv(exp_grid, refdist.pdf_exp_unit(exp_grid))))
    series.append(("fig6_exp_ref.csv", "reference", "exp(-y)"))
    files.append(("fig6.manifest.json", manifest_json("fig6", "linear", series)))
    return files


def _build_gumbel_figure(figure_id: str, key: str, factors: tuple[int, ...],
                         reps: int, master_seed: int, label: str) -> list[tuple[str, str]]:
    config = ExperimentConfig(ensemble=EnsembleSpec.tensor_cue(factors),
                              reps=reps, master_seed=master_seed,
                              statistic="max", rescaling="zmax", bins=60)
    result = run_batch(config)
    grid = np.linspace(_ZMAX_RANGE[0], _ZMAX_RANGE[1], _GRID_POINTS)
    files = [
        (f"{figure_id}_{key}_hist.csv", histogram_csv(result.histogram)),
        (f"{figure_id}_{key}_summary.json", summary_json(result)),
        (f"{figure_id}_gumbel_ref.csv", refcurve_csv(grid, refdist.gumbel_pdf(grid))),
        (f"{figure_id}.manifest.json", manifest_json(figure_id, "linear", [
            (f"{figure_id}_{key}_hist.csv", "histogram", label),
            (f"{figure_id}_gumbel_ref.csv", "reference", "Gumbel"),
        ])),
    ]
    return files


def _build_fig7(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Centered maximal spacing for a product of two large CUE factors."""
    if scale == "desk":
        factors, reps = (32, 32), 1 << 14
    else:
        factors, reps = (64, 64), 1 << 16
    key = f"{factors[0]}x{factors[1]}"
    return _build_gumbel_figure("fig7", key, factors, reps, master_seed,
                                f"U({factors[0]}) x U({factors[1]})")


def _build_fig8(scale: str, master_seed: int) -> list[tuple[str, str]]:
    """Centered maximal spacing for a long product of two-level factors."""
    if scale == "desk":
        k, reps = 16, 1 << 14
    else:
        k, reps = 22, 100000
    return _build_gumbel_figure("fig8", f"k{k}", (2,) * k, reps, master_seed,
                                f"{k} qubits")


_FIGURE_BUILDERS = {
    "fig1": _build_fig1,
    "fig2": _build_fig2,
    "fig3a": _build_fig3a,
    "fig3b": _build_fig3b,
    "fig4": _build_fig4,
    "fig5a": _build_fig5a,
    "fig5b": _build_fig5b,
    "fig6": _build_fig6,
    "fig7": _build_fig7,
    "fig8": _build_fig8,
}


def reproduce_figure(figure_id: str, scale: str, master_seed: int,
                     out_dir: str | Path) -> list[Path]:
    """Emit the CSV/JSON datasets and manifest(s) for one figure."""
    if figure_id not in _FIGURE_BUILDERS:
        raise ValueError(f"unknown figure id {figure_id!r}; known: {FIGURE_IDS}")
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; known: {SCALES}")
    files = _FIGURE_BUILDERS[figure_id](scale, master_seed)
    return write_files(out_dir, files)
