#!/usr/bin/env python3
"""Render one figure from a manifest written by the gaps runner.

    plot_figure.py --manifest out/fig1/fig1.manifest.json --out fig1.png

The script consumes only the published file formats: the figure manifest
and the v1 CSV schemas. It never recomputes statistics; what is in the
files is what gets drawn. Histograms appear as discrete symbols,
reference densities as solid curves, fit lines as dashed lines.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

MANIFEST_SCHEMA = "gaps-figure-manifest v1"
AXES_MODES = ("linear", "log-log", "log-linear")

CSV_COLUMNS = {
    "# gaps-histogram v1": ["bin_left", "bin_right", "density", "count"],
    "# gaps-refcurve v1": ["x", "pdf"],
    "# gaps-points v1": ["x", "y"],
    "# gaps-fitline v1": ["x", "y"],
    "# gaps-scaling v1": ["n", "mean_min", "mean_max"],
}

# which CSV schemas may appear under each series role
ROLE_SCHEMAS = {
    "histogram": ("# gaps-histogram v1", "# gaps-points v1"),
    "reference": ("# gaps-refcurve v1",),
    "fitline": ("# gaps-fitline v1",),
}

MARKERS = ("o", "s", "^", "d", "v", "*", "p", "x")


class PlotInputError(ValueError):
    """Bad or missing input file; the message names the file."""


def read_csv(path: Path) -> tuple[str, list[list[float]]]:
    """Parse one v1 CSV into (schema tag, rows of floats)."""
    try:
        text = path.read_text()
    except OSError as err:
        raise PlotInputError(f"{path}: cannot read ({err.strerror})") from None
    lines = text.splitlines()
    if not lines or lines[0] not in CSV_COLUMNS:
        raise PlotInputError(f"{path}: first line is not a known schema tag")
    schema = lines[0]
    expected = CSV_COLUMNS[schema]
    if len(lines) < 2 or lines[1].split(",") != expected:
        raise PlotInputError(
            f"{path}: expected columns {','.join(expected)} after the {schema!r} tag")
    rows = []
    for i, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(expected):
            raise PlotInputError(f"{path}: line {i} has {len(parts)} fields, "
                                 f"expected {len(expected)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise PlotInputError(f"{path}: line {i} is not numeric") from None
    return schema, rows


def series_xy(schema: str, rows: list[list[float]]) -> tuple[list[float], list[float]]:
    """Plottable (x, y) for one parsed CSV."""
    if schema == "# gaps-histogram v1":
        xs = [0.5 * (r[0] + r[1]) for r in rows]
        ys = [r[2] for r in rows]
    else:
        xs = [r[0] for r in rows]
        ys = [r[1] for r in rows]
    return xs, ys


def load_manifest(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as err:
        raise PlotInputError(f"{path}: cannot read ({err.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise PlotInputError(f"{path}: not valid JSON ({err.msg})") from None
    if not isinstance(doc, dict) or doc.get("schema") != MANIFEST_SCHEMA:
        raise PlotInputError(f"{path}: schema tag is not {MANIFEST_SCHEMA!r}")
    if doc.get("axes") not in AXES_MODES:
        raise PlotInputError(f"{path}: axes must be one of {AXES_MODES}")
    series = doc.get("series")
    if not isinstance(series, list) or not series:
        raise PlotInputError(f"{path}: series list is missing or empty")
    for entry in series:
        if not isinstance(entry, dict) or not {"path", "role", "label"} <= set(entry):
            raise PlotInputError(f"{path}: every series needs path, role, label")
        if entry["role"] not in ROLE_SCHEMAS:
            raise PlotInputError(
                f"{path}: unknown role {entry['role']!r} for {entry['path']}")
    return doc


def render(manifest: dict, base_dir: Path) -> plt.Figure:
    """Draw the manifest's series; CSV paths resolve relative to base_dir."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    markers = iter(MARKERS)
    for entry in manifest["series"]:
        csv_path = base_dir / entry["path"]
        schema, rows = read_csv(csv_path)
        if schema not in ROLE_SCHEMAS[entry["role"]]:
            raise PlotInputError(
                f"{csv_path}: schema {schema!r} cannot serve role {entry['role']!r}")
        xs, ys = series_xy(schema, rows)
        if entry["role"] == "histogram":
            ax.plot(xs, ys, linestyle="none", marker=next(markers, "o"),
                    markerfacecolor="none", label=entry["label"])
        elif entry["role"] == "reference":
            ax.plot(xs, ys, linestyle="-", label=entry["label"])
        else:
            ax.plot(xs, ys, linestyle="--", label=entry["label"])
    if manifest["axes"] in ("log-log", "log-linear"):
        ax.set_xscale("log")
    if manifest["axes"] == "log-log":
        ax.set_yscale("log")
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    return fig


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="render a gaps figure manifest to an image")
    parser.add_argument("--manifest", required=True, help="path to *.manifest.json")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    manifest_path = Path(args.manifest)
    try:
        manifest = load_manifest(manifest_path)
        fig = render(manifest, manifest_path.parent)
    except PlotInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    out = Path(args.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=args.dpi)
    plt.close(fig)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
