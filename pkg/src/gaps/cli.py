"""Command-line entry points: sample, scaling, figure, selftest."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import refdist, runner
from .runner import ExperimentConfig
from .selftest import run_selftest

DEFAULT_REPS = 1 << 14
DEFAULT_SEED = 1


def _parse_stat(text: str) -> tuple[str, int]:
    if text in ("min", "max", "nn"):
        return text, 0
    if text.startswith("mth:"):
        try:
            m = int(text[4:])
        except ValueError:
            raise ValueError(f"bad mth statistic {text!r}; expected mth:M") from None
        if m < 1:
            raise ValueError(f"mth order must be at least 1, got {m}")
        return "mth", m
    raise ValueError(f"unknown statistic {text!r}; expected min, max, mth:M, or nn")


def _parse_sizes(text: str) -> list[int]:
    """Size lists, with an ellipsis filled geometrically or arithmetically.

    "2,4,...,1024" steps by the head ratio; "2,3,...,14" steps by the head
    difference. The last listed value must be hit exactly.
    """
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise ValueError("sizes must be non-empty")
    if "..." not in tokens:
        values = [int(t) for t in tokens]
        if any(v < 1 for v in values):
            raise ValueError("sizes must be positive")
        return values
    cut = tokens.index("...")
    head = [int(t) for t in tokens[:cut]]
    if any(v < 1 for v in head):
        raise ValueError("sizes must be positive")
    tail = tokens[cut + 1:]
    if len(head) < 2 or len(tail) != 1:
        raise ValueError("ellipsis form is a,b,...,z with at least two leading sizes")
    last = int(tail[0])
    ratios = {b // a for a, b in zip(head, head[1:])}
    geometric = (len(ratios) == 1
                 and all(b == a * next(iter(ratios)) for a, b in zip(head, head[1:]))
                 and next(iter(ratios)) >= 2)
    steps = {b - a for a, b in zip(head, head[1:])}
    values = list(head)
    if geometric:
        ratio = next(iter(ratios))
        while values[-1] < last:
            values.append(values[-1] * ratio)
    elif len(steps) == 1 and next(iter(steps)) > 0:
        step = next(iter(steps))
        while values[-1] < last:
            values.append(values[-1] + step)
    else:
        raise ValueError(f"cannot infer a step from the sizes {head}")
    if values[-1] != last:
        raise ValueError(f"size progression from {head} does not land on {last}")
    return values


def _sweep_param(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """The one size flag matching the ensemble kind."""
    wanted = {"cpe": "size", "coe": "size", "cue": "size",
              "qubits": "k", "qunits": "n"}[args.ensemble]
    given = {name: getattr(args, name) for name in ("size", "k", "n")
             if getattr(args, name) is not None}
    if set(given) != {wanted}:
        parser.error(f"ensemble {args.ensemble} takes exactly --{wanted}")
    return given[wanted]


def _write_prefixed(prefix: str, parts: list[tuple[str, str]]) -> list[Path]:
    base = Path(prefix)
    base.parent.mkdir(parents=True, exist_ok=True)
    paths = []
    for suffix, text in parts:
        path = Path(str(base) + suffix)
        path.write_text(text)
        paths.append(path)
    return paths


def _cmd_sample(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    param = _sweep_param(args, parser)
    ensemble = runner.ensemble_for(args.ensemble, param)
    statistic, m = _parse_stat(args.stat)
    config = ExperimentConfig(ensemble=ensemble, reps=args.reps,
                              master_seed=args.seed, statistic=statistic, m=m,
                              rescaling=args.rescale, bins=args.bins,
                              out_prefix=args.out_prefix)
    result = runner.run_batch(config)
    parts = [
        ("_hist.csv", runner.histogram_csv(result.histogram)),
        ("_summary.json", runner.summary_json(result)),
    ]
    if args.ref is not None:
        ref = refdist.get_reference(args.ref)
        edges = result.histogram.edges
        grid = np.linspace(edges[0], edges[-1], 513)
        parts.append(("_ref.csv", runner.refcurve_csv(grid, ref.pdf(grid))))
    paths = _write_prefixed(args.out_prefix, parts)
    variance = "nan" if result.variance is None else f"{result.variance:.6g}"
    print(f"{ensemble.label()} {config.statistic_label()} reps={config.reps}: "
          f"mean={result.mean:.6g} variance={variance} ({result.elapsed_s:.1f}s)")
    for path in paths:
        print(f"wrote {path}")
    return 0


def _cmd_scaling(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    sizes = _parse_sizes(args.sizes)
    sweep = runner.run_scaling_sweep(args.ensemble, sizes, args.reps, args.seed)
    parts = [
        ("_table.csv", runner.scaling_csv(sweep)),
        ("_scaling.json", runner.scaling_summary_json(sweep)),
    ]
    paths = _write_prefixed(args.out_prefix, parts)
    print(f"{args.ensemble} sweep over {len(sweep.sizes)} sizes, reps={sweep.reps}: "
          f"min slope {sweep.min_fit.slope:.4f}, "
          f"{sweep.max_fit_variable} slope {sweep.max_fit.slope:.4f} "
          f"({sweep.elapsed_s:.1f}s)")
    for path in paths:
        print(f"wrote {path}")
    return 0


def _cmd_figure(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    paths = runner.reproduce_figure(args.id, args.scale, args.seed, args.out_dir)
    for path in paths:
        print(f"wrote {path}")
    return 0


def _cmd_selftest(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    return run_selftest()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaps",
        description="Extreme spacing statistics of random unitary spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    sample = sub.add_parser("sample", help="histogram one spacing statistic")
    sample.add_argument("--ensemble", required=True,
                        choices=["cpe", "coe", "cue", "qubits", "qunits"])
    sample.add_argument("--size", type=int, help="matrix size for cpe/coe/cue")
    sample.add_argument("--k", type=int, help="factor count for qubits")
    sample.add_argument("--n", type=int, help="factor size for qunits")
    sample.add_argument("--reps", type=int, default=DEFAULT_REPS)
    sample.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sample.add_argument("--stat", default="min", help="min, max, mth:M, or nn")
    sample.add_argument("--rescale", default="none",
                        choices=["none", "xmin", "ymin", "zmax"])
    sample.add_argument("--bins", type=int, default=40)
    sample.add_argument("--out-prefix", required=True)
    sample.add_argument("--ref", help="also emit a named reference curve "
                        f"({', '.join(refdist.reference_names())})")
    sample.set_defaults(func=_cmd_sample)

    scaling = sub.add_parser("scaling", help="mean extremal spacings vs size")
    scaling.add_argument("--ensemble", required=True,
                         choices=["cpe", "coe", "cue", "qubits", "qunits"])
    scaling.add_argument("--sizes", required=True,
                         help="comma list; an ellipsis like 2,4,...,1024 is filled")
    scaling.add_argument("--reps", type=int, default=DEFAULT_REPS)
    scaling.add_argument("--seed", type=int, default=DEFAULT_SEED)
    scaling.add_argument("--out-prefix", required=True)
    scaling.set_defaults(func=_cmd_scaling)

    figure = sub.add_parser("figure", help="emit the datasets behind one figure")
    figure.add_argument("--id", required=True, choices=list(runner.FIGURE_IDS))
    figure.add_argument("--scale", default="desk", choices=["desk", "paper"])
    figure.add_argument("--seed", type=int, default=DEFAULT_SEED)
    figure.add_argument("--out-dir", required=True)
    figure.set_defaults(func=_cmd_figure)

    selftest = sub.add_parser("selftest", help="run the oracle and invariant checks")
    selftest.set_defaults(func=_cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
