# src/cli.py
"""
Command-line interface: motifvar <subcommand> [flags]

Subcommands:
    exponents    piecewise exponents of a motif (all four modes by default)
    classify     self-averaging intervals and fluctuation types
    sample       draw a hidden-variable graph and export it
    count        census of a host graph (edge list)
    scale        scaling experiment (mean or median slope)
    dist         count distribution experiment
    data-report  graphlet report of an observed network
    catalog      motif alias table

Exit codes: 0 success, 2 usage error (bad flags, motif or tau), 1 runtime error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from src.config import DEFAULT_H_MIN, DEFAULT_SEED, DEFAULT_X_MIN, OUTPUT_DIR, resolve_threads
from src.counting.census import count_all
from src.counting.orbits import orbit_degree_stats, vertex_orbit_counts
from src.counting.subgraph_counter import count
from src.exceptions import ExperimentConfigError, ModelParameterError, MotifError, MotifVarError, TauError
from src.ingestion.edge_list import read_edge_list
from src.models.exponent import parse_tau
from src.models.fluctuation_model import fluctuation_report, self_averaging_table
from src.models.hidden_variable_model import (
    ModelParams,
    expected_degree_check,
    sample_hidden_variable_graph,
)
from src.models.variational_model import VariationMode, optimize, piecewise
from src.motifs.catalog import ALIASES, ATLAS, display_name, parse_motif
from src.pipeline.data_report import graphlet_report
from src.pipeline.experiments import (
    DistributionConfig,
    ScalingConfig,
    cv_trend,
    distribution_experiment,
    scaling_experiment,
)
from src.pipeline.serialization import piecewise_to_dict, result_to_dict, write_frame, write_json
from src.storage.host_graph import export_graph

logger = logging.getLogger(__name__)


def _run_config(args: argparse.Namespace) -> dict:
    flags = {k: v for k, v in vars(args).items() if k not in ("handler",)}
    if getattr(args, "tau", None) is not None:
        flags["tau"] = str(parse_tau(args.tau))
    return {"subcommand": args.command, "flags": flags, "seed": getattr(args, "seed", None)}


def _meta(args: argparse.Namespace, **extra) -> dict:
    meta = {"threads": resolve_threads(getattr(args, "threads", None))}
    meta.update(extra)
    return meta


def _modes(args: argparse.Namespace) -> List[VariationMode]:
    if args.mode == "all":
        return list(VariationMode)
    return [VariationMode.select(typical=args.mode == "typical", induced=args.induced)]


def cmd_exponents(args: argparse.Namespace) -> int:
    h = parse_motif(args.motif)
    modes = _modes(args)
    payload = {
        "config": _run_config(args),
        "meta": _meta(args),
        "motif": display_name(h),
        "edges": h.literal(),
        "modes": {mode.value: piecewise_to_dict(piecewise(h, mode)) for mode in modes},
    }
    if args.tau is not None:
        payload["at_tau"] = {mode.value: result_to_dict(optimize(h, mode, args.tau)) for mode in modes}
    write_json(payload, args.out)
    print(f"✓ exponents for {display_name(h)} ({len(modes)} modes)", file=sys.stderr)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    if args.all:
        payload = {
            "config": _run_config(args),
            "meta": _meta(args),
            "table": self_averaging_table(ATLAS, induced=args.induced),
        }
    else:
        if not args.motif:
            raise MotifError("classify needs --motif or --all")
        h = parse_motif(args.motif)
        payload = {"config": _run_config(args), "meta": _meta(args)}
        payload.update(fluctuation_report(h, args.induced, args.tau))
    write_json(payload, args.out)
    print("✓ classification done", file=sys.stderr)
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    params = ModelParams.from_tau(args.n, args.tau, h_min=args.hmin, seed=args.seed)
    g = sample_hidden_variable_graph(params, threads=args.threads)
    directory = Path(args.out) if args.out else OUTPUT_DIR / f"sample_n{args.n}_seed{args.seed}"
    config = _run_config(args)
    meta = _meta(args, mu=params.mu, mu_source=params.mu_source)
    paths = export_graph(g, directory, {"config": config, "meta": meta, "tau": str(params.tau)})
    check = expected_degree_check(g)
    write_json({
        "config": config,
        "meta": meta,
        "n": g.n,
        "m": g.m,
        "files": {k: str(v) for k, v in paths.items()},
        "degree_check": check,
    }, None)
    print(f"✓ sampled n={g.n} m={g.m} -> {directory}", file=sys.stderr)
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    if args.motif:
        h = parse_motif(args.motif)
        if args.orbits:
            frame = orbit_degree_stats(g, h, args.induced).to_frame()
        else:
            result = count(g, h, args.induced, args.threads)
            frame = pd.DataFrame([{
                "motif": result.motif, "vertices": h.k, "edges": h.m,
                "induced": result.induced, "count": result.count, "method": result.method,
            }])
    elif args.orbits:
        frame = vertex_orbit_counts(g, args.k, args.induced)
        frame.insert(0, "vertex", g.original_ids if g.original_ids is not None else np.arange(g.n))
    else:
        frame = count_all(g, args.k, args.induced, args.threads)
    write_frame(frame, args.out)
    print(f"✓ counted on n={g.n} m={g.m}", file=sys.stderr)
    return 0


def _grid(nmin: int, nmax: int, points: int) -> List[int]:
    values = np.unique(np.round(np.geomspace(nmin, nmax, points)).astype(int))
    return [int(v) for v in values]


def cmd_scale(args: argparse.Namespace) -> int:
    config = ScalingConfig(
        motif=args.motif,
        tau=args.tau,
        n_grid=_grid(args.nmin, args.nmax, args.npoints),
        samples=args.samples,
        statistic="median" if args.mode == "typical" else "mean",
        induced=args.induced,
        h_min=args.hmin,
        seed=args.seed,
        threads=args.threads,
    )
    run = scaling_experiment(config)
    directory = Path(args.out) if args.out else OUTPUT_DIR / f"scale_{args.motif}_{config.statistic}"
    write_frame(run.to_frame(), directory / "counts.csv")
    write_json({"config": _run_config(args), "meta": _meta(args), "result": run.summary()}, directory / "summary.json")
    print(f"✓ slope {run.fitted_slope:.3f} (theory {run.theory_slope:.3f}) -> {directory}", file=sys.stderr)
    return 0


def cmd_dist(args: argparse.Namespace) -> int:
    config = DistributionConfig(
        motif=args.motif,
        tau=args.tau,
        n_values=args.n,
        samples=args.samples,
        induced=args.induced,
        h_min=args.hmin,
        seed=args.seed,
        threads=args.threads,
    )
    runs = distribution_experiment(config)
    directory = Path(args.out) if args.out else OUTPUT_DIR / f"dist_{args.motif}"
    for run in runs:
        write_frame(run.histogram, directory / f"histogram_n{run.n}.csv")
        write_frame(pd.DataFrame({"sample": np.arange(len(run.counts)), "count": run.counts}), directory / f"counts_n{run.n}.csv")
    write_json({
        "config": _run_config(args),
        "meta": _meta(args),
        "runs": [run.summary() for run in runs],
        "cv_trend": cv_trend(runs),
    }, directory / "summary.json")
    print(f"✓ distribution runs at n={args.n} -> {directory}", file=sys.stderr)
    return 0


def cmd_data_report(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    report = graphlet_report(g, args.name or Path(args.graph).stem, args.x_min)
    write_json({"config": _run_config(args), "meta": _meta(args), **report}, args.out)
    status = "matches" if report["ordering"]["matches"] else "differs from"
    print(f"✓ {report['name']}: observed order {status} prediction", file=sys.stderr)
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    rows = []
    for name, literal in ALIASES.items():
        h = parse_motif(name)
        rows.append({"alias": name, "vertices": h.k, "edges": h.m, "literal": literal, "atlas": name in ATLAS})
    write_frame(pd.DataFrame(rows), args.out)
    return 0


def _add_common(parser: argparse.ArgumentParser, *flags: str) -> None:
    if "motif" in flags:
        parser.add_argument("--motif", help="alias (see catalog) or edge literal like 0-1,1-2")
    if "tau" in flags:
        parser.add_argument("--tau", help="exponent in (2,3), e.g. 5/2 or 2.2")
    if "induced" in flags:
        parser.add_argument("--induced", action="store_true", help="count induced copies (graphlets)")
    if "model" in flags:
        parser.add_argument("--hmin", type=float, default=DEFAULT_H_MIN)
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    if "threads" in flags:
        parser.add_argument("--threads", type=int, default=None, help="workers (default: MOTIFVAR_THREADS or 1)")
    parser.add_argument("--out", default=None, help="output path ('-' or omitted: stdout where applicable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motifvar", description="Motif count exponents in power-law random graphs")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponents", help="piecewise exponents of a motif")
    _add_common(p, "motif", "tau", "induced")
    p.add_argument("--mode", choices=["free", "typical", "all"], default="all")
    p.set_defaults(handler=cmd_exponents)

    p = sub.add_parser("classify", help="self-averaging intervals and fluctuation types")
    _add_common(p, "motif", "tau", "induced")
    p.add_argument("--all", action="store_true", help="table for every atlas motif")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("sample", help="sample a hidden-variable graph")
    _add_common(p, "tau", "model", "threads")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("count", help="census of a host graph")
    _add_common(p, "motif", "induced", "threads")
    p.add_argument("--graph", required=True, help="edge list file")
    p.add_argument("--k", type=int, default=4, help="class size when no motif is given")
    p.add_argument("--orbits", action="store_true", help="per-orbit degrees (with --motif) or per-vertex orbit counts")
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("scale", help="scaling experiment")
    _add_common(p, "motif", "tau", "induced", "model", "threads")
    p.add_argument("--mode", choices=["free", "typical"], default="free", help="free: mean, typical: median")
    p.add_argument("--nmin", type=int, default=1000)
    p.add_argument("--nmax", type=int, default=100000)
    p.add_argument("--npoints", type=int, default=5)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(handler=cmd_scale)

    p = sub.add_parser("dist", help="count distribution experiment")
    _add_common(p, "motif", "tau", "induced", "model", "threads")
    p.add_argument("--n", type=int, nargs="+", default=[10000, 100000])
    p.add_argument("--samples", type=int, default=2000)
    p.set_defaults(handler=cmd_dist)

    p = sub.add_parser("data-report", help="graphlet report of an observed network")
    _add_common(p)
    p.add_argument("--graph", required=True, help="edge list file")
    p.add_argument("--name", default=None)
    p.add_argument("--x-min", dest="x_min", type=float, default=DEFAULT_X_MIN)
    p.set_defaults(handler=cmd_data_report)

    p = sub.add_parser("catalog", help="motif alias table")
    _add_common(p)
    p.set_defaults(handler=cmd_catalog)
    return parser


_REQUIRED: Dict[str, tuple] = {
    "exponents": ("motif",),
    "sample": ("tau",),
    "scale": ("motif", "tau"),
    "dist": ("motif", "tau"),
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        missing = [f"--{flag}" for flag in _REQUIRED.get(args.command, ()) if getattr(args, flag, None) is None]
        if missing:
            parser.error(f"{args.command} requires {', '.join(missing)}")
        if getattr(args, "tau", None) is not None:
            parse_tau(args.tau)
        return handler(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (MotifError, TauError, ExperimentConfigError, ModelParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MotifVarError, OSError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
