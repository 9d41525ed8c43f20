"""Command-line entry point: ``gridgrowth <subcommand> ...``.

Exit status is 0 on success, 1 for usage or parameter errors and 2 for
unreadable or malformed data. Every run writes ``<stem>.manifest.json``
next to its main output, recording the argv, resolved parameters and
library versions.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import platform
import sys
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .epidemics import EpidemicConfig, compare_traces, simulate
from .fitting import fit_mixture, fit_table
from .graph import DegreeHistogram
from .growth import GrowthConfig, KDistribution, degree_histogram, grow
from .io import (DataError, adjacency_from_admittance, default_output_dir, load_admittance,
                 load_edgelist, save_edge_scores, save_graph, save_histogram,
                 save_node_scores, save_scaling, save_table, save_trace)
from .metrics import betweenness, betweenness_pdf, diameter, diameter_scaling, log_fit

log = logging.getLogger("gridgrowth")


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None


def _add_input(p, flag="--input"):
    p.add_argument(flag, required=True, help="edge list, or Matrix Market admittance (.mtx)")
    p.add_argument("--format", choices=["auto", "edgelist", "admittance"], default="auto")
    p.add_argument("--threshold", type=float, default=0.0,
                   help="admittance magnitude above which a line exists")


def _add_growth(p):
    p.add_argument("--config", help="key/value growth config document")
    p.add_argument("--nodes", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--radius", type=float)
    p.add_argument("--k", type=int, help="constant number of links per birth")
    p.add_argument("--k-support", type=_int_list, help="values of K, e.g. 3,4,5")
    p.add_argument("--k-probs", type=_float_list, help="probabilities (uniform if omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridgrowth",
                                     description="Spatial growth model for power-grid topologies.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out-dir", default=None,
                        help="output directory (default: $GRIDGROWTH_OUT or .)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: available CPUs)")
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="grow a network")
    _add_growth(p)
    p.add_argument("--out", required=True, help="edge-list output path")
    p.add_argument("--positions", action="store_true", help="also write node,x,y CSV")

    p = sub.add_parser("analyze", parents=[common], help="structural metrics of a graph")
    _add_input(p)
    p.add_argument("--metric", choices=["diameter", "betweenness", "degree"], required=True)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--out", help="output stem (default: input stem + metric)")

    p = sub.add_parser("fit", parents=[common], help="fit an exponential mixture")
    _add_input(p)
    p.add_argument("--max-components", type=int, default=3)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--mode", choices=["model", "free", "meanfield"], default="model")
    p.add_argument("--binning", choices=["round", "floor"], default=None,
                   help="integer degree d covers [d-1/2, d+1/2) or [d, d+1) "
                        "(default: floor for meanfield mode, else round)")
    p.add_argument("--out", help="output stem")

    p = sub.add_parser("epidemic", parents=[common], help="SIS/SIR Monte Carlo")
    _add_input(p)
    _add_epidemic(p)
    p.add_argument("--out", help="trace CSV path")

    p = sub.add_parser("compare", parents=[common], help="real grid vs generated twin")
    _add_input(p, "--real")
    p.add_argument("--max-components", type=int, default=3)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=6)
    # the twin needs the K-distribution itself, which the discrete law recovers best
    p.add_argument("--mode", choices=["model", "free", "meanfield"], default="meanfield")
    p.add_argument("--binning", choices=["round", "floor"], default=None,
                   help="integer degree d covers [d-1/2, d+1/2) or [d, d+1) "
                        "(default: floor for meanfield mode, else round)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--no-betweenness", action="store_true")
    p.add_argument("--epidemic", action="store_true", help="also compare contagion traces")
    _add_epidemic(p, required=False)
    p.add_argument("--out", help="output stem")

    p = sub.add_parser("scaling", parents=[common], help="diameter vs network size")
    p.add_argument("--k", type=int)
    p.add_argument("--k-support", type=_int_list)
    p.add_argument("--k-probs", type=_float_list)
    p.add_argument("--sizes", type=_int_list, default=[250, 500, 1000, 2000, 4000, 8000])
    p.add_argument("--seeds", type=int, default=10, help="runs per size")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--out", help="CSV path")
    return parser


def _add_epidemic(p, required=True):
    p.add_argument("--model", choices=["sis", "sir"], default="sis")
    p.add_argument("--beta", type=float, default=0.3)
    p.add_argument("--delta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--initial", help="infected count, or comma-separated node ids")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    handler = _COMMANDS[args.command]
    try:
        handler(args, argv if argv is not None else sys.argv[1:])
    except UsageError as exc:
        print(f"gridgrowth {args.command}: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"gridgrowth {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"gridgrowth {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


def _out_path(args, name):
    path = Path(name)
    if path.is_absolute():
        return path
    base = Path(args.out_dir) if args.out_dir else default_output_dir()
    return base / path


def _manifest(path, argv, params):
    doc = {
        "argv": list(argv),
        "params": params,
        "versions": {
            "gridgrowth": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
    }
    path = Path(str(path) + ".manifest.json")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n")


def _read_graph(path, fmt, threshold):
    path = Path(path)
    if fmt == "auto":
        fmt = "admittance" if path.suffix.lower() == ".mtx" else "edgelist"
    if fmt == "admittance":
        return adjacency_from_admittance(load_admittance(path), threshold)
    g, report = load_edgelist(path, with_report=True)
    log.info("%s: %d nodes, %d edges (%d self-loops dropped, %d duplicates merged)",
             path, report.nodes, report.edges, report.self_loops, report.duplicates)
    return g


def _k_dist(args):
    if args.k is not None and args.k_support is not None:
        raise UsageError("give either --k or --k-support")
    if args.k_support is not None:
        if args.k_probs is not None:
            return KDistribution(tuple(args.k_support), tuple(args.k_probs))
        return KDistribution.uniform(args.k_support)
    if args.k_probs is not None:
        raise UsageError("--k-probs needs --k-support")
    return KDistribution.constant(args.k if args.k is not None else 2)


def _growth_config(args) -> GrowthConfig:
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise OSError(f"{args.config}: {exc.strerror or exc}") from exc
        cfg = GrowthConfig.from_text(text)
        overrides = {}
        if args.nodes is not None:
            overrides.update(node_count=args.nodes, density=None)
        if args.density is not None:
            overrides.update(density=args.density, node_count=None)
        if args.radius is not None:
            overrides["radius"] = args.radius
        if args.k is not None or args.k_support is not None:
            overrides["k_dist"] = _k_dist(args)
        if args.seed is not None:
            overrides["rng_seed"] = args.seed
        fields = dict(radius=cfg.radius, node_count=cfg.node_count, density=cfg.density,
                      k_dist=cfg.k_dist, rng_seed=cfg.rng_seed)
        fields.update(overrides)
        return GrowthConfig(**fields)
    if args.nodes is None and args.density is None:
        raise UsageError("give --nodes, --density or --config")
    return GrowthConfig(
        radius=args.radius if args.radius is not None else 1.0,
        node_count=args.nodes,
        density=args.density,
        k_dist=_k_dist(args),
        rng_seed=args.seed if args.seed is not None else 0,
    )


def _epidemic_config(args, n_nodes):
    initial = None
    if args.initial:
        parts = args.initial.replace(",", " ").split()
        try:
            if len(parts) == 1 and not args.initial.strip().endswith(","):
                initial = int(parts[0])
            else:
                initial = [int(x) for x in parts]
        except ValueError:
            raise UsageError(f"--initial: expected integers, got {args.initial!r}") from None
    delta, gamma = args.delta, args.gamma
    if args.model == "sis" and delta is None:
        delta = 0.2
    if args.model == "sir" and gamma is None:
        gamma = 0.2
    return EpidemicConfig(model=args.model, beta=args.beta, delta=delta, gamma=gamma,
                          initial_infected=initial, steps=args.steps, trials=args.trials,
                          rng_seed=args.seed if args.seed is not None else 0)


def cmd_generate(args, argv):
    cfg = _growth_config(args)
    g = grow(cfg)
    out = _out_path(args, args.out)
    save_graph(out, g, header=cfg.to_text().strip())
    if args.positions:
        save_table(Path(str(out) + ".positions.csv"), ["node", "x", "y"],
                   [(i, float(x), float(y)) for i, (x, y) in enumerate(g.positions)])
    _manifest(out, argv, {"growth": cfg.to_text(), "nodes": g.n_nodes, "edges": g.n_edges})
    print(f"wrote {out}: {g.n_nodes} nodes, {g.n_edges} edges")


def _stem(args, input_path, suffix):
    if args.out:
        return _out_path(args, args.out)
    return _out_path(args, Path(input_path).stem + suffix)


def cmd_analyze(args, argv):
    g = _read_graph(args.input, args.format, args.threshold)
    stem = _stem(args, args.input, f".{args.metric}")
    params = {"input": args.input, "metric": args.metric}
    if args.metric == "degree":
        hist = degree_histogram(g)
        path = Path(str(stem) + ".csv")
        save_histogram(path, hist)
        print(f"wrote {path}: {len(hist.bins)} degrees, {hist.total} nodes")
    elif args.metric == "diameter":
        rep = diameter(g, workers=args.threads)
        path = Path(str(stem) + ".csv")
        save_table(path, ["component_rank", "size", "diameter"],
                   [(i, s, d) for i, (s, d) in enumerate(rep.per_component)])
        params.update(diameter=rep.diameter, components=rep.n_components)
        print(f"diameter {rep.diameter} (largest component {rep.largest_component_size} "
              f"of {g.n_nodes} nodes, {rep.n_components} components)")
    else:
        res = betweenness(g, workers=args.threads)
        labels = g.labels
        save_node_scores(Path(str(stem) + ".nodes.csv"), res.nodes, res.node_scores, labels)
        save_edge_scores(Path(str(stem) + ".edges.csv"), res.edges.tolist(), res.edge_scores,
                         labels)
        for which in ("node", "edge"):
            edges, mass = betweenness_pdf(res, args.bins, which=which)
            save_table(Path(str(stem) + f".{which}_pdf.csv"), ["bin_lo", "bin_hi", "mass"],
                       [(float(a), float(b), float(m)) for a, b, m in zip(edges, edges[1:], mass)])
        params.update(component_only=res.component_only, bins=args.bins)
        print(f"wrote {stem}.nodes.csv / .edges.csv / .node_pdf.csv / .edge_pdf.csv")
    _manifest(stem, argv, params)


def cmd_fit(args, argv):
    g = _read_graph(args.input, args.format, args.threshold)
    hist = degree_histogram(g)
    res = fit_mixture(hist, args.max_components, (args.k_min, min(args.k_max, max(hist.bins))),
                      mode=args.mode, binning=args.binning, workers=args.threads)
    stem = _stem(args, args.input, ".fit")
    text_path = Path(str(stem) + ".txt")
    text_path.parent.mkdir(parents=True, exist_ok=True)
    text_path.write_text(res.to_text())
    save_table(Path(str(stem) + ".csv"), ["degree", "empirical_pdf", "fitted_mass", "fitted_pdf"],
               fit_table(hist, res.mixture, res.binning))
    _manifest(stem, argv, {"input": args.input, "mode": args.mode, "binning": res.binning,
                           "k_range": [args.k_min, args.k_max],
                           "max_components": args.max_components})
    print(res.to_text(), end="")


def cmd_epidemic(args, argv):
    g = _read_graph(args.input, args.format, args.threshold)
    cfg = _epidemic_config(args, g.n_nodes)
    trace = simulate(g, cfg, workers=args.threads)
    out = _out_path(args, args.out) if args.out else _stem(args, args.input, f".{cfg.model}.csv")
    save_trace(out, trace)
    _manifest(out, argv, {"input": args.input, "epidemic": vars(cfg)})
    print(f"wrote {out}: {cfg.steps} steps, {cfg.trials} trials, "
          f"final infected fraction {trace.infected_fraction[-1]:.4f}")


def _tv(hist_a: DegreeHistogram, hist_b: DegreeHistogram) -> float:
    top = max(max(hist_a.bins), max(hist_b.bins))
    return 0.5 * float(np.abs(hist_a.dense_pmf(top) - hist_b.dense_pmf(top)).sum())


def cmd_compare(args, argv):
    real = _read_graph(args.real, args.format, args.threshold)
    hist = degree_histogram(real)
    fit = fit_mixture(hist, args.max_components, (args.k_min, min(args.k_max, max(hist.bins))),
                      mode=args.mode, binning=args.binning, workers=args.threads)
    k_dist = fit.mixture.k_distribution()
    seed = args.seed if args.seed is not None else 0
    twin = grow(GrowthConfig(radius=args.radius, node_count=real.n_nodes, k_dist=k_dist,
                             rng_seed=seed))
    twin_hist = degree_histogram(twin)
    stem = _stem(args, args.real, ".compare")
    summary = {
        "real_nodes": real.n_nodes, "real_edges": real.n_edges,
        "twin_nodes": twin.n_nodes, "twin_edges": twin.n_edges,
        "fit": {"ks": list(fit.mixture.ks), "alphas": list(fit.mixture.alphas),
                "scale": fit.mixture.rate_scale, "ks_stat": fit.ks_stat, "mode": fit.mode,
                "binning": fit.binning},
        "degree_tv_distance": _tv(hist, twin_hist),
        "diameter_real": diameter(real, workers=args.threads).diameter,
        "diameter_twin": diameter(twin, workers=args.threads).diameter,
    }
    save_graph(Path(str(stem) + ".twin.edges"), twin)
    save_histogram(Path(str(stem) + ".degree_real.csv"), hist)
    save_histogram(Path(str(stem) + ".degree_twin.csv"), twin_hist)
    if not args.no_betweenness:
        b_real = betweenness(real, workers=args.threads)
        b_twin = betweenness(twin, workers=args.threads)
        for which in ("node", "edge"):
            sa = b_real.node_scores if which == "node" else b_real.edge_scores
            sb = b_twin.node_scores if which == "node" else b_twin.edge_scores
            hi = max(sa.max(), sb.max())
            edges = np.linspace(0.0, hi if hi > 0 else 1.0, args.bins + 1)
            ma = np.histogram(sa, bins=edges)[0] / len(sa)
            mb = np.histogram(sb, bins=edges)[0] / len(sb)
            save_table(Path(str(stem) + f".{which}_betweenness_pdf.csv"),
                       ["bin_lo", "bin_hi", "real_mass", "twin_mass"],
                       [(float(a), float(b), float(x), float(y))
                        for a, b, x, y in zip(edges, edges[1:], ma, mb)])
            summary[f"{which}_betweenness_tv"] = 0.5 * float(np.abs(ma - mb).sum())
    if args.epidemic:
        cfg_real = _epidemic_config(args, real.n_nodes)
        t_real = simulate(real, cfg_real, workers=args.threads)
        t_twin = simulate(twin, cfg_real, workers=args.threads)
        cmp = compare_traces(t_real, t_twin)
        save_trace(Path(str(stem) + f".{cfg_real.model}_real.csv"), t_real)
        save_trace(Path(str(stem) + f".{cfg_real.model}_twin.csv"), t_twin)
        summary["epidemic"] = {"model": cfg_real.model, "max_gap": cmp.max_gap,
                               "mean_gap": cmp.mean_gap}
    path = Path(str(stem) + ".json")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    _manifest(stem, argv, {"real": args.real, "seed": seed})
    print(json.dumps(summary, indent=2, sort_keys=True))


def cmd_scaling(args, argv):
    k_dist = _k_dist(args)
    rows = diameter_scaling(k_dist, args.sizes, args.seeds, radius=args.radius,
                            base_seed=args.seed if args.seed is not None else 0,
                            workers=args.threads)
    out = _out_path(args, args.out or "scaling.csv")
    save_scaling(out, rows)
    a, b, r2 = log_fit(rows)
    _manifest(out, argv, {"k_support": k_dist.support, "k_probs": k_dist.probs,
                          "sizes": args.sizes, "seeds": args.seeds,
                          "log_fit": {"intercept": a, "slope": b, "r_squared": r2}})
    for n, m, s in rows:
        print(f"N={n:<7d} mean diameter {m:.3f} (sd {s:.3f})")
    print(f"diameter ~ {a:.3f} + {b:.3f} ln N, R^2 = {r2:.4f}")


_COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "fit": cmd_fit,
    "epidemic": cmd_epidemic,
    "compare": cmd_compare,
    "scaling": cmd_scaling,
}


if __name__ == "__main__":
    main()
