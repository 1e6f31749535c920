"""Command line interface.

Subcommands: ``cluster`` (solve one space), ``synth`` (generate planted
instances), ``eval`` (score a tree against a truth) and ``sweep`` (alpha
sweep to CSV plus figures).  Exit codes: 0 success, 2 usage or input error,
3 solver capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fileio
from .metrics import best_flat_by_ari
from .objective import Objective, evaluate
from .pareto import SolverConfig, default_grid, refine_alpha, sweep_alpha
from .poset import CapacityError
from .synth import CopyPasteSpec, PlantedBipartiteSpec, copy_paste_partition, planted_bipartite
from .trees import leaf_order

__all__ = ["main", "build_parser"]


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.5, help="similarity weight in [0, 1]")
    p.add_argument("--solver", choices=["exact", "approx"], default="exact")
    p.add_argument("--cut", choices=["exact", "local"], default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-limit", type=int, default=14)
    p.add_argument("--cut-limit", type=int, default=22)
    p.add_argument("--restarts", type=int, default=8)


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        solver=args.solver,
        cut=args.cut,
        seed=args.seed,
        exact_limit=args.exact_limit,
        cut_limit=args.cut_limit,
        restarts=args.restarts,
    )


def cmd_cluster(args) -> int:
    space = fileio.load_space(args.space)
    config = _solver_config(args)
    result = config.solve(space, args.alpha)
    meta = {
        "objective": "val_alpha",
        "alpha": args.alpha,
        "value": result.value,
        "solver": result.solver,
        "cut": result.cut_kind,
        "seed": args.seed,
    }
    if args.out:
        fileio.save_tree(result.tree, args.out, meta)
    order = leaf_order(result.tree)
    if space.labels:
        order_text = ", ".join(space.labels[i] for i in order)
    else:
        order_text = ", ".join(str(i) for i in order)
    print(f"value: {result.value:.6f}")
    print(f"leaf order: {order_text}")
    if args.truth:
        truth = fileio.load_truth(args.truth)
        if truth.clustering.n != space.n:
            raise ValueError("truth and space element counts disagree")
        _, t, report = best_flat_by_ari(result.tree, truth.clustering, truth.order)
        print(f"best-ari level t={t:g}: ari={report.ari:.4f}")
        print(f"delta-goodness: {report.delta_good:.4f}")
        print(f"loops: {report.loops:.4f}")
    return 0


def cmd_synth(args) -> int:
    if args.kind == "bpp":
        spec = PlantedBipartiteSpec(n=args.n, p=args.p, q=args.q, seed=args.seed)
        space, truth = planted_bipartite(spec, similarity=args.similarity)
    else:
        spec = CopyPasteSpec(
            copies=args.m,
            mu=args.mu,
            sigma2=args.sigma2,
            seed=args.seed,
            base_n=args.base_n,
            edge_probability=args.edge_prob,
        )
        space, truth = copy_paste_partition(spec)
    fileio.save_space(space, args.out)
    truth_path = args.truth_out or str(Path(args.out).with_suffix("")) + ".truth.json"
    fileio.save_truth(truth, truth_path)
    print(f"wrote {args.out} and {truth_path} (n={space.n})")
    return 0


def cmd_eval(args) -> int:
    tree, meta = fileio.load_tree(args.tree)
    space = fileio.load_space(args.space)
    truth = fileio.load_truth(args.truth)
    if space.n != truth.clustering.n or tree.size != space.n:
        raise ValueError("tree, space and truth element counts disagree")
    alpha = float(meta.get("alpha", args.alpha))
    value = evaluate(space, tree, Objective.val_alpha(alpha))
    _, _, report = best_flat_by_ari(tree, truth.clustering, truth.order)
    doc = fileio.build_report(
        report,
        value=value,
        alpha=alpha,
        solver=str(meta.get("solver", "unknown")),
        seed=meta.get("seed"),
        inputs={"tree": str(args.tree), "space": str(args.space), "truth": str(args.truth)},
    )
    if args.out:
        fileio.save_report(doc, args.out)
    print(json.dumps(doc, indent=1))
    return 0


def _sweep_grid(args, space, config) -> list[float]:
    if args.alphas:
        return [float(tok) for tok in args.alphas.split(",") if tok.strip() != ""]
    if args.refine is not None:
        bounds = refine_alpha(space, 0.0, 1.0, args.refine, config)
        grid = {0.0, 1.0}
        grid.update(bounds)
        edges = sorted(grid)
        for a, b in zip(edges, edges[1:]):
            grid.add((a + b) / 2.0)
        return sorted(grid)
    return default_grid(args.grid)


def cmd_sweep(args) -> int:
    space = fileio.load_space(args.space)
    config = _solver_config(args)
    truth = fileio.load_truth(args.truth) if args.truth else None
    grid = _sweep_grid(args, space, config)
    rows = []
    for rep in range(args.replicates):
        rep_config = SolverConfig(
            solver=config.solver,
            cut=config.cut,
            seed=config.seed + rep,
            exact_limit=config.exact_limit,
            cut_limit=config.cut_limit,
            restarts=config.restarts,
        )
        for point in sweep_alpha(space, grid, rep_config, truth=truth):
            row = {
                "alpha": point.alpha,
                "replicate": rep,
                "val_sd": point.val_sd,
                "val_g": point.val_g,
                "val_alpha": point.val_alpha,
            }
            if point.error:
                row["error"] = point.error
            if point.quality is not None:
                row.update(
                    {
                        "ari": point.quality.ari,
                        "order_agreement": point.quality.order_agreement,
                        "loops": point.quality.loops,
                    }
                )
            rows.append(row)
    rows.sort(key=lambda r: (r["alpha"], r["replicate"]))

    mean_rows = []
    numeric = ["val_sd", "val_g", "val_alpha", "ari", "order_agreement", "loops"]
    for alpha in sorted({r["alpha"] for r in rows}):
        group = [r for r in rows if r["alpha"] == alpha and "error" not in r]
        if not group:
            continue
        mean: dict = {"alpha": alpha, "replicate": "mean"}
        for key in numeric:
            vals = [r[key] for r in group if key in r]
            if vals:
                mean[key] = sum(vals) / len(vals)
        mean_rows.append(mean)

    fields = ["alpha", "replicate", "val_sd", "val_g", "val_alpha", "ari", "order_agreement", "loops", "error"]
    fileio.write_sweep_csv(rows + mean_rows, args.out, fields)
    print(f"wrote {args.out} ({len(rows)} rows + {len(mean_rows)} mean rows)")
    if not args.no_figures:
        from .figures import render_sweep_figures

        for path in render_sweep_figures(mean_rows, args.out):
            print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordclust",
        description="Order preserving hierarchical clustering of partially ordered data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="solve one ordered similarity space")
    p.add_argument("space", help="space JSON file")
    _add_solver_flags(p)
    p.add_argument("--out", help="tree JSON output path")
    p.add_argument("--truth", help="truth JSON for quality reporting")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("synth", help="generate a planted instance")
    p.add_argument("kind", choices=["bpp", "copypaste"])
    p.add_argument("--n", type=int, default=16, help="bpp: element count (even)")
    p.add_argument("--p", type=float, default=0.9, help="bpp: comparability probability")
    p.add_argument("--q", type=float, default=0.1, help="bpp: noise probability")
    p.add_argument("--similarity", type=float, default=0.0, help="bpp: constant similarity")
    p.add_argument("--base-n", type=int, default=5, help="copypaste: base element count")
    p.add_argument("--m", type=int, default=4, help="copypaste: number of copies")
    p.add_argument("--sigma2", type=float, default=0.15, help="copypaste: noise variance")
    p.add_argument("--mu", type=float, default=0.075, help="copypaste: noise location")
    p.add_argument("--edge-prob", type=float, default=0.3, help="copypaste: base DAG density")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="space JSON output path")
    p.add_argument("--truth-out", help="truth JSON output path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("eval", help="score a tree against a planted truth")
    p.add_argument("tree")
    p.add_argument("space")
    p.add_argument("truth")
    p.add_argument("--alpha", type=float, default=0.5, help="fallback alpha if tree meta has none")
    p.add_argument("--out", help="report JSON output path")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="alpha sweep to CSV and figures")
    p.add_argument("space")
    _add_solver_flags(p)
    p.add_argument("--alphas", help="comma separated alpha grid")
    p.add_argument("--grid", type=int, default=50, help="evenly spaced grid size")
    p.add_argument("--refine", type=float, help="bisect the front to this resolution instead")
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--truth", help="truth JSON for quality columns")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
