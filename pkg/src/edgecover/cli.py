"""Command-line entry point: ``edgecover <command> ...``.

Commands::

    gen         sample an instance and write it in the plain-text format
    bp          run BP on an instance and write the per-iteration trace CSV
    exact       solve a small instance exactly
    pwit        estimate root statistics on truncated PWITs
    rde         print the limit constants (or the full RDE report)
    experiment  ``list`` the experiments, or ``run <config-file>``

The exit status is 0 iff every pass flag of the run is true.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from edgecover import bp, exact, graphs, harness, rde
from edgecover.pwit import BOUNDARY_MODES


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _instance(args) -> graphs.WeightedGraph:
    if args.instance:
        return graphs.load(args.instance)
    return graphs.sample(args.kind, args.n, args.mean, args.seed)


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance", nargs="?", help="instance file; omit to sample one")
    p.add_argument("--kind", choices=(graphs.COMPLETE, graphs.BIPARTITE), default=graphs.COMPLETE)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--mean", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)


def cmd_gen(args) -> int:
    g = graphs.sample(args.kind, args.n, args.mean, args.seed)
    _emit(graphs.dumps(g), args.out)
    return 0


def cmd_bp(args) -> int:
    g = _instance(args)
    trace = bp.bp_run(g, args.k_max, args.stop_tol)
    _emit(trace.to_csv(), args.out)
    check = graphs.validate_cover(g, trace.cover)
    return 0 if check.valid else 1


def cmd_exact(args) -> int:
    g = _instance(args)
    methods = {
        "dp": exact.exact_cover_dp,
        "decompose": exact.exact_cover_decompose,
        "enumerate": exact.enumerate_cover,
    }
    chosen = list(methods) if args.method == "all" else [args.method]
    results = {}
    for name in chosen:
        if name == "enumerate" and g.n_vertices > exact.MAX_ENUM_VERTICES and args.method == "all":
            continue
        r = methods[name](g)
        results[r.method] = {"cost": r.cost, "edges": sorted(list(e) for e in r.cover.edges)}
    costs = [v["cost"] for v in results.values()]
    agree = max(costs) - min(costs) <= 1e-9
    doc = {"n_vertices": g.n_vertices, "results": results, "agree": agree}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if agree else 1


def cmd_pwit(args) -> int:
    cfg = harness.ExperimentConfig.for_experiment(
        "pwit_stats", replicas=args.replicas, d=args.depth, L=args.cutoff,
        boundary_mode=args.mode, master_seed=args.seed, chunk=args.chunk)
    res = harness.run_pwit_stats(cfg)
    _emit(res.tables["pwit_stats.csv"], args.out)
    print(res.human(), file=sys.stderr)
    return 0 if res.passed else 1


def cmd_rde(args) -> int:
    if not args.report:
        _emit(rde.limit_constants().to_json() + "\n", args.out)
        return 0
    cfg = harness.ExperimentConfig.for_experiment("rde_report", master_seed=args.seed,
                                                  pool_size=args.pool_size)
    res = harness.run_rde_report(cfg)
    _emit(res.to_json() + "\n", args.out)
    print(res.human(), file=sys.stderr)
    return 0 if res.passed else 1


def cmd_experiment(args) -> int:
    if args.action == "list":
        for name in harness.EXPERIMENTS:
            print(f"{name:<12} {harness.DESCRIPTIONS[name]}")
        return 0
    if not args.config:
        print("experiment run needs a config file", file=sys.stderr)
        return 2
    try:
        text = Path(args.config).read_text()
    except OSError as e:
        print(f"cannot read config {args.config}: {e}", file=sys.stderr)
        return 2
    try:
        cfg = harness.ExperimentConfig.parse(text)
        overrides = {"master_seed": args.seed, "replicas": args.replicas, "output": args.out}
        cfg = harness.ExperimentConfig.from_dict(
            {**cfg.to_dict(), **{k: v for k, v in overrides.items() if v is not None}})
    except (harness.ConfigError, ValueError) as e:
        print(f"invalid config: {e}", file=sys.stderr)
        return 2
    res = harness.run_experiment(cfg)
    if cfg.output:
        for p in res.write(cfg.output):
            print(p, file=sys.stderr)
    print(res.human())
    return 0 if res.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edgecover", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample an instance")
    p.add_argument("--kind", choices=(graphs.COMPLETE, graphs.BIPARTITE), default=graphs.COMPLETE)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mean", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bp", help="run belief propagation")
    _add_instance_args(p)
    p.add_argument("--k-max", type=int, default=30)
    p.add_argument("--stop-tol", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bp)

    p = sub.add_parser("exact", help="exact minimum-cost edge cover (<= 20 vertices)")
    _add_instance_args(p)
    p.add_argument("--method", choices=("dp", "decompose", "enumerate", "all"), default="all")
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("pwit", help="root statistics on truncated PWITs")
    p.add_argument("--replicas", type=int, default=10_000, help="number of trees")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--cutoff", type=float, default=10.0)
    p.add_argument("--mode", choices=BOUNDARY_MODES, default="fstar")
    p.add_argument("--chunk", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pwit)

    p = sub.add_parser("rde", help="limit constants and RDE diagnostics")
    p.add_argument("--report", action="store_true", help="run the full RDE report")
    p.add_argument("--pool-size", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_rde)

    p = sub.add_parser("experiment", help="list or run configured experiments")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("config", nargs="?")
    p.add_argument("--seed", type=int)
    p.add_argument("--replicas", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (graphs.InvalidInstanceError, exact.SizeLimitError, harness.ConfigError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
