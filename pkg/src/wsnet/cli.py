"""Command-line front end.

Every command writes plain CSV outputs plus ``manifest.txt``, a flat
``key = value`` record of the invocation and the SHA-256 of each output.
Exit status: 0 success, 2 usage error, 3 data error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from . import generators as gen
from . import ingest, powerlaw, theory
from .errors import ConfigError, WSNetError

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_IO = 4

__version__ = "0.1.0"


class UsageError(Exception):
    pass


def _write_manifest(out: Path, command: str, params: dict, files: list[str]) -> None:
    lines = [f"command = {command}", f"version = {__version__}"]
    lines += [f"{k} = {v}" for k, v in params.items()]
    for name in files:
        digest = hashlib.sha256((out / name).read_bytes()).hexdigest()
        lines.append(f"sha256.{name} = {digest}")
    (out / "manifest.txt").write_text("\n".join(lines) + "\n")


def _config_from_args(args) -> gen.GrowthConfig:
    chosen = [x is not None for x in (args.alpha, args.beta, args.ba_w)]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --alpha, --beta, --ba-w")
    common = dict(seed=args.seed, snapshot_stride=args.snapshots)
    try:
        if args.alpha is not None:
            return gen.GrowthConfig.fixed_alpha(args.alpha, args.nodes, **common)
        if args.beta is not None:
            return gen.GrowthConfig.variable_beta(args.beta, args.nodes, **common)
        return gen.GrowthConfig.ba(args.ba_w, args.nodes, **common)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


def cmd_generate(args) -> int:
    if args.config:
        config = gen.GrowthConfig.load(args.config)
    else:
        config = _config_from_args(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seeds = [config.seed + i for i in range(args.seeds)]
    runs = gen.generate_ensemble(config, seeds, workers=args.workers)
    files = []
    config.save(out / "config.txt")
    files.append("config.txt")
    for seed, (g, trace) in zip(seeds, runs):
        suffix = "" if len(seeds) == 1 else f"_seed{seed}"
        gen.write_edge_list(g, out / f"edges{suffix}.txt")
        trace.to_csv(out / f"trace{suffix}.csv")
        files += [f"edges{suffix}.txt", f"trace{suffix}.csv"]
        if config.snapshot_stride:
            trace.snapshots_to_csv(out / f"snapshots{suffix}.csv")
            files.append(f"snapshots{suffix}.csv")
    ingest.export_distribution(gen.merged_histogram(g for g, _ in runs), out / "degree_distribution.csv")
    files.append("degree_distribution.csv")
    params = config.to_dict()
    params["seeds"] = ",".join(map(str, seeds))
    _write_manifest(out, "generate", params, files)
    g, trace = runs[0]
    print(f"generated {len(runs)} graph(s): n={g.n} m={g.m} -> {out}")
    return 0


def _stationary_rows(alpha: int, k_limit: int | None) -> np.ndarray:
    k_max = k_limit or 10_000
    p = theory.stationary_distribution(alpha, k_max)
    if k_limit is None:
        keep = np.flatnonzero(p >= 1e-12)
        p = p[: keep[-1] + 1]
    return p


def _slope_csv(alpha: int, k_max: int) -> str:
    rows = ["k,delta"] + [f"{int(k)},{d:.10g}" for k, d in theory.slope_table(alpha, k_max)]
    rows.append(f"inf,{theory.slope_asymptote(alpha):.10g}")
    return "\n".join(rows) + "\n"


def cmd_theory(args) -> int:
    if (args.alpha is None) == (args.beta is None):
        raise UsageError("give exactly one of --alpha, --beta")
    if args.beta is not None and (args.stationary_only or args.slopes):
        raise UsageError("variable-beta growth has no stationary distribution or slope table")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    params = {"alpha": args.alpha, "beta": args.beta, "t_max": args.t_max, "k_max": args.k_max}
    if args.alpha is not None:
        p = _stationary_rows(args.alpha, args.table_k)
        rows = ["k,pk"] + [f"{k},{p[k]:.6g}" for k in range(1, len(p))]
        (out / "stationary.csv").write_text("\n".join(rows) + "\n")
        files.append("stationary.csv")
        print(f"stationary P_1 = {p[1]:.6f}")
    if args.slopes:
        (out / "slopes.csv").write_text(_slope_csv(args.alpha, args.slope_k))
        files.append("slopes.csv")
    if not args.stationary_only:
        record = [int(x) for x in args.record.split(",") if x] if args.record else []
        try:
            res = theory.integrate_recurrence(args.t_max, alpha=args.alpha, beta=args.beta, k_max=args.k_max, record=record)
        except ConfigError as exc:
            raise UsageError(str(exc)) from None
        for w in res.warnings:
            print(f"warning: {w}", file=sys.stderr)
        dists = dict(res.snapshots)
        dists[res.final.t] = res.final
        rows = ["t,k,pk"]
        for t in sorted(dists):
            r = dists[t].ranks
            rows += [f"{t},{k},{r[k]:.6g}" for k in np.flatnonzero(r)]
        (out / "trajectory.csv").write_text("\n".join(rows) + "\n")
        ts = np.arange(2, args.t_max + 1)
        p1_rows = ["t,p1"] + [f"{t},{v:.6g}" for t, v in zip(ts.tolist(), res.p1[2:].tolist())]
        (out / "p1.csv").write_text("\n".join(p1_rows) + "\n")
        files += ["trajectory.csv", "p1.csv"]
        params["tail_mass"] = f"{res.final.tail_mass:.3g}"
        print(f"integrated to t={args.t_max}: P_1 = {res.final.p(1):.6f}")
    _write_manifest(out, "theory", params, files)
    return 0


def cmd_slopes(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "slopes.csv").write_text(_slope_csv(args.alpha, args.k_max))
    _write_manifest(out, "slopes", {"alpha": args.alpha, "k_max": args.k_max}, ["slopes.csv"])
    return 0


def cmd_fit(args) -> int:
    hist, _ = ingest.load_histogram(args.input)
    fit = powerlaw.fit_power_law(hist, kmin_quantile=args.kmin_quantile, bootstrap=args.bootstrap, rng=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rec = fit.to_record()
    header = list(rec)
    values = [f"{v:.6g}" if isinstance(v, float) else str(v) for v in rec.values()]
    if fit.p_value is not None:
        header.append("p_value")
        values.append(f"{fit.p_value:.6g}")
    (out / "fit.csv").write_text(",".join(header) + "\n" + ",".join(values) + "\n")
    _write_manifest(out, "fit", {"input": args.input, "kmin_quantile": args.kmin_quantile, "bootstrap": args.bootstrap}, ["fit.csv"])
    print(f"gamma = {fit.gamma:.4f}  k_min = {fit.k_min}  ks = {fit.ks_stat:.4g}" + ("  (degenerate)" if fit.degenerate else ""))
    return 0


def cmd_compare(args) -> int:
    if args.auto and (args.wsm or args.ba):
        raise UsageError("--auto generates its own graphs; drop --wsm/--ba")
    if not args.auto and not (args.wsm or args.ba):
        raise UsageError("need --wsm and/or --ba, or --auto")
    real, edges = ingest.load_histogram(args.real)
    hists = {"real": real}
    params = {"real": args.real}
    if args.auto:
        if edges is not None:
            n, m = edges.n_nodes, edges.n_edges
        else:
            n, m = real.total_nodes, real.degree_sum // 2
        alpha = ingest.estimate_alpha(n, m)
        w = ingest.matched_ba_w(n, m)
        g_wsm, _ = gen.generate(gen.GrowthConfig.fixed_alpha(alpha, n, seed=args.seed))
        # a separate seed: with alpha = 0 and w = 1 a shared stream would give the same graph
        g_ba, _ = gen.generate(gen.GrowthConfig.ba(w, n, seed=args.seed + 1))
        hists["wsm"] = g_wsm.degree_histogram()
        hists["ba"] = g_ba.degree_histogram()
        params.update(auto="true", nodes=n, edges=m, alpha=alpha, w=w, seed=args.seed, ba_seed=args.seed + 1)
    else:
        if args.wsm:
            hists["wsm"] = ingest.load_histogram(args.wsm)[0]
            params["wsm"] = args.wsm
        if args.ba:
            hists["ba"] = ingest.load_histogram(args.ba)[0]
            params["ba"] = args.ba
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "cdf.csv").write_text(ingest.aligned_cdf_table(hists))
    names = list(hists)
    rows = ["a,b,ks"]
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            d = ingest.compare_cdf(hists[a], hists[b])
            rows.append(f"{a},{b},{d:.6g}")
            print(f"KS({a}, {b}) = {d:.4g}")
    (out / "ks.csv").write_text("\n".join(rows) + "\n")
    _write_manifest(out, "compare", params, ["cdf.csv", "ks.csv"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="grow WSM or BA networks")
    p.add_argument("--alpha", type=int, help="fixed edge-step size")
    p.add_argument("--beta", type=float, help="variable edge-step exponent in (1, 2)")
    p.add_argument("--ba-w", type=int, help="BA baseline with w links per arrival")
    p.add_argument("--nodes", type=int, default=10_000, help="final node count t_max")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds to run")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--snapshots", type=int, default=0, help="degree histogram every K nodes")
    p.add_argument("--config", help="read a key = value growth config instead of flags")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("theory", help="stationary forms and recurrence integration")
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--t-max", type=int, default=100_000)
    p.add_argument("--k-max", type=int, default=theory.DEFAULT_K_MAX, help="integrator degree cap")
    p.add_argument("--table-k", type=int, help="rows in the stationary table")
    p.add_argument("--stationary-only", action="store_true")
    p.add_argument("--slopes", action="store_true", help="also write the slope table")
    p.add_argument("--slope-k", type=int, default=100_000)
    p.add_argument("--record", help="comma-separated times to include in trajectory.csv")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("slopes", help="local log-log slope table of the stationary distribution")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--k-max", type=int, default=100_000)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_slopes)

    p = sub.add_parser("fit", help="fit gamma and k_min to an edge list or distribution file")
    p.add_argument("--input", required=True)
    p.add_argument("--kmin-quantile", type=float, default=0.9)
    p.add_argument("--bootstrap", type=int, default=0, help="goodness-of-fit replicates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("compare", help="aligned degree CDFs and KS distances")
    p.add_argument("--real", required=True)
    p.add_argument("--wsm")
    p.add_argument("--ba")
    p.add_argument("--auto", action="store_true", help="generate matched WSM and BA graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"wsnet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"wsnet {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (WSNetError, ValueError) as exc:
        print(f"wsnet {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
