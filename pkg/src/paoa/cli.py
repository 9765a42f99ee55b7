"""Command-line front end: graph generation, benchmark tables, scaling sweeps.

Settings resolve in three layers: command-line flags override entries in an
optional flat ``key=value`` config file, which override built-in defaults.
All randomness derives from one master seed, so repeated invocations with
the same settings produce byte-identical output files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .errors import GenerationError, ResourceLimitError
from .graph import (
    BarabasiAlbert,
    Complete,
    ErdosRenyi,
    Graph,
    GraphFamily,
    RandomRegular,
    Ring,
    generate,
    read_graph,
    write_graph,
)
from .protocol import (
    BruteForce,
    Method,
    PaoaFull,
    PaoaMin,
    PaoaReduced,
    Qaoa,
    Random,
    RunConfig,
    aggregate,
    graph_seed,
    run_trials,
)
from .graph import brute_force

CSV_HEADER = "method,graph,n,edges,trial,best,mean,sd,ratio"
SWEEP_HEADER = "size,method,trial,ratio,best_over_n"
SWEEP_MEANS_HEADER = "size,method,mean_ratio,mean_best_over_n"
R_TRUE_MAX_N = 24  # brute-force oracle for the R_true column up to this size


# ---------------------------------------------------------------------------
# Token parsing
# ---------------------------------------------------------------------------


def parse_family(token: str) -> GraphFamily:
    """Parse 'ring:20', 'regular:20:3', 'complete:10', 'ba:20:1:2', 'er:20:0.5'."""
    name, *rest = token.strip().split(":")
    try:
        if name == "ring":
            (n,) = rest
            return Ring(int(n))
        if name == "complete":
            (n,) = rest
            return Complete(int(n))
        if name == "regular":
            n, k = rest
            return RandomRegular(int(n), int(k))
        if name == "ba":
            n = int(rest[0])
            m = int(rest[1]) if len(rest) > 1 else 1
            seed_nodes = int(rest[2]) if len(rest) > 2 else 2
            return BarabasiAlbert(n, m, seed_nodes)
        if name == "er":
            n, p = rest
            return ErdosRenyi(int(n), float(p))
    except ValueError as exc:
        raise ValueError(f"bad graph family {token!r}: {exc}") from exc
    raise ValueError(f"unknown graph family {token!r}")


def parse_sweep_family(template: str, n: int) -> GraphFamily:
    """Family template with the size left out: 'ring', 'regular:3', 'ba:1:1', ..."""
    name, *rest = template.strip().split(":")
    token = ":".join([name, str(n), *rest])
    return parse_family(token)


def parse_method(token: str) -> Method:
    name, *rest = token.strip().split(":")
    try:
        if name == "brute" and not rest:
            return BruteForce()
        if name == "random" and not rest:
            return Random()
        if name == "full" and not rest:
            return PaoaFull()
        if name == "reduced" and not rest:
            return PaoaReduced()
        if name == "min":
            return PaoaMin(int(rest[0]) if rest else 1)
        if name == "qaoa":
            return Qaoa(int(rest[0]) if rest else 1)
    except ValueError as exc:
        raise ValueError(f"bad method {token!r}: {exc}") from exc
    raise ValueError(f"unknown method {token!r}")


def parse_methods(tokens: str) -> list[Method]:
    methods = [parse_method(t) for t in tokens.split(",") if t.strip()]
    if not methods:
        raise ValueError("need at least one method")
    return methods


def read_config(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and '#' comments are ignored."""
    settings: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        settings[key.strip()] = value.strip()
    return settings


def _setting(args, config: dict[str, str], key: str, default=None, cast=str):
    value = getattr(args, key, None)
    if value is None and key in config:
        value = cast(config[key])
    if value is None:
        value = default
    return value


# ---------------------------------------------------------------------------
# Output rendering
# ---------------------------------------------------------------------------


def _csv_rows(method: Method, label: str, g: Graph, trials) -> list[str]:
    return [
        f"{method.token},{label},{g.n},{g.num_edges},{i},"
        f"{t.stats.best},{t.stats.mean!r},{t.stats.sd!r},{t.stats.ratio!r}"
        for i, t in enumerate(trials)
    ]


def render_table(agg_rows, true_best: int | None) -> str:
    """Markdown table of aggregate metrics, one row per method."""
    cols = ["Method", "Best", "Average", "SD", "R"]
    if true_best is not None:
        cols.append("R_true")
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for method, agg in agg_rows:
        if agg is None:
            cells = [method.label, "skipped"] + ["-"] * (len(cols) - 2)
        else:
            cells = [
                method.label,
                str(agg.best),
                f"{agg.average:.2f}",
                f"{agg.sd:.2f}",
                f"{agg.ratio:.2f}",
            ]
            if true_best is not None:
                cells.append(f"{agg.average / true_best:.2f}")
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def _write_lines(path: str, lines: list[str]) -> None:
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    family = parse_family(args.family)
    g = generate(family, graph_seed(args.seed))
    write_graph(g, args.out)
    print(f"{args.out}: n={g.n} edges={g.num_edges}")
    return 0


def cmd_bench(args) -> int:
    config = read_config(args.config) if args.config else {}
    family_tok = _setting(args, config, "family")
    graph_file = _setting(args, config, "graph_file")
    if (family_tok is None) == (graph_file is None):
        raise ValueError("give exactly one of --family or --graph-file")
    seed = _setting(args, config, "seed", default=0, cast=int)
    cfg = RunConfig(
        iterations=_setting(args, config, "iterations", default=100, cast=int),
        shots=_setting(args, config, "shots", default=100, cast=int),
        trials=_setting(args, config, "trials", default=100, cast=int),
        seed=seed,
    )
    methods_tok = _setting(args, config, "methods")
    if methods_tok is None:
        raise ValueError("no methods given (flag --methods or config key methods)")
    methods = parse_methods(methods_tok)
    out = _setting(args, config, "out")
    if out is None:
        raise ValueError("no CSV output path given (--out)")
    md_path = _setting(args, config, "md")

    if graph_file is not None:
        g = read_graph(graph_file)
        label = Path(graph_file).name
    else:
        g = generate(parse_family(family_tok), graph_seed(seed))
        label = family_tok

    rows = [CSV_HEADER]
    agg_rows = []
    for method in methods:
        try:
            trials = run_trials(method, g, cfg)
        except ResourceLimitError as exc:
            print(f"skipping {method.label}: {exc}", file=sys.stderr)
            agg_rows.append((method, None))
            continue
        rows.extend(_csv_rows(method, label, g, trials))
        agg_rows.append((method, aggregate(trials)))
    _write_lines(out, rows)

    true_best = brute_force(g).best if g.n <= R_TRUE_MAX_N else None
    table = render_table(agg_rows, true_best)
    print(table, end="")
    if md_path:
        Path(md_path).write_text(table)
    return 0


def cmd_sweep(args) -> int:
    config = read_config(args.config) if args.config else {}
    template = _setting(args, config, "family")
    if template is None:
        raise ValueError("no family template given (--family)")
    sizes_tok = _setting(args, config, "sizes")
    if sizes_tok is None:
        raise ValueError("no sizes given (--sizes)")
    sizes = [int(s) for s in sizes_tok.split(",") if s.strip()]
    if sizes != sorted(set(sizes)):
        raise ValueError(f"sizes must be ascending and distinct, got {sizes}")
    methods_tok = _setting(args, config, "methods")
    if methods_tok is None:
        raise ValueError("no methods given (--methods)")
    methods = parse_methods(methods_tok)
    seed = _setting(args, config, "seed", default=0, cast=int)
    iterations = _setting(args, config, "iterations", default=100, cast=int)
    shots = _setting(args, config, "shots", default=100, cast=int)
    trials = _setting(args, config, "trials", default=10, cast=int)
    out = _setting(args, config, "out")
    if out is None:
        raise ValueError("no CSV output path given (--out)")

    points = [SWEEP_HEADER]
    means = [SWEEP_MEANS_HEADER]
    for size in sizes:
        g = generate(
            parse_sweep_family(template, size),
            np.random.SeedSequence(seed, spawn_key=(0, size)),
        )
        # independent sub-seed per size so trial streams differ across sizes
        size_seed = int(np.random.SeedSequence(seed, spawn_key=(2, size)).generate_state(1)[0])
        cfg = RunConfig(iterations=iterations, shots=shots, trials=trials, seed=size_seed)
        for method in methods:
            try:
                results = run_trials(method, g, cfg)
            except ResourceLimitError as exc:
                print(f"skipping {method.label} at size {size}: {exc}", file=sys.stderr)
                continue
            for i, t in enumerate(results):
                points.append(
                    f"{size},{method.token},{i},{t.stats.ratio!r},{t.stats.best / g.n!r}"
                )
            mean_ratio = float(np.mean([t.stats.ratio for t in results]))
            mean_bn = float(np.mean([t.stats.best / g.n for t in results]))
            means.append(f"{size},{method.token},{mean_ratio!r},{mean_bn!r}")
    _write_lines(out, points)
    means_path = _setting(args, config, "means_out")
    if means_path is None:
        p = Path(out)
        means_path = str(p.with_name(p.stem + "_means" + p.suffix))
    _write_lines(means_path, means)
    print(f"{out}: {len(points) - 1} points; {means_path}: {len(means) - 1} rows")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paoa",
        description="Max-Cut benchmarks for probabilistic (PAOA) and quantum "
        "(QAOA) variational circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a graph and write it to a file")
    gen.add_argument("--family", required=True, help="e.g. ring:20, regular:20:3, er:20:0.5")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    bench = sub.add_parser("bench", help="benchmark methods on one graph")
    bench.add_argument("--config", help="flat key=value settings file")
    bench.add_argument("--family", help="graph family token, e.g. ring:20")
    bench.add_argument("--graph-file", dest="graph_file", help="read the graph from a file")
    bench.add_argument("--methods", help="comma list: brute,random,full,reduced,min:L,qaoa:P")
    bench.add_argument("--trials", type=int)
    bench.add_argument("--iterations", type=int)
    bench.add_argument("--shots", type=int)
    bench.add_argument("--seed", type=int)
    bench.add_argument("--out", help="per-trial CSV path")
    bench.add_argument("--md", help="also write the aggregate Markdown table here")
    bench.set_defaults(func=cmd_bench)

    sweep = sub.add_parser("sweep", help="run methods across graph sizes")
    sweep.add_argument("--config", help="flat key=value settings file")
    sweep.add_argument("--family", help="family template without size, e.g. ring or ba:1:1")
    sweep.add_argument("--sizes", help="comma list of ascending sizes")
    sweep.add_argument("--methods")
    sweep.add_argument("--trials", type=int)
    sweep.add_argument("--iterations", type=int)
    sweep.add_argument("--shots", type=int)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--out", help="raw points CSV path")
    sweep.add_argument("--means-out", dest="means_out", help="per-size means CSV path")
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, GenerationError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
