"""Command-line interface.

    dicolor solve {chi,chil} FILE
    dicolor color PROCEDURE FILE --lists JSON [--seed S] [--max-retries R] [--partial JSON]
    dicolor experiment NAME [--trials T] [--seed S] [-n N ...] [-p P] [-k K] [--side-size S] [--out PATH]
    dicolor gen {tournament,random,bipartite} -n N [-p P] [--seed S]

JSON arguments may be a path or inline JSON text.  All output is canonical
(sorted keys), so identical arguments give byte-identical output.  Exit codes:
0 success, 1 input or procedure error, 2 asserted-invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from dicolor import experiments
from dicolor.digraph import Bipartition, degree_stats
from dicolor.errors import DicolorError
from dicolor.exact import (
    dichromatic_number,
    greedy_min_inout_list_color,
    list_dichromatic_number,
)
from dicolor.generators import gen_random_complete_bipartite, gen_random_digraph, gen_random_tournament
from dicolor.io import coloring_from_json, coloring_to_json, dumps, lists_from_json, lists_to_json, load_digraph, write_digraph
from dicolor.procedures import (
    bipartite_random_split_color,
    chi_lnn_split_color,
    greedy_extend,
    lll_digonfree_color,
    ohba_transfer,
    tournament_list_color,
)

PROCEDURES = ("greedy-degeneracy", "ohba", "bip-split", "chi-split", "tournament", "lll", "greedy-extend")


def _json_arg(value: str):
    path = Path(value)
    if not value.lstrip().startswith(("{", "[")) and path.exists():
        value = path.read_text()
    return json.loads(value)


def _partition_json(P) -> list:
    return [sorted(cls) for cls in P.classes]


def cmd_solve(args) -> int:
    D = load_digraph(args.file)
    if args.what == "chi":
        res = dichromatic_number(D)
        out = {"chi": res.value, "partition": _partition_json(res.certificate)}
    else:
        res = list_dichromatic_number(D)
        witness = None if res.certificate is None else lists_to_json(res.certificate)
        out = {"chi_l": res.value, "failing_lists": witness}
    sys.stdout.write(dumps(out))
    return 0


def cmd_color(args) -> int:
    D = load_digraph(args.file)
    L = lists_from_json(_json_arg(args.lists))
    proc = args.procedure
    if proc == "greedy-degeneracy":
        c = greedy_min_inout_list_color(D, L)
    elif proc == "ohba":
        c = ohba_transfer(D, dichromatic_number(D).certificate, L)
    elif proc == "bip-split":
        c = bipartite_random_split_color(D, Bipartition.from_digraph(D), L, args.seed, args.max_retries)
    elif proc == "chi-split":
        c = chi_lnn_split_color(D, dichromatic_number(D).certificate, L, args.seed, args.max_retries)
    elif proc == "tournament":
        c = tournament_list_color(D, L, args.seed)
    elif proc == "lll":
        c = lll_digonfree_color(D, L, args.seed, max_rounds=args.max_retries)
    else:
        if args.partial is None:
            raise DicolorError("greedy-extend needs --partial")
        c = greedy_extend(D, L, coloring_from_json(_json_arg(args.partial)))
    out = coloring_to_json(c)
    out["stats"] = dict(c.stats)
    sys.stdout.write(dumps(out))
    return 0


def cmd_experiment(args) -> int:
    name = args.name
    common = {"seed": args.seed}
    if args.trials is not None and name != "ohba":
        common["trials"] = args.trials
    n_values = args.n or []
    if name == "ohba":
        kw = {"nmax": n_values[0] if n_values else 4, "transfers": args.trials or 0}
    elif name == "bipartite-lower":
        kw = {"k": args.k or 2, "side_size": args.side_size or 12}
    elif name == "tournament-alpha":
        kw = {"n_list": n_values or [16]}
    elif name == "mset-acyclic":
        kw = {"n": n_values[0] if n_values else 1024}
    else:
        kw = {"n": n_values[0] if n_values else 20, "p": 0.25 if args.p is None else args.p}
    report = experiments.EXPERIMENTS[name](**kw, **common)
    if args.out:
        report.write(args.out)
    else:
        sys.stdout.write(report.to_json())
    for v in report.violations:
        print(f"violation: {v}", file=sys.stderr)
    return 0 if report.ok else 2


def cmd_gen(args) -> int:
    if args.model == "tournament":
        D = gen_random_tournament(args.n, args.seed)
    elif args.model == "random":
        D = gen_random_digraph(args.n, args.p, args.seed)
    else:
        D, _ = gen_random_complete_bipartite(args.n, args.seed)
    sys.stdout.write(write_digraph(D))
    return 0


def cmd_stats(args) -> int:
    D = load_digraph(args.file)
    s = degree_stats(D)
    sys.stdout.write(dumps({
        "n": D.n,
        "arcs": D.num_arcs,
        "digon_free": D.is_digon_free(),
        "tournament": D.is_tournament(),
        "delta_tilde": s.delta_tilde,
        "max_out_degree": s.delta_out_max,
        "max_in_degree": s.delta_in_max,
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dicolor", description="Dichromatic and list-dichromatic numbers of digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact chi or chi_l")
    p.add_argument("what", choices=("chi", "chil"))
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("color", help="list-color with one of the procedures")
    p.add_argument("procedure", choices=PROCEDURES)
    p.add_argument("file")
    p.add_argument("--lists", required=True, help="list assignment JSON (path or inline)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-retries", type=int, default=64, help="split retries or resampling rounds")
    p.add_argument("--partial", help="partial coloring JSON for greedy-extend")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("experiment", help="run a seeded experiment")
    p.add_argument("name", choices=sorted(experiments.EXPERIMENTS))
    p.add_argument("--trials", type=int, help="trials (for ohba: random transfers per digraph)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-n", type=int, action="append", help="vertex count; repeatable for tournament-alpha; nmax for ohba")
    p.add_argument("-p", type=float)
    p.add_argument("-k", type=int)
    p.add_argument("--side-size", type=int)
    p.add_argument("--out", help="write report to .csv or .json instead of stdout")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("gen", help="write a random digraph in the text format")
    p.add_argument("model", choices=("tournament", "random", "bipartite"))
    p.add_argument("-n", type=int, required=True, help="vertices (bipartite: side size)")
    p.add_argument("-p", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="degree statistics of a digraph")
    p.add_argument("file")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DicolorError, ValueError, IndexError, OSError) as exc:
        print(f"dicolor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
