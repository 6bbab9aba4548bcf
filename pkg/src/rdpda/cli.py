"""Command-line front end.

Subcommands: gen (sample machines), count (exact and asymptotic counts),
reach (reachability analysis of a JSON machine), accept (run a word), xp
(experiment grids).  Randomized subcommands require --seed.  Errors leave
a one-line JSON object on stderr and a distinct exit code: 2 for bad
parameters, 3 for unreadable input, 4 for rejection give-up.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import counting, pipelines, reachability, serialize
from .core import AcceptanceMode, Alphabets, accepts
from .errors import FormatError, GiveUpError, ParameterError
from .pipelines import XP_TABLES, PipelineConfig
from .rng import make_rng

_MODES = tuple(mode.value for mode in AcceptanceMode)


class _Parser(argparse.ArgumentParser):
    # argparse wants to exit(2) with plain-text usage; route through our errors
    def error(self, message):
        raise ParameterError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"not a rational number: {text!r}") from exc


def _add_size_options(p: argparse.ArgumentParser, *, seed: bool) -> None:
    p.add_argument("--n", type=int, required=True, help="number of states")
    p.add_argument("--alpha", type=int, default=2, help="input alphabet size (default 2)")
    p.add_argument("--beta", type=int, default=2, help="stack alphabet size (default 2)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", type=_fraction, metavar="RATIO",
                       help="output size as a multiple of the transition count")
    group.add_argument("--m", type=int, help="output size (total pushed symbols)")
    if seed:
        p.add_argument("--seed", type=int, required=True, help="RNG seed")


def _alphabets(args) -> Alphabets:
    return Alphabets.default(args.alpha, args.beta)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _cmd_gen(args) -> int:
    if args.count < 1:
        raise ParameterError("need --count >= 1")
    cfg = PipelineConfig(
        num_states=args.n,
        alphabets=_alphabets(args),
        lam=args.lam,
        output_size=args.m,
        mode=AcceptanceMode(args.mode),
        min_pop_fraction=args.min_pop_fraction,
        max_rejects=args.max_rejects,
    )
    rng = make_rng(args.seed)
    out = []
    for _ in range(args.count):
        if args.require == "nonempty":
            a, _report = pipelines.sample_nonempty(cfg, rng)
        elif args.require == "reachable":
            a, _report = pipelines.sample_reachable(cfg, rng)
        else:
            a = pipelines.sample_rdpda(cfg, rng)
        out.append(a)
    if args.format == "dot":
        for a in out:
            print(serialize.to_dot(a))
    elif args.count == 1:
        print(serialize.to_json(out[0]))
    else:
        print(json.dumps([serialize.to_json_dict(a) for a in out], indent=2))
    return 0


def _cmd_count(args) -> int:
    alphabets = _alphabets(args)
    n = args.n
    s = n * alphabets.rho
    if args.lam is not None:
        m_exact = args.lam * s
        if m_exact.denominator != 1:
            raise ParameterError(f"output size lambda * rho * n = {m_exact} is not an integer")
        m = int(m_exact)
    else:
        m = args.m
        if m < 0:
            raise ParameterError("need m >= 0")
    doc = {
        "num_states": n,
        "sigma_size": alphabets.alpha,
        "gamma_size": alphabets.beta,
        "transition_count": s,
        "output_size": m,
        "structure_classes": str(counting.count_accessible_dfa_classes(n, alphabets.rho)),
        "decorations": str(counting.count_decorations(s, m, alphabets.beta)),
        "rdpda": str(counting.count_rdpda(n, m, alphabets)),
    }
    if args.lam is not None and args.lam > 0:
        est = counting.asymptotic_decorations(args.lam, s, alphabets.beta)
        doc["asymptotic_decorations"] = {
            "scientific": est.scientific(),
            "log10": est.log_value / math.log(10),
            "regime": est.regime,
        }
        if args.gamma_rho is not None:
            full = counting.asymptotic_rdpda(args.lam, n, alphabets, args.gamma_rho)
            doc["asymptotic_rdpda"] = {
                "scientific": full.scientific(),
                "log10": full.log_value / math.log(10),
                "regime": full.regime,
                "gamma_rho": args.gamma_rho,
            }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_reach(args) -> int:
    a = serialize.from_json(_read_input(args.file))
    pa = reachability.analyze(a)
    reach = sorted(q for q in pa.reachable_control if q < a.num_states)
    empty = sorted(q for q in pa.empty_stack_control if q < a.num_states)
    finals = a.finals
    doc = {
        "reachable": reach,
        "empty_stack_reachable": empty,
        "language_empty": {
            AcceptanceMode.EMPTY_STACK.value: not empty,
            AcceptanceMode.FINAL_STATE.value: not (set(reach) & finals),
            AcceptanceMode.FINAL_STATE_AND_EMPTY_STACK.value: not (set(empty) & finals),
        },
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_accept(args) -> int:
    a = serialize.from_json(_read_input(args.file))
    verdict = accepts(a, args.word, AcceptanceMode(args.mode))
    print(json.dumps(verdict))
    return 0


def _render_tsv(table, grids) -> str:
    lines = []
    for (alpha, beta), grid in grids:
        lines.append(f"# alpha={alpha} beta={beta} metric={table.metric}")
        lines.append("lambda\t" + "\t".join(str(n) for n in table.sizes))
        for lam in table.lambdas:
            cells = [grid[(lam, n)].cell() for n in table.sizes]
            lines.append(str(lam) + "\t" + "\t".join(cells))
    return "\n".join(lines)


def _render_json(name, table, grids, samples, seed) -> str:
    blocks = []
    for (alpha, beta), grid in grids:
        cells = []
        for lam in table.lambdas:
            for n in table.sizes:
                st = grid[(lam, n)]
                cells.append({
                    "lambda": str(lam),
                    "n": n,
                    "count": st.count,
                    "mean": None if st.count == 0 else st.mean,
                    "stderr": None if st.count < 2 else st.stderr,
                    "gave_up": st.gave_up,
                    "note": st.note,
                })
        blocks.append({"alpha": alpha, "beta": beta, "cells": cells})
    doc = {
        "table": name,
        "metric": table.metric,
        "samples": samples,
        "seed": seed,
        "blocks": blocks,
    }
    return json.dumps(doc, indent=2)


def _cmd_xp(args) -> int:
    table = XP_TABLES[args.table]
    metric = args.metric or table.metric
    grids = []
    for block_index, (alpha, beta) in enumerate(table.blocks):
        grid = pipelines.collect_table(
            metric,
            table.lambdas,
            table.sizes,
            args.samples,
            Alphabets.default(alpha, beta),
            min_pop_fraction=table.min_pop_fraction,
            max_rejects=args.max_rejects,
            seed=args.seed + block_index,
        )
        grids.append(((alpha, beta), grid))
    table = pipelines.XpTable(metric, table.blocks, table.lambdas, table.sizes,
                              table.min_pop_fraction)
    if args.format == "json":
        print(_render_json(args.table, table, grids, args.samples, args.seed))
    else:
        print(_render_tsv(table, grids))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="rdpda", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("gen", help="sample uniform machines")
    _add_size_options(gen, seed=True)
    gen.add_argument("--mode", choices=_MODES, default=AcceptanceMode.FINAL_STATE.value)
    gen.add_argument("--min-pop-fraction", type=_fraction, default=None, metavar="RATIO",
                     help="force at least ceil(fraction * s) pop transitions")
    gen.add_argument("--require", choices=("none", "nonempty", "reachable"), default="none",
                     help="rejection filter applied to each sample")
    gen.add_argument("--max-rejects", type=int, default=300)
    gen.add_argument("--count", type=int, default=1, help="number of samples (default 1)")
    gen.add_argument("--format", choices=("json", "dot"), default="json")
    gen.set_defaults(run=_cmd_gen)

    count = sub.add_parser("count", help="exact and asymptotic counts")
    _add_size_options(count, seed=False)
    count.add_argument("--gamma-rho", type=float, default=None,
                       help="leading constant for the full asymptotic estimate")
    count.set_defaults(run=_cmd_count)

    reach = sub.add_parser("reach", help="reachability analysis of a JSON machine")
    reach.add_argument("file", help="path to a machine in JSON form, or - for stdin")
    reach.set_defaults(run=_cmd_reach)

    accept = sub.add_parser("accept", help="simulate a word")
    accept.add_argument("file", help="path to a machine in JSON form, or - for stdin")
    accept.add_argument("--word", required=True, help="input word (may be empty)")
    accept.add_argument("--mode", choices=_MODES, default=AcceptanceMode.FINAL_STATE.value)
    accept.set_defaults(run=_cmd_accept)

    xp = sub.add_parser("xp", help="reproduce an experiment grid")
    xp.add_argument("table", choices=sorted(XP_TABLES))
    xp.add_argument("--samples", type=int, default=100, help="samples per cell (default 100)")
    xp.add_argument("--seed", type=int, required=True)
    xp.add_argument("--metric", choices=pipelines.METRICS, default=None,
                    help="override the table's default metric")
    xp.add_argument("--max-rejects", type=int, default=300)
    xp.add_argument("--format", choices=("tsv", "json"), default="tsv")
    xp.set_defaults(run=_cmd_xp)
    return parser


def _fail(code: int, kind: str, message: str, **extra) -> int:
    doc = {"error": kind, "message": message, **extra}
    print(json.dumps(doc), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.run(args)
    except ParameterError as exc:
        return _fail(2, "parameter", str(exc))
    except FormatError as exc:
        return _fail(3, "format", str(exc))
    except GiveUpError as exc:
        return _fail(4, "give-up", str(exc), rejects=exc.rejects)


if __name__ == "__main__":
    sys.exit(main())
