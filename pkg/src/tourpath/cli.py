"""Command line interface: embed, oracle, gen, sweep, report, exceptions."""

from __future__ import annotations

import argparse
import os
import sys

from .canon import representative
from .embedder import embed, validate
from .generate import gen_random
from .oracle import oracle_embed
from .paths import PathPattern, PatternError
from .sweep import ReportError, SweepConfig, SweepError, report, sweep
from .tournament import Tournament, TournamentError

EXIT_WITNESS = 0
EXIT_EXCEPTION = 1
EXIT_BAD_INPUT = 2


def _load_tournament(arg: str) -> Tournament:
    if arg.startswith("T:"):
        return Tournament.from_code(arg)
    if os.path.exists(arg):
        with open(arg) as fh:
            return Tournament.from_text(fh.read())
    raise TournamentError(f"{arg!r} is neither a T:<n>:<hex> code nor a readable file")


def _cmd_embed(args) -> int:
    try:
        t = _load_tournament(args.tournament)
        p = PathPattern.parse(args.pattern)
        if p.n != t.n:
            raise PatternError(f"pattern has {p.n} vertices, tournament has {t.n}")
    except (TournamentError, PatternError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    out = embed(t, p, n0=args.n0)
    if out.is_embedding:
        print(" ".join(str(v) for v in out.result.seq))
        if args.trace:
            print("trace: " + " ".join(out.method), file=sys.stderr)
        return EXIT_WITNESS
    rep = out.result
    print(f"exception {rep.kind} iso=" + ",".join(str(v) for v in rep.iso))
    return EXIT_EXCEPTION


def _cmd_oracle(args) -> int:
    try:
        t = _load_tournament(args.tournament)
        p = PathPattern.parse(args.pattern)
        if p.n != t.n:
            raise PatternError(f"pattern has {p.n} vertices, tournament has {t.n}")
    except (TournamentError, PatternError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    got = oracle_embed(t, p)
    if got is not None:
        assert validate(t, p, got)
        print(" ".join(str(v) for v in got))
        return EXIT_WITNESS
    print("no embedding")
    return EXIT_EXCEPTION


def _cmd_gen(args) -> int:
    try:
        for k in range(args.count):
            t = gen_random(args.n, args.seed + k, args.model)
            print(t.to_code())
    except TournamentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    return 0


def _cmd_sweep(args) -> int:
    try:
        with open(args.config) as fh:
            cfg = SweepConfig.parse(fh.read())
        summary = sweep(cfg)
    except (OSError, SweepError, TournamentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    print(f"instances: {summary.total}")
    print(f"witnesses: {summary.witnesses}")
    print(f"exceptions: {summary.exceptions}")
    for kind in sorted(summary.exception_census):
        print(f"exception[{kind}]: {summary.exception_census[kind]}")
    for tag in sorted(summary.method_histogram):
        print(f"method[{tag}]: {summary.method_histogram[tag]}")
    print(f"thm3_fallback_rate: {summary.fallback_rate():.6f}")
    print(f"oracle_checked: {summary.oracle_checked}")
    print(f"disagreements: {summary.disagreements}")
    print(f"elapsed_us_p50<=: {summary.timing_percentile(0.50)}")
    print(f"elapsed_us_p99<=: {summary.timing_percentile(0.99)}")
    return 0


def _cmd_report(args) -> int:
    try:
        text, csv = report(args.records)
    except (OSError, ReportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    sys.stdout.write(text)
    csv_path = args.csv or (args.records + ".summary.csv")
    with open(csv_path, "w") as fh:
        fh.write(csv)
    print(f"csv: {csv_path}", file=sys.stderr)
    return 0


def _cmd_exceptions(args) -> int:
    kinds = {3: ["T3"], 4: ["T4plus"], 5: ["T5"], 7: ["T7"]}
    wanted = kinds.get(args.n) if args.n else [k for ks in kinds.values() for k in ks]
    if not wanted:
        print(f"error: no named exceptional tournament on {args.n} vertices", file=sys.stderr)
        return EXIT_BAD_INPUT
    for kind in wanted:
        print(f"{kind} {representative(kind).to_code()}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tourpath",
        description="Oriented Hamiltonian path embeddings in tournaments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="constructive embedding (witness or exception)")
    p_embed.add_argument("tournament", help="T:<n>:<hex> code or matrix file")
    p_embed.add_argument("pattern", help="sign string (+-/FB) or P+(b1,b2,...)")
    p_embed.add_argument("--n0", type=int, default=8, help="base solver threshold")
    p_embed.add_argument("--trace", action="store_true", help="print the method trace")
    p_embed.set_defaults(func=_cmd_embed)

    p_oracle = sub.add_parser("oracle", help="exact backtracking embedding")
    p_oracle.add_argument("tournament")
    p_oracle.add_argument("pattern")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_gen = sub.add_parser("gen", help="seeded random tournaments (compact codes)")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--count", type=int, default=1)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--model", default="uniform", help="uniform | near_regular[:flips]")
    p_gen.set_defaults(func=_cmd_gen)

    p_sweep = sub.add_parser("sweep", help="verification sweep from a config file")
    p_sweep.add_argument("--config", required=True, help="key=value lines")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_report = sub.add_parser("report", help="summarize a stored record stream")
    p_report.add_argument("records", help="records.jsonl")
    p_report.add_argument("--csv", help="CSV output path")
    p_report.set_defaults(func=_cmd_report)

    p_exc = sub.add_parser("exceptions", help="canonical exceptional tournament codes")
    p_exc.add_argument("--n", type=int)
    p_exc.set_defaults(func=_cmd_exceptions)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
