"""Command-line front end.

Words are named by a small spec language: built-in names (tm, 0tm, 1tm,
fib, g_fp, w_h, f_wh, pow_seq, v:M, w:<name>:M), morphism fixed points
(``fixpoint:<morphism>:<seed>``), and lazy images
(``image:<morphism>:<spec>``, composing right to left).  Morphisms are the
built-in names mu, g, f, h or definition files.

Reports are CSV (default) or JSON, byte-identical across runs for the same
arguments.  Exit status: 0 on success or property-holds, 1 when a scanned
property is violated, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .analysis import (
    PositionSet,
    balance,
    complexity_profile,
    density,
    everywhere_k_repetitive,
    recurrence_gap,
    shortest_abelian_power_at,
)
from .constructions import builtin_stream, pvhh_check, scan_prefix_pattern, tau_encode
from .morphisms import fixed_point, resolve_morphism
from .verify import SUITES, run_all, run_suite
from .words import InsufficientPrefixError, PrefixStream


def resolve_word_spec(spec: str) -> PrefixStream:
    """Resolve a word spec to a stream; composition chains nest on the right."""
    if spec.startswith("image:"):
        rest = spec[len("image:"):]
        name, sep, sub = rest.partition(":")
        if not sep:
            raise ValueError(f"word spec {spec!r} needs the form image:<morphism>:<spec>")
        return resolve_morphism(name)(resolve_word_spec(sub))
    if spec.startswith("fixpoint:"):
        rest = spec[len("fixpoint:"):]
        name, sep, seed_text = rest.rpartition(":")
        if not sep:
            raise ValueError(f"word spec {spec!r} needs the form fixpoint:<morphism>:<seed>")
        morphism = resolve_morphism(name)
        try:
            seed = int(seed_text)
        except ValueError:
            seed = seed_text
        return fixed_point(morphism, seed)
    return builtin_stream(spec)


def _parse_int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from None


def emit(rows: list, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()),
                                    lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        text = buf.getvalue()
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    prefix = stream.prefix(args.length)
    if args.compact:
        sys.stdout.write(str(prefix) + "\n")
        return [], False
    return [{"i": i, "letter": a} for i, a in enumerate(prefix)], False


def cmd_complexity(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    prof = complexity_profile(stream, args.n_max, args.prefix, n_min=args.n_min)
    return [{"n": n, "value": v} for n, v in prof.rows()], False


def cmd_balance(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    report = balance(stream, args.n_max, args.prefix)
    row = {"n_max": report.n_max, "prefix": report.prefix_len, "c": report.c}
    if report.witness:
        row.update({"witness_n": report.witness.n,
                    "witness_letter": report.witness.letter,
                    "max_position": report.witness.max_position,
                    "min_position": report.witness.min_position})
    else:
        row.update({"witness_n": "", "witness_letter": "",
                    "max_position": "", "min_position": ""})
    return [row], False


def cmd_powers(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    rows = []
    for pos in _parse_int_list(args.pos):
        witness = shortest_abelian_power_at(stream, pos, args.k, args.max_period)
        rows.append({"pos": pos,
                     "result": "found" if witness else "absent",
                     "period": witness.period if witness else args.max_period})
    return rows, False


def cmd_scan_squares(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    rows = []
    violation = False
    for pos in _parse_int_list(args.pos):
        witness = shortest_abelian_power_at(stream, pos, 2, args.max_period)
        if witness:
            violation = True
        rows.append({"pos": pos,
                     "result": "square" if witness else "avoids",
                     "period": witness.period if witness else args.max_period})
    return rows, violation


def cmd_scan_prefix_pattern(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    report = scan_prefix_pattern(stream, args.kind, args.bound, power=args.power)
    row = {"kind": report.kind,
           "power": "" if report.power is None else report.power,
           "bound": report.bound,
           "result": "found" if report.found else "absent",
           "x": str(report.witness[0]) if report.found else "",
           "y": str(report.witness[1]) if report.found else ""}
    return [row], report.found


def cmd_repetitive(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    report = everywhere_k_repetitive(stream, args.k, args.n, args.prefix)
    row = {"k": report.k, "n": report.window, "prefix": report.prefix_len,
           "repetitive": report.repetitive,
           "witness_position": ("" if report.witness_position is None
                                else report.witness_position),
           "witness_factor": ("" if report.witness_factor is None
                              else str(report.witness_factor))}
    return [row], not report.repetitive


def cmd_recurrence(args) -> tuple[list, bool]:
    stream = resolve_word_spec(args.word)
    report = recurrence_gap(stream, args.n, args.prefix)
    return [{"n": report.n, "prefix": report.prefix_len,
             "max_gap": "" if report.max_gap is None else report.max_gap,
             "distinct_factors": report.distinct_factors,
             "singletons": report.singletons}], False


def cmd_pvhh(args) -> tuple[list, bool]:
    if args.letters:
        letters = _parse_int_list(args.letters)
    elif args.word:
        stream = resolve_word_spec(args.word)
        stream.ensure(args.prefix)
        letters = [int(a) for a in stream._buf[:args.prefix]]
    else:
        raise ValueError("pvhh needs --letters or --word with --prefix")
    max_block = args.max_block if args.max_block else len(letters) // 2
    violation = pvhh_check(letters, max_block)
    row = {"length": len(letters), "max_block": max_block,
           "result": "violation" if violation else "holds",
           "position": violation[0] if violation else "",
           "block_length": violation[1] if violation else ""}
    return [row], violation is not None


def cmd_tau(args) -> tuple[list, bool]:
    encoded = tau_encode(_parse_int_list(args.letters))
    if args.compact:
        sys.stdout.write(str(encoded) + "\n")
        return [], False
    return [{"i": i, "letter": a} for i, a in enumerate(encoded)], False


def cmd_density(args) -> tuple[list, bool]:
    positions = tuple(_parse_int_list(args.positions))
    ps = PositionSet(positions, horizon=args.horizon,
                     period_bounds=tuple(0 for _ in positions))
    value = density(ps)
    return [{"count": len(positions), "horizon": args.horizon,
             "density": str(value)}], False


def cmd_verify(args) -> tuple[list, bool]:
    if args.suites == ["all"] or not args.suites:
        rows = run_all()
    else:
        rows = []
        for name in args.suites:
            rows.extend(run_suite(name))
    return [r.as_dict() for r in rows], any(not r.passed for r in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelianwords",
        description="Generate morphic words, measure Abelian complexity and "
                    "balance, scan for Abelian powers, and run the "
                    "verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write the report to a file instead of stdout")

    p = sub.add_parser("generate", help="materialize a word prefix")
    p.add_argument("--word", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--compact", action="store_true",
                   help="print the bare word instead of a table")
    add_common(p)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("complexity", help="distinct Parikh classes per factor length")
    p.add_argument("--word", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--prefix", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_complexity)

    p = sub.add_parser("balance", help="least balance constant over a window")
    p.add_argument("--word", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--prefix", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_balance)

    p = sub.add_parser("powers", help="shortest Abelian k-power at positions")
    p.add_argument("--word", required=True)
    p.add_argument("--pos", required=True, help="comma-separated positions")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-period", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_powers)

    p = sub.add_parser("scan-squares", help="certify square avoidance at positions")
    p.add_argument("--word", required=True)
    p.add_argument("--pos", required=True, help="comma-separated positions")
    p.add_argument("--max-period", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_scan_squares)

    p = sub.add_parser("scan-prefix-pattern",
                       help="search for a 0x0y0-shaped prefix")
    p.add_argument("--word", required=True)
    p.add_argument("--kind", choices=("0x0y0", "010x0y0", "hn01"), required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--power", type=int, help="iteration count for kind hn01")
    add_common(p)
    p.set_defaults(fn=cmd_scan_prefix_pattern)

    p = sub.add_parser("repetitive",
                       help="does every length-n factor begin an Abelian k-power")
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prefix", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_repetitive)

    p = sub.add_parser("recurrence", help="largest recurrence gap of length-n factors")
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prefix", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_recurrence)

    p = sub.add_parser("pvhh", help="scan adjacent equal-length blocks for equal sums")
    p.add_argument("--letters", help="comma-separated integer word")
    p.add_argument("--word", help="word spec for an integer stream")
    p.add_argument("--prefix", type=int, default=0)
    p.add_argument("--max-block", type=int, default=0)
    add_common(p)
    p.set_defaults(fn=cmd_pvhh)

    p = sub.add_parser("tau", help="encode odd integers as 0 1^a 0 blocks")
    p.add_argument("--letters", required=True)
    p.add_argument("--compact", action="store_true")
    add_common(p)
    p.set_defaults(fn=cmd_tau)

    p = sub.add_parser("density", help="density of a position set below a horizon")
    p.add_argument("--positions", required=True)
    p.add_argument("--horizon", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*", default=["all"],
                   help=f"suite names (default all): {', '.join(SUITES)}")
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, violation = args.fn(args)
    except (ValueError, InsufficientPrefixError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if rows or not getattr(args, "compact", False):
        emit(rows, args.format, args.output)
    return 1 if violation else 0


if __name__ == "__main__":
    sys.exit(main())
