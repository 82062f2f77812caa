"""Command-line front end.

Exit codes: 0 success, 1 usage or malformed input, 2 capacity (exact
optimum asked for on too long a list), 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Iterable, Optional

from . import compressor, reports, seqfile
from .advice import AdviceTape, InvalidAdvice, best3_tape, subset_oracle
from .analysis import CSV_FIELDS, phase_cost_table, project, ratio_text, run
from .core import CapacityError, CostModel, ListUpdateError
from .generators import FAMILIES, FamilySpec
from .offline import opt_dp, opt_subset_transfer_dp, pair_opt, partition_phases

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def emit(rows: list[dict], columns: Iterable[str], fmt: str, out=None) -> None:
    out = out or sys.stdout
    columns = list(columns)
    if fmt == "json":
        for row in rows:
            out.write(json.dumps({c: row.get(c, "") for c in columns}) + "\n")
    elif fmt == "pretty":
        cells = [[str(c) for c in columns]] + [[str(row.get(c, "")) for c in columns] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
        for r in cells:
            out.write("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() + "\n")
    else:
        writer = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def _fmt(args) -> str:
    return "json" if args.json else "pretty" if args.pretty else "csv"


def _write_text(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_tape(path: str, fmt: str) -> AdviceTape:
    if fmt == "packed":
        with open(path, "rb") as fh:
            return AdviceTape.from_packed(fh.read())
    with open(path, encoding="ascii") as fh:
        return AdviceTape.from_ascii(fh.read())


def _write_tape(path: Optional[str], tape: AdviceTape, fmt: str) -> None:
    if fmt == "packed":
        if path in (None, "-"):
            sys.stdout.buffer.write(tape.to_packed())
        else:
            with open(path, "wb") as fh:
                fh.write(tape.to_packed())
    else:
        _write_text(path, tape.to_ascii() + "\n")


# -- commands --------------------------------------------------------------


def cmd_gen(args) -> int:
    params = {}
    for key in ("bits", "k", "l", "m", "s", "n", "seed"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    spec = FamilySpec(args.family, params)
    try:
        seq = spec.build()
    except KeyError as e:
        raise UsageError(f"family {args.family} needs --{e.args[0].replace('_', '-')}") from None
    _write_text(args.out, seqfile.from_sequence(seq).dumps())
    expected = spec.expected_length()
    status = "ok" if expected == seq.n else "MISMATCH"
    print(f"length {seq.n} (closed form {expected}) {status}", file=sys.stderr)
    return EXIT_OK if status == "ok" else EXIT_VERIFY


def cmd_run(args) -> int:
    model = CostModel.parse(args.model)
    rows = []
    for path in args.inputs:
        sf = seqfile.load(path)
        tape = _read_tape(args.advice, args.tape_format) if args.advice else None
        report = run(args.alg, sf.sequence, model, opt=args.opt, opt_bound=args.opt_bound, tape=tape,
                     family=args.family or path, params=args.params or "")
        row = report.row()
        if report.ratio_is_lower_bound and row["ratio"]:
            row["ratio"] = ">=" + row["ratio"]
        rows.append(row)
    emit(rows, CSV_FIELDS, _fmt(args))
    return EXIT_OK


def cmd_opt(args) -> int:
    sf = seqfile.load(args.input)
    model = CostModel.parse(args.model)
    seq = sf.sequence
    mode = args.mode.removeprefix("opt:")
    if mode == "pair":
        print(pair_opt(seq, model))
        return EXIT_OK
    solve = {"dp": opt_dp, "subset": opt_subset_transfer_dp}.get(mode)
    if solve is None:
        raise UsageError(f"unknown opt mode {args.mode!r}")
    sol = solve(seq, model)
    if not args.trace:
        print(sol.total_cost)
        return EXIT_OK
    rows = []
    for t, (item, step) in enumerate(zip(seq.requests, sol.trace)):
        rows.append({"t": t, "request": sf.name(item), "order": " ".join(sf.name(i) for i in step.target),
                     "exchange": step.exchange, "access": step.access, "bits": step.subset_bits or ""})
    emit(rows, ["t", "request", "order", "exchange", "access", "bits"], _fmt(args))
    print(f"total {sol.total_cost}", file=sys.stderr)
    return EXIT_OK


def cmd_advice(args) -> int:
    if args.action == "write":
        seq = seqfile.load(args.input).sequence
        tape = best3_tape(seq, args.model) if args.kind == "best3" else subset_oracle(seq, args.model)
        _write_tape(args.out, tape, args.tape_format)
        print(f"{len(tape)} bits", file=sys.stderr)
    else:
        tape = _read_tape(args.input, args.tape_format)
        print(tape.to_ascii())
        print(f"{len(tape)} bits", file=sys.stderr)
    return EXIT_OK


def cmd_project(args) -> int:
    sf = seqfile.load(args.input)
    ids = sf.ids
    try:
        pair = (ids[args.pair[0]], ids[args.pair[1]])
    except KeyError as e:
        raise UsageError(f"unknown item {e.args[0]!r}") from None
    sub = project(sf.sequence, pair)
    body = " ".join(sf.name(r) for r in sub.requests)
    order = " ".join(sf.name(i) for i in sub.initial_order)
    _write_text(args.out, f"{seqfile.HEADER} {order}\n" + (body + "\n" if body else ""))
    return EXIT_OK


def cmd_phases(args) -> int:
    sf = seqfile.load(args.input)
    seq = sf.sequence
    if args.costs:
        rows = []
        for r in phase_cost_table(seq):
            rows.append({"phase": r.label, "type": r.type or "", "mtfo": r.mtfo, "mtfe": r.mtfe, "ts": r.ts,
                         "mtf2": r.mtf2, "opt": r.opt, "sum/opt": ratio_text(r.sum_ratio),
                         "mtf2/opt": ratio_text(r.mtf2_ratio)})
        emit(rows, ["phase", "type", "mtfo", "mtfe", "ts", "mtf2", "opt", "sum/opt", "mtf2/opt"], _fmt(args))
        return EXIT_OK
    dec = partition_phases(seq)
    rows = [{"type": p.type, "form": p.form, "j": p.j, "k": p.k,
             "requests": " ".join(sf.name(r) for r in seq.requests[p.start:p.stop])} for p in dec.phases]
    if dec.residual:
        rows.append({"type": "", "form": "residual", "j": "", "k": "",
                     "requests": " ".join(sf.name(r) for r in dec.residual)})
    emit(rows, ["type", "form", "j", "k", "requests"], _fmt(args))
    return EXIT_OK


def cmd_report(args) -> int:
    suite = reports.SUITES.get(args.suite)
    if suite is None:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(reports.SUITES)}")
    rep = suite(args.gamma) if args.suite == "advice-bound" and args.gamma else suite()
    emit(rep.rows, rep.columns, _fmt(args))
    failed = [what for what, ok in rep.checks if not ok]
    for what in failed:
        print(f"FAIL {what}", file=sys.stderr)
    print(f"{args.suite}: {len(rep.checks) - len(failed)}/{len(rep.checks)} checks passed", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_VERIFY


def cmd_compress(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    alphabet = list(args.alphabet) if args.alphabet else None
    enc = compressor.compress(text, args.alg, alphabet)
    with open(args.out, "wb") as fh:
        fh.write(compressor.to_bytes(enc))
    print(f"{len(text)} symbols -> {enc.bit_length} code bits", file=sys.stderr)
    return EXIT_OK


def cmd_decompress(args) -> int:
    with open(args.input, "rb") as fh:
        text = compressor.decompress_file(fh.read())
    _write_text(args.out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lup", description="List update simulations, offline optima and advice.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="JSON lines instead of CSV")
        g.add_argument("--pretty", action="store_true", help="aligned plain-text table")

    g = sub.add_parser("gen", help="write a sequence family")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--bits")
    for key in ("k", "l", "m", "s", "n", "seed"):
        g.add_argument(f"--{key}", type=int)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="simulate an algorithm")
    r.add_argument("--alg", required=True, help="mtf, ts, mtfo, mtfe, mtf2:<bits>, bit:<seed>, best3, subset")
    r.add_argument("--model", default="full", choices=["full", "partial"])
    r.add_argument("--opt", default="auto", choices=["auto", "dp", "subset", "pair", "strategy", "none"])
    r.add_argument("--opt-bound", type=int, help="declared upper bound on OPT")
    r.add_argument("--advice", help="advice tape for best3/subset")
    r.add_argument("--tape-format", default="ascii", choices=["ascii", "packed"])
    r.add_argument("--family", help="label for the family column")
    r.add_argument("--params", help="label for the params column")
    r.add_argument("inputs", nargs="+")
    output_flags(r)
    r.set_defaults(func=cmd_run)

    o = sub.add_parser("opt", help="offline optimum")
    o.add_argument("--mode", default="opt:dp", choices=["opt:dp", "opt:subset", "opt:pair"])
    o.add_argument("--model", default="full", choices=["full", "partial"])
    o.add_argument("--trace", action="store_true")
    o.add_argument("input")
    output_flags(o)
    o.set_defaults(func=cmd_opt)

    a = sub.add_parser("advice", help="write or read advice tapes")
    a.add_argument("action", choices=["write", "read"])
    a.add_argument("input", help="sequence file (write) or tape file (read)")
    a.add_argument("--kind", default="best3", choices=["best3", "subset"])
    a.add_argument("--model", default="full", choices=["full", "partial"])
    a.add_argument("--tape-format", default="ascii", choices=["ascii", "packed"])
    a.add_argument("-o", "--out")
    a.set_defaults(func=cmd_advice)

    pr = sub.add_parser("project", help="project a sequence onto two items")
    pr.add_argument("--pair", nargs=2, required=True, metavar=("X", "Y"))
    pr.add_argument("input")
    pr.add_argument("-o", "--out")
    pr.set_defaults(func=cmd_project)

    ph = sub.add_parser("phases", help="phase decomposition of a two-item sequence")
    ph.add_argument("input")
    ph.add_argument("--costs", action="store_true", help="per-phase cost table")
    output_flags(ph)
    ph.set_defaults(func=cmd_phases)

    rp = sub.add_parser("report", help="reproduce a table or ratio curve")
    rp.add_argument("suite")
    rp.add_argument("--gamma", type=float, action="append")
    output_flags(rp)
    rp.set_defaults(func=cmd_report)

    c = sub.add_parser("compress", help="list-update compression")
    c.add_argument("--alg", default="mtf", choices=sorted(compressor.ALGORITHM_IDS))
    c.add_argument("--alphabet", help="initial list as a string of symbols")
    c.add_argument("input")
    c.add_argument("-o", "--out", required=True)
    c.set_defaults(func=cmd_compress)

    d = sub.add_parser("decompress")
    d.add_argument("input")
    d.add_argument("-o", "--out")
    d.set_defaults(func=cmd_decompress)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help and usage errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, ListUpdateError, InvalidAdvice, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
