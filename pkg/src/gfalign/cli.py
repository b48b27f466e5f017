"""Command-line front end.

Subcommands: field-info, bounds, mc, compare-ext, simulate, scan,
symbol-ext.  All stochastic commands require an explicit --seed so output is
byte-identical across runs.  Exit codes: 0 success, 1 infeasible or
degenerate channel in a simulation command, 2 input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys

from . import feasibility as feas
from . import mimo, scheme
from .errors import GFAlignError
from .gf import make_field, prime_field, primitive_element
from .linalg import companion_matrix
from .polys import Poly, format_poly, parse_poly


def _parse_int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip() != ""]


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload) -> None:
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _field_args(args):
    pi = None
    if getattr(args, "pi", None):
        pi = parse_poly(args.p, args.pi)
    return make_field(args.p, args.m, pi)


def cmd_field_info(args) -> int:
    spec = _field_args(args)
    gen = primitive_element(spec)
    payload = {
        "p": spec.p,
        "m": spec.m,
        "order": spec.order,
        "pi": list(spec.modulus_coeffs),
        "pi_text": format_poly(Poly(prime_field(spec), spec.modulus_coeffs)),
        "generator": list(gen.coeffs),
        "generator_order": spec.order - 1,
        "companion": companion_matrix(spec).to_code_rows(),
    }
    _emit_json(args, payload)
    return 0


def _sweep_pairs(args) -> list[tuple[int, int]]:
    ps = _parse_int_list(args.p)
    ms = _parse_int_list(args.m)
    return [(p, m) for p in ps for m in ms]


def _emit_stats(args, rows: list[feas.FeasibilityStats]) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(feas.CSV_COLUMNS)
        for row in rows:
            writer.writerow(feas.stats_csv_row(row))
        _emit(args, buf.getvalue())
    else:
        _emit_json(args, [row.to_dict() for row in rows])


def cmd_bounds(args) -> int:
    rows = [feas.feasibility_stats(p, m) for p, m in _sweep_pairs(args)]
    _emit_stats(args, rows)
    return 0


def cmd_mc(args) -> int:
    rows = [feas.feasibility_stats(p, m, args.trials, args.seed)
            for p, m in _sweep_pairs(args)]
    _emit_stats(args, rows)
    return 0


def cmd_compare_ext(args) -> int:
    field = feas.mc_feasibility(args.p, args.m, args.trials, args.seed)
    diag = feas.diag_symbol_ext_feasibility(args.p, args.m, args.trials, args.seed)
    _emit_json(args, {"field_extension": field.to_dict(),
                      "symbol_extension": diag.to_dict()})
    return 0


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def cmd_simulate(args) -> int:
    ch = scheme.channel_from_dict(_load_json(args.channel))
    spec = ch.spec
    if args.w1 is not None or args.w2 is not None:
        if args.w1 is None or (spec.m > 1 and args.w2 is None):
            raise ValueError("give both --w1 and --w2, or neither")
        msg = scheme.MessagePair.create(spec, _parse_int_list(args.w1),
                                        _parse_int_list(args.w2 or ""))
    else:
        if args.seed is None:
            raise ValueError("a random message needs --seed")
        msg = scheme.random_message(spec, random.Random(args.seed))
    report = scheme.simulate(ch, msg)
    _emit_json(args, report.to_dict())
    return 0 if report.verdict.feasible else 1


def cmd_scan(args) -> int:
    report = scheme.exhaustive_scan(args.p, args.m,
                                    parse_poly(args.p, args.pi) if args.pi else None)
    _emit_json(args, report.to_dict())
    return 0


def cmd_symbol_ext(args) -> int:
    rng = random.Random(args.seed) if args.seed is not None else None
    if args.channel:
        ch = mimo.mimo_channel_from_dict(_load_json(args.channel))
    else:
        if args.p is None or args.m is None or rng is None:
            raise ValueError("give --channel, or --p/--m/--seed for a random channel")
        ch = mimo.random_mimo_channel(args.p, args.m, rng)
    try:
        plan = mimo.plan_extension(ch)
    except GFAlignError as exc:
        _emit_json(args, {"channel": mimo.mimo_channel_to_dict(ch),
                          "error": str(exc), "success": False})
        return 1
    pipeline = mimo.MimoPipeline(mimo.build_mimo_precoders(plan))
    if args.w1 is not None:
        w1 = [plan.ext.element(_parse_int_list(part))
              for part in args.w1.split(";")]
        w2 = [plan.ext.element(_parse_int_list(part))
              for part in args.w2.split(";")] if args.w2 else []
    else:
        if rng is None:
            raise ValueError("a random message needs --seed")
        w1, w2 = mimo.random_message(plan.ext, ch.m, rng)
    report = mimo.simulate_symbol_ext(ch, w1, w2, pipeline)
    _emit_json(args, report.to_dict())
    return 0 if report.success else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfalign",
        description="Exact finite-field tools and simulators for aligned "
                    "diagonalization of two-hop 2x2x2 interference channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, fmt=False):
        sp.add_argument("--out", help="write output to this file instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("field-info", help="modulus, generator and companion matrix")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--pi", help="modulus, e.g. 'x^2+x+1' or '[1,1,1]'")
    add_common(sp)
    sp.set_defaults(func=cmd_field_info)

    sp = sub.add_parser("bounds", help="exact feasibility fraction, lower bound "
                                       "and normalized rates")
    sp.add_argument("--p", required=True, help="prime or comma list")
    sp.add_argument("--m", required=True, help="degree or comma list")
    add_common(sp, fmt=True)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("mc", help="Monte Carlo feasibility sweep")
    sp.add_argument("--p", required=True, help="prime or comma list")
    sp.add_argument("--m", required=True, help="degree or comma list")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    add_common(sp, fmt=True)
    sp.set_defaults(func=cmd_mc)

    sp = sub.add_parser("compare-ext", help="field-extension vs diagonal "
                                            "symbol-extension feasibility")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_compare_ext)

    sp = sub.add_parser("simulate", help="run one channel file end to end")
    sp.add_argument("--channel", required=True, help="channel JSON path")
    sp.add_argument("--w1", help="source-1 message, comma-separated symbols")
    sp.add_argument("--w2", help="source-2 message, comma-separated symbols")
    sp.add_argument("--seed", type=int, help="seed for a random message")
    add_common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("scan", help="exhaustive small-field verification")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--pi", help="modulus override")
    add_common(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("symbol-ext", help="slotted pipeline over a matrix channel")
    sp.add_argument("--channel", help="matrix-channel JSON path")
    sp.add_argument("--p", type=int, help="prime, for a random channel")
    sp.add_argument("--m", type=int, help="inputs/outputs per node")
    sp.add_argument("--seed", type=int, help="seed for channel/message draws")
    sp.add_argument("--w1", help="message symbols as coefficient lists, "
                                 "';'-separated, e.g. '1,0;0,1'")
    sp.add_argument("--w2", help="second message, same notation")
    add_common(sp)
    sp.set_defaults(func=cmd_symbol_ext)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = getattr(args, "out", None)
        if out:
            # fail before any long-running work, not after it
            parent = os.path.dirname(os.path.abspath(out))
            if not os.path.isdir(parent):
                raise ValueError(f"output directory does not exist: {parent}")
        channel = getattr(args, "channel", None)
        if channel and not os.path.isfile(channel):
            raise ValueError(f"channel file does not exist: {channel}")
        return args.func(args)
    except (GFAlignError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
