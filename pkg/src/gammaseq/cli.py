"""Command-line interface.

Every command prints a deterministic envelope: the command name, the
parameters it ran with, a list of result rows, and metadata (precision,
enclosure width, version).  Exact quantities are serialized as fraction
strings "p/q", inexact ones as decimal strings with an explicit digit
count, so identical inputs give byte-identical output.

Exit codes: 0 success, 1 a sweep found a certified-false row, 2 usage
error, 3 undecided rows remained at the precision cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__, bounds, numerics, polycert, rates, sequences, series
from .errors import DomainError

DEFAULT_PRECISION = 128
DEFAULT_ORDER = series.DEFAULT_ORDER

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3

_SEQ_NAMES = ("gamma", "r", "v", "mu", "vfam", "s", "uplus", "uminus")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _resolve_kind(args) -> sequences.SequenceKind:
    name = args.seq
    needs_params = name in ("mu", "vfam")
    if needs_params and (args.a is None or args.b is None):
        raise DomainError(f"--seq {name} requires --a and --b")
    if not needs_params and (args.a is not None or args.b is not None):
        raise DomainError(f"--seq {name} does not take --a/--b")
    table = {
        "gamma": sequences.GammaN,
        "r": sequences.DeTempleR,
        "v": sequences.VernescuV,
        "s": sequences.SOptimal,
        "uplus": sequences.UPlus,
        "uminus": sequences.UMinus,
    }
    if name == "mu":
        return sequences.MuFamily(args.a, args.b)
    if name == "vfam":
        return sequences.VFamily(args.a, args.b)
    return table[name]()


def _decimal_digits(precision: int) -> int:
    # 2**-p rendered with a little headroom
    return max(4, precision * 3 // 10)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _envelope(command: str, parameters: dict, rows: list, metadata: dict) -> dict:
    meta = {"version": __version__}
    meta.update(metadata)
    return {
        "command": command,
        "parameters": parameters,
        "rows": rows,
        "metadata": meta,
    }


def _emit(envelope: dict, fmt: str, csv_columns: list | None = None) -> None:
    if fmt == "json":
        print(json.dumps(envelope, indent=2, sort_keys=True))
        return
    columns = csv_columns or sorted(
        {key for row in envelope["rows"] for key in row}
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in envelope["rows"]:
        writer.writerow([row.get(col, "") for col in columns])
    sys.stdout.write(buf.getvalue())


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args) -> int:
    kind = _resolve_kind(args)
    n_last = args.to if args.to is not None else args.n
    if n_last < args.n:
        raise DomainError("--to must not be smaller than --n")
    digits = _decimal_digits(args.precision)
    rows = []
    for n in range(args.n, n_last + 1):
        value = sequences.evaluate(kind, n, args.precision)
        row = {"n": n, "value": value.decimal_str(digits)}
        try:
            split = sequences.split_eval(kind, n)
            row["rational_part"] = _frac_str(split.rational_part)
            row["log_argument"] = _frac_str(split.log_argument)
        except DomainError:
            pass  # irrational-parameter variants have no exact split
        rows.append(row)
    params = {"seq": args.seq, "n": args.n, "to": n_last,
              "precision": args.precision}
    if args.a is not None:
        params["a"] = _frac_str(args.a)
        params["b"] = _frac_str(args.b)
    _emit(_envelope("eval", params, rows,
                    {"precision_bits": args.precision, "decimal_digits": digits}),
          args.format, ["n", "value", "rational_part", "log_argument"])
    return EXIT_OK


def _coeff_str(value) -> str:
    if isinstance(value, series.ParamPoly):
        return str(value)
    return _frac_str(value)


def cmd_expand(args) -> int:
    expansion = series.v_family_difference(args.order)
    symbolic = args.a is None and args.b is None
    if not symbolic:
        if args.a is None or args.b is None:
            raise DomainError("provide both --a and --b, or neither")
        expansion = expansion.substitute(a=args.a, b=args.b)
    rows = [
        {"k": k, "coefficient": _coeff_str(c)}
        for k, c in sorted(expansion.coefficients().items())
    ]
    params = {"order": args.order, "symbolic": symbolic}
    if not symbolic:
        params["a"] = _frac_str(args.a)
        params["b"] = _frac_str(args.b)
    _emit(_envelope("expand", params, rows, {"remainder": f"O(n^-{args.order + 1})"}),
          args.format, ["k", "coefficient"])
    return EXIT_OK


def cmd_optimize(args) -> int:
    result = rates.optimize_parameters(args.order)
    rows = [{
        "a": _frac_str(result.a),
        "b": _frac_str(result.b),
        "surviving_index": result.surviving_index,
        "surviving_coeff": _frac_str(result.surviving_coeff),
        "sequence_rate": result.rate.sequence_rate,
        "sequence_limit": _frac_str(result.rate.sequence_limit),
    }]
    _emit(_envelope("optimize", {"order": args.order}, rows, {}),
          args.format,
          ["a", "b", "surviving_index", "surviving_coeff",
           "sequence_rate", "sequence_limit"])
    return EXIT_OK


def cmd_rate(args) -> int:
    kind = _resolve_kind(args)
    if args.grid_factor < 2:
        raise DomainError("--grid-factor must be at least 2")
    grid = []
    n = args.grid_start
    while n <= args.grid_stop:
        grid.append(n)
        n *= args.grid_factor
    report = rates.empirical_rate(kind, grid, args.precision)
    rows = [{
        "difference_order": f"{report.difference_order:.6f}",
        "sequence_rate": f"{report.sequence_rate:.6f}",
        "residual": f"{report.residual:.6f}",
        "reliable": report.reliable,
    }]
    params = {"seq": args.seq, "grid_start": args.grid_start,
              "grid_stop": args.grid_stop, "grid_factor": args.grid_factor,
              "precision": args.precision}
    if args.a is not None:
        params["a"] = _frac_str(args.a)
        params["b"] = _frac_str(args.b)
    _emit(_envelope("rate", params, rows,
                    {"grid": list(report.grid), "precision_bits": args.precision}),
          args.format,
          ["difference_order", "sequence_rate", "residual", "reliable"])
    return EXIT_OK


def cmd_sweep_bounds(args) -> int:
    try:
        entry = bounds.get_entry(args.entry)
    except KeyError as exc:
        raise DomainError(str(exc)) from exc
    n_from = args.n_from if args.n_from is not None else entry.n_min
    report = bounds.sweep(entry, n_from, args.n_to, args.precision,
                          precision_cap=args.precision_cap)
    digits = _decimal_digits(args.precision)
    rows = []
    for r in report.rows:
        rows.append({
            "n": r.n,
            "lower": _decimal(r.lower, digits) if r.lower is not None else "",
            "value_lo": _decimal(r.value_lo, digits),
            "value_hi": _decimal(r.value_hi, digits),
            "upper": _decimal(r.upper, digits) if r.upper is not None else "",
            "verdict": r.verdict,
            "margin": _decimal(r.margin, digits),
        })
    counts = report.counts
    meta = {
        "precision_bits": args.precision,
        "precision_cap": report.precision_cap,
        "counts": counts,
        "decimal_digits": digits,
        "citation": entry.citation,
    }
    if report.min_margin is not None:
        meta["min_margin"] = _decimal(report.min_margin, digits)
        meta["min_margin_n"] = report.min_margin_n
    if entry.note:
        meta["note"] = entry.note
    _emit(_envelope("sweep-bounds",
                    {"entry": args.entry, "from": n_from, "to": args.n_to,
                     "precision": args.precision},
                    rows, meta),
          args.format,
          ["n", "lower", "value_lo", "value_hi", "upper", "verdict", "margin"])
    if counts[bounds.CERTIFIED_FALSE]:
        return EXIT_FALSIFIED
    if counts[bounds.UNDECIDED]:
        return EXIT_UNDECIDED
    return EXIT_OK


def _decimal(x: Fraction, digits: int) -> str:
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    text = str(q).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def cmd_certify(args) -> int:
    target = args.target
    if target in ("P", "Q"):
        variant = "f" if target == "P" else "g"
        poly = polycert.derivative_numerator(variant)
        center = 1 if variant == "f" else 9
        cert = polycert.positivity_certificate(poly, center)
        ok = isinstance(cert, polycert.PositivityCertificate)
        rows = [{
            "target": target,
            "center": center,
            "shifted_coefficients": [_frac_str(c) for c in cert.shifted_coeffs],
            "certificate": ok,
        }]
    else:
        verdict = polycert.tail_sign_verdict(target)
        rows = [{
            "target": target,
            "identity": "numerator/(60 x^5 (x-1)^2 (x+1)^5)"
                        if target == "f" else
                        "-numerator/(60 x^5 (x-1)^2 (x+1)^5)",
            "identity_checked": verdict.identity_checked,
            "numerator_shifted_coefficients": [
                _frac_str(c) for c in verdict.numerator_certificate.shifted_coeffs
            ],
            "shift_center": _frac_str(verdict.numerator_certificate.center),
            "derivative_sign": verdict.derivative_sign,
            "vanishes_at_infinity": verdict.vanishes_at_infinity,
            "function_sign": verdict.function_sign,
            "conclusion": verdict.conclusion,
        }]
    _emit(_envelope("certify", {"target": target}, rows, {}), args.format)
    return EXIT_OK


def cmd_enclose(args) -> int:
    if args.n is not None:
        enclosure = numerics.gamma_bootstrap(args.n, args.precision)
        params = {"n": args.n, "precision": args.precision}
    else:
        enclosure = numerics.gamma_reference(args.precision)
        params = {"precision": args.precision}
    digits = _decimal_digits(args.precision) + 4
    width = enclosure.width
    rows = [{
        "lo": enclosure.lo.decimal_str(digits, "floor"),
        "hi": enclosure.hi.decimal_str(digits, "ceiling"),
        "width": f"{float(width):.3e}",
    }]
    _emit(_envelope("enclose", params, rows,
                    {"precision_bits": args.precision,
                     "enclosure_width": f"{float(width):.3e}",
                     "decimal_digits": digits}),
          args.format, ["lo", "hi", "width"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_seq_options(sub, with_n: bool = True):
    sub.add_argument("--seq", required=True, choices=_SEQ_NAMES)
    sub.add_argument("--a", type=_parse_fraction, default=None,
                     help="rational parameter, e.g. 3/2")
    sub.add_argument("--b", type=_parse_fraction, default=None,
                     help="rational parameter; write negatives as --b=-5/12")
    if with_n:
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--to", type=int, default=None,
                         help="evaluate the whole range n..to")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammaseq",
        description="Certified arithmetic for sequences converging to the "
                    "Euler-Mascheroni constant.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    p_eval = commands.add_parser("eval", help="evaluate a sequence")
    _add_seq_options(p_eval)
    p_eval.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p_eval.add_argument("--format", choices=("json", "csv"), default="json")
    p_eval.set_defaults(func=cmd_eval)

    p_expand = commands.add_parser(
        "expand", help="difference expansion of the two-parameter family")
    p_expand.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p_expand.add_argument("--a", type=_parse_fraction, default=None)
    p_expand.add_argument("--b", type=_parse_fraction, default=None)
    p_expand.add_argument("--format", choices=("json", "csv"), default="json")
    p_expand.set_defaults(func=cmd_expand)

    p_opt = commands.add_parser(
        "optimize", help="best family parameters and surviving coefficient")
    p_opt.add_argument("--order", type=int, default=5)
    p_opt.add_argument("--format", choices=("json", "csv"), default="json")
    p_opt.set_defaults(func=cmd_optimize)

    p_rate = commands.add_parser("rate", help="empirical convergence order")
    _add_seq_options(p_rate, with_n=False)
    p_rate.add_argument("--grid-start", type=int, default=16)
    p_rate.add_argument("--grid-stop", type=int, default=1024)
    p_rate.add_argument("--grid-factor", type=int, default=2)
    p_rate.add_argument("--precision", type=int, default=256)
    p_rate.add_argument("--format", choices=("json", "csv"), default="json")
    p_rate.set_defaults(func=cmd_rate)

    p_sweep = commands.add_parser(
        "sweep-bounds", help="certify a catalog inequality across a range")
    p_sweep.add_argument("--entry", required=True)
    p_sweep.add_argument("--from", dest="n_from", type=int, default=None)
    p_sweep.add_argument("--to", dest="n_to", type=int, required=True)
    p_sweep.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p_sweep.add_argument("--precision-cap", type=int, default=None)
    p_sweep.add_argument("--format", choices=("json", "csv"), default="json")
    p_sweep.set_defaults(func=cmd_sweep_bounds)

    p_cert = commands.add_parser(
        "certify", help="positivity certificates and sign verdicts")
    p_cert.add_argument("--target", required=True, choices=("P", "Q", "f", "g"))
    p_cert.add_argument("--format", choices=("json", "csv"), default="json")
    p_cert.set_defaults(func=cmd_certify)

    p_enc = commands.add_parser(
        "enclose", help="certified enclosure of the Euler-Mascheroni constant")
    p_enc.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p_enc.add_argument("--n", type=int, default=None,
                       help="derive the enclosure from s_n at this explicit n")
    p_enc.add_argument("--format", choices=("json", "csv"), default="json")
    p_enc.set_defaults(func=cmd_enclose)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
