"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (e.g. an asymmetric period
matrix or a quotient basis that does not span), 2 on I/O and parse errors.
Output is deterministic: identical inputs give byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import criteria
from .intersection import PolarizedContext, ambient_variable_names, q_symbolic
from .nslattice import (InputFormatError, NotInNS, PeriodMatrixError, dump_document,
                        load_document, reduced_coordinates)
from .search import SearchQuery, enumerate_divisors

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _targets(text: str) -> tuple[int, ...]:
    return tuple(_positive(t.strip()) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nsdivisor",
                     description="Neron-Severi lattices and abelian divisors of ppavs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qform", help="print q_r as a polynomial in the coefficients a_ij")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("ns", help="compute NS(A) and NS(A, Theta) from a period matrix")
    p.add_argument("--input", required=True, help="JSON file, '-' for stdin, or inline JSON")
    p.add_argument("--format", choices=["text", "json"], default="text")

    for name, help_ in (("search", "enumerate abelian divisors in a coordinate box"),
                        ("table", "divisor table: class, (Z.Theta^(n-1)), (E.Theta)")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True)
        p.add_argument("--bound", type=_positive, required=True)
        p.add_argument("--max-degree", type=_positive, default=None)
        p.add_argument("--targets", type=_targets, default=())
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("classify", help="decomposability, Jacobian and elliptic-cover verdicts")
    p.add_argument("--input", required=True)
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--genus", type=_positive, default=None,
                   help="also list minimal elliptic covers (input is a genus-g Jacobian)")
    p.add_argument("--max-degree", type=_positive, default=None,
                   help="largest elliptic cover degree k to list with --genus")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _read_input(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if source.lstrip().startswith("{"):
        return source
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _basis_header(pns) -> list[str]:
    lines = [f"# quotient basis (rank {pns.quotient_rank}), ambient pairs in lex order:"]
    for k, row in enumerate(pns.quotient_basis):
        lines.append(f"#   v{k + 1} = {list(row)}")
    if pns.n == 3:
        lines.append("# same basis in reduced 14-coordinates "
                     "(a12,a13,a14-a36,a15,a16,a23,a24,a25-a36,a26,a34,a35,a45,a46,a56):")
        for k, row in enumerate(pns.quotient_basis):
            lines.append(f"#   v{k + 1} = {reduced_coordinates(3, row)}")
    return lines


def _fmt_coords(coords) -> str:
    return "(" + ",".join(str(c) for c in coords) + ")"


def cmd_qform(args, out) -> int:
    n, r = args.dim, args.r
    if not 2 <= r <= n:
        raise ValueError(f"--r must satisfy 2 <= r <= dim, got r={r}, dim={n}")
    poly = q_symbolic(n, r)
    if args.format == "json":
        names = ambient_variable_names(n)
        terms = []
        for mono in poly.monomials():
            terms.append({"monomial": {names[i]: e for i, e in enumerate(mono) if e},
                          "coeff": str(poly.terms[mono])})
        out.write(_json({"n": n, "r": r, "variables": names, "terms": terms,
                         "text": str(poly)}))
    else:
        out.write(f"{poly}\n")
    return EXIT_OK


def cmd_ns(args, out) -> int:
    tau, pns = load_document(_read_input(args.input))
    if args.format == "json":
        out.write(_json(dump_document(tau, pns)))
        return EXIT_OK
    out.write(f"n = {pns.n}\nambient rank = {pns.ambient_rank}\n"
              f"NS rank = {pns.rank}\nquotient rank = {pns.quotient_rank}\n"
              f"theta = {list(pns.theta)}\n# NS basis:\n")
    for row in pns.ns_basis:
        out.write(f"#   {list(row)}\n")
    out.write("\n".join(_basis_header(pns)) + "\n")
    return EXIT_OK


def _records(args):
    tau, pns = load_document(_read_input(args.input))
    ctx = PolarizedContext(tau.n)
    query = SearchQuery(args.bound, args.max_degree, args.targets)
    return ctx, pns, enumerate_divisors(ctx, pns, query)


def cmd_search(args, out, table: bool = False) -> int:
    ctx, pns, records = _records(args)
    n = ctx.n
    if args.format == "json":
        for rec in records:
            out.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
        return EXIT_OK
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["coords", "divisor_degree", "complement_degree"]
                        + [f"q_{r}" for r in range(2, n + 1)])
        for rec in records:
            writer.writerow([_fmt_coords(rec.quotient_coords), rec.divisor_degree,
                             "" if rec.complement_degree is None else rec.complement_degree]
                            + [str(q) for q in rec.q_values])
        out.write(buf.getvalue())
        return EXIT_OK
    lines = _basis_header(pns)
    if table:
        rows = [("Divisor class of Z", f"(Z.Theta^{n - 1})", "(E.Theta)")]
        rows += [(_fmt_coords(r.quotient_coords), str(r.divisor_degree),
                  "-" if r.complement_degree is None else str(r.complement_degree))
                 for r in records]
    else:
        rows = [("coords", "d", "d/(n-1)!") + tuple(f"q_{r}" for r in range(2, n + 1))]
        rows += [(_fmt_coords(r.quotient_coords), str(r.divisor_degree),
                  "-" if r.complement_degree is None else str(r.complement_degree))
                 + tuple(str(q) for q in r.q_values) for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for k, row in enumerate(rows):
        lines.append(" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("-+-".join("-" * w for w in widths))
    if n == 2 and records:
        lines.append("# n = 2: alpha and -alpha both satisfy the target; both are listed")
    lines.append(f"# {len(records)} classes")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    tau, pns = load_document(_read_input(args.input))
    ctx = PolarizedContext(tau.n)
    report = criteria.classify(ctx, pns, args.bound)
    covers = None
    if args.genus is not None:
        covers = criteria.elliptic_covers(ctx, pns, args.genus, args.bound, args.max_degree)
    if args.format == "json":
        doc = report.to_dict()
        if covers is not None:
            doc["elliptic_covers"] = [{"cover_degree": k, "witness": rec.to_dict()}
                                      for k, rec in covers]
        out.write(_json(doc))
        return EXIT_OK
    lines = _basis_header(pns)
    for v in report.verdicts:
        lines.append(f"{v.criterion}: {v.verdict} (bound {v.bound})")
        for w in v.witnesses:
            lines.append(f"    witness {_fmt_coords(w.quotient_coords)} "
                         f"q = {_fmt_coords(w.q_values)}")
    if covers is not None:
        lines.append(f"elliptic covers (genus {args.genus}, bound {args.bound}):")
        for k, rec in covers:
            lines.append(f"    degree {k}: {_fmt_coords(rec.quotient_coords)}")
        lines.append(f"    {len(covers)} covers")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if args.command == "qform":
            return cmd_qform(args, out)
        if args.command == "ns":
            return cmd_ns(args, out)
        if args.command in ("search", "table"):
            return cmd_search(args, out, table=args.command == "table")
        return cmd_classify(args, out)
    except (OSError, InputFormatError) as exc:
        print(f"nsdivisor: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PeriodMatrixError, NotInNS, ValueError) as exc:
        print(f"nsdivisor: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
