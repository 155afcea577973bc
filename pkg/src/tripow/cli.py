"""Command line interface: ``tripow {factors,coeffs,pow,verify,bench}``.

Exit codes: 0 success, 1 domain or validation error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .arith import format_rational
from .bench import bench
from .closed_form import ClosedFormTable, matrix_power, power_entry
from .errors import DistinctnessError, InputError, TriPowError
from .factors import power_factors_recursive
from .io import (
    MatrixDocument,
    coefficients_document,
    dump,
    factors_document,
    matrix_rows,
    parse_document,
)
from .tri import TriMatrix
from .verify import equivalence_suite

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


def parse_cell(text: str) -> Tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cell must look like 'i,j', got {text!r}") from None
    return i, j


def parse_queries(spec: str) -> List[int]:
    """``"1..5,10,-3..-1"`` -> sorted, deduplicated integers."""
    out = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                a, b = part.split("..", 1)
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise ValueError
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad query spec {part!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty query spec")
    return sorted(out)


def random_document(k: int, seed: Optional[int]) -> MatrixDocument:
    """Small random fixture with deliberately repeated diagonal values."""
    rng = random.Random(seed)
    pool = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(max(1, k // 2))]
    diag = [rng.choice(pool) for _ in range(k)]
    rows = [
        [diag[i] if i == j else (Fraction(rng.randint(-5, 5)) if j > i else Fraction(0)) for j in range(k)]
        for i in range(k)
    ]
    return MatrixDocument(k, "upper", TriMatrix(rows))


def load(args) -> MatrixDocument:
    if args.random is not None:
        if args.random <= 0:
            raise InputError("--random needs a positive dimension")
        return random_document(args.random, args.seed)
    if args.matrix is None:
        raise InputError("a matrix file (or --random K) is required")
    try:
        text = Path(args.matrix).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.matrix}: {exc.strerror}") from None
    return parse_document(text)


def core_cell(doc: MatrixDocument, cell: Tuple[int, int]) -> Tuple[int, int]:
    i, j = doc.from_user(*cell)
    if not (1 <= i <= j <= doc.k):
        side = "i >= j" if doc.lower else "i <= j"
        raise InputError(f"cell {cell[0]},{cell[1]} must satisfy {side} within 1..{doc.k}")
    return i, j


def cmd_factors(args, doc: MatrixDocument):
    try:
        T = power_factors_recursive(doc.matrix)
    except DistinctnessError as exc:
        raise DistinctnessError(f"{exc}; use 'coeffs' for repeated diagonals") from None
    return factors_document(T, doc), EXIT_OK


def cmd_coeffs(args, doc: MatrixDocument):
    table = ClosedFormTable(doc.matrix)
    cells = [core_cell(doc, args.cell)] if args.cell else None
    return coefficients_document(table, doc, cells), EXIT_OK


def cmd_pow(args, doc: MatrixDocument):
    M = doc.matrix
    if args.cell:
        i, j = core_cell(doc, args.cell)
        value = power_entry(M, i, j, args.n)
        return {"n": args.n, "cell": list(args.cell), "value": format_rational(value)}, EXIT_OK
    P = matrix_power(M, args.n)
    return {"n": args.n, "k": doc.k, "orientation": doc.orientation, "rows": matrix_rows(P, doc.lower)}, EXIT_OK


def cmd_verify(args, doc: MatrixDocument):
    report = equivalence_suite(doc.matrix, args.nmin, args.nmax, fixture=args.matrix or "random")
    out = report.as_dict()
    if doc.lower:
        for c in out["cells"]:
            c["cell"] = list(doc.to_user(*c["cell"]))
        if out["first_mismatch"]:
            out["first_mismatch"]["cell"] = list(doc.to_user(*out["first_mismatch"]["cell"]))
    return out, EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_bench(args, doc: MatrixDocument):
    return bench(doc.matrix, args.queries).as_dict(), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripow", description="Exact closed-form powers of triangular matrices."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("matrix", nargs="?", help="matrix JSON file")
        p.add_argument("--random", type=int, metavar="K", help="use a random KxK fixture instead of a file")
        p.add_argument("--seed", type=int, default=None, help="seed for --random")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.set_defaults(func=fn)
        return p

    add("factors", cmd_factors, "power factors (distinct diagonal only)")
    p = add("coeffs", cmd_coeffs, "closed-form coefficients for every cell")
    p.add_argument("--cell", type=parse_cell, metavar="I,J")
    p = add("pow", cmd_pow, "matrix power, or one entry of it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cell", type=parse_cell, metavar="I,J")
    p = add("verify", cmd_verify, "check the closed form against the oracles")
    p.add_argument("--nmin", type=int, default=-4)
    p.add_argument("--nmax", type=int, default=8)
    p = add("bench", cmd_bench, "closed form versus repeated squaring")
    p.add_argument("--queries", type=parse_queries, default=parse_queries("1..100"), metavar="SPEC")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for mismatches here
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        doc = load(args)
        payload, code = args.func(args, doc)
    except TriPowError as exc:
        print(f"tripow: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = dump(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
