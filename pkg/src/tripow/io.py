"""JSON documents for matrices, factor tables, coefficients and reports.

A matrix file looks like::

    {"k": 3, "orientation": "upper",
     "rows": [["1", "1", "1"], ["0", "2", "1"], ["0", "0", "3"]]}

Entries are strings in the form ``[-]digits[/digits]`` so nothing passes
through floating point; bare JSON integers are accepted as shorthand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from .arith import format_rational, parse_rational
from .closed_form import ClosedFormTable
from .errors import ParseError, ShapeError
from .factors import PowerFactorTable
from .tri import TriMatrix

ORIENTATIONS = ("upper", "lower")


@dataclass(frozen=True)
class MatrixDocument:
    k: int
    orientation: str
    matrix: TriMatrix[Fraction]  # always the upper-triangular core form

    @property
    def lower(self) -> bool:
        return self.orientation == "lower"

    def to_user(self, i: int, j: int) -> Tuple[int, int]:
        """Core (upper) cell -> cell in the document's orientation."""
        return (j, i) if self.lower else (i, j)

    def from_user(self, i: int, j: int) -> Tuple[int, int]:
        return (j, i) if self.lower else (i, j)


def _entry(value: Any, row: int, col: int) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}", row, col)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"expected a rational string, got {value!r}", row, col)
    try:
        return parse_rational(value)
    except ParseError as exc:
        raise ParseError(str(exc), row, col) from None


def parse_document(text: str) -> MatrixDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ParseError("matrix document must be an object with a 'rows' field")
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("'rows' must be a nonempty list of lists")
    k = doc.get("k", len(rows))
    if not isinstance(k, int) or k <= 0:
        raise ParseError(f"'k' must be a positive integer, got {k!r}")
    orientation = doc.get("orientation", "upper")
    if orientation not in ORIENTATIONS:
        raise ParseError(f"orientation must be 'upper' or 'lower', got {orientation!r}")
    if len(rows) != k:
        raise ParseError(f"k = {k} but {len(rows)} rows given")
    for r, row in enumerate(rows, start=1):
        if len(row) != k:
            raise ParseError(f"row {r} has {len(row)} entries, expected {k}")
    values = [[_entry(x, r, c) for c, x in enumerate(row, start=1)] for r, row in enumerate(rows, start=1)]
    if orientation == "lower":
        for r in range(k):
            for c in range(r + 1, k):
                if values[r][c] != 0:
                    raise ShapeError(
                        f"nonzero entry above the diagonal at ({r + 1}, {c + 1}) "
                        "in a lower-triangular document"
                    )
        values = [list(col) for col in zip(*values)]
    return MatrixDocument(k, orientation, TriMatrix(values))


def parse_matrix(text: str) -> TriMatrix[Fraction]:
    return parse_document(text).matrix


def matrix_rows(M: TriMatrix, lower: bool = False) -> List[List[str]]:
    rows = M.transpose_rows() if lower else [list(r) for r in M.rows]
    return [[format_rational(x) for x in r] for r in rows]


def format_matrix(M: TriMatrix, orientation: str = "upper") -> str:
    return dump(
        {"k": M.k, "orientation": orientation, "rows": matrix_rows(M, orientation == "lower")}
    )


def factors_document(T: PowerFactorTable, doc: MatrixDocument) -> Dict[str, Any]:
    cells = []
    for i, j in doc.matrix.cells():
        cells.append(
            {
                "cell": list(doc.to_user(i, j)),
                "factors": [
                    {"s": s, "eigenvalue": format_rational(doc.matrix[s, s]), "p": format_rational(p)}
                    for s, p in zip(range(i, j + 1), T.row(i, j))
                ],
            }
        )
    return {"k": doc.k, "orientation": doc.orientation, "cells": cells}


def cell_coefficients_document(table: ClosedFormTable, doc: MatrixDocument, i: int, j: int) -> Dict[str, Any]:
    return {
        "cell": list(doc.to_user(i, j)),
        "groups": [
            {
                "eigenvalue": format_rational(lam),
                "coefficients": [format_rational(c) for c in cs],
            }
            for lam, cs in table.cell(i, j)
        ],
    }


def coefficients_document(table: ClosedFormTable, doc: MatrixDocument, cells=None) -> Dict[str, Any]:
    cells = list(doc.matrix.cells()) if cells is None else cells
    return {
        "k": doc.k,
        "orientation": doc.orientation,
        "cells": [cell_coefficients_document(table, doc, i, j) for i, j in cells],
    }


def parse_coefficients_document(text: str) -> Dict[Tuple[int, int], Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...]]:
    """Inverse of :func:`coefficients_document` (cells keyed as written)."""
    doc = json.loads(text)
    out = {}
    for cell in doc["cells"]:
        key = tuple(cell["cell"])
        out[key] = tuple(
            (parse_rational(g["eigenvalue"]), tuple(parse_rational(c) for c in g["coefficients"]))
            for g in cell["groups"]
        )
    return out


def dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"
