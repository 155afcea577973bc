"""Independent oracles: repeated squaring, exact inverse, confluent solve."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import format_rational, rat_pow
from .closed_form import CellCoefficients, ClosedFormTable, gen_binom, matrix_power
from .errors import DomainError, InputError, SingularityError, TriPowError
from .tri import TriMatrix, check_index_range, group_diagonal, identity


def tri_matmul(A: TriMatrix, B: TriMatrix, stats: Optional[Dict[str, int]] = None) -> TriMatrix:
    """Product of two upper-triangular matrices (only i <= t <= j terms)."""
    k = A.k
    rows = [[Fraction(0)] * k for _ in range(k)]
    mults = 0
    for i in range(k):
        ai = A.rows[i]
        for j in range(i, k):
            acc = Fraction(0)
            for t in range(i, j + 1):
                acc += ai[t] * B.rows[t][j]
            mults += j - i + 1
            rows[i][j] = acc
    if stats is not None:
        stats["scalar_mults"] = stats.get("scalar_mults", 0) + mults
        stats["matmuls"] = stats.get("matmuls", 0) + 1
    return TriMatrix(rows, _checked=True)


def direct_power(
    M: TriMatrix[Fraction], n: int, stats: Optional[Dict[str, int]] = None
) -> TriMatrix[Fraction]:
    """``M**n`` for n >= 0 by binary exponentiation."""
    if n < 0:
        raise InputError("direct_power needs n >= 0; invert first for negative powers")
    result: Optional[TriMatrix] = None
    base = M
    while n:
        if n & 1:
            result = base if result is None else tri_matmul(result, base, stats)
        n >>= 1
        if n:
            base = tri_matmul(base, base, stats)
    return identity(M.k) if result is None else result


def tri_inverse(M: TriMatrix[Fraction]) -> TriMatrix[Fraction]:
    """Exact inverse by back-substitution, one column at a time."""
    k = M.k
    for q, d in enumerate(M.diagonal, start=1):
        if d == 0:
            raise SingularityError(f"zero diagonal entry at ({q}, {q})")
    inv = [[Fraction(0)] * k for _ in range(k)]
    for j in range(k):
        inv[j][j] = 1 / M.rows[j][j]
        for i in range(j - 1, -1, -1):
            acc = Fraction(0)
            for t in range(i + 1, j + 1):
                acc += M.rows[i][t] * inv[t][j]
            inv[i][j] = -acc / M.rows[i][i]
    return TriMatrix(inv, _checked=True)


def power_oracle(M: TriMatrix[Fraction], n: int, inverse: Optional[TriMatrix] = None) -> TriMatrix:
    """Ground truth for any integer n: squaring, on the inverse when n < 0."""
    if n >= 0:
        return direct_power(M, n)
    return direct_power(inverse if inverse is not None else tri_inverse(M), -n)


def solve_exact(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Gauss-Jordan elimination over Q with row pivoting on nonzero entries."""
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(x)] for row, x in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise TriPowError("singular linear system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def confluent_solve_oracle(M: TriMatrix[Fraction], i: int, j: int) -> CellCoefficients:
    """Closed-form coefficients of cell (i, j) from the first j-i+1 powers.

    The basis functions ``binom(n-1, s-1) * lam**(n-s)`` are fitted to the
    sampled entries; the system is a confluent Vandermonde system and is
    invertible because the group values are distinct.
    """
    check_index_range(M, i, j)
    grouping = group_diagonal(M, i, j)
    size = j - i + 1
    basis = [(g.value, s) for g in grouping.groups for s in range(1, g.multiplicity + 1)]
    A, b = [], []
    for n in range(1, size + 1):
        row = []
        for lam, s in basis:
            # binom vanishes for n < s, which also sidesteps 0**negative
            c = gen_binom(n - 1, s - 1)
            row.append(c * rat_pow(lam, n - s) if c else Fraction(0))
        A.append(row)
        b.append(direct_power(M, n)[i, j])
    x = iter(solve_exact(A, b))
    return tuple(
        (g.value, tuple(next(x) for _ in range(g.multiplicity))) for g in grouping.groups
    )


@dataclass
class Mismatch:
    what: str
    cell: Tuple[int, int]
    n: Optional[int]
    expected: object
    got: object


@dataclass
class VerificationReport:
    fixture: str
    n_range: Tuple[int, int]
    n_checked: List[int] = field(default_factory=list)
    n_skipped: List[int] = field(default_factory=list)
    cells: Dict[Tuple[int, int], bool] = field(default_factory=dict)
    coefficient_cells: Dict[Tuple[int, int], bool] = field(default_factory=dict)
    first_mismatch: Optional[Mismatch] = None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def _fail(self, m: Mismatch):
        if self.first_mismatch is None:
            self.first_mismatch = m

    def as_dict(self) -> dict:
        def fmt(v):
            return format_rational(v) if isinstance(v, (int, Fraction)) else str(v)

        mm = None
        if self.first_mismatch is not None:
            m = self.first_mismatch
            mm = {
                "check": m.what,
                "cell": list(m.cell),
                "n": m.n,
                "expected": fmt(m.expected),
                "got": fmt(m.got),
            }
        return {
            "fixture": self.fixture,
            "n_range": list(self.n_range),
            "n_checked": self.n_checked,
            "n_skipped": self.n_skipped,
            "passed": self.passed,
            "cells": [
                {"cell": list(c), "power_ok": ok, "coefficients_ok": self.coefficient_cells.get(c)}
                for c, ok in sorted(self.cells.items())
            ],
            "first_mismatch": mm,
        }


def equivalence_suite(
    M: TriMatrix[Fraction],
    n_min: int,
    n_max: int,
    fixture: str = "matrix",
    table: Optional[ClosedFormTable] = None,
) -> VerificationReport:
    """Compare the closed form against the oracles; never raises on mismatch.

    For a singular matrix the nonpositive part of the range is skipped.
    """
    if n_min > n_max:
        raise InputError("n_min must not exceed n_max")
    table = table if table is not None else ClosedFormTable(M)
    report = VerificationReport(fixture, (n_min, n_max))
    cells = list(M.cells())
    for c in cells:
        report.cells[c] = True
    singular = M.is_singular()
    inverse = None if singular else tri_inverse(M)

    for n in range(n_min, n_max + 1):
        if singular and n <= 0:
            report.n_skipped.append(n)
            continue
        report.n_checked.append(n)
        expected = power_oracle(M, n, inverse)
        got = matrix_power(M, n, table)
        for i, j in cells:
            if expected[i, j] != got[i, j]:
                report.cells[i, j] = False
                report._fail(Mismatch("power", (i, j), n, expected[i, j], got[i, j]))

    for i, j in cells:
        want = confluent_solve_oracle(M, i, j)
        have = table.cell(i, j)
        ok = want == have
        report.coefficient_cells[i, j] = ok
        if not ok:
            report.cells[i, j] = False
            report._fail(Mismatch("coefficients", (i, j), None, want, have))
    return report


def check_power_range(M: TriMatrix, ns: Sequence[int]) -> None:
    if M.is_singular():
        bad = [n for n in ns if n <= 0]
        if bad:
            raise DomainError(f"singular matrix has no power {bad[0]}")
