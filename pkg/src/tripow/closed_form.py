"""Closed form for integer powers of a triangular matrix with repeated diagonal.

For a cell (i, j) whose diagonal range i..j holds the distinct values
``lam_1, ..., lam_R`` with multiplicities ``m_1, ..., m_R``::

    (M**n)[i, j] = sum_r sum_{s=1..m_r} c[r][s] * binom(n-1, s-1) * lam_r**(n-s)

The coefficients are found by nudging every repeated diagonal entry by a
distinct power of ``eps``, computing the power factors of the nudged matrix
over rational functions of ``eps``, regrouping the binomial expansion of each
nudged eigenvalue power around the original eigenvalue, and setting
``eps = 0``.  The result does not depend on ``n``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

from .arith import RationalFunction, eval_at_zero, rat_pow
from .errors import DomainError, PoleError, TriPowError
from .factors import factor_row
from .tri import (
    DiagonalGrouping,
    PerturbationPlan,
    TriMatrix,
    build_perturbation_plan,
    check_index_range,
    group_diagonal,
    perturb,
    validate_plan,
)


def gen_binom(n: int, t: int) -> int:
    """``n (n-1) ... (n-t+1) / t!``, valid for negative ``n``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    num = 1
    for r in range(t):
        num *= n - r
    return num // factorial(t)


class ExtractionError(TriPowError):
    """The limit at eps = 0 did not exist; the perturbation plan is broken."""


CellCoefficients = Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...]


class ClosedFormTable:
    """Coefficients of the closed form, filled in lazily cell by cell.

    ``plan`` defaults to :func:`~tripow.tri.build_perturbation_plan`.  Any
    valid plan gives the same coefficients.
    """

    def __init__(self, M: TriMatrix[Fraction], plan: Optional[PerturbationPlan] = None):
        self.M = M
        self.k = M.k
        self.plan = plan if plan is not None else build_perturbation_plan(M)
        self._lock = threading.RLock()
        self._perturbed: Optional[TriMatrix] = None
        self._rows: Dict[int, Dict] = {}
        self._cells: Dict[Tuple[int, int], CellCoefficients] = {}
        self._groupings: Dict[Tuple[int, int], DiagonalGrouping] = {}

    @property
    def perturbed(self) -> TriMatrix:
        with self._lock:
            if self._perturbed is None:
                if all(d.is_zero() for d in self.plan.deltas):
                    # nothing to nudge: stay in exact rationals
                    validate_plan(self.M, self.plan)
                    self._perturbed = self.M
                else:
                    self._perturbed = perturb(self.M, self.plan)
            return self._perturbed

    def _factor_row(self, i: int) -> Dict:
        with self._lock:
            row = self._rows.get(i)
            if row is None:
                row = self._rows[i] = factor_row(self.perturbed, i)
            return row

    def grouping(self, i: int, j: int) -> DiagonalGrouping:
        with self._lock:
            g = self._groupings.get((i, j))
            if g is None:
                g = self._groupings[i, j] = group_diagonal(self.M, i, j)
            return g

    def extraction_sum(self, i: int, j: int, r: int, s: int) -> Fraction:
        """Value at eps = 0 of ``sum_q (-delta_q)**(s-1) * p~[i, j, q]`` over
        the positions ``q`` of group ``r`` (1-based).  For s > mpy(r) this is
        zero; the closed form only keeps s <= mpy(r)."""
        check_index_range(self.M, i, j)
        if s < 1:
            raise ValueError("s must be >= 1")
        group = self.grouping(i, j).groups[r - 1]
        row = self._factor_row(i)
        total = None
        for q in group.positions:
            delta = self.plan.delta(q)
            if delta.is_zero():
                if s > 1:
                    continue
                term = row[i, j, q]
            else:
                term = row[i, j, q] * RationalFunction((-delta) ** (s - 1))
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        try:
            return eval_at_zero(total)
        except PoleError as exc:
            raise ExtractionError(
                f"no limit at eps = 0 for cell ({i}, {j}), group {r}, s = {s}"
            ) from exc

    def cell(self, i: int, j: int) -> CellCoefficients:
        """``((lam_1, (c_11, c_12, ...)), (lam_2, (...)), ...)`` in
        first-occurrence order."""
        check_index_range(self.M, i, j)
        with self._lock:
            hit = self._cells.get((i, j))
            if hit is not None:
                return hit
            out = []
            for r, g in enumerate(self.grouping(i, j).groups, start=1):
                coeffs = tuple(
                    self.extraction_sum(i, j, r, s) for s in range(1, g.multiplicity + 1)
                )
                out.append((g.value, coeffs))
            result = self._cells[i, j] = tuple(out)
            return result

    def complete(self) -> ClosedFormTable:
        for i, j in self.M.cells():
            self.cell(i, j)
        return self

    def as_dict(self) -> Dict[Tuple[int, int], CellCoefficients]:
        self.complete()
        return dict(sorted(self._cells.items()))

    def __eq__(self, other):
        if not isinstance(other, ClosedFormTable):
            return NotImplemented
        return self.M == other.M and self.as_dict() == other.as_dict()


def extract_coefficients(
    M: TriMatrix[Fraction], plan: Optional[PerturbationPlan] = None
) -> ClosedFormTable:
    """Return the coefficient table for ``M``; cells are computed on demand."""
    return ClosedFormTable(M, plan)


def eval_cell(coeffs: CellCoefficients, n: int) -> Fraction:
    total = Fraction(0)
    for lam, cs in coeffs:
        for s, c in enumerate(cs, start=1):
            if not c:
                continue
            b = gen_binom(n - 1, s - 1)
            if b == 0:
                continue
            if lam == 0 and n - s < 0:
                raise DomainError(f"zero eigenvalue raised to the power {n - s}")
            total += c * b * rat_pow(lam, n - s)
    return total


def closed_form_eval(T: ClosedFormTable, i: int, j: int, n: int) -> Fraction:
    return eval_cell(T.cell(i, j), n)


def matrix_power(
    M: TriMatrix[Fraction], n: int, table: Optional[ClosedFormTable] = None
) -> TriMatrix[Fraction]:
    """``M**n`` assembled cell by cell from the closed form."""
    if table is None:
        table = ClosedFormTable(M)
    if n <= 0 and M.is_singular():
        raise DomainError(f"singular matrix has no power {n}")
    k = M.k
    rows: List[List[Fraction]] = [[Fraction(0)] * k for _ in range(k)]
    for i, j in M.cells():
        rows[i - 1][j - 1] = closed_form_eval(table, i, j, n)
    return TriMatrix(rows, _checked=True)


def power_entry(
    M: TriMatrix[Fraction], i: int, j: int, n: int, table: Optional[ClosedFormTable] = None
) -> Fraction:
    """Single entry of ``M**n``; only the factor row ``i`` is computed."""
    if table is None:
        table = ClosedFormTable(M)
    check_index_range(M, i, j)
    if n <= 0 and M.is_singular():
        raise DomainError(f"singular matrix has no power {n}")
    return closed_form_eval(table, i, j, n)
