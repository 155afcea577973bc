"""Closed-form evaluation versus exponentiation by squaring."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Iterable, List

from .closed_form import ClosedFormTable, gen_binom, matrix_power
from .errors import InputError, TriPowError
from .tri import TriMatrix
from .verify import check_power_range, direct_power, tri_inverse


@dataclass
class BenchReport:
    k: int
    queries: int
    n_min: int
    n_max: int
    extraction_seconds: float
    closed_form_seconds: float
    closed_form_per_query: float
    squaring_seconds: float
    squaring_per_query: float
    closed_form_terms: int
    squaring_matmuls: int
    squaring_scalar_mults: int
    results_equal: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _closed_form_terms(table: ClosedFormTable, n: int) -> int:
    terms = 0
    for coeffs in table.as_dict().values():
        for _, cs in coeffs:
            terms += sum(1 for s in range(1, len(cs) + 1) if gen_binom(n - 1, s - 1))
    return terms


def bench(M: TriMatrix[Fraction], queries: Iterable[int]) -> BenchReport:
    """Time both paths over ``queries``; raises if they ever disagree."""
    ns: List[int] = sorted(set(queries))
    if not ns:
        raise InputError("no queries")
    check_power_range(M, ns)

    t0 = time.perf_counter()
    table = ClosedFormTable(M).complete()
    t1 = time.perf_counter()
    fast: Dict[int, TriMatrix] = {n: matrix_power(M, n, table) for n in ns}
    t2 = time.perf_counter()

    stats: Dict[str, int] = {}
    inverse = tri_inverse(M) if ns[0] < 0 else None
    slow: Dict[int, TriMatrix] = {}
    for n in ns:
        slow[n] = direct_power(M, n, stats) if n >= 0 else direct_power(inverse, -n, stats)
    t3 = time.perf_counter()

    bad = [n for n in ns if fast[n] != slow[n]]
    if bad:
        raise TriPowError(f"closed form and squaring disagree at n = {bad[0]}")

    q = len(ns)
    return BenchReport(
        k=M.k,
        queries=q,
        n_min=ns[0],
        n_max=ns[-1],
        extraction_seconds=t1 - t0,
        closed_form_seconds=t2 - t1,
        closed_form_per_query=(t2 - t1) / q,
        squaring_seconds=t3 - t2,
        squaring_per_query=(t3 - t2) / q,
        closed_form_terms=sum(_closed_form_terms(table, n) for n in ns),
        squaring_matmuls=stats.get("matmuls", 0),
        squaring_scalar_mults=stats.get("scalar_mults", 0),
        results_equal=True,
    )
