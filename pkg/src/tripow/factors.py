"""Power factors of a triangular matrix with pairwise-distinct diagonal.

For such a matrix every entry of ``M**n`` is a fixed combination of the
diagonal powers::

    (M**n)[i, j] = sum(p[i, j, s] * M[s, s]**(n - 1) for s in i..j)

The factors ``p[i, j, s]`` are produced two ways: a row-by-row recursion
(the production path) and a brute-force sum over adjusted chains (the test
oracle).  Both work over any field type that supports ``+ - * /``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Generic, Iterator, Tuple, TypeVar

from .arith import rat_pow
from .errors import DistinctnessError, DomainError
from .tri import TriMatrix, check_index_range

F = TypeVar("F")


def check_distinct_diagonal(M: TriMatrix) -> None:
    seen: Dict = {}
    for q, d in enumerate(M.diagonal, start=1):
        if d in seen:
            raise DistinctnessError(
                f"diagonal entries {seen[d]} and {q} are equal ({d})"
            )
        seen[d] = q


class PowerFactorTable(Generic[F]):
    """``p[i, j, s]`` for 1 <= i <= s <= j <= k; anything else reads as zero."""

    def __init__(self, k: int, values: Dict[Tuple[int, int, int], F], zero: F):
        self.k = k
        self._p = dict(values)
        self.zero = zero

    def __getitem__(self, ijs: Tuple[int, int, int]) -> F:
        i, j, s = ijs
        if not (1 <= i <= s <= j <= self.k):
            return self.zero
        return self._p[ijs]

    def row(self, i: int, j: int) -> Tuple[F, ...]:
        """Factors ``p[i, j, s]`` for s = i..j."""
        return tuple(self._p[i, j, s] for s in range(i, j + 1))

    def items(self):
        return sorted(self._p.items())

    def __eq__(self, other):
        if not isinstance(other, PowerFactorTable):
            return NotImplemented
        return self.k == other.k and self._p == other._p


def factor_row(M: TriMatrix[F], i: int) -> Dict[Tuple[int, int, int], F]:
    """All ``p[i, j, s]`` for a fixed first index ``i``.

    Rows are independent of each other, so a single cell only needs its own
    row.  Caller is responsible for the distinct-diagonal check.
    """
    k = M.k
    p: Dict[Tuple[int, int, int], F] = {(i, i, i): M[i, i]}
    for j in range(i + 1, k + 1):
        dj = M[j, j]
        total = M[i, j] * 0
        for s in range(i, j):
            acc = M[i, j] * 0
            for t in range(s, j):
                mtj = M[t, j]
                if mtj != 0:
                    acc = acc + p[i, t, s] * mtj
            v = acc / (M[s, s] - dj)
            p[i, j, s] = v
            total = total + v
        p[i, j, j] = M[i, j] - total
    return p


def power_factors_recursive(M: TriMatrix[F]) -> PowerFactorTable[F]:
    check_distinct_diagonal(M)
    values: Dict[Tuple[int, int, int], F] = {}
    for i in range(1, M.k + 1):
        values.update(factor_row(M, i))
    return PowerFactorTable(M.k, values, M[1, 1] * 0)


def chain_paths(i: int, j: int) -> Iterator[Tuple[int, ...]]:
    """Strictly increasing index paths ``(i, a, b, ..., j)``; there are
    ``2**(j - i - 1)`` of them when i < j."""
    inner = range(i + 1, j)
    for r in range(len(inner) + 1):
        for mid in combinations(inner, r):
            yield (i, *mid, j)


def power_factor_chains(M: TriMatrix[F], i: int, j: int, s: int) -> F:
    """Sum of adjusted chains from ``i`` to ``j`` through ``s``.

    A chain is the product of entries along a path; it may also open with the
    diagonal factor ``M[i, i]`` (a first step from ``i`` to itself).  Its
    adjusted form divides by ``M[s, s] - M[x, x]`` for every index ``x`` the
    path steps onto, with the ``x == s`` factor replaced by 1.  Only chains
    that step onto ``s`` contribute.
    """
    check_distinct_diagonal(M)
    check_index_range(M, i, j)
    zero = M[1, 1] * 0
    if not (i <= s <= j):
        return zero
    if i == j:
        return M[i, i]
    ds = M[s, s]
    total = zero
    for path in chain_paths(i, j):
        num = M[i, i] * 0 + 1
        for a, b in zip(path, path[1:]):
            num = num * M[a, b]
        if num == 0:
            continue
        landings = path[1:]
        for with_loop in (False, True):
            steps = ((i,) + landings) if with_loop else landings
            if s not in steps:
                continue
            den = M[i, i] * 0 + 1
            for x in steps:
                if x != s:
                    den = den * (ds - M[x, x])
            term = num / den
            if with_loop:
                term = term * M[i, i]
            total = total + term
    return total


def power_from_factors(
    T: PowerFactorTable[Fraction], M: TriMatrix[Fraction], i: int, j: int, n: int
) -> Fraction:
    """Entry ``(i, j)`` of ``M**n`` from its power factors, any integer n."""
    check_index_range(M, i, j)
    if n <= 0 and M.is_singular():
        raise DomainError(f"singular matrix has no power {n}")
    total = Fraction(0)
    for s in range(i, j + 1):
        p = T[i, j, s]
        if p:
            total += p * rat_pow(M[s, s], n - 1)
    return total

