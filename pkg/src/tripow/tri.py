"""Upper-triangular matrices, diagonal grouping and the perturbation plan.

All public indices are 1-based: ``M[i, j]`` is row ``i``, column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Generic, Iterator, List, Sequence, Tuple, TypeVar

from .arith import Polynomial, RationalFunction, eval_at_zero, lift
from .errors import InputError, ShapeError

F = TypeVar("F")


class TriMatrix(Generic[F]):
    """Immutable k x k upper-triangular matrix over a field.

    Entries may be :class:`~fractions.Fraction` or
    :class:`~tripow.arith.RationalFunction`; the algorithms in this package
    only use ``+ - * /`` and equality on them.
    """

    __slots__ = ("k", "rows")

    def __init__(self, rows: Sequence[Sequence[F]], *, _checked: bool = False):
        rows = tuple(tuple(r) for r in rows)
        if not _checked:
            k = len(rows)
            if k == 0:
                raise InputError("matrix dimension must be positive")
            for i, r in enumerate(rows):
                if len(r) != k:
                    raise ShapeError(f"row {i + 1} has {len(r)} entries, expected {k}")
                for j in range(i):
                    if r[j] != 0:
                        raise ShapeError(
                            f"nonzero entry below the diagonal at ({i + 1}, {j + 1})"
                        )
        object.__setattr__(self, "k", len(rows))
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("TriMatrix is immutable")

    def __getitem__(self, ij: Tuple[int, int]) -> F:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def diag(self, q: int) -> F:
        return self.rows[q - 1][q - 1]

    @property
    def diagonal(self) -> Tuple[F, ...]:
        return tuple(self.rows[q][q] for q in range(self.k))

    def is_singular(self) -> bool:
        return any(d == 0 for d in self.diagonal)

    def cells(self) -> Iterator[Tuple[int, int]]:
        """All (i, j) with 1 <= i <= j <= k, row-major."""
        for i in range(1, self.k + 1):
            for j in range(i, self.k + 1):
                yield i, j

    def map(self, fn) -> TriMatrix:
        return TriMatrix([[fn(x) for x in r] for r in self.rows], _checked=True)

    def transpose_rows(self) -> List[List[F]]:
        return [list(col) for col in zip(*self.rows)]

    def __eq__(self, other):
        if not isinstance(other, TriMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"TriMatrix({[[str(x) for x in r] for r in self.rows]})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def identity(k: int) -> TriMatrix[Fraction]:
    return TriMatrix(
        [[Fraction(int(i == j)) for j in range(k)] for i in range(k)], _checked=True
    )


def make_tri_matrix(k: int, entries: Sequence[Sequence[Any]]) -> TriMatrix[Fraction]:
    """Validate and build a rational upper-triangular matrix."""
    if k <= 0:
        raise InputError("matrix dimension must be positive")
    if len(entries) != k:
        raise ShapeError(f"expected {k} rows, got {len(entries)}")
    return TriMatrix([[Fraction(x) for x in row] for row in entries])


def check_index_range(M: TriMatrix, i: int, j: int) -> None:
    if not (1 <= i <= j <= M.k):
        raise InputError(f"cell ({i}, {j}) outside 1 <= i <= j <= {M.k}")


@dataclass(frozen=True)
class Group:
    value: Fraction
    multiplicity: int
    positions: Tuple[int, ...]


@dataclass(frozen=True)
class DiagonalGrouping:
    """Distinct diagonal values on rows i..j, in order of first occurrence."""

    i: int
    j: int
    groups: Tuple[Group, ...]

    @property
    def num(self) -> int:
        return len(self.groups)

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return tuple(g.value for g in self.groups)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(g.multiplicity for g in self.groups)


def group_diagonal(M: TriMatrix, i: int, j: int) -> DiagonalGrouping:
    check_index_range(M, i, j)
    buckets: Dict[Any, List[int]] = {}
    for q in range(i, j + 1):
        buckets.setdefault(M.diag(q), []).append(q)
    groups = tuple(Group(v, len(pos), tuple(pos)) for v, pos in buckets.items())
    return DiagonalGrouping(i, j, groups)


@dataclass(frozen=True)
class PerturbationPlan:
    """Amount ``delta(q)`` subtracted from each diagonal entry ``q``.

    ``deltas[q - 1]`` is either the zero polynomial or ``eps**t``; nonzero
    exponents are pairwise distinct.
    """

    deltas: Tuple[Polynomial, ...]

    @property
    def k(self) -> int:
        return len(self.deltas)

    def delta(self, q: int) -> Polynomial:
        return self.deltas[q - 1]

    def exponent(self, q: int) -> int:
        """Exponent of ``eps`` in ``delta(q)``; 0 when unperturbed."""
        return max(self.deltas[q - 1].degree, 0)

    @classmethod
    def from_exponents(cls, exponents: Sequence[int]) -> PerturbationPlan:
        return cls(
            tuple(Polynomial.monomial(t) if t else Polynomial() for t in exponents)
        )


def build_perturbation_plan(M: TriMatrix[Fraction]) -> PerturbationPlan:
    """Leave the first occurrence of each diagonal value alone; give every
    later duplicate ``eps**t`` with t = 1, 2, 3, ... in diagonal order."""
    seen = set()
    exps = []
    t = 0
    for d in M.diagonal:
        if d in seen:
            t += 1
            exps.append(t)
        else:
            seen.add(d)
            exps.append(0)
    return PerturbationPlan.from_exponents(exps)


def validate_plan(M: TriMatrix[Fraction], plan: PerturbationPlan) -> None:
    if plan.k != M.k:
        raise InputError(f"plan has {plan.k} entries for a {M.k}x{M.k} matrix")
    exps = [plan.exponent(q) for q in range(1, M.k + 1)]
    for q, d in enumerate(plan.deltas, start=1):
        if not d.is_zero() and d != Polynomial.monomial(d.degree):
            raise InputError(f"delta({q}) = {d} is not a pure monomial eps^t")
    nonzero = [t for t in exps if t]
    if len(set(nonzero)) != len(nonzero):
        raise InputError("perturbation exponents must be pairwise distinct")
    perturbed = {(M.diag(q), exps[q - 1]) for q in range(1, M.k + 1)}
    if len(perturbed) != M.k:
        raise InputError("plan leaves two equal diagonal entries unperturbed")


def perturb(
    M: TriMatrix[Fraction], plan: PerturbationPlan
) -> TriMatrix[RationalFunction]:
    validate_plan(M, plan)
    rows = []
    for i, r in enumerate(M.rows):
        row = [lift(x) for x in r]
        delta = plan.deltas[i]
        if not delta.is_zero():
            row[i] = RationalFunction(Polynomial.constant(r[i]) - delta)
        rows.append(row)
    return TriMatrix(rows, _checked=True)


def at_zero(M: TriMatrix) -> TriMatrix[Fraction]:
    """Set ``eps = 0`` entrywise."""
    return M.map(eval_at_zero)
