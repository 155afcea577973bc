"""Fixtures and random matrix generators shared by the test modules."""

import random
from fractions import Fraction as Fr

from tripow.tri import make_tri_matrix

SEC3_ROWS = [
    [3, 2, 3, 5, 4, 2],
    [0, 5, 2, 4, 3, 1],
    [0, 0, 3, 2, 6, 4],
    [0, 0, 0, 5, 5, 1],
    [0, 0, 0, 0, 7, 2],
    [0, 0, 0, 0, 0, 3],
]
ALL_FIVE_ROWS = [
    [5, 2, 1, 3],
    [0, 5, 4, 2],
    [0, 0, 5, 1],
    [0, 0, 0, 5],
]
SMALL_ROWS = [[1, 1, 1], [0, 2, 1], [0, 0, 3]]
# zero eigenvalue repeated, so the singular case also exercises extraction
SINGULAR_ROWS = [
    [0, 1, 2, 3],
    [0, 2, 1, -1],
    [0, 0, 0, 4],
    [0, 0, 0, 2],
]


def sec3():
    return make_tri_matrix(6, SEC3_ROWS)


def all_five():
    return make_tri_matrix(4, ALL_FIVE_ROWS)


def small():
    return make_tri_matrix(3, SMALL_ROWS)


def singular():
    return make_tri_matrix(4, SINGULAR_ROWS)


SMALL_FRACTIONS = sorted({Fr(p, q) for p in range(-6, 7) for q in range(1, 5)})


def _offdiag(rng):
    if rng.random() < 0.25:
        return Fr(0)
    return Fr(rng.randint(-5, 5), rng.randint(1, 3))


def random_distinct(rng: random.Random, k: int):
    diag = rng.sample(SMALL_FRACTIONS, k)
    rows = [[diag[i] if i == j else (_offdiag(rng) if j > i else 0) for j in range(k)] for i in range(k)]
    return make_tri_matrix(k, rows)


def random_multiplicities(rng: random.Random, k: int):
    """Random composition of k with at least one part >= 2."""
    while True:
        parts, left = [], k
        while left:
            p = rng.randint(1, left)
            parts.append(p)
            left -= p
        if max(parts) >= 2:
            return parts


def random_repeated(rng: random.Random, multiplicities, allow_zero=True):
    values = rng.sample(SMALL_FRACTIONS if allow_zero else [x for x in SMALL_FRACTIONS if x], len(multiplicities))
    diag = [v for v, m in zip(values, multiplicities) for _ in range(m)]
    rng.shuffle(diag)
    k = len(diag)
    rows = [[diag[i] if i == j else (_offdiag(rng) if j > i else 0) for j in range(k)] for i in range(k)]
    return make_tri_matrix(k, rows)
