import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from tripow.bench import bench
from tripow.closed_form import ClosedFormTable, extract_coefficients
from tripow.errors import DomainError, InputError, SingularityError
from tripow.tri import identity, make_tri_matrix
from tripow.verify import (
    confluent_solve_oracle,
    direct_power,
    equivalence_suite,
    solve_exact,
    tri_inverse,
    tri_matmul,
)


def test_direct_power_basics(small, sec3):
    assert direct_power(small, 0) == identity(3)
    assert direct_power(small, 2)[1, 3] == 5
    M2 = tri_matmul(sec3, sec3)
    assert direct_power(sec3, 5) == tri_matmul(tri_matmul(M2, M2), sec3)
    with pytest.raises(InputError):
        direct_power(small, -1)


@given(st.integers(0, 10**6), st.integers(0, 7), st.integers(0, 7))
@settings(max_examples=40)
def test_power_additivity(seed, a, b):
    M = helpers.random_distinct(random.Random(seed), 4)
    assert direct_power(M, a + b) == tri_matmul(direct_power(M, a), direct_power(M, b))


def test_inverse_examples(small):
    assert tri_inverse(identity(4)) == identity(4)
    inv = tri_inverse(small)
    assert inv.diagonal == (1, Fr(1, 2), Fr(1, 3))
    assert (inv[1, 2], inv[2, 3], inv[1, 3]) == (Fr(-1, 2), Fr(-1, 6), Fr(-1, 6))
    with pytest.raises(SingularityError):
        tri_inverse(helpers.singular())


@given(st.integers(0, 10**6))
def test_inverse_is_two_sided(seed):
    rng = random.Random(seed)
    M = helpers.random_repeated(rng, helpers.random_multiplicities(rng, rng.randint(2, 6)), allow_zero=False)
    inv = tri_inverse(M)
    assert tri_matmul(M, inv) == identity(M.k) == tri_matmul(inv, M)


def test_solve_exact():
    assert solve_exact([[0, 1], [2, 0]], [3, 4]) == [2, 3]


def test_confluent_examples(all_five, small, sec3):
    assert confluent_solve_oracle(all_five, 1, 4) == ((5, (3, 20, 33, 40)),)
    assert confluent_solve_oracle(small, 1, 3) == ((1, (0,)), (2, (-2,)), (3, (3,)))
    assert confluent_solve_oracle(sec3, 4, 4) == ((5, (5,)),)


def test_confluent_matches_extraction(sec3, singular):
    for M in (sec3, singular):
        T = extract_coefficients(M)
        for i, j in M.cells():
            assert confluent_solve_oracle(M, i, j) == T.cell(i, j)


def test_equivalence_paper_fixtures(sec3, all_five):
    r = equivalence_suite(sec3, -4, 8, fixture="sec3")
    assert r.passed and r.n_checked == list(range(-4, 9)) and not r.n_skipped
    assert all(r.cells.values()) and all(r.coefficient_cells.values())
    assert equivalence_suite(all_five, -3, 6).passed


def test_equivalence_singular_skips_nonpositive(singular):
    r = equivalence_suite(singular, -2, 6)
    assert r.passed
    assert r.n_skipped == [-2, -1, 0]
    assert r.n_checked == list(range(1, 7))


def test_equivalence_reports_mismatch(sec3):
    T = ClosedFormTable(sec3)
    T.cell(1, 6)
    # corrupt one cached coefficient; the suite must report rather than raise
    T._cells[1, 6] = ((Fr(3), (Fr(0), Fr(5, 8), Fr(15, 2))),) + T._cells[1, 6][1:]
    r = equivalence_suite(sec3, 1, 3, table=T)
    assert not r.passed
    assert r.first_mismatch.cell == (1, 6) and r.first_mismatch.n == 1
    assert r.cells[1, 6] is False and r.cells[2, 4] is True
    d = r.as_dict()
    assert d["passed"] is False and d["first_mismatch"]["cell"] == [1, 6]


def test_bench_paper_matrix(sec3):
    rep = bench(sec3, range(1, 201))
    assert rep.results_equal and rep.queries == 200 and rep.k == 6
    assert rep.squaring_matmuls > 0 and rep.closed_form_terms > 0
    single = bench(sec3, [1])
    assert single.results_equal and single.squaring_matmuls == 0


def test_bench_negative_powers(all_five):
    assert bench(all_five, [-50, 50]).results_equal


def test_bench_rejects_bad_queries(singular, sec3):
    with pytest.raises(DomainError):
        bench(singular, [0, 1])
    with pytest.raises(InputError):
        bench(sec3, [])


def test_lower_triangular_power_is_transpose():
    M = make_tri_matrix(3, [[2, 1, 0], [0, 2, 5], [0, 0, -1]])
    L = M.transpose_rows()
    # plain list product on the transpose, as an independent check
    def mul(A, B):
        return [[sum(A[i][t] * B[t][j] for t in range(3)) for j in range(3)] for i in range(3)]
    L3 = mul(mul(L, L), L)
    assert L3 == direct_power(M, 3).transpose_rows()
