"""Exit criteria.  Arithmetic is exact, so every comparison is equality.

Each test appends one PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import contextlib
import json
import random
import time

import pytest

import helpers
from conftest import ACCEPTANCE_LINES
from tripow.cli import main
from tripow.closed_form import ClosedFormTable, matrix_power
from tripow.factors import power_factor_chains, power_factors_recursive
from tripow.verify import confluent_solve_oracle, direct_power, equivalence_suite, tri_inverse

SEED = 20130128


@contextlib.contextmanager
def criterion(label):
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  {label}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {label}")


@pytest.fixture
def sec3_file(tmp_path):
    path = tmp_path / "sec3.json"
    path.write_text(json.dumps({"k": 6, "orientation": "upper", "rows": [[str(x) for x in r] for r in helpers.SEC3_ROWS]}))
    return str(path)


def coeffs_via_cli(capsys, path, cell):
    code = main(["coeffs", path, "--cell", cell])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    return [(g["eigenvalue"], g["coefficients"]) for g in out["cells"][0]["groups"]]


def test_1_sec3_cell_16(capsys, sec3_file):
    with criterion("1 six-by-six example, cell (1,6), exact and < 1 s"):
        t0 = time.perf_counter()
        got = coeffs_via_cli(capsys, sec3_file, "1,6")
        elapsed = time.perf_counter() - t0
        assert got == [
            ("3", ["-203/32", "5/8", "15/2"]),
            ("5", ["-59/2", "-60"]),
            ("7", ["1211/32"]),
        ]
        assert elapsed < 1.0, f"took {elapsed:.3f} s"


def test_2_sec3_cell_24(capsys, sec3_file):
    with criterion("2 six-by-six example, cell (2,4)"):
        assert coeffs_via_cli(capsys, sec3_file, "2,4") == [("5", ["1", "30"]), ("3", ["3"])]


def test_3_all_five(capsys, tmp_path):
    with criterion("3 four-by-four all-5 example, cell (1,4)"):
        path = tmp_path / "five.json"
        path.write_text(json.dumps({"k": 4, "rows": [[str(x) for x in r] for r in helpers.ALL_FIVE_ROWS]}))
        assert coeffs_via_cli(capsys, str(path), "1,4") == [("5", ["3", "20", "33", "40"])]


def test_4_full_power_equivalence(sec3):
    with criterion("4 six-by-six example: n = 1..12 vs squaring, n = -6..-1 vs inverse"):
        assert not sec3.is_singular()
        T = ClosedFormTable(sec3)
        for n in range(1, 13):
            assert matrix_power(sec3, n, T) == direct_power(sec3, n), n
        inv = tri_inverse(sec3)
        for n in range(-6, 0):
            assert matrix_power(sec3, n, T) == direct_power(inv, -n), n


def test_5_power_factor_equivalence():
    with criterion("5 chain sums == recursion, row sums == entries, 200 random matrices"):
        rng = random.Random(SEED)
        count = 0
        for _ in range(200):
            k = rng.randint(1, 6)
            M = helpers.random_distinct(rng, k)
            T = power_factors_recursive(M)
            for i, j in M.cells():
                for s in range(1, k + 1):
                    assert power_factor_chains(M, i, j, s) == T[i, j, s], (i, j, s)
                if i < j:
                    assert sum(T.row(i, j)) == M[i, j]
            count += 1
        assert count >= 200


def _structures(rng):
    forced = [[4], [4, 1], [1, 4], [4, 2], [4, 1, 1], [2, 4], [3, 3], [3, 2, 1], [2, 2, 2], [3, 1, 2]]
    for m in forced:
        yield m
    while True:
        yield helpers.random_multiplicities(rng, rng.randint(2, 6))


def test_6_repeated_diagonal_equivalence():
    with criterion("6 closed form == squaring/inverse and == confluent solve, 100 random repeated-diagonal matrices"):
        rng = random.Random(SEED + 1)
        structures = _structures(rng)
        seen_mult4 = 0
        for _ in range(100):
            mults = next(structures)
            M = helpers.random_repeated(rng, mults)
            seen_mult4 += 4 in mults
            T = ClosedFormTable(M)
            for n in range(1, 9):
                assert matrix_power(M, n, T) == direct_power(M, n), (M, n)
            if not M.is_singular():
                inv = tri_inverse(M)
                for n in range(-3, 0):
                    assert matrix_power(M, n, T) == direct_power(inv, -n), (M, n)
            for i, j in M.cells():
                assert T.cell(i, j) == confluent_solve_oracle(M, i, j), (M, i, j)
        assert seen_mult4 >= 1


def test_7_cutoff(sec3, all_five):
    with criterion("7 extraction beyond the multiplicity vanishes (multiplicity 3 and 4)"):
        for M, cell, mult in ((sec3, (1, 6), 3), (all_five, (1, 4), 4)):
            T = ClosedFormTable(M)
            assert T.grouping(*cell).groups[0].multiplicity == mult
            assert T.extraction_sum(*cell, 1, mult + 1) == 0


def test_8_singular_convention(capsys, tmp_path, singular):
    with criterion("8 singular fixture passes n = 1..8; pow --n 0 is a domain error"):
        assert singular.is_singular()
        report = equivalence_suite(singular, 1, 8, fixture="singular")
        assert report.passed and report.n_checked == list(range(1, 9))
        path = tmp_path / "singular.json"
        path.write_text(json.dumps({"k": 4, "rows": [[str(x) for x in r] for r in helpers.SINGULAR_ROWS]}))
        assert main(["pow", str(path), "--n", "0"]) == 1
        assert "singular" in capsys.readouterr().err


def test_9_bench(capsys, sec3_file):
    with criterion("9 bench on the six-by-six example, n = 1..1000, both paths agree"):
        code = main(["bench", sec3_file, "--queries", "1..1000"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["results_equal"] is True and out["queries"] == 1000
