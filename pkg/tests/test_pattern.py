import itertools
import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minranklab.algebra import GF, QQ, Matrix, ZeroPattern, mat_rank, principal_submatrix
from minranklab.errors import InputError, InstanceTooLarge, LemmaCounterexample
from minranklab.pattern import (
    census_records,
    count_nks_zero_patterns,
    find_nks_principal_submatrix,
    lemma24_bound,
    nks_census,
    nks_witness,
    random_rank_matrix,
    rbg_bound,
    turan_min_nonzeros,
    verify_nks_witness,
    zero_patterns_of_family,
)
from minranklab.poly import MultiPoly

import oracles


def row_of_ones(n=4):
    return Matrix(GF(2), [[1] * n] + [[0] * n for _ in range(n - 1)])


class TestFamilies:
    def test_examples(self):
        F = GF(2)
        x1, x2 = MultiPoly.variables(F, 2)
        (y,) = MultiPoly.variables(F, 1)
        assert zero_patterns_of_family([y], 2) == {ZeroPattern((False,)), ZeroPattern((True,))}
        assert zero_patterns_of_family([y, y + 1], 2) == {ZeroPattern((False, True)), ZeroPattern((True, False))}
        assert len(zero_patterns_of_family([x1 * x2, x1 + x2], 2)) == 3

    def test_limit(self):
        big = MultiPoly.variables(GF(2), 21)
        with pytest.raises(InstanceTooLarge):
            zero_patterns_of_family(big[:1], 2)

    def test_rbg_examples(self):
        assert rbg_bound(1, 1, 1) == 2
        assert rbg_bound(0, 3, 4) == 1
        assert rbg_bound(3, 2, 2) == 28 == math.comb(8, 2)


class TestNksWitness:
    def test_examples(self):
        w = nks_witness(Matrix.identity(GF(2), 4))
        assert (w.n, w.k, w.s, w.basis_nonzeros) == (4, 4, 4, 8)
        w = nks_witness(Matrix.ones(GF(2), 4))
        assert (w.n, w.k, w.s, w.basis_nonzeros) == (4, 1, 16, 8)
        assert nks_witness(row_of_ones()) is None
        z = nks_witness(Matrix.zeros(GF(2), 3))
        assert (z.k, z.s, z.basis_nonzeros) == (0, 0, 0) and z.holds

    def test_limit(self):
        with pytest.raises(InstanceTooLarge):
            nks_witness(Matrix.identity(GF(2), 11))

    def test_frozen_exhaustive(self, frozen):
        for case in frozen["nks"]:
            M = Matrix(GF(case["q"]), case["rows"])
            n = M.n_rows
            w = nks_witness(M)
            expected_ok = n * case["min_basis_nonzeros"] <= 4 * case["k"] * case["s"]
            assert (w is not None) == expected_ok
            if w is not None:
                assert w.basis_nonzeros == case["min_basis_nonzeros"]
                assert verify_nks_witness(M, w)

    @given(st.integers(1, 4).flatmap(lambda n: st.lists(
        st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_greedy_is_minimal(self, rows):
        k, s, best = oracles.nks_witness_brute(rows, 3)
        w = nks_witness(Matrix(GF(3), rows))
        assert (w is not None) == (len(rows) * best <= 4 * k * s)
        if w is not None:
            assert w.basis_nonzeros == best and verify_nks_witness(Matrix(GF(3), rows), w)

    def test_tampered_witness_rejected(self):
        M = Matrix.identity(GF(2), 4)
        w = nks_witness(M)
        from dataclasses import replace

        assert not verify_nks_witness(M, replace(w, basis_nonzeros=7))
        assert not verify_nks_witness(M, replace(w, row_basis=(0, 0, 1, 2)))


class TestPrincipalSubmatrix:
    def test_examples(self):
        S, w = find_nks_principal_submatrix(Matrix.identity(GF(2), 4))
        assert S == (0,) and (w.n, w.k, w.s) == (1, 1, 1)
        S, w = find_nks_principal_submatrix(row_of_ones())
        assert S == (1,) and (w.n, w.k, w.s) == (1, 0, 0)

    def test_limit(self):
        with pytest.raises(InstanceTooLarge):
            find_nks_principal_submatrix(Matrix.identity(GF(2), 9))

    def test_counterexample_is_loud(self, monkeypatch):
        import minranklab.pattern as pattern

        monkeypatch.setattr(pattern, "nks_witness", lambda *a, **k: None)
        with pytest.raises(LemmaCounterexample, match="lemma-counterexample"):
            pattern.find_nks_principal_submatrix(Matrix.identity(GF(2), 2))

    @pytest.mark.parametrize("unit", [False, True])
    def test_random_rank_matrices(self, unit):
        for t in range(30):
            r = 1 + t % 3
            M = random_rank_matrix(6, r, 2, t, unit_diagonal=unit)
            assert mat_rank(M) == r
            S, w = find_nks_principal_submatrix(M)
            assert Fraction(w.k, len(S)) <= Fraction(r, 6)
            assert verify_nks_witness(principal_submatrix(M, S), w)


class TestLemma24:
    def test_examples(self):
        assert lemma24_bound(3, 3, 5) == pytest.approx(20 * 3 * 5 / 3 * math.log(3), rel=1e-12)
        assert lemma24_bound(2, 1, 1) == pytest.approx(math.log(4) + 10 * math.log(2), rel=1e-12)
        assert lemma24_bound(4, 1, 16) == pytest.approx(math.log(16) + 80 * math.log(4), rel=1e-12)

    def test_frozen_high_precision(self, frozen):
        for n, k, s, v in frozen["lemma24"]:
            assert lemma24_bound(n, k, s) == pytest.approx(float(mpmath.mpf(v)), rel=1e-9)

    def test_domain(self):
        with pytest.raises(InputError):
            lemma24_bound(3, 0, 1)
        with pytest.raises(InputError):
            lemma24_bound(3, 1, 10)


class TestCensus:
    def test_examples(self):
        assert count_nks_zero_patterns(2, 1, 1, 2) == 4
        assert count_nks_zero_patterns(2, 1, 4, 2) == 1
        assert count_nks_zero_patterns(2, 2, 2, 2) == 2

    def test_frozen_full_enumeration(self, frozen):
        for key, rows in frozen["census"].items():
            n, q = map(int, key.split(","))
            assert nks_census(n, q) == {(k, s): c for k, s, c in rows}

    def test_limit(self):
        with pytest.raises(InstanceTooLarge):
            nks_census(5, 3)

    def test_records(self):
        recs = census_records(2, 2)
        assert len(recs) == 2 * 5
        one = next(r for r in recs if (r["k"], r["s"]) == (1, 1))
        assert one["count"] == 4 and one["q"] == 2
        assert one["log_bound"] == pytest.approx(lemma24_bound(2, 1, 1))


class TestTuran:
    def test_examples(self):
        assert turan_min_nonzeros(4, 4) == 1
        assert turan_min_nonzeros(4, 1) == 4
        assert turan_min_nonzeros(10, 2) == Fraction(25, 2)
        with pytest.raises(InputError):
            turan_min_nonzeros(4, 0)

    @given(st.integers(1, 6), st.integers(0, 2**36))
    @settings(max_examples=80)
    def test_unit_diagonal_sparsity(self, n, bits):
        rows = [[1 if i == j else (bits >> (i * n + j)) & 1 for j in range(n)] for i in range(n)]
        M = Matrix(GF(2), rows)
        assert M.nonzeros() >= turan_min_nonzeros(n, mat_rank(M))
