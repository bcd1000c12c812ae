from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import D_TABLE_K3, T_TABLE_K3, naive_enumerate, naive_stats
from kchord import (
    CountTable,
    d_table_kp1,
    d_table_kp2,
    fuss_catalan,
    noncrossing_table,
    total_diagrams,
)
from kchord.counting import count_exact_short, narayana
from kchord.tables import balls_in_bins_coeff, kp2_coefficient


class TestCountTable:
    def test_value_and_row_sum(self):
        t = d_table_kp2(3, 4)
        assert t.value(2, 1) == 2
        assert t.value(2, 9) == 0
        with pytest.raises(IndexError):
            t.value(9, 0)
        assert t.row_sum(3) == total_diagrams(3, 3)

    def test_fields(self):
        t = noncrossing_table(2, 3)
        assert t.k == 2 and t.kind == "noncrossing_short"
        assert isinstance(t.rows, tuple)


class TestShortChordTables:
    def test_kp1_frozen_k3(self):
        t = d_table_kp1(3, 6)
        for n, row in D_TABLE_K3.items():
            assert t.rows[n] == row

    def test_kp2_frozen_k3(self):
        t = d_table_kp2(3, 6)
        for n, row in D_TABLE_K3.items():
            assert t.rows[n] == row

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_all_routes_agree(self, k):
        n_max = 10
        t1 = d_table_kp1(k, n_max)
        t2 = d_table_kp2(k, n_max)
        for n in range(n_max + 1):
            closed = tuple(count_exact_short(k, n, s) for s in range(n + 1))
            assert t1.rows[n] == closed
            assert t2.rows[n] == closed

    @given(st.integers(2, 6), st.integers(0, 9))
    @settings(max_examples=40)
    def test_row_sums(self, k, n):
        assert d_table_kp2(k, n).row_sum(n) == total_diagrams(k, n)

    def test_k2_classic_recurrence(self):
        # for pairs the append recurrence collapses to
        # d(n+1, s) = d(n, s-1) + (2n - s) d(n, s) + (s + 1) d(n, s + 1)
        t = d_table_kp2(2, 9)
        for n in range(9):
            for s in range(n + 2):
                def at(j, row=t.rows[n]):
                    return row[j] if 0 <= j < len(row) else 0

                want = at(s - 1) + (2 * n - s) * at(s) + (s + 1) * at(s + 1)
                assert t.rows[n + 1][s] == want


class TestKp2Coefficients:
    def test_k3_polynomials(self):
        # destroying one short chord: (l+1)(6n - 4l + 1); two: 2(l+1)(l+2)
        for n in range(2, 8):
            for ell in range(n):
                assert kp2_coefficient(n, ell, 1, 3) == (ell + 1) * (6 * n - 4 * ell + 1)
                if ell + 2 <= n:
                    assert kp2_coefficient(n, ell, 2, 3) == 2 * (ell + 1) * (ell + 2)

    def test_k2_polynomial(self):
        for n in range(1, 8):
            for ell in range(n):
                assert kp2_coefficient(n, ell, 1, 2) == ell + 1

    def test_balls_in_bins_small(self):
        # one run destroyed (p=1): [x^j] ((1-x)^-(k-1) - 1) scaled by l+1
        assert balls_in_bins_coeff(1, 1, 0, 3) == 2
        assert balls_in_bins_coeff(2, 1, 0, 3) == 3
        assert balls_in_bins_coeff(0, 1, 5, 3) == 0


class TestNoncrossingTable:
    def test_frozen_k3(self):
        t = noncrossing_table(3, 7)
        for m, row in T_TABLE_K3.items():
            assert t.rows[m][1:] == row
            assert t.rows[m][0] == 0

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_row_sums_fuss_catalan(self, k):
        t = noncrossing_table(k, 12)
        for m in range(13):
            assert t.row_sum(m) == fuss_catalan(k, m)

    def test_k2_is_narayana(self):
        # row 0 is the empty diagram, outside the classical triangle
        t = noncrossing_table(2, 10)
        for m in range(1, 11):
            for s in range(m + 1):
                assert t.rows[m][s] == narayana(m, s)

    @pytest.mark.parametrize("k,m_cap", [(2, 5), (3, 4), (4, 3)])
    def test_matches_enumeration(self, k, m_cap):
        t = noncrossing_table(k, m_cap)
        for m in range(m_cap + 1):
            want = [0] * (m + 1)
            for w in naive_enumerate(k, m):
                s, _q, nc, _xp = naive_stats(w)
                if nc == m:
                    want[s] += 1
            assert list(t.rows[m]) == want


class TestFussCatalan:
    def test_small_values(self):
        assert [fuss_catalan(3, m) for m in range(6)] == [1, 1, 3, 12, 55, 273]
        assert [fuss_catalan(2, m) for m in range(6)] == [1, 1, 2, 5, 14, 42]

    @given(st.integers(2, 6), st.integers(0, 25))
    @settings(max_examples=60)
    def test_closed_form(self, k, m):
        assert fuss_catalan(k, m) == comb(k * m, m) // ((k - 1) * m + 1)

    def test_recursion(self):
        # the k-fold convolution of the sequence shifts it by one
        k = 4
        seq = [fuss_catalan(k, m) for m in range(10)]
        for m in range(9):
            conv = 0
            for parts in _compositions(m, k):
                prod = 1
                for p in parts:
                    prod *= seq[p]
                conv += prod
            assert conv == seq[m + 1]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
