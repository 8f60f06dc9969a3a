import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqfree_sumsets.sieve import (
    SizingError,
    SquarefreeTable,
    build_squarefree_table,
    count_squarefree_in_class,
    is_squarefree,
    nth_prime,
    primes_up_to,
)

from conftest import mobius_count, trial_squarefree


def test_small_table_nonmembers():
    t = build_squarefree_table(12)
    assert [n for n in range(13) if not t.flags[n]] == [0, 4, 8, 9, 12]


@pytest.mark.parametrize("N, expected", [(100, 61), (10**5, 60794), (10**6, 607926)])
def test_counts_match_mobius_oracle(N, expected):
    assert mobius_count(N) == expected
    assert build_squarefree_table(N).count == expected


def test_count_near_main_term():
    t = build_squarefree_table(10**6)
    assert abs(t.count - 6 / math.pi**2 * 10**6) < 200


@pytest.mark.parametrize("n, expected", [(30, True), (18, False), (0, False), (1, True)])
def test_is_squarefree_examples(n, expected):
    assert is_squarefree(build_squarefree_table(100), n) is expected


def test_is_squarefree_range_error():
    t = build_squarefree_table(10)
    with pytest.raises(IndexError):
        is_squarefree(t, 11)
    with pytest.raises(IndexError):
        is_squarefree(t, -1)


@pytest.mark.parametrize("N", [0, -5])
def test_build_rejects_bad_bound(N):
    with pytest.raises(SizingError):
        build_squarefree_table(N)


def test_build_rejects_over_budget():
    with pytest.raises(SizingError):
        build_squarefree_table(10**6, max_bound=10**5)


def test_oracle_equivalence_1e5(table_1e5):
    expected = np.array([trial_squarefree(n) for n in range(10**5 + 1)])
    assert np.array_equal(table_1e5.flags, expected)


def test_segmentation_invariance():
    a = build_squarefree_table(300_000, segment=1 << 10)
    b = build_squarefree_table(300_000, segment=1 << 20)
    c = build_squarefree_table(300_000, segment=1 << 12, threads=4)
    assert a == b == c
    assert a.packed() == c.packed()


def test_class_counts():
    t = build_squarefree_table(10**6)
    assert count_squarefree_in_class(t, 0, 4, 10**6) == 0
    # class 1 mod 36, counted by trial division: 25320
    c = count_squarefree_in_class(t, 1, 36, 10**6)
    assert c == 25320
    assert abs(c / (10**6 / 36) - 9 / math.pi**2) < 0.01
    assert count_squarefree_in_class(t, 30, 36, 10**4) > 0


@pytest.mark.parametrize("a, m", [(36, 36), (-1, 4), (0, 0)])
def test_class_count_parameter_errors(a, m):
    t = build_squarefree_table(100)
    with pytest.raises(ValueError):
        count_squarefree_in_class(t, a, m, 100)


@settings(max_examples=40, deadline=None)
@given(m=st.integers(1, 200), N=st.integers(1, 20_000))
def test_class_count_additivity(m, N):
    t = build_squarefree_table(20_000)
    total = sum(count_squarefree_in_class(t, a, m, N) for a in range(m))
    assert total == int(t.flags[: N + 1].sum())


def test_packed_roundtrip_lsb_first():
    t = build_squarefree_table(20)
    raw = t.packed()
    assert len(raw) == 3
    # byte 0 bit i encodes integer i: squarefree among 0..7 are 1,2,3,5,6,7
    assert raw[0] == 0b11101110
    assert SquarefreeTable.from_packed(20, raw) == t


def test_table_is_read_only():
    t = build_squarefree_table(50)
    with pytest.raises(ValueError):
        t.flags[4] = True


def test_primes():
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [nth_prime(i) for i in (1, 2, 3, 4, 25)] == [2, 3, 5, 7, 97]
