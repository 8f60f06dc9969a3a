from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqfree_sumsets.construct import build_A, build_paired
from sqfree_sumsets.sets import (
    IntegerSet,
    density,
    empty,
    from_members,
    h_fold_sumset,
    subset_sums,
    sumset,
)


def brute_sumset(A, B, N):
    return {a + b for a in A for b in B if a + b <= N}


def brute_hfold(A, h, N):
    acc = set(A)
    for _ in range(h - 1):
        acc = brute_sumset(acc, A, N)
    return {x for x in acc if x <= N}


def brute_subset_sums(A, B):
    out = set()
    for r in range(1, len(A) + 1):
        for combo in combinations(A, r):
            s = sum(combo)
            if s <= B:
                out.add(s)
    return out


small_sets = st.sets(st.integers(0, 120), max_size=40)
# big enough to exercise the FFT kernel (> 64 members)
dense_sets = st.sets(st.integers(0, 3000), min_size=70, max_size=400)


def test_from_members():
    A = from_members([1, 2, 2], 4)
    assert list(A) == [1, 2] and A.cardinality == 2
    assert from_members([], 10).cardinality == 0
    assert list(from_members([764], 764)) == [764]
    with pytest.raises(IndexError):
        from_members([11], 10)


def test_sumset_examples():
    A = from_members([1, 2], 10)
    assert list(sumset(A, A, 10)) == [2, 3, 4]
    assert sumset(A, empty(10), 10).cardinality == 0


def test_h_fold_examples():
    A = from_members([0, 1], 3)
    assert list(h_fold_sumset(A, 3, 3)) == [0, 1, 2, 3]
    B = from_members([3, 5, 9], 50)
    assert h_fold_sumset(B, 1, 50) == B
    with pytest.raises(ValueError):
        h_fold_sumset(B, 0, 50)


def test_h_fold_paired_covers_class_30():
    S3 = h_fold_sumset(build_paired(1, 10**4), 3, 10**4)
    cls = np.arange(30, 10**4 + 1, 36)
    assert S3.flags[cls].all()


def test_subset_sums_examples():
    assert list(subset_sums(from_members([1, 2, 4], 7), 7)) == [1, 2, 3, 4, 5, 6, 7]
    assert list(subset_sums(from_members([36, 100], 300), 300)) == [36, 100, 136]
    # empty sum excluded
    assert 0 not in subset_sums(from_members([5], 10), 10)
    assert 0 in subset_sums(from_members([0, 5], 10), 10)


def test_subset_sums_of_paired_set():
    A = build_paired(1, 1000)
    S = subset_sums(A, 10**4)
    assert not (S.members() % 2).any()
    assert density(S, 10**4) <= Fraction(1, 2)


def test_density_examples():
    k = 50
    assert density(from_members(range(2, 2 * k + 1, 2), 2 * k), 2 * k) == Fraction(1, 2)
    assert density(build_A(3, 900 * 1000), 900 * 1000) == Fraction(36, 900)
    assert density(build_paired(1, 36 * 1000), 36 * 1000) == Fraction(1, 18)
    with pytest.raises(ValueError):
        density(from_members([1], 5), 0)


@settings(max_examples=60, deadline=None)
@given(A=small_sets, B=small_sets, N=st.integers(0, 300))
def test_sumset_matches_brute_force(A, B, N):
    got = sumset(from_members(A, 120), from_members(B, 120), N)
    assert set(got) == brute_sumset(A, B, N)


@settings(max_examples=25, deadline=None)
@given(A=dense_sets, B=dense_sets, N=st.integers(1000, 7000))
def test_fft_kernel_matches_brute_force(A, B, N):
    got = sumset(from_members(A, 3000), from_members(B, 3000), N)
    assert set(got) == brute_sumset(A, B, N)


@settings(max_examples=20, deadline=None)
@given(A=dense_sets)
def test_fft_kernel_thread_invariant(A):
    X = from_members(A, 3000)
    assert sumset(X, X, 6000, threads=1) == sumset(X, X, 6000, threads=4)


@settings(max_examples=40, deadline=None)
@given(A=small_sets, B=small_sets)
def test_sumset_commutative(A, B):
    X, Y = from_members(A, 120), from_members(B, 120)
    assert sumset(X, Y, 240) == sumset(Y, X, 240)


@settings(max_examples=40, deadline=None)
@given(A=small_sets, extra=small_sets, B=small_sets)
def test_sumset_monotone(A, extra, B):
    X, X2, Y = from_members(A, 120), from_members(A | extra, 120), from_members(B, 120)
    assert sumset(X, Y, 240).issubset(sumset(X2, Y, 240))


@settings(max_examples=40, deadline=None)
@given(A=st.sets(st.integers(0, 40), min_size=1, max_size=12), h1=st.integers(1, 3), h2=st.integers(1, 3))
def test_h_fold_additivity(A, h1, h2):
    N = 200
    X = from_members(A, 40)
    lhs = h_fold_sumset(X, h1 + h2, N)
    rhs = sumset(h_fold_sumset(X, h1, N), h_fold_sumset(X, h2, N), N)
    assert lhs == rhs
    assert set(lhs) == brute_hfold(A, h1 + h2, N)


@settings(max_examples=60, deadline=None)
@given(A=st.sets(st.integers(0, 200), max_size=15), B=st.integers(1, 1500))
def test_subset_sums_match_brute_force(A, B):
    assert set(subset_sums(from_members(A, 200), B)) == brute_subset_sums(sorted(A), B)


def test_integer_set_invariants():
    A = from_members([0, 3, 7], 10)
    assert A.cardinality == int(A.flags.sum())
    assert isinstance(A, IntegerSet) and 7 in A and 11 not in A
    with pytest.raises(ValueError):
        A.flags[1] = True
