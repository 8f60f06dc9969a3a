import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqfree_sumsets.analytic import a_density
from sqfree_sumsets.construct import build_A, build_paired, paired_residues, q_of, residues_of_A
from sqfree_sumsets.residues import PAIRED, StructureClass, classify_structure
from sqfree_sumsets.sets import density, sumset

from conftest import trial_squarefree


def _member_oracle(n, k):
    q = q_of(k)
    g = math.gcd(n, q)
    return (n % 4 == 0 and not trial_squarefree(g)) or n % q == 0


def test_A3_small_members():
    assert build_A(3, 250).members().tolist() == [36, 72, 100, 108, 144, 180, 200, 216, 225]
    A = build_A(3, 1000)
    assert 4 not in A and 225 in A and 100 in A


@pytest.mark.parametrize("k", [3, 4])
def test_membership_oracle(k):
    N = 50_000
    A = build_A(k, N)
    assert [n for n in range(1, N + 1) if _member_oracle(n, k)] == A.members().tolist()


def test_k2_gate():
    with pytest.raises(ValueError):
        build_A(2, 100)
    A = build_A(2, 1000, allow_k2=True)
    assert 36 in A and 100 not in A
    with pytest.raises(ValueError):
        build_A(1, 100)


@pytest.mark.parametrize("k", [3, 4])
def test_periodicity(k):
    period = 4 * q_of(k)
    one = build_A(k, period).cardinality
    for m in (1, 2, 3, 5):
        assert build_A(k, period * m).cardinality == m * one
    assert len(residues_of_A(k)) == one


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_avoidance(k, table_1e5):
    N = 10**5
    A = build_A(k, N)
    assert not (sumset(A, A, N).flags & table_1e5.flags).any()


@pytest.mark.parametrize("k", [3, 4])
def test_density_matches_formula(k):
    period = 4 * q_of(k)
    for m in (1, 3):
        assert density(build_A(k, period * m), period * m) == a_density(k)[1]


def test_paired_residues():
    assert paired_residues(1) == (8, 10)
    A = build_paired(1, 100)
    assert A.members().tolist()[:6] == [8, 10, 44, 46, 80, 82]
    with pytest.raises(ValueError):
        build_paired(0, 100)
    with pytest.raises(ValueError):
        build_paired(9, 100)


@pytest.mark.parametrize("a", range(1, 9))
def test_paired_structure(a, table_1e5):
    r0, r2 = paired_residues(a)
    assert r0 % 4 == 0 and r0 % 9 == (-a) % 9 and r2 % 4 == 2 and r2 % 9 == a
    A = build_paired(a, 36 * 500)
    assert A.cardinality == 1000
    assert density(A, 36 * 500) == Fraction(1, 18)
    assert classify_structure(A) == StructureClass(PAIRED, a)
    S = sumset(A, A, A.bound)
    assert not (S.flags & table_1e5.flags[: A.bound + 1]).any()


@settings(max_examples=30, deadline=None)
@given(a=st.integers(1, 8), m=st.integers(1, 200))
def test_paired_cardinality(a, m):
    assert build_paired(a, 36 * m).cardinality == 2 * m


def test_paired_sums_a1():
    S = sumset(build_paired(1, 3600), build_paired(1, 3600), 3600)
    assert set((S.members() % 36).tolist()) == {16, 18, 20}
