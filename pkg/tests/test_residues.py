
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqfree_sumsets.construct import build_A, build_paired
from sqfree_sumsets.report import INCONCLUSIVE, PASS
from sqfree_sumsets.residues import (
    PAIRED,
    SUBSET_4N,
    SUBSET_4N2,
    SUBSET_9N,
    ResidueProfile,
    StructureClass,
    check_lemma1,
    classify_structure,
    compute_Q,
    compute_U,
    compute_V,
    profile,
)
from sqfree_sumsets.sets import from_members


Q36 = {0, 4, 8, 9, 12, 16, 18, 20, 24, 27, 28, 32}


def test_Q_examples():
    assert compute_Q(36) == Q36
    assert compute_Q(4) == {0}
    assert compute_Q(2) == set()


def test_Q36_has_two_odd_classes():
    Q = compute_Q(36)
    assert len(Q) == 12
    assert sorted(a for a in Q if a % 2) == [9, 27]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 8, 9, 12, 18, 25, 36, 50, 72, 100])
def test_Q_against_scan_oracle(m, table_1e5):
    # a class avoids squarefree numbers iff none of its members up to 10^5 is squarefree
    scanned = {a for a in range(m) if not any(table_1e5.flags[n] for n in range(a or m, 10**5 + 1, m))}
    assert compute_Q(m) == scanned


def test_Q_witnesses_exist_up_to_1000(table_1e6):
    for m in range(1, 1001):
        compute_Q(m, table=table_1e6)


def _profile_with(densities_numerators):
    return ResidueProfile(36, tuple(densities_numerators), 36)


def test_U_V_examples():
    zero = _profile_with([0] * 36)
    assert compute_U(zero, 0.01) == set() and compute_V(zero) == set()
    P = profile(build_paired(1, 36_000), 36)
    assert compute_U(P, 0.01) == {8, 10}
    assert compute_V(P) == {8, 10}
    assert P.delta(8) == P.delta(10) == 1


def test_profile_of_construction():
    A = build_A(3, 900 * 40)
    P = profile(A, 36)
    V = compute_V(P)
    assert {0, 9} <= V
    assert V == Q36
    # every multiple of 36 has 9 | gcd(n, 225), so class 0 is completely filled
    assert P.delta(0) == 1
    assert compute_U(P, 0.01) == {0}
    assert all(P.delta(a) == 0 for a in range(1, 36, 2) if a not in (9, 27))


def test_profile_multiples_of_four():
    A = from_members(range(4, 10_001, 4), 10_000)
    P = profile(A, 4)
    assert P.delta(0) == 1 and P.delta(1) == P.delta(2) == P.delta(3) == 0


@settings(max_examples=40, deadline=None)
@given(members=st.sets(st.integers(1, 5000), max_size=300), m=st.integers(1, 60), window=st.integers(1, 5000))
def test_profile_sums_to_density(members, m, window):
    from sqfree_sumsets.sets import density

    A = from_members(members, 5000)
    P = profile(A, m, window)
    assert sum(P.densities) / m == density(A, window) == P.overall
    assert all(0 <= d <= m for d in P.densities)


def test_lemma1_examples(table_1e5):
    c = check_lemma1(build_paired(1, 10**5 // 2), 0.01, table_1e5)
    assert c.status == PASS and c.params["U"] == [8, 10]
    c = check_lemma1(from_members(range(4, 50_001, 4), 50_000), 0.01, table_1e5)
    assert c.status == PASS
    assert set(c.params["U"]) == set(range(0, 36, 4)) == set(c.params["V"])
    c = check_lemma1(from_members(range(1, 1001), 1000), 0.01, table_1e5)
    assert c.status == INCONCLUSIVE and c.witness == 2


def test_lemma1_on_construction(table_1e5):
    assert check_lemma1(build_A(3, 10**5 // 2), 0.01, table_1e5).status == PASS


def test_classify_examples():
    assert classify_structure(from_members([4, 8, 400], 400)) == StructureClass(SUBSET_4N)
    assert classify_structure(from_members([9, 18, 27], 30)) == StructureClass(SUBSET_9N)
    assert classify_structure(from_members([2, 6, 10], 30)) == StructureClass(SUBSET_4N2)
    assert classify_structure(from_members([36], 36)).tag == SUBSET_4N
    assert classify_structure(from_members([1, 2], 3)).tag == "Other"
    with pytest.raises(ValueError):
        classify_structure(from_members([], 3))


@pytest.mark.parametrize("a", range(1, 9))
def test_classify_paired(a):
    assert classify_structure(build_paired(a, 3600)) == StructureClass(PAIRED, a)


@settings(max_examples=60, deadline=None)
@given(a=st.integers(1, 8), data=st.data())
def test_classify_subsets_of_paired(a, data):
    full = build_paired(a, 2000).members().tolist()
    sub = data.draw(st.lists(st.sampled_from(full), min_size=1, unique=True))
    tag = classify_structure(from_members(sub, 2000))
    assert tag in {StructureClass(PAIRED, a), StructureClass(SUBSET_4N), StructureClass(SUBSET_4N2), StructureClass(SUBSET_9N)}
    members = set(sub)
    if any(n % 4 == 0 for n in members) and any(n % 4 == 2 for n in members):
        assert tag == StructureClass(PAIRED, a)
