"""Residue-class analysis modulo 36: Q, local densities, U, V and the structure classifier."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import report
from .report import Claim
from .sets import IntegerSet, sumset
from .sieve import SquarefreeTable, is_squarefree_trial

NINE_OVER_PI2 = 9 / math.pi**2

# Below this window Lemma-1 violations are reported inconclusive, not failed.
LEMMA1_MIN_WINDOW = 36_000


class ConsistencyError(RuntimeError):
    """gcd criterion and witness scan disagree about a residue class."""


def _squarefree_int(n: int) -> bool:
    if n == 0:
        return False
    for p in range(2, math.isqrt(n) + 1):
        if n % (p * p) == 0:
            return False
    return True


def compute_Q(m: int, witness_bound: int | None = None, table: SquarefreeTable | None = None) -> frozenset[int]:
    """Residues mod m whose class contains no squarefree integer.

    A class a contains a squarefree integer iff gcd(a, m) is squarefree
    (gcd(0, m) = m). Every class claimed to contain one is checked by
    locating an explicit witness; disagreement raises ConsistencyError.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if witness_bound is None:
        witness_bound = 100 * m * m
    if table is None:
        return _compute_Q_cached(m, witness_bound)
    return _compute_Q(m, witness_bound, table)


@lru_cache(maxsize=64)
def _compute_Q_cached(m: int, witness_bound: int) -> frozenset[int]:
    return _compute_Q(m, witness_bound, None)


def _compute_Q(m: int, witness_bound: int, table: SquarefreeTable | None) -> frozenset[int]:
    q = set()
    for a in range(m):
        if not _squarefree_int(math.gcd(a, m)):
            q.add(a)
            continue
        n = a if a > 0 else m
        while True:
            if n > witness_bound:
                raise ConsistencyError(f"no squarefree witness = {a} mod {m} below {witness_bound}")
            if table is not None and n <= table.bound:
                if table.flags[n]:
                    break
            elif is_squarefree_trial(n):
                break
            n += m
    return frozenset(q)


def q_mask(m: int) -> np.ndarray:
    """Boolean lookup array: mask[r] iff r in Q(m)."""
    return _q_mask(m).copy()


@lru_cache(maxsize=64)
def _q_mask(m: int) -> np.ndarray:
    mask = np.zeros(m, dtype=bool)
    mask[sorted(compute_Q(m))] = True
    mask.setflags(write=False)
    return mask


@dataclass(frozen=True)
class ResidueProfile:
    """Class counts of A ∩ [1, window] modulo m.

    Local densities are exact rationals m * count / window, so a class
    that A fills completely has density close to 1.
    """

    modulus: int
    counts: tuple[int, ...]
    window: int

    def delta(self, a: int) -> Fraction:
        return Fraction(self.modulus * self.counts[a], self.window)

    @property
    def densities(self) -> list[Fraction]:
        return [self.delta(a) for a in range(self.modulus)]

    @property
    def overall(self) -> Fraction:
        return Fraction(sum(self.counts), self.window)


def profile(A: IntegerSet, m: int, window: int | None = None) -> ResidueProfile:
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    window = A.bound if window is None else window
    if not 1 <= window <= A.bound:
        raise ValueError(f"window {window} outside [1, {A.bound}]")
    members = A.members()
    members = members[(members >= 1) & (members <= window)]
    counts = np.bincount(members % m, minlength=m)
    return ResidueProfile(m, tuple(int(c) for c in counts), window)


def u_threshold(epsilon: float) -> float:
    return 1 - NINE_OVER_PI2 + epsilon / 100


def compute_U(prof: ResidueProfile, epsilon: float) -> frozenset[int]:
    """Classes whose local density exceeds 1 - 9/pi^2 + epsilon/100."""
    if prof.modulus != 36:
        raise ValueError("U is defined for modulus 36 profiles")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    t = u_threshold(epsilon)
    return frozenset(a for a in range(36) if float(prof.delta(a)) > t)


def compute_V(prof: ResidueProfile) -> frozenset[int]:
    return frozenset(a for a, c in enumerate(prof.counts) if c > 0)


def least_squarefree_sum(A: IntegerSet, table: SquarefreeTable, N: int | None = None) -> int | None:
    N = min(A.bound * 2, table.bound) if N is None else N
    hits = np.flatnonzero(sumset(A, A, N).flags & table.flags[: N + 1])
    return int(hits[0]) if hits.size else None


@report.timed
def check_lemma1(
    A: IntegerSet,
    epsilon: float,
    table: SquarefreeTable,
    min_window: int = LEMMA1_MIN_WINDOW,
) -> Claim:
    """U + V ⊆ Q(36) for the mod-36 profile of A."""
    N = min(A.bound, table.bound)
    params = {"bound": A.bound, "epsilon": epsilon}
    bad = least_squarefree_sum(A, table, N)
    if bad is not None:
        return Claim("lemma1", report.INCONCLUSIVE, params, witness=bad,
                     note="precondition violated: A+A contains a squarefree integer")
    prof = profile(A, 36, A.bound)
    U, V = compute_U(prof, epsilon), compute_V(prof)
    Q = compute_Q(36)
    params |= {"U": sorted(U), "V": sorted(V)}
    for u in sorted(U):
        for v in sorted(V):
            if (u + v) % 36 not in Q:
                status = report.INCONCLUSIVE if A.bound < min_window else report.FAIL
                return Claim("lemma1", status, params, witness=[u, v],
                             note="U+V not inside Q" + (" (window below minimum)" if status != report.FAIL else ""))
    return Claim("lemma1", report.PASS, params)


SUBSET_4N = "Subset4N"
SUBSET_4N2 = "Subset4N2"
SUBSET_9N = "Subset9N"
PAIRED = "PairedMod36"
OTHER = "Other"


@dataclass(frozen=True)
class StructureClass:
    tag: str
    a: int | None = None

    def __str__(self) -> str:
        return f"{self.tag}({self.a})" if self.a is not None else self.tag


def paired_holds(members: np.ndarray, a: int) -> bool:
    """Every member is even and n = 2 (4) <=> n = a (9), n = 0 (4) <=> n = -a (9)."""
    if (members % 2).any():
        return False
    two4 = members % 4 == 2
    zero4 = ~two4
    r9 = members % 9
    return bool(np.array_equal(two4, r9 == a % 9) and np.array_equal(zero4, r9 == (-a) % 9))


def classify_structure(A: IntegerSet) -> StructureClass:
    """First matching tag in order Subset4N, Subset4N2, Subset9N, PairedMod36(a), Other."""
    m = A.members()
    if m.size == 0:
        raise ValueError("cannot classify an empty set")
    if not (m % 4).any():
        return StructureClass(SUBSET_4N)
    if (m % 4 == 2).all():
        return StructureClass(SUBSET_4N2)
    if not (m % 9).any():
        return StructureClass(SUBSET_9N)
    for a in range(1, 9):
        if paired_holds(m, a):
            return StructureClass(PAIRED, a)
    return StructureClass(OTHER)
