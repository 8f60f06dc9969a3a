"""The explicit avoidance sets: the k-parameter construction and the density-1/18 paired sets."""

from __future__ import annotations

import numpy as np

from .analytic import q_of
from .sets import IntegerSet
from .sieve import MAX_BOUND, SizingError, nth_prime

__all__ = ["q_of", "build_A", "build_paired", "paired_residues", "residues_of_A"]


def _a_period_flags(k: int, length: int) -> np.ndarray:
    """Membership of 0..length-1, without the n = 0 convention applied."""
    q = q_of(k)
    n = np.arange(length, dtype=np.int64)
    # gcd(n, q) is non-squarefree iff p^2 | n for some p among p_2..p_k
    sq_div = np.zeros(length, dtype=bool)
    for i in range(2, k + 1):
        sq_div |= n % (nth_prime(i) ** 2) == 0
    return ((n % 4 == 0) & sq_div) | (n % q == 0)


def build_A(k: int, N: int, allow_k2: bool = False) -> IntegerSet:
    """{n <= N : 4 | n and gcd(n, q) not squarefree} ∪ {n <= N : q | n}, q = prod_{i=2}^k p_i^2.

    k = 2 is refused unless ``allow_k2``: then q = 9 and multiples of 100
    drop out of the 4 | n part, which breaks the covering arguments.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k == 2 and not allow_k2:
        raise ValueError("k = 2 gives q = 9, so multiples of 100 are missing; pass allow_k2=True to build anyway")
    if N < 1 or N > MAX_BOUND:
        raise SizingError(f"bound {N} outside [1, {MAX_BOUND}]")
    period = 4 * q_of(k)
    if period > N + 1:
        flags = _a_period_flags(k, N + 1)
    else:
        tile = _a_period_flags(k, period)
        flags = np.resize(tile, N + 1)
    flags[0] = False
    return IntegerSet(N, flags)


def residues_of_A(k: int) -> tuple[int, ...]:
    """Residues mod 4q occupied by the construction (it is periodic mod 4q)."""
    period = 4 * q_of(k)
    if period > 10**8:
        raise SizingError(f"period {period} too large to tabulate")
    return tuple(np.flatnonzero(_a_period_flags(k, period)).tolist())


def paired_residues(a: int) -> tuple[int, int]:
    """(r0, r2) mod 36 with r0 = 0 (4), r0 = -a (9) and r2 = 2 (4), r2 = a (9)."""
    if not 1 <= a <= 8:
        raise ValueError(f"a must be in 1..8, got {a}")
    r0 = next(r for r in range(0, 36, 4) if r % 9 == (-a) % 9)
    r2 = next(r for r in range(2, 36, 4) if r % 9 == a)
    return r0, r2


def build_paired(a: int, N: int) -> IntegerSet:
    """Even n <= N with n = 2 (4) <=> n = a (9) and n = 0 (4) <=> n = -a (9)."""
    r0, r2 = paired_residues(a)
    if N < 1 or N > MAX_BOUND:
        raise SizingError(f"bound {N} outside [1, {MAX_BOUND}]")
    flags = np.zeros(N + 1, dtype=bool)
    flags[r0::36] = True
    flags[r2::36] = True
    flags[0] = False
    return IntegerSet(N, flags)
