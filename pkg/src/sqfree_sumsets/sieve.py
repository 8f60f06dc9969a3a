"""Squarefree indicator tables built by a segmented sieve over prime squares."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Largest bound accepted by default: one byte per integer in memory.
MAX_BOUND = 2_000_000_000
DEFAULT_SEGMENT = 1 << 20


class SizingError(ValueError):
    """Requested bound is zero, negative, or beyond the memory budget."""


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    out = np.flatnonzero(flags).astype(np.int64)
    out.setflags(write=False)
    return out


def nth_prime(i: int) -> int:
    """The i-th prime with p_1 = 2."""
    if i < 1:
        raise ValueError(f"prime index must be >= 1, got {i}")
    limit = 16
    while True:
        ps = primes_up_to(limit)
        if len(ps) >= i:
            return int(ps[i - 1])
        limit *= 2


def is_squarefree_trial(n: int) -> bool:
    """Trial-division squarefreeness; 0 is not squarefree."""
    if n == 0:
        return False
    n = abs(n)
    if n % 4 == 0:
        return False
    if n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        p += 2
    return True


@dataclass(frozen=True, eq=False)
class SquarefreeTable:
    """Membership flags for the squarefree integers in [0, bound].

    ``flags[n]`` is True iff n is squarefree; ``flags[0]`` is always False.
    The array is read-only, so a table may be shared between threads.
    """

    bound: int
    flags: np.ndarray = field(repr=False)
    count: int = field(init=False)

    def __post_init__(self) -> None:
        if self.flags.shape != (self.bound + 1,) or self.flags.dtype != bool:
            raise ValueError("flags must be a bool array of length bound + 1")
        self.flags.setflags(write=False)
        object.__setattr__(self, "count", int(np.count_nonzero(self.flags)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquarefreeTable):
            return NotImplemented
        return self.bound == other.bound and np.array_equal(self.flags, other.flags)

    def __contains__(self, n: int) -> bool:
        return is_squarefree(self, n)

    def packed(self) -> bytes:
        """Bit i of byte j encodes integer 8j + i (LSB first)."""
        return np.packbits(self.flags, bitorder="little").tobytes()

    @classmethod
    def from_packed(cls, bound: int, data: bytes) -> SquarefreeTable:
        nbytes = (bound + 1 + 7) // 8
        if len(data) != nbytes:
            raise ValueError(f"expected {nbytes} bytes for bound {bound}, got {len(data)}")
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
        return cls(bound, bits[: bound + 1].astype(bool))

    def truncated(self, n: int) -> SquarefreeTable:
        if not 1 <= n <= self.bound:
            raise SizingError(f"cannot truncate table of bound {self.bound} to {n}")
        return SquarefreeTable(n, self.flags[: n + 1].copy())


def _sieve_segment(out: np.ndarray, lo: int, hi: int, primes: np.ndarray) -> None:
    seg = out[lo:hi]
    seg[:] = True
    for p in primes:
        sq = int(p) * int(p)
        if sq >= hi:
            break
        start = -lo % sq
        seg[start::sq] = False


def build_squarefree_table(
    N: int,
    segment: int = DEFAULT_SEGMENT,
    threads: int = 1,
    max_bound: int = MAX_BOUND,
) -> SquarefreeTable:
    """Sieve out multiples of p^2 for every prime p <= sqrt(N), one segment at a time."""
    if N < 1:
        raise SizingError(f"bound must be >= 1, got {N}")
    if N > max_bound:
        raise SizingError(f"bound {N} exceeds memory budget {max_bound}")
    if segment < 1:
        raise SizingError("segment size must be positive")
    primes = primes_up_to(math.isqrt(N))
    flags = np.empty(N + 1, dtype=bool)
    spans = [(lo, min(lo + segment, N + 1)) for lo in range(0, N + 1, segment)]
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda s: _sieve_segment(flags, s[0], s[1], primes), spans))
    else:
        for lo, hi in spans:
            _sieve_segment(flags, lo, hi, primes)
    flags[0] = False
    return SquarefreeTable(N, flags)


def is_squarefree(table: SquarefreeTable, n: int) -> bool:
    if not 0 <= n <= table.bound:
        raise IndexError(f"{n} outside table range [0, {table.bound}]")
    return bool(table.flags[n])


def count_squarefree_in_class(table: SquarefreeTable, a: int, m: int, N: int) -> int:
    """Number of squarefree n <= N with n = a (mod m)."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if not 0 <= a < m:
        raise ValueError(f"residue {a} not in [0, {m})")
    if not 0 <= N <= table.bound:
        raise IndexError(f"bound {N} outside table range [0, {table.bound}]")
    return int(np.count_nonzero(table.flags[a : N + 1 : m]))
