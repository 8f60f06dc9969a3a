"""Dense integer sets on [0, N] and their additive operations.

All operations take an explicit output bound; sums above it are dropped.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .sieve import MAX_BOUND, SizingError

# Below this many members the sumset is done by shift-or instead of FFT.
_SHIFT_OR_LIMIT = 64
_MAX_BLOCK = 1 << 20


@dataclass(frozen=True, eq=False)
class IntegerSet:
    bound: int
    flags: np.ndarray = field(repr=False)
    cardinality: int = field(init=False)

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise SizingError(f"negative bound {self.bound}")
        if self.flags.shape != (self.bound + 1,) or self.flags.dtype != bool:
            raise ValueError("flags must be a bool array of length bound + 1")
        self.flags.setflags(write=False)
        object.__setattr__(self, "cardinality", int(np.count_nonzero(self.flags)))

    def __len__(self) -> int:
        return self.cardinality

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.bound and bool(self.flags[n])

    def __iter__(self):
        return iter(self.members().tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerSet):
            return NotImplemented
        return self.bound == other.bound and np.array_equal(self.flags, other.flags)

    def __repr__(self) -> str:
        head = self.members()[:8].tolist()
        more = ", ..." if self.cardinality > 8 else ""
        return f"IntegerSet(bound={self.bound}, |A|={self.cardinality}, {head}{more})"

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    def truncated(self, n: int) -> IntegerSet:
        n = min(n, self.bound)
        return IntegerSet(n, self.flags[: n + 1].copy())

    def issubset(self, other: IntegerSet) -> bool:
        n = min(self.bound, other.bound)
        if self.flags[n + 1 :].any():
            return False
        return not (self.flags[: n + 1] & ~other.flags[: n + 1]).any()


def from_members(members: Iterable[int], N: int) -> IntegerSet:
    if N < 0 or N > MAX_BOUND:
        raise SizingError(f"bound {N} outside [0, {MAX_BOUND}]")
    flags = np.zeros(N + 1, dtype=bool)
    idx = np.fromiter((int(x) for x in members), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() > N):
        bad = idx[(idx < 0) | (idx > N)][0]
        raise IndexError(f"member {bad} outside [0, {N}]")
    flags[idx] = True
    return IntegerSet(N, flags)


def resized(A: IntegerSet, N: int) -> IntegerSet:
    """A ∩ [0, N] re-homed on the universe [0, N]."""
    if N == A.bound:
        return A
    flags = np.zeros(N + 1, dtype=bool)
    n = min(N, A.bound)
    flags[: n + 1] = A.flags[: n + 1]
    return IntegerSet(N, flags)


def empty(N: int) -> IntegerSet:
    return IntegerSet(N, np.zeros(N + 1, dtype=bool))


def _shift_or(dense: np.ndarray, shifts: np.ndarray, N: int) -> np.ndarray:
    out = np.zeros(N + 1, dtype=bool)
    for s in shifts.tolist():
        if s > N:
            break
        src = dense[: N + 1 - s]
        out[s : s + len(src)] |= src
    return out


def _fft_sumset(a: np.ndarray, b: np.ndarray, N: int, threads: int) -> np.ndarray:
    """Blocked FFT convolution of two 0/1 vectors, thresholded back to bits.

    Each pair of length-L blocks is convolved separately so memory stays
    O(L) per pair; block pairs whose offset already exceeds N are skipped.
    """
    n_out = N + 1
    L = min(_MAX_BLOCK, 1 << max(4, (n_out - 1).bit_length()))
    nfft = 2 * L

    def blocks(x: np.ndarray) -> dict[int, np.ndarray]:
        x = x[:n_out]
        res = {}
        for i in range(0, (len(x) + L - 1) // L):
            chunk = x[i * L : (i + 1) * L]
            if chunk.any():
                res[i] = np.fft.rfft(chunk.astype(np.float64), nfft)
        return res

    fa = blocks(a)
    same = a is b
    fb = fa if same else blocks(b)
    pairs = [
        (i, j)
        for i in sorted(fa)
        for j in sorted(fb)
        if (i + j) * L <= N and (not same or i <= j)
    ]

    def conv(pair: tuple[int, int]) -> tuple[int, np.ndarray]:
        i, j = pair
        c = np.fft.irfft(fa[i] * fb[j], nfft)
        return (i + j) * L, c > 0.5

    out = np.zeros(n_out, dtype=bool)
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(conv, pairs))
    else:
        results = map(conv, pairs)
    # OR-merge is order independent, so thread scheduling cannot change the output.
    for off, hit in results:
        span = min(len(hit), n_out - off)
        out[off : off + span] |= hit[:span]
    return out


def sumset(A: IntegerSet, B: IntegerSet, N: int, threads: int = 1) -> IntegerSet:
    """{a + b : a in A, b in B, a + b <= N}, with a + a included when A is B."""
    if N < 0 or N > MAX_BOUND:
        raise SizingError(f"bound {N} outside [0, {MAX_BOUND}]")
    if A.cardinality == 0 or B.cardinality == 0:
        return empty(N)
    ra = resized(A, N)
    rb = ra if A is B else resized(B, N)
    small, dense = (ra, rb) if ra.cardinality <= rb.cardinality else (rb, ra)
    if small.cardinality <= _SHIFT_OR_LIMIT:
        return IntegerSet(N, _shift_or(dense.flags, small.members(), N))
    return IntegerSet(N, _fft_sumset(ra.flags, rb.flags, N, threads))


def h_fold_sumset(A: IntegerSet, h: int, N: int, threads: int = 1) -> IntegerSet:
    """hA truncated at N, repetition allowed."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    base = resized(A, N)
    acc = base
    for _ in range(h - 1):
        acc = sumset(acc, base, N, threads=threads)
    return acc


def subset_sums(A: IntegerSet, B: int) -> IntegerSet:
    """Sums of nonempty subsets of A (each element at most once), truncated at B.

    Incremental shift-or on a Python int used as a bitset.
    """
    if B < 1:
        raise ValueError(f"bound must be >= 1, got {B}")
    mask = (1 << (B + 1)) - 1
    sums = 0
    for a in A.members().tolist():
        if a > B:
            break
        sums |= ((sums << a) | (1 << a)) & mask
    raw = sums.to_bytes((B + 8) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return IntegerSet(B, bits[: B + 1].astype(bool))


def density(A: IntegerSet, window: int) -> Fraction:
    """|A ∩ [1, window]| / window, exact."""
    if window < 1:
        raise ValueError("window must be >= 1")
    if window > A.bound:
        raise IndexError(f"window {window} exceeds set bound {A.bound}")
    return Fraction(int(np.count_nonzero(A.flags[1 : window + 1])), window)
