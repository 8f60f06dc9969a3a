"""Periodic certificates: residue sets S mod M with S + S inside the squarefree-free classes.

Exact mode enumerates maximal cliques of the compatibility graph
(r ~ s iff r + s mod M lies in Q(M); a vertex needs its self-loop 2r in Q(M)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .construct import q_of, residues_of_A
from .residues import q_mask
from .sets import IntegerSet

EXACT_LIMIT = 72
GREEDY_LIMIT = 5_000


@dataclass(frozen=True)
class PeriodicSet:
    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        res = tuple(sorted(set(int(r) for r in self.residues)))
        if res and (res[0] < 0 or res[-1] >= self.modulus):
            raise ValueError(f"residues must lie in [0, {self.modulus})")
        object.__setattr__(self, "residues", res)

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.residues), self.modulus)

    def expand(self, N: int) -> IntegerSet:
        """The induced set on [1, N]."""
        flags = np.zeros(N + 1, dtype=bool)
        for r in self.residues:
            flags[r :: self.modulus] = True
        flags[0] = False
        return IntegerSet(N, flags)

    def lift(self, modulus: int) -> PeriodicSet:
        if modulus % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {modulus}")
        step = self.modulus
        return PeriodicSet(modulus, tuple(r + j * step for r in self.residues for j in range(modulus // step)))

    def sort_key(self) -> tuple:
        return (-self.density, self.residues)


def verify_periodic(S: PeriodicSet) -> tuple[bool, tuple[int, int] | None]:
    """Check (r + s) mod M in Q(M) for all r <= s in S; return the first violating pair.

    Self-sums r + r are checked first, so a residue that is invalid on its own
    is reported as (r, r).
    """
    mask = q_mask(S.modulus)
    res = np.asarray(S.residues, dtype=np.int64)
    self_ok = mask[(2 * res) % S.modulus]
    if not self_ok.all():
        r = int(res[np.argmin(self_ok)])
        return False, (r, r)
    for i, r in enumerate(S.residues):
        ok = mask[(r + res[i:]) % S.modulus]
        if not ok.all():
            return False, (r, int(res[i + int(np.argmin(ok))]))
    return True, None


def _vertices_and_adjacency(M: int) -> tuple[list[int], list[int]]:
    mask = q_mask(M)
    verts = [r for r in range(M) if mask[(2 * r) % M]]
    index = {r: i for i, r in enumerate(verts)}
    adj = [0] * len(verts)
    for i, r in enumerate(verts):
        for s in verts:
            if s != r and mask[(r + s) % M]:
                adj[i] |= 1 << index[s]
    return verts, adj


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _degeneracy_order(adj: list[int]) -> list[int]:
    n = len(adj)
    remaining = (1 << n) - 1
    order = []
    while remaining:
        v = min(_bits(remaining), key=lambda u: ((adj[u] & remaining).bit_count(), u))
        order.append(v)
        remaining &= ~(1 << v)
    return order


def _maximal_cliques(adj: list[int]) -> Iterator[int]:
    """Bron-Kerbosch with Tomita pivoting, outer loop in degeneracy order."""

    def expand(R: int, P: int, X: int) -> Iterator[int]:
        if not P and not X:
            yield R
            return
        pivot = max(_bits(P | X), key=lambda u: (adj[u] & P).bit_count())
        for v in list(_bits(P & ~adj[pivot])):
            yield from expand(R | (1 << v), P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    n = len(adj)
    if n == 0:
        yield 0
        return
    order = _degeneracy_order(adj)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = sum(1 << u for u in order if pos[u] > pos[v])
        earlier = sum(1 << u for u in order if pos[u] < pos[v])
        yield from expand(1 << v, adj[v] & later, adj[v] & earlier)


def enumerate_maximal(M: int, exact_limit: int = EXACT_LIMIT) -> list[PeriodicSet]:
    """All inclusion-maximal valid residue sets mod M, densest first."""
    if M < 1:
        raise ValueError("modulus must be >= 1")
    if M > exact_limit:
        raise ValueError(f"modulus {M} exceeds exact_limit {exact_limit}; use max_density(mode='greedy')")
    verts, adj = _vertices_and_adjacency(M)
    out = {PeriodicSet(M, tuple(verts[i] for i in _bits(c))) for c in _maximal_cliques(adj)}
    return sorted(out, key=PeriodicSet.sort_key)


class _Conflicts:
    """Incremental conflict counts: conflicts[v] = #{s in S : (v + s) mod M not in Q}."""

    def __init__(self, M: int, members: Iterable[int]) -> None:
        self.M = M
        self.bad = ~q_mask(M)
        self.ar = np.arange(M)
        self.self_ok = ~self.bad[(2 * self.ar) % M]
        self.in_set = np.zeros(M, dtype=bool)
        self.conflicts = np.zeros(M, dtype=np.int64)
        for r in members:
            self.add(r)

    def row(self, r: int) -> np.ndarray:
        return self.bad[(self.ar + r) % self.M]

    def add(self, r: int) -> None:
        self.in_set[r] = True
        self.conflicts += self.row(r)

    def remove(self, r: int) -> None:
        self.in_set[r] = False
        self.conflicts -= self.row(r)

    def free(self) -> np.ndarray:
        return np.flatnonzero(self.self_ok & ~self.in_set & (self.conflicts == 0))

    def fill(self, priority: np.ndarray | None = None) -> int:
        """Greedy insertion of conflict-free vertices; returns number added."""
        added = 0
        while True:
            cand = self.free()
            if cand.size == 0:
                return added
            if priority is not None:
                cand = cand[np.lexsort((cand, -priority[cand]))]
            self.add(int(cand[0]))
            added += 1

    def members(self) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.in_set).tolist())


def _local_search(state: _Conflicts, max_rounds: int = 1000) -> None:
    """1-swap moves: exchange the single conflicting member u of S for v, keep if a fill then grows S."""
    for _ in range(max_rounds):
        improved = False
        for v in np.flatnonzero(state.self_ok & ~state.in_set & (state.conflicts == 1)).tolist():
            members = np.flatnonzero(state.in_set)
            u = int(members[np.argmax(state.row(v)[members])])
            state.remove(u)
            state.add(v)
            if state.fill() > 0:
                improved = True
                break
            state.remove(v)
            state.add(u)
        if not improved:
            return


def max_density(M: int, mode: str = "exact", seed_set: PeriodicSet | None = None) -> tuple[Fraction, PeriodicSet]:
    """Densest valid residue set found mod M.

    exact: global optimum by enumeration (M <= EXACT_LIMIT).
    greedy: insertion by degree among remaining candidates, then 1-swap local search.
    seeded: verify ``seed_set``, then grow it by insertion and 1-swap moves.
    """
    if mode == "exact":
        best = enumerate_maximal(M)[0]
    elif mode == "greedy":
        if M > GREEDY_LIMIT:
            raise ValueError(f"greedy mode computes an M x M degree table; M={M} > {GREEDY_LIMIT}")
        mask = q_mask(M)
        ar = np.arange(M)
        compat = mask[(ar[:, None] + ar[None, :]) % M]
        state = _Conflicts(M, [])
        # pick the free vertex with most compatible free vertices; ties -> smallest residue
        while (cand := state.free()).size:
            degree = compat[np.ix_(cand, cand)].sum(axis=1)
            state.add(int(cand[np.argmax(degree)]))
        _local_search(state)
        best = PeriodicSet(M, state.members())
    elif mode == "seeded":
        if seed_set is None:
            raise ValueError("seeded mode needs a seed set")
        if seed_set.modulus != M:
            raise ValueError(f"seed modulus {seed_set.modulus} != {M}")
        ok, bad = verify_periodic(seed_set)
        if not ok:
            raise ValueError(f"seed set is not valid: violation {bad}")
        state = _Conflicts(M, seed_set.residues)
        state.fill()
        _local_search(state, max_rounds=10 if M > GREEDY_LIMIT else 1000)
        best = PeriodicSet(M, state.members())
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ok, bad = verify_periodic(best)
    assert ok, f"search produced an invalid certificate: {bad}"
    return best.density, best


def certificate_of_A(k: int) -> PeriodicSet:
    return PeriodicSet(4 * q_of(k), residues_of_A(k))
