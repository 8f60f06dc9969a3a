"""Exhaustive finite checks of the structural and constructive claims, collected into a report."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import __version__, analytic, report
from .analytic import DELTA0, DELTA1
from .construct import build_A, build_paired, q_of
from .report import FAIL, INCONCLUSIVE, PASS, Claim, VerificationReport
from .residues import (
    PAIRED,
    SUBSET_4N,
    SUBSET_4N2,
    SUBSET_9N,
    check_lemma1,
    classify_structure,
    compute_Q,
    least_squarefree_sum,
)
from .search import PeriodicSet, certificate_of_A, enumerate_maximal, max_density, verify_periodic
from .sets import IntegerSet, density, h_fold_sumset, sumset
from .sieve import SquarefreeTable, build_squarefree_table

FROBENIUS_LIMIT = 3600
MIN_DENSITY_WINDOW = 10_000
# A + A only settles into its period 4q after a few periods; density claims need this many.
MIN_PERIODS = 10
CORPUS_WINDOW = 36_000
Q36 = frozenset({0, 4, 8, 9, 12, 16, 18, 20, 24, 27, 28, 32})


def finite_size_margin(N: int) -> float:
    return 3 / math.sqrt(N)


@report.timed
def check_sumset_avoidance(A: IntegerSet, table: SquarefreeTable, N: int, name: str = "avoidance", threads: int = 1) -> Claim:
    """Pass iff A + A (truncated at N) contains no squarefree integer."""
    N = min(N, table.bound)
    S = sumset(A, A, N, threads=threads)
    hits = np.flatnonzero(S.flags & table.flags[: N + 1])
    params = {"N": N, "size": A.cardinality}
    if hits.size:
        return Claim(name, FAIL, params, witness=int(hits[0]), value=float(hits.size), bound=0.0,
                     note="least squarefree element of A+A")
    return Claim(name, PASS, params, value=0.0, bound=0.0)


def _representable(limit: int, gens: tuple[int, ...]) -> np.ndarray:
    reach = np.zeros(limit + 1, dtype=bool)
    reach[0] = True
    for n in range(1, limit + 1):
        reach[n] = any(n >= g and reach[n - g] for g in gens)
    return reach


def _representable_double_loop(limit: int) -> set[int]:
    return {36 * x + 100 * y for x in range(101) for y in range(37) if 36 * x + 100 * y <= limit}


@report.timed
def check_frobenius_764() -> Claim:
    """764 is the largest multiple of 4 that is not 36x + 100y with x, y >= 0."""
    reach = _representable(FROBENIUS_LIMIT, (36, 100))
    mult4 = np.arange(0, FROBENIUS_LIMIT + 1, 4)
    missing = mult4[~reach[mult4]]
    largest = int(missing[-1])
    loop = _representable_double_loop(FROBENIUS_LIMIT)
    loop_missing = [n for n in mult4.tolist() if n not in loop]
    agree = loop_missing == missing.tolist()
    # nine consecutive representable multiples of 4 propagate by +36 forever
    run = all(reach[largest + 4 * j] for j in range(1, 10))
    ok = largest == 764 and agree and run
    params = {"limit": FROBENIUS_LIMIT, "generators": [36, 100]}
    return Claim("frobenius-764", PASS if ok else FAIL, params, witness=largest, value=float(largest), bound=764.0,
                 note="" if agree else "DP and double-loop oracles disagree")


@report.timed
def check_threefold_cover(k: int, N: int, threads: int = 1) -> Claim:
    """Every n in (764 + 3q, N] lies in A + A + A."""
    name = f"threefold-cover[A({k})]"
    try:
        q = q_of(k)
        A = build_A(k, N)
    except ValueError as exc:
        return Claim(name, FAIL, {"k": k, "N": N}, witness=k, note=str(exc))
    threshold = 764 + 3 * q
    params = {"k": k, "N": N, "q": q}
    if N <= threshold:
        return Claim(name, INCONCLUSIVE, params, bound=float(threshold), note="N below the cover threshold")
    S3 = h_fold_sumset(A, 3, N, threads=threads)
    missing = np.flatnonzero(~S3.flags[1:]) + 1
    largest = int(missing[-1]) if missing.size else 0
    params["exceptions"] = int(missing.size)
    if largest > threshold:
        return Claim(name, FAIL, params, witness=largest, value=float(largest), bound=float(threshold))
    return Claim(name, PASS, params, value=float(largest), bound=float(threshold),
                 note="value = largest integer outside A+A+A")


@report.timed
def check_missing_density(k: int, N: int, table: SquarefreeTable, threads: int = 1) -> Claim:
    """Density of non-squarefree n <= N outside A + A, against sum_{i>k} 1/p_i^2 + 3/sqrt(N)."""
    name = f"missing-density[A({k})]"
    try:
        A = build_A(k, N)
    except ValueError as exc:
        return Claim(name, FAIL, {"k": k, "N": N}, witness=k, note=str(exc))
    N = min(N, table.bound)
    S = sumset(A, A, N, threads=threads)
    missing = ~table.flags[1 : N + 1] & ~S.flags[1:]
    value = int(np.count_nonzero(missing)) / N
    bound = analytic.tail_prime_square_sum(k) + finite_size_margin(N)
    q = q_of(k)
    params = {"k": k, "N": N, "tail": analytic.tail_prime_square_sum(k), "margin": finite_size_margin(N)}
    if N < max(MIN_DENSITY_WINDOW, MIN_PERIODS * 4 * q):
        return Claim(name, INCONCLUSIVE, params, value=value, bound=bound,
                     note=f"window must reach max({MIN_DENSITY_WINDOW}, {MIN_PERIODS} periods of 4q={4 * q})")
    if value > bound:
        last = int(np.flatnonzero(missing)[-1]) + 1
        return Claim(name, FAIL, params, witness=last, value=value, bound=bound)
    return Claim(name, PASS, params, value=value, bound=bound)


@report.timed
def check_sumset_density(k: int, N: int, slack: float | None = None, upper_slack: float = 0.001, threads: int = 1) -> Claim:
    """density(A + A, N) within [1 - 6/pi^2 - slack, 1 - 6/pi^2 + upper_slack].

    Default slack is the missing-density allowance sum_{i>k} 1/p_i^2 + 3/sqrt(N).
    """
    name = f"sumset-density[A({k})]"
    try:
        A = build_A(k, N)
    except ValueError as exc:
        return Claim(name, FAIL, {"k": k, "N": N}, witness=k, note=str(exc))
    if slack is None:
        slack = analytic.tail_prime_square_sum(k) + finite_size_margin(N)
    target = 1 - analytic.SIX_OVER_PI2
    d = float(density(sumset(A, A, N, threads=threads), N))
    params = {"k": k, "N": N, "target": target, "slack": slack, "upper_slack": upper_slack}
    period = 4 * q_of(k)
    if N < max(MIN_DENSITY_WINDOW, MIN_PERIODS * period):
        return Claim(name, INCONCLUSIVE, params, value=d, bound=target - slack,
                     note=f"window must reach max({MIN_DENSITY_WINDOW}, {MIN_PERIODS} periods of 4q={period})")
    ok = target - slack <= d <= target + upper_slack
    return Claim(name, PASS if ok else FAIL, params, witness=None if ok else N, value=d,
                 bound=target - slack, note="bound is the lower end of the window")


@report.timed
def check_construction_density(k: int, N: int) -> Claim:
    """Measured density of A(k) over whole periods equals the closed form."""
    name = f"density[A({k})]"
    try:
        A = build_A(k, N)
    except ValueError as exc:
        return Claim(name, FAIL, {"k": k, "N": N}, witness=k, note=str(exc))
    period = 4 * q_of(k)
    _, total = analytic.a_density(k)
    params = {"k": k, "period": period, "exact": str(total)}
    if N < period:
        return Claim(name, INCONCLUSIVE, params, note="N shorter than one period")
    window = (N // period) * period
    d = density(A, window)
    return Claim(name, PASS if d == total else FAIL, params, witness=None if d == total else window,
                 value=float(d), bound=float(total))


def _largest_gap(flags: np.ndarray, candidates: np.ndarray) -> int:
    bad = candidates[~flags[candidates]]
    return int(bad[-1]) if bad.size else 0


@report.timed
def check_corollary_paired(N: int, threads: int = 1) -> list[Claim]:
    """Sub-claims for the a = 1 paired set: 3-fold sums cover 30 mod 36, 6-fold sums cover large
    even numbers, and 2x - y (x, y >= 0, 0 < 2x + y <= 5) hits every residue mod 9."""
    A = build_paired(1, N)
    folds = [A]
    for _ in range(5):
        folds.append(sumset(folds[-1], A, N, threads=threads))
    S3, S6 = folds[2], folds[5]
    up_to_6 = np.logical_or.reduce([f.flags for f in folds])
    stable = N // 2
    out = []

    cls30 = np.arange(30, N + 1, 36)
    t3 = _largest_gap(S3.flags, cls30)
    out.append(Claim("corollary-3fold", PASS if t3 <= stable else FAIL,
                     {"N": N, "class": "30 mod 36", "threshold_3": t3},
                     witness=None if t3 <= stable else t3, value=float(t3), bound=float(stable),
                     note="value = largest uncovered n = 30 (mod 36); must sit in the first half of the window"))

    evens = np.arange(2, N + 1, 2)
    t6 = _largest_gap(S6.flags, evens)
    missed = evens[~S6.flags[evens]]
    # diagnostic only: the same question for sums of one to six elements
    t_le6 = _largest_gap(up_to_6, evens)
    out.append(Claim("corollary-6fold", PASS if t6 <= stable else FAIL,
                     {"N": N, "threshold_6": t6, "uncovered_residues_mod36": sorted(set((missed[missed > stable] % 36).tolist())),
                      "threshold_at_most_6": t_le6},
                     witness=None if t6 <= stable else t6, value=float(t6), bound=float(stable),
                     note="value = largest even n outside the 6-fold sumset"))

    table = {}
    for x in range(3):
        for y in range(6):
            if 0 < 2 * x + y <= 5:
                table.setdefault((2 * x - y) % 9, [x, y])
    covered = sorted(table)
    out.append(Claim("corollary-mod9", PASS if len(covered) == 9 else FAIL,
                     {"reading": "x, y >= 0", "coverage": {str(r): table[r] for r in covered}},
                     witness=None if len(covered) == 9 else sorted(set(range(9)) - set(covered)),
                     value=float(len(covered)), bound=9.0))
    return out


def _structure_witness(A: IntegerSet) -> list[int]:
    m = A.members()
    picks = [m[m % 4 != 0], m[m % 4 != 2], m[m % 9 != 0]]
    return [int(p[0]) for p in picks if p.size]


@report.timed
def check_theorem_structure(A: IntegerSet, epsilon: float, table: SquarefreeTable, name: str = "theorem-structure") -> Claim:
    """Dense avoidance sets must be one of the listed structures."""
    params = {"bound": A.bound, "epsilon": epsilon}
    bad = least_squarefree_sum(A, table, min(A.bound, table.bound))
    if bad is not None:
        return Claim(name, INCONCLUSIVE, params, witness=bad, note="precondition violated: A+A contains a squarefree integer")
    d = float(density(A, A.bound))
    tag = classify_structure(A) if A.cardinality else None
    params |= {"density": d, "class": str(tag)}
    plain = {SUBSET_4N, SUBSET_4N2, SUBSET_9N}
    if d > DELTA1 + epsilon:
        ok = tag.tag in plain
    elif d > DELTA0 + epsilon:
        ok = tag.tag in plain or tag.tag == PAIRED
    else:
        return Claim(name, INCONCLUSIVE, params, value=d, bound=DELTA0 + epsilon, note="density below the range where structure is forced")
    return Claim(name, PASS if ok else FAIL, params, witness=None if ok else _structure_witness(A),
                 value=d, bound=DELTA0 + epsilon)


def structure_corpus(seed: int, size: int, window: int = CORPUS_WINDOW) -> list[tuple[str, IntegerSet]]:
    """Seeded avoidance-satisfying sets: expansions of valid certificates and random subsets of them."""
    rng = np.random.default_rng(seed)
    certs = enumerate_maximal(36) + enumerate_maximal(72) + [certificate_of_A(3)]
    out = []
    for c in certs:
        out.append((f"cert{c.modulus}{list(c.residues)[:4]}", c.expand(window)))
    i = 0
    while len(out) < size:
        c = certs[i % len(certs)]
        i += 1
        kind = rng.integers(3)
        if kind == 0 and len(c.residues) > 1:
            keep = rng.random(len(c.residues)) < 0.6
            keep[rng.integers(len(keep))] = True
            sub = PeriodicSet(c.modulus, tuple(np.asarray(c.residues)[keep].tolist()))
            out.append((f"classes{sub.modulus}{list(sub.residues)[:4]}", sub.expand(window)))
        else:
            p = float(rng.choice([0.95, 0.7, 0.4]))
            full = c.expand(window)
            flags = full.flags & (rng.random(window + 1) < p)
            if flags.any():
                out.append((f"thin{c.modulus}@{p}", IntegerSet(window, flags)))
    return out[:size]


@report.timed
def check_structure_corpus(table: SquarefreeTable, epsilon: float, seed: int, size: int) -> Claim:
    counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    first_fail = None
    for label, A in structure_corpus(seed, size):
        c = check_theorem_structure(A, epsilon, table)
        counts[c.status] += 1
        if c.status == FAIL and first_fail is None:
            first_fail = {"set": label, "witness": c.witness}
    params = {"seed": seed, "size": size, "window": CORPUS_WINDOW, "outcomes": counts}
    return Claim("theorem-structure-corpus", PASS if counts[FAIL] == 0 else FAIL, params,
                 witness=first_fail, value=float(counts[FAIL]), bound=0.0, note="value = counterexamples found")


@report.timed
def check_Q36() -> Claim:
    Q = compute_Q(36)
    return Claim("Q36", PASS if Q == Q36 else FAIL, {"modulus": 36, "Q": sorted(Q)},
                 witness=None if Q == Q36 else sorted(Q ^ Q36), value=float(len(Q)), bound=12.0)


@report.timed
def check_constants() -> Claim:
    c = analytic.constants()
    alt = (1 + 8 * c["1-9/pi^2"]) / 36
    ok = abs(c["delta0"] - alt) < 1e-12 and str(c["delta0"]).startswith("0.0473")
    return Claim("constants", PASS if ok else FAIL, {k: v for k, v in c.items()}, value=c["delta0"], bound=alt)


@report.timed
def check_search_shadow(M: int = 36) -> list[Claim]:
    sets = enumerate_maximal(M)
    best, cert = max_density(M, "exact")
    out = [Claim(f"search-max-density[{M}]", PASS if best == max(s.density for s in sets) else FAIL,
                 {"modulus": M, "certificate": list(cert.residues), "maximal_sets": len(sets)},
                 value=float(best), bound=0.25)]
    broken = []
    for s in sets:
        ok, bad = verify_periodic(s)
        if not ok:
            broken.append([list(s.residues), bad])
    out.append(Claim(f"search-soundness[{M}]", PASS if not broken else FAIL, {"modulus": M, "checked": len(sets)},
                     witness=broken[0] if broken else None, value=float(len(broken)), bound=0.0))
    return out


def _guard(name: str, fn: Callable[[], Claim | list[Claim]]) -> Callable[[], list[Claim]]:
    def run() -> list[Claim]:
        try:
            out = fn()
        except Exception as exc:  # a broken claim must not abort the suite
            return [Claim(name, FAIL, {}, witness=type(exc).__name__, note=str(exc))]
        return out if isinstance(out, list) else [out]

    return run


@dataclass
class SuiteConfig:
    N: int = 1_000_000
    ks: tuple[int, ...] = (3, 4)
    epsilon: float = 0.01
    threads: int = 1
    seed: int = 0
    corpus_size: int = 48
    paired_N: int | None = None

    def as_dict(self) -> dict:
        """Report metadata; the thread count is left out because it must not change results."""
        d = asdict(self)
        d["ks"] = list(self.ks)
        del d["threads"]
        return d


def _named(claim_name: str, fn: Callable[..., Claim], *args, **kwargs) -> Callable[[], Claim]:
    def run() -> Claim:
        c = fn(*args, **kwargs)
        c.name = claim_name
        return c

    return run


def run_suite(config: SuiteConfig, table: SquarefreeTable | None = None) -> VerificationReport:
    """Run every check; claim order is fixed by construction, not by completion order."""
    N = config.N
    if table is None or table.bound < N:
        table = build_squarefree_table(N, threads=config.threads)
    paired_N = min(N, config.paired_N or N)
    eps, th = config.epsilon, config.threads

    jobs: list[tuple[str, Callable]] = [
        ("constants", check_constants),
        ("ledger", analytic.lemma_constant_ledger),
        ("Q36", check_Q36),
        ("frobenius-764", check_frobenius_764),
    ]
    for k in config.ks:
        def avoid(k=k):
            return check_sumset_avoidance(build_A(k, N), table, N, name=f"avoidance[A({k})]", threads=th)

        def lemma1(k=k):
            c = check_lemma1(build_A(k, N), eps, table)
            c.name = f"lemma1[A({k})]"
            return c

        jobs += [
            (f"avoidance[A({k})]", avoid),
            (f"density[A({k})]", lambda k=k: check_construction_density(k, N)),
            (f"threefold-cover[A({k})]", lambda k=k: check_threefold_cover(k, N, th)),
            (f"missing-density[A({k})]", lambda k=k: check_missing_density(k, N, table, th)),
            (f"sumset-density[A({k})]", lambda k=k: check_sumset_density(k, N, threads=th)),
            (f"lemma1[A({k})]", lemma1),
        ]
    for a in range(1, 9):
        jobs.append((f"avoidance[paired({a})]",
                     _named(f"avoidance[paired({a})]", check_sumset_avoidance, build_paired(a, paired_N), table, paired_N, threads=th)))

        def classify(a=a):
            tag = classify_structure(build_paired(a, min(paired_N, 3600)))
            ok = tag.tag == PAIRED and tag.a == a
            return Claim(f"classify[paired({a})]", PASS if ok else FAIL, {"a": a, "class": str(tag)},
                         witness=None if ok else str(tag))

        jobs.append((f"classify[paired({a})]", classify))

    def lemma1_paired():
        c = check_lemma1(build_paired(1, paired_N), eps, table)
        c.name = "lemma1[paired(1)]"
        return c

    jobs += [
        ("lemma1[paired(1)]", lemma1_paired),
        ("corollary", lambda: check_corollary_paired(N, th)),
        ("theorem-structure-corpus", lambda: check_structure_corpus(table, eps, config.seed, config.corpus_size)),
        ("search", check_search_shadow),
    ]

    runners = [_guard(name, fn) for name, fn in jobs]
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(lambda r: r(), runners))
    else:
        results = [r() for r in runners]

    rep = VerificationReport(meta={"config": config.as_dict(), "version": __version__})
    for claims in results:
        rep.extend(claims)
    return rep
