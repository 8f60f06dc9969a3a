"""Truncated Euler products with rigorous tail bounds, and the numeric constants they feed."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import report
from .report import Claim
from .sieve import nth_prime, primes_up_to

DEFAULT_P = 100_000
PI2 = math.pi**2

DELTA0 = 0.25 - 2 / PI2
DELTA1 = 1 / 18
NINE_OVER_PI2 = 9 / PI2
SIX_OVER_PI2 = 6 / PI2
ONE_MINUS_NINE_OVER_PI2 = 1 - 9 / PI2


def constants() -> dict[str, float]:
    """Named constants; checks delta0 = (1 + 8(1 - 9/pi^2)) / 36."""
    alt = (1 + 8 * ONE_MINUS_NINE_OVER_PI2) / 36
    assert abs(DELTA0 - alt) < 1e-12, (DELTA0, alt)
    return {
        "delta0": DELTA0,
        "delta1": DELTA1,
        "9/pi^2": NINE_OVER_PI2,
        "6/pi^2": SIX_OVER_PI2,
        "1-9/pi^2": ONE_MINUS_NINE_OVER_PI2,
        "1-6/pi^2": 1 - SIX_OVER_PI2,
    }


@dataclass(frozen=True)
class EulerProductValue:
    """Truncated value with |true - value| <= tail_bound.

    For a plain product all omitted factors lie in (0, 1], so the true value
    sits in [value - tail_bound, value] (``one_sided``). Combinations of
    products are bracketed on both sides.
    """

    value: float
    truncation_prime: int
    tail_bound: float
    one_sided: bool = True

    @property
    def lower(self) -> float:
        return self.value - self.tail_bound

    @property
    def upper(self) -> float:
        return self.value if self.one_sided else self.value + self.tail_bound

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper


def _log_tail(c: float, P: int) -> float:
    # -log prod_{p>P} (1 - c/p^2) <= sum_{n>P} (c/n^2) / (1 - c/n^2) <= (c/P) / (1 - c/P^2)
    return (c / P) / (1 - c / (P * P))


def _rounding_slack(n_factors: int, value: float) -> float:
    return 4 * n_factors * np.finfo(float).eps * abs(value)


def truncated_euler_product(
    local_factor: Callable[[np.ndarray], np.ndarray],
    p_min: int = 5,
    P: int = DEFAULT_P,
    c: float = 1.0,
) -> EulerProductValue:
    """prod over primes p_min <= p <= P of local_factor(p).

    ``c`` bounds the omitted factors: local_factor(p) >= 1 - c/p^2 for p > P.
    """
    if p_min not in (2, 3, 5, 7):
        raise ValueError(f"p_min must be one of 2, 3, 5, 7, got {p_min}")
    if P < p_min:
        raise ValueError("truncation prime below p_min")
    if c * 4 >= P * P:
        raise ValueError("tail constant too large for this truncation")
    ps = primes_up_to(P)
    ps = ps[ps >= p_min].astype(np.float64)
    factors = np.asarray(local_factor(ps), dtype=np.float64)
    if (factors <= 0).any() or (factors > 1).any():
        bad = int(ps[(factors <= 0) | (factors > 1)][0])
        raise ArithmeticError(f"local factor at p={bad} outside (0, 1]")
    value = float(np.exp(np.sum(np.log(factors))))
    tail = value * -math.expm1(-_log_tail(c, P)) + _rounding_slack(len(ps), value)
    return EulerProductValue(value, P, float(tail))


def one_minus(c: float) -> Callable[[np.ndarray], np.ndarray]:
    return lambda p: 1 - c / (p * p)


def pair_nonsquarefree_density(d: int, P: int = DEFAULT_P) -> EulerProductValue:
    """Density, inside an admissible class mod 36, of n with n+b1 and n+b2 both non-squarefree.

    d = b1 - b2. Evaluates
    1 - 2 prod_{p>=5}(1 - 1/p^2) + prod_{p>=5, p^2 | d}(1 - 1/p^2) prod_{p>=5, p^2 ∤ d}(1 - 2/p^2).
    """
    if d == 0:
        raise ArithmeticError("d = 0 is the single-shift case, not a pair density")
    if d % 36:
        warnings.warn(f"d={d} is not a multiple of 36", stacklevel=2)
    single = truncated_euler_product(one_minus(1.0), 5, P, c=1.0)

    def mixed(p: np.ndarray) -> np.ndarray:
        sq = (p * p).astype(np.int64)
        divides = (abs(d) % sq) == 0
        return np.where(divides, 1 - 1 / (p * p), 1 - 2 / (p * p))

    both = truncated_euler_product(mixed, 5, P, c=2.0)
    # Primes p > P with p^2 | d are covered by the c=2 tail.
    value = 1 - 2 * single.value + both.value
    return EulerProductValue(value, P, 2 * single.tail_bound + both.tail_bound, one_sided=False)


def pair_independence_floor(P: int = DEFAULT_P) -> EulerProductValue:
    """1 - 18/pi^2 + prod_{p>=5}(1 - 2/p^2): the pair density when no p^2 (p >= 5) divides d."""
    both = truncated_euler_product(one_minus(2.0), 5, P, c=2.0)
    return EulerProductValue(1 - 18 / PI2 + both.value, P, both.tail_bound)


def pk_pair_bound(k: int) -> float:
    """1 - 9/pi^2 - 9/(pi^2 (p_k^2 - 1))."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    p = nth_prime(k)
    return 1 - 9 / PI2 - 9 / (PI2 * (p * p - 1))


@dataclass(frozen=True)
class InequalityCheck:
    k: int
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def lemma4_inequality(k: int) -> InequalityCheck:
    """9/(pi^2 (p_k^2 - 1)) >= (3/8) prod_{i=3}^{k-1} p_i^{-2}."""
    if k < 4:
        raise ValueError(f"k must be >= 4, got {k}")
    p = nth_prime(k)
    lhs = 9 / (PI2 * (p * p - 1))
    denom = math.prod(nth_prime(i) ** 2 for i in range(3, k))
    return InequalityCheck(k, lhs, float(Fraction(3, 8) / denom))


def q_of(k: int) -> int:
    """prod_{i=2}^k p_i^2 (so p_2 = 3)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return math.prod(nth_prime(i) ** 2 for i in range(2, k + 1))


def a_density(k: int) -> tuple[Fraction, Fraction]:
    """Exact densities of the 4 | n part and of the whole construction for parameter k."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    prod = Fraction(1)
    for i in range(2, k + 1):
        p = nth_prime(i)
        prod *= 1 - Fraction(1, p * p)
    a1 = (1 - prod) / 4
    # multiples of q lie in the first part exactly when 4 divides them
    return a1, a1 + Fraction(3, 4 * q_of(k))


def tail_prime_square_sum(k: int, work_limit: int = 1_000_000) -> float:
    """Upper bound for sum_{i>k} 1/p_i^2.

    Exact partial sum over primes p_{k+1} .. work_limit, plus 1/(P - 1)
    for the integer tail starting at the first unlisted prime P.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ps = primes_up_to(work_limit)
    if k >= len(ps):
        raise ValueError("work limit too small for this k")
    listed = ps[k:].astype(np.float64)
    first_unlisted = nth_prime(len(ps) + 1)
    partial = float(np.sum(1 / (listed * listed)[::-1]))
    return partial * (1 + 1e-12) + 1 / (first_unlisted - 1)


def min_gap_bound(count: int, slots: int) -> int:
    """Any `count` marked positions among `slots` consecutive ones include two at distance <= g.

    The count - 1 gaps sum to at most slots - 1, so the smallest is at most
    floor((slots - 1) / (count - 1)).
    """
    if count < 2:
        raise ValueError("count must be >= 2")
    if count > slots:
        raise ValueError("count exceeds slots")
    return (slots - 1) // (count - 1)


def _in_quoted(value: float, quoted: str) -> bool:
    """Quoted decimals are truncations: value lies in [q, q + one unit of the last digit)."""
    q = float(quoted)
    ulp = 10.0 ** -len(quoted.split(".")[1])
    return q <= value < q + ulp


def _claim(name: str, ok: bool, value: float, bound: float, note: str = "", **params) -> Claim:
    return Claim(name, report.PASS if ok else report.FAIL, params, value=value, bound=bound, note=note)


@report.timed
def lemma_constant_ledger(P: int = DEFAULT_P) -> list[Claim]:
    """Recompute each quoted numeric inequality with exact constants."""
    out = []

    gap = 36 * DELTA0 - 12 * ONE_MINUS_NINE_OVER_PI2
    out.append(_claim("L3-gap", gap >= 24 * 0.0269, gap, 24 * 0.0269,
                      note=f"margin {gap - 24 * 0.0269:+.5f}"))

    ident = (1 + 8 * ONE_MINUS_NINE_OVER_PI2) / 36
    out.append(_claim("L6-identity", abs(ident - DELTA0) < 1e-12, ident, DELTA0))

    l6 = (1 + 3 * ONE_MINUS_NINE_OVER_PI2 + 8 * 0.04) / 36
    out.append(_claim("L6-bound", l6 <= 0.0441, l6, 0.0441))
    out.append(_claim("L6-contradiction", 0.0441 < DELTA0, 0.0441, DELTA0,
                      note="bound must fall below delta0"))

    shift = 9 / (PI2 * (5 * 5 - 1))
    out.append(_claim("L4-shift", _in_quoted(shift, "0.0379"), shift, 0.0379,
                      note="0.0379.. is the reading consistent with the 0.101 threshold"))

    thresh = shift / (3 / 8)
    out.append(_claim("L4-threshold", _in_quoted(thresh, "0.101"), thresh, 0.101))

    floor_ = pair_independence_floor(P)
    out.append(_claim("L4-0066", floor_.value <= 0.0066, floor_.value, 0.0066,
                      note=f"tail {floor_.tail_bound:.2e}"))

    t217 = (ONE_MINUS_NINE_OVER_PI2 - 0.0066) / (3 / 8)
    out.append(_claim("L4-0217", _in_quoted(t217, "0.217") and t217 > ONE_MINUS_NINE_OVER_PI2,
                      t217, 0.217, note="must exceed 1-9/pi^2 so b cannot be in U"))

    pair = pair_nonsquarefree_density(900, P)
    out.append(_claim("L3-04267", pair.value <= 0.04267, pair.value, 0.04267,
                      note="computed value sits below 0.04267, so the upper bound holds"))
    out.append(_claim("L3-contradiction", 0.04267 < DELTA0, 0.04267, DELTA0))

    out.append(_claim("L3-pigeonhole", min_gap_bound(269, 10_000) <= 40,
                      min_gap_bound(269, 10_000), 40, note="slot units of 36; density 0.0269"))
    sq_free_small = all(all((36 * t) % (p * p) for p in (5, 7, 11, 13, 17, 19, 23)) for t in range(1, 25))
    out.append(_claim("L5-pigeonhole", min_gap_bound(401, 10_000) < 25 and sq_free_small,
                      min_gap_bound(401, 10_000), 25,
                      note="slot units of 36; 36t for t<25 has no p^2 factor with p>=5"))
    return out
