"""Scan the pair non-squarefree density over shifts d = 36t and print the largest values.

Shows which square divisors of d drive the density up, and how the result
moves with the truncation prime.
"""

import argparse

from sqfree_sumsets.analytic import pair_independence_floor, pair_nonsquarefree_density


def square_divisors(d: int) -> list[int]:
    return [p for p in (5, 7, 11, 13, 17, 19, 23, 29, 31) if d % (p * p) == 0]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-d", type=int, default=10_000)
    ap.add_argument("--P", type=int, default=100_000, help="truncation prime")
    ap.add_argument("--top", type=int, default=10)
    args = ap.parse_args()

    floor_ = pair_independence_floor(args.P)
    print(f"independence floor: {floor_.value:.7f}  (tail {floor_.tail_bound:.1e})")
    rows = []
    for d in range(36, args.max_d + 1, 36):
        v = pair_nonsquarefree_density(d, args.P)
        rows.append((v.value, d, v.tail_bound))
    rows.sort(reverse=True)
    print(f"{'d':>7} {'density':>10} {'tail':>8}  p^2 | d")
    for value, d, tail in rows[: args.top]:
        print(f"{d:>7} {value:>10.7f} {tail:>8.1e}  {square_divisors(d)}")
    for P in (10**3, 10**4, 10**5, 10**6):
        v = pair_nonsquarefree_density(900, P)
        print(f"d=900 at P={P:>7}: [{v.lower:.7f}, {v.upper:.7f}]")


if __name__ == "__main__":
    main()
