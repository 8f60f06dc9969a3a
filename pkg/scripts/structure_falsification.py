"""Classify a seeded corpus of avoidance sets and tally outcomes by structure class.

Any "fail" row would be a dense set that avoids squarefree sums but has none
of the predicted shapes.
"""

import argparse
from collections import Counter

from sqfree_sumsets.report import FAIL
from sqfree_sumsets.sieve import build_squarefree_table
from sqfree_sumsets.verify import CORPUS_WINDOW, check_theorem_structure, structure_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--size", type=int, default=100)
    ap.add_argument("--epsilon", type=float, default=0.001)
    args = ap.parse_args()

    table = build_squarefree_table(2 * CORPUS_WINDOW)
    tally: Counter = Counter()
    for seed in range(args.seeds):
        for label, A in structure_corpus(seed, args.size):
            c = check_theorem_structure(A, args.epsilon, table)
            tally[(c.status, c.params.get("class", "-"))] += 1
            if c.status == FAIL:
                print(f"counterexample seed={seed} set={label} witness={c.witness}")
    for (status, cls), n in sorted(tally.items()):
        print(f"{status:<13} {cls:<16} {n}")


if __name__ == "__main__":
    main()
