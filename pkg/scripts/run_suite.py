"""Run the full verification suite and write JSON and CSV reports.

    python scripts/run_suite.py --n 1000000 --ks 3,4 --out results/
"""

import argparse
import logging
import os
from pathlib import Path

from sqfree_sumsets.report import FAIL
from sqfree_sumsets.verify import SuiteConfig, run_suite

log = logging.getLogger("run_suite")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=1_000_000)
    ap.add_argument("--ks", default="3,4")
    ap.add_argument("--epsilon", type=float, default=0.01)
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--corpus", type=int, default=48)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = SuiteConfig(N=args.n, ks=tuple(int(k) for k in args.ks.split(",")), epsilon=args.epsilon,
                      threads=args.threads, seed=args.seed, corpus_size=args.corpus)
    rep = run_suite(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    stem = f"suite_N{args.n}"
    (args.out / f"{stem}.json").write_text(rep.to_json())
    (args.out / f"{stem}.csv").write_text(rep.to_csv())

    for c in rep.claims:
        log.info("%-28s %-12s value=%s bound=%s %s", c.name, c.status, c.value, c.bound,
                 f"witness={c.witness}" if c.status == FAIL else "")
    log.info("%s -> %s", rep.counts(), args.out / stem)


if __name__ == "__main__":
    main()
