"""Densest periodic certificates for a range of moduli (exact up to 72, greedy beyond)."""

import argparse

from sqfree_sumsets.analytic import a_density
from sqfree_sumsets.search import EXACT_LIMIT, certificate_of_A, max_density


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moduli", default="4,9,12,36,72,144,180,900")
    ap.add_argument("--seeded", action="store_true", help="also grow the k=3 and k=4 constructions")
    args = ap.parse_args()

    for M in (int(m) for m in args.moduli.split(",")):
        mode = "exact" if M <= EXACT_LIMIT else "greedy"
        d, cert = max_density(M, mode)
        shown = list(cert.residues[:12]) + (["..."] if len(cert.residues) > 12 else [])
        print(f"M={M:<6} {mode:<7} density={str(d):<8} {shown}")
    if args.seeded:
        for k in (3, 4):
            seed = certificate_of_A(k)
            d, cert = max_density(seed.modulus, "seeded", seed)
            print(f"k={k} M={seed.modulus}: construction {a_density(k)[1]} -> seeded {d} ({len(cert.residues)} residues)")


if __name__ == "__main__":
    main()
