"""Command-line front end: build | verify | profile | search | constants."""

from __future__ import annotations

import argparse
import os
import struct
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__, analytic
from .construct import build_A, build_paired, q_of
from .report import INCONCLUSIVE, PASS, Claim, VerificationReport
from .residues import compute_Q, compute_U, compute_V, profile
from .search import certificate_of_A, enumerate_maximal, max_density
from .sieve import SquarefreeTable, build_squarefree_table
from .verify import SuiteConfig, check_constants, run_suite

MAGIC = b"SQF1"
CACHE_ENV = "SQFS_CACHE"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    N: int = 1_000_000
    k: tuple[int, ...] = (3,)
    modulus: int = 36
    epsilon: float = 0.01
    mode: str = "exact"
    format: str = "json"
    threads: int = os.cpu_count() or 1
    cache_path: str | None = None
    seed: int = 0
    set: str = "A"
    a: int = 1
    output: str | None = None
    timing: bool = True


def write_cache(table: SquarefreeTable, path: str | Path) -> None:
    """Magic "SQF1", u64 little-endian N, then ceil((N+1)/8) LSB-first bytes."""
    Path(path).write_bytes(MAGIC + struct.pack("<Q", table.bound) + table.packed())


def read_cache(path: str | Path) -> SquarefreeTable:
    raw = Path(path).read_bytes()
    if raw[:4] != MAGIC:
        raise ValueError(f"{path}: bad magic {raw[:4]!r}")
    (N,) = struct.unpack("<Q", raw[4:12])
    return SquarefreeTable.from_packed(N, raw[12:])


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", dest="N", type=int, default=1_000_000, help="truncation bound N")
    common.add_argument("--k", type=_int_list, default=(3,), help="construction parameter(s), e.g. 3 or 3,4")
    common.add_argument("--modulus", type=int, default=36)
    common.add_argument("--epsilon", type=float, default=0.01)
    common.add_argument("--mode", choices=("exact", "greedy", "seeded"), default="exact")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--cache", dest="cache_path", default=None, help=f"sieve cache file (env {CACHE_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--set", choices=("A", "paired"), default="A", help="set to profile")
    common.add_argument("--a", type=int, default=1, help="paired-set parameter 1..8")
    common.add_argument("--output", "-o", default=None, help="write report here instead of stdout")
    common.add_argument("--no-timing", dest="timing", action="store_false", help="blank elapsed_ms for byte-stable output")

    p = argparse.ArgumentParser(prog="sqfs", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="build the squarefree sieve (and cache it)")
    sub.add_parser("verify", parents=[common], help="run the verification suite")
    sub.add_parser("profile", parents=[common], help="residue profile of a constructed set")
    sub.add_parser("search", parents=[common], help="search periodic certificates mod M")
    sub.add_parser("constants", parents=[common], help="numeric constants and lemma ledger")
    return p


def parse(argv: list[str]) -> RunConfig:
    parser = _parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(**vars(ns))
    problems = []
    if cfg.N < 1:
        problems.append("--n must be >= 1")
    if not cfg.k or any(k < 2 for k in cfg.k):
        problems.append("--k values must be >= 2")
    if cfg.modulus < 1:
        problems.append("--modulus must be >= 1")
    if cfg.epsilon <= 0:
        problems.append("--epsilon must be positive")
    if cfg.threads < 1:
        problems.append("--threads must be >= 1")
    if not 1 <= cfg.a <= 8:
        problems.append("--a must be in 1..8")
    if problems:
        parser.error("; ".join(problems))
    if cfg.cache_path is None:
        cfg.cache_path = os.environ.get(CACHE_ENV) or None
    return cfg


def load_table(cfg: RunConfig) -> SquarefreeTable:
    if cfg.cache_path and Path(cfg.cache_path).exists():
        table = read_cache(cfg.cache_path)
        if table.bound >= cfg.N:
            return table if table.bound == cfg.N else table.truncated(cfg.N)
    table = build_squarefree_table(cfg.N, threads=cfg.threads)
    if cfg.cache_path:
        write_cache(table, cfg.cache_path)
    return table


def _meta(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d["k"] = list(cfg.k)
    d.pop("output")
    d.pop("cache_path")
    d.pop("timing")
    d.pop("threads")
    return {"config": d, "version": __version__}


def _cmd_build(cfg: RunConfig) -> VerificationReport:
    table = load_table(cfg)
    rep = VerificationReport(meta=_meta(cfg))
    rep.add(Claim("sieve", PASS, {"N": table.bound, "cache": bool(cfg.cache_path)}, value=float(table.count),
                  note="value = number of squarefree n <= N"))
    return rep


def _cmd_verify(cfg: RunConfig) -> VerificationReport:
    table = load_table(cfg)
    suite = SuiteConfig(N=cfg.N, ks=cfg.k, epsilon=cfg.epsilon, threads=cfg.threads, seed=cfg.seed)
    rep = run_suite(suite, table)
    rep.meta = _meta(cfg)
    return rep


def _cmd_profile(cfg: RunConfig) -> VerificationReport:
    if cfg.set == "A":
        A, label = build_A(cfg.k[0], cfg.N), f"A({cfg.k[0]})"
    else:
        A, label = build_paired(cfg.a, cfg.N), f"paired({cfg.a})"
    prof = profile(A, cfg.modulus, cfg.N)
    rep = VerificationReport(meta=_meta(cfg))
    params = {"set": label, "modulus": cfg.modulus, "window": cfg.N}
    if cfg.modulus == 36:
        params |= {"U": sorted(compute_U(prof, cfg.epsilon)), "V": sorted(compute_V(prof)), "Q": sorted(compute_Q(36))}
    rep.add(Claim("profile", PASS, params, value=float(prof.overall), note="value = overall density"))
    for r in range(cfg.modulus):
        if prof.counts[r]:
            rep.add(Claim(f"delta[{r}]", PASS, {"count": prof.counts[r]}, value=float(prof.delta(r))))
    return rep


def _cmd_search(cfg: RunConfig) -> VerificationReport:
    M = cfg.modulus
    rep = VerificationReport(meta=_meta(cfg))
    if cfg.mode == "exact":
        sets = enumerate_maximal(M)
        for i, s in enumerate(sets):
            rep.add(Claim(f"maximal[{i}]", PASS, {"modulus": M, "residues": list(s.residues)}, value=float(s.density)))
        best = sets[0]
    else:
        seed = None
        if cfg.mode == "seeded":
            k = next((k for k in cfg.k if 4 * q_of(k) == M), None)
            if k is None:
                raise UsageError(f"seeded search needs --modulus equal to 4q(k) for one of --k {list(cfg.k)}")
            seed = certificate_of_A(k)
        _, best = max_density(M, cfg.mode, seed)
    rep.claims.insert(0, Claim("max-density", PASS, {"modulus": M, "mode": cfg.mode, "certificate": list(best.residues)},
                               value=float(best.density), note=str(best.density)))
    return rep


def _cmd_constants(cfg: RunConfig) -> VerificationReport:
    rep = VerificationReport(meta=_meta(cfg))
    rep.add(check_constants())
    for name, val in analytic.constants().items():
        rep.add(Claim(name, PASS, value=val))
    rep.extend(analytic.lemma_constant_ledger())
    return rep


DISPATCH = {
    "build": _cmd_build,
    "verify": _cmd_verify,
    "profile": _cmd_profile,
    "search": _cmd_search,
    "constants": _cmd_constants,
}


def execute(cfg: RunConfig) -> int:
    try:
        rep = DISPATCH[cfg.command](cfg)
        text = rep.to_json(cfg.timing) if cfg.format == "json" else rep.to_csv(cfg.timing)
        if cfg.output:
            Path(cfg.output).write_text(text)
        else:
            sys.stdout.write(text)
    except (OSError, ValueError, UsageError) as exc:
        print(f"sqfs: error: {exc}", file=sys.stderr)
        return 2
    counts = rep.counts()
    print(f"{counts[PASS]} pass, {counts['fail']} fail, {counts[INCONCLUSIVE]} inconclusive", file=sys.stderr)
    return 0 if rep.ok else 1


def main(argv: list[str] | None = None) -> int:
    return execute(parse(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    sys.exit(main())
