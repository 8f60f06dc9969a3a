"""Claim records and their JSON / CSV serialization."""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
STATUSES = (PASS, FAIL, INCONCLUSIVE)

CSV_FIELDS = ("name", "params", "status", "witness", "value", "bound", "elapsed_ms", "note")


@dataclass
class Claim:
    name: str
    status: str
    params: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    value: float | None = None
    bound: float | None = None
    elapsed_ms: float | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = asdict(self)
        for key in ("value", "bound"):
            if d[key] is not None:
                d[key] = float(d[key])
        if not timing:
            d["elapsed_ms"] = None
        return d


def timed(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Stamp wall time onto the Claim (or list of Claims) returned by ``fn``."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        t0 = time.perf_counter()
        out = fn(*args, **kwargs)
        ms = round((time.perf_counter() - t0) * 1e3, 3)
        for c in out if isinstance(out, list) else [out]:
            c.elapsed_ms = ms
        return out

    return wrapper


@dataclass
class VerificationReport:
    claims: list[Claim] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    def add(self, claim: Claim) -> Claim:
        self.claims.append(claim)
        return claim

    def extend(self, claims) -> None:
        self.claims.extend(claims)

    def __getitem__(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return not any(c.status == FAIL for c in self.claims)

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.claims) for s in STATUSES}

    def to_json(self, timing: bool = True) -> str:
        doc = {"meta": self.meta, "claims": [c.to_dict(timing) for c in self.claims]}
        return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n"

    def to_csv(self, timing: bool = True) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for c in self.claims:
            row = c.to_dict(timing)
            row["params"] = json.dumps(row["params"], sort_keys=True, default=_jsonable)
            if row["witness"] is not None:
                row["witness"] = json.dumps(row["witness"], default=_jsonable)
            w.writerow({k: ("" if row[k] is None else row[k]) for k in CSV_FIELDS})
        return buf.getvalue()


def _jsonable(obj: Any) -> Any:
    # numpy scalars, Fractions, tuples of residues
    if hasattr(obj, "item"):
        return obj.item()
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")
