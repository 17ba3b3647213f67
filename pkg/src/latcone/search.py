"""Seeded counterexample search with a JSONL log.

Each record is generated from its own stream ``rng_for(seed, index)``, so
any single instance can be replayed without rerunning the others. A log
written twice from the same configuration differs only in timestamps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from .cones import Cone
from .conjectures import bimodular_decompose, simplicial_check, theorem11_router, weak_hc_check
from .errors import CheckFailure
from .hilbert import hilbert_basis
from .instances import (
    PRNG_NAME,
    random_bimodular_cone,
    random_cone,
    random_invertible,
    rng_for,
)
from .io import to_jsonable

MODES = ("shc", "bimodular", "simplicial", "weak")


@dataclass(frozen=True)
class SearchConfig:
    mode: str
    n: int
    count: int
    seed: int = 0
    m: Optional[int] = None
    lo: int = -2
    hi: int = 2
    max_delta: Optional[int] = None
    log: Optional[str] = None

    def validate(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.lo > self.hi:
            raise ValueError(f"empty entry range [{self.lo}, {self.hi}]")
        if self.m is not None and self.m < self.n:
            raise ValueError("m must be at least n")
        if self.max_delta is not None and self.max_delta < 1:
            raise ValueError("max_delta must be positive")


@dataclass(frozen=True)
class SearchRecord:
    index: int
    seed: int
    mode: str
    A: Optional[tuple]
    verdict: str  # "pass" | "fail" | "skip"
    certificate: dict
    flags: tuple
    timestamp: str

    def to_json(self) -> str:
        rec = to_jsonable(self)
        rec["prng"] = PRNG_NAME
        return json.dumps(rec, sort_keys=True)


@dataclass(frozen=True)
class SearchSummary:
    passed: int
    failed: int
    skipped: int
    records: tuple


def _instance(cfg: SearchConfig, index: int):
    rng = rng_for(cfg.seed, index, cfg.mode)
    m = cfg.m if cfg.m is not None else rng.randint(cfg.n, cfg.n + 2)
    if cfg.mode == "bimodular":
        return rng, random_bimodular_cone(rng, cfg.n, cfg.m)
    if cfg.mode == "simplicial":
        A = random_invertible(rng, cfg.n, cfg.max_delta or 12, cfg.lo, cfg.hi)
        return rng, None if A is None else Cone(A)
    return rng, random_cone(rng, cfg.n, m, cfg.lo, cfg.hi, max_delta=cfg.max_delta)


def _check(cfg: SearchConfig, C: Cone, rng):
    """Return ``(verdict, certificate, flags)`` for one cone."""
    if cfg.mode == "bimodular":
        pairs = [{"h": e.vector, "pair": bimodular_decompose(C, e)}
                 for e in hilbert_basis(C) if not e.trivial]
        return "pass", {"pairs": pairs}, ()
    if cfg.mode == "simplicial":
        rep = simplicial_check(C)
        return "pass", {"delta": rep.delta, "max_height": max(e.height for e in rep.entries),
                        "max_support": max(e.support for e in rep.entries)}, ()
    if cfg.mode == "shc":
        rep = theorem11_router(C)
        cert = {"classification": rep.classification, "k": rep.k,
                "max_height": max(v.coefficient_sum for v in rep.verdicts)}
        if rep.holds:
            return "pass", cert, ()
        bad = [v for v in rep.verdicts if not v.holds]
        cert["violations"] = [{"h": v.element.vector, "lambda": v.coefficients} for v in bad]
        return "fail", cert, ("critical",) if rep.critical else ("counterexample_candidate",)
    # weak: -a is a random nonnegative combination of the rows, so it lies in the dual cone
    while True:
        c = [rng.randint(0, 2) for _ in range(C.m)]
        if any(c):
            break
    a = tuple(-sum(ci * row[k] for ci, row in zip(c, C.A)) for k in range(C.n))
    if not any(a):
        return "skip", {"reason": "a = 0"}, ()
    bad = [e.vector for e in hilbert_basis(C) if not weak_hc_check(C, a, e)]
    if bad:
        return "fail", {"a": a, "violations": bad}, ("counterexample_candidate",)
    return "pass", {"a": a}, ()


def run_one(cfg: SearchConfig, index: int) -> SearchRecord:
    rng, C = _instance(cfg, index)
    stamp = datetime.now(timezone.utc).isoformat()
    if C is None:
        return SearchRecord(index, cfg.seed, cfg.mode, None, "skip", {"reason": "no instance found"}, (), stamp)
    try:
        verdict, cert, flags = _check(cfg, C, rng)
    except CheckFailure as exc:
        verdict, cert, flags = "fail", {"message": str(exc), "instance": exc.instance}, ("critical",)
    return SearchRecord(index, cfg.seed, cfg.mode, C.A, verdict, cert, tuple(flags), stamp)


def search(cfg: SearchConfig) -> SearchSummary:
    """Generate ``cfg.count`` instances, check each, and append one record per instance."""
    cfg.validate()
    handle = open(cfg.log, "a") if cfg.log else None
    records = []
    try:
        for i in range(cfg.count):
            rec = run_one(cfg, i)
            records.append(rec)
            if handle:
                handle.write(rec.to_json() + "\n")
                handle.flush()
    finally:
        if handle:
            handle.close()
    count = {v: sum(1 for r in records if r.verdict == v) for v in ("pass", "fail", "skip")}
    return SearchSummary(count["pass"], count["fail"], count["skip"], tuple(records))


def read_log(path) -> list[dict]:
    """Records from a JSONL log, ordered by index."""
    with open(path) as fh:
        recs = [json.loads(line) for line in fh if line.strip()]
    return sorted(recs, key=lambda r: int(r["index"]))
