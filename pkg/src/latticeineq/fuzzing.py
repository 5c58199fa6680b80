"""Seeded random soundness sweep over all eight inequality checkers.

Each instance draws a signed sparse function, its nonnegative twin and an
independent random set inside a window, runs every checker plus the exact
per-line bound and the three-term projection chain, and accumulates deficits.
A violation of any relation is a theorem counterexample, i.e. an
implementation bug; the summary retains the worst (smallest-deficit) input
per inequality either way.

The random stream of instance k is derived from (seed << 32) + k, so
summaries are bit-identical no matter how instances are scheduled; the
optional process pool (capped by LATTICE_INEQ_THREADS) reduces chunks in
index order.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .certify import (
    DEFAULT_TOL,
    Inequality,
    Relation,
    check_bl,
    check_gn,
    check_isoperimetric,
    check_log_bl,
    check_log_sobolev,
    check_loomis_whitney,
    check_sobolev,
    projection_chain,
)
from .core import LatticeSet, SparseFunction, pointwise_line_bound
from .errors import InvalidInputError

P_CYCLE = (Fraction(1, 2), Fraction(1), Fraction(2))


@dataclass
class IneqStats:
    count: int = 0
    violations: int = 0
    min_deficit: Optional[float] = None
    max_deficit: Optional[float] = None
    worst_index: Optional[int] = None
    worst_input: Optional[dict] = None

    def update(self, deficit: float, violated: bool, index: int, echo_fn):
        self.count += 1
        if violated:
            self.violations += 1
        if self.max_deficit is None or deficit > self.max_deficit:
            self.max_deficit = deficit
        if self.min_deficit is None or (deficit, index) < (self.min_deficit, self.worst_index):
            self.min_deficit = deficit
            self.worst_index = index
            self.worst_input = echo_fn()

    def merge(self, other: "IneqStats"):
        self.count += other.count
        self.violations += other.violations
        if other.max_deficit is not None and (
            self.max_deficit is None or other.max_deficit > self.max_deficit
        ):
            self.max_deficit = other.max_deficit
        if other.min_deficit is not None and (
            self.min_deficit is None
            or (other.min_deficit, other.worst_index) < (self.min_deficit, self.worst_index)
        ):
            self.min_deficit = other.min_deficit
            self.worst_index = other.worst_index
            self.worst_input = other.worst_input


@dataclass
class FuzzSummary:
    seed: int
    n: int
    count: int
    window: int
    q: float
    denominator: int
    tol: float
    per_inequality: dict = field(default_factory=dict)
    line_bound_checks: int = 0
    line_bound_failures: int = 0
    chain_checks: int = 0
    chain_failures: int = 0

    @property
    def violations(self) -> int:
        return (
            sum(s.violations for s in self.per_inequality.values())
            + self.line_bound_failures
            + self.chain_failures
        )

    def merge(self, other: "FuzzSummary"):
        for key, stats in other.per_inequality.items():
            self.per_inequality.setdefault(key, IneqStats()).merge(stats)
        self.line_bound_checks += other.line_bound_checks
        self.line_bound_failures += other.line_bound_failures
        self.chain_checks += other.chain_checks
        self.chain_failures += other.chain_failures


def _sample_support(rng: random.Random, n: int, window: int, q: float) -> list:
    picked = [
        z
        for z in itertools.product(range(window), repeat=n)
        if rng.random() < q
    ]
    if not picked:
        picked = [tuple(rng.randrange(window) for _ in range(n))]
    return picked


def _sample_function(
    rng: random.Random, n: int, window: int, q: float, denominator: int, signed: bool
) -> SparseFunction:
    entries = {}
    for z in _sample_support(rng, n, window, q):
        v = Fraction(rng.randint(1, denominator), denominator)
        if signed and rng.random() < 0.5:
            v = -v
        entries[z] = v
    return SparseFunction._from_clean(n, entries)


def run_instance(seed: int, index: int, n: int, window: int, q: float,
                 denominator: int, tol: float) -> dict:
    """All checks for one instance; returns deficits and failure flags."""
    rng = random.Random((seed << 32) + index)
    f_signed = _sample_function(rng, n, window, q, denominator, signed=True)
    f = f_signed.abs()
    A = LatticeSet(n, _sample_support(rng, n, window, q))
    p = P_CYCLE[index % len(P_CYCLE)]

    reports = {
        Inequality.GN: check_gn(f_signed, tol),
        Inequality.SOBOLEV: check_sobolev(f_signed, tol),
        Inequality.LOG_SOBOLEV_DIR: check_log_sobolev(
            f, p, directional=True, tol=tol, normalize=True
        ),
        Inequality.LOG_SOBOLEV: check_log_sobolev(
            f, p, directional=False, tol=tol, normalize=True
        ),
        Inequality.BL: check_bl(f, tol),
        Inequality.LOG_BL: check_log_bl(f, p, tol=tol, normalize=True),
        Inequality.ISOPERIMETRIC: check_isoperimetric(A, tol),
        Inequality.LW: check_loomis_whitney(A, tol),
    }

    line_ok = all(
        pointwise_line_bound(f_signed, i).ok for i in range(1, n + 1)
    )
    lo, mid, hi = projection_chain(f_signed)
    chain_ok = (
        lo - mid <= tol * max(1.0, abs(lo), abs(mid))
        and mid - hi <= tol * max(1.0, abs(mid), abs(hi))
    )
    return {
        "reports": reports,
        "line_ok": line_ok,
        "chain_ok": chain_ok,
        "function": f_signed,
        "set": A,
    }


def _fuzz_range(seed, n, window, q, denominator, tol, start, stop) -> FuzzSummary:
    summary = FuzzSummary(
        seed=seed, n=n, count=stop - start, window=window, q=q,
        denominator=denominator, tol=tol,
    )
    for key in Inequality:
        summary.per_inequality[key.value] = IneqStats()
    for index in range(start, stop):
        outcome = run_instance(seed, index, n, window, q, denominator, tol)
        for key, report in outcome["reports"].items():
            echo = outcome["set"] if key in (
                Inequality.ISOPERIMETRIC, Inequality.LW
            ) else outcome["function"]
            summary.per_inequality[key.value].update(
                report.deficit,
                report.relation is Relation.VIOLATED,
                index,
                lambda e=echo: _echo(e),
            )
        summary.line_bound_checks += 1
        summary.line_bound_failures += not outcome["line_ok"]
        summary.chain_checks += 1
        summary.chain_failures += not outcome["chain_ok"]
    return summary


def _echo(obj):
    if isinstance(obj, SparseFunction):
        return {
            "dim": obj.dim,
            "entries": [{"z": list(z), "v": str(v)} for z, v in obj.items()],
        }
    return {"dim": obj.dim, "points": [list(z) for z in obj.sorted_points()]}


def _worker(args):
    return _fuzz_range(*args)


def resolve_threads(threads: Optional[int]) -> int:
    if threads is None:
        threads = int(os.environ.get("LATTICE_INEQ_THREADS", "1") or "1")
    return max(1, threads)


def fuzz(
    count: int,
    n: int,
    seed: int = 0,
    window: int = 5,
    q: float = 0.4,
    denominator: int = 64,
    tol: float = DEFAULT_TOL,
    threads: Optional[int] = None,
) -> FuzzSummary:
    """Run `count` random instances at dimension n; see module docstring."""
    if count < 1:
        raise InvalidInputError("fuzz count must be >= 1")
    if n < 2:
        raise InvalidInputError("fuzzing needs ambient dimension >= 2")
    if window < 1:
        raise InvalidInputError("window side must be >= 1")
    if not 0 < q <= 1:
        raise InvalidInputError("inclusion probability must be in (0, 1]")
    if denominator < 1:
        raise InvalidInputError("denominator must be >= 1")
    threads = resolve_threads(threads)

    if threads == 1:
        summary = _fuzz_range(seed, n, window, q, denominator, tol, 0, count)
        summary.count = count
        return summary

    from concurrent.futures import ProcessPoolExecutor

    chunk = max(256, -(-count // (threads * 4)))
    spans = [(start, min(start + chunk, count)) for start in range(0, count, chunk)]
    args = [(seed, n, window, q, denominator, tol, a, b) for a, b in spans]
    total = FuzzSummary(
        seed=seed, n=n, count=count, window=window, q=q,
        denominator=denominator, tol=tol,
    )
    for key in Inequality:
        total.per_inequality[key.value] = IneqStats()
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_worker, args):  # map preserves chunk order
            total.merge(part)
    return total
