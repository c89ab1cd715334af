"""Exhaustive invariant checks over all triangulations up to a size bound.

Work is split into (n, slice) shards. Shards run in a process pool when
``jobs > 1`` and results are merged in shard order, so the report does not
depend on the number of workers.
"""

from __future__ import annotations

import multiprocessing as mp
import os
from dataclasses import dataclass, field

from .frieze import frieze_from_quiddity, frieze_from_triangulation, verify
from .mutation import (
    BD,
    check_triangulation,
    delta,
    support_change_check,
)
from .polygon import (
    all_arcs,
    catalan,
    enumerate_triangulations,
    flip,
    mutate_quiver,
    quadrilateral,
    quiddity,
    quiver_of_triangulation,
)

CHECKS = ("pipelines", "deltas", "support", "properties")
SHARD_SIZE = 64


def check_pipelines(T) -> list[str]:
    out = []
    A = frieze_from_quiddity(quiddity(T))
    B = frieze_from_triangulation(T)
    if A != B:
        out.append(f"{T}: quiddity and Caldero-Chapoton friezes differ")
    for name, F in (("quiddity", A), ("ccmap", B)):
        rep = verify(F)
        if not rep.ok:
            out.append(f"{T}: {name} frieze fails verify: {rep.violations[0]}")
    if set(B.ones()) != set(T.diagonals):
        out.append(f"{T}: interior ones {sorted(B.ones())} are not the diagonals")
    if sum(quiddity(T)) != 3 * T.n - 6:
        out.append(f"{T}: quiddity sum {sum(quiddity(T))} != {3 * T.n - 6}")
    return out


def check_properties(T) -> list[str]:
    """Flip involution, quiver shape and mutation, closure and relabelling symmetry."""
    out = []
    Q = quiver_of_triangulation(T)
    for x, y in Q.arrows:
        if x == y or (y, x) in Q.arrows:
            out.append(f"{T}: loop or 2-cycle at {list(x)}, {list(y)}")
    F = frieze_from_triangulation(T)
    for a in sorted(T.diagonals):
        T2, a2 = flip(T, a)
        if flip(T2, a2)[0] != T:
            out.append(f"{T}: flipping {list(a)} twice does not return")
        want = mutate_quiver(Q, a).relabel({v: a2 if v == a else v for v in Q.vertices})
        if want.arrows != quiver_of_triangulation(T2).arrows:
            out.append(f"{T}: quiver of the flip at {list(a)} is not the mutated quiver")
        q0, q1 = quadrilateral(T, a), quadrilateral(T, a, swap=True)
        for arc in all_arcs(T.n):
            if delta(T, a, arc, F, q0).delta != delta(T, a, arc, F, q1).delta:
                out.append(f"{T}: relabelling changes delta at {list(arc)} for {list(a)}")
        for arc in (a, a2):
            if delta(T, a, arc, F, q0).delta != delta(T, a, arc, F, q0, region=BD).delta:
                out.append(f"{T}: closures disagree at {list(arc)} for {list(a)}")
    return out


def check_support(T) -> list[str]:
    out = []
    for a in sorted(T.diagonals):
        out += support_change_check(T, a).failures
    return out


RUNNERS = {
    "pipelines": check_pipelines,
    "deltas": check_triangulation,
    "support": check_support,
    "properties": check_properties,
}


@dataclass
class SuiteReport:
    n_min: int
    n_max: int
    checks: tuple[str, ...]
    counts: dict[int, int] = field(default_factory=dict)
    failures: dict[str, list[str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def to_json(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "checks": list(self.checks),
            "triangulations": {str(n): c for n, c in sorted(self.counts.items())},
            "ok": self.ok,
            "failures": {k: v for k, v in self.failures.items()},
        }

    def lines(self) -> list[str]:
        total = sum(self.counts.values())
        out = [f"checked {total} triangulations, n = {self.n_min}..{self.n_max}"]
        for name in self.checks:
            bad = self.failures.get(name, [])
            out.append(f"{name}: {'ok' if not bad else f'{len(bad)} violation(s)'}")
            out += ["  " + line for line in bad[:5]]
        return out


def _run_shard(task):
    n, start, stop, checks = task
    Ts = enumerate_triangulations(n)[start:stop]
    return {name: [msg for T in Ts for msg in RUNNERS[name](T)] for name in checks}


def shards(n_min: int, n_max: int, checks, size: int = SHARD_SIZE):
    for n in range(n_min, n_max + 1):
        total = catalan(n - 2)
        for start in range(0, total, size):
            yield (n, start, min(start + size, total), tuple(checks))


def run_suite(n_max: int, n_min: int = 4, checks=CHECKS, jobs: int | None = None) -> SuiteReport:
    checks = tuple(checks)
    unknown = set(checks) - set(RUNNERS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    jobs = jobs or os.cpu_count() or 1
    tasks = list(shards(n_min, n_max, checks))
    if jobs == 1:
        merged = [_run_shard(t) for t in tasks]
    else:
        with mp.get_context("spawn").Pool(jobs) as pool:
            merged = pool.map(_run_shard, tasks, chunksize=1)
    rep = SuiteReport(n_min, n_max, checks)
    for n in range(n_min, n_max + 1):
        rep.counts[n] = catalan(n - 2)
    for name in checks:
        rep.failures[name] = [msg for part in merged for msg in part[name]]
    return rep
