"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import os
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from friezes import golden  # noqa: E402
from friezes.checks import run_suite  # noqa: E402
from friezes.polygon import catalan  # noqa: E402
from friezes.strings import fit_admissibility  # noqa: E402

JOBS = os.cpu_count() or 1


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def criterion_1():
    start = time.perf_counter()
    rep = run_suite(10, checks=["pipelines"], jobs=JOBS)
    elapsed = time.perf_counter() - start
    expected = {n: catalan(n - 2) for n in range(4, 11)}
    ok = rep.ok and rep.counts == expected and sum(expected.values()) == 2054 and elapsed < 120
    return ok, f"friezes from quiddity and from submodule counts agree and verify on 2054 triangulations, n = 4..10 ({elapsed:.1f}s, limit 120s)"


def criterion_2():
    start = time.perf_counter()
    rep = run_suite(10, checks=["deltas"], jobs=JOBS)
    elapsed = time.perf_counter() - start
    bad = rep.failures["deltas"]
    ok = not bad and elapsed < 600
    detail = f"delta equals recomputed difference at every arc, every flip, n <= 10 ({elapsed:.1f}s, limit 600s)"
    if bad:
        detail += f"; first failure: {bad[0]}"
    return ok, detail


def criterion_3():
    hits = golden.search_golden()
    T, labels = golden.golden_triangulation()
    found = any(hit == T for hit, _ in hits)
    rep = golden.reproduce(T, labels)
    failed = [name for name, (ok, _) in rep.checks.items() if not ok]
    ok = found and rep.ok
    pairs = rep.checks["frieze entries after flip"][1].split(",")[0]
    return ok, f"search: {len(hits)} labelled hits; grid, {pairs}, AR labels" + (f"; failed {failed}" if failed else "")


def criterion_4():
    worked = golden.worked_examples()
    ok = all(w["delta"] == w["expected_delta"] and w["values"] == w["expected_values"]
             and w["region"] == w["expected_region"] for w in worked)
    detail = "; ".join(f"{w['region']} {w['values']} -> {w['delta']}" for w in worked)
    return ok, detail


def criterion_5():
    rep = fit_admissibility(10)
    ok = "odd-gaps" in rep.fitted
    return ok, f"{rep.strings} strings (both orientations), exact: {', '.join(rep.fitted) or 'none'}"


def criterion_6():
    rep = run_suite(8, checks=["support"], jobs=JOBS)
    bad = rep.failures["support"]
    return not bad, f"{sum(rep.counts.values())} triangulations, n <= 8, {len(bad)} violations"


def criterion_7():
    rep = run_suite(9, checks=["pipelines", "properties"], jobs=JOBS)
    bad = rep.failures["pipelines"] + rep.failures["properties"]
    return not bad, (f"involution, quiddity sum, ones at diagonals, quiver mutation, closure and "
                     f"relabelling symmetry on {sum(rep.counts.values())} triangulations, n <= 9")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


@pytest.mark.parametrize("number", range(1, 8))
def test_criterion(number):
    ok, detail = CRITERIA[number - 1]()
    record(number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for number, check in enumerate(CRITERIA, start=1):
        ok, detail = check()
        record(number, ok, detail)
        print(ACCEPTANCE_LINES[-1], flush=True)
        status |= not ok
    sys.exit(status)
