from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, settings

from conftest import triangulations
from friezes.frieze import (
    Frieze,
    FriezeError,
    display_position,
    display_rows,
    frieze_from_quiddity,
    frieze_from_triangulation,
    match_window,
    render,
    verify,
    verify_window,
)
from friezes.polygon import quiddity, validate
import oracles

FIXTURES = Path(__file__).parent / "fixtures"
FAN7 = validate(7, [[1, 3], [1, 4], [1, 5], [1, 6]])


def test_square():
    F = frieze_from_triangulation(validate(4, [[1, 3]]))
    assert F.to_json() == {"n": 4, "rows": [[2, 1, 2, 1]], "offset": [0]}
    assert F.quiddity() == (2, 1, 2, 1)


def test_fan_rows_frozen():
    # rows starting at m(0, k), from the continuant oracle
    assert frieze_from_triangulation(FAN7).to_json()["rows"] == [
        [5, 1, 2, 2, 2, 2, 1],
        [4, 1, 3, 3, 3, 1, 4],
        [3, 1, 4, 4, 1, 3, 3],
        [2, 1, 5, 1, 2, 2, 2],
    ]


@given(triangulations(n_max=13))
@settings(max_examples=40, deadline=None)
def test_entries_are_continuants(T):
    q = quiddity(T)
    F = frieze_from_quiddity(q)
    for k in range(0, T.n + 1):
        for i in range(1, T.n + 1):
            assert F.m(i, i + k) == oracles.frieze_entry(q, i, i + k)


@given(triangulations(n_max=11))
@settings(max_examples=30, deadline=None)
def test_pipelines_agree(T):
    A = frieze_from_quiddity(quiddity(T))
    B = frieze_from_triangulation(T)
    assert A == B
    assert verify(B).ok
    assert set(B.ones()) == set(T.diagonals)


def test_quiddity_rejections():
    for q in [(1, 1, 1, 1), (2, 2, 2, 2), (3, 1, 3, 1, 3)]:
        with pytest.raises(FriezeError):
            frieze_from_quiddity(q)
    with pytest.raises(FriezeError):
        frieze_from_quiddity((1, 2, 1))


def test_verify_reports_violation():
    rows = [list(r) for r in frieze_from_triangulation(FAN7).rows]
    rows[3][2] += 1
    broken = Frieze(7, tuple(tuple(r) for r in rows))
    rep = verify(broken, stop_at_first=False)
    assert not rep.ok
    assert any("diamond" in v for v in rep.violations)


def test_verify_reports_non_positive():
    rows = [list(r) for r in frieze_from_triangulation(FAN7).rows]
    rows[2][0] = 0
    rep = verify(Frieze(7, tuple(tuple(r) for r in rows)))
    assert not rep.ok


def test_json_roundtrip():
    F = frieze_from_triangulation(FAN7)
    assert Frieze.from_json(F.to_json()) == F
    with pytest.raises(FriezeError):
        Frieze.from_json({"n": 7, "rows": [[1, 2]]})


def test_glide():
    F = frieze_from_triangulation(FAN7)
    for k in range(8):
        for i in range(1, 8):
            assert F.m(i, i + k) == F.m(i + k, i + 7)


def test_render_is_stable():
    assert render(frieze_from_triangulation(FAN7), 9) == (FIXTURES / "fan7_window9.txt").read_text()


def test_display_positions_interleave():
    assert display_position(1, 2) == 4
    assert display_position(1, 3) % 2 == 1


def test_match_window_finds_shifts():
    F = frieze_from_triangulation(FAN7)
    window = [sorted((x, v) for x, v in row.items() if 3 <= x < 13) for row in display_rows(F)]
    hits = match_window(F, window)
    assert {"shift": 0, "upside_down": False, "mirror": False} in hits
    assert verify_window(window).ok
    shifted = [[(x + 4, v) for x, v in row] for row in window]
    assert {"shift": 10, "upside_down": False, "mirror": False} in match_window(F, shifted)
    wrong = [list(r) for r in window]
    wrong[0][0] = (0, 99)
    assert match_window(F, wrong) == []


def test_verify_window_detects_break():
    assert verify_window([[(0, 2), (2, 1)], [(1, 1)]]).ok
    assert not verify_window([[(0, 3), (2, 1)], [(1, 1), (3, 3)], [(2, 1)]]).ok
