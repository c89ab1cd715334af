from __future__ import annotations

import json
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import triangulations
from friezes.polygon import (
    InvalidTriangulation,
    Triangulation,
    all_diagonals,
    apexes,
    crosses,
    enumerate_triangulations,
    flip,
    make_arc,
    mutate_quiver,
    parse_arc,
    parse_arc_list,
    quadrilateral,
    quiddity,
    quiver_of_triangulation,
    triangulation_from_quiddity,
    validate,
)
import oracles


def test_validate_accepts_square():
    T = validate(4, [[1, 3]])
    assert T.diagonals == {(1, 3)}
    assert str(T) == "T(n=4; 1-3)"


@pytest.mark.parametrize(
    "n, diagonals, fragment",
    [
        (3, [], "n >= 4"),
        (5, [[1, 2], [1, 3]], "boundary"),
        (5, [[1, 3], [3, 1]], "repeat"),
        (5, [[1, 3]], "expected 2"),
        (5, [[1, 3], [2, 4]], "cross"),
        (5, [[1, 9], [1, 3]], "range"),
    ],
)
def test_validate_rejects(n, diagonals, fragment):
    with pytest.raises(InvalidTriangulation, match=fragment):
        validate(n, diagonals)


def test_validate_names_crossing_pair():
    with pytest.raises(InvalidTriangulation, match=r"\[1, 4\].*\[2, 5\]|\[2, 5\].*\[1, 4\]"):
        validate(6, [[1, 4], [2, 5], [1, 3]])


@pytest.mark.parametrize("n", range(4, 12))
def test_enumeration_is_catalan(n):
    Ts = enumerate_triangulations(n)
    assert len(Ts) == oracles.catalan(n - 2)
    assert len({T.key for T in Ts}) == len(Ts)
    assert [T.key for T in Ts] == sorted(T.key for T in Ts)


def test_enumeration_bound():
    with pytest.raises(ValueError):
        enumerate_triangulations(15)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_crossing_matches_geometry(n):
    for d1, d2 in combinations(all_diagonals(n), 2):
        assert crosses(d1, d2) == oracles.chords_cross(d1, d2, n), (d1, d2)


def test_flip_square(square):
    T2, new = flip(square, (1, 3))
    assert new == (2, 4)
    assert T2.diagonals == {(2, 4)}


@given(triangulations(), st.data())
@settings(max_examples=60, deadline=None)
def test_flip_is_involution(T, data):
    a = data.draw(st.sampled_from(sorted(T.diagonals)))
    T2, new = flip(T, a)
    assert new not in T.diagonals
    validate(T2.n, T2.diagonals)
    assert flip(T2, new) == (T, a)


@given(triangulations())
@settings(max_examples=60, deadline=None)
def test_quiddity_sum_and_roundtrip(T):
    q = quiddity(T)
    assert sum(q) == 3 * T.n - 6
    assert all(x >= 1 for x in q)
    assert triangulation_from_quiddity(q) == T


def test_quiddity_rejects_non_sequences():
    for q in [(1, 1, 1, 1), (2, 2, 2, 2), (1, 3, 1, 3)]:
        with pytest.raises(InvalidTriangulation):
            triangulation_from_quiddity(q)


def test_quadrilateral_labels():
    T = validate(6, [[1, 3], [1, 4], [4, 6]])
    quad = quadrilateral(T, (1, 4))
    assert (quad.p, quad.q, quad.s, quad.r) == (1, 4, 3, 6)
    assert (quad.b, quad.c, quad.d, quad.e) == ((1, 6), (1, 3), (3, 4), (4, 6))
    mirrored = quadrilateral(T, (1, 4), swap=True)
    assert (mirrored.b, mirrored.c, mirrored.d, mirrored.e) == (quad.d, quad.e, quad.b, quad.c)


@given(triangulations(), st.data())
@settings(max_examples=60, deadline=None)
def test_quadrilateral_arrows(T, data):
    a = data.draw(st.sampled_from(sorted(T.diagonals)))
    Q = quiver_of_triangulation(T)
    for swap in (False, True):
        quad = quadrilateral(T, a, swap=swap)
        for x, y in ((quad.b, a), (a, quad.c), (quad.d, a), (a, quad.e)):
            if x in T.diagonals and y in T.diagonals:
                assert (x, y) in Q.arrows
        s, r = apexes(T, a)
        assert {quad.r, quad.s} == {r, s}


def test_quiver_of_fan():
    # fan at vertex 1 of the hexagon: a linearly oriented A3
    T = validate(6, [[1, 3], [1, 4], [1, 5]])
    Q = quiver_of_triangulation(T)
    assert Q.arrows == {((1, 4), (1, 3)), ((1, 5), (1, 4))}
    assert Q.relations == frozenset()


def test_quiver_internal_triangle():
    T = validate(6, [[1, 3], [3, 5], [1, 5]])
    Q = quiver_of_triangulation(T)
    assert len(Q.arrows) == 3
    assert len(Q.three_cycles()) == 1
    assert len(Q.relations) == 3


@given(triangulations(), st.data())
@settings(max_examples=60, deadline=None)
def test_quiver_shape_and_mutation(T, data):
    Q = quiver_of_triangulation(T)
    for x, y in Q.arrows:
        assert x != y and (y, x) not in Q.arrows
    a = data.draw(st.sampled_from(sorted(T.diagonals)))
    T2, new = flip(T, a)
    mutated = mutate_quiver(Q, a).relabel({v: new if v == a else v for v in Q.vertices})
    assert mutated.arrows == quiver_of_triangulation(T2).arrows
    assert mutated.relations == quiver_of_triangulation(T2).relations


def test_arc_parsing():
    assert parse_arc("7-3") == (3, 7)
    assert parse_arc_list("1-3, 4-1") == [(1, 3), (1, 4)]
    assert make_arc(15, 3, 14) == (1, 3)
    with pytest.raises(ValueError):
        parse_arc("1:3")


def test_json_roundtrip():
    T = validate(7, [[1, 3], [3, 5], [1, 5], [5, 7]])
    data = T.to_json()
    assert data == {"n": 7, "diagonals": [[1, 3], [1, 5], [3, 5], [5, 7]]}
    assert Triangulation.from_json(json.dumps(data)) == T
