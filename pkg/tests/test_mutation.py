from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import triangulations
from friezes.frieze import frieze_from_triangulation, verify
from friezes.mutation import (
    ADJACENT,
    BD,
    CE,
    FIXED,
    REGIONS,
    check_triangulation,
    classify,
    classify_by_support,
    delta,
    delta_from_values,
    memberships,
    mutate_frieze,
    project,
    rays,
    support_change_check,
)
from friezes.polygon import all_arcs, enumerate_triangulations, flip, quadrilateral, validate
from friezes.strings import cc_entry


def flip_case(data, T):
    return data.draw(st.sampled_from(sorted(T.diagonals)))


def test_square_flip(square):
    F2, reports = mutate_frieze(square, (1, 3))
    assert F2.to_json()["rows"] == [[1, 2, 1, 2]]
    by_arc = {r.arc: r for r in reports}
    assert by_arc[(1, 3)].delta == -1 and by_arc[(2, 4)].delta == 1
    assert all(by_arc[x].region == FIXED for x in [(1, 2), (2, 3), (3, 4), (1, 4)])


def test_square_rays_degenerate(square):
    R = rays(square, (1, 3))
    # every framing side is a boundary segment, so b collapses to a itself
    assert R["b"] == [(1, 3)]
    assert R["c"] == [(1, 3)] and R["d"] == [(1, 3)] and R["e"] == [(1, 3)]
    assert R["c^a"] == [(2, 4)] and R["b_a"] == [(2, 4)]


@given(triangulations(n_max=11), st.data())
@settings(max_examples=50, deadline=None)
def test_rays_fix_one_endpoint(T, data):
    a = flip_case(data, T)
    quad = quadrilateral(T, a)
    corner = {"b": quad.q, "c": quad.q, "d": quad.p, "e": quad.p,
              "c^a": quad.r, "e^a": quad.s, "b_a": quad.s, "d_a": quad.r}
    for name, arcs in rays(T, a, quad).items():
        assert arcs
        assert all(corner[name] in arc for arc in arcs)
    assert "e" in memberships(T, a, a, quad)


@given(triangulations(n_max=11), st.data())
@settings(max_examples=50, deadline=None)
def test_classifiers_agree(T, data):
    a = flip_case(data, T)
    quad = quadrilateral(T, a)
    for arc in all_arcs(T.n):
        region = classify(T, a, arc, quad)
        assert region in REGIONS
        assert region == classify_by_support(T, a, arc, quad)


@given(triangulations(n_max=11), st.data())
@settings(max_examples=50, deadline=None)
def test_projections_lie_on_rays(T, data):
    a = flip_case(data, T)
    quad = quadrilateral(T, a)
    allowed = set().union(*rays(T, a, quad).values()) | {quad.b, quad.c, quad.d, quad.e}
    for arc in all_arcs(T.n):
        ps = project(T, a, arc, quad)
        assert set(ps.arcs.values()) <= allowed
        for p in ps.arcs.values():
            assert set(p) & set(arc) or ps.region not in ADJACENT


@given(triangulations(n_max=11), st.data())
@settings(max_examples=50, deadline=None)
def test_delta_matches_recomputation(T, data):
    a = flip_case(data, T)
    T2, _ = flip(T, a)
    F = frieze_from_triangulation(T)
    for arc in all_arcs(T.n):
        assert delta(T, a, arc, F).delta == cc_entry(T, arc) - cc_entry(T2, arc)


@given(triangulations(n_max=11), st.data())
@settings(max_examples=30, deadline=None)
def test_mutated_frieze_is_a_frieze(T, data):
    a = flip_case(data, T)
    F2, reports = mutate_frieze(T, a)
    assert verify(F2).ok
    assert F2 == frieze_from_triangulation(flip(T, a)[0])
    assert all(r.delta == 0 for r in reports if r.region == FIXED)


@given(triangulations(n_max=11), st.data())
@settings(max_examples=30, deadline=None)
def test_relabelling_and_closures(T, data):
    a = flip_case(data, T)
    F = frieze_from_triangulation(T)
    q0, q1 = quadrilateral(T, a), quadrilateral(T, a, swap=True)
    for arc in all_arcs(T.n):
        assert delta(T, a, arc, F, q0).delta == delta(T, a, arc, F, q1).delta
    a2 = flip(T, a)[1]
    for arc in (a, a2):
        assert classify(T, a, arc, q0) == CE
        assert delta(T, a, arc, F, q0).delta == delta(T, a, arc, F, q0, region=BD).delta
    assert delta(T, a, a, F).delta == -1
    assert delta(T, a, a2, F).delta == 1


def test_region_override_is_checked():
    T = validate(6, [[1, 3], [1, 4], [4, 6]])
    with pytest.raises(ValueError):
        project(T, (1, 4), (2, 5), region=BD)


def test_far_convention_is_rejected():
    """Swapping which projection counts as the first path breaks BE/CD."""
    mismatches = 0
    for T in enumerate_triangulations(7):
        F = frieze_from_triangulation(T)
        for a in T.diagonals:
            F2 = frieze_from_triangulation(flip(T, a)[0])
            for arc in all_arcs(7):
                r = delta(T, a, arc, F)
                if r.region in ("BE", "CD"):
                    alt = delta_from_values(r.region, r.values, first="far")
                    mismatches += alt != F.entry_at(arc) - F2.entry_at(arc)
    assert mismatches > 0


@pytest.mark.parametrize("n", [5, 6, 7])
def test_exhaustive_small(n):
    for T in enumerate_triangulations(n):
        assert check_triangulation(T) == []


@pytest.mark.parametrize("n", [5, 6, 7])
def test_support_change_small(n):
    for T in enumerate_triangulations(n):
        for a in T.diagonals:
            rep = support_change_check(T, a)
            assert rep.ok, rep.failures[:3]


def test_suite_rejects_unknown_check():
    from friezes.checks import run_suite

    with pytest.raises(ValueError):
        run_suite(5, checks=["nope"], jobs=1)
