"""The worked 14-gon example: its labelled quivers and the search that recovers it.

The triangulation is only drawn as a picture, so it is recovered as the
triangulation of the 14-gon whose quiver is isomorphic to the displayed one.
The isomorphism also transports the diagonal labels 1..11.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .frieze import frieze_from_triangulation, match_window
from .mutation import delta, mutate_frieze
from .polygon import (
    Arc,
    QuiverWithRelations,
    Triangulation,
    _triangulate,
    Quadrilateral,
    all_arcs,
    flip,
    make_arc,
    quadrilateral,
    quiver_of_triangulation,
    validate,
)
from .strings import BoundaryObject, ShiftedProjective, StringModule, module_of_arc

GOLDEN_N = 14

# Quiver Q of the example, as displayed (diagonal labels 1..11).
Q_ARROWS = (
    (7, 8), (8, 3), (3, 7),
    (1, 2), (2, 3), (3, 1),
    (2, 9), (9, 10), (10, 2),
    (1, 5), (5, 4), (4, 1),
    (5, 6), (10, 11),
)

# Quiver Q' after flipping diagonal 1, as displayed.
Q_PRIME_ARROWS = (
    (7, 8), (8, 3), (3, 7),
    (3, 5), (5, 1), (1, 3),
    (2, 9), (9, 10), (10, 2),
    (2, 1), (1, 4), (4, 2),
    (5, 6), (10, 11),
)


def labelled_quiver(arrows) -> QuiverWithRelations:
    verts = frozenset(v for arrow in arrows for v in arrow)
    Q = QuiverWithRelations(verts, frozenset(arrows), frozenset())
    rels = set()
    for x, y, z in Q.three_cycles():
        rels |= {(x, y, z), (y, z, x), (z, x, y)}
    return QuiverWithRelations(verts, Q.arrows, frozenset(rels))


def to_digraph(Q: QuiverWithRelations) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(Q.vertices)
    G.add_edges_from(Q.arrows)
    return G


def quiver_isomorphisms(Q1: QuiverWithRelations, Q2: QuiverWithRelations) -> list[dict]:
    """All vertex bijections Q1 -> Q2 carrying arrows onto arrows."""
    matcher = DiGraphMatcher(to_digraph(Q1), to_digraph(Q2))
    return list(matcher.isomorphisms_iter())


def _signature(Q: QuiverWithRelations) -> tuple:
    degs = sorted(
        (sum(1 for a in Q.arrows if a[1] == v), sum(1 for a in Q.arrows if a[0] == v))
        for v in Q.vertices
    )
    return len(Q.arrows), tuple(degs)


@lru_cache(maxsize=None)
def search_golden(target_arrows=Q_ARROWS, n: int = GOLDEN_N) -> tuple[tuple[Triangulation, dict], ...]:
    """Every triangulation of the n-gon with quiver isomorphic to the target.

    Returns (T, labels) pairs where labels maps each displayed label to a
    diagonal of T.
    """
    target = labelled_quiver(target_arrows)
    sig = _signature(target)
    cycles = len(target.three_cycles())
    hits = []
    for key in _triangulate(tuple(range(1, n + 1))):
        T = Triangulation(n, frozenset(key))
        tris = T.triangles()
        if sum(1 for t in tris if _internal(t, T)) != cycles:
            continue
        Q = quiver_of_triangulation(T)
        if _signature(Q) != sig:
            continue
        for iso in quiver_isomorphisms(target, Q):
            hits.append((T, dict(sorted(iso.items()))))
    hits.sort(key=lambda h: (h[0].key, sorted(h[1].items())))
    return tuple(hits)


def _internal(tri, T: Triangulation) -> bool:
    u, v, w = tri
    return (u, v) in T.diagonals and (v, w) in T.diagonals and (u, w) in T.diagonals


def fixture_dir() -> Path:
    env = os.environ.get("FRIEZE_SEED_GOLDEN")
    if env:
        return Path(env)
    return Path(__file__).with_name("data")


def load_fixture(name: str):
    with open(fixture_dir() / name) as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def golden_triangulation() -> tuple[Triangulation, dict]:
    """The stored 14-gon triangulation and its label map, re-validated on load."""
    data = load_fixture("golden_14gon.json")
    T = validate(data["n"], data["diagonals"])
    labels = {int(k): tuple(v) for k, v in data["labels"].items()}
    Q = quiver_of_triangulation(T)
    relabelled = Q.relabel({v: k for k, v in labels.items()})
    if relabelled.arrows != labelled_quiver(Q_ARROWS).arrows:
        raise ValueError("stored golden triangulation does not carry the displayed quiver")
    return T, labels


def label_of(labels: dict) -> dict[Arc, int]:
    return {arc: k for k, arc in labels.items()}


def figures() -> dict:
    return load_fixture("figures.json")


def window_arc(n: int, placement: dict, x: int, y: int, rows: int) -> Arc:
    """Arc under cell (x, y) of a drawn window of ``rows`` interior rows.

    y may be -1 or ``rows`` for the bordering rows of ones.
    """
    k = (rows - 1 - y if placement["upside_down"] else y) + 2
    xx = ((-x if placement["mirror"] else x) + placement["shift"]) % (2 * n)
    i = (xx - k) // 2
    return make_arc(i, i + k, n)


def interior_window(rows) -> list[list[tuple[int, int]]]:
    return [[(x, before) for x, before, _ in row] for row in rows]


@dataclass
class GoldenReport:
    triangulation: Triangulation
    labels: dict
    checks: dict = field(default_factory=dict)  # name -> (ok, detail)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())


def reproduce(T: Triangulation | None = None, labels: dict | None = None) -> GoldenReport:
    """Check the stored (or given) 14-gon against every transcribed figure."""
    if T is None:
        T, labels = golden_triangulation()
    figs = figures()
    n = T.n
    rep = GoldenReport(T, labels)
    Q = quiver_of_triangulation(T)
    named = Q.relabel(label_of(labels))
    rep.checks["quiver"] = (named.arrows == labelled_quiver(Q_ARROWS).arrows, "Q")
    a = labels[1]
    T2, a2 = flip(T, a)
    labels2 = {k: (a2 if k == 1 else v) for k, v in labels.items()}
    named2 = quiver_of_triangulation(T2).relabel(label_of(labels2))
    rep.checks["flipped quiver"] = (named2.arrows == labelled_quiver(Q_PRIME_ARROWS).arrows, "Q'")

    F = frieze_from_triangulation(T)
    cat = [[tuple(c) for c in row] for row in figs["category_frieze"]]
    hits = match_window(F, cat)
    rep.checks["category frieze"] = (bool(hits), f"{len(hits)} placement(s)")

    fe = figs["frieze_entries"]
    inner = fe[1:-1]
    hits = match_window(F, interior_window(inner))
    F2 = frieze_from_triangulation(T2)
    F2_pred, _ = mutate_frieze(T, a, F)
    pairs_ok, pair_detail = bool(hits), f"{len(hits)} placement(s)"
    placement = hits[0] if hits else None
    if placement:
        wrong = []
        checked = 0
        for y, row in enumerate(inner):
            for x, before, after in row:
                arc = window_arc(n, placement, x, y, len(inner))
                want = before if after is None else after
                checked += after is not None
                if F2.entry_at(arc) != want or F2_pred.entry_at(arc) != want:
                    wrong.append((x, y, before, want, F2.entry_at(arc)))
        pairs_ok = not wrong
        pair_detail = f"{checked} black->red pairs, mismatches {wrong}"
    rep.checks["frieze entries after flip"] = (pairs_ok, pair_detail)

    if placement:
        arc_label = label_of(labels)
        wrong = []
        for y, row in enumerate(figs["ar_quiver"]):
            for x, obj in row:
                arc = window_arc(n, placement, x, y - 1, len(inner))
                got = _describe(T, arc, arc_label, Q)
                if not _same_object(obj, got):
                    wrong.append((x, y, obj, got))
        rep.checks["AR labels"] = (not wrong, f"mismatches {wrong}")
    return rep


def _describe(T, arc, arc_label, Q) -> dict:
    M = module_of_arc(T, arc, Q)
    if isinstance(M, BoundaryObject):
        return {"boundary": list(arc)}
    if isinstance(M, ShiftedProjective):
        return {"shifted": arc_label[tuple(arc)]}
    return {"support": sorted(arc_label[v] for v in M.walk)}


def _same_object(drawn: dict, got: dict) -> bool:
    if "boundary" in drawn:
        return "boundary" in got
    if "shifted" in drawn:
        return got.get("shifted") == drawn["shifted"]
    factors = sorted(v for layer in drawn["layers"] for v in layer)
    return got.get("support") == factors


def freeze(path: Path | None = None) -> dict:
    """Search, then write the first hit as the golden fixture."""
    T, labels = search_golden()[0]
    data = {
        "n": T.n,
        "diagonals": [list(d) for d in T.key],
        "labels": {str(k): list(v) for k, v in sorted(labels.items())},
    }
    path = path or fixture_dir() / "golden_14gon.json"
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
    return data


# The three worked corrections: drawn module, expected region, the four
# values in the order they are multiplied out, and the result.
WORKED = [
    ("4/10 1/11 2", "BC", ("near+", "far+", "near-", "far-"), (3, 2, 8, 5), 3),
    ("8 2/3", "CD", ("far+", "near+", "far-", "near-"), (3, 2, 4, 3), -2),
    ("10 1/2 5/6", "CE", ("s_down", "p_down", "s_up", "p_up"), (4, 3, 5, 3), 0),
]


def arc_with_support(T: Triangulation, labels: dict, factors) -> Arc:
    want = sorted(factors)
    for arc in all_arcs(T.n):
        M = module_of_arc(T, arc)
        if isinstance(M, StringModule) and sorted(label_of(labels)[v] for v in M.walk) == want:
            return arc
    raise KeyError(f"no module with composition factors {want}")


def golden_quadrilateral(T: Triangulation, labels: dict) -> Quadrilateral:
    """The labelling of the quadrilateral around diagonal 1 used in the worked
    examples: b = 4, c = 2, d = 3, e = 5."""
    for swap in (False, True):
        quad = quadrilateral(T, labels[1], swap=swap)
        if quad.b == labels[4]:
            return quad
    raise ValueError("diagonal 4 does not frame diagonal 1")


def worked_examples() -> list[dict]:
    T, labels = golden_triangulation()
    a = labels[1]
    quad = golden_quadrilateral(T, labels)
    out = []
    for drawn, region, keys, values, expected in WORKED:
        factors = [int(t) for t in drawn.replace("/", " ").split()]
        arc = arc_with_support(T, labels, factors)
        rep = delta(T, a, arc, quad=quad)
        got = tuple(rep.values.get(k) for k in keys)
        out.append({
            "module": drawn, "arc": arc, "region": rep.region, "expected_region": region,
            "values": got, "expected_values": values,
            "delta": rep.delta, "expected_delta": expected,
        })
    return out
