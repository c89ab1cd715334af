"""Triangulations of a convex n-gon and the quiver of a triangulation.

Vertices are labelled 1..n counterclockwise. An arc is stored as a sorted
pair ``(i, j)`` with ``1 <= i < j <= n``; it is a boundary segment when its
endpoints are neighbours on the polygon and a diagonal otherwise.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

Arc = tuple[int, int]

ENUMERATION_BOUND = 14


class InvalidTriangulation(ValueError):
    pass


def make_arc(i: int, j: int, n: int) -> Arc:
    """Normalize an unordered vertex pair (indices taken mod n) to an Arc."""
    i = (i - 1) % n + 1
    j = (j - 1) % n + 1
    if i == j:
        raise ValueError(f"degenerate arc [{i},{j}]")
    return (i, j) if i < j else (j, i)


def check_arc(arc: Arc, n: int) -> Arc:
    i, j = arc
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"endpoint out of range for n={n}: {list(arc)}")
    if i == j:
        raise ValueError(f"degenerate arc {list(arc)}")
    return (i, j) if i < j else (j, i)


def is_boundary(arc: Arc, n: int) -> bool:
    i, j = arc
    return j - i == 1 or (i, j) == (1, n)


def is_diagonal(arc: Arc, n: int) -> bool:
    return not is_boundary(arc, n)


def boundary_segments(n: int) -> list[Arc]:
    return [make_arc(i, i + 1, n) for i in range(1, n + 1)]


def all_arcs(n: int) -> list[Arc]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def all_diagonals(n: int) -> list[Arc]:
    return [arc for arc in all_arcs(n) if is_diagonal(arc, n)]


def strictly_between(x: int, lo: int, hi: int, n: int) -> bool:
    """True iff x lies strictly inside the counterclockwise run lo -> hi."""
    return 0 < (x - lo) % n < (hi - lo) % n


def cyclic_range(lo: int, hi: int, n: int) -> list[int]:
    """Vertices lo, lo+1, ..., hi walking counterclockwise (inclusive)."""
    out = [lo]
    v = lo
    while v != hi:
        v = v % n + 1
        out.append(v)
    return out


def crosses(d1: Arc, d2: Arc, n: int | None = None) -> bool:
    """Whether two arcs of the same polygon cross in their interiors."""
    if n is not None:
        d1, d2 = check_arc(d1, n), check_arc(d2, n)
    a, b = sorted(d1)
    c, d = d2
    if c in (a, b) or d in (a, b):
        return False
    return (a < c < b) != (a < d < b)


@dataclass(frozen=True)
class Triangulation:
    n: int
    diagonals: frozenset[Arc]
    _neighbours: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        nbrs: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for i, j in list(self.diagonals) + boundary_segments(self.n):
            nbrs[i].append(j)
            nbrs[j].append(i)
        for v, lst in nbrs.items():
            lst.sort(key=lambda w: (w - v) % self.n)
        object.__setattr__(self, "_neighbours", nbrs)

    def __contains__(self, arc) -> bool:
        return tuple(sorted(arc)) in self.diagonals

    def __iter__(self) -> Iterator[Arc]:
        return iter(sorted(self.diagonals))

    def __len__(self) -> int:
        return len(self.diagonals)

    @property
    def key(self) -> tuple[Arc, ...]:
        return tuple(sorted(self.diagonals))

    def neighbours(self, v: int) -> list[int]:
        """Vertices joined to v by a diagonal or side, in counterclockwise order."""
        return self._neighbours[v]

    def is_one(self, arc: Arc) -> bool:
        """Arcs whose frieze entry is 1: the sides and the diagonals of T."""
        return arc in self.diagonals or is_boundary(arc, self.n)

    def triangles(self) -> list[tuple[int, int, int]]:
        tris = set()
        for v in range(1, self.n + 1):
            nb = self._neighbours[v]
            for w1, w2 in zip(nb, nb[1:]):
                tris.add(tuple(sorted((v, w1, w2))))
        return sorted(tris)

    def to_json(self) -> dict:
        return {"n": self.n, "diagonals": [list(d) for d in self.key]}

    @classmethod
    def from_json(cls, data) -> "Triangulation":
        if isinstance(data, str):
            data = json.loads(data)
        return validate(int(data["n"]), [tuple(d) for d in data["diagonals"]])

    def __str__(self):
        return f"T(n={self.n}; " + ", ".join(f"{i}-{j}" for i, j in self.key) + ")"


def validate(n: int, diagonals: Iterable) -> Triangulation:
    if n < 4:
        raise InvalidTriangulation(f"polygon needs n >= 4, got {n}")
    arcs = []
    for d in diagonals:
        d = tuple(d)
        if len(d) != 2:
            raise InvalidTriangulation(f"malformed arc {list(d)}")
        try:
            arc = check_arc(d, n)
        except ValueError as exc:
            raise InvalidTriangulation(str(exc)) from None
        if is_boundary(arc, n):
            raise InvalidTriangulation(f"{list(arc)} is a boundary segment, not a diagonal")
        arcs.append(arc)
    if len(set(arcs)) != len(arcs):
        raise InvalidTriangulation("repeated diagonal")
    if len(arcs) != n - 3:
        raise InvalidTriangulation(f"expected {n - 3} diagonals, got {len(arcs)}")
    for x in range(len(arcs)):
        for y in range(x + 1, len(arcs)):
            if crosses(arcs[x], arcs[y]):
                raise InvalidTriangulation(
                    f"diagonals {list(arcs[x])} and {list(arcs[y])} cross"
                )
    return Triangulation(n, frozenset(arcs))


@lru_cache(maxsize=None)
def _triangulate(verts: tuple[int, ...]) -> tuple[tuple[Arc, ...], ...]:
    # ear recursion on the triangle containing the side verts[0]-verts[1]
    if len(verts) < 4:
        return ((),)
    u, v = verts[0], verts[1]
    out = []
    for k in range(2, len(verts)):
        w = verts[k]
        left = verts[1 : k + 1]
        right = verts[k:] + (u,)
        own = []
        if k != 2:
            own.append(tuple(sorted((v, w))))
        if k != len(verts) - 1:
            own.append(tuple(sorted((u, w))))
        for lt, rt in product(_triangulate(left), _triangulate(right)):
            out.append(tuple(own) + lt + rt)
    return tuple(out)


def enumerate_triangulations(n: int, bound: int = ENUMERATION_BOUND) -> list[Triangulation]:
    """All triangulations of the n-gon, sorted lexicographically by diagonal list."""
    if n < 4 or n > bound:
        raise ValueError(f"n must lie in [4, {bound}], got {n}")
    keys = sorted(tuple(sorted(t)) for t in _triangulate(tuple(range(1, n + 1))))
    return [Triangulation(n, frozenset(k)) for k in keys]


def catalan(k: int) -> int:
    c = 1
    for i in range(k):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def apexes(T: Triangulation, a: Arc) -> tuple[int, int]:
    """The apexes (s, r) of the two triangles on a = [p, q], with s in (p, q)."""
    a = tuple(sorted(a))
    if a not in T.diagonals:
        raise KeyError(f"{list(a)} is not a diagonal of {T}")
    p, q = a
    common = set(T.neighbours(p)) & set(T.neighbours(q))
    s = [v for v in common if strictly_between(v, p, q, T.n)]
    r = [v for v in common if strictly_between(v, q, p, T.n)]
    assert len(s) == 1 and len(r) == 1, (T, a, common)
    return s[0], r[0]


@dataclass(frozen=True)
class Quadrilateral:
    """The quadrilateral framing diagonal a.

    b and c share the endpoint p of a = [p, q]; d and e share q. b, e lie in
    the triangle with apex r, c, d in the one with apex s. Opposite pairs are
    b/d and c/e. In the quiver, b -> a -> c and d -> a -> e.
    """

    a: Arc
    b: Arc
    c: Arc
    d: Arc
    e: Arc
    p: int
    q: int
    r: int
    s: int

    def relabelled(self) -> "Quadrilateral":
        """The mirror labelling (b, c) <-> (d, e), obtained by swapping p <-> q."""
        return Quadrilateral(self.a, self.d, self.e, self.b, self.c,
                             self.q, self.p, self.s, self.r)


def quadrilateral(T: Triangulation, a: Arc, swap: bool = False) -> Quadrilateral:
    p, q = sorted(a)
    s, r = apexes(T, (p, q))
    n = T.n
    quad = Quadrilateral(
        a=(p, q),
        b=make_arc(p, r, n),
        c=make_arc(p, s, n),
        d=make_arc(q, s, n),
        e=make_arc(q, r, n),
        p=p, q=q, r=r, s=s,
    )
    return quad.relabelled() if swap else quad


def flip(T: Triangulation, a: Arc) -> tuple[Triangulation, Arc]:
    a = tuple(sorted(a))
    s, r = apexes(T, a)
    new = make_arc(r, s, T.n)
    return Triangulation(T.n, (T.diagonals - {a}) | {new}), new


def quiddity(T: Triangulation) -> tuple[int, ...]:
    return tuple(len(T.neighbours(v)) - 1 for v in range(1, T.n + 1))


def ears(T: Triangulation) -> list[int]:
    """Vertices v such that [v-1, v+1] cuts off a single triangle."""
    n = T.n
    return [v for v in range(1, n + 1) if make_arc(v - 1, v + 1, n) in T.diagonals]


def triangulation_from_quiddity(q) -> Triangulation:
    """Recover T by cutting ears: a vertex of count 1 sits in a single triangle."""
    q = [int(x) for x in q]
    n = len(q)
    if n < 4:
        raise InvalidTriangulation("a quiddity sequence needs length >= 4")
    live = list(range(1, n + 1))
    count = dict(zip(live, q))
    diagonals = []
    while len(live) > 3:
        ear = next((v for v in live if count[v] == 1), None)
        if ear is None:
            raise InvalidTriangulation(f"{tuple(q)} is not a quiddity sequence: no ear left")
        k = live.index(ear)
        left, right = live[k - 1], live[(k + 1) % len(live)]
        diagonals.append(make_arc(left, right, n))
        count[left] -= 1
        count[right] -= 1
        live.remove(ear)
    if any(count[v] != 1 for v in live):
        raise InvalidTriangulation(f"{tuple(q)} is not a quiddity sequence")
    return validate(n, diagonals)


@dataclass(frozen=True)
class QuiverWithRelations:
    vertices: frozenset
    arrows: frozenset
    relations: frozenset

    def successors(self, v):
        return sorted(y for x, y in self.arrows if x == v)

    def predecessors(self, v):
        return sorted(x for x, y in self.arrows if y == v)

    def has_arrow(self, x, y) -> bool:
        return (x, y) in self.arrows

    def relabel(self, mapping: dict) -> "QuiverWithRelations":
        return QuiverWithRelations(
            frozenset(mapping[v] for v in self.vertices),
            frozenset((mapping[x], mapping[y]) for x, y in self.arrows),
            frozenset((mapping[x], mapping[y], mapping[z]) for x, y, z in self.relations),
        )

    def three_cycles(self) -> list[tuple]:
        cycles = set()
        for x, y in self.arrows:
            for z in self.successors(y):
                if (z, x) in self.arrows:
                    cyc = (x, y, z)
                    k = cyc.index(min(cyc))
                    cycles.add(cyc[k:] + cyc[:k])
        return sorted(cycles)


def quiver_of_triangulation(T: Triangulation) -> QuiverWithRelations:
    """Arrow x -> y when y is reached from x by clockwise rotation about a common
    endpoint, with no other diagonal in between.

    In a triangle u < v < w this gives [u,w] -> [u,v] -> [v,w] -> [u,w], keeping
    only the sides that are diagonals. Relations are the length-2 paths inside
    the internal triangles.
    """
    arrows = set()
    relations = set()
    for u, v, w in T.triangles():
        cyc = [(u, w), (u, v), (v, w)]
        inside = [x in T.diagonals for x in cyc]
        for k in range(3):
            x, y = cyc[k], cyc[(k + 1) % 3]
            if inside[k] and inside[(k + 1) % 3]:
                arrows.add((x, y))
        if all(inside):
            for k in range(3):
                relations.add((cyc[k], cyc[(k + 1) % 3], cyc[(k + 2) % 3]))
    return QuiverWithRelations(frozenset(T.diagonals), frozenset(arrows), frozenset(relations))


def mutate_quiver(Q: QuiverWithRelations, k) -> QuiverWithRelations:
    """Fomin-Zelevinsky mutation at k, used as an independent check on flips.

    Relations of the result are recomputed as the length-2 paths of its
    oriented 3-cycles.
    """
    count = Counter()
    for x, y in Q.arrows:
        count[(x, y)] += 1
    ins = [x for x, y in Q.arrows if y == k]
    outs = [y for x, y in Q.arrows if x == k]
    new = Counter()
    for (x, y), m in count.items():
        if k in (x, y):
            new[(y, x)] += m
        else:
            new[(x, y)] += m
    for i in ins:
        for j in outs:
            new[(i, j)] += 1
    arrows = set()
    for (x, y), m in new.items():
        net = m - new.get((y, x), 0)
        if net > 1:
            raise ValueError(f"multiple arrows {x}->{y} after mutation")
        if net == 1:
            arrows.add((x, y))
    out = QuiverWithRelations(Q.vertices, frozenset(arrows), frozenset())
    rels = set()
    for x, y, z in out.three_cycles():
        rels |= {(x, y, z), (y, z, x), (z, x, y)}
    return QuiverWithRelations(out.vertices, out.arrows, frozenset(rels))


def parse_arc(text: str) -> Arc:
    """Parse the CLI syntax ``i-j``."""
    try:
        i, j = text.strip().split("-")
        return tuple(sorted((int(i), int(j))))
    except ValueError:
        raise ValueError(f"cannot parse arc {text!r}; expected i-j") from None


def parse_arc_list(text: str) -> list[Arc]:
    return [parse_arc(t) for t in text.split(",") if t.strip()]
