"""How a frieze changes when one diagonal of the triangulation is flipped.

Flipping a = [p, q] inside its quadrilateral p, s, q, r (counterclockwise,
with s in (p, q)) changes every frieze entry m by a correction delta:
the new entry is m - delta. The correction at an arc depends on where its
endpoints sit relative to the four corners, and is computed from the
entries at a few projected arcs sharing one endpoint with it.

Open intervals between corners are named after the side they face:
Ic = (p, s), Id = (s, q), Ie = (q, r), Ib = (r, p).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frieze import Frieze, frieze_from_triangulation
from .polygon import (
    Arc,
    Quadrilateral,
    Triangulation,
    all_arcs,
    cyclic_range,
    flip,
    make_arc,
    quadrilateral,
    quiver_of_triangulation,
    strictly_between,
)
from .strings import StringModule, module_of_arc

# regions
BC, CD, DE, BE = "BC", "CD", "DE", "BE"
CE, BD = "CE", "BD"  # closures of the two opposite-interval regions
FIXED = "F"
REGIONS = (BC, CD, DE, BE, CE, BD, FIXED)
ADJACENT = (BC, CD, DE, BE)

RAY_NAMES = ("b", "c", "d", "e", "c^a", "e^a", "b_a", "d_a")


class NonPositiveEntry(ArithmeticError):
    pass


class Sectors:
    """Positions of vertices relative to the corners of a quadrilateral."""

    def __init__(self, quad: Quadrilateral, n: int):
        self.quad = quad
        self.n = n
        p, q, r, s = quad.p, quad.q, quad.r, quad.s
        self.corners = (p, s, q, r)  # counterclockwise
        self.interval_names = {(p, s): "c", (s, q): "d", (q, r): "e", (r, p): "b"}

    def next_corner(self, x: int) -> int:
        cs = self.corners
        return cs[(cs.index(x) + 1) % 4]

    def prev_corner(self, x: int) -> int:
        cs = self.corners
        return cs[(cs.index(x) - 1) % 4]

    def opposite(self, x: int) -> int:
        cs = self.corners
        return cs[(cs.index(x) + 2) % 4]

    def open_interval(self, v: int) -> str | None:
        """Name of the open interval holding v, or None for a corner."""
        for (lo, hi), name in self.interval_names.items():
            if strictly_between(v, lo, hi, self.n):
                return name
        return None

    def in_closed(self, v: int, lo: int, hi: int) -> bool:
        return v in (lo, hi) or strictly_between(v, lo, hi, self.n)


def classify(T: Triangulation, a: Arc, arc: Arc, quad: Quadrilateral | None = None) -> str:
    """Region of ``arc`` for the flip of ``a``, read off from its endpoints."""
    quad = quad or quadrilateral(T, a)
    sec = Sectors(quad, T.n)
    return _classify(sec, arc)


def _classify(sec: Sectors, arc: Arc) -> str:
    x, y = arc
    p, s, q, r = sec.corners
    for lo, hi in ((p, s), (s, q), (q, r), (r, p)):
        if sec.in_closed(x, lo, hi) and sec.in_closed(y, lo, hi):
            return FIXED
    ix, iy = sec.open_interval(x), sec.open_interval(y)
    if ix and iy:
        pair = "".join(sorted(ix + iy)).upper()
        if pair in ADJACENT:
            return pair
    if (sec.in_closed(x, p, s) and sec.in_closed(y, q, r)) or (
        sec.in_closed(y, p, s) and sec.in_closed(x, q, r)
    ):
        return CE
    return BD


def classify_by_support(T: Triangulation, a: Arc, arc: Arc, quad: Quadrilateral | None = None) -> str:
    """Region read off from which of a, b, c, d, e the arc crosses.

    Independent of the endpoint description; used as a cross-check.
    """
    quad = quad or quadrilateral(T, a)
    arc = tuple(sorted(arc))
    if arc == quad.a:
        return CE
    M = module_of_arc(T, arc)
    if not isinstance(M, StringModule):
        return FIXED
    sides = {name for name in "abcde" if getattr(quad, name) in M.support()}
    if not sides:
        return FIXED
    for region in ADJACENT:
        want = set(region.lower())
        if want <= sides and (region in (BC, DE)) == ("a" in sides):
            return region
    if {"b", "d"} & sides:
        return BD
    return CE


def rays(T: Triangulation, a: Arc, quad: Quadrilateral | None = None) -> dict[str, list[Arc]]:
    """The eight rays through the quadrilateral, each an arc list in ray order."""
    quad = quad or quadrilateral(T, a)
    n = T.n
    p, q, r, s = quad.p, quad.q, quad.r, quad.s

    def fixed(end, vs):
        return [make_arc(end, v, n) for v in vs]

    return {
        "e": fixed(p, cyclic_range(q, r, n)[:-1]),
        "c": fixed(q, cyclic_range(p, s, n)[:-1]),
        "b": fixed(q, cyclic_range(r, p, n)[1:]),
        "d": fixed(p, cyclic_range(s, q, n)[1:]),
        "c^a": fixed(r, cyclic_range(p, s, n)[1:]),
        "e^a": fixed(s, cyclic_range(q, r, n)[1:]),
        "b_a": fixed(s, cyclic_range(r, p, n)[:-1]),
        "d_a": fixed(r, cyclic_range(s, q, n)[:-1]),
    }


def memberships(T: Triangulation, a: Arc, arc: Arc, quad: Quadrilateral | None = None) -> list[str]:
    arc = tuple(sorted(arc))
    return [name for name, arcs in rays(T, a, quad).items() if arc in arcs]


@dataclass
class ProjectionSet:
    region: str
    arcs: dict[str, Arc] = field(default_factory=dict)


def project(T: Triangulation, a: Arc, arc: Arc, quad: Quadrilateral | None = None,
            region: str | None = None) -> ProjectionSet:
    """Projected arcs used by the correction at ``arc``.

    Adjacent regions: X is the shared corner and X* its opposite; the endpoint
    u lies just after X, v just before it. Keeping v and moving u gives the
    near projection [next(X), v] and the far one [X*, v]; keeping u gives
    [u, prev(X)] and [u, X*].

    Closures: with i on the p-s side and j on the q-r side, the projections
    through p are [p, j] (up) and [i, q] (down), through s they are the
    arcs to the remaining corners.

    ``region`` may name BD for a and its flip, which lie in both closures.
    """
    quad = quad or quadrilateral(T, a)
    sec = Sectors(quad, T.n)
    n = T.n
    arc = tuple(sorted(arc))
    natural = _classify(sec, arc)
    if region is None:
        region = natural
    elif region != natural and not (region == BD and natural == CE and _in_both(sec, arc)):
        raise ValueError(f"{list(arc)} lies in {natural}, not {region}")
    p, s, q, r = sec.corners
    out = ProjectionSet(region)
    if region == FIXED:
        return out
    x, y = arc
    if region in ADJACENT:
        X = {BC: p, CD: s, DE: q, BE: r}[region]
        after = sec.interval_names[(X, sec.next_corner(X))]
        u, v = (x, y) if sec.open_interval(x) == after else (y, x)
        Xs = sec.opposite(X)
        out.arcs = {
            "near+": make_arc(sec.next_corner(X), v, n),
            "far+": make_arc(Xs, v, n),
            "near-": make_arc(u, sec.prev_corner(X), n),
            "far-": make_arc(u, Xs, n),
        }
        return out
    if region == CE:
        lo, hi = (p, s), (q, r)
        s_up_corner, s_down_corner = r, s
    else:
        lo, hi = (r, p), (s, q)
        s_up_corner, s_down_corner = s, r
    if sec.in_closed(x, *lo) and sec.in_closed(y, *hi):
        i, j = x, y
    else:
        i, j = y, x
    out.arcs = {
        "p_up": make_arc(p, j, n),
        "p_down": make_arc(i, q, n),
        "s_up": make_arc(i, s_up_corner, n),
        "s_down": make_arc(s_down_corner, j, n),
    }
    return out


def _in_both(sec: Sectors, arc: Arc) -> bool:
    p, s, q, r = sec.corners
    return set(arc) in ({p, q}, {r, s})


@dataclass
class DeltaReport:
    arc: Arc
    region: str
    projections: dict[str, Arc]
    values: dict[str, int]
    delta: int

    def to_json(self) -> dict:
        return {
            "arc": list(self.arc),
            "region": self.region,
            "projections": {k: list(v) for k, v in self.projections.items()},
            "values": dict(self.values),
            "delta": self.delta,
        }


def delta_from_values(region: str, v: dict[str, int], first: str = "near") -> int:
    """The correction from projection values.

    ``first`` picks which projection plays the role of the first path in the
    asymmetric BE/CD formula; only "near" agrees with recomputed friezes.
    """
    if region == FIXED:
        return 0
    one, two = ("near", "far") if first == "near" else ("far", "near")
    if region in (BC, DE):
        return (v[one + "+"] - v[two + "+"]) * (v[one + "-"] - v[two + "-"])
    if region in (BE, CD):
        return -(v[two + "+"] - 2 * v[one + "+"]) * (v[two + "-"] - 2 * v[one + "-"])
    return v["s_down"] * v["p_down"] + v["s_up"] * v["p_up"] - 3 * v["p_down"] * v["p_up"]


def delta(T: Triangulation, a: Arc, arc: Arc, F: Frieze | None = None,
          quad: Quadrilateral | None = None, region: str | None = None,
          first: str = "near") -> DeltaReport:
    F = F or frieze_from_triangulation(T)
    ps = project(T, a, arc, quad, region)
    values = {k: F.entry_at(x) for k, x in ps.arcs.items()}
    return DeltaReport(tuple(sorted(arc)), ps.region, ps.arcs, values,
                       delta_from_values(ps.region, values, first))


def mutate_frieze(T: Triangulation, a: Arc, F: Frieze | None = None,
                  quad: Quadrilateral | None = None) -> tuple[Frieze, list[DeltaReport]]:
    """Frieze of the flipped triangulation, computed entry-wise from F(T)."""
    F = F or frieze_from_triangulation(T)
    quad = quad or quadrilateral(T, a)
    n = T.n
    reports = {}
    for arc in all_arcs(n):
        reports[arc] = delta(T, a, arc, F, quad)
    rows = [tuple([0] * n), tuple([1] * n)]
    for k in range(2, n - 1):
        row = []
        for i in range(1, n + 1):
            arc = make_arc(i, i + k, n)
            value = F.entry_at(arc) - reports[arc].delta
            if value <= 0:
                raise NonPositiveEntry(f"mutated entry at {list(arc)} is {value}")
            row.append(value)
        rows.append(tuple(row))
    rows += [tuple([1] * n), tuple([0] * n)]
    return Frieze(n, tuple(rows)), [reports[x] for x in all_arcs(n)]


@dataclass
class SupportChangeReport:
    ok: bool
    failures: list[str]

    def __bool__(self):
        return self.ok


def support_change_check(T: Triangulation, a: Arc) -> SupportChangeReport:
    """Supports before and after the flip agree away from a and its replacement.

    Arcs on the rays b, c, d, e (other than a) gain the new diagonal a' and
    those on the other four rays (other than a') lose a. After the flip, BE
    is supported on e -> a' -> b, CD on c -> a' -> d, while BC and DE no
    longer pass through the middle of the quadrilateral.
    """
    quad = quadrilateral(T, a)
    T2, a2 = flip(T, a)
    Q2 = quiver_of_triangulation(T2)
    bad = []
    b, c, d, e = quad.b, quad.c, quad.d, quad.e
    for x, y in ((e, a2), (a2, b), (c, a2), (a2, d)):
        if x in T2.diagonals and y in T2.diagonals and (x, y) not in Q2.arrows:
            bad.append(f"missing arrow {list(x)} -> {list(y)} after the flip")
    gain, lose = set(), set()
    for name, arcs in rays(T, a, quad).items():
        (gain if name in "bcde" else lose).update(arcs)
    gain.discard(quad.a)
    lose.discard(a2)
    sec = Sectors(quad, T.n)
    through = {BE: {e, a2, b}, CD: {c, a2, d}}
    for arc in all_arcs(T.n):
        if arc in (quad.a, a2):
            continue
        before = _support(T, arc)
        after = _support(T2, arc)
        if before - {quad.a} != after - {a2}:
            bad.append(f"{list(arc)}: support changes away from the flipped diagonal")
        if arc in gain and not (a2 in after and quad.a not in before):
            bad.append(f"{list(arc)}: expected to gain {list(a2)}")
        if arc in lose and not (quad.a in before and a2 not in after):
            bad.append(f"{list(arc)}: expected to lose {list(quad.a)}")
        region = _classify(sec, arc)
        if region in through and not (through[region] & T2.diagonals) <= after:
            bad.append(f"{list(arc)}: not supported on the primed path through {region}")
        if region in (BC, DE) and a2 in after:
            bad.append(f"{list(arc)}: {region} arc still crosses the flipped diagonal")
    return SupportChangeReport(not bad, bad)


def _support(T: Triangulation, arc: Arc) -> frozenset:
    M = module_of_arc(T, arc)
    return M.support() if isinstance(M, StringModule) else frozenset()


def check_triangulation(T: Triangulation) -> list[str]:
    """Compare every correction, and the assembled frieze, with a recomputation
    from the flipped triangulation, for every flip of T."""
    failures = []
    F = frieze_from_triangulation(T)
    for a in sorted(T.diagonals):
        T2, _ = flip(T, a)
        target = frieze_from_triangulation(T2)
        try:
            predicted, reports = mutate_frieze(T, a, F)
        except NonPositiveEntry as exc:
            failures.append(f"{T} flip {list(a)}: {exc}")
            continue
        for r in reports:
            if r.delta != F.entry_at(r.arc) - target.entry_at(r.arc):
                failures.append(f"{T} flip {list(a)}: delta {r.delta} wrong at {list(r.arc)} ({r.region})")
                break
        if predicted != target:
            diff = [x for x in all_arcs(T.n) if predicted.entry_at(x) != target.entry_at(x)]
            failures.append(f"{T} flip {list(a)}: wrong at {[list(x) for x in diff[:5]]}")
    return failures
