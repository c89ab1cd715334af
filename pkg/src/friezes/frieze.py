"""Conway-Coxeter frieze patterns.

A frieze of order n is stored by arc coordinates: ``m(i, j)`` is the entry of
the arc [i, j], for vertex labels i <= j <= i + n taken cyclically. Row k of
the pattern collects the entries m(i, i + k); rows 0 and n are zeros, rows 1
and n - 1 are ones and row 2 is the quiddity row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .polygon import Arc, Triangulation, all_arcs, quiver_of_triangulation
from .strings import cc_entry


class FriezeError(ValueError):
    pass


@dataclass(frozen=True)
class Frieze:
    n: int
    rows: tuple[tuple[int, ...], ...]  # rows[k][i - 1] == m(i, i + k), k = 0..n

    def m(self, i: int, j: int) -> int:
        k = j - i
        if not 0 <= k <= self.n:
            raise IndexError(f"m({i},{j}) lies outside one band of the frieze")
        return self.rows[k][(i - 1) % self.n]

    def entry_at(self, arc: Arc) -> int:
        i, j = arc
        if i == j:
            return 0
        if j < i:
            j += self.n
        return self.m(i, j)

    def interior_rows(self) -> list[tuple[int, ...]]:
        return list(self.rows[2 : self.n - 1])

    def quiddity(self) -> tuple[int, ...]:
        """q_v = m(v - 1, v + 1), the number of triangles at vertex v."""
        return tuple(self.m(v - 1, v + 1) for v in range(1, self.n + 1))

    def ones(self) -> list[Arc]:
        """Interior positions (as arcs) carrying the value 1."""
        out = []
        for i, j in all_arcs(self.n):
            if 2 <= j - i <= self.n - 2 and self.entry_at((i, j)) == 1:
                out.append((i, j))
        return out

    def to_json(self) -> dict:
        """Interior rows in display order: row k starts at m(0, k), so the
        quiddity row reads q_1, ..., q_n."""
        n = self.n
        return {
            "n": n,
            "rows": [[self.m(i - 1, i - 1 + k) for i in range(1, n + 1)] for k in range(2, n - 1)],
            "offset": [k % 2 for k in range(2, n - 1)],
        }

    @classmethod
    def from_json(cls, data) -> "Frieze":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        interior = [tuple(int(x) for x in r) for r in data["rows"]]
        if len(interior) != n - 3 or any(len(r) != n for r in interior):
            raise FriezeError(f"expected {n - 3} interior rows of length {n}")
        interior = [r[1:] + r[:1] for r in interior]  # back to rows starting at m(1, 1 + k)
        rows = (tuple([0] * n), tuple([1] * n), *interior, tuple([1] * n), tuple([0] * n))
        return cls(n, rows)


def frieze_from_quiddity(q: Sequence[int]) -> Frieze:
    """Fill the pattern row by row from the diamond rule.

    Each new entry solves the diamond for its bottom corner,
    m(i, j+1) = (m(i, j) m(i+1, j+1) - 1) / m(i+1, j); the division must be
    exact and every entry before the closing row of ones must be positive.
    """
    q = [int(x) for x in q]
    n = len(q)
    if n < 4:
        raise FriezeError("a quiddity sequence needs length >= 4")
    rows = [[0] * n, [1] * n, [q[i % n] for i in range(1, n + 1)]]
    # rows[2][i-1] = m(i, i+2) = q at vertex i+1
    for k in range(2, n):
        prev, cur = rows[k - 1], rows[k]
        nxt = []
        for i in range(n):
            num = cur[i] * cur[(i + 1) % n] - 1
            den = prev[(i + 1) % n]
            if den == 0:
                raise FriezeError(f"zero divisor while filling row {k + 1}")
            if num % den:
                raise FriezeError(f"non-integral entry in row {k + 1} at i={i + 1}: {num}/{den}")
            nxt.append(num // den)
        rows.append(nxt)
        if k + 1 < n - 1 and any(x <= 0 for x in nxt):
            raise FriezeError(f"non-positive entry in row {k + 1}; {tuple(q)} is not a quiddity sequence")
    if rows[n - 1] != [1] * n or rows[n] != [0] * n:
        raise FriezeError(f"pattern does not close up; {tuple(q)} is not a quiddity sequence")
    return Frieze(n, tuple(tuple(r) for r in rows))


def frieze_from_values(n: int, value) -> Frieze:
    """Build the pattern from a function on arcs (entries of the upper band)."""
    rows = [tuple([0] * n), tuple([1] * n)]
    for k in range(2, n - 1):
        row = []
        for i in range(1, n + 1):
            j = i + k
            row.append(value((i, j - n) if j > n else (i, j)))
        rows.append(tuple(row))
    rows += [tuple([1] * n), tuple([0] * n)]
    return Frieze(n, tuple(rows))


def frieze_from_triangulation(T: Triangulation) -> Frieze:
    """The frieze F(T): the specialized Caldero-Chapoton value at every arc."""
    Q = quiver_of_triangulation(T)
    cache: dict = {}

    def value(arc):
        arc = tuple(sorted(arc))
        if arc not in cache:
            cache[arc] = cc_entry(T, arc, Q)
        return cache[arc]

    return frieze_from_values(T.n, value)


@dataclass
class VerifyReport:
    ok: bool
    violations: list[str]

    def __bool__(self):
        return self.ok


def verify(F: Frieze, stop_at_first: bool = True) -> VerifyReport:
    n = F.n
    bad: list[str] = []

    def note(msg):
        bad.append(msg)
        return stop_at_first

    if len(F.rows) != n + 1 or any(len(r) != n for r in F.rows):
        return VerifyReport(False, ["malformed grid"])
    if any(F.rows[0]) or any(F.rows[n]):
        if note("border row of zeros violated"):
            return VerifyReport(False, bad)
    if any(x != 1 for x in F.rows[1] + F.rows[n - 1]):
        if note("border row of ones violated"):
            return VerifyReport(False, bad)
    for k in range(2, n - 1):
        for i in range(1, n + 1):
            if F.m(i, i + k) <= 0:
                if note(f"non-positive entry m({i},{i + k}) = {F.m(i, i + k)}"):
                    return VerifyReport(False, bad)
    for k in range(1, n):
        for i in range(1, n + 1):
            j = i + k
            # diamond with left m(i,j), right m(i+1,j+1), top m(i+1,j), bottom m(i,j+1)
            det = F.m(i, j) * F.m(i + 1, j + 1) - F.m(i + 1, j) * F.m(i, j + 1)
            if det != 1:
                if note(f"diamond rule fails at m({i},{j}): determinant {det}"):
                    return VerifyReport(False, bad)
    for k in range(0, n + 1):
        for i in range(1, n + 1):
            # rows are stored per period, so this only guards the index arithmetic
            if F.m(i + n, i + n + k) != F.m(i, i + k):
                if note(f"periodicity fails at m({i},{i + k})"):
                    return VerifyReport(False, bad)
            if F.m(i, i + k) != F.m(i + k, i + n):
                if note(f"glide reflection fails: m({i},{i + k}) != m({i + k},{i + n})"):
                    return VerifyReport(False, bad)
    return VerifyReport(not bad, bad)


def verify_window(rows: Sequence[Sequence[tuple[int, int]]]) -> VerifyReport:
    """Check positivity and every complete diamond in a staggered window.

    ``rows`` lists rows top to bottom, each a sequence of (x, value) pairs with
    x the horizontal half-column position, as in a drawn frieze.
    """
    grid = {}
    for y, row in enumerate(rows):
        for x, v in row:
            grid[(x, y)] = v
    bad = []
    for (x, y), v in grid.items():
        if v < 0:
            bad.append(f"negative entry at ({x},{y})")
        nbrs = [(x + 1, y - 1), (x + 1, y + 1), (x + 2, y)]
        if all(p in grid for p in nbrs):
            top, bottom, right = (grid[p] for p in nbrs)
            if v * right - top * bottom != 1:
                bad.append(f"diamond rule fails with left corner ({x},{y})")
    return VerifyReport(not bad, bad)


def display_position(i: int, k: int) -> int:
    """Horizontal half-column of m(i, i + k) when row k is drawn k steps down."""
    return 2 * i + k


def render(F: Frieze, window: int = 12, start: int = 1) -> str:
    """Staggered text layout, one line per row from the zeros down to the zeros.

    Each row shows ``window`` entries; odd rows are shifted by half a column.
    """
    n = F.n
    width = max(len(str(x)) for r in F.rows for x in r) + 1
    if width % 2:
        width += 1
    half = width // 2
    lines = []
    for k in range(n + 1):
        cells = []
        first_i = start - k // 2
        for c in range(window):
            i = first_i + c
            cells.append(str(F.m(i, i + k)).rjust(width))
        lines.append(" " * (half * (k % 2)) + "".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def display_rows(F: Frieze) -> list[dict[int, int]]:
    """Interior rows as {x: value} over one full period of x (length 2n)."""
    n = F.n
    out = []
    for k in range(2, n - 1):
        row = {}
        for i in range(1, n + 1):
            row[display_position(i, k) % (2 * n)] = F.m(i, i + k)
        out.append(row)
    return out


def match_window(F: Frieze, window: Sequence[Sequence[tuple[int, int]]]) -> list[dict]:
    """Placements of a drawn window (interior rows, top to bottom) inside F.

    Tries every horizontal shift, both vertical orientations (the glide
    reflection turns the pattern upside down) and the left-right mirror.
    Returns the placements that agree on every listed entry.
    """
    n = F.n
    rows = display_rows(F)
    if len(window) != len(rows):
        return []
    hits = []
    for upside_down in (False, True):
        for mirror in (False, True):
            for shift in range(2 * n):
                ok = True
                for y, wrow in enumerate(window):
                    k_idx = len(rows) - 1 - y if upside_down else y
                    target = rows[k_idx]
                    for x, v in wrow:
                        xx = (-x if mirror else x) + shift
                        if target.get(xx % (2 * n)) != v:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    hits.append({"shift": shift, "upside_down": upside_down, "mirror": mirror})
    return hits
