"""String modules over the cluster-tilted algebra of a triangulation.

A submodule of a string module is identified with a subset of walk positions
closed under arrow successors: if the walk uses an arrow x -> y and x is in
the subset, so is y. This description is what every count here is checked
against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable

from .polygon import (
    Arc,
    QuiverWithRelations,
    Triangulation,
    crosses,
    enumerate_triangulations,
    is_boundary,
    quiver_of_triangulation,
    all_arcs,
)

FORWARD = "f"
BACKWARD = "b"

BRUTE_FORCE_LIMIT = 20  # walk vertices; 2**20 subsets


class WalkTooLong(ValueError):
    pass


@dataclass(frozen=True)
class StringModule:
    walk: tuple
    dirs: tuple[str, ...]

    def __post_init__(self):
        if len(self.dirs) != max(len(self.walk) - 1, 0):
            raise ValueError("need one direction per step of the walk")
        if any(d not in (FORWARD, BACKWARD) for d in self.dirs):
            raise ValueError(f"directions must be 'f' or 'b': {self.dirs}")
        if len(set(self.walk)) != len(self.walk):
            raise ValueError("walk repeats a vertex")

    @property
    def length(self) -> int:
        return len(self.dirs)

    def arrows(self) -> list[tuple[int, int]]:
        """Walk arrows as (source position, target position)."""
        return [(t, t + 1) if d == FORWARD else (t + 1, t) for t, d in enumerate(self.dirs)]

    def support(self) -> frozenset:
        return frozenset(self.walk)

    def reversed(self) -> "StringModule":
        flipped = tuple(BACKWARD if d == FORWARD else FORWARD for d in reversed(self.dirs))
        return StringModule(tuple(reversed(self.walk)), flipped)

    def canonical(self) -> "StringModule":
        """Orientation starting from the smaller end vertex."""
        if len(self.walk) > 1 and self.walk[-1] < self.walk[0]:
            return self.reversed()
        return self

    def check_against(self, Q: QuiverWithRelations) -> None:
        for t, d in enumerate(self.dirs):
            x, y = self.walk[t], self.walk[t + 1]
            if d == BACKWARD:
                x, y = y, x
            if (x, y) not in Q.arrows:
                raise ValueError(f"no arrow {x}->{y} in the quiver")
        for t in range(len(self.dirs) - 1):
            if self.dirs[t] == self.dirs[t + 1]:
                path = self.walk[t : t + 3]
                if self.dirs[t] == BACKWARD:
                    path = path[::-1]
                if tuple(path) in Q.relations:
                    raise ValueError(f"walk passes through the zero relation {path}")

    def to_json(self) -> dict:
        walk = [list(v) if isinstance(v, tuple) else v for v in self.walk]
        return {"walk": walk, "dirs": list(self.dirs)}

    @classmethod
    def from_json(cls, data) -> "StringModule":
        if isinstance(data, str):
            data = json.loads(data)
        walk = tuple(tuple(v) if isinstance(v, list) else v for v in data["walk"])
        return cls(walk, tuple(data.get("dirs", ())))


@dataclass(frozen=True)
class ShiftedProjective:
    """The object P_x[1]; sits at the position of the diagonal x of T."""

    vertex: Arc


@dataclass(frozen=True)
class BoundaryObject:
    arc: Arc


@dataclass(frozen=True)
class StringShape:
    """Leg lengths of a string, read from the walk's canonical start.

    ``first`` is the direction of the first leg ("f" or "b"), None for m = 0.
    """

    legs: tuple[int, ...]
    first: str | None = None

    @property
    def m(self) -> int:
        return len(self.legs)

    def peaks_between(self) -> list[bool]:
        """For each junction of legs i and i+1: True if it is a source (peak).

        A forward leg followed by a backward one meets at a sink; a backward leg
        followed by a forward one meets at a source.
        """
        out = []
        d = self.first
        for _ in range(self.m - 1):
            out.append(d == BACKWARD)
            d = FORWARD if d == BACKWARD else BACKWARD
        return out


def crossed_diagonals(T: Triangulation, d: Arc) -> list[Arc]:
    """Diagonals of T crossed by d, in order along d from its lower endpoint."""
    u, v = sorted(d)
    n = T.n
    hit = [x for x in T.diagonals if crosses(d, x)]

    def key(x):
        i, j = x
        inner, outer = (i, j) if u < i < v else (j, i)
        return ((inner - u) % n, -((outer - u) % n))

    return sorted(hit, key=key)


def module_of_arc(T: Triangulation, d: Arc, Q: QuiverWithRelations | None = None):
    d = tuple(sorted(d))
    if is_boundary(d, T.n):
        return BoundaryObject(d)
    if d in T.diagonals:
        return ShiftedProjective(d)
    if Q is None:
        Q = quiver_of_triangulation(T)
    walk = crossed_diagonals(T, d)
    dirs = []
    for x, y in zip(walk, walk[1:]):
        if (x, y) in Q.arrows:
            dirs.append(FORWARD)
        elif (y, x) in Q.arrows:
            dirs.append(BACKWARD)
        else:
            raise AssertionError(f"consecutive crossed diagonals {x}, {y} not joined by an arrow")
    return StringModule(tuple(walk), tuple(dirs))


def _closure_masks(dirs: tuple[str, ...]) -> list[tuple[int, int]]:
    return [(1 << t, 1 << (t + 1)) if d == FORWARD else (1 << (t + 1), 1 << t)
            for t, d in enumerate(dirs)]


@lru_cache(maxsize=None)
def _bruteforce(dirs: tuple[str, ...]) -> int:
    size = len(dirs) + 1
    if size > BRUTE_FORCE_LIMIT:
        raise WalkTooLong(f"walk with {size} vertices exceeds brute-force limit {BRUTE_FORCE_LIMIT}")
    masks = _closure_masks(dirs)
    total = 0
    for S in range(1 << size):
        for src, dst in masks:
            if S & src and not S & dst:
                break
        else:
            total += 1
    return total


def submodule_count_bruteforce(M: StringModule) -> int:
    """Number of successor-closed subsets of walk positions, by enumeration."""
    return _bruteforce(tuple(M.dirs))


def count_coclosed_bruteforce(M: StringModule) -> int:
    """Subsets closed under arrow predecessors (quotient-defining subsets)."""
    masks = _closure_masks(tuple(M.dirs))
    size = len(M.walk)
    total = 0
    for S in range(1 << size):
        if all(not (S & dst and not S & src) for src, dst in masks):
            total += 1
    return total


def submodule_count_transfer(M: StringModule) -> int:
    """Same count by a two-state transfer along the walk (linear time)."""
    inside, outside = 1, 1
    for d in M.dirs:
        if d == FORWARD:
            # next in S is forced when the current vertex is in S
            inside, outside = inside + outside, outside
        else:
            inside, outside = inside, inside + outside
    return inside + outside


def submodule_count(M: StringModule) -> int:
    if len(M.walk) <= BRUTE_FORCE_LIMIT:
        return submodule_count_bruteforce(M)
    return submodule_count_transfer(M)


def _raw_shape(M: StringModule) -> StringShape:
    if not M.dirs:
        return StringShape(())
    legs, run = [], 1
    for prev, cur in zip(M.dirs, M.dirs[1:]):
        if cur == prev:
            run += 1
        else:
            legs.append(run)
            run = 1
    legs.append(run)
    return StringShape(tuple(legs), M.dirs[0])


def shape(M: StringModule) -> StringShape:
    return _raw_shape(M.canonical())


Admissible = Callable[[tuple[int, ...], StringShape], bool]


def submodule_count_formula(sh: StringShape, admissible: Admissible) -> int:
    """1 + sum over admissible I of prod_{i in I} k_i (the empty set always counts)."""
    total = 1
    for size in range(sh.m + 1):
        for I in combinations(range(1, sh.m + 1), size):
            if size == 0 or admissible(I, sh):
                prod = 1
                for i in I:
                    prod *= sh.legs[i - 1]
                total += prod
    return total


# Candidate admissibility predicates. I is a sorted tuple of 1-based leg indices.

def _all_subsets(I, sh):
    return True


def _odd_gaps(I, sh):
    return all((j - i) % 2 == 1 for i, j in zip(I, I[1:]))


def _even_gaps(I, sh):
    return all((j - i) % 2 == 0 for i, j in zip(I, I[1:]))


def _no_adjacent(I, sh):
    return all(j - i > 1 for i, j in zip(I, I[1:]))


def _intervals(I, sh):
    return not I or I[-1] - I[0] == len(I) - 1


def _no_adjacent_at_peak(I, sh):
    peaks = sh.peaks_between()
    return not any(j - i == 1 and peaks[i - 1] for i, j in zip(I, I[1:]))


def _no_adjacent_at_valley(I, sh):
    peaks = sh.peaks_between()
    return not any(j - i == 1 and not peaks[i - 1] for i, j in zip(I, I[1:]))


def _gap_parity_by_junction(I, sh):
    # consecutive chosen legs must be joined by junctions of one kind at both ends
    peaks = sh.peaks_between()
    return all(peaks[i - 1] == peaks[j - 2] for i, j in zip(I, I[1:]))


CANDIDATES: dict[str, Admissible] = {
    "all-subsets": _all_subsets,
    "odd-gaps": _odd_gaps,
    "even-gaps": _even_gaps,
    "no-adjacent": _no_adjacent,
    "intervals": _intervals,
    "no-adjacent-at-peak": _no_adjacent_at_peak,
    "no-adjacent-at-valley": _no_adjacent_at_valley,
    "matching-junctions": _gap_parity_by_junction,
}

ADMISSIBLE_DESCRIPTION = (
    "I is admissible iff any two consecutive chosen legs i < j have j - i odd, "
    "i.e. the run of unchosen legs between them has even length"
)


def admissible(I: Iterable[int], sh: StringShape) -> bool:
    """The fitted predicate (see ADMISSIBLE_DESCRIPTION)."""
    return _odd_gaps(tuple(sorted(I)), sh)


@dataclass
class CandidateResult:
    name: str
    checked: int
    agreed: int
    first_failure: dict | None

    @property
    def exact(self) -> bool:
        return self.checked == self.agreed


@dataclass
class FitReport:
    n_max: int
    strings: int
    results: list[CandidateResult]

    @property
    def fitted(self) -> list[str]:
        return [r.name for r in self.results if r.exact]

    def lines(self) -> list[str]:
        out = [f"distinct strings from triangulations with n <= {self.n_max}: {self.strings}"]
        for r in self.results:
            status = "EXACT" if r.exact else "fails"
            out.append(f"  {r.name:<24} {status:<6} {r.agreed}/{r.checked}")
            if r.first_failure:
                f = r.first_failure
                out.append(f"      smallest counterexample: dirs={''.join(f['dirs'])} legs={f['legs']} "
                           f"oracle={f['oracle']} formula={f['formula']}")
        if self.fitted:
            out.append("fitted: " + ", ".join(self.fitted))
        else:
            out.append("no candidate fits")
        return out

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "strings": self.strings,
            "fitted": self.fitted,
            "candidates": [
                {"name": r.name, "checked": r.checked, "agreed": r.agreed,
                 "first_failure": r.first_failure}
                for r in self.results
            ],
        }


def strings_up_to(n_max: int) -> list[StringModule]:
    """One representative per direction pattern among all strings of n-gons, n <= n_max."""
    seen: dict[tuple, StringModule] = {}
    for n in range(4, n_max + 1):
        for T in enumerate_triangulations(n):
            Q = quiver_of_triangulation(T)
            for d in all_arcs(n):
                M = module_of_arc(T, d, Q)
                if isinstance(M, StringModule):
                    M = M.canonical()
                    seen.setdefault(M.dirs, M)
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]


def fit_admissibility(n_max: int = 10, candidates: dict[str, Admissible] | None = None) -> FitReport:
    """Test each candidate predicate against the oracle on every string up to n_max.

    Both orientations of each string are tried, so a predicate only fits if
    it is exact regardless of which end the legs are read from.
    """
    candidates = CANDIDATES if candidates is None else candidates
    modules = strings_up_to(n_max)
    results = []
    for name, pred in candidates.items():
        checked = agreed = 0
        failure = None
        for M in modules:
            oracle = submodule_count_bruteforce(M)
            for variant in (M, M.reversed()):
                sh = _raw_shape(variant)
                checked += 1
                value = submodule_count_formula(sh, pred)
                if value == oracle:
                    agreed += 1
                elif failure is None:
                    failure = {"dirs": list(variant.dirs), "legs": list(sh.legs),
                               "oracle": oracle, "formula": value}
        results.append(CandidateResult(name, checked, agreed, failure))
    return FitReport(n_max, len(modules), results)


def cc_entry(T: Triangulation, d: Arc, Q: QuiverWithRelations | None = None) -> int:
    """Specialized Caldero-Chapoton value at the position of arc d."""
    M = module_of_arc(T, d, Q)
    if isinstance(M, (BoundaryObject, ShiftedProjective)):
        return 1
    return submodule_count(M)
