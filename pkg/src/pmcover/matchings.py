"""Perfect matching search, enumeration, and incidence structure.

Existence and extraction run on the simplified graph through an
augmenting-path search with blossom contraction, so non-bipartite graphs are
handled exactly.  Enumeration backtracks over the lowest-indexed uncovered
vertex, branching over incident edges in ascending edge-id order; parallel
copies of a pair therefore yield distinct matchings, listed deterministically.

A perfect matching is represented as a frozenset of edge ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .graphs import MultiGraph
from .linalg import RatMatrix


class EnumerationOverflow(RuntimeError):
    """Raised when enumeration exceeds its limit; carries the matchings found so far."""

    def __init__(self, limit: int, found: Sequence[frozenset[int]] = ()):
        super().__init__(f"perfect matching enumeration exceeded limit {limit}")
        self.limit = limit
        self.found = list(found)


def maximum_matching(n: int, adjacency: Sequence[Sequence[int]]) -> list[int]:
    """Maximum cardinality matching on a simple graph; mate array, -1 = exposed.

    Classic O(V^3) augmenting-path search with blossom contraction (bases are
    tracked per vertex and collapsed at the least common base).  Deterministic
    for a fixed adjacency order.
    """
    mate = [-1] * n
    for v in range(n):  # cheap greedy seed
        if mate[v] == -1:
            for w in adjacency[v]:
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    break

    def find_augmenting_path(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def least_common_base(a: int, b: int) -> int:
            seen = [False] * n
            x = a
            while True:
                x = base[x]
                seen[x] = True
                if mate[x] == -1:
                    break
                x = parent[mate[x]]
            y = b
            while True:
                y = base[y]
                if seen[y]:
                    return y
                y = parent[mate[y]]

        def mark_path(v: int, b: int, child: int) -> None:
            while base[v] != b:
                in_blossom[base[v]] = True
                in_blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in adjacency[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    # v and to are both outer: contract the blossom
                    b = least_common_base(v, to)
                    in_blossom = [False] * n
                    mark_path(v, b, to)
                    mark_path(to, b, v)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = b
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        # augment along the alternating path ending at `to`
                        u = to
                        while u != -1:
                            pv = parent[u]
                            nxt = mate[pv]
                            mate[u] = pv
                            mate[pv] = u
                            u = nxt
                        return True
                    used[mate[to]] = True
                    queue.append(mate[to])
        return False

    for v in range(n):
        if mate[v] == -1:
            find_augmenting_path(v)
    return mate


def _filtered_adjacency(g: MultiGraph, removed: frozenset[int]) -> list[tuple[int, ...]]:
    return [
        ()
        if v in removed
        else tuple(w for w in g.adjacency[v] if w not in removed)
        for v in range(g.vertex_count)
    ]


def _matching_excluding(g: MultiGraph, removed: frozenset[int]) -> Optional[list[int]]:
    """Mate array perfectly matching V minus ``removed``, or None."""
    mate = maximum_matching(g.vertex_count, _filtered_adjacency(g, removed))
    for v in range(g.vertex_count):
        if v not in removed and mate[v] == -1:
            return None
    return mate


def max_matching_size(g: MultiGraph, removed: Iterable[int] = ()) -> int:
    """Number of edges in a maximum matching of G minus the given vertices."""
    mate = maximum_matching(g.vertex_count, _filtered_adjacency(g, frozenset(removed)))
    return sum(1 for w in mate if w != -1) // 2


def has_perfect_matching(g: MultiGraph, removed: Iterable[int] = ()) -> bool:
    """Whether G minus the given vertices has a perfect matching."""
    gone = frozenset(removed)
    if (g.vertex_count - len(gone)) % 2 != 0:
        return False
    return _matching_excluding(g, gone) is not None


def pm_containing_edges(g: MultiGraph, edge_ids: Iterable[int]) -> Optional[frozenset[int]]:
    """A perfect matching containing exactly the given edges, or None.

    The forced edges must themselves form a matching.  The completion on the
    remaining vertices maps each matched pair to its lowest edge id.
    """
    forced = sorted(set(edge_ids))
    covered: set[int] = set()
    for e in forced:
        if not 0 <= e < g.m:
            raise ValueError(f"edge id {e} out of range")
        u, v = g.edges[e]
        if u in covered or v in covered:
            raise ValueError(f"forced edges are not a matching: vertex clash at edge {e}")
        covered.update((u, v))
    mate = _matching_excluding(g, frozenset(covered))
    if mate is None:
        return None
    result = set(forced)
    for v in range(g.vertex_count):
        if v in covered or mate[v] < v:
            continue
        result.add(g.pair_ids[(v, mate[v])][0])
    return frozenset(result)


def iter_pms(g: MultiGraph) -> Iterator[frozenset[int]]:
    """All perfect matchings as edge-id sets, in deterministic backtracking order."""
    if g.vertex_count % 2 != 0:
        return
    covered = [False] * g.vertex_count
    chosen: list[int] = []

    def backtrack(start: int) -> Iterator[frozenset[int]]:
        v = start
        while v < g.vertex_count and covered[v]:
            v += 1
        if v == g.vertex_count:
            yield frozenset(chosen)
            return
        covered[v] = True
        for e in g.incident_ids[v]:
            w = g.other_end(e, v)
            if covered[w]:
                continue
            covered[w] = True
            chosen.append(e)
            yield from backtrack(v + 1)
            chosen.pop()
            covered[w] = False
        covered[v] = False

    yield from backtrack(0)


def enumerate_pms(g: MultiGraph, limit: Optional[int] = None) -> list[frozenset[int]]:
    """Every perfect matching, or EnumerationOverflow past ``limit``."""
    if limit is not None and limit < 0:
        raise ValueError("limit must be nonnegative")
    out: list[frozenset[int]] = []
    for pm in iter_pms(g):
        if limit is not None and len(out) == limit:
            raise EnumerationOverflow(limit, out)
        out.append(pm)
    return out


def validate_perfect_matching(g: MultiGraph, edge_ids: Iterable[int]) -> None:
    """Raise with the offending vertex unless the edges cover each vertex once."""
    times = [0] * g.vertex_count
    for e in edge_ids:
        if not 0 <= e < g.m:
            raise ValueError(f"edge id {e} out of range")
        u, v = g.edges[e]
        times[u] += 1
        times[v] += 1
    for v, t in enumerate(times):
        if t == 0:
            raise ValueError(f"vertex {v} is uncovered")
        if t > 1:
            raise ValueError(f"vertex {v} is covered {t} times")


@dataclass(frozen=True)
class IncidenceMatrix:
    """m x k 0/1 matrix: rows are edge ids, columns are matchings."""

    matrix: RatMatrix
    matchings: tuple[frozenset[int], ...]

    def int_rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.matrix.entries]


def incidence_matrix(g: MultiGraph, matchings: Sequence[frozenset[int]]) -> IncidenceMatrix:
    """Edge-by-matching incidence; every column is validated as a perfect matching."""
    for pm in matchings:
        validate_perfect_matching(g, pm)
    rows = [[1 if e in pm else 0 for pm in matchings] for e in range(g.m)]
    return IncidenceMatrix(RatMatrix.from_rows(rows), tuple(frozenset(pm) for pm in matchings))
