"""Exact covers on decomposition leaves.

Three solvers, one per leaf class:

* braces: an r-regular bipartite multigraph splits into r pairwise-disjoint
  perfect matchings (Hall's condition survives deleting a perfect matching),
  giving an all-ones cover that partitions the edge ids.
* Petersen bricks: the six perfect matchings of the Petersen graph span the
  edge weight space, every edge lying in exactly two of them.  The unique
  representation of the multiplicity vector has entries all integral or all
  half-integral; the integral case expands into parallel copies directly, the
  half case first spends +1/2 on each of the six matchings over one chosen
  copy of every underlying edge and expands the integer remainder.
* other bricks: the all-ones vector is an integer combination of perfect
  matchings.  Starting from a greedy basis (each matching grabs the lowest
  uncovered edge id), a Hermite-normal-form solve finds an integer solution,
  enumerating further matchings into the column set until one exists; a
  bounded kernel search then steers the solution to one whose support columns
  are linearly independent.

Coefficients are Fractions throughout; every solver returns through the
strict cover constructor, so per-edge sums are rechecked exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .cover import CoverSolution, HALF, exact_cover, terms_independent
from .decomposition import canonical_petersen, petersen_embedding
from .graphs import MultiGraph, bipartition, regular_degree
from .linalg import RatMatrix, hnf_solve, integer_kernel, rational_solve
from .matchings import enumerate_pms, iter_pms, maximum_matching, pm_containing_edges


class ClassificationError(RuntimeError):
    """Exhaustive solving failed where brick structure guarantees success."""


def brace_solve(g: MultiGraph) -> CoverSolution:
    """Peel r pairwise-disjoint perfect matchings off a regular bipartite multigraph.

    Each peeled pair consumes its lowest remaining parallel copy, so the
    matchings partition the edge ids deterministically.
    """
    if bipartition(g) is None:
        raise ValueError("peeling requires a bipartite graph")
    r = regular_degree(g)
    if r is None or r < 1:
        raise ValueError("peeling requires a regular graph of positive degree")
    remaining: dict[tuple[int, int], list[int]] = {
        pair: list(ids) for pair, ids in g.pair_ids.items()
    }
    terms: list[tuple[frozenset[int], Fraction]] = []
    for _ in range(r):
        nbrs: list[list[int]] = [[] for _ in range(g.vertex_count)]
        for (a, b), ids in remaining.items():
            if ids:
                nbrs[a].append(b)
                nbrs[b].append(a)
        mate = maximum_matching(g.vertex_count, [tuple(sorted(x)) for x in nbrs])
        ids = []
        for v in range(g.vertex_count):
            w = mate[v]
            if w == -1:
                raise ValueError("no perfect matching left to peel; input is not regular bipartite")
            if w < v:
                continue
            ids.append(remaining[(v, w)].pop(0))
        terms.append((frozenset(ids), Fraction(1)))
    if any(ids for ids in remaining.values()):
        raise AssertionError("peeling left edge ids unconsumed")
    return exact_cover(g, terms)


@lru_cache(maxsize=1)
def petersen_matchings() -> tuple[frozenset[int], ...]:
    """The six perfect matchings of the canonical Petersen graph, enumeration order."""
    matchings = tuple(enumerate_pms(canonical_petersen()))
    assert len(matchings) == 6
    return matchings


def _petersen_weight_alpha(weights: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    """The unique alpha with sum_k alpha_k chi(M_k) = weights on canonical edge ids.

    Checks the shape the solvers rely on: nonnegative, and all six entries
    integral or all six half-integral.
    """
    mats = petersen_matchings()
    rows = [[Fraction(1 if e in mk else 0) for mk in mats] for e in range(15)]
    solved = rational_solve(RatMatrix.from_rows(rows), [Fraction(w) for w in weights])
    if solved is None:
        raise ValueError("weights are outside the span of the six matchings")
    alpha, nullspace = solved
    assert not nullspace  # the six incidence vectors are linearly independent
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative entry in alpha {alpha}")
    denominators = {a.denominator for a in alpha}
    if not (denominators == {1} or denominators == {2}):
        raise ValueError(f"alpha must be all integral or all half-integral: {alpha}")
    return tuple(alpha)


def _canonical_pair_copies(g: MultiGraph, embedding: tuple[int, ...]) -> list[list[int]]:
    """Per canonical edge id, the host's parallel copy ids for that pair, ascending."""
    canon = canonical_petersen()
    copies = []
    for i, j in canon.edges:
        a, b = embedding[i], embedding[j]
        copies.append(list(g.pair_ids[(min(a, b), max(a, b))]))
    return copies


def petersen_alpha(
    g: MultiGraph, embedding: Optional[tuple[int, ...]] = None
) -> tuple[Fraction, ...]:
    """Representation of the edge multiplicities over the six Petersen matchings."""
    if embedding is None:
        embedding = petersen_embedding(g)
    if embedding is None:
        raise ValueError("the underlying simple graph is not the Petersen graph")
    weights = [len(ids) for ids in _canonical_pair_copies(g, embedding)]
    return _petersen_weight_alpha(weights)


def petersen_solve(
    g: MultiGraph, embedding: Optional[tuple[int, ...]] = None
) -> CoverSolution:
    """Cover a Petersen brick: either all-integer terms or exactly six at +1/2.

    Parallel copies of each underlying edge are consumed in ascending edge id
    order; in the half case the six +1/2 matchings live on the lowest copy of
    every underlying edge and the remainder expands integrally.
    """
    if embedding is None:
        embedding = petersen_embedding(g)
    if embedding is None:
        raise ValueError("the underlying simple graph is not the Petersen graph")
    alpha = petersen_alpha(g, embedding)
    mats = petersen_matchings()
    copies = _canonical_pair_copies(g, embedding)
    consumed = [0] * 15
    terms: list[tuple[frozenset[int], Fraction]] = []
    if alpha[0].denominator == 2:
        for mk in mats:
            terms.append((frozenset(copies[e][0] for e in mk), HALF))
        consumed = [1] * 15
        alpha = tuple(a - HALF for a in alpha)
    for k, mk in enumerate(mats):
        for _ in range(int(alpha[k])):
            ids = []
            for e in mk:
                ids.append(copies[e][consumed[e]])
                consumed[e] += 1
            terms.append((frozenset(ids), Fraction(1)))
    if any(consumed[e] != len(copies[e]) for e in range(15)):
        raise AssertionError("expansion did not consume every parallel copy")
    return exact_cover(g, terms)


def greedy_basis(g: MultiGraph) -> list[tuple[frozenset[int], int]]:
    """Matchings picked so each contains the lowest edge id its predecessors miss.

    Returns (matching, private edge id) pairs; the private ids certify that
    each matching added a previously uncovered edge, so no matching repeats.
    """
    covered: set[int] = set()
    basis: list[tuple[frozenset[int], int]] = []
    for e in range(g.m):
        if e in covered:
            continue
        pm = pm_containing_edges(g, (e,))
        if pm is None:
            raise ValueError(f"edge {e} lies in no perfect matching")
        basis.append((pm, e))
        covered.update(pm)
    return basis


def _incidence_rows(g: MultiGraph, columns: Sequence[frozenset[int]]) -> list[list[int]]:
    return [[1 if e in pm else 0 for pm in columns] for e in range(g.m)]


def _support_is_independent(
    g: MultiGraph, columns: Sequence[frozenset[int]], x: Sequence[int]
) -> bool:
    return terms_independent(g, [columns[j] for j, c in enumerate(x) if c != 0])


def _independent_support(
    g: MultiGraph, columns: Sequence[frozenset[int]], x: list[int]
) -> Optional[list[int]]:
    """x, or a sibling integer solution whose support columns are independent.

    Siblings differ by integer kernel vectors of the incidence matrix, so they
    solve the same system.  A bounded deterministic search ranks candidates by
    support size, then coefficient mass; None when nothing in range works.
    """
    if _support_is_independent(g, columns, x):
        return x
    kernel = integer_kernel(_incidence_rows(g, columns))[:6]
    candidates: list[list[int]] = []
    for z in kernel:
        for t in range(-4, 5):
            if t:
                candidates.append([a + t * b for a, b in zip(x, z)])
    for za, zb in combinations(kernel, 2):
        for ta in range(-2, 3):
            for tb in range(-2, 3):
                if ta and tb:
                    candidates.append(
                        [a + ta * p + tb * q for a, p, q in zip(x, za, zb)]
                    )
    best: Optional[tuple[tuple[int, int, tuple[int, ...]], list[int]]] = None
    for cand in candidates:
        support = sum(1 for c in cand if c)
        if support == 0:
            continue
        key = (support, sum(abs(c) for c in cand), tuple(cand))
        if (best is None or key < best[0]) and _support_is_independent(g, columns, cand):
            best = (key, cand)
    return best[1] if best else None


def brick_solve(g: MultiGraph) -> CoverSolution:
    """All-integer cover of a non-Petersen brick by independent matchings."""
    if bipartition(g) is not None:
        raise ValueError("bipartite graphs are solved by peeling, not the brick path")
    if petersen_embedding(g) is not None:
        raise ValueError("the Petersen brick requires the half-integral solver")
    columns = [pm for pm, _ in greedy_basis(g)]
    known = set(columns)
    source = iter_pms(g)
    while True:
        x = hnf_solve(_incidence_rows(g, columns), [1] * g.m)
        if x is not None:
            repaired = _independent_support(g, columns, x)
            if repaired is not None:
                terms = [
                    (columns[j], Fraction(c)) for j, c in enumerate(repaired) if c != 0
                ]
                return exact_cover(g, terms)
        added = 0
        for pm in source:
            if pm not in known:
                known.add(pm)
                columns.append(pm)
                added += 1
                if added == 8:
                    break
        if added == 0:
            raise ClassificationError(
                "all perfect matchings enumerated without an independent integral "
                "cover; the graph is not a non-Petersen brick"
            )
