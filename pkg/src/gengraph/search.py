"""Budgeted exact searches: Hamiltonian cycles, cliques, colourings,
total domination.

All searches are deterministic: vertex orders and branching break ties by
ascending vertex index, and budgets count search-node expansions rather
than wall time, so identical inputs and budgets give identical outcomes.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .errors import DominationUndefinedError
from .graphs import Clique, Coloring, DominatingSet, Graph, HamCycle


@dataclass(frozen=True)
class SearchBudget:
    """Cap on search-tree expansions; deterministic across machines."""

    max_nodes: int = 10_000_000

    def __post_init__(self):
        if self.max_nodes < 0:
            raise ValueError("budget must be nonnegative")


DEFAULT_BUDGET = SearchBudget()


class _Counter:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit: int):
        self.nodes = 0
        self.limit = limit

    def tick(self) -> bool:
        self.nodes += 1
        return self.nodes > self.limit


class _BudgetExhausted(Exception):
    pass


# ---------------------------------------------------------------------------
# Hamiltonian cycles


@dataclass(frozen=True)
class HamiltonianResult:
    status: str  # "yes" | "no" | "budget"
    cycle: HamCycle | None
    reason: str | None
    nodes: int
    dirac: bool


def hamiltonian(graph: Graph, budget: SearchBudget = DEFAULT_BUDGET,
                order: list[int] | None = None) -> HamiltonianResult:
    """Decide Hamiltonicity by backtracking with forced-edge pruning.

    The static vertex order is degree-ascending (ties by index) unless an
    explicit order is given.  When the Dirac bound delta >= n/2 holds the
    decision is already "yes", but a certificate cycle is still produced by
    the search before returning.  "no" is returned only when the search
    space was exhausted within budget.
    """
    n = graph.n
    if n < 3:
        return HamiltonianResult("no", None, "fewer than 3 vertices", 0, False)
    degs = graph.degrees
    if (degs == 0).any():
        return HamiltonianResult("no", None, "isolated vertex", 0, False)
    dirac = bool(degs.min() * 2 >= n)
    if order is None:
        order = np.lexsort((np.arange(n), degs)).tolist()
    rank = [0] * n
    for pos, v in enumerate(order):
        rank[v] = pos
    bits = graph.bitmasks()
    counter = _Counter(budget.max_nodes)
    start = order[0]
    full = (1 << n) - 1
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))

    def extend(path: list[int], visited: int) -> tuple[int, ...] | None:
        if counter.tick():
            raise _BudgetExhausted
        end = path[-1]
        if len(path) == n:
            if bits[end] >> start & 1:
                return tuple(path)
            return None
        unvisited = full & ~visited
        sbit = 1 << start
        ebit = 1 << end
        # feasibility and forced-edge detection on the remaining vertices;
        # at the root the start vertex still has both cycle slots free, so
        # an edge at it is never forced there
        at_root = len(path) == 1
        forced = -1
        avail_count = {}
        rem = unvisited
        while rem:
            vbit = rem & -rem
            rem ^= vbit
            v = vbit.bit_length() - 1
            avail = bits[v] & (unvisited | sbit | ebit)
            cnt = avail.bit_count()
            if cnt < 2:
                return None
            avail_count[v] = cnt
            if cnt == 2 and (avail & ebit) and not at_root:
                if forced >= 0:
                    return None
                forced = v
        # connectivity of unvisited + endpoint
        seen = ebit
        frontier = ebit
        region = unvisited | ebit
        while frontier:
            nxt = 0
            while frontier:
                vbit = frontier & -frontier
                frontier ^= vbit
                nxt |= bits[vbit.bit_length() - 1] & region & ~seen
            seen |= nxt
            frontier = nxt
        if seen != region:
            return None
        if forced >= 0:
            cands = [forced]
        else:
            # most-constrained candidate first, ties by the static order
            cands = sorted(_iter_bits(bits[end] & unvisited),
                           key=lambda v: (avail_count[v], rank[v]))
        for v in cands:
            path.append(v)
            got = extend(path, visited | (1 << v))
            if got is not None:
                return got
            path.pop()
        return None

    try:
        got = extend([start], 1 << start)
    except _BudgetExhausted:
        return HamiltonianResult("budget", None, "node budget exhausted",
                                 counter.nodes, dirac)
    if got is None:
        return HamiltonianResult("no", None, "search space exhausted",
                                 counter.nodes, dirac)
    return HamiltonianResult("yes", HamCycle(got), None, counter.nodes, dirac)


def _iter_bits(mask: int):
    while mask:
        vbit = mask & -mask
        mask ^= vbit
        yield vbit.bit_length() - 1


# ---------------------------------------------------------------------------
# maximum clique


@dataclass(frozen=True)
class CliqueResult:
    size: int | None
    clique: Clique | None
    nodes: int
    exceeded: bool


def clique_number(graph: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> CliqueResult:
    """Exact maximum clique by branch and bound with greedy colouring bounds."""
    n = graph.n
    if n == 0:
        return CliqueResult(0, Clique(()), 0, False)
    bits = graph.bitmasks()
    counter = _Counter(budget.max_nodes)
    best: list[int] = []

    def color_sort(cand: int) -> list[tuple[int, int]]:
        # greedy colouring of candidates; emit class by class so that the
        # bound is nondecreasing and the branch cutoff below stays sound
        classes: list[int] = []
        for v in _iter_bits(cand):
            for ci, cmask in enumerate(classes):
                if not (cmask & bits[v]):
                    classes[ci] |= 1 << v
                    break
            else:
                classes.append(1 << v)
        out: list[tuple[int, int]] = []
        for ci, cmask in enumerate(classes):
            out.extend((v, ci + 1) for v in _iter_bits(cmask))
        return out

    def expand(current: list[int], cand: int):
        nonlocal best
        if counter.tick():
            raise _BudgetExhausted
        ordered = color_sort(cand)
        for v, bound in reversed(ordered):
            if len(current) + bound <= len(best):
                return
            current.append(v)
            nxt = cand & bits[v]
            if nxt:
                expand(current, nxt)
            elif len(current) > len(best):
                best = current.copy()
            current.pop()
            cand &= ~(1 << v)

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
    try:
        expand([], (1 << n) - 1)
    except _BudgetExhausted:
        return CliqueResult(None, None, counter.nodes, True)
    return CliqueResult(len(best), Clique(tuple(sorted(best))), counter.nodes, False)


# ---------------------------------------------------------------------------
# chromatic number


@dataclass(frozen=True)
class ChromaticResult:
    chi: int | None
    coloring: Coloring | None
    lower: int
    upper: int
    nodes: int
    exceeded: bool


def greedy_coloring(graph: Graph) -> Coloring:
    """Deterministic DSATUR; ties broken by higher degree then lower index."""
    n = graph.n
    colors = [-1] * n
    if n == 0:
        return Coloring(())
    sat: list[set[int]] = [set() for _ in range(n)]
    degs = graph.degrees
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] < 0),
                key=lambda u: (len(sat[u]), degs[u], -u))
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for w in graph.neighbors(v):
            sat[int(w)].add(c)
    return Coloring(tuple(colors))


def chromatic_number(graph: Graph, budget: SearchBudget = DEFAULT_BUDGET
                     ) -> ChromaticResult:
    """Exact chromatic number, seeded with the clique lower bound and the
    DSATUR upper bound; on budget exhaustion returns the open bracket."""
    n = graph.n
    if n == 0:
        return ChromaticResult(0, Coloring(()), 0, 0, 0, False)
    if graph.edge_count == 0:
        return ChromaticResult(1, Coloring((0,) * n), 1, 1, 0, False)
    cl = clique_number(graph, budget)
    if cl.exceeded:
        return ChromaticResult(None, None, 2, n, cl.nodes, True)
    lower = cl.size
    greedy = greedy_coloring(graph)
    upper = max(greedy.colors) + 1
    nodes = cl.nodes
    best = greedy
    counter = _Counter(max(0, budget.max_nodes - nodes))
    k = lower
    while k < upper:
        try:
            got = _k_coloring(graph, k, cl.clique.vertices, counter)
        except _BudgetExhausted:
            return ChromaticResult(None, None, k, upper, nodes + counter.nodes, True)
        if got is not None:
            best = got
            upper = k
            break
        k += 1
    return ChromaticResult(upper, best, upper, upper, nodes + counter.nodes, False)


def _k_coloring(graph: Graph, k: int, seed_clique: tuple[int, ...],
                counter: _Counter) -> Coloring | None:
    n = graph.n
    if k <= 0:
        return None
    if len(seed_clique) > k:
        return None
    colors = [-1] * n
    domains = [(1 << k) - 1 for _ in range(n)]
    adj = graph.bitmasks()
    for ci, v in enumerate(sorted(seed_clique)):
        colors[v] = ci
    order_pool = [v for v in range(n) if colors[v] < 0]
    for v in range(n):
        if colors[v] >= 0:
            for w in _iter_bits(adj[v]):
                domains[w] &= ~(1 << colors[v])

    def assign(remaining: list[int], used: int) -> bool:
        if counter.tick():
            raise _BudgetExhausted
        if not remaining:
            return True
        v = min(remaining, key=lambda u: (domains[u].bit_count(), u))
        dom = domains[v]
        if dom == 0:
            return False
        rest = [u for u in remaining if u != v]
        for c in _iter_bits(dom):
            # introduce colours in ascending order only (symmetry break)
            if c > used and c != used + 1:
                continue
            touched = []
            ok = True
            for w in _iter_bits(adj[v]):
                if colors[w] < 0 and (domains[w] >> c) & 1:
                    domains[w] &= ~(1 << c)
                    touched.append(w)
                    if domains[w] == 0:
                        ok = False
            colors[v] = c
            if ok and assign(rest, max(used, c)):
                return True
            colors[v] = -1
            for w in touched:
                domains[w] |= 1 << c
        return False

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
    used0 = max((colors[v] for v in range(n) if colors[v] >= 0), default=-1)
    if assign(order_pool, used0):
        return Coloring(tuple(colors))
    return None


# ---------------------------------------------------------------------------
# total domination


@dataclass(frozen=True)
class DominationResult:
    size: int | None
    witness: DominatingSet | None
    nodes: int
    exceeded: bool


def total_domination(graph: Graph, budget: SearchBudget = DEFAULT_BUDGET,
                     lower_hint: int = 1) -> DominationResult:
    """Minimum total dominating set by increasing-size branch and bound.

    Feasibility: every vertex has a neighbour in S; a vertex carrying a
    self-dominating mark additionally counts as its own neighbour.  Raises
    DominationUndefinedError when some vertex has no possible dominator.
    """
    n = graph.n
    if n == 0:
        return DominationResult(0, DominatingSet(()), 0, False)
    covers = []  # covers[u] = bitmask of vertices dominated by choosing u
    for u in range(n):
        m = graph.bitmasks()[u]
        if u in graph.marks:
            m |= 1 << u
        covers.append(m)
    dominators = [0] * n  # dominators[v] = bitmask of u that dominate v
    for u in range(n):
        for v in _iter_bits(covers[u]):
            dominators[v] |= 1 << u
    for v in range(n):
        if dominators[v] == 0:
            raise DominationUndefinedError(
                f"vertex {v} has no neighbours and no self-mark")
    full = (1 << n) - 1
    counter = _Counter(budget.max_nodes)
    max_cover = max(m.bit_count() for m in covers)

    def search(k: int, chosen: list[int], covered: int) -> list[int] | None:
        if counter.tick():
            raise _BudgetExhausted
        if covered == full:
            return chosen.copy()
        if len(chosen) == k:
            return None
        remaining = (full & ~covered).bit_count()
        if remaining > (k - len(chosen)) * max_cover:
            return None
        # branch on the uncovered vertex with fewest dominators
        vbest, dbest = -1, None
        rem = full & ~covered
        while rem:
            vbit = rem & -rem
            rem ^= vbit
            v = vbit.bit_length() - 1
            cnt = dominators[v].bit_count()
            if dbest is None or cnt < dbest:
                vbest, dbest = v, cnt
        for u in _iter_bits(dominators[vbest]):
            chosen.append(u)
            got = search(k, chosen, covered | covers[u])
            if got is not None:
                return got
            chosen.pop()
        return None

    lower = max(lower_hint, -(-n // max_cover))
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
    try:
        for k in range(lower, n + 1):
            got = search(k, [], 0)
            if got is not None:
                return DominationResult(
                    k, DominatingSet(tuple(sorted(got))), counter.nodes, False)
    except _BudgetExhausted:
        return DominationResult(None, None, counter.nodes, True)
    raise DominationUndefinedError("no dominating set exists")  # unreachable
