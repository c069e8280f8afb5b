"""Exhaustive cycle and path oracles for small graphs.

The workhorse is a depth-first enumeration of simple cycles rooted at each
cycle's smallest vertex, metered by an explicit node-expansion budget.  A
structurally independent subset+permutation spectrum is provided so the
two routes can be cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Iterator, NamedTuple

from .errors import InvalidInput, InvalidVertex, TooLarge
from .graphs import Graph

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class CycleWitness:
    """A claimed cycle: the vertex sequence in traversal order.

    The record itself is not validated on construction; ``verify_witness``
    is the authority on whether it holds in a given graph.
    """

    vertices: tuple[int, ...]
    length: int
    host_id: str | None = None

    @classmethod
    def of(cls, vertices: tuple[int, ...], host_id: str | None = None) -> "CycleWitness":
        return cls(vertices=tuple(vertices), length=len(vertices), host_id=host_id)


@dataclass(frozen=True)
class ResidueQuery:
    """Cycle lengths congruent to ell modulo k; ell is normalized into [0, k)."""

    ell: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidInput("modulus must be at least 1")
        object.__setattr__(self, "ell", self.ell % self.k)

    def matches(self, length: int) -> bool:
        return length % self.k == self.ell


class SpectrumResult(NamedTuple):
    lengths: frozenset[int]
    exhaustive: bool


class SearchResult(NamedTuple):
    witness: CycleWitness | None
    exhaustive: bool

    @property
    def found(self) -> bool:
        return self.witness is not None


class PathLengthResult(NamedTuple):
    lengths: frozenset[int]
    exhaustive: bool


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class _Budget:
    __slots__ = ("remaining", "exhausted")

    def __init__(self, limit: int):
        self.remaining = limit
        self.exhausted = False

    def spend(self) -> bool:
        if self.remaining <= 0:
            self.exhausted = True
            return False
        self.remaining -= 1
        return True


def canonical_cycle(seq: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate to start at the smallest vertex and fix the direction."""
    i = seq.index(min(seq))
    ring = seq[i:] + seq[:i]
    reverse = (ring[0],) + tuple(reversed(ring[1:]))
    return min(ring, reverse)


def _cyclic_component_vertices(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the biconnected components large enough to carry a
    cycle (three or more vertices), each sorted, ordered by smallest member.

    Iterative Hopcroft-Tarjan with an explicit edge stack, so graphs far
    beyond the recursion limit are fine.  Bridges and isolated vertices are
    dropped: no cycle can use them.
    """
    adj = g.adjacency
    disc = [0] * g.n  # 1-based discovery index; 0 means unvisited
    low = [0] * g.n
    counter = 1
    components: list[tuple[int, ...]] = []
    edge_stack: list[tuple[int, int]] = []
    for start in range(g.n):
        if disc[start] or not adj[start]:
            continue
        disc[start] = low[start] = counter
        counter += 1
        frames: list[tuple[int, int, Iterator[int]]] = [(start, -1, iter(adj[start]))]
        while frames:
            v, parent, neighbours = frames[-1]
            advanced = False
            for w in neighbours:
                if disc[w] == 0:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    frames.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            frames.pop()
            if not frames:
                continue
            u = frames[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                # u separates everything above the tree edge (u, v)
                members = {u, v}
                while edge_stack[-1] != (u, v):
                    a, b = edge_stack.pop()
                    members.add(a)
                    members.add(b)
                edge_stack.pop()
                if len(members) >= 3:
                    components.append(tuple(sorted(members)))
    components.sort()
    return components


def _enumerate_cycles(
    g: Graph,
    budget: _Budget,
    visit: Callable[[tuple[int, ...]], bool],
    max_len: int | None = None,
) -> None:
    """Call ``visit`` once per simple cycle (as a vertex tuple); stop when it
    returns True or the budget runs out.

    Each cycle is reported exactly once: the walk starts at the cycle's
    smallest vertex and the orientation with the smaller second vertex wins.
    The search runs one biconnected component at a time -- a cycle can never
    cross a cut vertex, while the simple *paths* a naive walk would chase
    across one grow multiplicatively with every block it enters.
    """
    adj = g.adjacency
    on_path = bytearray(g.n)
    in_comp = bytearray(g.n)
    path: list[int] = []

    def extend(v: int, root: int) -> bool:
        for w in adj[v]:
            if w == root:
                if len(path) >= 3 and path[1] < path[-1]:
                    if visit(tuple(path)):
                        return True
            elif (
                w > root
                and in_comp[w]
                and not on_path[w]
                and (max_len is None or len(path) < max_len)
            ):
                if not budget.spend():
                    return True
                on_path[w] = 1
                path.append(w)
                stop = extend(w, root)
                path.pop()
                on_path[w] = 0
                if stop:
                    return True
        return False

    for comp in _cyclic_component_vertices(g):
        for v in comp:
            in_comp[v] = 1
        stopped = False
        for root in comp:
            if not budget.spend():
                stopped = True
                break
            on_path[root] = 1
            path.append(root)
            stop = extend(root, root)
            path.pop()
            on_path[root] = 0
            if stop:
                stopped = True
                break
        for v in comp:
            in_comp[v] = 0
        if stopped:
            return


def cycle_lengths(g: Graph, budget: int = DEFAULT_BUDGET) -> SpectrumResult:
    """The set of simple cycle lengths of g.

    ``exhaustive`` is True exactly when the enumeration finished within the
    budget, i.e. when an absent length is authoritatively absent.
    """
    meter = _Budget(budget)
    found: set[int] = set()

    def visit(cycle: tuple[int, ...]) -> bool:
        found.add(len(cycle))
        return False

    _enumerate_cycles(g, meter, visit)
    return SpectrumResult(frozenset(found), not meter.exhausted)


def has_cycle_mod(g: Graph, query: ResidueQuery, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Search for any cycle whose length matches the residue query.

    A found witness is authoritative regardless of budget; absence is
    authoritative only when ``exhaustive`` is True.
    """
    meter = _Budget(budget)
    box: list[CycleWitness] = []

    def visit(cycle: tuple[int, ...]) -> bool:
        if query.matches(len(cycle)):
            box.append(CycleWitness.of(canonical_cycle(cycle)))
            return True
        return False

    _enumerate_cycles(g, meter, visit)
    if box:
        return SearchResult(box[0], True)
    return SearchResult(None, not meter.exhausted)


def contains_cycle_of_length(
    g: Graph, length: int, budget: int = DEFAULT_BUDGET
) -> SearchResult:
    """Search for a cycle of exactly ``length``; prunes all longer paths."""
    if length < 3:
        raise InvalidInput("cycles have at least three vertices")
    meter = _Budget(budget)
    box: list[CycleWitness] = []

    def visit(cycle: tuple[int, ...]) -> bool:
        if len(cycle) == length:
            box.append(CycleWitness.of(canonical_cycle(cycle)))
            return True
        return False

    _enumerate_cycles(g, meter, visit, max_len=length)
    if box:
        return SearchResult(box[0], True)
    return SearchResult(None, not meter.exhausted)


def path_length_set(
    g: Graph, a: int, b: int, budget: int = DEFAULT_BUDGET
) -> PathLengthResult:
    """Edge counts of all simple a-b paths.

    Enumeration prunes at b: a simple path ends the moment it reaches b, so
    nothing beyond it can yield a new a-b path.
    """
    if not (0 <= a < g.n and 0 <= b < g.n):
        raise InvalidVertex(f"endpoints ({a}, {b}) out of range")
    if a == b:
        raise InvalidInput("path endpoints must differ")
    meter = _Budget(budget)
    adj = g.adjacency
    on_path = bytearray(g.n)
    lengths: set[int] = set()
    depth = 0

    def walk(v: int) -> bool:
        nonlocal depth
        for w in adj[v]:
            if on_path[w]:
                continue
            if w == b:
                lengths.add(depth + 1)
                continue
            if not meter.spend():
                return True
            on_path[w] = 1
            depth += 1
            stop = walk(w)
            depth -= 1
            on_path[w] = 0
            if stop:
                return True
        return False

    if meter.spend():
        on_path[a] = 1
        walk(a)
    return PathLengthResult(frozenset(lengths), not meter.exhausted)


def verify_witness(g: Graph, witness: CycleWitness) -> Verification:
    """Check a witness against g; never raises.

    The reason names the first violated condition in the order: length
    mismatch, vertex out of range, repeat vertex, missing edge.
    """
    verts = witness.vertices
    if witness.length != len(verts) or len(verts) < 3:
        return Verification(False, f"length mismatch: claims {witness.length}, carries {len(verts)}")
    for v in verts:
        if not (0 <= v < g.n):
            return Verification(False, f"vertex out of range: {v}")
    seen: set[int] = set()
    for v in verts:
        if v in seen:
            return Verification(False, f"repeat vertex: {v}")
        seen.add(v)
    for i, u in enumerate(verts):
        w = verts[(i + 1) % len(verts)]
        if not g.has_edge(u, w):
            return Verification(False, f"missing edge ({u}, {w})")
    return Verification(True, None)


# ---------------------------------------------------------------------------
# independent route: subset + permutation spectrum


def spectrum_by_subsets(g: Graph, guard: int = 12) -> frozenset[int]:
    """Cycle-length spectrum computed the slow, unmistakable way.

    A length s is in the spectrum iff some s-subset of vertices carries a
    Hamiltonian cycle of the induced subgraph, decided by trying
    permutations.  Deliberately shares no code with the DFS enumeration.
    """
    if g.n > guard:
        raise TooLarge(f"subset spectrum is exponential; refusing n={g.n} > {guard}")
    lengths: set[int] = set()
    for size in range(3, g.n + 1):
        for subset in combinations(range(g.n), size):
            if _subset_has_hamiltonian_cycle(g, subset):
                lengths.add(size)
                break
    return frozenset(lengths)


def _subset_has_hamiltonian_cycle(g: Graph, subset: tuple[int, ...]) -> bool:
    members = set(subset)
    for v in subset:
        inside = sum(1 for w in g.adjacency[v] if w in members)
        if inside < 2:
            return False
    first = subset[0]
    rest = subset[1:]
    for perm in permutations(rest):
        if perm[0] > perm[-1]:  # each ring once per orientation
            continue
        if not g.has_edge(first, perm[0]):
            continued = False
        else:
            continued = True
            prev = perm[0]
            for nxt in perm[1:]:
                if not g.has_edge(prev, nxt):
                    continued = False
                    break
                prev = nxt
        if continued and g.has_edge(perm[-1], first):
            return True
    return False
