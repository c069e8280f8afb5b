"""Structural subroutines: cut halving, BFS layers, cores, and long cycles.

Everything here is deterministic: vertex scans run in label order and every
tie-break picks the smallest label, so identical inputs give identical
outputs (and identical diagnostics on failure).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb

from .errors import (
    EmptyCore,
    EmptyGraph,
    InvalidInput,
    InvalidVertex,
    NoDenseLayer,
    NotLocked,
    Stalled,
    TooLarge,
)
from .graphs import Graph, Subgraph
from .oracle import CycleWitness, canonical_cycle
from .theta import ThetaGraph


# ---------------------------------------------------------------------------
# bipartite half and component selection


def bipartite_half(g: Graph) -> Subgraph:
    """A spanning bipartite subgraph keeping at least half the edges.

    Starts from a BFS-parity 2-coloring (so an already bipartite graph keeps
    every edge) and then flips any vertex with more same-side than cross-side
    neighbors until none remains.  The fixpoint gives each vertex at least
    half of its degree across the cut.
    """
    color = bytearray(g.n)
    seen = bytearray(g.n)
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = 1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = 1
                    color[w] = 1 - color[v]
                    queue.append(w)

    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            same = 0
            for w in g.adjacency[v]:
                if color[w] == color[v]:
                    same += 1
            if 2 * same > len(g.adjacency[v]):
                color[v] = 1 - color[v]
                changed = True

    cut = 0
    for v in range(g.n):
        for w in g.adjacency[v]:
            if w > v and color[w] != color[v]:
                cut += 1
    if cut == g.m:
        return Subgraph(g, tuple(range(g.n)), None)
    edges = tuple(
        (v, w)
        for v in range(g.n)
        for w in g.adjacency[v]
        if w > v and color[w] != color[v]
    )
    return Subgraph(g, tuple(range(g.n)), edges)


def densest_component(h: Subgraph) -> Subgraph:
    """The connected component of largest average degree (ties: smallest
    vertex).  Its average degree is at least that of the whole subgraph."""
    from .graphs import subgraph_components

    if not h.vertices:
        raise EmptyGraph("cannot select a component of an empty subgraph")
    best: Subgraph | None = None
    best_avg = Fraction(-1)
    for comp in subgraph_components(h):
        avg = comp.average_degree
        if avg > best_avg:
            best, best_avg = comp, avg
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# BFS layering


@dataclass(frozen=True)
class BfsLayering:
    """Levels and tree parents of a breadth-first search.

    ``levels[i]`` is the sorted tuple of vertices at graph distance i from
    the root; ``parent`` maps every non-root reached vertex to the
    earliest-discovered neighbor in the previous level (tree edges preserve
    root distance).  ``complete`` is False when the graph has vertices the
    root cannot reach.
    """

    graph: Graph = field(repr=False)
    root: int
    parent: dict[int, int] = field(repr=False)
    levels: tuple[tuple[int, ...], ...]
    complete: bool

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    def depth_of(self, v: int) -> int:
        return self._depths[v]

    @cached_property
    def _depths(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, level in enumerate(self.levels):
            for v in level:
                out[v] = i
        return out

    def tree_path_to_root(self, v: int) -> tuple[int, ...]:
        """v, parent(v), ..., root."""
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return tuple(path)


def bfs_layering(g: Graph, root: int) -> BfsLayering:
    """Breadth-first layers from ``root`` under natural label order."""
    if not (0 <= root < g.n):
        raise InvalidVertex(f"root {root} out of range")
    dist = [-1] * g.n
    parent: dict[int, int] = {}
    dist[root] = 0
    queue = deque([root])
    reached = 1
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w in g.adjacency[v]:
            if dist[w] == -1:
                dist[w] = d
                parent[w] = v
                reached += 1
                queue.append(w)
    height = max(dist)
    buckets: list[list[int]] = [[] for _ in range(height + 1)]
    for v in range(g.n):
        if dist[v] >= 0:
            buckets[dist[v]].append(v)
    levels = tuple(tuple(b) for b in buckets)  # buckets are label-ascending
    return BfsLayering(
        graph=g, root=root, parent=parent, levels=levels, complete=reached == g.n
    )


def dense_layer_pair(
    gp: Graph, lay: BfsLayering, c: Fraction
) -> tuple[int, Subgraph]:
    """The smallest i >= 1 whose between-level graph L_{i-1} <-> L_i has
    average degree >= c over the pair's vertex set.

    Intended for bipartite hosts, where every edge joins consecutive levels;
    a counting argument then guarantees a qualifying i whenever the host's
    average degree is at least 2c.  Intra-level edges (non-bipartite hosts)
    are never counted and force an explicit edge set in the result.
    """
    depths = lay._depths
    cross = [0] * (lay.height + 1)
    intra = [0] * (lay.height + 1)
    for v in depths:
        dv = depths[v]
        for w in gp.adjacency[v]:
            if w > v and w in depths:
                dw = depths[w]
                if dw == dv + 1:
                    cross[dw] += 1
                elif dw + 1 == dv:
                    cross[dv] += 1
                elif dw == dv:
                    intra[dv] += 1
    densities: list[tuple[int, int, int]] = []
    for i in range(1, lay.height + 1):
        pair_vertices = len(lay.levels[i - 1]) + len(lay.levels[i])
        densities.append((i, cross[i], pair_vertices))
        if Fraction(2 * cross[i], pair_vertices) >= c:
            verts = tuple(sorted(lay.levels[i - 1] + lay.levels[i]))
            if intra[i - 1] == 0 and intra[i] == 0:
                return i, Subgraph(gp, verts, None)
            members = frozenset(verts)
            edges = tuple(
                (v, w)
                for v in verts
                for w in gp.adjacency[v]
                if w > v and w in members and abs(depths[w] - depths[v]) == 1
            )
            return i, Subgraph(gp, verts, edges)
    raise NoDenseLayer(
        f"no consecutive level pair reaches average degree {c}", densities
    )


# ---------------------------------------------------------------------------
# degree peeling and expansion


def peel_min_degree(g: Graph, delta: Fraction | int) -> Subgraph:
    """The maximal subgraph with every degree >= delta (the delta-core).

    Obtained by repeatedly deleting low-degree vertices; the core is unique,
    so deletion order does not matter.  Raises EmptyCore when nothing
    survives -- which cannot happen when the average degree is >= 2*delta.
    """
    degree = [len(row) for row in g.adjacency]
    dead = bytearray(g.n)
    queue = deque(v for v in range(g.n) if degree[v] < delta)
    for v in queue:
        dead[v] = 1
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if not dead[w]:
                degree[w] -= 1
                if degree[w] < delta:
                    dead[w] = 1
                    queue.append(w)
    survivors = tuple(v for v in range(g.n) if not dead[v])
    if not survivors:
        raise EmptyCore(f"every vertex peels away below degree {delta}")
    return Subgraph(g, survivors, None)


@dataclass(frozen=True)
class ExpansionReport:
    """Outcome of checking |boundary(X)| > factor * |X| over small sets X."""

    holds: bool
    violator: tuple[int, ...] | None
    boundary_size: int | None
    size_bound: int
    factor: int


def expansion_check(
    g: Graph,
    size_bound: int,
    factor: int = 2,
    connected_only: bool = False,
    guard: int = 2_000_000,
) -> ExpansionReport:
    """Exhaustively test every nonempty X with |X| <= size_bound.

    The first violating X in (size, lexicographic) order is reported.  By
    default all subsets are enumerated; ``connected_only`` restricts to
    connected X, which is NOT equivalent in general -- e.g. in K_{4,4} with
    size_bound 2 a same-side pair violates the bound while every connected
    set passes -- and exists so the two enumerations can be compared.
    """
    if size_bound < 1:
        raise InvalidInput("size bound must be at least 1")
    work = sum(comb(g.n, t) for t in range(1, min(size_bound, g.n) + 1))
    if work > guard:
        raise TooLarge(
            f"{work} candidate sets exceed the enumeration guard {guard}"
        )
    for t in range(1, min(size_bound, g.n) + 1):
        for subset in combinations(range(g.n), t):
            members = set(subset)
            if connected_only and not _is_connected_subset(g, subset, members):
                continue
            boundary = set()
            for v in subset:
                for w in g.adjacency[v]:
                    if w not in members:
                        boundary.add(w)
            if len(boundary) <= factor * t:
                return ExpansionReport(
                    holds=False,
                    violator=subset,
                    boundary_size=len(boundary),
                    size_bound=size_bound,
                    factor=factor,
                )
    return ExpansionReport(
        holds=True, violator=None, boundary_size=None,
        size_bound=size_bound, factor=factor,
    )


def _is_connected_subset(g: Graph, subset: tuple[int, ...], members: set[int]) -> bool:
    seen = {subset[0]}
    queue = deque([subset[0]])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w in members and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(subset)


# ---------------------------------------------------------------------------
# rotation-extension long cycles


def _grow_both_ends(g: Graph, path: list[int], on_path: bytearray) -> None:
    """Greedily extend either end with its smallest unused neighbor until
    both ends are stuck.  Leaves the path orientation unchanged."""
    grew = True
    while grew:
        grew = False
        for _ in range(2):
            tail = path[-1]
            for w in g.adjacency[tail]:
                if not on_path[w]:
                    path.append(w)
                    on_path[w] = 1
                    grew = True
                    break
            path.reverse()


def _segment_closure(g: Graph, path: list[int]) -> list[int] | None:
    """The longest cycle closable through one end of the path and an
    internal neighbor: for the tail end the earliest on-path neighbor, for
    the head the latest.  None when no end closes a cycle of length >= 3.

    This is the maximal-path step: an end whose neighbors all lie on the
    path yields a cycle covering the whole stretch back to its farthest
    neighbor, even when the full path cannot close (e.g. unbalanced
    bipartite graphs)."""
    pos = {v: idx for idx, v in enumerate(path)}
    best: list[int] | None = None
    first = min((pos[w] for w in g.adjacency[path[-1]] if w in pos), default=None)
    if first is not None and len(path) - first >= 3:
        best = path[first:]
    last = max((pos[w] for w in g.adjacency[path[0]] if w in pos), default=None)
    if last is not None and last + 1 >= 3:
        if best is None or last + 1 > len(best):
            best = path[: last + 1]
    return best


Segs = tuple[tuple[int, int], ...]


def _seg_materialize(base: list[int], segs: Segs) -> list[int]:
    """Expand a segment list into the vertex sequence it denotes."""
    out: list[int] = []
    for lo, hi in segs:
        if lo <= hi:
            out.extend(base[lo : hi + 1])
        else:
            out.extend(reversed(base[hi : lo + 1]))
    return out


def _rotation_round(
    g: Graph, base: list[int], on_path: bytearray
) -> tuple[str, list[int] | None, set[int]]:
    """One rotation search with the head fixed at base[0].

    Returns ("extend", longer_path, seen), ("cycle", cycle_path, seen) or
    ("stall", None, seen).  ``seen`` is the set of endpoint vertices reached
    by rotations (the diagnostic set on failure).

    Every rotation of the base path is a concatenation of base intervals,
    so the search carries interval lists and only expands the winning one:
    extension and closure tests need just the endpoint and the (shared)
    vertex set.  ``(lo, hi)`` with lo > hi denotes a reversed interval.
    """
    head = base[0]
    start = base[-1]
    pos = {v: j for j, v in enumerate(base)}
    came: set[int] = {start}
    order: deque[tuple[int, Segs]] = deque([(start, ((0, len(base) - 1),))])
    while order:
        e, segs = order.popleft()
        grown = next((w for w in g.adjacency[e] if not on_path[w]), None)
        if grown is not None:
            p = _seg_materialize(base, segs)
            p.append(grown)
            return "extend", p, came
        if len(base) >= 3 and g.has_edge(e, head):
            return "cycle", _seg_materialize(base, segs), came
        for w in g.adjacency[e]:
            idx = pos[w]
            for si, (lo, hi) in enumerate(segs):
                if (lo <= idx <= hi) if lo <= hi else (hi <= idx <= lo):
                    break
            else:  # unreachable: the intervals cover every path position
                continue
            if idx == hi:
                if si + 1 == len(segs):
                    continue  # w would be the endpoint itself
                ne = base[segs[si + 1][0]]
                if ne in came:
                    continue
                rest = segs[si + 1 :]
                child = segs[: si + 1]
            else:
                nxt = idx + 1 if lo <= hi else idx - 1
                ne = base[nxt]
                if ne in came:
                    continue
                rest = ((nxt, hi),) + segs[si + 1 :]
                child = segs[:si] + ((lo, idx),)
            child += tuple((b, a) for a, b in reversed(rest))
            came.add(ne)
            order.append((ne, child))
    return "stall", None, came


def posa_long_cycle(g: Graph, target: int) -> tuple[CycleWitness, int]:
    """A cycle of length >= target with a vertex whose neighbors all lie on
    the cycle, found by rotation-extension.

    The path is grown greedily, rotated when stuck, and closed into a cycle
    whenever an endpoint sees the other end.  A cycle that is long enough is
    returned as soon as some cycle vertex is "locked" (no neighbor off the
    cycle); otherwise the cycle is reopened at a vertex with an off-cycle
    neighbor and the walk continues.  Raises Stalled with the best cycle
    found and the final endpoint set when no further move exists.
    """
    if target < 3:
        raise InvalidInput("cycles have at least three vertices")
    start = next((v for v in range(g.n) if g.adjacency[v]), None)
    if start is None:
        raise Stalled("the graph has no edges", None, frozenset())
    on_path = bytearray(g.n)
    on_path[start] = 1
    path = [start]
    best_cycle: tuple[int, ...] | None = None
    seen_cycles: set[frozenset[int]] = set()

    while True:
        _grow_both_ends(g, path, on_path)
        cycle: list[int] | None = None
        endpoint_sets: set[int] = set()
        if len(path) >= 3 and g.has_edge(path[0], path[-1]):
            cycle = path
        else:
            for _ in range(2):
                verdict, payload, seen = _rotation_round(g, path, on_path)
                endpoint_sets |= seen
                if verdict == "extend":
                    assert payload is not None
                    path = payload
                    on_path[path[-1]] = 1
                    break
                if verdict == "cycle":
                    cycle = payload
                    break
                path.reverse()
            else:
                cycle = _segment_closure(g, path)
                if cycle is None:
                    raise Stalled(
                        f"rotation exhausted at path length {len(path)}",
                        best_cycle,
                        frozenset(endpoint_sets),
                    )
                kept = set(cycle)
                for v in path:
                    if v not in kept:
                        on_path[v] = 0
            if cycle is None:
                continue

        # ``cycle`` is a vertex sequence whose consecutive pairs and
        # wrap-around pair are edges.  Decide: done, reopen, or stalled.
        members = frozenset(cycle)
        if members in seen_cycles:
            raise Stalled(
                f"no further progress beyond a cycle of length {len(cycle)}",
                best_cycle,
                members,
            )
        seen_cycles.add(members)
        if best_cycle is None or len(cycle) > len(best_cycle):
            best_cycle = tuple(cycle)
        blocked = bytearray(g.n)
        for v in range(g.n):
            if not on_path[v]:
                for w in g.adjacency[v]:
                    blocked[w] = 1
        if len(cycle) >= target:
            locked = min((v for v in cycle if not blocked[v]), default=None)
            if locked is not None:
                witness = CycleWitness.of(canonical_cycle(tuple(cycle)))
                return witness, locked
        reopen = min((v for v in cycle if blocked[v]), default=None)
        if reopen is None:
            raise Stalled(
                f"cycle of length {len(cycle)} spans its component "
                f"but target is {target}",
                best_cycle,
                frozenset(cycle),
            )
        i = cycle.index(reopen)
        path = cycle[i + 1 :] + cycle[: i + 1]
        w = next(w for w in g.adjacency[reopen] if not on_path[w])
        path.append(w)
        on_path[w] = 1


def theta_from_cycle(g: Graph, cycle: CycleWitness, locked: int) -> ThetaGraph:
    """The cycle plus a chord from ``locked`` to its farthest neighbor.

    ``locked`` must lie on the cycle with ALL its g-neighbors on the cycle
    and degree at least 3, so a non-cycle-adjacent neighbor exists; the one
    at maximal cycle distance (ties: smaller label) becomes the chord end.
    """
    seq = cycle.vertices
    length = len(seq)
    pos = {v: i for i, v in enumerate(seq)}
    if locked not in pos:
        raise NotLocked(f"vertex {locked} is not on the cycle")
    nbrs = g.adjacency[locked]
    if len(nbrs) < 3:
        raise NotLocked(f"vertex {locked} has degree {len(nbrs)} < 3")
    off = [w for w in nbrs if w not in pos]
    if off:
        raise NotLocked(f"vertex {locked} has off-cycle neighbors {off}")
    i = pos[locked]
    best: tuple[int, int] | None = None  # (-distance, label)
    for w in nbrs:
        d = abs(pos[w] - i)
        d = min(d, length - d)
        if d < 2:
            continue
        key = (-d, w)
        if best is None or key < best:
            best = key
    assert best is not None  # degree >= 3 leaves a non-adjacent neighbor
    return ThetaGraph(cycle=seq, chord_pos=(i, pos[best[1]]))
