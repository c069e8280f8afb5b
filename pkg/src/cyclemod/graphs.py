"""Immutable simple undirected graphs, subgraph views, and generators.

Vertices are dense integers ``0..n-1`` and adjacency lists are sorted
tuples, so every operation in the library is deterministic.  Degree
statistics are exact rationals; no floating point is used anywhere.
"""

from __future__ import annotations

import io
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, TextIO

from .errors import (
    EmptyGraph,
    InvalidEdge,
    InvalidInput,
    InvalidVertex,
    NotPrime,
    ParseError,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph with sorted tuple adjacency."""

    n: int
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    m: int

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adjacency[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edges(self) -> Iterator[Edge]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for w in self.adjacency[u]:
                if w > u:
                    yield (u, w)

    @property
    def average_degree(self) -> Fraction:
        if self.n == 0:
            raise EmptyGraph("average degree of the empty graph is undefined")
        return Fraction(2 * self.m, self.n)

    def validate(self) -> None:
        """Check the representation invariants; raise InvalidEdge on breach."""
        if len(self.adjacency) != self.n:
            raise InvalidEdge("adjacency length does not match vertex count")
        total = 0
        for u, row in enumerate(self.adjacency):
            prev = -1
            for w in row:
                if w == u:
                    raise InvalidEdge(f"loop at vertex {u}")
                if not 0 <= w < self.n:
                    raise InvalidEdge(f"neighbor {w} of {u} out of range")
                if w <= prev:
                    raise InvalidEdge(f"adjacency of {u} not strictly increasing")
                if not self.has_edge(w, u):
                    raise InvalidEdge(f"edge ({u}, {w}) not symmetric")
                prev = w
            total += len(row)
        if total != 2 * self.m:
            raise InvalidEdge(f"edge count {self.m} does not match adjacency")


def _from_sorted_adjacency(adj: Sequence[Sequence[int]]) -> Graph:
    """Trusted constructor: rows must already be sorted, loop-free, symmetric."""
    rows = tuple(tuple(r) for r in adj)
    total = sum(len(r) for r in rows)
    return Graph(n=len(rows), adjacency=rows, m=total // 2)


def from_edge_list(pairs: Iterable[Edge], n: int) -> Graph:
    """Build a graph on n vertices from (u, v) pairs.

    Duplicate pairs and both orientations collapse to a single edge.  Loops
    or endpoints outside 0..n-1 raise InvalidEdge naming the pair.
    """
    if n < 0:
        raise InvalidInput("vertex count must be nonnegative")
    sets: list[set[int]] = [set() for _ in range(n)]
    for u, v in pairs:
        if u == v:
            raise InvalidEdge(f"loop edge ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for n={n}")
        sets[u].add(v)
        sets[v].add(u)
    return _from_sorted_adjacency([sorted(s) for s in sets])


def degree_stats(g: Graph) -> tuple[Fraction, int, int]:
    """Exact (average, minimum, maximum) degree. Raises EmptyGraph when n=0."""
    if g.n == 0:
        raise EmptyGraph("degree statistics of the empty graph are undefined")
    degrees = [len(row) for row in g.adjacency]
    return Fraction(2 * g.m, g.n), min(degrees), max(degrees)


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-color g if possible; None when any component has an odd cycle.

    The first part contains the smallest vertex of every component, so the
    result is deterministic.
    """
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    part0 = frozenset(v for v in range(g.n) if color[v] == 0)
    part1 = frozenset(v for v in range(g.n) if color[v] == 1)
    return part0, part1


@dataclass(frozen=True)
class Subgraph:
    """A subgraph of ``host``: a vertex set plus a subset of its edges.

    ``edge_list`` of None means the subgraph is induced (all host edges
    with both ends in ``vertices``); otherwise it is the explicit sorted
    tuple of (u, v) pairs with u < v.
    """

    host: Graph = field(repr=False)
    vertices: tuple[int, ...]
    edge_list: tuple[Edge, ...] | None = field(default=None, repr=False)

    def __repr__(self) -> str:
        return f"Subgraph(vertices={len(self.vertices)}, edges={self.edge_count})"

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def is_induced(self) -> bool:
        return self.edge_list is None

    @cached_property
    def edge_count(self) -> int:
        if self.edge_list is not None:
            return len(self.edge_list)
        members = self.vertex_set
        total = 0
        for v in self.vertices:
            for w in self.host.adjacency[v]:
                if w > v and w in members:
                    total += 1
        return total

    @cached_property
    def _explicit_adjacency(self) -> dict[int, tuple[int, ...]]:
        assert self.edge_list is not None
        acc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, w in self.edge_list:
            acc[u].append(w)
            acc[w].append(u)
        return {v: tuple(sorted(ws)) for v, ws in acc.items()}

    def sub_neighbors(self, v: int) -> Iterator[int]:
        """Neighbors of v inside this subgraph, ascending."""
        if self.edge_list is None:
            members = self.vertex_set
            return (w for w in self.host.adjacency[v] if w in members)
        return iter(self._explicit_adjacency[v])

    @property
    def average_degree(self) -> Fraction:
        if not self.vertices:
            raise EmptyGraph("average degree of an empty subgraph is undefined")
        return Fraction(2 * self.edge_count, len(self.vertices))

    def iter_edges(self) -> Iterator[Edge]:
        if self.edge_list is not None:
            return iter(self.edge_list)
        members = self.vertex_set
        return (
            (v, w)
            for v in self.vertices
            for w in self.host.adjacency[v]
            if w > v and w in members
        )

    def materialize(self) -> tuple[Graph, tuple[int, ...]]:
        """Relabel to a standalone Graph.

        Returns (graph, to_host) where to_host[new_label] = host label; new
        labels follow the host order of ``vertices``.  When the subgraph is
        the whole host, the host itself is returned without copying.
        """
        if self.edge_list is None and len(self.vertices) == self.host.n:
            return self.host, tuple(range(self.host.n))
        index = {v: i for i, v in enumerate(self.vertices)}
        adj: list[list[int]] = [[] for _ in self.vertices]
        for u, w in self.iter_edges():
            iu, iw = index[u], index[w]
            adj[iu].append(iw)
            adj[iw].append(iu)
        g = _from_sorted_adjacency([sorted(r) for r in adj])
        return g, tuple(self.vertices)


def subgraph_components(sub: Subgraph) -> list[Subgraph]:
    """Connected components of a subgraph, ordered by smallest vertex."""
    seen: set[int] = set()
    comps: list[Subgraph] = []
    explicit = sub.edge_list is not None
    for root in sub.vertices:
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in sub.sub_neighbors(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        verts = tuple(sorted(comp))
        if explicit:
            edges = tuple(e for e in sub.edge_list if e[0] in comp)
            comps.append(Subgraph(sub.host, verts, edges))
        else:
            comps.append(Subgraph(sub.host, verts, None))
    return comps


def connected_components(g: Graph) -> list[Subgraph]:
    """Connected components of g as induced subgraphs, ordered by smallest vertex."""
    return subgraph_components(Subgraph(g, tuple(range(g.n)), None))


def masked_host_graph(sub: Subgraph) -> Graph:
    """The subgraph as a Graph over the FULL host label range.

    Vertices outside the subgraph become isolated instead of being relabeled,
    so the result's labels coincide with host labels -- adjacency-walking
    algorithms can run on it and their output needs no translation.  When the
    subgraph is the entire host, the host object itself is returned; unchanged
    adjacency rows are shared, not copied.
    """
    host = sub.host
    if sub.is_induced and len(sub.vertices) == host.n:
        return host
    if sub.edge_list is not None:
        acc: list[list[int]] = [[] for _ in range(host.n)]
        for u, w in sub.edge_list:
            acc[u].append(w)
            acc[w].append(u)
        return _from_sorted_adjacency([sorted(r) for r in acc])
    members = sub.vertex_set
    rows: list[tuple[int, ...]] = []
    total = 0
    for v in range(host.n):
        if v not in members:
            rows.append(())
            continue
        row = host.adjacency[v]
        kept = tuple(w for w in row if w in members)
        rows.append(row if len(kept) == len(row) else kept)
        total += len(kept)
    return Graph(n=host.n, adjacency=tuple(rows), m=total // 2)


# ---------------------------------------------------------------------------
# generators


def gen_complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts {0..a-1} and {a..a+b-1}."""
    if a < 0 or b < 0:
        raise InvalidInput("part sizes must be nonnegative")
    left = tuple(range(a, a + b))
    right = tuple(range(a))
    adj = [left] * a + [right] * b
    return Graph(n=a + b, adjacency=tuple(adj), m=a * b)


def chain_copies(block: Graph, t: int) -> Graph:
    """Chain t copies of ``block``, gluing vertex 0 of each copy onto vertex
    n-1 of the previous one.  Every cycle of the result lies inside a single
    copy."""
    if t < 1:
        raise InvalidInput("need at least one block")
    if block.n < 2:
        raise InvalidInput("blocks need at least two vertices to share a cut vertex")
    step = block.n - 1
    n = t * step + 1
    edges: list[Edge] = []
    for i in range(t):
        off = i * step
        edges.extend((off + u, off + w) for u, w in block.edges())
    return from_edge_list(edges, n)


def gen_clique_blocks(q: int, t: int) -> Graph:
    """A path of t complete blocks K_q, consecutive blocks sharing one vertex."""
    if q < 2:
        raise InvalidInput("blocks must have at least two vertices")
    clique = from_edge_list(
        [(u, v) for u in range(q) for v in range(u + 1, q)], q
    )
    return chain_copies(clique, t)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def gen_projective_incidence(p: int) -> Graph:
    """Point-line incidence graph of the projective plane of prime order p.

    2(p^2+p+1) vertices (points first, then lines), (p+1)-regular, girth 6;
    in particular it is 4-cycle-free, which makes the family the densest
    easy source of C_4-free inputs at scale.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    reps: list[tuple[int, int, int]] = []
    for y in range(p):
        for z in range(p):
            reps.append((1, y, z))
    for z in range(p):
        reps.append((0, 1, z))
    reps.append((0, 0, 1))
    count = len(reps)  # p*p + p + 1
    index = {t: i for i, t in enumerate(reps)}
    inv = [0] * p
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)

    def canonical(x: int, y: int, z: int) -> tuple[int, int, int]:
        if x:
            f = inv[x]
            return (1, y * f % p, z * f % p)
        if y:
            f = inv[y]
            return (0, 1, z * f % p)
        return (0, 0, 1)

    adj: list[list[int]] = [[] for _ in range(2 * count)]
    for li, (a, b, c) in enumerate(reps):
        # two independent solutions of a*x + b*y + c*z = 0
        if a:
            u = ((-b) % p, 1, 0)
            w = ((-c) % p, 0, 1)
        elif b:
            u = (1, 0, 0)
            w = (0, (-c) % p, 1)
        else:
            u = (1, 0, 0)
            w = (0, 1, 0)
        line_vertex = count + li
        points = [canonical(*u)]
        for s in range(p):
            points.append(
                canonical(
                    (w[0] + s * u[0]) % p,
                    (w[1] + s * u[1]) % p,
                    (w[2] + s * u[2]) % p,
                )
            )
        row = adj[line_vertex]
        for t in points:
            pi = index[t]
            adj[pi].append(line_vertex)
            row.append(pi)
    for i in range(2 * count):
        adj[i] = sorted(adj[i])  # type: ignore[call-overload]
    return _from_sorted_adjacency(adj)


def disjoint_union(graphs: Sequence[Graph], isolated: int = 0) -> Graph:
    """Disjoint union with labels shifted in order, plus trailing isolated vertices."""
    if isolated < 0:
        raise InvalidInput("isolated vertex count must be nonnegative")
    adj: list[tuple[int, ...]] = []
    offset = 0
    for g in graphs:
        for row in g.adjacency:
            adj.append(tuple(w + offset for w in row))
        offset += g.n
    adj.extend(() for _ in range(isolated))
    return _from_sorted_adjacency(adj)


# ---------------------------------------------------------------------------
# edge-list text format


def write_edge_list(
    g: Graph, out: TextIO, metadata: dict[str, str] | None = None
) -> None:
    """Write ``# key: value`` comments, an ``n m`` header, then one edge per line."""
    for key, value in (metadata or {}).items():
        out.write(f"# {key}: {value}\n")
    out.write(f"{g.n} {g.m}\n")
    for u, v in g.edges():
        out.write(f"{u} {v}\n")


def edge_list_text(g: Graph, metadata: dict[str, str] | None = None) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf, metadata)
    return buf.getvalue()


def read_edge_list(source: TextIO) -> tuple[Graph, dict[str, str]]:
    """Parse the edge-list format; ParseError messages carry line numbers."""
    metadata: dict[str, str] = {}
    header: tuple[int, int] | None = None
    pairs: list[Edge] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                metadata[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: expected two integers, got {line!r}")
        if header is None:
            header = (x, y)
            if x < 0 or y < 0:
                raise ParseError(f"line {lineno}: negative counts in header")
        else:
            n = header[0]
            if x == y:
                raise ParseError(f"line {lineno}: loop edge ({x}, {y})")
            if not (0 <= x < n and 0 <= y < n):
                raise ParseError(f"line {lineno}: edge ({x}, {y}) out of range")
            pairs.append((x, y))
    if header is None:
        raise ParseError("line 1: missing 'n m' header")
    g = from_edge_list(pairs, header[0])
    if g.m != header[1]:
        raise ParseError(
            f"header claims {header[1]} edges but file defines {g.m} distinct edges"
        )
    return g, metadata


def load_edge_list(path: str) -> tuple[Graph, dict[str, str]]:
    with open(path, "r", encoding="utf-8") as fh:
        return read_edge_list(fh)


def save_edge_list(g: Graph, path: str, metadata: dict[str, str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_edge_list(g, fh, metadata)
