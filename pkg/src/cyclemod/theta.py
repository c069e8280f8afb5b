"""Theta graphs: a cycle plus one chord, and the crossing paths they admit.

A theta graph is stored as the cycle's vertex sequence (in host labels, so a
theta extracted from a bigger graph remembers where it lives) together with
the chord's two positions on that cycle.

The central fact driven by ``theta_path``: pick any split (A, B) of the
vertices of a theta graph on n vertices into two nonempty parts.  For every
r < n there is a simple path with exactly r edges, one end in A and one end
in B -- except in one fully-characterized situation, namely when the graph
is bipartite and {A, B} is exactly its bipartition (then parity rules out
every even r).  The exception is reported by raising ``BipartiteException``;
any other failure would be a genuine bug and raises
``InternalInvariantViolation``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    BipartiteException,
    InternalInvariantViolation,
    InvalidChord,
    InvalidInput,
    InvalidVertex,
)
from .graphs import Graph, _from_sorted_adjacency


@dataclass(frozen=True)
class ThetaGraph:
    """A cycle ``cycle[0], cycle[1], ..., cycle[n-1]`` plus one chord.

    ``cycle`` holds host vertex labels in traversal order; ``chord_pos``
    holds two positions into that sequence, non-adjacent modulo n, so the
    underlying graph is simple, has n+1 edges, and exactly two vertices of
    degree 3.
    """

    cycle: tuple[int, ...]
    chord_pos: tuple[int, int]

    def __post_init__(self) -> None:
        n = len(self.cycle)
        if n < 4:
            raise InvalidInput("a theta graph needs at least 4 vertices")
        if len(set(self.cycle)) != n:
            raise InvalidInput("cycle vertices must be distinct")
        i, j = self.chord_pos
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidVertex(f"chord positions {self.chord_pos} out of range for n={n}")
        if i == j:
            raise InvalidChord("chord positions must differ")
        if i > j:
            i, j = j, i
            object.__setattr__(self, "chord_pos", (i, j))
        else:
            object.__setattr__(self, "chord_pos", (i, j))
        gap = min(j - i, n - (j - i))
        if gap < 2:
            raise InvalidChord(f"chord positions {self.chord_pos} duplicate a cycle edge")

    @property
    def n(self) -> int:
        return len(self.cycle)

    @property
    def chord_labels(self) -> tuple[int, int]:
        i, j = self.chord_pos
        return (self.cycle[i], self.cycle[j])

    @cached_property
    def position_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency over cycle positions 0..n-1 (cycle edges plus the chord)."""
        n = self.n
        i, j = self.chord_pos
        rows = []
        for p in range(n):
            nbrs = [(p - 1) % n, (p + 1) % n]
            if p == i:
                nbrs.append(j)
            elif p == j:
                nbrs.append(i)
            rows.append(tuple(sorted(set(nbrs))))
        return tuple(rows)

    @cached_property
    def underlying_graph(self) -> Graph:
        """The theta as a standalone Graph over positions; ``cycle`` maps
        position -> host label."""
        return _from_sorted_adjacency(self.position_adjacency)

    def is_bipartite(self) -> bool:
        # All three cycles through the chord must be even: the full cycle
        # (length n) and the two chord-split cycles (arc + 1 each).
        i, j = self.chord_pos
        return self.n % 2 == 0 and (j - i) % 2 == 1

    @cached_property
    def parity_split(self) -> tuple[frozenset[int], frozenset[int]] | None:
        """The bipartition in host labels, if the theta is bipartite.

        For a bipartite theta the 2-coloring is exactly by position parity
        (the chord joins an even position to an odd one).
        """
        if not self.is_bipartite():
            return None
        even = frozenset(self.cycle[p] for p in range(0, self.n, 2))
        odd = frozenset(self.cycle[p] for p in range(1, self.n, 2))
        return (even, odd)

    def arc_lengths(self) -> tuple[int, int, int]:
        """Edge counts of the three internally disjoint chord-end to
        chord-end paths, sorted ascending (the chord itself contributes 1)."""
        i, j = self.chord_pos
        forward = j - i
        backward = self.n - forward
        return tuple(sorted((1, forward, backward)))  # type: ignore[return-value]

    def validate(self) -> None:
        """Assert the degree profile: two vertices of degree 3, rest 2."""
        degs = sorted(len(row) for row in self.position_adjacency)
        if degs != [2] * (self.n - 2) + [3, 3]:
            raise InternalInvariantViolation(f"degree profile broken: {degs}")


def gen_theta(cycle_length: int, chord: tuple[int, int]) -> ThetaGraph:
    """A theta graph on vertices 0..cycle_length-1 with the given chord
    positions (which equal labels here)."""
    return ThetaGraph(cycle=tuple(range(cycle_length)), chord_pos=tuple(chord))


def _check_split(
    theta: ThetaGraph, side_a: frozenset[int], side_b: frozenset[int]
) -> None:
    if side_a & side_b:
        raise InvalidInput("sides overlap")
    if side_a | side_b != set(theta.cycle):
        raise InvalidInput("sides must cover every theta vertex exactly")
    if not side_a or not side_b:
        raise InvalidInput("both sides must be nonempty")


def theta_path(
    theta: ThetaGraph,
    side_a: frozenset[int] | set[int],
    side_b: frozenset[int] | set[int],
    r: int,
) -> tuple[int, ...]:
    """A simple path with exactly r edges, one end in side_a, other in side_b.

    Sides are given (and the path returned) in host labels.  Raises
    BipartiteException when {side_a, side_b} is exactly the bipartition of
    the theta -- the one split for which the guarantee genuinely fails --
    and returns a path for every other split with 1 <= r < n.
    """
    side_a = frozenset(side_a)
    side_b = frozenset(side_b)
    _check_split(theta, side_a, side_b)
    n = theta.n
    if not (1 <= r < n):
        raise InvalidInput(f"path length {r} out of range for n={n}")
    split = theta.parity_split
    if split is not None and {side_a, side_b} == {split[0], split[1]}:
        raise BipartiteException(
            "split coincides with the bipartition; crossing paths of this "
            "kind cannot exist for every length"
        )

    adj = theta.position_adjacency
    a_pos = sorted(p for p in range(n) if theta.cycle[p] in side_a)
    in_b = bytearray(n)
    for p in range(n):
        if theta.cycle[p] in side_b:
            in_b[p] = 1

    # Distance from each position to the nearest B position, for pruning:
    # a partial path that cannot reach B within its remaining edge budget
    # is abandoned early.  Degrees are at most 3, so the search stays cheap
    # at any size this type occurs at.
    dist = [n + 1] * n
    queue = deque()
    for p in range(n):
        if in_b[p]:
            dist[p] = 0
            queue.append(p)
    while queue:
        p = queue.popleft()
        for q in adj[p]:
            if dist[q] > dist[p] + 1:
                dist[q] = dist[p] + 1
                queue.append(q)

    on_path = bytearray(n)
    path: list[int] = []

    def extend(p: int) -> tuple[int, ...] | None:
        if len(path) == r + 1:
            return tuple(path) if in_b[p] else None
        after = r - len(path)  # edges left once q has been appended
        for q in adj[p]:
            if on_path[q] or dist[q] > after:
                continue
            on_path[q] = 1
            path.append(q)
            hit = extend(q)
            path.pop()
            on_path[q] = 0
            if hit is not None:
                return hit
        return None

    # Every qualifying path has an end in side_a, so rooting at A positions
    # loses nothing.
    for start in a_pos:
        if dist[start] > r:
            continue
        on_path[start] = 1
        path.append(start)
        hit = extend(start)
        path.pop()
        on_path[start] = 0
        if hit is not None:
            return tuple(theta.cycle[p] for p in hit)
    raise InternalInvariantViolation(
        f"no crossing path of length {r} for a non-bipartition split (n={n})"
    )
