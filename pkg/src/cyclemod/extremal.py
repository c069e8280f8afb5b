"""Exact maximum average degree of small bipartite graphs avoiding one
cycle length, with closed forms, bounds, and the derived lower-bound
constructions.

The exact search runs over one side's biadjacency rows as bitmasks with a
branch-and-bound on achievable edges; forbidden-cycle checks are incremental
(only cycles through the newest row need testing).  Results are optionally
cached on disk and re-verified before being trusted.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, ParseError, TooLarge, WrongParity
from .graphs import (
    Graph,
    bipartition,
    chain_copies,
    from_edge_list,
    gen_clique_blocks,
    gen_complete_bipartite,
    gen_projective_incidence,
    _is_prime,
)
from .oracle import ResidueQuery, contains_cycle_of_length

DEFAULT_MAX_K = 10
CACHE_ENV = "CYCLEMOD_CACHE"
CACHE_FILE = "extremal-cache.txt"


@dataclass(frozen=True)
class ExtremalRecord:
    """The answer for one (k, ell) pair.

    ``value`` is the exact maximum average degree when provenance is
    exact-search or closed-form; otherwise ``bounds`` brackets it.  The
    witness (when present) is a bipartite graph on k vertices with no cycle
    of length ell whose average degree attains ``value`` (or the lower
    bound).
    """

    k: int
    ell: int
    value: Fraction | None
    bounds: tuple[Fraction, Fraction] | None
    witness: Graph | None
    part_a: int | None
    provenance: str  # "exact-search" | "closed-form" | "bounds"


_memo: dict[tuple[int, int], ExtremalRecord] = {}


def d_closed_form_odd(k: int, ell: int) -> Fraction:
    """For odd ell every bipartite graph qualifies, so the densest complete
    bipartite graph on k vertices is extremal: average degree
    2*floor(k/2)*ceil(k/2)/k."""
    if ell % 2 == 0:
        raise WrongParity(f"closed form applies to odd forbidden lengths, not {ell}")
    if k < 1:
        raise InvalidInput("k must be positive")
    return Fraction(2 * (k // 2) * ((k + 1) // 2), k)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _has_even_cycle_through_row(row_masks: list[int], u: int, s: int) -> bool:
    """Does the bipartite graph given by row bitmasks contain a cycle of
    length 2s passing through row u?  Rows above u may be absent (zero)."""
    if s < 2:
        return False
    a = len(row_masks)
    target = row_masks[u]

    def walk(cur: int, used_rows: int, used_cols: int, rows_left: int) -> bool:
        if rows_left == 0:
            return bool(row_masks[cur] & target & ~used_cols)
        avail = row_masks[cur] & ~used_cols
        while avail:
            cbit = avail & -avail
            avail ^= cbit
            for nxt in range(a):
                if nxt == u or (used_rows >> nxt) & 1:
                    continue
                if row_masks[nxt] & cbit:
                    if walk(nxt, used_rows | (1 << nxt), used_cols | cbit, rows_left - 1):
                        return True
        return False

    return walk(u, 1 << u, 0, s - 1)


def _edge_tuple(masks: list[int], a: int) -> tuple[tuple[int, int], ...]:
    """Edges of the biadjacency matrix with rows 0..a-1 and columns a..a+b-1,
    already in sorted order."""
    out: list[tuple[int, int]] = []
    for i, mask in enumerate(masks):
        j = 0
        while mask:
            if mask & 1:
                out.append((i, a + j))
            mask >>= 1
            j += 1
    return tuple(out)


def _search_part(
    a: int, b: int, ell: int
) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Maximum edges of an a-by-b bipartite graph with no cycle of length
    ell, plus the lexicographically smallest edge list attaining it."""
    check_even = ell % 2 == 0 and ell <= 2 * min(a, b)
    s = ell // 2
    order = sorted(range(1 << b), key=lambda mk: (-_popcount(mk), mk))
    pops = {mk: _popcount(mk) for mk in order}
    best = -1
    best_edges: tuple[tuple[int, int], ...] = ()
    masks: list[int] = [0] * a

    def place(i: int, edges: int) -> None:
        nonlocal best, best_edges
        if edges + (a - i) * b < best:
            return
        if i == a:
            if edges > best:
                best = edges
                best_edges = _edge_tuple(masks, a)
            elif edges == best:
                cand = _edge_tuple(masks, a)
                if cand < best_edges:
                    best_edges = cand
            return
        for mk in order:
            masks[i] = mk
            if check_even and _has_even_cycle_through_row(masks[: i + 1], i, s):
                continue
            place(i + 1, edges + pops[mk])
        masks[i] = 0

    place(0, 0)
    return best, best_edges


def _cache_path(cache_dir: str | None) -> str | None:
    directory = cache_dir or os.environ.get(CACHE_ENV)
    if not directory:
        return None
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, CACHE_FILE)


def _verify_record(rec: ExtremalRecord) -> bool:
    """A record is trusted only if its witness independently checks out."""
    if rec.witness is None or rec.value is None:
        return False
    w = rec.witness
    if w.n != rec.k:
        return False
    if bipartition(w) is None:
        return False
    if w.n > 0 and w.average_degree != rec.value:
        return False
    if w.n == 0 and rec.value != 0:
        return False
    if rec.ell <= w.n:
        found = contains_cycle_of_length(w, rec.ell)
        if not found.exhaustive or found.witness is not None:
            return False
    return True


def _load_cached(path: str, k: int, ell: int) -> ExtremalRecord | None:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError:
        return None
    hit: ExtremalRecord | None = None
    for lineno, raw in enumerate(lines, start=1):
        parts = raw.split()
        if not parts:
            continue
        try:
            ck, cell, num, den, part_a = (int(x) for x in parts[:5])
            pairs = [tuple(int(t) for t in token.split(",")) for token in parts[5:]]
        except ValueError:
            raise ParseError(f"{path} line {lineno}: malformed cache record")
        if (ck, cell) != (k, ell):
            continue
        witness = from_edge_list([(u, v) for u, v in pairs], ck)
        candidate = ExtremalRecord(
            k=ck,
            ell=cell,
            value=Fraction(num, den),
            bounds=None,
            witness=witness,
            part_a=part_a,
            provenance="exact-search",
        )
        if _verify_record(candidate):
            hit = candidate  # later lines win
    return hit


def _append_cache(path: str, rec: ExtremalRecord) -> None:
    assert rec.value is not None and rec.witness is not None
    tokens = [
        str(rec.k),
        str(rec.ell),
        str(rec.value.numerator),
        str(rec.value.denominator),
        str(rec.part_a or 0),
    ]
    tokens.extend(f"{u},{v}" for u, v in rec.witness.edges())
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(" ".join(tokens) + "\n")


def d_exact(
    k: int,
    ell: int,
    *,
    max_k: int = DEFAULT_MAX_K,
    cache_dir: str | None = None,
    use_cache: bool = True,
) -> ExtremalRecord:
    """Exhaustive maximum average degree of a k-vertex bipartite graph with
    no cycle of length ell, with a canonical witness.

    The witness is deterministic: the part split and edge list are the
    lexicographically smallest among all maximizers.
    """
    if k < 1:
        raise InvalidInput("k must be positive")
    if ell < 3:
        raise InvalidInput("forbidden cycle length must be at least 3")
    if k > max_k:
        raise TooLarge(
            f"exact search is limited to k <= {max_k} (asked {k}); use d_bounds"
        )
    key = (k, ell)
    if use_cache and key in _memo:
        return _memo[key]
    path = _cache_path(cache_dir) if use_cache else None
    if path is not None:
        cached = _load_cached(path, k, ell)
        if cached is not None:
            _memo[key] = cached
            return cached

    best_edges = -1
    best_list: tuple[tuple[int, int], ...] = ()
    best_a = 0
    for a in range(0, k // 2 + 1):
        edges, edge_list = _search_part(a, k - a, ell)
        if edges > best_edges or (
            edges == best_edges and (edge_list, a) < (best_list, best_a)
        ):
            best_edges, best_list, best_a = edges, edge_list, a
    witness = from_edge_list(best_list, k)
    record = ExtremalRecord(
        k=k,
        ell=ell,
        value=Fraction(2 * best_edges, k),
        bounds=None,
        witness=witness,
        part_a=best_a,
        provenance="exact-search",
    )
    if use_cache:
        _memo[key] = record
        if path is not None:
            _append_cache(path, record)
    return record


def d_bounds(k: int, ell: int) -> ExtremalRecord:
    """Defensible bounds for k beyond exact-search reach: the lower bound is
    the best construction we can actually build, the upper bound is the
    trivial k/2."""
    if k < 1:
        raise InvalidInput("k must be positive")
    if ell < 3:
        raise InvalidInput("forbidden cycle length must be at least 3")
    candidates: list[Graph] = []
    if ell % 2 == 1:
        candidates.append(gen_complete_bipartite(k // 2, (k + 1) // 2))
    else:
        small = ell // 2 - 1
        if 1 <= small < k:
            candidates.append(gen_complete_bipartite(small, k - small))
        if ell == 4:
            incidence = _largest_incidence_within(k)
            if incidence is not None:
                candidates.append(incidence)
    best: Graph | None = None
    for g in candidates:
        padded = g if g.n == k else _pad_isolated(g, k)
        if best is None or padded.m > best.m:
            best = padded
    lower = Fraction(2 * best.m, k) if best is not None else Fraction(0)
    upper = Fraction(k, 2)
    part = None
    if best is not None:
        split = bipartition(best)
        part = len(split[0]) if split is not None else None
    return ExtremalRecord(
        k=k,
        ell=ell,
        value=None,
        bounds=(lower, upper),
        witness=best,
        part_a=part,
        provenance="bounds",
    )


def _pad_isolated(g: Graph, n: int) -> Graph:
    from .graphs import disjoint_union

    return disjoint_union([g], n - g.n)


def _largest_incidence_within(k: int) -> Graph | None:
    best_p = None
    p = 2
    while 2 * (p * p + p + 1) <= k:
        if _is_prime(p):
            best_p = p
        p += 1
    return gen_projective_incidence(best_p) if best_p is not None else None


def lower_bound_for_c(
    k: int, ell: int, blocks: int = 3, *, max_k: int = DEFAULT_MAX_K
) -> tuple[Fraction, Graph]:
    """A chained-blocks graph certifying that average degree
    d_{k+ell-1}(ell) + 2/(k+ell) does not force a cycle of length ell mod k.

    Every block is the extremal witness on k+ell-1 vertices; any cycle lies
    inside one block, so its length is at most k+ell-1 and differs from ell,
    leaving no length congruent to ell mod k.
    """
    size = k + ell - 1
    if size > max_k:
        raise TooLarge(
            f"blocks need {size} vertices, beyond the exact-search limit {max_k}"
        )
    record = d_exact(size, ell, max_k=max_k)
    assert record.value is not None and record.witness is not None
    bound = record.value + Fraction(2, k + ell)
    construction = chain_copies(record.witness, blocks)
    return bound, construction


@dataclass(frozen=True)
class NamedConstruction:
    """A graph together with the residue class it is claimed to avoid."""

    label: str
    graph: Graph
    claim: ResidueQuery
    expect_absent: bool = True


def named_constructions(
    k: int, ell: int | None = None, n: int | None = None
) -> list[NamedConstruction]:
    """The standing counterexample families at a requested scale.

    Always includes the chained cliques of order k+1 (no cycle of length
    2 mod k: block cycles have lengths 3..k+1).  With ``ell`` given, also
    the complete bipartite graph with small part ell-1, claimed to avoid
    length 2*ell mod k.
    """
    if k < 1:
        raise InvalidInput("k must be positive")
    out = [
        NamedConstruction(
            label=f"clique-blocks(q={k + 1}, t=3)",
            graph=gen_clique_blocks(k + 1, 3),
            claim=ResidueQuery(2, k),
        )
    ]
    if ell is not None:
        if ell < 2:
            raise InvalidInput("bipartite construction needs ell >= 2")
        total = n if n is not None else 2 * (ell + 1)
        if total < ell:
            raise InvalidInput(f"n={total} too small for parts {ell - 1}, {total - ell + 1}")
        out.append(
            NamedConstruction(
                label=f"complete-bipartite({ell - 1}, {total - ell + 1})",
                graph=gen_complete_bipartite(ell - 1, total - ell + 1),
                claim=ResidueQuery(2 * ell, k),
            )
        )
    return out
