"""Graph representation, subgraph views, generators, and the text format."""

from __future__ import annotations

import io
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclemod.errors import (
    EmptyGraph,
    InvalidEdge,
    InvalidInput,
    NotPrime,
    ParseError,
)
from cyclemod.graphs import (
    Graph,
    Subgraph,
    bipartition,
    connected_components,
    degree_stats,
    disjoint_union,
    edge_list_text,
    from_edge_list,
    gen_clique_blocks,
    gen_complete_bipartite,
    gen_projective_incidence,
    masked_host_graph,
    read_edge_list,
    subgraph_components,
)

from conftest import complete_graph, cycle_graph, path_graph


class TestConstruction:
    def test_duplicates_and_orientations_collapse(self):
        g = from_edge_list([(0, 1), (1, 0), (0, 1), (1, 2)], 3)
        assert g.m == 2
        assert g.adjacency == ((1,), (0, 2), (1,))

    def test_loop_rejected(self):
        with pytest.raises(InvalidEdge, match="loop"):
            from_edge_list([(2, 2)], 3)

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidEdge, match="out of range"):
            from_edge_list([(0, 3)], 3)

    def test_negative_n_rejected(self):
        with pytest.raises(InvalidInput):
            from_edge_list([], -1)

    def test_validate_catches_asymmetry(self):
        bad = Graph(n=2, adjacency=((1,), ()), m=1)
        with pytest.raises(InvalidEdge, match="symmetric"):
            bad.validate()

    def test_validate_catches_unsorted_row(self):
        bad = Graph(n=3, adjacency=((2, 1), (0, 2), (0, 1)), m=3)
        with pytest.raises(InvalidEdge, match="increasing"):
            bad.validate()

    def test_average_degree_is_exact(self):
        g = path_graph(4)
        assert g.average_degree == Fraction(3, 2)
        with pytest.raises(EmptyGraph):
            _ = from_edge_list([], 0).average_degree

    def test_edges_iterate_sorted_once(self):
        g = cycle_graph(4)
        assert list(g.edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]

    def test_degree_stats(self):
        avg, lo, hi = degree_stats(gen_complete_bipartite(2, 3))
        assert (avg, lo, hi) == (Fraction(12, 5), 2, 3)


class TestBipartition:
    def test_complete_bipartite_parts(self):
        parts = bipartition(gen_complete_bipartite(3, 3))
        assert parts is not None
        assert parts[0] == frozenset({0, 1, 2})
        assert parts[1] == frozenset({3, 4, 5})

    def test_odd_cycle_is_not_bipartite(self):
        assert bipartition(cycle_graph(5)) is None

    def test_smallest_vertex_of_each_component_in_first_part(self):
        g = disjoint_union([path_graph(2), path_graph(2)])
        parts = bipartition(g)
        assert parts is not None
        assert {0, 2} <= parts[0]


class TestSubgraph:
    def test_induced_edge_count(self):
        sub = Subgraph(complete_graph(4), (0, 1, 2), None)
        assert sub.edge_count == 3
        assert sub.average_degree == Fraction(2)

    def test_explicit_edges_override_induction(self):
        sub = Subgraph(complete_graph(4), (0, 1, 2), ((0, 1),))
        assert sub.edge_count == 1
        assert list(sub.sub_neighbors(2)) == []

    def test_materialize_relabels(self):
        sub = Subgraph(cycle_graph(5), (1, 2, 3), None)
        g, to_host = sub.materialize()
        assert to_host == (1, 2, 3)
        assert g.n == 3 and g.m == 2

    def test_materialize_whole_host_shares_object(self):
        host = cycle_graph(5)
        g, to_host = Subgraph(host, tuple(range(5)), None).materialize()
        assert g is host
        assert to_host == (0, 1, 2, 3, 4)

    def test_components_ordered_by_smallest_vertex(self):
        g = disjoint_union([cycle_graph(3), path_graph(2)])
        comps = connected_components(g)
        assert [c.vertices for c in comps] == [(0, 1, 2), (3, 4)]

    def test_component_of_explicit_subgraph_keeps_edges(self):
        host = cycle_graph(6)
        sub = Subgraph(host, tuple(range(6)), ((0, 1), (3, 4)))
        comps = subgraph_components(sub)
        assert [c.vertices for c in comps] == [(0, 1), (2,), (3, 4), (5,)]
        assert comps[0].edge_list == ((0, 1),)


class TestMaskedHostGraph:
    def test_whole_host_returns_same_object(self):
        host = cycle_graph(4)
        assert masked_host_graph(Subgraph(host, (0, 1, 2, 3), None)) is host

    def test_outside_vertices_become_isolated(self):
        host = complete_graph(5)
        masked = masked_host_graph(Subgraph(host, (0, 1, 2), None))
        assert masked.n == 5
        assert masked.adjacency[4] == ()
        assert masked.adjacency[0] == (1, 2)
        assert masked.m == 3

    def test_labels_survive_masking(self):
        host = cycle_graph(6)
        masked = masked_host_graph(Subgraph(host, (2, 3, 4), None))
        assert masked.has_edge(2, 3) and masked.has_edge(3, 4)
        assert not masked.has_edge(1, 2)

    def test_explicit_edge_list_masking(self):
        host = complete_graph(4)
        masked = masked_host_graph(Subgraph(host, (0, 1, 2, 3), ((1, 3),)))
        assert masked.m == 1 and masked.adjacency[1] == (3,)


class TestGenerators:
    def test_complete_bipartite_counts(self):
        g = gen_complete_bipartite(3, 7)
        assert (g.n, g.m) == (10, 21)
        assert all(g.degree(v) == 7 for v in range(3))

    def test_clique_blocks_shares_cut_vertices(self):
        g = gen_clique_blocks(4, 2)
        assert (g.n, g.m) == (7, 12)
        assert g.degree(3) == 6  # the shared vertex

    def test_clique_blocks_rejects_tiny_blocks(self):
        with pytest.raises(InvalidInput):
            gen_clique_blocks(1, 3)

    def test_projective_p2_is_heawood_sized(self):
        g = gen_projective_incidence(2)
        assert (g.n, g.m) == (14, 21)
        assert all(g.degree(v) == 3 for v in range(14))

    def test_projective_girth_is_six(self):
        from cyclemod.oracle import cycle_lengths

        spectrum = cycle_lengths(gen_projective_incidence(3)).lengths
        assert 4 not in spectrum
        assert 6 in spectrum

    def test_projective_rejects_composite_order(self):
        with pytest.raises(NotPrime):
            gen_projective_incidence(6)
        with pytest.raises(NotPrime):
            gen_projective_incidence(1)

    def test_projective_incidence_counts(self):
        # every pair of points must share exactly one line
        g = gen_projective_incidence(5)
        count = 5 * 5 + 5 + 1
        points = range(count)
        lines = [set(g.adjacency[count + i]) for i in range(count)]
        for p in points:
            for q in range(p + 1, count):
                assert sum(1 for row in lines if p in row and q in row) == 1

    def test_disjoint_union_with_isolated(self):
        g = disjoint_union([cycle_graph(3)], isolated=2)
        assert g.n == 5 and g.m == 3
        assert g.adjacency[4] == ()


class TestEdgeListFormat:
    def test_roundtrip_with_metadata(self):
        g = gen_complete_bipartite(2, 2)
        text = edge_list_text(g, {"girth": "4", "generator": "demo"})
        g2, meta = read_edge_list(io.StringIO(text))
        assert g2.adjacency == g.adjacency
        assert meta == {"girth": "4", "generator": "demo"}

    def test_missing_header(self):
        with pytest.raises(ParseError, match="header"):
            read_edge_list(io.StringIO("# only: comments\n"))

    def test_bad_token_count(self):
        with pytest.raises(ParseError, match="line 2"):
            read_edge_list(io.StringIO("3 1\n0 1 2\n"))

    def test_loop_line_is_named(self):
        with pytest.raises(ParseError, match="line 2"):
            read_edge_list(io.StringIO("3 1\n1 1\n"))

    def test_edge_count_mismatch(self):
        with pytest.raises(ParseError, match="header claims"):
            read_edge_list(io.StringIO("3 2\n0 1\n"))

    def test_duplicate_edges_collapse_against_header(self):
        g, _ = read_edge_list(io.StringIO("3 1\n0 1\n1 0\n"))
        assert g.m == 1


@settings(max_examples=120, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=12),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_text_format_roundtrips_random_graphs(n: int, seed: int):
    import random

    rng = random.Random(seed)
    pairs = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4
    ]
    g = from_edge_list(pairs, n)
    g2, _ = read_edge_list(io.StringIO(edge_list_text(g)))
    assert g2.n == g.n and g2.adjacency == g.adjacency


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=2, max_value=40))
def test_masking_preserves_degrees_inside(n: int):
    g = gen_complete_bipartite(n // 2, n - n // 2)
    keep = tuple(range(0, g.n, 2))
    masked = masked_host_graph(Subgraph(g, keep, None))
    members = set(keep)
    for v in keep:
        expected = sorted(w for w in g.adjacency[v] if w in members)
        assert list(masked.adjacency[v]) == expected
