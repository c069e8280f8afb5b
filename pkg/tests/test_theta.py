"""Theta graphs and the crossing-path guarantee."""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclemod.errors import BipartiteException, InvalidChord, InvalidInput
from cyclemod.theta import ThetaGraph, gen_theta, theta_path


def _path_is_valid(theta: ThetaGraph, path: tuple[int, ...], a, b, r: int) -> bool:
    if len(path) != r + 1 or len(set(path)) != len(path):
        return False
    if not ((path[0] in a and path[-1] in b) or (path[0] in b and path[-1] in a)):
        return False
    pos = {v: p for p, v in enumerate(theta.cycle)}
    adj = theta.position_adjacency
    return all(pos[q] in adj[pos[p]] for p, q in zip(path, path[1:]))


class TestThetaGraph:
    def test_chord_positions_normalize(self):
        t = ThetaGraph(cycle=(0, 1, 2, 3, 4, 5), chord_pos=(4, 0))
        assert t.chord_pos == (0, 4)
        assert t.chord_labels == (0, 4)

    def test_adjacent_chord_rejected(self):
        with pytest.raises(InvalidChord):
            gen_theta(6, (0, 1))
        with pytest.raises(InvalidChord):
            gen_theta(6, (0, 5))  # wrap-around neighbors

    def test_equal_chord_positions_rejected(self):
        with pytest.raises(InvalidChord):
            gen_theta(6, (2, 2))

    def test_too_short_cycle_rejected(self):
        with pytest.raises(InvalidInput):
            gen_theta(3, (0, 2))

    def test_degree_profile(self):
        t = gen_theta(8, (0, 3))
        t.validate()
        degs = sorted(len(r) for r in t.position_adjacency)
        assert degs == [2, 2, 2, 2, 2, 2, 3, 3]

    def test_arc_lengths(self):
        assert gen_theta(6, (0, 3)).arc_lengths() == (1, 3, 3)
        assert gen_theta(7, (1, 3)).arc_lengths() == (1, 2, 5)

    def test_bipartite_iff_chord_joins_opposite_parities(self):
        assert gen_theta(6, (0, 3)).is_bipartite()
        assert not gen_theta(6, (0, 2)).is_bipartite()
        assert not gen_theta(7, (0, 3)).is_bipartite()

    def test_parity_split_in_host_labels(self):
        t = ThetaGraph(cycle=(10, 20, 30, 40, 50, 60), chord_pos=(0, 3))
        split = t.parity_split
        assert split == (frozenset({10, 30, 50}), frozenset({20, 40, 60}))

    def test_host_labels_survive(self):
        t = ThetaGraph(cycle=(7, 3, 9, 5), chord_pos=(0, 2))
        assert t.chord_labels == (7, 9)
        assert t.underlying_graph.n == 4


class TestThetaPath:
    def test_all_lengths_for_a_non_bipartition_split(self):
        t = gen_theta(6, (0, 3))
        a = frozenset({0, 1})
        b = frozenset({2, 3, 4, 5})
        for r in range(1, 6):
            path = theta_path(t, a, b, r)
            assert _path_is_valid(t, path, a, b, r)

    def test_bipartition_split_raises(self):
        t = gen_theta(6, (0, 3))
        even = frozenset({0, 2, 4})
        odd = frozenset({1, 3, 5})
        with pytest.raises(BipartiteException):
            theta_path(t, even, odd, 2)
        with pytest.raises(BipartiteException):
            theta_path(t, odd, even, 3)

    def test_non_bipartite_theta_has_no_excluded_split(self):
        t = gen_theta(6, (0, 2))
        even = frozenset({0, 2, 4})
        odd = frozenset({1, 3, 5})
        for r in range(1, 6):
            assert _path_is_valid(t, theta_path(t, even, odd, r), even, odd, r)

    def test_r_out_of_range(self):
        t = gen_theta(5, (0, 2))
        with pytest.raises(InvalidInput):
            theta_path(t, frozenset({0}), frozenset({1, 2, 3, 4}), 0)
        with pytest.raises(InvalidInput):
            theta_path(t, frozenset({0}), frozenset({1, 2, 3, 4}), 5)

    def test_split_validation(self):
        t = gen_theta(5, (0, 2))
        with pytest.raises(InvalidInput, match="overlap"):
            theta_path(t, frozenset({0, 1}), frozenset({1, 2, 3, 4}), 1)
        with pytest.raises(InvalidInput, match="cover"):
            theta_path(t, frozenset({0}), frozenset({1, 2}), 1)
        with pytest.raises(InvalidInput, match="nonempty"):
            theta_path(t, frozenset(), frozenset({0, 1, 2, 3, 4}), 1)

    def test_exhaustive_small_theta(self):
        # every split x every r on one fixed theta: the desk-scale version
        # of the exhaustive suite
        t = gen_theta(6, (0, 2))
        verts = list(t.cycle)
        for size in range(1, 6):
            for combo in combinations(verts, size):
                a = frozenset(combo)
                b = frozenset(verts) - a
                for r in range(1, 6):
                    path = theta_path(t, a, b, r)
                    assert _path_is_valid(t, path, a, b, r)

    def test_host_labelled_theta_returns_host_labels(self):
        t = ThetaGraph(cycle=(10, 11, 12, 13, 14, 15), chord_pos=(0, 3))
        path = theta_path(t, frozenset({10}), frozenset({11, 12, 13, 14, 15}), 3)
        assert set(path) <= set(t.cycle)
        assert path[0] == 10 or path[-1] == 10


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(min_value=4, max_value=9),
    data=st.data(),
)
def test_theta_path_always_crosses(n: int, data):
    i = 0
    j = data.draw(st.integers(min_value=2, max_value=n - 2), label="chord")
    t = gen_theta(n, (i, j))
    mask = data.draw(st.integers(min_value=1, max_value=2**n - 2), label="split")
    a = frozenset(v for v in range(n) if mask >> v & 1)
    b = frozenset(range(n)) - a
    r = data.draw(st.integers(min_value=1, max_value=n - 1), label="r")
    split = t.parity_split
    if split is not None and {a, b} == {split[0], split[1]}:
        with pytest.raises(BipartiteException):
            theta_path(t, a, b, r)
    else:
        assert _path_is_valid(t, theta_path(t, a, b, r), a, b, r)
