"""Shared graph builders for the test suite."""

from __future__ import annotations

from itertools import combinations

import pytest

from cyclemod.graphs import Graph, from_edge_list


def cycle_graph(n: int) -> Graph:
    return from_edge_list([(i, (i + 1) % n) for i in range(n)], n)


def path_graph(n: int) -> Graph:
    return from_edge_list([(i, i + 1) for i in range(n - 1)], n)


def complete_graph(n: int) -> Graph:
    return from_edge_list(list(combinations(range(n), 2)), n)


def star_graph(leaves: int) -> Graph:
    return from_edge_list([(0, i) for i in range(1, leaves + 1)], leaves + 1)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(outer + spokes + inner, 10)


@pytest.fixture
def tmp_edge_file(tmp_path):
    def write(text: str, name: str = "g.edges") -> str:
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return write
