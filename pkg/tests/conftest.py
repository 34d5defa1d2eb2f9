"""Shared fixtures: independent forcing oracles and a small-graph corpus.

The oracles deliberately take different code paths from the package (naive
rescan-from-scratch closure applying one force at a time in descending vertex
order; brute-force minimum search on top of it) so engine and solver results
are checked against genuinely independent computations.
"""

from __future__ import annotations

import itertools
from random import Random

import pytest

from zeroforcing.graph import Graph, from_edge_list


def oracle_closure(g: Graph, s) -> frozenset[int]:
    """Naive closure: rescan everything after each single force (descending order)."""
    black = set(s)
    while True:
        progressed = False
        for v in sorted(black, reverse=True):
            white = [u for u in g.adjacency[v] if u not in black]
            if len(white) == 1:
                black.add(white[0])
                progressed = True
                break
        if not progressed:
            return frozenset(black)


def oracle_is_zfs(g: Graph, s) -> bool:
    return len(oracle_closure(g, s)) == g.n


def oracle_z(g: Graph) -> int:
    """Brute-force minimum zero forcing set size via the naive closure."""
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), k):
            if oracle_is_zfs(g, combo):
                return k
    raise AssertionError("unreachable")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def random_connected(rng: Random, lo: int = 3, hi: int = 10) -> Graph:
    """Random spanning tree plus a few extra edges; always connected."""
    n = rng.randint(lo, hi)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    for _ in range(rng.randint(0, n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return from_edge_list(n, sorted(edges))


@pytest.fixture(scope="session")
def small_zoo() -> list[Graph]:
    """Named graphs on <= 8 vertices for exhaustive-subset property tests."""
    from zeroforcing.families import tree_gadget_family
    from zeroforcing.graph import (
        complete_bipartite_graph,
        complete_graph,
        cycle_graph,
        path_graph,
    )

    zoo = [
        from_edge_list(0, []),
        from_edge_list(1, []),
        from_edge_list(4, [(0, 1), (2, 3)]),  # two disjoint edges
        path_graph(2),
        path_graph(5),
        cycle_graph(4),
        cycle_graph(6),
        complete_graph(4),
        complete_graph(5),
        complete_bipartite_graph(3, 3),
        complete_bipartite_graph(1, 4),
        tree_gadget_family(1).graph,
        tree_gadget_family(1, pendant=True).graph,
        from_edge_list(7, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 4)]),
    ]
    rng = Random(7)
    zoo.extend(random_connected(rng, 5, 8) for _ in range(4))
    return zoo


def _invariant(adj: list[set[int]], n: int):
    degs = tuple(sorted(len(a) for a in adj))
    nbr = tuple(sorted(tuple(sorted(len(adj[u]) for u in adj[v])) for v in range(n)))
    tri = sum(
        1
        for a, b, c in itertools.combinations(range(n), 3)
        if b in adj[a] and c in adj[a] and c in adj[b]
    )
    return degs, nbr, tri


@pytest.fixture(scope="session")
def connected_corpus() -> list[Graph]:
    """One representative per isomorphism class of connected graphs, n <= 7.

    Built by vertex augmentation with invariant bucketing; exact isomorphism
    dedup is delegated to networkx.  Class counts are asserted against the
    known values, so a generation bug cannot pass silently.
    """
    nx = pytest.importorskip("networkx")

    classes: dict[int, list[frozenset[tuple[int, int]]]] = {1: [frozenset()]}
    for n in range(2, 8):
        buckets: dict[object, list] = {}
        reps: list[frozenset[tuple[int, int]]] = []
        for smaller in classes[n - 1]:
            for nbrs in range(1 << (n - 1)):
                edges = set(smaller)
                for u in range(n - 1):
                    if nbrs >> u & 1:
                        edges.add((u, n - 1))
                adj: list[set[int]] = [set() for _ in range(n)]
                for u, v in edges:
                    adj[u].add(v)
                    adj[v].add(u)
                bucket = buckets.setdefault(_invariant(adj, n), [])
                G = nx.Graph()
                G.add_nodes_from(range(n))
                G.add_edges_from(edges)
                if not any(nx.is_isomorphic(G, H) for H in bucket):
                    bucket.append(G)
                    reps.append(frozenset(edges))
        classes[n] = reps

    assert [len(classes[n]) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]

    from zeroforcing.graph import is_connected

    out = []
    for n in range(1, 8):
        for edges in classes[n]:
            g = from_edge_list(n, sorted(edges))
            if is_connected(g):
                out.append(g)
    assert sum(1 for g in out) == 1 + 1 + 2 + 6 + 21 + 112 + 853
    return out
