"""Shared fixture graphs and random generators for the test suite.

Node names in random graphs are zero-padded so the package's lexicographic
node order matches construction order, which keeps hand-written index
arithmetic in the tests honest.
"""

from __future__ import annotations

import numpy as np

from lapcoarse import build_cluster_set, build_graph

ALPHA, GAMMA, DELTA, RHO, ETA = 2.0, 3.0, 5.0, 7.0, 11.0


def sym_pairs(u: str, v: str):
    """Both drawn orientations of an undirected edge, as bare pairs."""
    return [(u, v), (v, u)]


def sym(u: str, v: str, w: float = 1.0):
    """Both drawn orientations of one undirected edge."""
    return [(u, v, w), (v, u, w)]


def triangle():
    """Complete undirected graph on a, b, c with unit weights and masses."""
    edges = sym("a", "b") + sym("a", "c") + sym("b", "c")
    return build_graph([("a", 1.0), ("b", 1.0), ("c", 1.0)], edges)


TRIANGLE_CLUSTER = [("b", "c"), ("c", "b")]


def triangle_cluster(graph=None):
    return build_cluster_set(graph or triangle(), TRIANGLE_CLUSTER, "undirected")


def hub_pair(rho: float = RHO, eta: float = ETA, w13: float = 1.0):
    """Hub node 1 doubly linked to a two-node cycle on {2, 3}.

    The cycle edges (drawn 2->3 with weight rho, drawn 3->2 with weight
    eta) form the cluster; the four hub edges are background.  ``w13``
    sets the weight of the drawn edge 1->3 so the symmetry of the
    background can be broken.
    """
    nodes = [("1", 1.0), ("2", 1.0), ("3", 1.0)]
    edges = [
        ("1", "2", 1.0),
        ("2", "1", 1.0),
        ("1", "3", w13),
        ("3", "1", 1.0),
        ("2", "3", rho),
        ("3", "2", eta),
    ]
    return build_graph(nodes, edges)


HUB_PAIR_CLUSTER = [("2", "3"), ("3", "2")]


def hub_pair_cluster(graph):
    return build_cluster_set(graph, HUB_PAIR_CLUSTER, "directed")


def two_sources():
    """Nodes 1 and 2 each feed node 3; no other edges, unit data."""
    nodes = [("1", 1.0), ("2", 1.0), ("3", 1.0)]
    return build_graph(nodes, [("1", "3", 1.0), ("2", "3", 1.0)])


TWO_SOURCES_CLUSTER = [("2", "3")]


def two_sources_cluster(graph):
    return build_cluster_set(graph, TWO_SOURCES_CLUSTER, "directed")


def branching_chain():
    """a feeds b and c, c feeds d; one reach with cabal {a}."""
    nodes = [(v, 1.0) for v in "abcd"]
    edges = [("a", "b", ALPHA), ("a", "c", GAMMA), ("c", "d", DELTA)]
    return build_graph(nodes, edges)


def two_chains():
    """Two disjoint single edges a->b and c->d."""
    nodes = [(v, 1.0) for v in "abcd"]
    return build_graph(nodes, [("a", "b", ALPHA), ("c", "d", DELTA)])


def braided_chain():
    """The branching chain plus shortcuts b->c and b->d."""
    nodes = [(v, 1.0) for v in "abcd"]
    edges = [
        ("a", "b", ALPHA),
        ("a", "c", GAMMA),
        ("c", "d", DELTA),
        ("b", "c", RHO),
        ("b", "d", ETA),
    ]
    return build_graph(nodes, edges)


def clique(n: int):
    """Complete undirected graph on n nodes, unit weights and masses."""
    names = [f"v{k:02d}" for k in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j:
                edges.append((names[i], names[j], 1.0))
    return build_graph([(v, 1.0) for v in names], edges)


def clique_with_hub(n: int):
    """A unit-mass hub attached to one node of an n-clique of mass 1/n each.

    Returns the graph and the cluster pair list (all clique edges).
    """
    names = [f"v{k:02d}" for k in range(n)]
    nodes = [("hub", 1.0)] + [(v, 1.0 / n) for v in names]
    edges = [("hub", names[0], 1.0), (names[0], "hub", 1.0)]
    cluster = []
    for i in range(n):
        for j in range(n):
            if i != j:
                edges.append((names[i], names[j], 1.0))
                cluster.append((names[i], names[j]))
    return build_graph(nodes, edges), cluster


def alternating_path(k: int):
    """Undirected path on 2k+1 nodes with decaying cluster rungs.

    Odd-position edges carry weight one and stay background; the edge
    after node 2n carries weight 1/(2n) and belongs to the cluster, so
    scaling the cluster by beta reproduces weights beta/(2n).  Returns
    the graph and the cluster pair list.
    """
    names = [f"p{i:02d}" for i in range(1, 2 * k + 2)]
    edges = []
    cluster = []
    for i in range(1, 2 * k + 1):
        u, v = names[i - 1], names[i]
        if i % 2 == 1:
            edges.extend(sym(u, v, 1.0))
        else:
            edges.extend(sym(u, v, 1.0 / i))
            cluster.extend([(u, v), (v, u)])
    return build_graph([(v, 1.0) for v in names], edges), cluster


def random_graph(
    rng: np.random.Generator,
    max_nodes: int = 8,
    undirected: bool = False,
    weight_range: tuple[float, float] = (0.5, 2.0),
):
    """Random graph with masses in [0.5, 2] and at least one edge.

    Edge weights are drawn from ``weight_range``; widening it stresses the
    solvers without touching the draw order of the default streams.
    """
    lo, hi = weight_range
    n = int(rng.integers(2, max_nodes + 1))
    names = [f"n{k:02d}" for k in range(n)]
    nodes = [(v, float(rng.uniform(0.5, 2.0))) for v in names]
    edges = []
    if undirected:
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.45:
                    edges.extend(sym(names[i], names[j], float(rng.uniform(lo, hi))))
    else:
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < 0.35:
                    edges.append((names[i], names[j], float(rng.uniform(lo, hi))))
    if not edges:
        w = float(rng.uniform(lo, hi))
        edges = sym(names[0], names[1], w) if undirected else [(names[0], names[1], w)]
    return build_graph(nodes, edges)


def random_cluster_pairs(rng: np.random.Generator, graph, undirected: bool = False):
    """Nonempty random subset of the drawn edges, symmetric when asked."""
    drawn = [(s, d) for s, d, _ in graph.edges()]
    if undirected:
        unordered = sorted({tuple(sorted(p)) for p in drawn})
        take = [p for p in unordered if rng.random() < 0.5]
        if not take:
            take = [unordered[int(rng.integers(len(unordered)))]]
        pairs = []
        for u, v in take:
            pairs.extend([(u, v), (v, u)])
        return pairs
    take = [p for p in drawn if rng.random() < 0.5]
    if not take:
        take = [drawn[int(rng.integers(len(drawn)))]]
    return take


def random_distribution(rng: np.random.Generator, masses):
    """Positive vector normalized to unit mass-weighted total."""
    raw = rng.uniform(0.1, 1.0, size=len(masses))
    return raw / float(raw @ np.asarray(masses))
