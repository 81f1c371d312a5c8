"""Reachability structure of weighted digraphs.

A reach is a maximal reachable set, where "reachable from i" follows drawn
arrows outward from i.  Every reach is generated by exactly one source
component of the condensation (its cabal); nodes belonging to a single
reach form its exclusive part, nodes shared between reaches its common
part.  For undirected graphs reaches coincide with connected components.

Cluster sets package a subset of edges (the connectivity that will be sent
to infinity) together with its decomposition: connected components in
undirected mode, reaches of the cluster subgraph in directed mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import (
    ClustersShareNodes,
    ClusterViolation,
    EmptyClusterSet,
    NotSymmetricEdgeSet,
    UnknownEdge,
    UnknownNode,
)
from .graph import Graph, restrict_edges, transpose

ClusterMode = Literal["undirected", "directed"]

EdgePair = tuple[str, str]


def _drawn_successors(graph: Graph) -> list[list[int]]:
    """Adjacency lists following drawn arrows: x -> y iff W[y, x] > 0."""
    heads, tails = np.nonzero(graph.weights)
    adj: list[list[int]] = [[] for _ in range(graph.n)]
    for i, j in zip(heads.tolist(), tails.tolist()):
        if i != j:
            adj[j].append(i)
    return adj


def reachable_set(graph: Graph, node: str) -> frozenset[str]:
    """All nodes reachable from ``node`` along drawn arrows, itself included."""
    adj = _drawn_successors(graph)
    start = graph.index(node)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(graph.nodes[k] for k in seen)


def _tarjan_sccs(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan, reverse topological order."""
    n = len(adj)
    preorder = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    scc_stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if preorder[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, edge_pos = work[-1]
            if edge_pos == 0:
                preorder[v] = lowlink[v] = counter
                counter += 1
                scc_stack.append(v)
                on_stack[v] = True
            advanced = False
            for pos in range(edge_pos, len(adj[v])):
                w = adj[v][pos]
                if preorder[w] == -1:
                    work[-1] = (v, pos + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], preorder[w])
            if advanced:
                continue
            work.pop()
            if lowlink[v] == preorder[v]:
                comp = []
                while True:
                    w = scc_stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return sccs


@dataclass(frozen=True)
class Reach:
    """One maximal reachable set with its structure parts."""

    nodes: frozenset[str]
    cabal: frozenset[str]
    exclusive: frozenset[str]
    common: frozenset[str]

    @property
    def label(self) -> str:
        return "+".join(sorted(self.nodes))


@dataclass(frozen=True)
class ReachDecomposition:
    """All reaches of a graph, sorted by smallest member node."""

    reaches: tuple[Reach, ...]

    def __iter__(self):
        return iter(self.reaches)

    def __len__(self) -> int:
        return len(self.reaches)

    def reach_of_cabal_node(self, node: str) -> Reach:
        for reach in self.reaches:
            if node in reach.cabal:
                return reach
        raise UnknownNode(f"node {node!r} is not in any cabal")


def reaches(graph: Graph) -> ReachDecomposition:
    """Decompose the graph into reaches with cabal/exclusive/common parts.

    Source components of the condensation (no drawn arrow entering from
    outside) are the cabals; each reach is everything reachable from its
    cabal.
    """
    adj = _drawn_successors(graph)
    sccs = _tarjan_sccs(adj)
    comp_of = [0] * graph.n
    for ci, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = ci
    has_incoming = [False] * len(sccs)
    for x in range(graph.n):
        for y in adj[x]:
            if comp_of[x] != comp_of[y]:
                has_incoming[comp_of[y]] = True
    raw: list[tuple[frozenset[str], frozenset[str]]] = []
    for ci, comp in enumerate(sccs):
        if has_incoming[ci]:
            continue
        seen = set(comp)
        stack = list(comp)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        raw.append(
            (
                frozenset(graph.nodes[v] for v in seen),
                frozenset(graph.nodes[v] for v in comp),
            )
        )
    counts: dict[str, int] = {}
    for node_set, _ in raw:
        for v in node_set:
            counts[v] = counts.get(v, 0) + 1
    built = []
    for node_set, cabal in raw:
        exclusive = frozenset(v for v in node_set if counts[v] == 1)
        built.append(
            Reach(node_set, cabal, exclusive, node_set - exclusive)
        )
    built.sort(key=lambda r: min(r.nodes))
    return ReachDecomposition(tuple(built))


def _symmetric_pairs(graph: Graph, pairs: Iterable[EdgePair]) -> frozenset[EdgePair]:
    pair_set = frozenset(pairs)
    missing = [(s, d) for s, d in pair_set if (d, s) not in pair_set]
    if missing:
        raise NotSymmetricEdgeSet(
            f"edge subset lacks reverse orientations for {sorted(missing)}"
        )
    return pair_set


def connected_components(
    graph: Graph, pairs: Iterable[EdgePair] | None = None
) -> tuple[frozenset[str], ...]:
    """Partition of the node set by a symmetric edge subset.

    With ``pairs`` None the whole edge set is used (it must be symmetric).
    Singleton components are included.  Components are sorted by smallest
    member.
    """
    if pairs is None:
        pairs = graph.edge_pairs()
    pair_set = _symmetric_pairs(graph, pairs)
    _check_edges_exist(graph, pair_set)
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for src, dst in pair_set:
        a, b = find(graph.index(src)), find(graph.index(dst))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, set[str]] = {}
    for k, v in enumerate(graph.nodes):
        groups.setdefault(find(k), set()).add(v)
    return tuple(
        sorted((frozenset(g) for g in groups.values()), key=min)
    )


def _check_edges_exist(graph: Graph, pairs: Iterable[EdgePair]) -> None:
    for src, dst in pairs:
        if not graph.has_edge(src, dst):
            raise UnknownEdge(f"({src!r}, {dst!r}) is not an edge of the graph")


@dataclass(frozen=True)
class ClusterSet:
    """A validated collection of cluster edge sets over a parent graph.

    ``clusters[k]`` is the drawn-edge set of the k-th cluster and
    ``node_sets[k]`` its incident nodes.  In directed mode the clusters
    mirror the reaches of the cluster subgraph ``(V, total_edges)``; since
    reaches may overlap on common nodes, an edge lying in an overlap is
    listed in every reach containing both endpoints (the union of the
    clusters is always exactly ``total_edges``).  ``decomposition`` is that
    reach decomposition (undirected mode: components as trivial reaches),
    including edgeless singleton reaches, so its node sets cover V.
    """

    mode: ClusterMode
    graph: Graph
    clusters: tuple[frozenset[EdgePair], ...]
    node_sets: tuple[frozenset[str], ...]
    total_edges: frozenset[EdgePair]
    decomposition: ReachDecomposition

    @property
    def cluster_nodes(self) -> frozenset[str]:
        """Union of the cluster node sets (nodes touching a cluster edge)."""
        out: set[str] = set()
        for ns in self.node_sets:
            out |= ns
        return frozenset(out)

    @property
    def outside_nodes(self) -> frozenset[str]:
        return frozenset(self.graph.nodes) - self.cluster_nodes

    def subgraph(self) -> Graph:
        """Parent graph restricted to the cluster edges."""
        return restrict_edges(self.graph, self.total_edges)

    def background(self) -> Graph:
        """Parent graph with the cluster edges removed."""
        from .graph import drop_edges

        return drop_edges(self.graph, self.total_edges)


def _flatten(edges) -> tuple[list[EdgePair], list[list[EdgePair]] | None]:
    """Accept a flat pair list or a pre-grouped list of pair lists."""
    items = list(edges)
    if not items:
        return [], None

    def is_pair(x) -> bool:
        return (
            isinstance(x, (tuple, list))
            and len(x) == 2
            and all(isinstance(e, str) for e in x)
        )

    if all(is_pair(x) for x in items):
        return [(s, d) for s, d in items], None
    groups = [[(s, d) for s, d in grp] for grp in items]
    return [p for grp in groups for p in grp], groups


def build_cluster_set(
    graph: Graph,
    edges,
    mode: ClusterMode,
) -> ClusterSet:
    """Validate and decompose a cluster edge subset.

    ``edges`` may be a flat iterable of drawn pairs ``(src, dst)`` (split
    automatically into components or reaches) or a pre-grouped iterable of
    such iterables (validated for node-disjointness and connectedness in
    undirected mode, and against the derived decomposition in directed
    mode).  A flat empty list is a valid degenerate input: no clusters,
    every node its own component, and coarsening against it is the
    identity.  Pre-grouped input with an empty group is rejected.
    """
    flat, groups = _flatten(edges)
    _check_edges_exist(graph, flat)
    total = frozenset(flat)

    if mode == "undirected":
        total = _symmetric_pairs(graph, total)
        if groups is not None:
            _validate_undirected_groups(graph, groups)
        components = connected_components(graph, total)
        incident = {v for pair in total for v in pair}
        cluster_nodes = [c for c in components if c & incident]
        clusters = tuple(
            frozenset(p for p in total if p[0] in c) for c in cluster_nodes
        )
        decomposition = ReachDecomposition(
            tuple(
                Reach(c, c, c, frozenset())
                for c in components
            )
        )
        return ClusterSet(
            mode, graph, clusters, tuple(cluster_nodes), total, decomposition
        )

    if mode == "directed":
        if groups is not None and any(not grp for grp in groups):
            raise EmptyClusterSet("a pre-grouped cluster has no edges")
        sub = restrict_edges(graph, total)
        decomposition = reaches(sub)
        clusters = []
        node_sets = []
        for reach in decomposition:
            edge_set = frozenset(
                (s, d) for s, d in total if s in reach.nodes and d in reach.nodes
            )
            if edge_set:
                clusters.append(edge_set)
                node_sets.append(frozenset({v for p in edge_set for v in p}))
        if groups is not None:
            want = {frozenset(c) for c in clusters}
            got = {frozenset(g) for g in groups}
            if want != got:
                raise ClusterViolation(
                    "pre-grouped directed clusters do not match the reach "
                    "decomposition of their total edge set"
                )
        return ClusterSet(
            mode, graph, tuple(clusters), tuple(node_sets), total, decomposition
        )

    raise ValueError(f"mode must be 'undirected' or 'directed', got {mode!r}")


def _validate_undirected_groups(
    graph: Graph, groups: list[list[EdgePair]]
) -> None:
    node_groups: list[set[str]] = []
    for grp in groups:
        if not grp:
            raise EmptyClusterSet("a pre-grouped cluster has no edges")
        nodes = {v for pair in grp for v in pair}
        for other in node_groups:
            shared = nodes & other
            if shared:
                raise ClustersShareNodes(
                    f"clusters share nodes {sorted(shared)}"
                )
        node_groups.append(nodes)
    for grp in groups:
        sym = _symmetric_pairs(graph, grp)
        comps = [
            c
            for c in connected_components(graph, sym)
            if c & {v for pair in grp for v in pair}
        ]
        if len(comps) != 1:
            raise ClusterViolation(
                "a pre-grouped undirected cluster must induce a single "
                f"connected component, found {len(comps)}"
            )


def transpose_cluster_set(cluster_set: ClusterSet) -> ClusterSet:
    """Cluster set of the transposed graph with every edge reversed."""
    reversed_edges = [(d, s) for s, d in cluster_set.total_edges]
    return build_cluster_set(
        transpose(cluster_set.graph), reversed_edges, cluster_set.mode
    )
