"""Adversaries and labeled indistinguishability graphs.

An adversary is a finite set of allowed round graphs.  Its single-round
indistinguishability graph connects two graphs whenever some process has the
same in-neighborhood in both; the edge label collects all such processes.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from .errors import NotRootedError
from .graphs import CommunicationGraph
from .procset import fmt, is_subset, procs_of


class Adversary:
    """An ordered, duplicate-free set of round graphs over a common process count.

    Graph names must be unique; unnamed graphs get positional names G1, G2, ...
    """

    __slots__ = ("n", "graphs", "names", "_by_name")

    def __init__(self, graphs: Sequence[CommunicationGraph]):
        graphs = tuple(graphs)
        if not graphs:
            raise ValueError("adversary needs at least one graph")
        n = graphs[0].n
        named = []
        seen_adj: dict[tuple, str] = {}
        for k, g in enumerate(graphs):
            if g.n != n:
                raise ValueError(f"graph {k} has n={g.n}, expected {n}")
            key = g._in
            if key in seen_adj:
                raise ValueError(
                    f"duplicate graph: {g.name or k} has the same adjacency as {seen_adj[key]}"
                )
            name = g.name if g.name is not None else f"G{k + 1}"
            seen_adj[key] = name
            if g.name is None:
                g = CommunicationGraph(n, g.edges(), name)
            named.append(g)
        names = tuple(g.name for g in named)
        if len(set(names)) != len(names):
            raise ValueError(f"graph names are not unique: {names}")
        self.n = n
        self.graphs = tuple(named)
        self.names = names
        self._by_name = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.graphs)

    def __getitem__(self, i: int) -> CommunicationGraph:
        return self.graphs[i]

    def index_of(self, name: str) -> int:
        return self._by_name[name]

    def root_masks(self) -> tuple[int, ...]:
        return tuple(g.root_mask for g in self.graphs)

    @property
    def all_rooted(self) -> bool:
        return all(g.is_rooted for g in self.graphs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Adversary):
            return NotImplemented
        return self.n == other.n and self.names == other.names and self.graphs == other.graphs

    def __hash__(self) -> int:
        return hash((self.n, self.names, tuple(g._in for g in self.graphs)))

    def __repr__(self) -> str:
        return f"Adversary(n={self.n}, graphs=[{', '.join(self.names)}])"


class IndistGraph:
    """Undirected graph on node indices with nonempty process-set edge labels."""

    __slots__ = ("size", "names", "_edges", "_components", "_comp_of")

    def __init__(self, size: int, names: Sequence[str], edges: Mapping[tuple[int, int], int]):
        if len(names) != size:
            raise ValueError("one name per node required")
        normalized: dict[tuple[int, int], int] = {}
        for (u, v), label in edges.items():
            if u == v:
                raise ValueError(f"self-edge at node {u}")
            if not (0 <= u < size and 0 <= v < size):
                raise ValueError(f"edge ({u},{v}) out of range")
            if label == 0:
                raise ValueError(f"edge ({u},{v}) has an empty label")
            key = (u, v) if u < v else (v, u)
            if key in normalized and normalized[key] != label:
                raise ValueError(f"conflicting labels for edge {key}")
            normalized[key] = label
        self.size = size
        self.names = tuple(names)
        self._edges = normalized
        self._components: tuple[tuple[int, ...], ...] | None = None
        self._comp_of: tuple[int, ...] | None = None

    def label(self, u: int, v: int) -> int | None:
        key = (u, v) if u < v else (v, u)
        return self._edges.get(key)

    def has_edge(self, u: int, v: int) -> bool:
        return self.label(u, v) is not None

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as (u, v, label) with u < v, sorted for determinism."""
        return [(u, v, self._edges[(u, v)]) for (u, v) in sorted(self._edges)]

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def edge_keys(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._edges)

    def same_edge_set(self, other: "IndistGraph") -> bool:
        return self.size == other.size and self._edges == other._edges

    def _adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.size)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components, each sorted, ordered by smallest contained node."""
        if self._components is None:
            adj = self._adjacency()
            seen = [False] * self.size
            comps = []
            for start in range(self.size):
                if seen[start]:
                    continue
                comp = [start]
                seen[start] = True
                queue = [start]
                while queue:
                    u = queue.pop()
                    for w in adj[u]:
                        if not seen[w]:
                            seen[w] = True
                            comp.append(w)
                            queue.append(w)
                comps.append(tuple(sorted(comp)))
            self._components = tuple(comps)
            comp_of = [0] * self.size
            for ci, comp in enumerate(self._components):
                for u in comp:
                    comp_of[u] = ci
            self._comp_of = tuple(comp_of)
        return self._components

    def component_of(self, u: int) -> int:
        self.components()
        assert self._comp_of is not None
        return self._comp_of[u]

    def to_dot(self, graph_name: str = "indist") -> str:
        """Deterministic DOT rendering; labels are sorted process lists."""
        lines = [f"graph {graph_name} {{"]
        for name in self.names:
            lines.append(f'  "{name}";')
        for u, v, label in self.edges():
            lines.append(f'  "{self.names[u]}" -- "{self.names[v]}" [label="{fmt(label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"IndistGraph(nodes={self.size}, edges={self.num_edges})"


def single_round_indist(d: Adversary) -> IndistGraph:
    """The indistinguishability graph of the adversary's graphs viewed as one-round patterns.

    Two graphs are joined iff some process has identical in-neighborhoods in
    both; the label is the set of all such processes.
    """
    edges: dict[tuple[int, int], int] = {}
    graphs = d.graphs
    for i in range(len(graphs)):
        gi = graphs[i]._in
        for j in range(i + 1, len(graphs)):
            gj = graphs[j]._in
            label = 0
            for p in range(d.n):
                if gi[p] == gj[p]:
                    label |= 1 << p
            if label:
                edges[(i, j)] = label
    return IndistGraph(len(graphs), d.names, edges)


def connected_components(ig: IndistGraph) -> tuple[tuple[int, ...], ...]:
    """Partition of the nodes into connected components (smallest-index order)."""
    return ig.components()


def is_protected(
    edge_labels: Mapping, guards: Sequence[CommunicationGraph]
) -> tuple[bool, dict]:
    """Check that every edge label contains the root of some guard graph.

    ``edge_labels`` maps an arbitrary edge key to its label mask.  Returns the
    overall verdict plus a witness map from edge key to the index of the
    protecting guard (smallest index on ties) or None where unprotected.
    """
    roots = []
    for k, g in enumerate(guards):
        if not g.is_rooted:
            raise NotRootedError(f"guard {g.name or k} is not rooted")
        roots.append(g.root_mask)
    witnesses: dict = {}
    ok = True
    for key in edge_labels:
        label = edge_labels[key]
        found = None
        for k, rm in enumerate(roots):
            if is_subset(rm, label):
                found = k
                break
        witnesses[key] = found
        if found is None:
            ok = False
    return ok, witnesses


def induced_edge_labels(ig: IndistGraph, nodes: Iterable[int]) -> dict[tuple[int, int], int]:
    """Labels of the edges of the subgraph induced by the given node set."""
    node_set = set(nodes)
    return {
        (u, v): label
        for (u, v, label) in ig.edges()
        if u in node_set and v in node_set
    }


def label_procs(label: int) -> tuple[int, ...]:
    return procs_of(label)
