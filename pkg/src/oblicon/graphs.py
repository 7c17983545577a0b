"""Directed round-communication graphs on processes 1..n and their root components.

A graph models one round of message delivery: the edge (u, v) lets v hear u's
current state.  Self-loops are always present (omitted ones are inserted at
construction), matching the convention that a process always knows itself.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import NotRootedError
from .procset import bit, full_mask, mask_of, procs_of


class CommunicationGraph:
    """Immutable directed graph for a single round.

    Equality and hashing compare the adjacency only; the optional ``name`` is
    display metadata.  The root component is computed eagerly and cached since
    every downstream analysis queries it repeatedly.
    """

    __slots__ = ("n", "name", "_in", "_out", "_root_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], name: str | None = None):
        if n < 2:
            raise ValueError(f"need at least 2 processes, got n={n}")
        self.n = n
        self.name = name
        in_masks = [bit(p) for p in range(1, n + 1)]
        out_masks = [bit(p) for p in range(1, n + 1)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{n}")
            in_masks[v - 1] |= bit(u)
            out_masks[u - 1] |= bit(v)
        self._in = tuple(in_masks)
        self._out = tuple(out_masks)
        self._root_mask = _root_mask(n, self._in, self._out)

    @classmethod
    def complete(cls, n: int, name: str | None = None) -> "CommunicationGraph":
        return cls(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v], name)

    def in_mask(self, p: int) -> int:
        return self._in[p - 1]

    def in_neighbors(self, p: int) -> tuple[int, ...]:
        return procs_of(self._in[p - 1])

    def out_mask(self, p: int) -> int:
        return self._out[p - 1]

    def edges(self, with_loops: bool = False) -> list[tuple[int, int]]:
        out = []
        for v in range(1, self.n + 1):
            for u in procs_of(self._in[v - 1]):
                if u != v or with_loops:
                    out.append((u, v))
        out.sort()
        return out

    @property
    def root_mask(self) -> int:
        """Root component as a bitmask; 0 when the graph is not rooted."""
        return self._root_mask

    @property
    def root(self) -> frozenset[int] | None:
        if self._root_mask == 0:
            return None
        return frozenset(procs_of(self._root_mask))

    @property
    def is_rooted(self) -> bool:
        return self._root_mask != 0

    def relabel(self, mapping: dict[int, int], name: str | None = None) -> "CommunicationGraph":
        """Return the graph with every process p renamed to mapping[p]."""
        return CommunicationGraph(
            self.n,
            [(mapping[u], mapping[v]) for u, v in self.edges()],
            name if name is not None else self.name,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommunicationGraph):
            return NotImplemented
        return self.n == other.n and self._in == other._in

    def __hash__(self) -> int:
        return hash((self.n, self._in))

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"CommunicationGraph({label}, n={self.n}, edges={len(self.edges())})"


def _sccs(n: int, out_masks: Sequence[int]) -> list[list[int]]:
    """Tarjan's strongly connected components, in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    def strongconnect(v: int) -> None:
        nonlocal counter
        index[v] = low[v] = counter
        counter += 1
        stack.append(v)
        on_stack.add(v)
        for w in procs_of(out_masks[v - 1]):
            if w not in index:
                strongconnect(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                comp.append(w)
                if w == v:
                    break
            comps.append(comp)

    for v in range(1, n + 1):
        if v not in index:
            strongconnect(v)
    return comps


def _root_mask(n: int, in_masks: Sequence[int], out_masks: Sequence[int]) -> int:
    """Mask of the unique source component of the condensation, or 0 if not unique.

    A root component is a strongly connected component with no incoming edge
    from outside; the graph is rooted iff the condensation has exactly one
    source node.
    """
    comps = _sccs(n, out_masks)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    is_source = [True] * len(comps)
    for v in range(1, n + 1):
        for u in procs_of(in_masks[v - 1]):
            if comp_of[u] != comp_of[v]:
                is_source[comp_of[v]] = False
    sources = [ci for ci, s in enumerate(is_source) if s]
    if len(sources) != 1:
        return 0
    return mask_of(comps[sources[0]])


def root_component(g: CommunicationGraph) -> frozenset[int] | None:
    """Member set of the unique root component, or None if the graph is not rooted."""
    return g.root


def is_root_compatible(graphs: Iterable[CommunicationGraph]) -> bool:
    """True iff all root components share at least one common process.

    Raises NotRootedError if any graph has no unique root component.
    """
    common = -1
    for g in graphs:
        if not g.is_rooted:
            raise NotRootedError(f"graph {g.name or g!r} is not rooted")
        common &= g.root_mask
    return common != 0


def reaches_all(g: CommunicationGraph, p: int) -> bool:
    """True iff p has a directed path to every process; equals p in Root(g) for rooted g."""
    reached = bit(p)
    frontier = reached
    target = full_mask(g.n)
    while frontier:
        nxt = 0
        for q in procs_of(frontier):
            nxt |= g._out[q - 1]
        frontier = nxt & ~reached
        reached |= nxt
        if reached == target:
            return True
    return reached == target
