"""Multi-round communication patterns, full-information views, and their
indistinguishability graphs.

Views are interned structurally: two views get the same identifier iff they
are equal under the recursive definition (process identity at round 0, then
process, round, and the set of in-neighbor views one round earlier).  Inputs
stay symbolic since indistinguishability compares patterns under identical
inputs; concrete inputs only matter when runs are verified.
"""
from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterator, Sequence

from .errors import BudgetExceededError
from .graphs import CommunicationGraph
from .indist import Adversary, IndistGraph
from .procset import bit, procs_of

DEFAULT_PATTERN_BUDGET = 200_000


class ViewInterner:
    """Deterministic structural interning store for view identifiers.

    Identifiers are canonical across every pattern built against the same
    store, so cross-pattern view equality is plain identifier equality.
    Inserts are idempotent; a dict makes them atomic under the GIL, so one
    store may be shared by concurrent builders.
    """

    __slots__ = ("_ids",)

    def __init__(self) -> None:
        self._ids: dict[tuple, int] = {}

    def _intern(self, key: tuple) -> int:
        got = self._ids.get(key)
        if got is None:
            got = len(self._ids)
            self._ids[key] = got
        return got

    def leaf(self, p: int) -> int:
        return self._intern((0, p))

    def node(self, p: int, r: int, child_ids: Sequence[int]) -> int:
        return self._intern((p, r, tuple(sorted(child_ids))))

    def __len__(self) -> int:
        return len(self._ids)


_SHARED = ViewInterner()


@dataclass(frozen=True)
class Pattern:
    """A finite sequence of round graphs, stored as indices into an adversary.

    The empty pattern is valid.  Round positions are 1-based to match the
    usual round numbering.
    """

    adversary: Adversary
    rounds: tuple[int, ...]

    def __post_init__(self) -> None:
        for gi in self.rounds:
            if not (0 <= gi < len(self.adversary)):
                raise ValueError(f"graph index {gi} out of range")

    def __len__(self) -> int:
        return len(self.rounds)

    def graph_at(self, r: int) -> CommunicationGraph:
        if not (1 <= r <= len(self.rounds)):
            raise ValueError(f"round {r} out of range 1..{len(self.rounds)}")
        return self.adversary.graphs[self.rounds[r - 1]]

    def prefix(self, r: int) -> "Pattern":
        if not (0 <= r <= len(self.rounds)):
            raise ValueError(f"prefix length {r} out of range")
        return Pattern(self.adversary, self.rounds[:r])

    def extend(self, graph_index: int) -> "Pattern":
        return Pattern(self.adversary, self.rounds + (graph_index,))

    def remove_round(self, r: int) -> "Pattern":
        if not (1 <= r <= len(self.rounds)):
            raise ValueError(f"round {r} out of range 1..{len(self.rounds)}")
        return Pattern(self.adversary, self.rounds[: r - 1] + self.rounds[r:])

    @property
    def name(self) -> str:
        if not self.rounds:
            return "(empty)"
        return ".".join(self.adversary.names[gi] for gi in self.rounds)

    @staticmethod
    def repeat(d: Adversary, graph_index: int, r: int) -> "Pattern":
        return Pattern(d, (graph_index,) * r)

    @staticmethod
    def from_names(d: Adversary, spec: str) -> "Pattern":
        """Parse 'Ga.Gb.Gc' (or comma-separated) into a pattern."""
        spec = spec.strip()
        if not spec:
            return Pattern(d, ())
        parts = spec.replace(",", ".").split(".")
        return Pattern(d, tuple(d.index_of(p.strip()) for p in parts))


@dataclass(frozen=True)
class ViewTable:
    """Interned view identifiers for one pattern: rows[r][p-1] = id of p's view at time r."""

    rows: tuple[tuple[int, ...], ...]

    def id(self, p: int, r: int) -> int:
        return self.rows[r][p - 1]

    @property
    def final(self) -> tuple[int, ...]:
        return self.rows[-1]


def _initial_row(n: int, interner: ViewInterner) -> tuple[int, ...]:
    return tuple(interner.leaf(p) for p in range(1, n + 1))

def _extend_row(
    row: tuple[int, ...], g: CommunicationGraph, r: int, interner: ViewInterner
) -> tuple[int, ...]:
    return tuple(
        interner.node(p, r, {row[q - 1] for q in procs_of(g._in[p - 1])})
        for p in range(1, g.n + 1)
    )


def views(sigma: Pattern, interner: ViewInterner | None = None) -> ViewTable:
    """Compute the full view table of a pattern bottom-up."""
    interner = interner if interner is not None else _SHARED
    n = sigma.adversary.n
    row = _initial_row(n, interner)
    rows = [row]
    for r in range(1, len(sigma) + 1):
        row = _extend_row(row, sigma.graph_at(r), r, interner)
        rows.append(row)
    return ViewTable(tuple(rows))


def indistinguishable(
    sigma: Pattern, sigma_prime: Pattern, p: int, interner: ViewInterner | None = None
) -> bool:
    """True iff p ends with identical views under both (equal-length) patterns."""
    if len(sigma) != len(sigma_prime):
        raise ValueError(
            f"patterns have different lengths: {len(sigma)} vs {len(sigma_prime)}"
        )
    interner = interner if interner is not None else _SHARED
    return views(sigma, interner).id(p, len(sigma)) == views(sigma_prime, interner).id(
        p, len(sigma_prime)
    )


def indist_label(
    sigma: Pattern, sigma_prime: Pattern, interner: ViewInterner | None = None
) -> int:
    """Mask of the processes that cannot distinguish the two patterns."""
    if len(sigma) != len(sigma_prime):
        raise ValueError(
            f"patterns have different lengths: {len(sigma)} vs {len(sigma_prime)}"
        )
    interner = interner if interner is not None else _SHARED
    a = views(sigma, interner).final
    b = views(sigma_prime, interner).final
    label = 0
    for p in range(len(a)):
        if a[p] == b[p]:
            label |= 1 << p
    return label


def _influence_step(state: tuple[int, ...], g: CommunicationGraph) -> tuple[int, ...]:
    # state[q-1] = mask of processes whose time-0 state has influenced q
    out = []
    for q in range(1, g.n + 1):
        acc = 0
        for v in procs_of(g._in[q - 1]):
            acc |= state[v - 1]
        out.append(acc)
    return tuple(out)


def heard_of(sigma: Pattern, p: int, r_from: int, q: int, r_to: int) -> bool:
    """True iff p's state at time r_from influences q's state at time r_to."""
    if not (0 <= r_from < r_to <= len(sigma)):
        raise ValueError(
            f"need 0 <= r_from < r_to <= {len(sigma)}, got r_from={r_from}, r_to={r_to}"
        )
    influenced = bit(p)
    for r in range(r_from + 1, r_to + 1):
        g = sigma.graph_at(r)
        nxt = 0
        for v in range(1, g.n + 1):
            if g._in[v - 1] & influenced:
                nxt |= bit(v)
        influenced = nxt
    return bool(influenced & bit(q))


def broadcaster_mask(sigma: Pattern) -> int:
    """Mask of processes whose initial state reaches everyone by the end."""
    n = sigma.adversary.n
    state = tuple(bit(q) for q in range(1, n + 1))
    for r in range(1, len(sigma) + 1):
        state = _influence_step(state, sigma.graph_at(r))
    common = -1
    for m in state:
        common &= m
    return common & ((1 << n) - 1)


def broadcasters(sigma: Pattern) -> frozenset[int]:
    return frozenset(procs_of(broadcaster_mask(sigma)))


def remove_round(sigma: Pattern, r_prime: int) -> Pattern:
    """The pattern with the round r_prime graph omitted."""
    return sigma.remove_round(r_prime)


def pattern_count(d: Adversary, r: int) -> int:
    return len(d) ** r


def pattern_at(d: Adversary, r: int, index: int) -> Pattern:
    """Pattern at a lexicographic position (earliest round most significant)."""
    m = len(d)
    digits = []
    for _ in range(r):
        digits.append(index % m)
        index //= m
    if index:
        raise ValueError("pattern index out of range")
    return Pattern(d, tuple(reversed(digits)))


def pattern_index(sigma: Pattern) -> int:
    m = len(sigma.adversary)
    idx = 0
    for gi in sigma.rounds:
        idx = idx * m + gi
    return idx


@dataclass
class PatternLevel:
    """All patterns of one length in lexicographic order, with their final view
    rows and per-process influence states."""

    rounds: int
    view_rows: list[tuple[int, ...]]
    influence: list[tuple[int, ...]]

    def broadcaster_masks(self, n: int) -> list[int]:
        full = (1 << n) - 1
        out = []
        for state in self.influence:
            common = -1
            for m in state:
                common &= m
            out.append(common & full)
        return out


def iter_pattern_levels(
    d: Adversary,
    r_max: int,
    interner: ViewInterner | None = None,
    budget: int = DEFAULT_PATTERN_BUDGET,
) -> Iterator[PatternLevel]:
    """Yield levels 1..r_max of the pattern enumeration, extending round by round.

    Raises BudgetExceededError before materializing a level whose pattern
    count exceeds the budget; the error names the offending count and length.
    """
    interner = interner if interner is not None else ViewInterner()
    n = d.n
    m = len(d)
    rows = [_initial_row(n, interner)]
    states = [tuple(bit(q) for q in range(1, n + 1))]
    graphs = d.graphs
    for k in range(1, r_max + 1):
        required = m**k
        if required > budget:
            raise BudgetExceededError(required, budget, k)
        new_rows = []
        new_states = []
        for row, state in zip(rows, states):
            for g in graphs:
                new_rows.append(_extend_row(row, g, k, interner))
                new_states.append(_influence_step(state, g))
        rows, states = new_rows, new_states
        yield PatternLevel(k, rows, states)


def _level(d: Adversary, r: int, interner: ViewInterner | None, budget: int) -> PatternLevel:
    if r == 0:
        interner = interner if interner is not None else ViewInterner()
        return PatternLevel(
            0,
            [_initial_row(d.n, interner)],
            [tuple(bit(q) for q in range(1, d.n + 1))],
        )
    required = len(d) ** r
    if required > budget:
        raise BudgetExceededError(required, budget, r)
    last = None
    for last in iter_pattern_levels(d, r, interner, budget):
        pass
    assert last is not None
    return last


def _components_from_rows(
    n: int, rows: Sequence[tuple[int, ...]]
) -> tuple[list[int], list[list[int]]]:
    """Union-find over view-equality buckets: patterns sharing any process's
    final view are connected."""
    size = len(rows)
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in range(n):
        first_of: dict[int, int] = {}
        for i, row in enumerate(rows):
            vid = row[p]
            j = first_of.setdefault(vid, i)
            if j != i:
                ra, rb = find(i), find(j)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i in range(size):
        groups.setdefault(find(i), []).append(i)
    comps = sorted(groups.values(), key=min)
    comp_of = [0] * size
    for ci, comp in enumerate(comps):
        for i in comp:
            comp_of[i] = ci
    return comp_of, comps


def pattern_components(
    d: Adversary, r: int, budget: int = DEFAULT_PATTERN_BUDGET
) -> list[list[int]]:
    """Connected components of the r-round pattern indistinguishability graph,
    as lists of lexicographic pattern indices."""
    level = _level(d, r, None, budget)
    _, comps = _components_from_rows(d.n, level.view_rows)
    return comps


def pattern_indist_graph(
    d: Adversary,
    r: int,
    budget: int = DEFAULT_PATTERN_BUDGET,
    interner: ViewInterner | None = None,
) -> IndistGraph:
    """The full labeled indistinguishability graph over all r-round patterns.

    Nodes enumerate the patterns lexicographically; names compose the round
    graph names ("Ga.Gc").  Edges are collected per process from view-equality
    buckets, so the work is proportional to the indistinguishable pairs
    rather than all pairs.
    """
    level = _level(d, r, interner, budget)
    rows = level.view_rows
    names = [pattern_at(d, r, i).name for i in range(len(rows))]
    edges: dict[tuple[int, int], int] = {}
    for p in range(d.n):
        buckets: dict[int, list[int]] = {}
        for i, row in enumerate(rows):
            buckets.setdefault(row[p], []).append(i)
        pbit = 1 << p
        for members in buckets.values():
            for a in range(len(members)):
                ia = members[a]
                for b in range(a + 1, len(members)):
                    key = (ia, members[b])
                    edges[key] = edges.get(key, 0) | pbit
    return IndistGraph(len(rows), names, edges)
