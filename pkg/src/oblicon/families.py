"""Parameterized adversary families and validators for their construction claims.

Each generator re-checks the structural claims its construction is supposed to
satisfy (root identities, exact indistinguishability edges, delay behavior,
partition properties) and hard-fails on any violation, since these
constructions are the most error-prone content in the package.  Scale
parameters (root-set size, chain length, path length, block count) are
explicit so that tiny instances can be verified exhaustively.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from collections.abc import Iterator, Sequence

from .decision import RefinementTrace, decide
from .errors import FamilyValidationError
from .graphs import CommunicationGraph
from .indist import Adversary, IndistGraph, induced_edge_labels, is_protected, single_round_indist
from .patterns import (
    DEFAULT_PATTERN_BUDGET,
    Pattern,
    ViewInterner,
    broadcaster_mask,
    indist_label,
    pattern_at,
    pattern_indist_graph,
)
from .procset import is_subset, mask_of, procs_of


def _encode(sorted_encoders: Sequence[int], i: int) -> tuple[int, ...]:
    """Members of the encoder set picked by the binary expansion of i: bit h
    selects the (h+1)-th smallest member."""
    out = []
    h = 0
    while i:
        if i & 1:
            out.append(sorted_encoders[h])
        i >>= 1
        h += 1
    return tuple(out)


def _clique(members: Sequence[int]) -> list[tuple[int, int]]:
    return [(u, v) for u in members for v in members if u != v]


def _fan(sources, targets) -> list[tuple[int, int]]:
    return [(u, v) for u in sources for v in targets]


# ---------------------------------------------------------------------------
# Chain family: one indistinguishability edge per consecutive graph pair,
# which the refinement can only peel off one per iteration, right to left.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainSpec:
    """Parameters of the chain family.

    ``roots`` lists the designated root sets R_1..R_{N+1} for N graphs; the
    last set labels the rightmost edge but is never a root.  ``encoders`` is
    the bit-encoding pool B, disjoint from every root set.
    """

    n: int
    roots: tuple[frozenset[int], ...]
    encoders: frozenset[int]

    def __post_init__(self) -> None:
        n, roots, enc = self.n, self.roots, self.encoders
        if len(roots) < 2:
            raise FamilyValidationError("need at least 2 root sets (one graph)")
        size = len(roots[0])
        for k, r in enumerate(roots, start=1):
            if not r:
                raise FamilyValidationError(f"root set R_{k} is empty")
            if len(r) != size:
                raise FamilyValidationError("root sets must all have the same size")
            if not all(1 <= p <= n for p in r):
                raise FamilyValidationError(f"root set R_{k} out of range 1..{n}")
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if roots[a] == roots[b]:
                    raise FamilyValidationError(f"root sets R_{a + 1} and R_{b + 1} coincide")
        for k in range(len(roots) - 2):
            window = roots[k : k + 3]
            if window[0] & window[1] or window[0] & window[2] or window[1] & window[2]:
                raise FamilyValidationError(
                    f"root sets R_{k + 1}, R_{k + 2}, R_{k + 3} are not pairwise disjoint"
                )
        if not enc:
            raise FamilyValidationError("encoder set is empty")
        if not all(1 <= p <= n for p in enc):
            raise FamilyValidationError(f"encoder set out of range 1..{n}")
        for k, r in enumerate(roots, start=1):
            if r & enc:
                raise FamilyValidationError(f"encoder set intersects root set R_{k}")
        need = (self.num_graphs + 2).bit_length()  # ceil(log2(N+3))
        if len(enc) < need:
            raise FamilyValidationError(
                f"encoder set needs at least {need} members for {self.num_graphs} graphs"
            )

    @property
    def num_graphs(self) -> int:
        return len(self.roots) - 1


def simple_chain_spec(num_graphs: int, n: int | None = None) -> ChainSpec:
    """Singleton-root chain spec at the smallest process count (or a given n)."""
    bits = (num_graphs + 2).bit_length()
    least = num_graphs + 1 + bits
    if n is None:
        n = least
    if n < least:
        raise FamilyValidationError(f"chain with {num_graphs} graphs needs n >= {least}")
    roots = tuple(frozenset({k}) for k in range(1, num_graphs + 2))
    encoders = frozenset(range(num_graphs + 2, num_graphs + 2 + bits))
    return ChainSpec(n, roots, encoders)


def gen_chain(spec: ChainSpec) -> Adversary:
    """Build the chain adversary and verify its two structural claims:
    Root(G_i) = R_i, and the indistinguishability graph is exactly the chain
    with edge (G_i, G_{i+1}) labeled R_{i+2}."""
    n = spec.n
    enc_sorted = sorted(spec.encoders)
    num = spec.num_graphs
    universe = set(range(1, n + 1))
    graphs = []
    for i in range(1, num + 1):
        r_i = spec.roots[i - 1]
        r_next = spec.roots[i]
        r_after = spec.roots[i + 1] if i < num else frozenset()
        leftover = universe - spec.encoders - r_i - r_next - r_after
        edges = _clique(sorted(r_i))
        edges += _fan(sorted(r_i), enc_sorted + sorted(leftover))
        edges += _fan(_encode(enc_sorted, i), sorted(r_next))
        if i < num:
            edges += _fan(_encode(enc_sorted, i + 1), sorted(r_after))
        graphs.append(CommunicationGraph(n, edges, name=f"G{i}"))
    adv = Adversary(graphs)
    _validate_chain(spec, adv)
    return adv


def _validate_chain(spec: ChainSpec, adv: Adversary) -> None:
    enc_sorted = sorted(spec.encoders)
    codes = [frozenset(_encode(enc_sorted, i)) for i in range(1, spec.num_graphs + 2)]
    for k, code in enumerate(codes, start=1):
        if not code:
            raise FamilyValidationError(f"encoding of index {k} is empty")
    if len(set(codes)) != len(codes):
        raise FamilyValidationError("encoder set too small: index encodings collide")
    for i, g in enumerate(adv.graphs, start=1):
        if g.root != spec.roots[i - 1]:
            raise FamilyValidationError(
                f"Root(G{i}) = {g.root}, expected {set(spec.roots[i - 1])}"
            )
    ig = single_round_indist(adv)
    expected = {
        (i - 1, i): mask_of(spec.roots[i + 1]) for i in range(1, spec.num_graphs)
    }
    actual = {(u, v): lab for u, v, lab in ig.edges()}
    if actual != expected:
        raise FamilyValidationError(
            f"indistinguishability graph is not the expected chain: got {actual}, "
            f"expected {expected}"
        )


def _equal_partitions(elems: Sequence[int], m: int) -> Iterator[tuple[frozenset[int], ...]]:
    """Unordered partitions of elems into three m-sets, canonically ordered:
    the first cell holds the globally smallest element, the second the
    smallest remaining one."""
    elems = sorted(elems)
    first = elems[0]
    for rest1 in combinations(elems[1:], m - 1):
        cell1 = frozenset((first,) + rest1)
        remaining = [e for e in elems if e not in cell1]
        head = remaining[0]
        for rest2 in combinations(remaining[1:], m - 1):
            cell2 = frozenset((head,) + rest2)
            cell3 = frozenset(e for e in remaining if e not in cell2)
            yield cell1, cell2, cell3


def gen_canonical_chain(n: int, max_len: int) -> ChainSpec:
    """Chain spec from the alternating-partition schedule over two quarter
    ranges of the processes, with |R_i| = n/12 and B the upper half.

    Root sets come from successive partitions of [1, n/4] and [n/4+1, n/2]
    into three equal cells, alternating between the two ranges; partitions
    that would repeat an already-used cell are skipped so all root sets stay
    distinct.  The chain length is capped by ``max_len`` instead of growing
    with the partition count.
    """
    if n % 12 != 0:
        raise FamilyValidationError(f"n must be divisible by 12, got {n}")
    if max_len < 1:
        raise FamilyValidationError("max_len must be at least 1")
    m = n // 12
    low = list(range(1, 3 * m + 1))
    high = list(range(3 * m + 1, 6 * m + 1))
    streams = [_equal_partitions(low, m), _equal_partitions(high, m)]
    needed = max_len + 1
    roots: list[frozenset[int]] = []
    used: set[frozenset[int]] = set()
    while len(roots) < needed:
        parity = (len(roots) // 3) % 2
        stream = streams[parity]
        for cells in stream:
            if not any(c in used for c in cells):
                used.update(cells)
                roots.extend(cells)
                break
        else:
            raise FamilyValidationError(
                f"partition schedule exhausted at {len(roots)} root sets; "
                f"cannot reach a chain of length {max_len} for n={n}"
            )
    encoders = frozenset(range(6 * m + 1, n + 1))
    return ChainSpec(n, tuple(roots[:needed]), encoders)


# ---------------------------------------------------------------------------
# Inflated chain: direct root-to-encoder edges replaced by a relay path, which
# delays distinguishability by the path length each round.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InflateSpec:
    """Chain family with the root-to-encoder edges routed through a relay path."""

    base: ChainSpec
    path: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.path
        if not p:
            raise FamilyValidationError("relay path must have at least one node")
        if len(set(p)) != len(p):
            raise FamilyValidationError("relay path nodes must be distinct")
        if not all(1 <= v <= self.base.n for v in p):
            raise FamilyValidationError(f"relay path out of range 1..{self.base.n}")
        if set(p) & self.base.encoders:
            raise FamilyValidationError("relay path intersects the encoder set")
        for k, r in enumerate(self.base.roots, start=1):
            if set(p) & r:
                raise FamilyValidationError(f"relay path intersects root set R_{k}")

    @property
    def entry(self) -> int:
        return self.path[0]


def gen_inflated(spec: InflateSpec) -> Adversary:
    """Build the inflated chain and verify the delay property: G_i and G_{i+1}
    repeated r times stay indistinguishable for all of R_{i+2} while
    r <= path length.  Also checks that every indistinguishability edge that
    is new relative to the base chain has its label inside B union P."""
    base = spec.base
    n = base.n
    num = base.num_graphs
    enc_sorted = sorted(base.encoders)
    path = spec.path
    universe = set(range(1, n + 1))
    path_edges = [(path[k], path[k + 1]) for k in range(len(path) - 1)]
    graphs = []
    for i in range(1, num + 1):
        r_i = base.roots[i - 1]
        r_next = base.roots[i]
        r_after = base.roots[i + 1] if i < num else frozenset()
        leftover = universe - base.encoders - set(path) - r_i - r_next - r_after
        edges = _clique(sorted(r_i))
        edges += _fan(sorted(r_i), [spec.entry] + sorted(leftover))
        edges += path_edges
        edges += _fan([path[-1]], enc_sorted)
        edges += _fan(_encode(enc_sorted, i), sorted(r_next))
        if i < num:
            edges += _fan(_encode(enc_sorted, i + 1), sorted(r_after))
        graphs.append(CommunicationGraph(n, edges, name=f"G{i}"))
    adv = Adversary(graphs)
    _validate_inflated(spec, adv)
    return adv


def _validate_inflated(spec: InflateSpec, adv: Adversary) -> None:
    base = spec.base
    for i, g in enumerate(adv.graphs, start=1):
        if g.root != base.roots[i - 1]:
            raise FamilyValidationError(
                f"Root(G{i}) = {g.root}, expected {set(base.roots[i - 1])}"
            )
    relay_mask = mask_of(base.encoders) | mask_of(spec.path)
    ig = single_round_indist(adv)
    base_edges = {(i - 1, i) for i in range(1, base.num_graphs)}
    for u, v, lab in ig.edges():
        if (u, v) in base_edges:
            expected = mask_of(base.roots[v + 1])
            if lab & expected != expected:
                raise FamilyValidationError(
                    f"chain edge (G{u + 1},G{v + 1}) lost its root label"
                )
        elif not is_subset(lab, relay_mask):
            raise FamilyValidationError(
                f"new edge (G{u + 1},G{v + 1}) has label outside the relay/encoder sets"
            )
    interner = ViewInterner()
    for i in range(1, base.num_graphs):
        target = mask_of(base.roots[i + 1])
        for r in range(1, len(spec.path) + 1):
            lab = indist_label(
                Pattern.repeat(adv, i - 1, r), Pattern.repeat(adv, i, r), interner
            )
            if lab & target != target:
                raise FamilyValidationError(
                    f"delay violated: G{i}^{r} vs G{i + 1}^{r} distinguishable "
                    f"inside R_{i + 2} with path length {len(spec.path)}"
                )


def inflate_pattern(
    sigma: Pattern, spec: InflateSpec, inflated: Adversary, k: int
) -> Pattern:
    """Replace every round graph of a base-chain pattern by k rounds of its
    inflated counterpart; k must equal the relay path length."""
    if k != len(spec.path):
        raise ValueError(
            f"repetition factor {k} must equal the relay path length {len(spec.path)}"
        )
    if len(sigma.adversary) != len(inflated):
        raise ValueError("pattern's adversary does not match the inflated family size")
    rounds: list[int] = []
    for gi in sigma.rounds:
        rounds.extend([gi] * k)
    return Pattern(inflated, tuple(rounds))


def check_inflation_preserved(
    base_adv: Adversary,
    spec: InflateSpec,
    inflated: Adversary,
    length: int,
    budget: int = DEFAULT_PATTERN_BUDGET,
) -> int:
    """For every edge among base patterns of the given length, assert the
    inflated pair is still an edge with at least the same label.  Returns the
    number of edges checked."""
    k = len(spec.path)
    big = pattern_indist_graph(base_adv, length, budget)
    interner = ViewInterner()
    checked = 0
    for u, v, lab in big.edges():
        s1 = pattern_at(base_adv, length, u)
        s2 = pattern_at(base_adv, length, v)
        t1 = inflate_pattern(s1, spec, inflated, k)
        t2 = inflate_pattern(s2, spec, inflated, k)
        tlab = indist_label(t1, t2, interner)
        if not is_subset(lab, tlab):
            raise FamilyValidationError(
                f"inflation lost label bits on edge {s1.name} -- {s2.name}: "
                f"{procs_of(lab)} vs {procs_of(tlab)}"
            )
        checked += 1
    return checked


# ---------------------------------------------------------------------------
# Partitioned family: blocks S_1..S_t where each block's connecting edges are
# protected by the next block, keeping refinement short while consensus needs
# on the order of t rounds.
# ---------------------------------------------------------------------------


def _interconnect_extras(m: int) -> list[tuple[int, int]]:
    """Possible extra in-edges of the m-cycle as position pairs (u, v), u not
    being v's cycle predecessor."""
    if m < 2:
        return []
    return sorted(
        (u, v)
        for v in range(m)
        for u in range(m)
        if u != v and u != (v - 1) % m
    )


def interconnect_variant_count(m: int) -> int:
    return 1 << len(_interconnect_extras(m))


@dataclass(frozen=True)
class PartitionSpec:
    """Parameters of the partitioned family with t blocks and root size m.

    ``roots`` holds R_1..R_{2t+1}; ``carriers``/``alt_carriers`` hold
    U_1..U_t and U'_1..U'_t.  The layout follows the inductive scheme: low
    range [1,2m] hosts R_2 and the U' sets, mid range [2m+1,4m] hosts R_3 and
    the U sets, R_1 = [4m+1,5m], encoders B = [5m+1,n]; each step promotes
    U'_i and U_i to the next two root sets and draws fresh replacements.
    """

    n: int
    t: int
    m: int
    roots: tuple[frozenset[int], ...]
    carriers: tuple[frozenset[int], ...]
    alt_carriers: tuple[frozenset[int], ...]
    encoders: frozenset[int]

    def __post_init__(self) -> None:
        n, t, m = self.n, self.t, self.m
        if t < 1 or m < 1:
            raise FamilyValidationError("need t >= 1 blocks and root size m >= 1")
        low = frozenset(range(1, 2 * m + 1))
        mid = frozenset(range(2 * m + 1, 4 * m + 1))
        top = frozenset(range(4 * m + 1, 5 * m + 1))
        if len(self.roots) != 2 * t + 1:
            raise FamilyValidationError(f"need {2 * t + 1} root sets, got {len(self.roots)}")
        if len(self.carriers) != t or len(self.alt_carriers) != t:
            raise FamilyValidationError(f"need {t} carrier sets of each kind")
        if self.encoders != frozenset(range(5 * m + 1, n + 1)):
            raise FamilyValidationError("encoder set must be exactly [5m+1, n]")
        need_bits = t.bit_length()
        if len(self.encoders) < need_bits:
            raise FamilyValidationError(
                f"encoder set needs at least {need_bits} members for t={t}"
            )
        if interconnect_variant_count(m) < t:
            raise FamilyValidationError(
                f"only {interconnect_variant_count(m)} distinct root interconnects "
                f"exist for m={m}, need t={t}"
            )
        # base conditions
        if self.roots[0] != top:
            raise FamilyValidationError("R_1 must be exactly [4m+1, 5m]")
        if not (self.roots[1] <= low and len(self.roots[1]) == m):
            raise FamilyValidationError("R_2 must be an m-subset of [1, 2m]")
        if not (self.roots[2] <= mid and len(self.roots[2]) == m):
            raise FamilyValidationError("R_3 must be an m-subset of [2m+1, 4m]")
        for i in range(t):
            if not (self.carriers[i] <= mid and len(self.carriers[i]) == m):
                raise FamilyValidationError(f"U_{i + 1} must be an m-subset of [2m+1, 4m]")
            if not (self.alt_carriers[i] <= low and len(self.alt_carriers[i]) == m):
                raise FamilyValidationError(f"U'_{i + 1} must be an m-subset of [1, 2m]")
        # step conditions: promoted carriers become the next roots
        for i in range(1, t):
            if self.roots[2 * i + 1] != self.alt_carriers[i - 1]:
                raise FamilyValidationError(f"R_{2 * i + 2} must equal U'_{i}")
            if self.roots[2 * i + 2] != self.carriers[i - 1]:
                raise FamilyValidationError(f"R_{2 * i + 3} must equal U_{i}")
        # freshness within each range
        mid_used = [self.roots[2]] + list(self.carriers)
        if len(set(mid_used)) != len(mid_used):
            raise FamilyValidationError("U sets must be fresh among the mid-range root sets")
        low_used = [self.roots[1]] + list(self.alt_carriers)
        if len(set(low_used)) != len(low_used):
            raise FamilyValidationError("U' sets must be fresh among the low-range root sets")

    @classmethod
    def standard(cls, t: int, m: int, n: int | None = None) -> "PartitionSpec":
        """Lexicographically-first valid choice of all the 'arbitrary' sets."""
        least = 5 * m + max(1, t.bit_length())
        if n is None:
            n = least
        if n < least:
            raise FamilyValidationError(f"partitioned family with t={t}, m={m} needs n >= {least}")
        low = list(range(1, 2 * m + 1))
        mid = list(range(2 * m + 1, 4 * m + 1))
        top = frozenset(range(4 * m + 1, 5 * m + 1))

        def fresh(pool: list[int], used: set[frozenset[int]]) -> frozenset[int]:
            for combo in combinations(pool, m):
                cand = frozenset(combo)
                if cand not in used:
                    return cand
            raise FamilyValidationError(
                f"not enough distinct {m}-subsets in a 2m-range for t={t} blocks"
            )

        r2 = frozenset(low[:m])
        r3 = frozenset(mid[:m])
        mid_used = {r3}
        low_used = {r2}
        carriers = []
        alt_carriers = []
        for _ in range(t):
            u = fresh(mid, mid_used)
            mid_used.add(u)
            carriers.append(u)
            u_alt = fresh(low, low_used)
            low_used.add(u_alt)
            alt_carriers.append(u_alt)
        roots = [top, r2, r3]
        for i in range(1, t):
            roots.append(alt_carriers[i - 1])
            roots.append(carriers[i - 1])
        return cls(
            n=n,
            t=t,
            m=m,
            roots=tuple(roots),
            carriers=tuple(carriers),
            alt_carriers=tuple(alt_carriers),
            encoders=frozenset(range(5 * m + 1, n + 1)),
        )


@dataclass(frozen=True)
class PartitionedFamily:
    """A partitioned adversary plus its block structure and decision trace."""

    adversary: Adversary
    blocks: tuple[tuple[int, ...], ...]
    spec: PartitionSpec
    trace: RefinementTrace


def gen_partitioned(spec: PartitionSpec) -> PartitionedFamily:
    """Build the blocks S_1..S_t of 2i+1 graphs each and verify the partition
    properties: per-block connectivity, cross-block protection of all earlier
    induced edges, and no common broadcaster across the two witness patterns
    (G_{i,2})_i and (G_{i,3})_i."""
    n, t, m = spec.n, spec.t, spec.m
    enc_sorted = sorted(spec.encoders)
    extras = _interconnect_extras(m)
    universe = set(range(1, n + 1))
    graphs: list[CommunicationGraph] = []
    blocks: list[tuple[int, ...]] = []
    for i in range(1, t + 1):
        chosen = [extras[h] for h in range(len(extras)) if (i - 1) >> h & 1]
        block: list[int] = []
        for j in range(1, 2 * i + 1 + 1):
            r_j = sorted(spec.roots[j - 1])
            if j == 1:
                carried = spec.carriers[i - 1] | spec.alt_carriers[i - 1]
            elif j % 2 == 0:
                carried = spec.carriers[i - 1]
            else:
                carried = spec.alt_carriers[i - 1]
            leftover = universe - spec.encoders - set(r_j) - carried
            edges: list[tuple[int, int]] = []
            if m >= 2:
                edges += [(r_j[k], r_j[(k + 1) % m]) for k in range(m)]
            edges += [(r_j[a], r_j[b]) for a, b in chosen]
            edges += _fan(r_j, enc_sorted + sorted(leftover))
            edges += _fan(_encode(enc_sorted, i), sorted(carried | leftover))
            block.append(len(graphs))
            graphs.append(CommunicationGraph(n, edges, name=f"G{i}_{j}"))
        blocks.append(tuple(block))
    adv = Adversary(graphs)
    _validate_partitioned(spec, adv, tuple(blocks))
    trace = decide(adv)
    return PartitionedFamily(adversary=adv, blocks=tuple(blocks), spec=spec, trace=trace)


def _validate_partitioned(
    spec: PartitionSpec, adv: Adversary, blocks: tuple[tuple[int, ...], ...]
) -> None:
    for i, block in enumerate(blocks, start=1):
        for j, gi in enumerate(block, start=1):
            expected = spec.roots[j - 1]
            if adv.graphs[gi].root != expected:
                raise FamilyValidationError(
                    f"Root(G{i}_{j}) = {adv.graphs[gi].root}, expected {set(expected)}"
                )
    ig = single_round_indist(adv)
    # (i) every block induces a connected subgraph
    for i, block in enumerate(blocks, start=1):
        if not _block_connected(ig, block):
            raise FamilyValidationError(f"block S_{i} is not connected in the indist graph")
    # (ii) induced edges of the earlier blocks are protected by the current block
    for i in range(2, len(blocks) + 1):
        earlier = [u for block in blocks[: i - 1] for u in block]
        labels = induced_edge_labels(ig, earlier)
        guards = [adv.graphs[u] for u in blocks[i - 1]]
        ok, witnesses = is_protected(labels, guards)
        if not ok:
            bad = sorted(k for k, w in witnesses.items() if w is None)
            raise FamilyValidationError(
                f"edges {bad} of blocks S_1..S_{i - 1} are not protected by S_{i}"
            )
    # (iii) the two witness patterns must have no common broadcaster
    witness_a = Pattern(adv, tuple(block[1] for block in blocks))
    witness_b = Pattern(adv, tuple(block[2] for block in blocks))
    if broadcaster_mask(witness_a) & broadcaster_mask(witness_b):
        raise FamilyValidationError(
            "witness patterns share a broadcaster; the block product would be broadcastable"
        )


def _block_connected(ig: IndistGraph, block: Sequence[int]) -> bool:
    members = set(block)
    adj: dict[int, set[int]] = {u: set() for u in block}
    for (u, v) in induced_edge_labels(ig, block):
        adj[u].add(v)
        adj[v].add(u)
    seen = {block[0]}
    queue = [block[0]]
    while queue:
        u = queue.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == members


# ---------------------------------------------------------------------------
# Catalog families
# ---------------------------------------------------------------------------


def rooted_trees(n: int, max_n: int = 4) -> Adversary:
    """All labeled rooted trees on n processes, edges oriented away from the root."""
    if n > max_n:
        raise FamilyValidationError(f"rooted trees supported up to n={max_n}, got {n}")
    graphs = []
    for tree_idx, tree_edges in enumerate(_labeled_trees(n), start=1):
        adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for a, b in tree_edges:
            adj[a].add(b)
            adj[b].add(a)
        for root in range(1, n + 1):
            edges = []
            seen = {root}
            queue = [root]
            while queue:
                u = queue.pop(0)
                for w in sorted(adj[u]):
                    if w not in seen:
                        seen.add(w)
                        edges.append((u, w))
                        queue.append(w)
            graphs.append(CommunicationGraph(n, edges, name=f"T{tree_idx}r{root}"))
    return Adversary(graphs)


def _labeled_trees(n: int) -> Iterator[list[tuple[int, int]]]:
    """All labeled trees on 1..n via Pruefer sequence decoding."""
    if n == 2:
        yield [(1, 2)]
        return
    import itertools

    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for v in seq:
            degree[v] += 1
        edges = []
        seq_list = list(seq)
        leaves = sorted(v for v in range(1, n + 1) if degree[v] == 1)
        for v in seq_list:
            leaf = leaves.pop(0)
            edges.append((leaf, v))
            degree[v] -= 1
            if degree[v] == 1:
                import bisect

                bisect.insort(leaves, v)
        edges.append((leaves[0], leaves[1]))
        yield edges


def source_broadcast(n: int, clique_size: int = 1) -> Adversary:
    """Every graph is one clique of the given size with edges to all others."""
    if not (1 <= clique_size < n):
        raise FamilyValidationError(f"clique size must be in 1..{n - 1}")
    graphs = []
    for members in combinations(range(1, n + 1), clique_size):
        rest = [v for v in range(1, n + 1) if v not in members]
        edges = _clique(members) + _fan(members, rest)
        graphs.append(
            CommunicationGraph(n, edges, name="S" + "".join(str(v) for v in members))
        )
    return Adversary(graphs)


def lossy_link(n: int, f: int = 1) -> Adversary:
    """All graphs obtained from the complete graph by deleting at most f
    non-loop edges per round (the classic link-failure model)."""
    all_edges = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    if not (0 <= f <= len(all_edges)):
        raise FamilyValidationError(f"f must be in 0..{len(all_edges)}")
    graphs = []
    idx = 1
    for k in range(f + 1):
        for missing in combinations(all_edges, k):
            gone = set(missing)
            edges = [e for e in all_edges if e not in gone]
            graphs.append(CommunicationGraph(n, edges, name=f"G{idx}"))
            idx += 1
    return Adversary(graphs)


def random_rooted(n: int, count: int, seed: int, edge_prob: float = 0.5) -> Adversary:
    """Seeded sample of distinct rooted graphs (each non-loop edge kept with
    the given probability, retried until rooted)."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    seen: set[tuple] = set()
    graphs: list[CommunicationGraph] = []
    attempts = 0
    while len(graphs) < count:
        attempts += 1
        if attempts > 10_000 * count:
            raise FamilyValidationError(
                f"could not sample {count} distinct rooted graphs on n={n}"
            )
        edges = [e for e in pairs if rng.random() < edge_prob]
        g = CommunicationGraph(n, edges, name=f"G{len(graphs) + 1}")
        if not g.is_rooted or g._in in seen:
            continue
        seen.add(g._in)
        graphs.append(g)
    return Adversary(graphs)


CATALOG = {
    "rooted-trees": rooted_trees,
    "source-broadcast": source_broadcast,
    "lossy-link": lossy_link,
    "random-rooted": random_rooted,
}


def gen_catalog(name: str, n: int, **params) -> Adversary:
    """Dispatch into the catalog families by name."""
    if name not in CATALOG:
        raise FamilyValidationError(
            f"unknown family '{name}', available: {sorted(CATALOG)}"
        )
    return CATALOG[name](n, **params)
