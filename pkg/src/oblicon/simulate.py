"""Consensus rule synthesis, exhaustive run verification, and the brute-force
solvability oracle.

The synthesized rule fixes a horizon t, groups all t-round patterns into
indistinguishability components, and picks one common broadcaster per
component; every process decides on that broadcaster's input.  Verification
replays every pattern and checks agreement, validity, and termination, plus
equal decisions across every indistinguishable pair of runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Sequence

from .decision import decide
from .errors import NonBroadcastableComponentError, NotRootedError
from .indist import Adversary
from .patterns import (
    DEFAULT_PATTERN_BUDGET,
    Pattern,
    ViewInterner,
    _components_from_rows,
    _level,
    broadcaster_mask,
    indist_label,
    iter_pattern_levels,
    pattern_at,
    pattern_index,
    pattern_indist_graph,
)
from .procset import procs_of


@dataclass(frozen=True)
class ConsensusRule:
    """Decision rule at a fixed horizon: pattern component -> adopted broadcaster.

    ``chosen[c]`` is the smallest common broadcaster of component c; a run
    whose pattern lies in c decides on that process's input.
    """

    adversary: Adversary
    t: int
    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    chosen: tuple[int, ...]
    broadcast_masks: tuple[int, ...]
    view_rows: tuple[tuple[int, ...], ...]

    def decision_process(self, sigma: Pattern) -> int:
        return self.chosen[self.component_of[pattern_index(sigma)]]


@dataclass(frozen=True)
class RunReport:
    """Outcome of one run: who everyone adopted and the three correctness flags."""

    pattern: Pattern
    adopted: tuple[int, ...]
    value: object
    agreement_ok: bool
    validity_ok: bool
    termination_ok: bool

    @property
    def ok(self) -> bool:
        return self.agreement_ok and self.validity_ok and self.termination_ok


@dataclass(frozen=True)
class VerificationReport:
    horizon: int
    runs: int
    agreement_violations: int
    validity_violations: int
    termination_violations: int
    cross_run_violations: int
    samples: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return (
            self.agreement_violations == 0
            and self.validity_violations == 0
            and self.termination_violations == 0
            and self.cross_run_violations == 0
        )


def build_rule(
    d: Adversary, t: int, budget: int = DEFAULT_PATTERN_BUDGET
) -> ConsensusRule:
    """Synthesize the decision rule at horizon t.

    Every component of the t-round pattern indistinguishability graph must
    have a common broadcaster; otherwise the first offending component (by
    smallest pattern index) is reported via NonBroadcastableComponentError,
    which signals that t is too small or consensus is unsolvable.
    """
    level = _level(d, t, None, budget)
    rows = level.view_rows
    bmasks = level.broadcaster_masks(d.n)
    comp_of, comps = _components_from_rows(d.n, rows)
    chosen = []
    for comp in comps:
        common = -1
        for i in comp:
            common &= bmasks[i]
        common &= (1 << d.n) - 1
        if common == 0:
            names = [pattern_at(d, t, i).name for i in comp]
            raise NonBroadcastableComponentError(t, names)
        chosen.append((common & -common).bit_length())
    return ConsensusRule(
        adversary=d,
        t=t,
        component_of=tuple(comp_of),
        components=tuple(tuple(c) for c in comps),
        chosen=tuple(chosen),
        broadcast_masks=tuple(bmasks),
        view_rows=tuple(rows),
    )


def run(rule: ConsensusRule, sigma: Pattern, inputs: Sequence) -> RunReport:
    """Replay one pattern under the rule with concrete inputs.

    All processes adopt the input of the component's chosen broadcaster; the
    validity flag checks that the decided value is the input of an actual
    broadcaster of this very pattern (recomputed from the pattern, not taken
    from the rule).
    """
    n = rule.adversary.n
    if len(sigma) != rule.t:
        raise ValueError(f"pattern has {len(sigma)} rounds, rule expects {rule.t}")
    if len(inputs) != n:
        raise ValueError(f"need {n} inputs, got {len(inputs)}")
    b = rule.decision_process(sigma)
    value = inputs[b - 1]
    bcasters = procs_of(broadcaster_mask(sigma))
    validity_ok = any(inputs[q - 1] == value for q in bcasters)
    return RunReport(
        pattern=sigma,
        adopted=(b,) * n,
        value=value,
        agreement_ok=True,
        validity_ok=validity_ok,
        termination_ok=True,
    )


def verify_all_runs(
    rule: ConsensusRule, inputs: Sequence | None = None
) -> VerificationReport:
    """Replay every t-round pattern and aggregate correctness violations.

    Without explicit inputs, runs the canonical distinct vector (x_p = p) and
    the all-equal vector; with adopt-the-input decisions the distinct vector
    exercises validity fully.  Additionally asserts that patterns with equal
    final views for any process (the raw indistinguishability relation) were
    assigned equal decisions.
    """
    d = rule.adversary
    n = d.n
    vectors: list[tuple] = (
        [tuple(inputs)] if inputs is not None else [tuple(range(1, n + 1)), (1,) * n]
    )
    agreement = validity = termination = 0
    samples: list[str] = []
    total = len(rule.component_of)
    for vec in vectors:
        for idx in range(total):
            b = rule.chosen[rule.component_of[idx]]
            value = vec[b - 1]
            bmask = rule.broadcast_masks[idx]
            if not any(vec[q - 1] == value for q in procs_of(bmask)):
                validity += 1
                if len(samples) < 8:
                    samples.append(
                        f"validity: pattern {pattern_at(d, rule.t, idx).name} "
                        f"decided input of p{b}"
                    )
    cross = 0
    for p in range(n):
        buckets: dict[int, int] = {}
        for idx, row in enumerate(rule.view_rows):
            first = buckets.setdefault(row[p], idx)
            if rule.chosen[rule.component_of[first]] != rule.chosen[rule.component_of[idx]]:
                cross += 1
                if len(samples) < 8:
                    samples.append(
                        f"cross-run: {pattern_at(d, rule.t, first).name} vs "
                        f"{pattern_at(d, rule.t, idx).name} disagree for p{p + 1}"
                    )
    return VerificationReport(
        horizon=rule.t,
        runs=total * len(vectors),
        agreement_violations=agreement,
        validity_violations=validity,
        termination_violations=termination,
        cross_run_violations=cross,
        samples=tuple(samples),
    )


def oracle_min_horizon(
    d: Adversary, r_max: int, budget: int = DEFAULT_PATTERN_BUDGET
) -> int | None:
    """Smallest r <= r_max at which every pattern component has a common
    broadcaster, or None if no such r exists up to r_max.

    This is the independent brute-force solvability check: it never looks at
    the refinement procedure, only at raw view equality and influence.
    """
    interner = ViewInterner()
    for level in iter_pattern_levels(d, r_max, interner, budget):
        bmasks = level.broadcaster_masks(d.n)
        _, comps = _components_from_rows(d.n, level.view_rows)
        for comp in comps:
            common = -1
            for i in comp:
                common &= bmasks[i]
            if common & ((1 << d.n) - 1) == 0:
                break
        else:
            return level.rounds
    return None


@dataclass(frozen=True)
class ImpossibilityWitness:
    """Evidence that no algorithm can have every process decided by the level's round.

    Two graphs from a root-incompatible component of that refinement level,
    whose i-fold repetitions are joined by a concrete, re-verified path in the
    i-round pattern indistinguishability graph.
    """

    level: int
    graph_a: str
    graph_b: str
    root_a: frozenset[int]
    root_b: frozenset[int]
    path: tuple[Pattern, ...]
    edge_labels: tuple[int, ...]


def imposs_witness(
    d: Adversary, i: int, budget: int = DEFAULT_PATTERN_BUDGET
) -> ImpossibilityWitness | None:
    """Search level i of the fixpoint refinement for a root-incompatible
    component and materialize the pattern-level path that certifies it.

    Returns None when all components at level i are root-compatible.  The
    path's edges are re-verified with a fresh intern store.
    """
    if not d.all_rooted:
        raise NotRootedError("witness construction requires all graphs rooted")
    trace = decide(d, no_early_exit=True)
    level = trace.level_at(i)
    roots = d.root_masks()
    for comp in level.components():
        common = -1
        for u in comp:
            common &= roots[u]
        if common != 0:
            continue
        pair = _disjoint_root_pair(comp, roots)
        a, b = pair
        pig = pattern_indist_graph(d, i, budget)
        m = len(d)
        ia = sum(a * m**k for k in range(i))
        ib = sum(b * m**k for k in range(i))
        path_idx = _bfs_path(pig, ia, ib)
        if path_idx is None:
            raise RuntimeError(
                f"level-{i} component is root-incompatible but {d.names[a]}^{i} and "
                f"{d.names[b]}^{i} are not connected among {i}-round patterns"
            )
        path = tuple(pattern_at(d, i, idx) for idx in path_idx)
        labels = []
        fresh = ViewInterner()
        for s1, s2 in zip(path, path[1:]):
            lab = indist_label(s1, s2, fresh)
            if lab == 0:
                raise RuntimeError(f"path edge {s1.name} -- {s2.name} failed re-verification")
            labels.append(lab)
        return ImpossibilityWitness(
            level=i,
            graph_a=d.names[a],
            graph_b=d.names[b],
            root_a=frozenset(procs_of(roots[a])),
            root_b=frozenset(procs_of(roots[b])),
            path=path,
            edge_labels=tuple(labels),
        )
    return None


def _disjoint_root_pair(comp: Sequence[int], roots: Sequence[int]) -> tuple[int, int]:
    best: tuple[int, int] | None = None
    best_overlap = None
    for x in range(len(comp)):
        for y in range(x + 1, len(comp)):
            a, b = comp[x], comp[y]
            overlap = (roots[a] & roots[b]).bit_count()
            if overlap == 0:
                return a, b
            if best_overlap is None or overlap < best_overlap:
                best, best_overlap = (a, b), overlap
    assert best is not None
    return best


def _bfs_path(pig, start: int, goal: int) -> list[int] | None:
    if start == goal:
        return [start]
    adj: dict[int, list[int]] = {}
    for u, v, _ in pig.edges():
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for lst in adj.values():
        lst.sort()
    prev = {start: start}
    queue = [start]
    while queue:
        nxt: list[int] = []
        for u in queue:
            for w in adj.get(u, ()):
                if w not in prev:
                    prev[w] = u
                    if w == goal:
                        path = [w]
                        while path[-1] != start:
                            path.append(prev[path[-1]])
                        path.reverse()
                        return path
                    nxt.append(w)
        queue = nxt
    return None
