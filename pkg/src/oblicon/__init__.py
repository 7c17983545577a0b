"""Consensus solvability analysis for dynamic directed networks whose
per-round communication graph is drawn adversarially from a fixed set.

The package decides solvability by iteratively refining the adversary's
indistinguishability graph, synthesizes the induced consensus rule and
verifies it by exhaustive simulation at small scale, and generates the
adversary families used to probe worst-case behavior.
"""

from .decision import RefinementTrace, Verdict, check_protected_chain, consensus_round_bound, decide
from .errors import (
    AdversaryFormatError,
    BudgetExceededError,
    FamilyValidationError,
    NonBroadcastableComponentError,
    NotRootedError,
    PremiseError,
)
from .graphs import CommunicationGraph, is_root_compatible, reaches_all, root_component
from .indist import Adversary, IndistGraph, connected_components, is_protected, single_round_indist
from .patterns import (
    DEFAULT_PATTERN_BUDGET,
    Pattern,
    ViewInterner,
    ViewTable,
    broadcaster_mask,
    broadcasters,
    heard_of,
    indist_label,
    indistinguishable,
    pattern_at,
    pattern_index,
    pattern_indist_graph,
    remove_round,
    views,
)
from .simulate import (
    ConsensusRule,
    ImpossibilityWitness,
    RunReport,
    VerificationReport,
    build_rule,
    imposs_witness,
    oracle_min_horizon,
    run,
    verify_all_runs,
)

__version__ = "0.1.0"

__all__ = [
    "Adversary",
    "AdversaryFormatError",
    "BudgetExceededError",
    "CommunicationGraph",
    "ConsensusRule",
    "DEFAULT_PATTERN_BUDGET",
    "FamilyValidationError",
    "ImpossibilityWitness",
    "IndistGraph",
    "NonBroadcastableComponentError",
    "NotRootedError",
    "Pattern",
    "PremiseError",
    "RefinementTrace",
    "RunReport",
    "Verdict",
    "VerificationReport",
    "ViewInterner",
    "ViewTable",
    "broadcaster_mask",
    "broadcasters",
    "build_rule",
    "check_protected_chain",
    "connected_components",
    "consensus_round_bound",
    "decide",
    "heard_of",
    "imposs_witness",
    "indist_label",
    "indistinguishable",
    "is_protected",
    "is_root_compatible",
    "oracle_min_horizon",
    "pattern_at",
    "pattern_index",
    "pattern_indist_graph",
    "reaches_all",
    "remove_round",
    "root_component",
    "run",
    "single_round_indist",
    "verify_all_runs",
    "views",
]
