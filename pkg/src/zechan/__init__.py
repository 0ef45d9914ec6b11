"""Zero-error channel toolkit.

Channels are plain relations between finite alphabets; the central quantity
is a channel's ambiguity, the size of the candidate list a receiver can never
shrink.  The package computes it exactly, decides achievability between
channels, composes channels serially and in parallel under honest set
structures, reduces player networks to parallel bundles, and ships the
executable strategies plus brute-force oracles that certify every value.
"""

from .channel import (
    INFINITE,
    Ambiguity,
    AmbiguityResult,
    Channel,
    ListChannelSpec,
    achievable,
    ambiguity,
    canonical_list_equivalent,
    make_channel,
    make_list_channel,
    require_valid,
    subset_symbol,
    validate_channel,
)
from .composition import (
    Allocation,
    HonestSetStructure,
    ParallelResult,
    ThresholdResult,
    ThresholdSpec,
    brute_force_parallel,
    lp_upper_bound,
    parallel_ambiguity,
    serial_ambiguity,
    threshold_ambiguity,
    threshold_structure,
)
from .errors import BudgetExceededError, FormatError, ValidationError
from .listcodes import (
    ChannelSimulation,
    CodeCounterexample,
    CodeSearchResult,
    ListCode,
    OneShotListProtocol,
    find_list_code,
    oneshot_list_decode,
    simulate_channel_from_list,
    verify_list_code,
)
from .network import (
    Edge,
    Network,
    NetworkResult,
    PathDecomposition,
    PlayerAdversaryStructure,
    decompose,
    edge_ambiguity,
    enumerate_paths,
    network_ambiguity,
    path_players,
    require_valid_network,
    validate_network,
)
from .strategies import (
    ParallelTranscript,
    StrategyOutcome,
    adversary_general,
    adversary_threshold,
    empirical_ambiguity,
    indistinguishability_check,
    iter_valid_transcripts,
    receiver_general,
    receiver_threshold,
    validate_transcript,
)

__all__ = [
    "INFINITE",
    "Ambiguity",
    "AmbiguityResult",
    "Channel",
    "ListChannelSpec",
    "achievable",
    "ambiguity",
    "canonical_list_equivalent",
    "make_channel",
    "make_list_channel",
    "require_valid",
    "subset_symbol",
    "validate_channel",
    "Allocation",
    "HonestSetStructure",
    "ParallelResult",
    "ThresholdResult",
    "ThresholdSpec",
    "brute_force_parallel",
    "lp_upper_bound",
    "parallel_ambiguity",
    "serial_ambiguity",
    "threshold_ambiguity",
    "threshold_structure",
    "BudgetExceededError",
    "FormatError",
    "ValidationError",
    "ChannelSimulation",
    "CodeCounterexample",
    "CodeSearchResult",
    "ListCode",
    "OneShotListProtocol",
    "find_list_code",
    "oneshot_list_decode",
    "simulate_channel_from_list",
    "verify_list_code",
    "Edge",
    "Network",
    "NetworkResult",
    "PathDecomposition",
    "PlayerAdversaryStructure",
    "decompose",
    "edge_ambiguity",
    "enumerate_paths",
    "network_ambiguity",
    "path_players",
    "require_valid_network",
    "validate_network",
    "ParallelTranscript",
    "StrategyOutcome",
    "adversary_general",
    "adversary_threshold",
    "empirical_ambiguity",
    "indistinguishability_check",
    "iter_valid_transcripts",
    "receiver_general",
    "receiver_threshold",
    "validate_transcript",
]
