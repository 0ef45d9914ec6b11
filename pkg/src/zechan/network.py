"""Player networks and their reduction to a parallel bundle of path channels.

Every simple sender-to-receiver path collapses serially into one virtual
channel.  A player adversary structure induces an honest set structure over
paths: corrupting a player set poisons exactly the paths routed through it.
The end-to-end ambiguity is then the parallel optimum over that structure.
"""

import itertools
from dataclasses import dataclass

from .channel import Ambiguity, Channel, ambiguity, validate_channel
from .composition import Allocation, HonestSetStructure, parallel_ambiguity, serial_ambiguity
from .errors import ValidationError


@dataclass(frozen=True)
class Edge:
    """Directed channel between two players, labeled by a channel or by an
    already-known ambiguity.  ``channel_ref`` remembers the file a channel
    label was loaded from so documents round-trip."""

    edge_id: str
    src: str
    dst: str
    label: Ambiguity | Channel
    channel_ref: str | None = None


@dataclass(frozen=True)
class Network:
    players: tuple[str, ...]
    edges: tuple[Edge, ...]
    sender: str
    receiver: str


def validate_network(net: Network) -> list[str]:
    problems = []
    declared = set(net.players)
    if len(declared) != len(net.players):
        problems.append("duplicate player identifiers")
    if net.sender == net.receiver:
        problems.append("sender and receiver must differ")
    for role, player in (("sender", net.sender), ("receiver", net.receiver)):
        if player not in declared:
            problems.append(f"{role} {player!r} is not a declared player")
    seen = set()
    for edge in net.edges:
        if edge.edge_id in seen:
            problems.append(f"duplicate edge id {edge.edge_id!r}")
        seen.add(edge.edge_id)
        for endpoint in (edge.src, edge.dst):
            if endpoint not in declared:
                problems.append(
                    f"edge {edge.edge_id!r} endpoint {endpoint!r} is not a declared player"
                )
        if isinstance(edge.label, Channel):
            problems += [
                f"edge {edge.edge_id!r} channel: {p}" for p in validate_channel(edge.label)
            ]
        elif not isinstance(edge.label, Ambiguity):
            problems.append(f"edge {edge.edge_id!r} has no channel or ambiguity label")
    return problems


def require_valid_network(net: Network) -> None:
    problems = validate_network(net)
    if problems:
        raise ValidationError(problems)


def edge_ambiguity(edge: Edge) -> Ambiguity:
    if isinstance(edge.label, Ambiguity):
        return edge.label
    return ambiguity(edge.label).value


@dataclass(frozen=True)
class PlayerAdversaryStructure:
    """Which intermediate players may be corrupted: either up to
    ``max_malicious`` of them, or any subset of one of the explicit
    ``corruptible`` sets (the family is treated as closed downward, so only
    its maximal members matter)."""

    max_malicious: int | None = None
    corruptible: tuple[frozenset[str], ...] | None = None

    def __post_init__(self):
        if (self.max_malicious is None) == (self.corruptible is None):
            raise ValidationError(
                ["specify exactly one of a corruption threshold or explicit sets"]
            )
        if self.max_malicious is not None and self.max_malicious < 0:
            raise ValidationError(
                [f"corruption threshold must be nonnegative, got {self.max_malicious}"]
            )

    @classmethod
    def threshold(cls, max_malicious: int) -> "PlayerAdversaryStructure":
        return cls(max_malicious=max_malicious)

    @classmethod
    def explicit(cls, sets) -> "PlayerAdversaryStructure":
        return cls(corruptible=tuple(frozenset(s) for s in sets))


@dataclass(frozen=True)
class PathDecomposition:
    """Paths as edge-id sequences plus the induced parallel instance.

    ``honest_sets`` uses 1-based path indices and may contain empty sets when
    some corruptible player set disconnects everything.  ``shared_edge_ids``
    lists edges appearing on several paths; such paths are still modelled as
    independent parallel channels.
    """

    paths: tuple[tuple[str, ...], ...]
    path_ambiguities: tuple[Ambiguity, ...]
    honest_sets: tuple[frozenset[int], ...]
    corruptible_sets: tuple[frozenset[str], ...]
    shared_edge_ids: tuple[str, ...]


@dataclass(frozen=True)
class NetworkResult:
    value: Ambiguity
    decomposition: PathDecomposition | None
    allocation: Allocation | None
    warnings: tuple[str, ...]


def enumerate_paths(net: Network) -> tuple[tuple[str, ...], ...]:
    """All simple sender-to-receiver paths as edge-id sequences, emitted in
    lexicographic edge-id order.  Empty when the receiver is unreachable."""
    require_valid_network(net)
    adjacency: dict[str, list[tuple[str, str]]] = {}
    for edge in net.edges:
        adjacency.setdefault(edge.src, []).append((edge.edge_id, edge.dst))
    for options in adjacency.values():
        options.sort()
    paths = []
    visited = {net.sender}
    trail: list[str] = []

    def walk(player):
        for edge_id, dst in adjacency.get(player, ()):
            if dst == net.receiver:
                paths.append(tuple(trail + [edge_id]))
            elif dst not in visited:
                visited.add(dst)
                trail.append(edge_id)
                walk(dst)
                trail.pop()
                visited.remove(dst)

    walk(net.sender)
    return tuple(paths)


def path_players(net: Network, path) -> tuple[str, ...]:
    by_id = {e.edge_id: e for e in net.edges}
    players = [net.sender]
    for edge_id in path:
        players.append(by_id[edge_id].dst)
    return tuple(players)


def _maximal_corruptible(net: Network, adv: PlayerAdversaryStructure, intermediates):
    if adv.max_malicious is not None:
        size = min(adv.max_malicious, len(intermediates))
        return [frozenset(c) for c in itertools.combinations(sorted(intermediates), size)]
    endpoints = {net.sender, net.receiver}
    family = []
    for s in adv.corruptible:
        touched = sorted(s & endpoints)
        if touched:
            raise ValidationError(
                [f"adversary set may not contain endpoint {p!r}" for p in touched]
            )
        if s not in family:
            family.append(s)
    if not family:
        return [frozenset()]
    maximal = [s for s in family if not any(s < other for other in family)]
    return sorted(maximal, key=lambda s: tuple(sorted(s)))


def decompose(net: Network, adv: PlayerAdversaryStructure) -> PathDecomposition:
    """Reduce the network to paths, per-path ambiguities, and the honest set
    induced by each maximal corruptible player set."""
    paths = enumerate_paths(net)
    if not paths:
        raise ValidationError(["no sender-to-receiver path"])
    by_id = {e.edge_id: e for e in net.edges}
    intermediates_per_path = [frozenset(path_players(net, p)[1:-1]) for p in paths]
    all_intermediates = sorted(frozenset.union(*intermediates_per_path))
    corruptible = _maximal_corruptible(net, adv, all_intermediates)
    honest = []
    for corrupt_set in corruptible:
        h = frozenset(
            index
            for index, players in enumerate(intermediates_per_path, start=1)
            if not (players & corrupt_set)
        )
        if h not in honest:
            honest.append(h)
    edge_uses: dict[str, int] = {}
    for p in paths:
        for edge_id in p:
            edge_uses[edge_id] = edge_uses.get(edge_id, 0) + 1
    shared = tuple(sorted(e for e, uses in edge_uses.items() if uses > 1))
    path_ambiguities = tuple(
        serial_ambiguity([edge_ambiguity(by_id[edge_id]) for edge_id in p]) for p in paths
    )
    return PathDecomposition(
        paths, path_ambiguities, tuple(honest), tuple(corruptible), shared
    )


def network_ambiguity(net: Network, adv: PlayerAdversaryStructure) -> NetworkResult:
    """End-to-end ambiguity between sender and receiver.

    Infinite when no path exists, or when some corruptible player set
    disconnects every path: the optimum is then unbounded because a candidate
    honest set constrains nothing.
    """
    require_valid_network(net)
    if not enumerate_paths(net):
        return NetworkResult(
            Ambiguity.infinite(), None, None, ("no sender-to-receiver path",)
        )
    decomposition = decompose(net, adv)
    warnings = []
    if decomposition.shared_edge_ids:
        warnings.append(
            "paths share edges "
            + ", ".join(decomposition.shared_edge_ids)
            + "; shared edges are modelled as independent per-path channels"
        )
    if any(not h for h in decomposition.honest_sets):
        warnings.append("a corruptible player set disconnects every path")
        return NetworkResult(Ambiguity.infinite(), decomposition, None, tuple(warnings))
    structure = HonestSetStructure(len(decomposition.paths), decomposition.honest_sets)
    result = parallel_ambiguity(decomposition.path_ambiguities, structure)
    return NetworkResult(result.value, decomposition, result.allocation, tuple(warnings))
