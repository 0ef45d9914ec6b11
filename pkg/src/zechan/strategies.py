"""Executable transmission strategies over parallel bundles.

The receiver and adversary constructions here realize both halves of the
parallel-ambiguity optimum as concrete one-shot transcripts: the receiver
rules never output more than the computed value and always keep the truth,
while the adversary transcripts keep exactly that many candidates
indistinguishable.  ``empirical_ambiguity`` closes the loop by exhaustively
searching transcripts and reporting the best candidate count the receiver
machinery certifies.
"""

import itertools
from dataclasses import dataclass

from .channel import Ambiguity
from .composition import (
    Allocation,
    HonestSetStructure,
    ThresholdSpec,
    parallel_ambiguity,
    threshold_ambiguity,
)
from .errors import BudgetExceededError, ValidationError


@dataclass(frozen=True)
class ParallelTranscript:
    """Values emitted per channel in one shot, with the ground truth.

    Every channel emits at most as many values as its ambiguity: a corrupted
    channel chooses which values arrive, but it is still a physical channel
    and can never widen the receiver's per-channel list.  Honest channels
    (not in ``corrupted``) must additionally emit the ``true_value``.
    Channel indices are 1-based.
    """

    emitted: tuple[frozenset[int], ...]
    true_value: int
    corrupted: frozenset[int]


@dataclass(frozen=True)
class StrategyOutcome:
    receiver_list: tuple[int, ...]
    contains_truth: bool
    list_size: int


def validate_transcript(transcript: ParallelTranscript, ambiguities) -> list[str]:
    problems = []
    values = tuple(Ambiguity.of(a) for a in ambiguities)
    if len(transcript.emitted) != len(values):
        problems.append(
            f"{len(transcript.emitted)} emission sets for {len(values)} channels"
        )
        return problems
    bad = sorted(j for j in transcript.corrupted if not (1 <= j <= len(values)))
    if bad:
        problems.append(f"corrupted set uses out-of-range channels {bad}")
    for j, emitted in enumerate(transcript.emitted, start=1):
        limit = values[j - 1]
        if not limit.is_infinite and len(emitted) > limit.value:
            problems.append(
                f"channel {j} emits {len(emitted)} values, more than {limit.value}"
            )
        if j not in transcript.corrupted and transcript.true_value not in emitted:
            problems.append(f"honest channel {j} does not emit the true value")
    return problems


def _outcome(candidates, true_value) -> StrategyOutcome:
    listed = tuple(sorted(candidates))
    return StrategyOutcome(listed, true_value in listed, len(listed))


def receiver_general(
    transcript: ParallelTranscript, structure: HonestSetStructure
) -> StrategyOutcome:
    """Output every value fully supported by some honest set: all channels of
    that set emitted it."""
    if len(transcript.emitted) != structure.channel_count:
        raise ValidationError(
            [
                f"transcript has {len(transcript.emitted)} channels, structure "
                f"expects {structure.channel_count}"
            ]
        )
    pool = set().union(*transcript.emitted) if transcript.emitted else set()
    supported = {
        v
        for v in pool
        if any(all(v in transcript.emitted[j - 1] for j in h) for h in structure.sets)
    }
    return _outcome(supported, transcript.true_value)


def receiver_threshold(
    transcript: ParallelTranscript, spec: ThresholdSpec, witness
) -> StrategyOutcome:
    """Output every value emitted by at least ``|witness| - t`` channels of the
    witness subset.  With at most t corrupted channels the truth always
    reaches that count."""
    n = len(spec.ambiguities)
    subset = tuple(witness)
    if (
        not subset
        or len(set(subset)) != len(subset)
        or any(not (1 <= j <= n) for j in subset)
        or len(subset) <= spec.max_malicious
    ):
        raise ValidationError([f"invalid receiver subset {list(subset)}"])
    if len(transcript.emitted) != n:
        raise ValidationError(
            [f"transcript has {len(transcript.emitted)} channels, expected {n}"]
        )
    needed = len(subset) - spec.max_malicious
    counts: dict[int, int] = {}
    for j in subset:
        for v in transcript.emitted[j - 1]:
            counts[v] = counts.get(v, 0) + 1
    return _outcome(
        {v for v, c in counts.items() if c >= needed}, transcript.true_value
    )


def _group_transcript(structure: HonestSetStructure, counts, ordered_values):
    """Transcript in which honest set i vouches for counts[i] values.

    Values are taken from ``ordered_values`` in honest-set index order; every
    channel emits the union over the sets containing it.  The first set with a
    positive count plays the actual honest set, its first value is the truth,
    and everything outside it is corrupted.
    """
    groups = []
    position = 0
    for c in counts:
        groups.append(tuple(ordered_values[position : position + c]))
        position += c
    anchor = next(i for i, c in enumerate(counts) if c > 0)
    truth = groups[anchor][0]
    emitted = []
    for j in range(1, structure.channel_count + 1):
        union = set()
        for i in structure.containing(j):
            union.update(groups[i])
        emitted.append(frozenset(union))
    corrupted = frozenset(range(1, structure.channel_count + 1)) - structure.sets[anchor]
    candidates = tuple(ordered_values[:position])
    return ParallelTranscript(tuple(emitted), truth, corrupted), candidates


def adversary_general(
    structure: HonestSetStructure,
    ambiguities,
    allocation,
    true_value: int,
    decoys,
) -> ParallelTranscript:
    """Transcript forcing the full parallel optimum onto the receiver.

    Follows an optimal allocation: the least-index honest set with a positive
    share is left honest (the truth counts toward its share), every other
    channel is corrupted, and each channel emits all values assigned to the
    honest sets containing it.  Channel capacities hold because the allocation
    is feasible.
    """
    values = tuple(Ambiguity.of(a) for a in ambiguities)
    counts = tuple(allocation.values if isinstance(allocation, Allocation) else allocation)
    if len(counts) != len(structure.sets):
        raise ValidationError(
            [f"allocation has {len(counts)} entries for {len(structure.sets)} honest sets"]
        )
    if any(c < 0 for c in counts):
        raise ValidationError(["allocation entries must be nonnegative"])
    if len(values) != structure.channel_count:
        raise ValidationError(
            [f"{len(values)} ambiguities for {structure.channel_count} channels"]
        )
    for j in range(1, structure.channel_count + 1):
        limit = values[j - 1]
        if limit.is_infinite:
            continue
        load = sum(counts[i] for i in structure.containing(j))
        if load > limit.value:
            raise ValidationError(
                [f"allocation loads channel {j} with {load} values, more than {limit.value}"]
            )
    optimum = parallel_ambiguity(values, structure).value
    total = sum(counts)
    if optimum.is_infinite or total != optimum.value:
        raise ValidationError(
            [f"allocation objective {total} is not the optimum {optimum}"]
        )
    decoy_values = sorted(decoys)
    if len(set(decoy_values)) != len(decoy_values) or true_value in decoy_values:
        raise ValidationError(["decoys must be distinct values different from the truth"])
    if len(decoy_values) != total - 1:
        raise ValidationError(
            [f"need exactly {total - 1} decoys, got {len(decoy_values)}"]
        )
    transcript, _ = _group_transcript(structure, counts, [true_value] + decoy_values)
    return transcript


def adversary_threshold(spec: ThresholdSpec, true_value: int, decoys) -> ParallelTranscript:
    """Transcript forcing the threshold optimum onto the receiver.

    Channels at least as ambiguous as the optimum emit every candidate.  The
    remaining low-ambiguity channels share the candidates so that each value
    appears on exactly ``|low| - t`` distinct channels, no channel repeating a
    value; the t channels left without the truth are the corrupted ones.
    """
    result = threshold_ambiguity(spec)
    if result.value.is_infinite:
        raise ValidationError(["threshold ambiguity is infinite; no finite transcript"])
    optimum = result.value.value
    decoy_values = sorted(decoys)
    if len(set(decoy_values)) != len(decoy_values) or true_value in decoy_values:
        raise ValidationError(["decoys must be distinct values different from the truth"])
    if len(decoy_values) != optimum - 1:
        raise ValidationError(
            [f"need exactly {optimum - 1} decoys, got {len(decoy_values)}"]
        )
    candidates = [true_value] + decoy_values
    n = len(spec.ambiguities)
    low = [
        j
        for j in range(1, n + 1)
        if not spec.ambiguities[j - 1].is_infinite
        and spec.ambiguities[j - 1].value < optimum
    ]
    emitted: dict[int, frozenset[int]] = {
        j: frozenset(candidates) for j in range(1, n + 1) if j not in low
    }
    width = len(low) - spec.max_malicious
    if width <= 0:
        for j in low:
            emitted[j] = frozenset()
        corrupted = frozenset(low)
    else:
        slots = []
        for j in low:
            slots.extend([j] * spec.ambiguities[j - 1].value)
        needed = optimum * width
        if len(slots) < needed:
            raise ValidationError(
                ["channel capacities cannot carry the distribution; "
                 "this contradicts the optimum and signals a bug"]
            )
        assigned: dict[int, set[int]] = {j: set() for j in low}
        for position, j in enumerate(slots[:needed]):
            # Consecutive slots of one channel span fewer than `optimum`
            # positions, so the cyclic assignment never repeats a value.
            assigned[j].add(candidates[position % optimum])
        for j in low:
            emitted[j] = frozenset(assigned[j])
        corrupted = frozenset(j for j in low if true_value not in assigned[j])
    return ParallelTranscript(
        tuple(emitted[j] for j in range(1, n + 1)), true_value, corrupted
    )


def indistinguishability_check(
    transcript: ParallelTranscript, structure: HonestSetStructure, ambiguities, candidates
) -> bool:
    """Whether every candidate could be the truth under some corruption
    hypothesis: an honest set whose channels all emit the candidate within
    their capacity."""
    values = tuple(Ambiguity.of(a) for a in ambiguities)

    def plausible(candidate, honest):
        for j in honest:
            emitted = transcript.emitted[j - 1]
            if candidate not in emitted:
                return False
            limit = values[j - 1]
            if not limit.is_infinite and len(emitted) > limit.value:
                return False
        return True

    return all(
        any(plausible(v, h) for h in structure.sets) for v in candidates
    )


def empirical_ambiguity(
    ambiguities,
    structure: HonestSetStructure,
    value_space,
    max_nodes: int = 200_000,
) -> int:
    """Game value found by exhaustive transcript search.

    Enumerates every assignment of distinct values to honest sets that
    respects the channel capacities, builds the corresponding transcript, and
    returns the largest candidate count the receiver-side checks certify.
    The result matches the computed parallel ambiguity whenever the value
    space is at least that large.
    """
    values = _finite_values(ambiguities, structure)
    pool = sorted(set(value_space))
    if not pool:
        raise ValidationError(["value space must not be empty"])
    k = len(structure.sets)
    supports = [tuple(sorted(h)) for h in structure.sets]
    slack0 = {j: values[j - 1] for j in range(1, structure.channel_count + 1)}
    # Static per-set capacity, summed over suffixes for pruning.
    set_caps = [min(slack0[j] for j in support) for support in supports]
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + set_caps[i]

    best = 0
    best_counts = None
    nodes = 0
    counts = [0] * k

    def descend(i, slack, used):
        nonlocal best, best_counts, nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceededError(f"transcript search exceeded node budget {max_nodes}")
        if i == k:
            if used > best:
                best = used
                best_counts = tuple(counts)
            return
        if used + min(suffix[i], len(pool) - used) <= best:
            return
        cap = min(len(pool) - used, min(slack[j] for j in supports[i]))
        for v in range(cap, -1, -1):
            if v:
                for j in supports[i]:
                    slack[j] -= v
            counts[i] = v
            descend(i + 1, slack, used + v)
            counts[i] = 0
            if v:
                for j in supports[i]:
                    slack[j] += v

    descend(0, dict(slack0), 0)
    if best_counts is None:
        raise AssertionError("search failed to visit any allocation")
    transcript, candidates = _group_transcript(structure, best_counts, pool)
    if not indistinguishability_check(transcript, structure, ambiguities, candidates):
        raise AssertionError("constructed transcript failed its own certification")
    outcome = receiver_general(transcript, structure)
    if outcome.receiver_list != tuple(sorted(candidates)):
        raise AssertionError("receiver disagrees with the constructed candidate set")
    return best


def iter_valid_transcripts(
    ambiguities,
    structure: HonestSetStructure,
    value_space,
    max_transcripts: int | None = None,
):
    """Exhaustively yield every valid transcript over ``value_space``.

    Corruption patterns are the complements of the honest sets; honest
    channels range over all capacity-bounded emission sets containing the
    truth, corrupted channels over all capacity-bounded subsets.
    Deterministic order.
    """
    values = tuple(Ambiguity.of(a) for a in ambiguities)
    if len(values) != structure.channel_count:
        raise ValidationError(
            [f"{len(values)} ambiguities for {structure.channel_count} channels"]
        )
    pool = sorted(set(value_space))
    count = 0
    all_channels = range(1, structure.channel_count + 1)
    for honest in structure.sets:
        corrupted = frozenset(j for j in all_channels if j not in honest)
        for truth in pool:
            rest = [v for v in pool if v != truth]
            per_channel = []
            for j in all_channels:
                limit = values[j - 1]
                cap = len(pool) if limit.is_infinite else min(limit.value, len(pool))
                if j in corrupted:
                    options = [
                        frozenset(c)
                        for size in range(cap + 1)
                        for c in itertools.combinations(pool, size)
                    ]
                else:
                    options = [
                        frozenset((truth, *extra))
                        for size in range(cap)
                        for extra in itertools.combinations(rest, size)
                    ]
                per_channel.append(options)
            for emitted in itertools.product(*per_channel):
                count += 1
                if max_transcripts is not None and count > max_transcripts:
                    raise BudgetExceededError(
                        f"transcript enumeration exceeded budget {max_transcripts}"
                    )
                yield ParallelTranscript(emitted, truth, corrupted)


def _finite_values(ambiguities, structure: HonestSetStructure):
    values = tuple(Ambiguity.of(a) for a in ambiguities)
    if len(values) != structure.channel_count:
        raise ValidationError(
            [f"{len(values)} ambiguities for {structure.channel_count} channels"]
        )
    if any(a.is_infinite for a in values):
        raise ValidationError(["transcript search requires finite ambiguities"])
    return tuple(a.value for a in values)
