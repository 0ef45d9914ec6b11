"""Constructive protocols between channels and list channels.

Three directions are covered: extracting a one-shot list protocol from any
channel with a finite ambiguity witness, simulating an arbitrary channel over
a list channel, and searching for multi-use list codes when the wanted
alphabet is larger than the one-shot construction allows.
"""

import itertools
from dataclasses import dataclass
from typing import Iterable

from .channel import (
    Ambiguity,
    Channel,
    ListChannelSpec,
    ambiguity,
    require_valid,
    subset_symbol,
    validate_channel,
)
from .errors import BudgetExceededError, ValidationError


@dataclass(frozen=True)
class OneShotListProtocol:
    """One channel use carrying one of ``list_size + 1`` values.

    ``encode`` maps each value to a channel input; ``decode`` maps every
    reachable output to the candidate values it allows.  Every decoded list
    contains the sent value and has at most ``list_size`` entries.
    """

    list_size: int
    encode: dict[int, str]
    decode: dict[str, tuple[int, ...]]


def oneshot_list_decode(channel: Channel, witness_inputs) -> OneShotListProtocol:
    """Build the one-shot list protocol carried by a family of inputs whose
    output sets have empty intersection."""
    require_valid(channel)
    xs = tuple(witness_inputs)
    if len(xs) < 2:
        raise ValidationError(["witness must contain at least two inputs"])
    if len(set(xs)) != len(xs):
        raise ValidationError(["witness inputs must be distinct"])
    known = set(channel.inputs)
    unknown = [x for x in xs if x not in known]
    if unknown:
        raise ValidationError([f"unknown witness input {x!r}" for x in unknown])
    sets = [channel.output_set(x) for x in xs]
    shared = frozenset.intersection(*sets)
    if shared:
        raise ValidationError(
            [
                "witness output sets share "
                + ", ".join(repr(y) for y in channel.sorted_outputs(shared))
            ]
        )
    encode = {i: x for i, x in enumerate(xs, start=1)}
    reachable = frozenset.union(*sets)
    decode = {
        y: tuple(i for i, s in enumerate(sets, start=1) if y in s)
        for y in channel.sorted_outputs(reachable)
    }
    return OneShotListProtocol(len(xs) - 1, encode, decode)


@dataclass(frozen=True)
class ChannelSimulation:
    """One-shot simulation of ``target`` over a list channel.

    The sender maps target inputs to carrier values via ``encode``; the
    receiver intersects the target output sets of the encoded values present
    in the received list and emits the least output in declaration order.
    Carrier values outside the encoding image are ignored: with the true value
    always present, the remaining intersection is over at most ``list_size``
    sets and cannot be empty.
    """

    target: Channel
    carrier: ListChannelSpec
    encode: dict[str, int]
    decode: dict[str, str]

    def decode_values(self, received: Iterable[int]) -> str:
        image = {v: x for x, v in self.encode.items()}
        relevant = [image[v] for v in sorted(set(received)) if v in image]
        if not relevant:
            raise ValidationError(["received list contains no encoded value"])
        inter = frozenset.intersection(*(self.target.output_set(x) for x in relevant))
        return self.target.least_output(inter)


def simulate_channel_from_list(
    target: Channel, carrier: ListChannelSpec
) -> ChannelSimulation | None:
    """Protocol realizing ``target`` over the carrier list channel, or None
    when the carrier is too ambiguous for any protocol to exist (its list size
    exceeds the target's ambiguity)."""
    require_valid(target)
    if carrier.alphabet_size < len(target.inputs):
        raise ValidationError(
            [
                f"carrier alphabet {carrier.alphabet_size} cannot address "
                f"{len(target.inputs)} target inputs"
            ]
        )
    level = ambiguity(target).value
    if Ambiguity(carrier.list_size) > level:
        return None
    encode = {x: i for i, x in enumerate(target.inputs, start=1)}
    by_value = {i: x for x, i in encode.items()}
    decode = {}
    for combo in itertools.combinations(range(1, carrier.alphabet_size + 1), carrier.list_size):
        present = [by_value[v] for v in combo if v in by_value]
        if not present:
            continue
        inter = frozenset.intersection(*(target.output_set(x) for x in present))
        decode[subset_symbol(combo)] = target.least_output(inter)
    return ChannelSimulation(target, carrier, encode, decode)


@dataclass(frozen=True)
class ListCode:
    """Codewords over repeated channel uses with a bounded consistency list.

    Every output sequence reachable from a codeword must be consistent with at
    most ``list_size`` codewords, where consistency means each received symbol
    lies in the output set of the codeword's input at that position.
    """

    channel: Channel
    length: int
    list_size: int
    codewords: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class CodeCounterexample:
    output_sequence: tuple[str, ...]
    consistent_codewords: tuple[int, ...]


@dataclass(frozen=True)
class CodeSearchResult:
    """Outcome of a code search: found, proved impossible, or horizon hit."""

    status: str  # "found" | "impossible" | "not_found"
    code: ListCode | None = None


def validate_list_code(code: ListCode) -> list[str]:
    problems = [f"channel: {p}" for p in validate_channel(code.channel)]
    if code.length < 1:
        problems.append(f"length must be at least 1, got {code.length}")
    if code.list_size < 0:
        problems.append(f"list size must be nonnegative, got {code.list_size}")
    if not code.codewords:
        problems.append("code has no codewords")
    known = set(code.channel.inputs)
    seen = set()
    for w in code.codewords:
        if len(w) != code.length:
            problems.append(f"codeword {w!r} does not have length {code.length}")
        for x in w:
            if x not in known:
                problems.append(f"codeword {w!r} uses unknown input {x!r}")
        if w in seen:
            problems.append(f"duplicate codeword {w!r}")
        seen.add(w)
    return problems


def _consistent(channel: Channel, codeword, output_sequence) -> bool:
    return all(y in channel.output_set(x) for x, y in zip(codeword, output_sequence))


def _reachable_outputs(channel: Channel, codeword):
    return itertools.product(*(channel.sorted_outputs(channel.output_set(x)) for x in codeword))


def verify_list_code(code: ListCode) -> tuple[bool, CodeCounterexample | None]:
    """Check the consistency bound over every reachable output sequence.

    Returns ``(True, None)`` or ``(False, counterexample)`` with the first
    violating sequence in enumeration order.
    """
    problems = validate_list_code(code)
    if problems:
        raise ValidationError(problems)
    seen = {}
    for w in code.codewords:
        for ys in _reachable_outputs(code.channel, w):
            seen.setdefault(ys, None)
    for ys in seen:
        consistent = tuple(
            idx for idx, w in enumerate(code.codewords) if _consistent(code.channel, w, ys)
        )
        if len(consistent) > code.list_size:
            return False, CodeCounterexample(ys, consistent)
    return True, None


def find_list_code(
    channel: Channel,
    list_size: int,
    codeword_count: int,
    max_length: int,
    max_nodes: int = 2_000_000,
) -> CodeSearchResult:
    """Search for the shortest code carrying ``codeword_count`` values with
    lists bounded by ``list_size``.

    A channel whose ambiguity exceeds ``list_size`` can never support such a
    code, so that case returns the distinct "impossible" verdict.  Otherwise
    lengths are tried in increasing order with a depth-first scan over
    codeword combinations in lexicographic order, pruning any partial code
    that already breaks the bound (violations only grow when codewords are
    added).  The first complete code is therefore the lexicographically least
    one of minimal length.  "not_found" means the length horizon was
    exhausted, not that no code exists.
    """
    require_valid(channel)
    if list_size < 1:
        raise ValidationError([f"list size must be at least 1, got {list_size}"])
    if codeword_count <= list_size:
        raise ValidationError(
            [f"codeword count must exceed list size, got {codeword_count} <= {list_size}"]
        )
    if max_length < 1:
        raise ValidationError([f"max length must be at least 1, got {max_length}"])

    level = ambiguity(channel).value
    if level.is_infinite or level.value > list_size:
        return CodeSearchResult("impossible")

    nodes = 0
    for length in range(1, max_length + 1):
        sequences = list(itertools.product(channel.inputs, repeat=length))
        if len(sequences) < codeword_count:
            continue

        def extension_ok(chosen, candidate):
            # Any sequence consistent with the new codeword is reachable from
            # it, so only its reachable outputs need re-counting.
            for ys in _reachable_outputs(channel, candidate):
                count = 1
                for w in chosen:
                    if _consistent(channel, w, ys):
                        count += 1
                        if count > list_size:
                            return False
            return True

        def extend(start, chosen):
            nonlocal nodes
            if len(chosen) == codeword_count:
                return tuple(chosen)
            need = codeword_count - len(chosen)
            for idx in range(start, len(sequences) - need + 1):
                nodes += 1
                if nodes > max_nodes:
                    raise BudgetExceededError(f"code search exceeded node budget {max_nodes}")
                candidate = sequences[idx]
                if extension_ok(chosen, candidate):
                    chosen.append(candidate)
                    found = extend(idx + 1, chosen)
                    if found:
                        return found
                    chosen.pop()
            return None

        found = extend(0, [])
        if found:
            return CodeSearchResult(
                "found", ListCode(channel, length, list_size, found)
            )
    return CodeSearchResult("not_found")
