"""Relational zero-error channels and exact ambiguity computation.

A channel assigns every input symbol the nonempty set of output symbols the
receiver may observe; there are no probabilities.  The ambiguity of a channel
is the largest number of inputs whose output sets still share a common
symbol.  It is infinite exactly for trivial channels, where all output sets
intersect and the receiver can never rule anything out.
"""

import itertools
from dataclasses import dataclass
from functools import total_ordering

from .errors import BudgetExceededError, ValidationError

#: Reserved literal used for the infinite ambiguity in files and reports.
INFINITE = "infinite"


@total_ordering
@dataclass(frozen=True)
class Ambiguity:
    """Positive channel ambiguity, totally ordered with infinite on top."""

    value: int | None  # None encodes infinite

    def __post_init__(self):
        if self.value is not None and (not isinstance(self.value, int) or self.value < 1):
            raise ValidationError(
                [f"ambiguity must be a positive integer or infinite, got {self.value!r}"]
            )

    @classmethod
    def infinite(cls) -> "Ambiguity":
        return cls(None)

    @classmethod
    def of(cls, value) -> "Ambiguity":
        """Coerce an int, the literal "infinite", or an Ambiguity."""
        if isinstance(value, Ambiguity):
            return value
        if value == INFINITE or value is None:
            return cls(None)
        return cls(value)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __lt__(self, other):
        if not isinstance(other, Ambiguity):
            return NotImplemented
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __mul__(self, other):
        if not isinstance(other, Ambiguity):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return Ambiguity(None)
        return Ambiguity(self.value * other.value)

    def __str__(self):
        return INFINITE if self.is_infinite else str(self.value)


@dataclass(frozen=True)
class Channel:
    """Finite relation between an input and an output alphabet.

    ``relation`` holds one ``(input, output set)`` pair per input symbol, in
    declaration order.  Channels are plain values; use :func:`validate_channel`
    to check the invariants (violations are reported, not raised).
    """

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    relation: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self):
        object.__setattr__(self, "_by_input", dict(self.relation))
        object.__setattr__(self, "_out_order", {y: i for i, y in enumerate(self.outputs)})

    def output_set(self, symbol: str) -> frozenset[str]:
        return self._by_input[symbol]

    def sorted_outputs(self, symbols) -> list[str]:
        """Sort output symbols by their declaration order."""
        return sorted(symbols, key=self._out_order.__getitem__)

    def least_output(self, symbols) -> str:
        return min(symbols, key=self._out_order.__getitem__)


def make_channel(inputs, outputs, relation) -> Channel:
    """Build a channel from symbol sequences and a mapping input -> outputs.

    Inputs missing from ``relation`` get an empty output set and extra keys are
    kept, so the validator can report both problems.
    """
    ins = tuple(inputs)
    declared = set(ins)
    entries = [(x, frozenset(relation.get(x, ()))) for x in ins]
    entries += [(x, frozenset(ys)) for x, ys in relation.items() if x not in declared]
    return Channel(ins, tuple(outputs), tuple(entries))


def validate_channel(channel: Channel) -> list[str]:
    """Return all invariant violations, empty when the channel is valid."""
    problems = []
    if not channel.inputs:
        problems.append("channel has no input symbols")
    seen = set()
    for x in channel.inputs:
        if x in seen:
            problems.append(f"duplicate input symbol {x!r}")
        seen.add(x)
    seen = set()
    for y in channel.outputs:
        if y in seen:
            problems.append(f"duplicate output symbol {y!r}")
        seen.add(y)
    declared_in = set(channel.inputs)
    declared_out = set(channel.outputs)
    covered = set()
    for x, ys in channel.relation:
        if x not in declared_in:
            problems.append(f"relation entry for undeclared input {x!r}")
        elif x in covered:
            problems.append(f"duplicate relation entry for input {x!r}")
        covered.add(x)
        if not ys:
            problems.append(f"empty output set for input {x!r}")
        for y in sorted(ys):
            if y not in declared_out:
                problems.append(f"relation for input {x!r} uses undeclared output {y!r}")
    for x in channel.inputs:
        if x not in covered:
            problems.append(f"missing relation entry for input {x!r}")
    return problems


def require_valid(channel: Channel) -> None:
    problems = validate_channel(channel)
    if problems:
        raise ValidationError(problems)


@dataclass(frozen=True)
class ListChannelSpec:
    """Parameters of a canonical list channel: inputs 1..alphabet_size, outputs
    the subsets of that range with exactly list_size members."""

    list_size: int
    alphabet_size: int

    def __post_init__(self):
        if self.list_size < 1:
            raise ValidationError([f"list size must be at least 1, got {self.list_size}"])
        if self.alphabet_size <= self.list_size:
            raise ValidationError(
                [
                    f"alphabet size must exceed list size, got "
                    f"{self.alphabet_size} <= {self.list_size}"
                ]
            )

    def channel(self) -> Channel:
        return make_list_channel(self.list_size, self.alphabet_size)


def subset_symbol(members) -> str:
    """Canonical symbol for a set of integer values: sorted, comma-joined."""
    return ",".join(str(m) for m in sorted(members))


def make_list_channel(list_size: int, alphabet_size: int) -> Channel:
    """Channel relating each input in 1..alphabet_size to every output subset
    of that size-``list_size`` family that contains it."""
    ListChannelSpec(list_size, alphabet_size)  # reuse parameter validation
    inputs = [str(i) for i in range(1, alphabet_size + 1)]
    outputs = []
    relation = {x: [] for x in inputs}
    for combo in itertools.combinations(range(1, alphabet_size + 1), list_size):
        symbol = subset_symbol(combo)
        outputs.append(symbol)
        for member in combo:
            relation[str(member)].append(symbol)
    return make_channel(inputs, outputs, relation)


@dataclass(frozen=True)
class AmbiguityResult:
    """Ambiguity value plus the evidence for it.

    Finite values come with ``witness_inputs``: the smallest family of inputs
    (one per distinct output set) whose output sets have empty intersection,
    one more input than the value itself.  Infinite values come with
    ``common_output``: a symbol shared by every output set.
    """

    value: Ambiguity
    witness_inputs: tuple[str, ...] | None
    common_output: str | None


def ambiguity(
    channel: Channel,
    max_subfamily: int | None = None,
    max_nodes: int | None = None,
) -> AmbiguityResult:
    """Compute the exact ambiguity of a valid channel.

    Identical output sets are deduplicated, then subfamilies are scanned by
    increasing size; the first empty intersection at size k gives the value
    k - 1.  The witness is the lexicographically least such subfamily in input
    declaration order.  Budgets abort with an error instead of guessing.
    """
    require_valid(channel)
    reps: dict[frozenset[str], str] = {}
    for x, ys in channel.relation:
        if ys not in reps:
            reps[ys] = x
    sets = list(reps.keys())
    names = list(reps.values())

    total = frozenset.intersection(*sets)
    if total:
        return AmbiguityResult(Ambiguity.infinite(), None, channel.least_output(total))

    nodes = 0
    for k in range(2, len(sets) + 1):
        if max_subfamily is not None and k > max_subfamily:
            raise BudgetExceededError(
                f"ambiguity search exceeded subfamily budget {max_subfamily}"
            )
        for combo in itertools.combinations(range(len(sets)), k):
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise BudgetExceededError(
                    f"ambiguity search exceeded node budget {max_nodes}"
                )
            inter = sets[combo[0]]
            for idx in combo[1:]:
                inter = inter & sets[idx]
                if not inter:
                    break
            if not inter:
                return AmbiguityResult(
                    Ambiguity(k - 1),
                    tuple(names[i] for i in combo),
                    None,
                )
    raise AssertionError("unreachable: the full family has empty intersection")


def achievable(first: Channel, second: Channel, with_feedback: bool = False) -> bool:
    """Whether ``first`` can simulate ``second``: its ambiguity is no larger.

    ``with_feedback`` only documents intent; a feedback link never changes the
    verdict, so the flag is ignored.
    """
    del with_feedback
    return ambiguity(first).value <= ambiguity(second).value


def canonical_list_equivalent(channel: Channel) -> ListChannelSpec | None:
    """The list channel equivalent to ``channel``, or None for trivial ones."""
    value = ambiguity(channel).value
    if value.is_infinite:
        return None
    return ListChannelSpec(value.value, value.value + 1)
