"""Ambiguity calculus for serial chains and parallel bundles.

Serial relaying multiplies ambiguities.  For parallel bundles the receiver
only knows that the set of uncorrupted channels is some member of an honest
set structure; the resulting ambiguity is the optimum of an integer program
that allocates candidate values to honest sets without overloading any
channel.  A threshold adversary admits a closed form over sorted prefixes.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .channel import Ambiguity
from .errors import BudgetExceededError, ValidationError


@dataclass(frozen=True)
class HonestSetStructure:
    """Family of candidate honest channel sets over channels 1..channel_count."""

    channel_count: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        problems = []
        if self.channel_count < 1:
            problems.append(f"channel count must be at least 1, got {self.channel_count}")
        if not self.sets:
            problems.append("structure has no honest sets")
        seen = set()
        for h in self.sets:
            if not h:
                problems.append("honest sets must be nonempty")
            bad = sorted(j for j in h if not (1 <= j <= self.channel_count))
            if bad:
                problems.append(f"honest set uses out-of-range channels {bad}")
            if h in seen:
                problems.append(f"duplicate honest set {sorted(h)}")
            seen.add(h)
        if problems:
            raise ValidationError(problems)

    @classmethod
    def build(cls, channel_count, sets) -> "HonestSetStructure":
        return cls(channel_count, tuple(frozenset(int(j) for j in h) for h in sets))

    def containing(self, channel: int) -> tuple[int, ...]:
        """Indices (0-based) of the honest sets containing ``channel``."""
        return tuple(i for i, h in enumerate(self.sets) if channel in h)


@dataclass(frozen=True)
class Allocation:
    """Integer allocation of candidate values to honest sets."""

    values: tuple[int, ...]

    @property
    def objective(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class ParallelResult:
    value: Ambiguity
    allocation: Allocation | None


def serial_ambiguity(chain) -> Ambiguity:
    """Product of the ambiguities along a relay chain; infinite absorbs."""
    values = [Ambiguity.of(a) for a in chain]
    if not values:
        raise ValidationError(["serial chain must contain at least one channel"])
    result = values[0]
    for a in values[1:]:
        result = result * a
    return result


def _coerce_ambiguities(ambiguities, structure: HonestSetStructure):
    values = tuple(Ambiguity.of(a) for a in ambiguities)
    if len(values) != structure.channel_count:
        raise ValidationError(
            [
                f"{len(values)} ambiguities for a structure over "
                f"{structure.channel_count} channels"
            ]
        )
    return values


def parallel_ambiguity(ambiguities, structure: HonestSetStructure) -> ParallelResult:
    """Exact integer optimum of the honest-set allocation program.

    Each honest set h_i may absorb a_i candidate values; every channel of
    finite ambiguity A_j caps the total allocated to the honest sets it
    belongs to at A_j.  Channels of infinite ambiguity impose nothing, so a
    honest set with no finite channel makes the optimum unbounded and the
    result infinite.  The witness is the lexicographically greatest optimal
    allocation, found by a memoized descent over residual channel slacks.
    """
    values = _coerce_ambiguities(ambiguities, structure)
    finite = {
        j: values[j - 1].value
        for j in range(1, structure.channel_count + 1)
        if not values[j - 1].is_infinite
    }
    supports = []
    for h in structure.sets:
        fin = tuple(sorted(j for j in h if j in finite))
        if not fin:
            return ParallelResult(Ambiguity.infinite(), None)
        supports.append(fin)

    order = tuple(sorted(finite))
    position = {j: p for p, j in enumerate(order)}
    start = tuple(finite[j] for j in order)
    set_count = len(structure.sets)
    memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def reduce(slack, support, amount):
        updated = list(slack)
        for j in support:
            updated[position[j]] -= amount
        return tuple(updated)

    def max_tail(i, slack):
        if i == set_count:
            return 0
        key = (i, slack)
        cached = memo.get(key)
        if cached is not None:
            return cached
        cap = min(slack[position[j]] for j in supports[i])
        best = 0
        for v in range(cap, -1, -1):
            got = v + max_tail(i + 1, reduce(slack, supports[i], v) if v else slack)
            if got > best:
                best = got
        memo[key] = best
        return best

    optimum = max_tail(0, start)
    chosen = []
    slack = start
    remaining = optimum
    for i in range(set_count):
        cap = min(slack[position[j]] for j in supports[i])
        for v in range(cap, -1, -1):
            reduced = reduce(slack, supports[i], v) if v else slack
            if v + max_tail(i + 1, reduced) == remaining:
                chosen.append(v)
                slack = reduced
                remaining -= v
                break
    return ParallelResult(Ambiguity(optimum), Allocation(tuple(chosen)))


def _simplex_max(objective, rows, rhs) -> Fraction:
    """Exact primal simplex for max c.x subject to rows.x <= rhs, x >= 0.

    Nonnegative right-hand sides make the slack basis feasible, and Bland's
    rule keeps the rational pivoting finite.
    """
    m, n = len(rows), len(objective)
    tableau = [
        [Fraction(v) for v in rows[i]]
        + [Fraction(int(i == j)) for j in range(m)]
        + [Fraction(rhs[i])]
        for i in range(m)
    ]
    z = [Fraction(v) for v in objective] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if z[j] > 0), None)
        if enter is None:
            return -z[-1]
        leave = None
        best = None
        for i in range(m):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("linear program is unbounded")
        pivot = tableau[leave][enter]
        tableau[leave] = [v / pivot for v in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter]:
                factor = tableau[i][enter]
                tableau[i] = [a - factor * b for a, b in zip(tableau[i], tableau[leave])]
        if z[enter]:
            factor = z[enter]
            z = [a - factor * b for a, b in zip(z, tableau[leave])]
        basis[leave] = enter


def lp_upper_bound(ambiguities, structure: HonestSetStructure) -> Fraction:
    """Optimal value of the rational relaxation of the allocation program."""
    values = _coerce_ambiguities(ambiguities, structure)
    if any(a.is_infinite for a in values):
        raise ValidationError(["relaxation requires finite ambiguities"])
    k = len(structure.sets)
    rows = []
    rhs = []
    for j in range(1, structure.channel_count + 1):
        members = structure.containing(j)
        if not members:
            continue
        rows.append([1 if i in members else 0 for i in range(k)])
        rhs.append(values[j - 1].value)
    if not rows:
        raise ArithmeticError("no channel constrains any honest set")
    return _simplex_max([1] * k, rows, rhs)


@dataclass(frozen=True)
class ThresholdSpec:
    """Parallel bundle where up to ``max_malicious`` channels are corrupted."""

    ambiguities: tuple[Ambiguity, ...]
    max_malicious: int

    def __post_init__(self):
        object.__setattr__(
            self, "ambiguities", tuple(Ambiguity.of(a) for a in self.ambiguities)
        )
        n = len(self.ambiguities)
        if n < 1:
            raise ValidationError(["threshold bundle must contain at least one channel"])
        if not 0 <= self.max_malicious < n:
            raise ValidationError(
                [f"malicious count must satisfy 0 <= t < {n}, got {self.max_malicious}"]
            )


@dataclass(frozen=True)
class ThresholdResult:
    value: Ambiguity
    witness: tuple[int, ...] | None  # 1-based channel indices of a minimizing subset


def threshold_ambiguity(spec: ThresholdSpec) -> ThresholdResult:
    """Minimum over receiver subsets G of floor(sum(G) / (|G| - t)).

    For a fixed subset size the best choice is always the channels of least
    ambiguity, so sorting and scanning prefix sizes t+1..n is exhaustive.
    Infinite channels only matter when fewer than t+1 finite ones exist, in
    which case no subset yields a finite value.
    """
    t = spec.max_malicious
    finite = sorted(
        (a.value, j) for j, a in enumerate(spec.ambiguities, start=1) if not a.is_infinite
    )
    if len(finite) <= t:
        return ThresholdResult(Ambiguity.infinite(), None)
    best = None
    best_size = None
    prefix = 0
    for size, (value, _) in enumerate(finite, start=1):
        prefix += value
        if size <= t:
            continue
        candidate = prefix // (size - t)
        if best is None or candidate < best:
            best = candidate
            best_size = size
    witness = tuple(sorted(j for _, j in finite[:best_size]))
    return ThresholdResult(Ambiguity(best), witness)


def threshold_structure(channel_count: int, max_malicious: int) -> HonestSetStructure:
    """All subsets of exactly ``channel_count - max_malicious`` channels."""
    if not 0 <= max_malicious < channel_count:
        raise ValidationError(
            [
                f"malicious count must satisfy 0 <= t < {channel_count}, "
                f"got {max_malicious}"
            ]
        )
    sets = itertools.combinations(range(1, channel_count + 1), channel_count - max_malicious)
    return HonestSetStructure.build(channel_count, sets)


@lru_cache(maxsize=2)
def _allocation_grid(base: int, width: int):
    count = base**width
    grid = np.empty((count, width), dtype=np.int8)
    index = np.arange(count, dtype=np.int64)
    for pos in range(width):
        grid[:, pos] = (index // base ** (width - 1 - pos)) % base
    grid.setflags(write=False)
    return grid


def brute_force_parallel(
    ambiguities, structure: HonestSetStructure, max_allocations: int = 12_000_000
) -> Ambiguity:
    """Exhaustively enumerate every allocation with entries up to the largest
    ambiguity and return the best feasible objective.

    Independent of :func:`parallel_ambiguity`; intended as its oracle at desk
    scale.  Spaces larger than ``max_allocations`` raise instead of truncating.
    """
    values = _coerce_ambiguities(ambiguities, structure)
    if any(a.is_infinite for a in values):
        raise ValidationError(["brute force requires finite ambiguities"])
    limits = [a.value for a in values]
    k = len(structure.sets)
    base = max(limits) + 1
    space = base**k
    if space > max_allocations:
        raise BudgetExceededError(
            f"allocation space {space} exceeds budget {max_allocations}"
        )
    grid = _allocation_grid(base, k)
    columns = [
        np.array(structure.containing(j), dtype=np.int64)
        for j in range(1, structure.channel_count + 1)
    ]
    best = 0
    chunk = 1_000_000
    for startrow in range(0, space, chunk):
        block = grid[startrow : startrow + chunk]
        feasible = np.ones(len(block), dtype=bool)
        for j, cols in enumerate(columns):
            if cols.size:
                loads = block[:, cols].sum(axis=1, dtype=np.int16)
                feasible &= loads <= limits[j]
        if feasible.any():
            totals = block[feasible].sum(axis=1, dtype=np.int16)
            best = max(best, int(totals.max()))
    return Ambiguity(best)
