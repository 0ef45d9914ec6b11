"""Independent brute-force oracles and deterministic instance generators."""

import itertools

from zechan import Ambiguity, HonestSetStructure, make_channel


def brute_ambiguity(channel) -> Ambiguity:
    """Scan all subfamilies of distinct output sets by increasing size."""
    sets = []
    for _, ys in channel.relation:
        if ys not in sets:
            sets.append(ys)
    for size in range(2, len(sets) + 1):
        for family in itertools.combinations(sets, size):
            if not frozenset.intersection(*family):
                return Ambiguity(size - 1)
    return Ambiguity.infinite()


def brute_threshold(ambiguities, max_malicious) -> Ambiguity:
    """Minimize floor(sum(G) / (|G| - t)) over every subset with |G| > t."""
    values = [Ambiguity.of(a) for a in ambiguities]
    best = Ambiguity.infinite()
    for size in range(max_malicious + 1, len(values) + 1):
        for subset in itertools.combinations(values, size):
            if any(a.is_infinite for a in subset):
                continue
            total = sum(a.value for a in subset)
            candidate = Ambiguity(total // (size - max_malicious))
            if candidate < best:
                best = candidate
    return best


def random_channel(rng, max_inputs=6, max_outputs=6):
    n_in = rng.randint(1, max_inputs)
    n_out = rng.randint(1, max_outputs)
    inputs = [f"x{i}" for i in range(n_in)]
    outputs = [f"y{i}" for i in range(n_out)]
    relation = {
        x: sorted(rng.sample(outputs, rng.randint(1, n_out))) for x in inputs
    }
    return make_channel(inputs, outputs, relation)


def random_structure(rng, channel_count, max_sets=8) -> HonestSetStructure:
    pool = [
        frozenset(c)
        for size in range(1, channel_count + 1)
        for c in itertools.combinations(range(1, channel_count + 1), size)
    ]
    count = rng.randint(1, min(max_sets, len(pool)))
    return HonestSetStructure(channel_count, tuple(rng.sample(pool, count)))
