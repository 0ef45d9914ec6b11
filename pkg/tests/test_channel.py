import random

import pytest
from hypothesis import given, strategies as st

from zechan import (
    Ambiguity,
    BudgetExceededError,
    ListChannelSpec,
    ValidationError,
    achievable,
    ambiguity,
    canonical_list_equivalent,
    make_channel,
    make_list_channel,
    validate_channel,
)

from oracles import brute_ambiguity, random_channel


def identity_bit():
    return make_channel(["0", "1"], ["0", "1"], {"0": ["0"], "1": ["1"]})


class TestValidation:
    def test_identity_is_valid(self):
        assert validate_channel(identity_bit()) == []

    def test_empty_output_set_is_reported(self):
        channel = make_channel(["0", "1"], ["0"], {"1": ["0"]})
        assert any("empty output set for input '0'" in p for p in validate_channel(channel))

    def test_undeclared_output_is_named(self):
        channel = make_channel(["0"], ["a"], {"0": ["a", "ghost"]})
        assert any("'ghost'" in p for p in validate_channel(channel))

    def test_duplicate_symbols(self):
        channel = make_channel(["0", "0"], ["a", "a"], {"0": ["a"]})
        problems = validate_channel(channel)
        assert any("duplicate input" in p for p in problems)
        assert any("duplicate output" in p for p in problems)

    def test_undeclared_relation_input(self):
        channel = make_channel(["0"], ["a"], {"0": ["a"], "x": ["a"]})
        assert any("undeclared input 'x'" in p for p in validate_channel(channel))


class TestListChannel:
    def test_perfect_binary(self):
        channel = make_list_channel(1, 2)
        assert channel.inputs == ("1", "2")
        assert channel.outputs == ("1", "2")
        assert channel.output_set("1") == frozenset(["1"])

    def test_two_of_three(self):
        channel = make_list_channel(2, 3)
        assert channel.outputs == ("1,2", "1,3", "2,3")
        assert all(len(channel.output_set(x)) == 2 for x in channel.inputs)

    def test_two_of_four_counts(self):
        channel = make_list_channel(2, 4)
        assert len(channel.inputs) == 4
        assert len(channel.outputs) == 6
        # each input sits in C(3, 1) = 3 of the subsets
        assert all(len(channel.output_set(x)) == 3 for x in channel.inputs)

    def test_rejects_degenerate_parameters(self):
        with pytest.raises(ValidationError):
            make_list_channel(2, 2)
        with pytest.raises(ValidationError):
            make_list_channel(0, 2)


class TestAmbiguity:
    def test_identity(self):
        result = ambiguity(identity_bit())
        assert result.value == Ambiguity(1)
        assert result.witness_inputs == ("0", "1")

    def test_list_channel(self):
        result = ambiguity(make_list_channel(2, 3))
        assert result.value == Ambiguity(2)
        assert result.witness_inputs == ("1", "2", "3")

    def test_all_overlap_is_infinite(self):
        channel = make_channel(["a", "b"], ["z", "y"], {"a": ["z"], "b": ["z", "y"]})
        result = ambiguity(channel)
        assert result.value.is_infinite
        assert result.common_output == "z"

    def test_single_input_is_infinite(self):
        channel = make_channel(["a"], ["z"], {"a": ["z"]})
        assert ambiguity(channel).value.is_infinite

    def test_witness_is_lex_least(self):
        # both ('p', 'q') and ('p', 'r') are disjoint pairs; 'q' comes first
        channel = make_channel(
            ["p", "q", "r"], ["1", "2", "3"],
            {"p": ["1"], "q": ["2"], "r": ["3"]},
        )
        assert ambiguity(channel).witness_inputs == ("p", "q")

    def test_budget_abort(self):
        channel = make_list_channel(2, 5)
        with pytest.raises(BudgetExceededError):
            ambiguity(channel, max_nodes=2)
        with pytest.raises(BudgetExceededError):
            ambiguity(channel, max_subfamily=2)

    def test_invalid_channel_rejected(self):
        with pytest.raises(ValidationError):
            ambiguity(make_channel(["0"], [], {}))

    @pytest.mark.parametrize("list_size", [1, 2, 3])
    @pytest.mark.parametrize("extra", [1, 2, 3])
    def test_list_channel_identity(self, list_size, extra):
        value = ambiguity(make_list_channel(list_size, list_size + extra)).value
        assert value == Ambiguity(list_size)

    def test_matches_brute_force_on_random_channels(self):
        rng = random.Random(1913)
        for _ in range(150):
            channel = random_channel(rng)
            result = ambiguity(channel)
            assert result.value == brute_ambiguity(channel)
            if not result.value.is_infinite:
                witness_sets = [channel.output_set(x) for x in result.witness_inputs]
                assert len(result.witness_inputs) == result.value.value + 1
                assert not frozenset.intersection(*witness_sets)
            else:
                assert all(
                    result.common_output in ys for _, ys in channel.relation
                )


@st.composite
def channels(draw, max_inputs=5, max_outputs=5):
    n_in = draw(st.integers(1, max_inputs))
    n_out = draw(st.integers(1, max_outputs))
    outputs = [f"y{i}" for i in range(n_out)]
    relation = {}
    for i in range(n_in):
        members = draw(
            st.lists(st.sampled_from(outputs), min_size=1, max_size=n_out, unique=True)
        )
        relation[f"x{i}"] = sorted(members)
    return make_channel([f"x{i}" for i in range(n_in)], outputs, relation)


class TestAmbiguityProperties:
    @given(channels())
    def test_renaming_invariance(self, channel):
        renamed = make_channel(
            [f"in_{x}" for x in channel.inputs],
            [f"out_{y}" for y in channel.outputs],
            {
                f"in_{x}": [f"out_{y}" for y in channel.sorted_outputs(ys)]
                for x, ys in channel.relation
            },
        )
        assert ambiguity(channel).value == ambiguity(renamed).value

    @given(channels())
    def test_duplicating_an_input_changes_nothing(self, channel):
        first = channel.inputs[0]
        doubled = make_channel(
            list(channel.inputs) + ["clone"],
            channel.outputs,
            {
                **{x: channel.sorted_outputs(ys) for x, ys in channel.relation},
                "clone": channel.sorted_outputs(channel.output_set(first)),
            },
        )
        assert ambiguity(channel).value == ambiguity(doubled).value

    @given(channels(), st.randoms(use_true_random=False))
    def test_removing_an_output_never_increases(self, channel, rng):
        candidates = [
            (x, y)
            for x, ys in channel.relation
            if len(ys) > 1
            for y in channel.sorted_outputs(ys)
        ]
        if not candidates:
            return
        x0, y0 = rng.choice(candidates)
        narrowed = make_channel(
            channel.inputs,
            channel.outputs,
            {
                x: [y for y in channel.sorted_outputs(ys) if (x, y) != (x0, y0)]
                for x, ys in channel.relation
            },
        )
        assert ambiguity(narrowed).value <= ambiguity(channel).value

    @given(channels())
    def test_brute_force_agreement(self, channel):
        assert ambiguity(channel).value == brute_ambiguity(channel)


class TestAchievable:
    def test_list_channel_order(self):
        assert achievable(make_list_channel(1, 2), make_list_channel(3, 4))
        assert not achievable(make_list_channel(2, 3), make_list_channel(1, 2))

    def test_reflexive(self):
        channel = make_list_channel(2, 4)
        assert achievable(channel, channel)

    def test_feedback_flag_is_inert(self):
        a, b = make_list_channel(1, 2), make_list_channel(2, 3)
        assert achievable(a, b) == achievable(a, b, with_feedback=True)
        assert achievable(b, a) == achievable(b, a, with_feedback=True)

    def test_total_preorder_on_random_channels(self):
        rng = random.Random(7)
        pool = [random_channel(rng, 4, 4) for _ in range(8)]
        for a in pool:
            for b in pool:
                forward, backward = achievable(a, b), achievable(b, a)
                assert forward or backward  # totality
                for c in pool:
                    if forward and achievable(b, c):
                        assert achievable(a, c)


class TestCanonicalEquivalent:
    def test_identity(self):
        assert canonical_list_equivalent(identity_bit()) == ListChannelSpec(1, 2)

    def test_wide_list_channel_collapses(self):
        assert canonical_list_equivalent(make_list_channel(2, 7)) == ListChannelSpec(2, 3)

    def test_trivial_channel(self):
        channel = make_channel(["a"], ["z"], {"a": ["z"]})
        assert canonical_list_equivalent(channel) is None
