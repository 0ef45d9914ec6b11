"""Command-line front end producing canonical, byte-stable reports.

Every invocation prints one report, either as human-readable lines or as
canonical JSON (``--format machine``).  Identical inputs always produce
byte-identical reports.  Exit codes: 0 success, 1 internal error, 2 parse
error, 3 validation error, 4 budget or search horizon exceeded, 5 a negative
or impossibility verdict.
"""

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field

from .channel import Ambiguity, ambiguity, validate_channel
from .composition import (
    HonestSetStructure,
    ThresholdSpec,
    lp_upper_bound,
    parallel_ambiguity,
    serial_ambiguity,
    threshold_ambiguity,
)
from .errors import BudgetExceededError, FormatError, ValidationError
from .formats import (
    ambiguity_from_json,
    ambiguity_to_json,
    list_code_to_doc,
    load_channel,
    load_network,
    load_parallel_instance,
)
from .listcodes import find_list_code, verify_list_code
from .network import network_ambiguity
from .strategies import (
    adversary_general,
    adversary_threshold,
    empirical_ambiguity,
    indistinguishability_check,
    iter_valid_transcripts,
    receiver_general,
    receiver_threshold,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4
EXIT_IMPOSSIBLE = 5


@dataclass
class Outcome:
    arguments: dict
    inputs: dict
    results: dict
    human: list[str]
    warnings: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK


def _digest(path: str) -> str:
    try:
        with open(path, "rb") as handle:
            return hashlib.sha256(handle.read()).hexdigest()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _ambiguity_literal(text: str) -> Ambiguity:
    try:
        if text != "infinite":
            return ambiguity_from_json(int(text))
        return ambiguity_from_json(text)
    except (ValueError, FormatError):
        raise argparse.ArgumentTypeError(
            f"expected a positive integer or 'infinite', got {text!r}"
        ) from None


def _checked_channel(path: str):
    channel = load_channel(path)
    problems = validate_channel(channel)
    if problems:
        raise ValidationError([f"{path}: {p}" for p in problems])
    return channel


def _transcript_doc(transcript) -> dict:
    return {
        "emitted": [sorted(s) for s in transcript.emitted],
        "true_value": transcript.true_value,
        "corrupted": sorted(transcript.corrupted),
    }


def _outcome_doc(outcome) -> dict:
    return {
        "receiver_list": list(outcome.receiver_list),
        "contains_truth": outcome.contains_truth,
        "list_size": outcome.list_size,
    }


def cmd_ambiguity(args) -> Outcome:
    channel = _checked_channel(args.channel)
    result = ambiguity(channel, max_subfamily=args.max_subfamily, max_nodes=args.max_nodes)
    results = {
        "ambiguity": ambiguity_to_json(result.value),
        "witness_inputs": list(result.witness_inputs) if result.witness_inputs else None,
        "common_output": result.common_output,
    }
    human = [f"ambiguity: {result.value}"]
    if result.witness_inputs:
        human.append("witness inputs: " + ", ".join(result.witness_inputs))
    if result.common_output is not None:
        human.append(f"common output: {result.common_output}")
    return Outcome(
        {"channel": args.channel},
        {args.channel: _digest(args.channel)},
        results,
        human,
    )


def cmd_achievable(args) -> Outcome:
    first = _checked_channel(args.first)
    second = _checked_channel(args.second)
    values = [ambiguity(first).value, ambiguity(second).value]
    verdict = values[0] <= values[1]
    results = {
        "achievable": verdict,
        "ambiguities": [ambiguity_to_json(v) for v in values],
        "feedback_requested": bool(args.feedback),
        "note": "feedback never changes achievability",
    }
    human = [f"achievable: {'yes' if verdict else 'no'}"]
    human.append(f"ambiguities: {values[0]} vs {values[1]}")
    if args.feedback:
        human.append("note: feedback never changes achievability")
    inputs = {args.first: _digest(args.first)}
    inputs.setdefault(args.second, _digest(args.second))
    return Outcome(
        {"first": args.first, "second": args.second, "feedback": bool(args.feedback)},
        inputs,
        results,
        human,
        exit_code=EXIT_OK if verdict else EXIT_IMPOSSIBLE,
    )


def cmd_serial(args) -> Outcome:
    value = serial_ambiguity(args.values)
    return Outcome(
        {"values": [ambiguity_to_json(v) for v in args.values]},
        {},
        {"ambiguity": ambiguity_to_json(value)},
        [f"ambiguity: {value}"],
    )


def cmd_parallel(args) -> Outcome:
    instance = load_parallel_instance(args.instance)
    result = parallel_ambiguity(instance.ambiguities, instance.structure)
    results = {
        "ambiguity": ambiguity_to_json(result.value),
        "allocation": list(result.allocation.values) if result.allocation else None,
        "honest_sets": [sorted(h) for h in instance.structure.sets],
    }
    human = [f"ambiguity: {result.value}"]
    if result.allocation:
        human.append("allocation: " + ", ".join(str(v) for v in result.allocation.values))
    if all(not a.is_infinite for a in instance.ambiguities):
        bound = lp_upper_bound(instance.ambiguities, instance.structure)
        results["lp_upper_bound"] = str(bound)
        human.append(f"lp upper bound: {bound}")
    else:
        results["lp_upper_bound"] = None
    return Outcome(
        {"instance": args.instance},
        {args.instance: _digest(args.instance)},
        results,
        human,
    )


def cmd_threshold(args) -> Outcome:
    spec = ThresholdSpec(tuple(args.values), args.max_malicious)
    result = threshold_ambiguity(spec)
    results = {
        "ambiguity": ambiguity_to_json(result.value),
        "witness_channels": list(result.witness) if result.witness else None,
    }
    human = [f"ambiguity: {result.value}"]
    if result.witness:
        human.append("witness channels: " + ", ".join(str(j) for j in result.witness))
    return Outcome(
        {
            "max_malicious": args.max_malicious,
            "values": [ambiguity_to_json(v) for v in args.values],
        },
        {},
        results,
        human,
    )


def cmd_network(args) -> Outcome:
    net, adversary = load_network(args.network)
    result = network_ambiguity(net, adversary)
    results: dict = {"ambiguity": ambiguity_to_json(result.value)}
    human = []
    if result.decomposition is not None:
        dec = result.decomposition
        results["paths"] = [list(p) for p in dec.paths]
        results["path_ambiguities"] = [ambiguity_to_json(a) for a in dec.path_ambiguities]
        results["honest_sets"] = [sorted(h) for h in dec.honest_sets]
        results["corruptible_sets"] = [sorted(z) for z in dec.corruptible_sets]
        human.append("paths:")
        for index, path in enumerate(dec.paths, start=1):
            human.append(
                f"  {index}: {' -> '.join(path)} (ambiguity {dec.path_ambiguities[index - 1]})"
            )
        human.append(
            "honest sets: " + "; ".join("{" + ", ".join(map(str, sorted(h))) + "}" for h in dec.honest_sets)
        )
    else:
        results["paths"] = []
        results["path_ambiguities"] = []
        results["honest_sets"] = []
        results["corruptible_sets"] = []
    results["allocation"] = list(result.allocation.values) if result.allocation else None
    human.append(f"ambiguity: {result.value}")
    if result.allocation:
        human.append("allocation: " + ", ".join(str(v) for v in result.allocation.values))
    return Outcome(
        {"network": args.network},
        {args.network: _digest(args.network)},
        results,
        human,
        warnings=list(result.warnings),
    )


def cmd_listcode(args) -> Outcome:
    channel = _checked_channel(args.channel)
    result = find_list_code(
        channel,
        args.list_size,
        args.codewords,
        max_length=args.max_length,
        max_nodes=args.max_nodes,
    )
    arguments = {
        "channel": args.channel,
        "list_size": args.list_size,
        "codewords": args.codewords,
        "max_length": args.max_length,
    }
    inputs = {args.channel: _digest(args.channel)}
    if result.status == "found":
        ok, counterexample = verify_list_code(result.code)
        results = {
            "status": "found",
            "code": list_code_to_doc(result.code, channel_ref=args.channel),
            "verified": ok,
        }
        human = [
            f"code: found, length {result.code.length}, "
            f"{len(result.code.codewords)} codewords",
            f"verified: {'yes' if ok else 'no'}",
        ]
        code = EXIT_OK if ok else EXIT_ERROR
        if counterexample is not None:
            results["counterexample"] = {
                "output_sequence": list(counterexample.output_sequence),
                "consistent_codewords": list(counterexample.consistent_codewords),
            }
        return Outcome(arguments, inputs, results, human, exit_code=code)
    if result.status == "impossible":
        level = ambiguity(channel).value
        results = {
            "status": "impossible",
            "reason": f"channel ambiguity {level} exceeds requested list size {args.list_size}",
        }
        return Outcome(
            arguments,
            inputs,
            results,
            ["impossible: channel ambiguity exceeds the requested list size"],
            exit_code=EXIT_IMPOSSIBLE,
        )
    results = {"status": "not_found"}
    return Outcome(
        arguments,
        inputs,
        results,
        [f"not found within length {args.max_length}"],
        exit_code=EXIT_BUDGET,
    )


def _simulate_source(path: str):
    """Load a parallel instance either directly or via a network file."""
    with open(path, encoding="utf-8") as handle:
        head = handle.read()
    try:
        keys = set(json.loads(head))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if "players" in keys:
        net, adversary = load_network(path)
        result = network_ambiguity(net, adversary)
        if result.decomposition is None:
            raise ValidationError([f"{path}: network has no sender-to-receiver path"])
        if any(not h for h in result.decomposition.honest_sets):
            raise ValidationError(
                [f"{path}: adversary can disconnect every path; nothing to simulate"]
            )
        structure = HonestSetStructure(
            len(result.decomposition.paths), result.decomposition.honest_sets
        )
        return result.decomposition.path_ambiguities, structure, None
    instance = load_parallel_instance(path)
    return instance.ambiguities, instance.structure, instance.threshold


def cmd_simulate(args) -> Outcome:
    ambiguities, structure, threshold_params = _simulate_source(args.instance)
    computed = parallel_ambiguity(ambiguities, structure)
    arguments = {
        "instance": args.instance,
        "truth": args.truth,
        "exhaustive": bool(args.exhaustive),
    }
    inputs = {args.instance: _digest(args.instance)}
    if computed.value.is_infinite:
        return Outcome(
            arguments,
            inputs,
            {"computed": ambiguity_to_json(computed.value)},
            ["computed: infinite"],
            warnings=["instance is trivially ambiguous; no finite simulation"],
        )
    optimum = computed.value.value
    values = list(range(1, optimum + 2))
    truth = args.truth if args.truth is not None else values[0]
    if truth not in values:
        raise ValidationError(
            [f"truth {truth} outside the simulated value space 1..{values[-1]}"]
        )
    decoys = [v for v in values if v != truth][: optimum - 1]
    candidates = sorted([truth] + decoys)

    transcript = adversary_general(
        structure, ambiguities, computed.allocation, truth, decoys
    )
    outcome = receiver_general(transcript, structure)
    indistinguishable = indistinguishability_check(
        transcript, structure, ambiguities, candidates
    )
    empirical = empirical_ambiguity(
        ambiguities, structure, values[:optimum], max_nodes=args.max_transcripts
    )
    match = empirical == optimum
    results = {
        "computed": optimum,
        "empirical": empirical,
        "match": match,
        "allocation": list(computed.allocation.values),
        "transcript": _transcript_doc(transcript),
        "receiver": _outcome_doc(outcome),
        "indistinguishable_candidates": candidates if indistinguishable else [],
        "sound": outcome.contains_truth and outcome.list_size <= optimum,
    }
    human = [
        "adversary transcript: "
        + "; ".join(
            f"channel {j} -> {{{', '.join(map(str, sorted(s)))}}}"
            for j, s in enumerate(transcript.emitted, start=1)
        ),
        "receiver list: {" + ", ".join(map(str, outcome.receiver_list)) + "}",
        f"indistinguishable candidates: {len(candidates) if indistinguishable else 0}",
    ]
    warnings: list[str] = []
    if threshold_params is not None:
        spec = ThresholdSpec(ambiguities, threshold_params[1])
        threshold_result = threshold_ambiguity(spec)
        t_transcript = adversary_threshold(spec, truth, decoys)
        t_outcome = receiver_threshold(t_transcript, spec, threshold_result.witness)
        results["threshold"] = {
            "transcript": _transcript_doc(t_transcript),
            "receiver": _outcome_doc(t_outcome),
            "sound": t_outcome.contains_truth and t_outcome.list_size <= optimum,
        }
        human.append(
            "threshold receiver list: {"
            + ", ".join(map(str, t_outcome.receiver_list))
            + "}"
        )
    if args.exhaustive:
        checked = 0
        sound = True
        for sample in iter_valid_transcripts(
            ambiguities, structure, values, max_transcripts=args.max_transcripts
        ):
            checked += 1
            verdict = receiver_general(sample, structure)
            if not verdict.contains_truth or verdict.list_size > optimum:
                sound = False
                break
        results["soundness_sweep"] = {"transcripts": checked, "sound": sound}
        human.append(f"soundness sweep: {checked} transcripts, {'sound' if sound else 'UNSOUND'}")
        if not sound:
            return Outcome(arguments, inputs, results, human, warnings, EXIT_ERROR)
    human.append(f"computed {optimum}, empirical {empirical}, {'match' if match else 'MISMATCH'}")
    return Outcome(
        arguments,
        inputs,
        results,
        human,
        warnings,
        EXIT_OK if match else EXIT_ERROR,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zechan",
        description="Zero-error channel toolkit: ambiguity, achievability, and "
        "adversarial network composition.",
    )
    parser.add_argument(
        "--format",
        choices=("human", "machine"),
        default="human",
        help="report format (machine = canonical JSON)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ambiguity", help="ambiguity of a channel file")
    p.add_argument("channel")
    p.add_argument("--max-subfamily", type=int, default=16)
    p.add_argument("--max-nodes", type=int, default=5_000_000)
    p.set_defaults(handler=cmd_ambiguity)

    p = sub.add_parser("achievable", help="can the first channel simulate the second")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--feedback", action="store_true", help="document that feedback is available")
    p.set_defaults(handler=cmd_achievable)

    p = sub.add_parser("serial", help="ambiguity of a relay chain")
    p.add_argument("values", nargs="+", type=_ambiguity_literal, metavar="AMBIGUITY")
    p.set_defaults(handler=cmd_serial)

    p = sub.add_parser("parallel", help="ambiguity of a parallel instance file")
    p.add_argument("instance")
    p.set_defaults(handler=cmd_parallel)

    p = sub.add_parser("threshold", help="threshold-adversary parallel ambiguity")
    p.add_argument("max_malicious", type=int, metavar="T")
    p.add_argument("values", nargs="+", type=_ambiguity_literal, metavar="AMBIGUITY")
    p.set_defaults(handler=cmd_threshold)

    p = sub.add_parser("network", help="end-to-end ambiguity of a network file")
    p.add_argument("network")
    p.set_defaults(handler=cmd_network)

    p = sub.add_parser("listcode", help="search a list code over a channel file")
    p.add_argument("channel")
    p.add_argument("list_size", type=int, metavar="LIST_SIZE")
    p.add_argument("codewords", type=int, metavar="CODEWORDS")
    p.add_argument("--max-length", type=int, default=3)
    p.add_argument("--max-nodes", type=int, default=2_000_000)
    p.set_defaults(handler=cmd_listcode)

    p = sub.add_parser("simulate", help="run the strategies for an instance or network file")
    p.add_argument("instance")
    p.add_argument("--truth", type=int, default=None)
    p.add_argument(
        "--exhaustive",
        action="store_true",
        help="also sweep every valid transcript for receiver soundness",
    )
    p.add_argument("--max-transcripts", type=int, default=200_000)
    p.set_defaults(handler=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        outcome = args.handler(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    report = {
        "command": args.command,
        "arguments": outcome.arguments,
        "inputs": outcome.inputs,
        "results": outcome.results,
        "warnings": outcome.warnings,
    }
    if args.format == "machine":
        print(json.dumps(report, indent=2))
    else:
        for line in outcome.human:
            print(line)
        for warning in outcome.warnings:
            print(f"warning: {warning}")
    return outcome.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
