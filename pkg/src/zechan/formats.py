"""Canonical JSON document formats for channels, structures, and networks.

Serialization is byte-stable: keys follow a fixed order, relation entries
follow input declaration order, and output lists follow output declaration
order, so identical values always produce identical documents.  The literal
"infinite" is reserved for the infinite ambiguity everywhere.
"""

import json
import os
from dataclasses import dataclass

from .channel import INFINITE, Ambiguity, Channel, make_channel
from .composition import HonestSetStructure, threshold_structure
from .errors import FormatError
from .listcodes import ListCode
from .network import Edge, Network, PlayerAdversaryStructure


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _expect_object(doc, what: str, required, optional=()):
    if not isinstance(doc, dict):
        raise FormatError(f"{what} must be an object")
    allowed = set(required) | set(optional)
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise FormatError(f"{what} has unknown keys: {', '.join(unknown)}")
    missing = sorted(set(required) - set(doc))
    if missing:
        raise FormatError(f"{what} is missing keys: {', '.join(missing)}")


def _string_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise FormatError(f"{what} must be a list of strings")
    return list(value)


def ambiguity_to_json(value: Ambiguity):
    return INFINITE if value.is_infinite else value.value


def ambiguity_from_json(value) -> Ambiguity:
    if value == INFINITE:
        return Ambiguity.infinite()
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"ambiguity must be an integer or \"{INFINITE}\", got {value!r}")
    if value < 1:
        raise FormatError(f"ambiguity must be positive, got {value}")
    return Ambiguity(value)


# ---------------------------------------------------------------- channels


def channel_to_doc(channel: Channel) -> dict:
    return {
        "inputs": list(channel.inputs),
        "outputs": list(channel.outputs),
        "relation": {x: channel.sorted_outputs(ys) for x, ys in channel.relation},
    }


def channel_from_doc(doc) -> Channel:
    _expect_object(doc, "channel", ("inputs", "outputs", "relation"))
    inputs = _string_list(doc["inputs"], "inputs")
    outputs = _string_list(doc["outputs"], "outputs")
    relation = doc["relation"]
    if not isinstance(relation, dict):
        raise FormatError("relation must be an object")
    mapped = {}
    for key, value in relation.items():
        mapped[key] = _string_list(value, f"relation[{key!r}]")
    return make_channel(inputs, outputs, mapped)


def parse_channel(text: str) -> Channel:
    return channel_from_doc(_loads(text))


def serialize_channel(channel: Channel) -> str:
    return json.dumps(channel_to_doc(channel), indent=2) + "\n"


def load_channel(path: str) -> Channel:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_channel(text)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


# -------------------------------------------------- honest set structures


def structure_to_doc(structure: HonestSetStructure) -> dict:
    return {
        "n": structure.channel_count,
        "sets": [sorted(h) for h in structure.sets],
    }


def structure_from_doc(doc) -> HonestSetStructure:
    if isinstance(doc, dict) and "threshold" in doc:
        _expect_object(doc, "structure", ("threshold",))
        inner = doc["threshold"]
        _expect_object(inner, "threshold", ("n", "t"))
        if not isinstance(inner["n"], int) or not isinstance(inner["t"], int):
            raise FormatError("threshold n and t must be integers")
        return threshold_structure(inner["n"], inner["t"])
    _expect_object(doc, "structure", ("n", "sets"))
    if not isinstance(doc["n"], int):
        raise FormatError("structure n must be an integer")
    sets = doc["sets"]
    if not isinstance(sets, list) or any(
        not isinstance(h, list) or any(not isinstance(j, int) for j in h) for h in sets
    ):
        raise FormatError("structure sets must be lists of integers")
    return HonestSetStructure.build(doc["n"], sets)


def structure_threshold_params(doc) -> tuple[int, int] | None:
    """The (n, t) pair when the document uses the threshold shorthand."""
    if isinstance(doc, dict) and "threshold" in doc and isinstance(doc["threshold"], dict):
        inner = doc["threshold"]
        if isinstance(inner.get("n"), int) and isinstance(inner.get("t"), int):
            return inner["n"], inner["t"]
    return None


# ------------------------------------------------------ parallel instances


@dataclass(frozen=True)
class ParallelInstance:
    """Ambiguity vector plus honest set structure, ready for composition."""

    ambiguities: tuple[Ambiguity, ...]
    structure: HonestSetStructure
    threshold: tuple[int, int] | None  # (n, t) when given as a threshold shorthand


def parallel_instance_from_doc(doc) -> ParallelInstance:
    _expect_object(doc, "parallel instance", ("ambiguities", "structure"))
    raw = doc["ambiguities"]
    if not isinstance(raw, list):
        raise FormatError("ambiguities must be a list")
    ambiguities = tuple(ambiguity_from_json(v) for v in raw)
    structure = structure_from_doc(doc["structure"])
    return ParallelInstance(
        ambiguities, structure, structure_threshold_params(doc["structure"])
    )


def parse_parallel_instance(text: str) -> ParallelInstance:
    return parallel_instance_from_doc(_loads(text))


def serialize_parallel_instance(instance: ParallelInstance) -> str:
    doc = {
        "ambiguities": [ambiguity_to_json(a) for a in instance.ambiguities],
        "structure": structure_to_doc(instance.structure),
    }
    return json.dumps(doc, indent=2) + "\n"


def load_parallel_instance(path: str) -> ParallelInstance:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_parallel_instance(text)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------- networks


def network_to_doc(net: Network, adversary: PlayerAdversaryStructure) -> dict:
    edges = []
    for edge in net.edges:
        record: dict = {"id": edge.edge_id, "from": edge.src, "to": edge.dst}
        if isinstance(edge.label, Ambiguity):
            record["ambiguity"] = ambiguity_to_json(edge.label)
        elif edge.channel_ref is not None:
            record["channel"] = edge.channel_ref
        else:
            record["channel"] = channel_to_doc(edge.label)
        edges.append(record)
    if adversary.max_malicious is not None:
        adversary_doc: dict = {"threshold": adversary.max_malicious}
    else:
        adversary_doc = {"sets": [sorted(s) for s in adversary.corruptible]}
    return {
        "players": list(net.players),
        "edges": edges,
        "sender": net.sender,
        "receiver": net.receiver,
        "adversary": adversary_doc,
    }


def network_from_doc(doc, base_dir: str | None = None) -> tuple[Network, PlayerAdversaryStructure]:
    _expect_object(doc, "network", ("players", "edges", "sender", "receiver", "adversary"))
    players = _string_list(doc["players"], "players")
    if not isinstance(doc["edges"], list):
        raise FormatError("edges must be a list")
    edges = []
    for record in doc["edges"]:
        _expect_object(record, "edge", ("id", "from", "to"), ("ambiguity", "channel"))
        for key in ("id", "from", "to"):
            if not isinstance(record[key], str):
                raise FormatError(f"edge {key} must be a string")
        has_ambiguity = "ambiguity" in record
        has_channel = "channel" in record
        if has_ambiguity == has_channel:
            raise FormatError(
                f"edge {record['id']!r} needs exactly one of ambiguity or channel"
            )
        ref = None
        if has_ambiguity:
            label: Ambiguity | Channel = ambiguity_from_json(record["ambiguity"])
        else:
            pointer = record["channel"]
            if isinstance(pointer, str):
                ref = pointer
                resolved = pointer if base_dir is None else os.path.join(base_dir, pointer)
                label = load_channel(resolved)
            else:
                label = channel_from_doc(pointer)
        edges.append(Edge(record["id"], record["from"], record["to"], label, ref))
    for key in ("sender", "receiver"):
        if not isinstance(doc[key], str):
            raise FormatError(f"{key} must be a string")
    adversary_doc = doc["adversary"]
    if not isinstance(adversary_doc, dict):
        raise FormatError("adversary must be an object")
    if "threshold" in adversary_doc:
        _expect_object(adversary_doc, "adversary", ("threshold",))
        if not isinstance(adversary_doc["threshold"], int):
            raise FormatError("adversary threshold must be an integer")
        adversary = PlayerAdversaryStructure.threshold(adversary_doc["threshold"])
    elif "sets" in adversary_doc:
        _expect_object(adversary_doc, "adversary", ("sets",))
        sets = adversary_doc["sets"]
        if not isinstance(sets, list):
            raise FormatError("adversary sets must be a list")
        adversary = PlayerAdversaryStructure.explicit(
            _string_list(s, "adversary set") for s in sets
        )
    else:
        raise FormatError("adversary needs a threshold or explicit sets")
    net = Network(tuple(players), tuple(edges), doc["sender"], doc["receiver"])
    return net, adversary


def parse_network(text: str, base_dir: str | None = None):
    return network_from_doc(_loads(text), base_dir)


def serialize_network(net: Network, adversary: PlayerAdversaryStructure) -> str:
    return json.dumps(network_to_doc(net, adversary), indent=2) + "\n"


def load_network(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_network(text, base_dir=os.path.dirname(os.path.abspath(path)))
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


# -------------------------------------------------------------- list codes


def list_code_to_doc(code: ListCode, channel_ref: str | None = None) -> dict:
    return {
        "channel": channel_ref if channel_ref is not None else channel_to_doc(code.channel),
        "length": code.length,
        "list_size": code.list_size,
        "codewords": [list(w) for w in code.codewords],
    }


def list_code_from_doc(doc, base_dir: str | None = None) -> ListCode:
    _expect_object(doc, "list code", ("channel", "length", "list_size", "codewords"))
    pointer = doc["channel"]
    if isinstance(pointer, str):
        resolved = pointer if base_dir is None else os.path.join(base_dir, pointer)
        channel = load_channel(resolved)
    else:
        channel = channel_from_doc(pointer)
    if not isinstance(doc["length"], int) or not isinstance(doc["list_size"], int):
        raise FormatError("length and list_size must be integers")
    words = doc["codewords"]
    if not isinstance(words, list):
        raise FormatError("codewords must be a list")
    codewords = tuple(tuple(_string_list(w, "codeword")) for w in words)
    return ListCode(channel, doc["length"], doc["list_size"], codewords)


def parse_list_code(text: str, base_dir: str | None = None) -> ListCode:
    return list_code_from_doc(_loads(text), base_dir)


def serialize_list_code(code: ListCode, channel_ref: str | None = None) -> str:
    return json.dumps(list_code_to_doc(code, channel_ref), indent=2) + "\n"
