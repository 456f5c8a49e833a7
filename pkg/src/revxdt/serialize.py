"""Canonical JSON serialization for transducers and SSTs.

The canonical form uses sorted object keys, two-space indentation, sorted
alphabets, and preserves state declaration order (which carries the total
order used by the constructions).  Unknown keys are rejected so that typos
fail loudly.
"""

from __future__ import annotations

import json

from .errors import SchemaError
from .machine import BACKWARD, FORWARD, State, Transducer, Transition
from .sst import Sst, Substitution


def _require_keys(obj: dict, keys: set, path: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    extra = set(obj) - keys
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}", path)
    missing = keys - set(obj)
    if missing:
        raise SchemaError(f"missing keys {sorted(missing)}", path)


def _string_list(value, path: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise SchemaError("expected an array of strings", path)
    return value


def transducer_to_dict(T: Transducer) -> dict:
    return {
        "name": T.name,
        "input_alphabet": sorted(T.input_alphabet),
        "output_alphabet": sorted(T.output_alphabet),
        "states": [{"id": s.id, "polarity": s.polarity} for s in T.states],
        "initial": T.initial,
        "final": T.final,
        "transitions": [
            {"from": t.source, "letter": t.letter, "to": t.target,
             "output": list(t.output)}
            for t in T.transitions
        ],
    }


def serialize_transducer(T: Transducer) -> bytes:
    return (json.dumps(transducer_to_dict(T), sort_keys=True, indent=2)
            + "\n").encode("utf-8")


def transducer_from_dict(data: dict) -> Transducer:
    _require_keys(data, {"name", "input_alphabet", "output_alphabet",
                         "states", "initial", "final", "transitions"}, "$")
    if not isinstance(data["name"], str):
        raise SchemaError("expected a string", "$.name")
    in_alpha = _string_list(data["input_alphabet"], "$.input_alphabet")
    out_alpha = _string_list(data["output_alphabet"], "$.output_alphabet")
    states = []
    seen = set()
    for i, s in enumerate(data["states"]):
        path = f"$.states[{i}]"
        _require_keys(s, {"id", "polarity"}, path)
        if not isinstance(s["id"], str):
            raise SchemaError("expected a string id", path)
        if s["polarity"] not in (FORWARD, BACKWARD):
            raise SchemaError(f"polarity must be '+' or '-'", path)
        if s["id"] in seen:
            raise SchemaError(f"duplicate state id {s['id']!r}", path)
        seen.add(s["id"])
        states.append(State(s["id"], s["polarity"]))
    transitions = []
    for i, t in enumerate(data["transitions"]):
        path = f"$.transitions[{i}]"
        _require_keys(t, {"from", "letter", "to", "output"}, path)
        for k in ("from", "letter", "to"):
            if not isinstance(t[k], str):
                raise SchemaError(f"expected a string {k}", path)
        out = _string_list(t["output"], path + ".output")
        transitions.append(Transition(t["from"], t["letter"], t["to"],
                                      tuple(out)))
    if not isinstance(data["initial"], str) or not isinstance(data["final"], str):
        raise SchemaError("initial/final must be strings", "$")
    return Transducer(data["name"], frozenset(in_alpha), frozenset(out_alpha),
                      tuple(states), data["initial"], data["final"],
                      tuple(transitions))


def parse_transducer(raw: bytes | str) -> Transducer:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}") from e
    return transducer_from_dict(data)


def sst_to_dict(S: Sst) -> dict:
    return {
        "name": S.name,
        "input_alphabet": sorted(S.input_alphabet),
        "output_alphabet": sorted(S.output_alphabet),
        "states": list(S.states),
        "initial": S.initial,
        "final": S.final,
        "variables": list(S.variables),
        "final_variable": S.final_variable,
        "transitions": [
            {"from": src, "letter": letter, "to": tgt,
             "tau": {X: S.tau[(src, letter, tgt)].render(X)
                     for X in S.variables}}
            for (src, letter, tgt) in S.transitions
        ],
    }


def serialize_sst(S: Sst) -> bytes:
    return (json.dumps(sst_to_dict(S), sort_keys=True, indent=2)
            + "\n").encode("utf-8")


def sst_from_dict(data: dict) -> Sst:
    _require_keys(data, {"name", "input_alphabet", "output_alphabet",
                         "states", "initial", "final", "variables",
                         "final_variable", "transitions"}, "$")
    states = _string_list(data["states"], "$.states")
    variables = _string_list(data["variables"], "$.variables")
    transitions = []
    for i, t in enumerate(data["transitions"]):
        path = f"$.transitions[{i}]"
        _require_keys(t, {"from", "letter", "to", "tau"}, path)
        if not isinstance(t["tau"], dict):
            raise SchemaError("tau must be an object", path)
        extra = set(t["tau"]) - set(variables)
        if extra:
            raise SchemaError(f"unknown variables {sorted(extra)}", path + ".tau")
        sub = Substitution.parse(variables, t["tau"])
        transitions.append((t["from"], t["letter"], t["to"], sub))
    return Sst.build(
        data["name"], data["input_alphabet"], data["output_alphabet"],
        states, data["initial"], data["final"], variables,
        data["final_variable"], transitions)


def parse_sst(raw: bytes | str) -> Sst:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}") from e
    return sst_from_dict(data)
