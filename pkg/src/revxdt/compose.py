"""Composition of reversible two-way transducers.

The product machine pairs a state of the first machine with a state of the
second; each transition of the first machine contributes its production as a
fragment over which the second machine runs end to end.  The four transition
shapes follow the classification of those end-to-end runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlphabetMismatchError, PreconditionError
from .machine import (BACKWARD, BEGIN, END, FORWARD, State, Transducer,
                      Transition, check_state_budget)
from .semantics import check_properties, simulate_in_fragment

LEFT_TO_RIGHT = "left_to_right"
LEFT_TO_LEFT = "left_to_left"
RIGHT_TO_RIGHT = "right_to_right"
RIGHT_TO_LEFT = "right_to_left"


@dataclass(frozen=True)
class EndToEndRun:
    entry: str
    word: tuple[str, ...]
    exit: str
    kind: str
    production: tuple[str, ...]


def end_to_end_runs(T2: Transducer, v) -> tuple[EndToEndRun, ...]:
    """Maximal runs of T2 inside the bare fragment v.

    Forward states enter at the left edge, backward states at the right
    edge; entries that loop or get stuck inside v yield no run.  For the
    empty fragment every state crosses in place.
    """
    if not check_properties(T2).reversible:
        raise PreconditionError("end-to-end simulation needs a reversible machine")
    v = tuple(v)
    runs: list[EndToEndRun] = []
    if not v:
        for s in T2.states:
            kind = LEFT_TO_RIGHT if s.polarity == FORWARD else RIGHT_TO_LEFT
            runs.append(EndToEndRun(s.id, v, s.id, kind, ()))
        return tuple(runs)
    for s in T2.states:
        from_left = s.polarity == FORWARD
        res = simulate_in_fragment(T2, v, s.id, from_left=from_left)
        if res is None:
            continue
        side, exit_state, production = res
        if from_left:
            kind = LEFT_TO_RIGHT if side == "right" else LEFT_TO_LEFT
        else:
            kind = RIGHT_TO_LEFT if side == "left" else RIGHT_TO_RIGHT
        runs.append(EndToEndRun(s.id, v, exit_state, kind, production))
    return tuple(runs)


def _pair(q: str, p: str) -> str:
    return f"({q};{p})"


def compose_reversible(T1: Transducer, T2: Transducer) -> Transducer:
    """Product machine realizing T2 after T1, reversible, n1*n2 states.

    The second machine consumes its own endmarkers around the concatenation
    of T1's productions: the fragment of a begin-marker transition with a
    forward source is prefixed with the begin marker, and the fragment of an
    end-marker transition with a forward target is suffixed with the end
    marker, so T2 sees each of its endmarkers exactly once per accepting
    run.
    """
    for label, T in (("first", T1), ("second", T2)):
        if not check_properties(T).reversible:
            raise PreconditionError(f"{label} machine is not reversible")
    if not T1.output_alphabet <= (T2.input_alphabet):
        raise AlphabetMismatchError(
            "first machine's output alphabet is not covered by the second's input")
    check_state_budget(T1.state_count() * T2.state_count(), "composition")

    states: list[State] = []
    for s1 in T1.states:
        for s2 in T2.states:
            pol = FORWARD if s1.polarity == s2.polarity else BACKWARD
            states.append(State(_pair(s1.id, s2.id), pol))

    runs_cache: dict[tuple[str, ...], tuple[EndToEndRun, ...]] = {}

    def runs_over(frag: tuple[str, ...]) -> tuple[EndToEndRun, ...]:
        if frag not in runs_cache:
            runs_cache[frag] = end_to_end_runs(T2, frag)
        return runs_cache[frag]

    transitions: dict[tuple[str, str, str], tuple[str, ...]] = {}
    for t in T1.transitions:
        frag = t.output
        if t.letter == BEGIN and T1.is_forward(t.source):
            frag = (BEGIN,) + frag
        if t.letter == END and T1.is_forward(t.target):
            frag = frag + (END,)
        q, q2 = t.source, t.target
        for rho in runs_over(frag):
            p, p2 = rho.entry, rho.exit
            if rho.kind == LEFT_TO_RIGHT:
                key = (_pair(q, p), t.letter, _pair(q2, p2))
            elif rho.kind == LEFT_TO_LEFT:
                key = (_pair(q, p), t.letter, _pair(q, p2))
            elif rho.kind == RIGHT_TO_RIGHT:
                key = (_pair(q2, p), t.letter, _pair(q2, p2))
            else:
                key = (_pair(q2, p), t.letter, _pair(q, p2))
            transitions[key] = rho.production

    built = tuple(Transition(src, letter, tgt, out)
                  for (src, letter, tgt), out in transitions.items())
    return Transducer(
        f"({T1.name});({T2.name})", T1.input_alphabet, T2.output_alphabet,
        tuple(states), _pair(T1.initial, T2.initial),
        _pair(T1.final, T2.final), built)
