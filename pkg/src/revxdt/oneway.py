"""Reversibilization pipelines for one-way transducers.

A co-deterministic machine is handled by tagging every input letter with
each possible target state (the letter multiplier), running a
desynchronized weakly branching copy of the machine over the tagged
letters, and reversibilizing that copy with the tree-outline construction.
A deterministic machine is reversed (making it co-deterministic), piped
through the same construction, and sandwiched between two mirror machines.
"""

from __future__ import annotations

from .compose import compose_reversible
from .errors import PreconditionError
from .machine import (BACKWARD, BEGIN, END, FORWARD, State, Transducer,
                      Transition)
from .semantics import check_properties
from .tree_outline import tree_outline

RESET = "r"


def tagged_letter(a: str, q: str) -> str:
    return f"({a},{q})"


def build_mult(T: Transducer) -> Transducer:
    """Single-state reversible 1FT expanding each letter a (endmarkers
    included) into the block (a,q_1)...(a,q_n) r over T's state order."""
    ids = T.state_ids
    out_alphabet = {RESET}
    transitions = []
    for a in T.letters():
        block = tuple(tagged_letter(a, q) for q in ids) + (RESET,)
        out_alphabet.update(block[:-1])
        transitions.append(Transition("id", a, "id", block))
    return Transducer(
        f"mult({T.name})", T.input_alphabet, frozenset(out_alphabet),
        (State("id", FORWARD),), "id", "id", tuple(transitions))


def build_desync(T: Transducer) -> Transducer:
    """Weakly branching co-deterministic copy of T over tagged letters.

    Each state is doubled with a phase flag: phase 0 may idle past tagged
    letters or fire the matching original transition (entering phase 1);
    phase 1 idles until the reset letter closes the block.  The endmarker
    transitions at the desync level are self-loops on the initial and final
    states.
    """
    report = check_properties(T)
    if not report.codeterministic:
        raise PreconditionError("desync needs a co-deterministic machine",
                                witness=report.codet_witness)
    if not report.one_way:
        raise PreconditionError("desync needs a one-way machine")
    ids = T.state_ids

    def st(p: str, phase: int) -> str:
        return f"({p},{phase})"

    states = tuple(State(st(p, phase), FORWARD)
                   for p in ids for phase in (0, 1))
    tagged = [tagged_letter(a, q) for a in T.letters() for q in ids]
    in_alphabet = frozenset(tagged) | {RESET}
    transitions: list[Transition] = []
    for t in T.transitions:
        transitions.append(Transition(st(t.source, 0),
                                      tagged_letter(t.letter, t.target),
                                      st(t.target, 1), t.output))
    for a in T.letters():
        for q in ids:
            letter = tagged_letter(a, q)
            for p in ids:
                transitions.append(Transition(st(p, 0), letter, st(p, 0)))
                if p != q:
                    transitions.append(Transition(st(p, 1), letter, st(p, 1)))
    for p in ids:
        transitions.append(Transition(st(p, 1), RESET, st(p, 0)))
    transitions.append(Transition(st(T.initial, 0), BEGIN, st(T.initial, 0)))
    transitions.append(Transition(st(T.final, 0), END, st(T.final, 0)))
    return Transducer(
        f"desync({T.name})", in_alphabet, T.output_alphabet, states,
        st(T.initial, 0), st(T.final, 0), tuple(transitions))


def codet1ft_to_reversible(T: Transducer) -> Transducer:
    """Reversible 2FT equivalent to a co-deterministic 1FT."""
    return compose_reversible(build_mult(T), tree_outline(build_desync(T)))


def codet_pipeline_state_count(n: int) -> int:
    """Raw state count of codet1ft_to_reversible for an n-state input."""
    m = 2 * n
    return 4 * m * m - 2 * m


def reverse_1ft(T: Transducer) -> Transducer:
    """Reverse every transition (and its output word), swap the endmarker
    letters and the initial/final states."""
    if not check_properties(T).one_way:
        raise PreconditionError("reversal is defined for one-way machines")
    swap = {BEGIN: END, END: BEGIN}
    transitions = tuple(
        Transition(t.target, swap.get(t.letter, t.letter), t.source,
                   tuple(reversed(t.output)))
        for t in T.transitions)
    return Transducer(
        f"reverse({T.name})", T.input_alphabet, T.output_alphabet, T.states,
        T.final, T.initial, transitions)


def build_mirror(alphabet) -> Transducer:
    """Three-state reversible 2FT computing u -> reverse(u)."""
    letters = sorted(alphabet)
    if not letters:
        raise PreconditionError("mirror needs a nonempty alphabet")
    transitions = [Transition("sweep", BEGIN, "sweep")]
    for a in letters:
        transitions.append(Transition("sweep", a, "sweep"))
    transitions.append(Transition("sweep", END, "back"))
    for a in letters:
        transitions.append(Transition("back", a, "back", (a,)))
    transitions.append(Transition("back", BEGIN, "exit"))
    for a in letters:
        transitions.append(Transition("exit", a, "exit"))
    transitions.append(Transition("exit", END, "exit"))
    return Transducer(
        "mirror", frozenset(letters), frozenset(letters),
        (State("sweep", FORWARD), State("back", BACKWARD),
         State("exit", FORWARD)),
        "sweep", "exit", tuple(transitions))


def det1ft_to_reversible(T: Transducer) -> Transducer:
    """Reversible 2FT equivalent to a deterministic 1FT.

    Mirrors the input, runs the reversibilized reversed machine, and
    mirrors the output back."""
    report = check_properties(T)
    if not report.deterministic:
        raise PreconditionError("pipeline needs a deterministic machine",
                                witness=report.det_witness)
    if not report.one_way:
        raise PreconditionError("pipeline needs a one-way machine")
    mid = codet1ft_to_reversible(reverse_1ft(T))
    inner = compose_reversible(mid, build_mirror(T.output_alphabet))
    return compose_reversible(build_mirror(T.input_alphabet), inner)


def det_pipeline_state_count(n: int) -> int:
    """Raw state count of det1ft_to_reversible for an n-state input."""
    return 9 * codet_pipeline_state_count(n)


def reversibilize(T: Transducer) -> Transducer:
    """Pick the pipeline matching T's properties."""
    report = check_properties(T)
    if not report.one_way:
        raise PreconditionError("reversibilize handles one-way machines only")
    if report.deterministic:
        return det1ft_to_reversible(T)
    if report.codeterministic:
        return codet1ft_to_reversible(T)
    raise PreconditionError(
        "machine is neither deterministic nor co-deterministic")
