"""Reversibilize a co-deterministic, weakly branching 1FT.

The constructed two-way machine walks the contour of the input's run-tree.
Its states are ordered pairs of original states, each carrying an
above/below marker; a pair brackets the branch of the run-tree the head is
currently hugging.  Forward states are the mixed-marker pairs, backward
states the equal-marker pairs (diagonal equal-marker pairs excluded).
"""

from __future__ import annotations

from .errors import PreconditionError
from .machine import (BACKWARD, FORWARD, State, Transducer, Transition,
                      check_state_budget)
from .semantics import check_properties

ABOVE = "^"
BELOW = "~"


def pair_id(pm: str, p: str, qm: str, q: str) -> str:
    return f"({pm}{p},{qm}{q})"


def _is_forward_pair(pm: str, qm: str) -> bool:
    return pm != qm


def marked_states(T: Transducer) -> tuple[State, ...]:
    """All marked pairs: mixed markers forward, equal markers backward,
    equal-marker diagonals excluded.  4m^2 - 2m states for m originals."""
    ids = T.state_ids
    out: list[State] = []
    for pm, qm in ((ABOVE, BELOW), (BELOW, ABOVE)):
        for p in ids:
            for q in ids:
                out.append(State(pair_id(pm, p, qm, q), FORWARD))
    for pm in (BELOW, ABOVE):
        for p in ids:
            for q in ids:
                if p != q:
                    out.append(State(pair_id(pm, p, pm, q), BACKWARD))
    return tuple(out)


def tree_outline_with_tags(T: Transducer):
    """The construction plus a map from generated transitions to rule tags."""
    report = check_properties(T)
    if not report.codeterministic:
        raise PreconditionError("input must be co-deterministic",
                                witness=report.codet_witness)
    if not report.weakly_branching:
        raise PreconditionError("input must be weakly branching",
                                witness=report.branching_witness)
    if not report.one_way:
        raise PreconditionError("input must be one-way")

    ids = T.state_ids
    m = len(ids)
    check_state_budget(4 * m * m - 2 * m, "tree outline")
    states = marked_states(T)
    valid = {s.id for s in states}

    # Outputs: for each original transition (p, a, q), locate the unique
    # constructed transition that commits to q and give it the output.
    succ: dict[tuple[str, str], list[str]] = {}
    for t in T.transitions:
        succ.setdefault((t.source, t.letter), []).append(t.target)
    for key in succ:
        succ[key] = sorted(set(succ[key]), key=lambda s: T.order[s])

    mu: dict[tuple[str, str, str], tuple[str, ...]] = {}
    for t in T.transitions:
        sp = succ[(t.source, t.letter)]
        q = t.target
        if sp == [q]:
            key = (pair_id(ABOVE, t.source, BELOW, t.source), t.letter,
                   pair_id(ABOVE, q, BELOW, q))
        elif q == sp[0]:
            key = (pair_id(BELOW, sp[-1], BELOW, q), t.letter,
                   pair_id(ABOVE, q, BELOW, q))
        else:
            key = (pair_id(ABOVE, q, ABOVE, sp[0]), t.letter,
                   pair_id(ABOVE, q, BELOW, q))
        mu[key] = t.output

    transitions: dict[tuple[str, str, str], str] = {}

    def emit(src: str, letter: str, tgt: str, tag: str) -> None:
        if src not in valid or tgt not in valid:
            return
        transitions.setdefault((src, letter, tgt), tag)

    letters = T.letters()
    for a in letters:
        for p in ids:
            sp = succ.get((p, a), [])
            for q in ids:
                sq = succ.get((q, a), [])
                if not sp:
                    # p dies on a: swap p's marker, stand still.
                    emit(pair_id(ABOVE, p, BELOW, q), a,
                         pair_id(BELOW, p, BELOW, q), "fua")
                    emit(pair_id(BELOW, p, ABOVE, q), a,
                         pair_id(ABOVE, p, ABOVE, q), "fuw")
                elif not sq:
                    # q dies on a: swap q's marker.
                    emit(pair_id(ABOVE, p, BELOW, q), a,
                         pair_id(ABOVE, p, ABOVE, q), "flw")
                    emit(pair_id(BELOW, p, ABOVE, q), a,
                         pair_id(BELOW, p, BELOW, q), "fla")
                else:
                    # Both survive: advance into the extreme children.
                    emit(pair_id(ABOVE, p, BELOW, q), a,
                         pair_id(ABOVE, sp[-1], BELOW, sq[0]), "fualw")
                    emit(pair_id(BELOW, p, ABOVE, q), a,
                         pair_id(BELOW, sp[0], ABOVE, sq[-1]), "fuwla")
            if len(sp) >= 2:
                # p branches on a: hop between its extreme children.
                for q in ids:
                    emit(pair_id(BELOW, sp[-1], BELOW, q), a,
                         pair_id(ABOVE, sp[0], BELOW, q), "buw")
                    emit(pair_id(ABOVE, sp[0], ABOVE, q), a,
                         pair_id(BELOW, sp[-1], ABOVE, q), "bua")
                    emit(pair_id(ABOVE, q, ABOVE, sp[0]), a,
                         pair_id(ABOVE, q, BELOW, sp[-1]), "bla")
                    emit(pair_id(BELOW, q, BELOW, sp[-1]), a,
                         pair_id(BELOW, q, ABOVE, sp[0]), "blw")
        for p in ids:
            sp = succ.get((p, a), [])
            if not sp:
                continue
            for q in ids:
                sq = succ.get((q, a), [])
                if not sq:
                    continue
                # Both advanced earlier: retreat over the letter.
                emit(pair_id(BELOW, sp[0], BELOW, sq[0]), a,
                     pair_id(BELOW, p, BELOW, q), "bulw")
                emit(pair_id(ABOVE, sp[-1], ABOVE, sq[-1]), a,
                     pair_id(ABOVE, p, ABOVE, q), "bula")

    for key in mu:
        if key not in transitions:
            raise AssertionError(f"output assigned to missing transition {key}")

    built = tuple(
        Transition(src, letter, tgt, mu.get((src, letter, tgt), ()))
        for (src, letter, tgt) in transitions)
    result = Transducer(
        f"treeoutline({T.name})", T.input_alphabet, T.output_alphabet,
        states, pair_id(ABOVE, T.initial, BELOW, T.initial),
        pair_id(ABOVE, T.final, BELOW, T.final), built)
    tags = {key: transitions[key] for key in transitions}
    return result, tags


def tree_outline(T: Transducer) -> Transducer:
    """Equivalent reversible 2FT with 4m^2 - 2m states."""
    result, _ = tree_outline_with_tags(T)
    return result
