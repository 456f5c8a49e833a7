"""Data model for two-way finite-state transducers.

Letters are arbitrary non-empty strings; the reserved tokens BEGIN and END
play the role of the left/right endmarkers and are injected around every
input word before a machine runs on it.  Each state carries a polarity:
forward states read the letter to their right and backward states the letter
to their left.  The declaration order of the states defines the total order
used by the constructions that need one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ReservedTokenError, StateBudgetError, ValidationError

BEGIN = "__begin__"
END = "__end__"
RESERVED = (BEGIN, END)

FORWARD = "+"
BACKWARD = "-"

DEFAULT_MAX_STATES = 10**6


def max_states_cap() -> int:
    """Configured cap on constructed state sets (env REVXDT_MAX_STATES)."""
    raw = os.environ.get("REVXDT_MAX_STATES", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_STATES
    except ValueError:
        return DEFAULT_MAX_STATES


def check_state_budget(count: int, what: str) -> None:
    cap = max_states_cap()
    if count > cap:
        raise StateBudgetError(f"{what} would need {count} states (cap {cap})")


def word(text: str) -> tuple[str, ...]:
    """Split a plain string into a word of single-character letters."""
    return tuple(text)


def wrap_input(u: Sequence[str]) -> tuple[str, ...]:
    """Surround a word with the endmarkers, refusing reserved tokens."""
    u = tuple(u)
    for a in u:
        if a in RESERVED:
            raise ReservedTokenError(f"reserved token {a!r} in input word")
    return (BEGIN,) + u + (END,)


@dataclass(frozen=True)
class State:
    id: str
    polarity: str = FORWARD

    @property
    def forward(self) -> bool:
        return self.polarity == FORWARD


@dataclass(frozen=True)
class Transition:
    source: str
    letter: str
    target: str
    output: tuple[str, ...] = ()


def _as_output(v) -> tuple[str, ...]:
    if isinstance(v, str):
        return tuple(v)
    return tuple(v)


@dataclass(frozen=True)
class Transducer:
    """A two-way finite-state transducer (one-way as the special case)."""

    name: str
    input_alphabet: frozenset[str]
    output_alphabet: frozenset[str]
    states: tuple[State, ...]
    initial: str
    final: str
    transitions: tuple[Transition, ...]
    # Derived lookup tables, filled in __post_init__ (not compared/hashed).
    polarity: dict = field(default_factory=dict, compare=False, repr=False)
    order: dict = field(default_factory=dict, compare=False, repr=False)
    by_source_letter: dict = field(default_factory=dict, compare=False, repr=False)
    by_letter_target: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        pol = {s.id: s.polarity for s in self.states}
        order = {s.id: i for i, s in enumerate(self.states)}
        by_sl: dict = {}
        by_lt: dict = {}
        for t in self.transitions:
            by_sl.setdefault((t.source, t.letter), []).append(t)
            by_lt.setdefault((t.letter, t.target), []).append(t)
        object.__setattr__(self, "polarity", pol)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "by_source_letter", {k: tuple(v) for k, v in by_sl.items()})
        object.__setattr__(self, "by_letter_target", {k: tuple(v) for k, v in by_lt.items()})

    @classmethod
    def build(cls, name, input_alphabet, output_alphabet, states, initial, final,
              transitions) -> "Transducer":
        """Convenience constructor accepting loose argument shapes.

        States may be given as ids (forward by default) or (id, polarity)
        pairs; transition outputs may be plain strings (split per character)
        or letter sequences.
        """
        sts = []
        for s in states:
            if isinstance(s, State):
                sts.append(s)
            elif isinstance(s, str):
                sts.append(State(s))
            else:
                sts.append(State(s[0], s[1]))
        trs = []
        for t in transitions:
            if isinstance(t, Transition):
                trs.append(t)
            else:
                src, letter, tgt, *rest = t
                out = _as_output(rest[0]) if rest else ()
                trs.append(Transition(src, letter, tgt, out))
        return cls(name, frozenset(input_alphabet), frozenset(output_alphabet),
                   tuple(sts), initial, final, tuple(trs))

    def is_forward(self, state_id: str) -> bool:
        return self.polarity[state_id] == FORWARD

    @property
    def state_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.states)

    def state_count(self) -> int:
        return len(self.states)

    def letters(self) -> tuple[str, ...]:
        """The endmarked input alphabet, endmarkers first, rest sorted."""
        return (BEGIN, END) + tuple(sorted(self.input_alphabet))


def validate(T: Transducer) -> "Diagnostics":
    """Structural checks; endmarker-convention violations are warnings only."""
    errors: list[str] = []
    warnings: list[str] = []
    ids = [s.id for s in T.states]
    if len(set(ids)) != len(ids):
        errors.append("duplicate state ids")
    known = set(ids)
    for a in T.input_alphabet | T.output_alphabet:
        if a in RESERVED:
            errors.append(f"reserved token {a!r} in alphabet")
        if not a:
            errors.append("empty letter in alphabet")
    if T.initial not in known:
        errors.append(f"unknown initial state {T.initial!r}")
    if T.final not in known:
        errors.append(f"unknown final state {T.final!r}")
    if T.initial in known and not T.is_forward(T.initial):
        errors.append("initial state must be forward")
    if T.final in known and not T.is_forward(T.final):
        errors.append("final state must be forward")
    allowed = T.input_alphabet | {BEGIN, END}
    seen_triples: dict = {}
    for t in T.transitions:
        if t.source not in known:
            errors.append(f"unknown state {t.source!r} in transition")
        if t.target not in known:
            errors.append(f"unknown state {t.target!r} in transition")
        if t.letter not in allowed:
            errors.append(f"letter {t.letter!r} not in alphabet")
        for b in t.output:
            if b not in T.output_alphabet:
                errors.append(f"output letter {b!r} not in alphabet")
        triple = (t.source, t.letter, t.target)
        if triple in seen_triples and seen_triples[triple] != t.output:
            errors.append(f"two outputs for transition {triple}")
        seen_triples[triple] = t.output
    # Convention: the initial state only reads BEGIN, the final state is only
    # entered on END.  The letter-multiplier machine deliberately breaks this,
    # so it is a warning.
    for t in T.transitions:
        if t.source == T.initial and t.letter != BEGIN:
            warnings.append(f"initial state reads {t.letter!r}")
            break
    for t in T.transitions:
        if t.target == T.final and t.letter != END:
            warnings.append(f"final state entered on {t.letter!r}")
            break
    return Diagnostics(tuple(errors), tuple(warnings))


@dataclass(frozen=True)
class Diagnostics:
    errors: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


def require_valid(T: Transducer) -> None:
    diag = validate(T)
    if not diag.ok:
        raise ValidationError("; ".join(diag.errors))


def trim(T: Transducer) -> Transducer:
    """Drop states not on any initial-to-final path of the transition graph.

    Movement is ignored, so this over-approximates configuration
    reachability; it can only delete states/transitions, which preserves
    determinism and co-determinism.
    """
    fwd_adj: dict[str, set[str]] = {}
    bwd_adj: dict[str, set[str]] = {}
    for t in T.transitions:
        fwd_adj.setdefault(t.source, set()).add(t.target)
        bwd_adj.setdefault(t.target, set()).add(t.source)

    def reach(start: str, adj: dict[str, set[str]]) -> set[str]:
        seen = {start}
        stack = [start]
        while stack:
            for nxt in adj.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    useful = reach(T.initial, fwd_adj) & reach(T.final, bwd_adj)
    useful |= {T.initial, T.final}
    states = tuple(s for s in T.states if s.id in useful)
    transitions = tuple(t for t in T.transitions
                        if t.source in useful and t.target in useful)
    return Transducer(T.name, T.input_alphabet, T.output_alphabet, states,
                      T.initial, T.final, transitions)


def same_structure(T1: Transducer, T2: Transducer) -> bool:
    """Structural equality up to transition order."""
    return (T1.input_alphabet == T2.input_alphabet
            and T1.output_alphabet == T2.output_alphabet
            and T1.states == T2.states
            and T1.initial == T2.initial
            and T1.final == T2.final
            and set(T1.transitions) == set(T2.transitions))
