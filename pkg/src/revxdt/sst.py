"""Copyless streaming string transducers and their conversion to
reversible two-way transducers.

An SST runs a deterministic one-way automaton and updates write-only
variables through substitutions; the output is the value of a designated
variable at the end.  The conversion strips the automaton to a 1FT that
emits the substitution taken at each step, reversibilizes it, and composes
it with a navigator that walks the variable flow backward and forward to
spell out the final value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .compose import compose_reversible
from .errors import PreconditionError, ValidationError
from .machine import (BACKWARD, BEGIN, END, FORWARD, State, Transducer,
                      Transition, wrap_input)
from .oneway import det1ft_to_reversible
from .semantics import check_properties

VAR = "var"
LIT = "lit"

_IMAGE_RE = re.compile(r"\$\{([^}]+)\}")


@dataclass(frozen=True)
class Substitution:
    """Maps each variable to a word over variables and output letters.

    Images are tuples of (kind, value) segments with kind "var" or "lit";
    literal segments are single output letters.
    """

    variables: tuple[str, ...]
    images: tuple[tuple[tuple[str, str], ...], ...]  # aligned with variables

    def image(self, X: str):
        return self.images[self.variables.index(X)]

    @classmethod
    def identity(cls, variables) -> "Substitution":
        variables = tuple(variables)
        return cls(variables, tuple(((VAR, X),) for X in variables))

    @classmethod
    def parse(cls, variables, mapping: dict) -> "Substitution":
        """Images given as strings with ${X} escapes for variables."""
        variables = tuple(variables)
        images = []
        for X in variables:
            text = mapping.get(X, "")
            segs = []
            pos = 0
            for m in _IMAGE_RE.finditer(text):
                for ch in text[pos:m.start()]:
                    segs.append((LIT, ch))
                name = m.group(1)
                if name not in variables:
                    raise ValidationError(f"unknown variable {name!r} in image")
                segs.append((VAR, name))
                pos = m.end()
            for ch in text[pos:]:
                segs.append((LIT, ch))
            images.append(tuple(segs))
        return cls(variables, tuple(images))

    def render(self, X: str) -> str:
        return "".join("${%s}" % v if kind == VAR else v
                       for kind, v in self.image(X))

    def token(self) -> str:
        """Canonical string form, usable as a structured letter."""
        parts = []
        for X in self.variables:
            body = "".join("${%s}" % v if kind == VAR else f"'{v}'"
                           for kind, v in self.image(X))
            parts.append(f"{X}:={body}")
        return "{" + ";".join(parts) + "}"


def compose_substitutions(s2: Substitution, s1: Substitution) -> Substitution:
    """Each X maps to s1(X) with its variables expanded through s2."""
    if s2.variables != s1.variables:
        raise ValidationError("substitutions over different variable sets")
    images = []
    for X in s1.variables:
        segs = []
        for kind, v in s1.image(X):
            if kind == LIT:
                segs.append((kind, v))
            else:
                segs.extend(s2.image(v))
        images.append(tuple(segs))
    return Substitution(s1.variables, tuple(images))


def erase_variables(sub: Substitution, X: str) -> tuple[str, ...]:
    """The letters of sub(X) once every variable is erased."""
    return tuple(v for kind, v in sub.image(X) if kind == LIT)


def substitution_copyless(sub: Substitution):
    """None if copyless, else a witness message."""
    counts = {X: 0 for X in sub.variables}
    for X in sub.variables:
        per_image = {}
        for kind, v in sub.image(X):
            if kind == VAR:
                per_image[v] = per_image.get(v, 0) + 1
                counts[v] += 1
        for v, n in per_image.items():
            if n > 1:
                return f"variable {v} used {n} times in image of {X}"
    for v, n in counts.items():
        if n > 1:
            return f"variable {v} used in {n} images"
    return None


@dataclass(frozen=True)
class Sst:
    name: str
    input_alphabet: frozenset[str]
    output_alphabet: frozenset[str]
    states: tuple[str, ...]
    initial: str
    final: str
    variables: tuple[str, ...]
    final_variable: str
    transitions: tuple[tuple[str, str, str], ...]
    tau: dict = field(compare=False)
    delta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        delta = {}
        for (src, letter, tgt) in self.transitions:
            if (src, letter) in delta:
                raise ValidationError(
                    f"underlying automaton not deterministic at ({src},{letter})")
            delta[(src, letter)] = tgt
        object.__setattr__(self, "delta", delta)

    @classmethod
    def build(cls, name, input_alphabet, output_alphabet, states, initial,
              final, variables, final_variable, transitions) -> "Sst":
        triples = []
        tau = {}
        for (src, letter, tgt, sub) in transitions:
            triples.append((src, letter, tgt))
            tau[(src, letter, tgt)] = sub
        return cls(name, frozenset(input_alphabet), frozenset(output_alphabet),
                   tuple(states), initial, final, tuple(variables),
                   final_variable, tuple(triples), tau)


def check_copyless(S: Sst):
    """None if every transition substitution is copyless, else a witness.

    Copylessness is closed under composition, so per-transition checking
    covers every run."""
    for triple in S.transitions:
        witness = substitution_copyless(S.tau[triple])
        if witness:
            return (triple, witness)
    return None


def run_sst(S: Sst, u):
    """The transition sequence of the underlying automaton on ⊢u⊣, or None."""
    w = wrap_input(u)
    cur = S.initial
    taken = []
    for a in w:
        tgt = S.delta.get((cur, a))
        if tgt is None:
            return None
        taken.append((cur, a, tgt))
        cur = tgt
    return taken if cur == S.final else None


def eval_sst(S: Sst, u):
    """Output word for u, or None when the automaton rejects."""
    taken = run_sst(S, u)
    if taken is None:
        return None
    acc = Substitution.identity(S.variables)
    for triple in taken:
        acc = compose_substitutions(acc, S.tau[triple])
    return erase_variables(acc, S.final_variable)


def strip_sst(S: Sst) -> Transducer:
    """Deterministic 1FT emitting the substitution letter of each step."""
    if check_copyless(S):
        raise PreconditionError("SST is not copyless",
                                witness=check_copyless(S))
    tokens = {}
    transitions = []
    for (src, letter, tgt) in S.transitions:
        tok = S.tau[(src, letter, tgt)].token()
        tokens[tok] = S.tau[(src, letter, tgt)]
        transitions.append(Transition(src, letter, tgt, (tok,)))
    return Transducer(
        f"strip({S.name})", S.input_alphabet, frozenset(tokens),
        tuple(State(s, FORWARD) for s in S.states), S.initial, S.final,
        tuple(transitions))


def _image_var_positions(image):
    return [i for i, (kind, _) in enumerate(image) if kind == VAR]


def _lits_between(image, lo: int, hi: int) -> tuple[str, ...]:
    return tuple(v for kind, v in image[lo:hi] if kind == LIT)


def build_navigator(S: Sst) -> Transducer:
    """Reversible 2FT over substitution letters spelling out the final
    variable's value: 2m+2 states for m variables.

    Descent states X^i (backward) search for where X's value starts;
    ascent states X^o (forward) emit the letters appended to X at each
    step and hand over to the variable glued after X."""
    if check_copyless(S):
        raise PreconditionError("SST is not copyless",
                                witness=check_copyless(S))
    subs = {}
    for triple in S.transitions:
        sub = S.tau[triple]
        subs[sub.token()] = sub
    m_in = [f"{X}^i" for X in S.variables]
    m_out = [f"{X}^o" for X in S.variables]
    states = [State("init", FORWARD)]
    states += [State(s, BACKWARD) for s in m_in]
    states += [State(s, FORWARD) for s in m_out]
    states.append(State("fin", FORWARD))
    O = S.final_variable
    transitions: list[Transition] = []
    for tok, sub in subs.items():
        transitions.append(Transition("init", tok, "init"))
        for X in S.variables:
            image = sub.image(X)
            vars_at = _image_var_positions(image)
            if not vars_at:
                # X is rebuilt from letters only: turn around and emit them.
                transitions.append(Transition(
                    f"{X}^i", tok, f"{X}^o", _lits_between(image, 0, len(image))))
            else:
                first = vars_at[0]
                transitions.append(Transition(
                    f"{X}^i", tok, f"{image[first][1]}^i",
                    _lits_between(image, 0, first)))
                for k in range(len(vars_at) - 1):
                    lo, hi = vars_at[k], vars_at[k + 1]
                    transitions.append(Transition(
                        f"{image[lo][1]}^o", tok, f"{image[hi][1]}^i",
                        _lits_between(image, lo + 1, hi)))
                last = vars_at[-1]
                transitions.append(Transition(
                    f"{image[last][1]}^o", tok, f"{X}^o",
                    _lits_between(image, last + 1, len(image))))
    transitions.append(Transition("init", BEGIN, "init"))
    transitions.append(Transition("init", END, f"{O}^i"))
    transitions.append(Transition(f"{O}^o", END, "fin"))
    for X in S.variables:
        # A variable still empty at the left edge turns around there.
        transitions.append(Transition(f"{X}^i", BEGIN, f"{X}^o"))
    return Transducer(
        f"navigator({S.name})", frozenset(subs), S.output_alphabet,
        tuple(states), "init", "fin", tuple(transitions))


def sst_to_reversible(S: Sst) -> Transducer:
    """Reversible 2FT equivalent to the SST."""
    return compose_reversible(det1ft_to_reversible(strip_sst(S)),
                              build_navigator(S))
