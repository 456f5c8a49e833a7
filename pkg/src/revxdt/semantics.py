"""Execution semantics over endmarked words.

A configuration is a (state, boundary position) pair with positions ranging
over 0..|w|.  A forward state at position i reads w[i]; a backward state at
position i reads w[i-1].  Movement follows the polarity of the target state:
forward-to-forward advances the head, backward-to-backward retreats, and a
polarity change keeps the position (the head turns in place).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import PreconditionError
from .machine import BACKWARD, FORWARD, Transducer, Transition, wrap_input


class Configuration(NamedTuple):
    state: str
    position: int


def read_letter(T: Transducer, w: Sequence[str], c: Configuration) -> str | None:
    """The letter the head currently faces, or None at the outer boundary."""
    if T.is_forward(c.state):
        return w[c.position] if c.position < len(w) else None
    return w[c.position - 1] if c.position > 0 else None


def step_position(T: Transducer, c: Configuration, t: Transition) -> int:
    src_fwd = T.is_forward(t.source)
    tgt_fwd = T.is_forward(t.target)
    if src_fwd and tgt_fwd:
        return c.position + 1
    if not src_fwd and not tgt_fwd:
        return c.position - 1
    return c.position


def successors(T: Transducer, w: Sequence[str], c: Configuration
               ) -> list[tuple[Configuration, Transition]]:
    a = read_letter(T, w, c)
    if a is None:
        return []
    out = []
    for t in T.by_source_letter.get((c.state, a), ()):
        out.append((Configuration(t.target, step_position(T, c, t)), t))
    return out


def predecessors(T: Transducer, w: Sequence[str], c: Configuration
                 ) -> list[tuple[Configuration, Transition]]:
    """Invert the four movement rules: all (c', t) with step(c', t) = c."""
    out = []
    fwd = T.is_forward(c.state)
    for t in T.transitions:
        if t.target != c.state:
            continue
        src_fwd = T.is_forward(t.source)
        if src_fwd and fwd:
            prev = Configuration(t.source, c.position - 1)
        elif not src_fwd and not fwd:
            prev = Configuration(t.source, c.position + 1)
        else:
            prev = Configuration(t.source, c.position)
        if 0 <= prev.position <= len(w) and read_letter(T, w, prev) == t.letter:
            out.append((prev, t))
    return out


@dataclass(frozen=True)
class Run:
    """A run on an endmarked word: steps plus the configuration reached."""

    word: tuple[str, ...]
    steps: tuple[tuple[Configuration, Transition], ...]
    final: Configuration

    @property
    def output(self) -> tuple[str, ...]:
        out: list[str] = []
        for _, t in self.steps:
            out.extend(t.output)
        return tuple(out)

    def configurations(self) -> tuple[Configuration, ...]:
        return tuple(c for c, _ in self.steps) + (self.final,)

    @property
    def is_simple(self) -> bool:
        confs = self.configurations()
        return len(set(confs)) == len(confs)

    def slice(self, T: Transducer, boundary: int) -> tuple[str, ...]:
        """States crossing the given boundary, in temporal order."""
        return tuple(c.state for c in self.configurations()
                     if c.position == boundary)


@dataclass(frozen=True)
class RunOutcome:
    kind: str  # "accepted" | "rejected" | "diverges"
    output: tuple[str, ...] | None = None
    run: Run | None = None


def run_deterministic(T: Transducer, u: Sequence[str]) -> RunOutcome:
    """Step the unique run of a deterministic machine on ⊢u⊣."""
    report = check_properties(T)
    if not report.deterministic:
        raise PreconditionError("machine is not deterministic",
                                witness=report.det_witness)
    w = wrap_input(u)
    cur = Configuration(T.initial, 0)
    steps: list[tuple[Configuration, Transition]] = []
    seen = {cur}
    accept = Configuration(T.final, len(w))
    while True:
        if cur == accept:
            run = Run(w, tuple(steps), cur)
            return RunOutcome("accepted", run.output, run)
        nxt = successors(T, w, cur)
        if not nxt:
            return RunOutcome("rejected")
        (cur2, t), = nxt
        steps.append((cur, t))
        cur = cur2
        if cur in seen:
            return RunOutcome("diverges")
        seen.add(cur)


@dataclass(frozen=True)
class PropertyReport:
    deterministic: bool
    codeterministic: bool
    weakly_branching: bool
    one_way: bool
    det_witness: tuple[Transition, Transition] | None = None
    codet_witness: tuple[Transition, Transition] | None = None
    branching_witness: tuple | None = None

    @property
    def reversible(self) -> bool:
        return self.deterministic and self.codeterministic


def check_properties(T: Transducer) -> PropertyReport:
    """Scan the transition table for the structural machine properties.

    Determinism counts distinct target states per (state, letter) and
    co-determinism distinct sources per (letter, target).  Weak branching is
    checked per letter over the full endmarked alphabet: at most one state
    branches on the letter, into exactly two distinct successors.  The
    report is cached on the (immutable) machine.
    """
    cached = getattr(T, "_property_report", None)
    if cached is not None:
        return cached
    det_witness = None
    for _, ts in T.by_source_letter.items():
        targets = {}
        for t in ts:
            targets[t.target] = t
        if len(targets) > 1 and det_witness is None:
            pair = list(targets.values())[:2]
            det_witness = (pair[0], pair[1])
    codet_witness = None
    for _, ts in T.by_letter_target.items():
        sources = {}
        for t in ts:
            sources[t.source] = t
        if len(sources) > 1 and codet_witness is None:
            pair = list(sources.values())[:2]
            codet_witness = (pair[0], pair[1])
    branching_witness = None
    per_letter: dict[str, list] = {}
    for (src, letter), ts in T.by_source_letter.items():
        targets = sorted({t.target for t in ts})
        if len(targets) > 1:
            per_letter.setdefault(letter, []).append((src, tuple(targets)))
    for letter, branchers in sorted(per_letter.items()):
        if len(branchers) > 1 or any(len(tg) != 2 for _, tg in branchers):
            branching_witness = (letter, tuple(branchers))
            break
    one_way = all(s.polarity == FORWARD for s in T.states)
    report = PropertyReport(
        deterministic=det_witness is None,
        codeterministic=codet_witness is None,
        weakly_branching=branching_witness is None,
        one_way=one_way,
        det_witness=det_witness,
        codet_witness=codet_witness,
        branching_witness=branching_witness,
    )
    object.__setattr__(T, "_property_report", report)
    return report


def simulate_in_fragment(T: Transducer, frag: Sequence[str], state: str,
                         from_left: bool = True):
    """Deterministically run inside a bare letter fragment until the head
    exits at either edge.

    Returns (side, exit_state, production) where side is "left"/"right", or
    None when the run gets stuck or loops inside the fragment.  The machine
    must have at most one applicable transition at every step.
    """
    if from_left:
        assert T.is_forward(state), "left entry needs a forward state"
        cur = Configuration(state, 0)
    else:
        assert not T.is_forward(state), "right entry needs a backward state"
        cur = Configuration(state, len(frag))
    out: list[str] = []
    seen: set[Configuration] = set()
    while True:
        if T.is_forward(cur.state) and cur.position == len(frag):
            return ("right", cur.state, tuple(out))
        if not T.is_forward(cur.state) and cur.position == 0:
            return ("left", cur.state, tuple(out))
        if cur in seen:
            return None
        seen.add(cur)
        nxt = successors(T, frag, cur)
        if not nxt:
            return None
        if len(nxt) > 1:
            raise PreconditionError(
                f"nondeterministic step at {cur} inside fragment")
        (cur, t), = nxt
        out.extend(t.output)


# Re-export for convenience of callers that only import semantics.
__all__ = [
    "Configuration", "Run", "RunOutcome", "PropertyReport",
    "read_letter", "successors", "predecessors", "run_deterministic",
    "check_properties", "simulate_in_fragment", "FORWARD", "BACKWARD",
]
