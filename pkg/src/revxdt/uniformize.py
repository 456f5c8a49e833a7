"""Uniformization of a nondeterministic 2FT by a reversible one.

Three cooperating machines are built and then chained with the
reversibilization pipelines and the reversible composition:

* the right oracle — a co-deterministic 1FT annotating each input letter
  with the behavior of the strict suffix to its right (which left-to-left
  runs the suffix admits, and from which states it can reach acceptance);
* the uniformizer — a deterministic 1FT whose states are slices (crossing
  sequences); at each letter it picks the minimal slice compatible with the
  previous one and valid for the suffix behavior, thereby tracking the
  minimal accepting run without ever seeing the whole input;
* the follower — a machine over slice letters that replays the selected
  transitions and emits their outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compose import compose_reversible
from .errors import NoValidSliceError
from .machine import (BEGIN, END, FORWARD, State, Transducer, Transition,
                      check_state_budget, trim)
from .oneway import codet1ft_to_reversible, det1ft_to_reversible


@dataclass(frozen=True)
class BehaviorPair:
    """Behavior of a suffix w: the left-to-left run relation over w and the
    set of (forward) states from which w can be crossed into acceptance."""

    left_to_left: frozenset  # pairs (forward state, backward state)
    pred_final: frozenset    # forward states reaching acceptance through w


def behavior_closure_relation(T: Transducer, a: str, B: BehaviorPair) -> frozenset:
    """Chains of left-to-left excursions glued by backward bounces on a."""
    cl = set(B.left_to_left)
    changed = True
    while changed:
        changed = False
        for (p0, q1) in list(cl):
            for t in T.transitions:
                if t.source != q1 or t.letter != a:
                    continue
                if not T.is_forward(t.target):
                    continue
                for (p1, qk) in list(cl):
                    if p1 == t.target and (p0, qk) not in cl:
                        cl.add((p0, qk))
                        changed = True
    return frozenset(cl)


def behavior_step(T: Transducer, a: str, B: BehaviorPair) -> BehaviorPair:
    """Behavior of a·w from the behavior of w."""
    cl = behavior_closure_relation(T, a, B)
    a_trans = [t for t in T.transitions if t.letter == a]
    ll = set()
    for t in a_trans:
        if T.is_forward(t.source) and not T.is_forward(t.target):
            ll.add((t.source, t.target))
    enter = {}  # forward x -> forward states p with (p, a, x)
    leave = {}  # backward y -> backward states q with (y, a, q)
    for t in a_trans:
        if T.is_forward(t.source) and T.is_forward(t.target):
            enter.setdefault(t.target, set()).add(t.source)
        if not T.is_forward(t.source) and not T.is_forward(t.target):
            leave.setdefault(t.source, set()).add(t.target)
    for (x, y) in cl:
        for p in enter.get(x, ()):
            for q in leave.get(y, ()):
                ll.add((p, q))
    pf = set()
    for t in a_trans:
        if T.is_forward(t.source) and t.target in B.pred_final:
            pf.add(t.source)
    for (x, y) in cl:
        for t in a_trans:
            if t.source == y and T.is_forward(t.target) \
                    and t.target in B.pred_final:
                pf.update(enter.get(x, ()))
    return BehaviorPair(frozenset(ll), frozenset(pf))


def behavior_token(T: Transducer, B: BehaviorPair) -> str:
    ll = ",".join(f"{p}>{q}" for p, q in
                  sorted(B.left_to_left, key=lambda pq: (T.order[pq[0]], T.order[pq[1]])))
    pf = ",".join(sorted(B.pred_final, key=lambda s: T.order[s]))
    return f"beh(ll=[{ll}],fin=[{pf}])"


@dataclass(frozen=True)
class EnrichedLetter:
    """An input letter annotated with the behavior of the strict suffix."""

    base: str
    behavior: BehaviorPair

    def token(self, T: Transducer) -> str:
        return f"[{self.base}|{behavior_token(T, self.behavior)}]"


@dataclass(frozen=True)
class _OracleData:
    empty_behavior: BehaviorPair
    behaviors: tuple[BehaviorPair, ...]   # suffix behaviors of the form v·end
    transitions: tuple                    # right-oracle transition tuples
    enriched: tuple[EnrichedLetter, ...]  # output letters in emission order


def _right_oracle_data(T: Transducer) -> _OracleData:
    empty = BehaviorPair(frozenset(), frozenset({T.final}))
    after_end = behavior_step(T, END, empty)
    closure = [after_end]
    seen = {after_end}
    queue = [after_end]
    letters = sorted(T.input_alphabet)
    step_map = {}
    while queue:
        b = queue.pop(0)
        for a in letters:
            nb = behavior_step(T, a, b)
            step_map[(a, b)] = nb
            if nb not in seen:
                seen.add(nb)
                closure.append(nb)
                queue.append(nb)
        check_state_budget(len(closure), "right-oracle behavior closure")
    enriched: list[EnrichedLetter] = []
    transitions = []

    def out(el: EnrichedLetter) -> EnrichedLetter:
        if el not in enriched:
            enriched.append(el)
        return el

    # Reading the final endmarker lands in the empty-suffix behavior.
    transitions.append((after_end, END, empty, out(EnrichedLetter(END, empty))))
    for b in closure:
        for a in letters:
            transitions.append((step_map[(a, b)], a, b,
                                out(EnrichedLetter(a, b))))
    for b in closure:
        # The word is accepted iff the initial state crosses ⊢·suffix.
        if T.initial in behavior_step(T, BEGIN, b).pred_final:
            transitions.append(("init", BEGIN, b,
                                out(EnrichedLetter(BEGIN, b))))
    return _OracleData(empty, tuple(closure), tuple(transitions),
                       tuple(enriched))


def build_right_oracle(T: Transducer) -> Transducer:
    """Co-deterministic 1FT emitting each letter enriched with the behavior
    of the suffix strictly to its right."""
    data = _right_oracle_data(T)
    ids = {data.empty_behavior: "final"}
    for i, b in enumerate(data.behaviors):
        ids.setdefault(b, f"b{i}")
    uniq = [State("init", FORWARD)]
    seen = {"init"}
    for b in [data.empty_behavior] + list(data.behaviors):
        if ids[b] not in seen:
            seen.add(ids[b])
            uniq.append(State(ids[b], FORWARD))
    out_alphabet = frozenset(el.token(T) for el in data.enriched)
    transitions = []
    for (src, letter, tgt, el) in data.transitions:
        src_id = "init" if src == "init" else ids[src]
        transitions.append(Transition(src_id, letter, ids[tgt],
                                      (el.token(T),)))
    return Transducer(
        f"rightoracle({T.name})", T.input_alphabet, out_alphabet,
        tuple(uniq), "init", "final", tuple(transitions))


def _stitch(T: Transducer, prev, nxt, a: str):
    """Interleave two slices across the letter a.

    Returns the temporally ordered transitions crossing a, or None when the
    slices cannot face each other over this letter.  The interleaving keeps
    each slice's internal order and starts with the first element of prev;
    every forward element of prev and backward element of nxt must be
    followed directly by the target of one of its a-transitions (taken from
    nxt when forward, from prev when backward); the remaining elements are
    entry points of excursions justified elsewhere, so their successors are
    free.  The last element overall must be a forward element of nxt.
    """
    memo = {}

    def solve(i: int, j: int, pending):
        # pending: ("prev"|"next", state) forced element, or
        #          "prev_any"/"next_any" free element from one side.
        key = (i, j, pending)
        if key in memo:
            return memo[key]
        memo[key] = None
        if pending == "prev_any":
            options = [("prev", prev[i])] if i < len(prev) else []
        elif pending == "next_any":
            options = [("next", nxt[j])] if j < len(nxt) else []
        else:
            side, state = pending
            if side == "prev":
                options = [("prev", state)] if i < len(prev) and prev[i] == state else []
            else:
                options = [("next", state)] if j < len(nxt) and nxt[j] == state else []
        for side, state in options:
            ni, nj = (i + 1, j) if side == "prev" else (i, j + 1)
            fwd = T.is_forward(state)
            if side == "next" and fwd:
                if ni == len(prev) and nj == len(nxt):
                    memo[key] = ()
                    return ()
                rest = solve(ni, nj, "next_any")
                if rest is not None:
                    memo[key] = rest
                    return rest
                continue
            if side == "prev" and not fwd:
                rest = solve(ni, nj, "prev_any")
                if rest is not None:
                    memo[key] = rest
                    return rest
                continue
            # Crossing element: it reads a and its target follows directly.
            for t in T.by_source_letter.get((state, a), ()):
                tgt_side = "next" if T.is_forward(t.target) else "prev"
                rest = solve(ni, nj, (tgt_side, t.target))
                if rest is not None:
                    memo[key] = (t,) + rest
                    return (t,) + rest
        return memo[key]

    return solve(0, 0, "prev_any")


def _valid_candidates(T: Transducer, R, F):
    """Repeat-free valid slices in length-lexicographic order.

    Validity is local: a non-last forward element must be followed by one
    of its left-to-left partners, backward elements are unconstrained, and
    the last element must be a forward state predicting acceptance.  The
    depth-first extension in declaration order yields exactly the valid
    subsequence of the full permutation order."""
    ids = T.state_ids
    succ = {s: ([q for q in ids if (s, q) in R] if T.is_forward(s)
                else list(ids))
            for s in ids}
    finals = {s for s in F if T.is_forward(s)}

    def extend(prefix, used, k):
        if len(prefix) == k:
            if prefix[-1] in finals:
                yield prefix
            return
        for q in succ[prefix[-1]]:
            if q not in used:
                yield from extend(prefix + (q,), used | {q}, k)

    for k in range(1, len(ids) + 1):
        for first in ids:
            yield from extend((first,), {first}, k)


def slice_update(T: Transducer, prev, el: EnrichedLetter):
    """Minimal valid slice after reading el.base with suffix behavior
    el.behavior, plus the temporally ordered crossing transitions."""
    R = el.behavior.left_to_left
    F = el.behavior.pred_final
    for cand in _valid_candidates(T, R, F):
        crossing = _stitch(T, tuple(prev), cand, el.base)
        if crossing is not None:
            return cand, crossing
    raise NoValidSliceError(
        f"no valid slice after {prev!r} on {el.base!r}")


def slice_id(states) -> str:
    return "[" + ",".join(states) + "]"


def slice_letter_token(crossing) -> str:
    return " / ".join(f"{t.source}-{t.letter}->{t.target}" for t in crossing)


@dataclass(frozen=True)
class _UniformizerData:
    machine: Transducer
    slice_letters: tuple  # (token, crossing transitions) pairs


def _build_uniformizer_data(T: Transducer) -> _UniformizerData:
    data = _right_oracle_data(T)
    start = (T.initial,)
    slices = [start]
    seen = {start}
    queue = [start]
    transitions = []
    letters = []
    letter_tokens = set()
    while queue:
        cur = queue.pop(0)
        for el in data.enriched:
            try:
                nxt, crossing = slice_update(T, cur, el)
            except NoValidSliceError:
                continue
            token = slice_letter_token(crossing)
            if token not in letter_tokens:
                letter_tokens.add(token)
                letters.append((token, crossing))
            transitions.append(Transition(slice_id(cur), el.token(T),
                                          slice_id(nxt), (token,)))
            if nxt not in seen:
                seen.add(nxt)
                slices.append(nxt)
                queue.append(nxt)
        check_state_budget(len(slices), "uniformizer slices")
    states = [State("empty", FORWARD)] + [State(slice_id(s), FORWARD)
                                          for s in slices]
    transitions.append(Transition("empty", BEGIN, slice_id(start)))
    final_slice = (T.final,)
    if final_slice in seen:
        transitions.append(Transition(slice_id(final_slice), END, "empty"))
    in_alphabet = frozenset(el.token(T) for el in data.enriched)
    machine = Transducer(
        f"uniformizer({T.name})", in_alphabet, frozenset(letter_tokens),
        tuple(states), "empty", "empty", tuple(transitions))
    return _UniformizerData(machine, tuple(letters))


def build_uniformizer(T: Transducer) -> Transducer:
    """Deterministic 1FT over enriched letters whose states are the slices
    of minimal runs, emitting one slice letter per input letter."""
    return _build_uniformizer_data(T).machine


def build_follower(T: Transducer) -> Transducer:
    """Replays the transitions packed inside slice letters, with T's own
    states and polarities, emitting the original outputs."""
    data = _build_uniformizer_data(T)
    transitions = []
    for token, crossing in data.slice_letters:
        for t in crossing:
            transitions.append(Transition(t.source, token, t.target, t.output))
    transitions.append(Transition(T.initial, BEGIN, T.initial))
    transitions.append(Transition(T.final, END, T.final))
    in_alphabet = frozenset(tok for tok, _ in data.slice_letters)
    return Transducer(
        f"follower({T.name})", in_alphabet, T.output_alphabet, T.states,
        T.initial, T.final, tuple(transitions))


def uniformize(T: Transducer) -> Transducer:
    """Reversible 2FT with the same domain as T whose graph is included in
    T's relation; on each accepted word it produces the output of the
    minimal accepting run."""
    stage1 = trim(codet1ft_to_reversible(trim(build_right_oracle(T))))
    stage2 = trim(det1ft_to_reversible(trim(build_uniformizer(T))))
    follower = build_follower(T)
    return trim(compose_reversible(trim(compose_reversible(stage1, stage2)),
                                   follower))
