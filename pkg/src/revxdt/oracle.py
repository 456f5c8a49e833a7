"""Brute-force ground truth: run enumeration, relations, equivalence,
longest runs and minimal runs with their slices.

Everything here is exhaustive search over short words, meant to validate the
polynomial constructions, not to be fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (AlphabetMismatchError, NotFunctionalError,
                     PreconditionError, WordNotAcceptedError,
                     WordTooLongError)
from .machine import Transducer, wrap_input
from .semantics import Configuration, Run, check_properties, successors

DEFAULT_MAX_WORD_LEN = 8


def enumerate_accepting_runs(T: Transducer, u, max_word_len: int = DEFAULT_MAX_WORD_LEN
                             ) -> list[Run]:
    """All simple accepting runs on ⊢u⊣ (no configuration repeated).

    Iterative depth-first search pruning configurations already on the
    current path; the composed machines can have runs thousands of steps
    long, so no recursion.
    """
    u = tuple(u)
    if len(u) > max_word_len:
        raise WordTooLongError(f"|u| = {len(u)} exceeds bound {max_word_len}")
    w = wrap_input(u)
    accept = Configuration(T.final, len(w))
    start = Configuration(T.initial, 0)
    runs: list[Run] = []
    # Stack frames: (configuration, iterator over its successors).
    path: list[tuple[Configuration, object]] = [(start, iter(successors(T, w, start)))]
    on_path = {start}
    steps: list[tuple[Configuration, object]] = []
    if start == accept:
        return [Run(w, (), accept)]
    while path:
        conf, it = path[-1]
        advanced = False
        for nxt, t in it:
            if nxt in on_path:
                continue
            steps.append((conf, t))
            if nxt == accept:
                runs.append(Run(w, tuple(steps), accept))
                steps.pop()
                continue
            path.append((nxt, iter(successors(T, w, nxt))))
            on_path.add(nxt)
            advanced = True
            break
        if not advanced:
            path.pop()
            on_path.discard(conf)
            if steps:
                steps.pop()
    return runs


@dataclass(frozen=True)
class Relation:
    max_len: int
    pairs: frozenset

    def outputs_for(self, u) -> frozenset:
        u = tuple(u)
        return frozenset(v for x, v in self.pairs if x == u)

    def domain(self) -> frozenset:
        return frozenset(u for u, _ in self.pairs)


def all_words(alphabet, max_len: int):
    letters = sorted(alphabet)
    for n in range(max_len + 1):
        for u in itertools.product(letters, repeat=n):
            yield u


def relation(T: Transducer, max_len: int) -> Relation:
    """All (input, output) pairs witnessed by simple accepting runs."""
    pairs = set()
    for u in all_words(T.input_alphabet, max_len):
        for run in enumerate_accepting_runs(T, u, max_word_len=max_len):
            pairs.add((u, run.output))
    return Relation(max_len, frozenset(pairs))


@dataclass(frozen=True)
class EquivResult:
    equal: bool
    word: tuple | None = None
    outputs1: frozenset | None = None
    outputs2: frozenset | None = None


def check_equiv(T1: Transducer, T2: Transducer, max_len: int) -> EquivResult:
    """Compare relations on all words up to max_len; minimal counterexample."""
    if T1.input_alphabet != T2.input_alphabet:
        raise AlphabetMismatchError("input alphabets differ")
    r1, r2 = relation(T1, max_len), relation(T2, max_len)
    if r1.pairs == r2.pairs:
        return EquivResult(True)
    bad = {u for u, _ in r1.pairs ^ r2.pairs}
    u = min(bad, key=lambda x: (len(x), x))
    return EquivResult(False, u, r1.outputs_for(u), r2.outputs_for(u))


@dataclass(frozen=True)
class UniformResult:
    ok: bool
    reason: str = ""
    word: tuple | None = None


def check_uniformizes(Tu: Transducer, T: Transducer, max_len: int) -> UniformResult:
    """Domain equality plus graph inclusion of Tu inside T on short words."""
    ru, rt = relation(Tu, max_len), relation(T, max_len)
    for u in sorted(ru.domain() | rt.domain(), key=lambda x: (len(x), x)):
        outs_u = ru.outputs_for(u)
        if len(outs_u) > 1:
            raise NotFunctionalError("uniformizer has two outputs",
                                     witness=(u, outs_u))
        outs_t = rt.outputs_for(u)
        if bool(outs_u) != bool(outs_t):
            return UniformResult(False, "domain mismatch", u)
        if outs_u and not outs_u <= outs_t:
            return UniformResult(False, "graph inclusion fails", u)
    return UniformResult(True)


def longrun(T: Transducer, u, p: str) -> int:
    """Length of the longest run of a one-way machine from p reading u.

    u is a bare letter sequence (it may include endmarkers); the value is
    the number of letters consumed, between 0 and |u|.
    """
    if not check_properties(T).one_way:
        raise PreconditionError("longrun needs a one-way machine")
    u = tuple(u)
    memo: dict[tuple[int, str], int] = {}

    def best(i: int, s: str) -> int:
        if i == len(u):
            return 0
        key = (i, s)
        if key in memo:
            return memo[key]
        memo[key] = 0
        vals = [1 + best(i + 1, t.target)
                for t in T.by_source_letter.get((s, u[i]), ())]
        memo[key] = max(vals) if vals else 0
        return memo[key]

    return best(0, p)


def slice_key(T: Transducer, states) -> tuple:
    """Length-lexicographic key for a state sequence."""
    return (len(states), tuple(T.order[s] for s in states))


def run_sort_key(T: Transducer, run: Run) -> tuple:
    return tuple(slice_key(T, run.slice(T, i)) for i in range(len(run.word) + 1))


def minimal_run(T: Transducer, u, max_word_len: int = DEFAULT_MAX_WORD_LEN) -> Run:
    """The accepting run minimal for the slice-sequence order.

    Runs are compared boundary by boundary, left to right, each slice under
    the length-lexicographic order induced by the state declaration order.
    """
    runs = enumerate_accepting_runs(T, u, max_word_len=max_word_len)
    if not runs:
        raise WordNotAcceptedError(f"word {u!r} not accepted")
    return min(runs, key=lambda r: run_sort_key(T, r))
