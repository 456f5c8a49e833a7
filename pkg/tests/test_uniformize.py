"""Uniformization: suffix behaviors, right oracle, slice updates,
uniformizer, follower, and the full reversible chain."""

import random

import pytest

from revxdt.errors import NoValidSliceError
from revxdt.fixtures import fix_a1, fix_a2, fix_rel, fix_t1
from revxdt.machine import BEGIN, END, word, wrap_input
from revxdt.oracle import (check_uniformizes, enumerate_accepting_runs,
                           minimal_run, relation)
from revxdt.semantics import check_properties, run_deterministic
from revxdt.uniformize import (BehaviorPair, EnrichedLetter, behavior_step,
                               build_follower, build_right_oracle,
                               build_uniformizer, slice_id, slice_update,
                               uniformize)

from _machines import (left_to_left_pairs, pred_final_states, rand_2ft,
                       rand_codet_wb_1ft)


def empty_behavior(T):
    return BehaviorPair(frozenset(), frozenset({T.final}))


def suffix_behavior(T, v):
    """Behavior of the fragment v (which should end with the end marker),
    computed by folding the one-letter step from the right."""
    B = empty_behavior(T)
    for a in reversed(tuple(v)):
        B = behavior_step(T, a, B)
    return B


def enriched_tokens(T, u):
    """The token word the right oracle emits for ⊢u⊣."""
    u = tuple(u)
    tokens = []
    for i, a in enumerate(wrap_input(u)):
        suffix = wrap_input(u)[i + 1:]
        el = EnrichedLetter(a, suffix_behavior(T, suffix))
        tokens.append(el.token(T))
    return tuple(tokens)


def test_behavior_step_one_way_degenerates():
    # A one-way machine has no left-to-left runs; pred_final evolves as the
    # predecessor relation of the suffix.
    T = fix_a1()
    B = suffix_behavior(T, (END,))
    assert B.left_to_left == frozenset()
    assert B.pred_final == frozenset({"2"})
    B = suffix_behavior(T, ("a", END))
    assert B.left_to_left == frozenset()
    assert B.pred_final == frozenset({"1", "2"})


def test_behavior_step_a2_end():
    T = fix_a2()
    B = suffix_behavior(T, (END,))
    assert B.pred_final == frozenset({"2"})
    assert B.left_to_left == frozenset()


def test_behavior_step_a2_turnaround():
    # Reading "a" in state 1 turns backward (1r): a one-letter suffix "a⊣"
    # admits the left-to-left excursion 1 -> 1r.
    T = fix_a2()
    B = suffix_behavior(T, ("a", END))
    assert ("1", "1r") in B.left_to_left


def test_behavior_matches_brute_force():
    rng = random.Random(79)
    checked = 0
    for _ in range(8):
        T = rand_2ft(rng)
        for n in range(4):
            v = ("a",) * n + (END,)
            B = suffix_behavior(T, v)
            assert B.left_to_left == frozenset(left_to_left_pairs(T, v))
            assert B.pred_final == frozenset(pred_final_states(T, v))
            checked += 1
    assert checked > 0


def test_right_oracle_codeterministic():
    for T in (fix_rel(), fix_t1(), fix_a2()):
        O = build_right_oracle(T)
        report = check_properties(O)
        assert report.one_way
        assert report.codeterministic
        n = T.state_count()
        assert O.state_count() <= 2 ** (n * n + n) + 2


def test_right_oracle_annotations():
    T = fix_rel()
    O = build_right_oracle(T)
    for u in [(), ("a",), ("a", "a")]:
        runs = enumerate_accepting_runs(O, u)
        assert len(runs) == 1  # co-determinism: at most one run
        assert runs[0].output == enriched_tokens(T, u)


def test_right_oracle_domain():
    T = fix_a2()
    O = build_right_oracle(T)
    assert relation(O, 5).domain() == relation(T, 5).domain()


def test_slice_update_deterministic_singletons():
    T = fix_a1()
    u = ("a", "a")
    tokens_beh = [suffix_behavior(T, wrap_input(u)[i + 1:])
                  for i in range(len(wrap_input(u)))]
    cur = (T.initial,)
    seen = [cur]
    for a, B in zip(wrap_input(u), tokens_beh):
        cur, crossing = slice_update(T, cur, EnrichedLetter(a, B))
        assert len(cur) == 1  # deterministic machines have singleton slices
        assert len(crossing) == 1
        seen.append(cur)
    assert seen[-1] == (T.final,)


def test_slice_update_no_valid_slice():
    T = fix_a1()
    el = EnrichedLetter("a", BehaviorPair(frozenset(), frozenset()))
    with pytest.raises(NoValidSliceError):
        slice_update(T, (T.initial,), el)


def test_slice_update_picks_minimal_branch():
    # fix_rel branches into s0/s1 at the begin marker; the slice after ⊢
    # must be the minimal one, [s0].
    T = fix_rel()
    B = suffix_behavior(T, ("a", END))
    nxt, crossing = slice_update(T, (T.initial,), EnrichedLetter(BEGIN, B))
    assert nxt == ("s0",)
    assert [t.target for t in crossing] == ["s0"]


def test_uniformizer_deterministic():
    for T in (fix_rel(), fix_t1()):
        U = build_uniformizer(T)
        report = check_properties(U)
        assert report.one_way
        assert report.deterministic


def test_uniformizer_tracks_minimal_run_slices():
    T = fix_t1()
    U = build_uniformizer(T)
    for u in [("a",), ("a", "b"), ("b", "a", "a")]:
        run = minimal_run(T, u)
        outcome = run_deterministic(U, enriched_tokens(T, u))
        assert outcome.kind == "accepted"
        visited = [c.state for c in outcome.run.configurations()]
        want_slices = [slice_id(run.slice(T, i))
                       for i in range(len(wrap_input(u)) + 1)]
        assert visited == ["empty"] + want_slices + ["empty"]


def test_follower_replays_outputs():
    T = fix_rel()
    U = build_uniformizer(T)
    F = build_follower(T)
    for u in [(), ("a",), ("a", "a")]:
        tokens = run_deterministic(U, enriched_tokens(T, u)).output
        outcome = run_deterministic(F, tokens)
        assert outcome.kind == "accepted"
        assert outcome.output == minimal_run(T, u).output


def test_uniformize_rel():
    T = fix_rel()
    R = uniformize(T)
    assert check_properties(R).reversible
    assert check_uniformizes(R, T, 4).ok
    for k in range(4):
        out = run_deterministic(R, ("a",) * k)
        assert out.kind == "accepted"
        assert out.output == ("0",) * k  # minimal run takes the s0 branch


def test_uniformize_two_way():
    # A genuinely two-way input machine: the oracle's begin transition must
    # account for runs bouncing off the begin marker.
    T = fix_a2()
    R = uniformize(T)
    assert check_properties(R).reversible
    assert check_uniformizes(R, T, 4).ok


def test_uniformize_t1():
    T = fix_t1()
    R = uniformize(T)
    assert check_properties(R).reversible
    assert check_uniformizes(R, T, 3).ok
    for u in [("a",), ("b", "a")]:
        assert run_deterministic(R, u).output == minimal_run(T, u).output
