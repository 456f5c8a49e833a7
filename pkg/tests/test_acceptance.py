"""Acceptance checks: one test per criterion, printing a pass line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the summary lines.
"""

import itertools
import random

from revxdt.compose import compose_reversible
from revxdt.fixtures import (fix_a1, fix_a2, fix_id, fix_rel, fix_sst_pal,
                             fix_t1)
from revxdt.machine import BEGIN, END, word, wrap_input
from revxdt.oneway import (build_mirror, codet1ft_to_reversible,
                           codet_pipeline_state_count, det1ft_to_reversible,
                           det_pipeline_state_count)
from revxdt.oracle import (all_words, check_equiv, check_uniformizes,
                           enumerate_accepting_runs, longrun, minimal_run,
                           relation)
from revxdt.semantics import (check_properties, run_deterministic,
                              simulate_in_fragment)
from revxdt.sst import build_navigator, eval_sst, sst_to_reversible, strip_sst
from revxdt.tree_outline import ABOVE, BELOW, pair_id, tree_outline
from revxdt.uniformize import (BehaviorPair, EnrichedLetter, behavior_step,
                               slice_update, uniformize)

from _machines import (fragment_runs, rand_2ft, rand_codet_wb_1ft,
                       rand_det_1ft, relational_compose)


def _passed(n, text):
    print(f"PASS criterion {n}: {text}")


def test_criterion_01_composition_state_count():
    M = build_mirror({"a", "b"})
    assert compose_reversible(M, M).state_count() == 9
    rng = random.Random(101)
    checked = 0
    while checked < 3:
        T1 = tree_outline(rand_codet_wb_1ft(rng))
        T2 = build_mirror(T1.output_alphabet)
        C = compose_reversible(T1, T2)
        assert C.state_count() == T1.state_count() * T2.state_count()
        checked += 1
    _passed(1, "composition has n1*n2 raw states (mirror^2 and 3 random pairs)")


def test_criterion_02_composition_semantics():
    machines = {"id": fix_id(), "mirror": build_mirror({"a", "b"}),
                "a2": fix_a2()}
    for name1, T1 in machines.items():
        for name2, T2 in machines.items():
            C = compose_reversible(T1, T2)
            got = relation(C, 4).pairs
            want = relational_compose(relation(T1, 4).pairs,
                                      relation(T2, 4).pairs)
            assert got == want, (name1, name2)
    _passed(2, "relation(compose, 4) matches relational composition "
               "on all 9 reversible fixture pairs")


def test_criterion_03_tree_outline():
    rng = random.Random(103)
    machines = [fix_t1()] + [rand_codet_wb_1ft(rng) for _ in range(50)]
    for T in machines:
        TO = tree_outline(T)
        m = T.state_count()
        assert check_properties(TO).reversible
        assert TO.state_count() == 4 * m * m - 2 * m <= 4 * m * m
        assert check_equiv(T, TO, 5).equal
    _passed(3, "tree outline reversible, 4m^2-2m states, equivalent at "
               "max_len 5 on FIX_T1 + 50 random machines")


def test_criterion_04_outline_run_lemmas():
    rng = random.Random(107)
    seq_samples = acc_samples = 0
    while seq_samples < 100:
        T = rand_codet_wb_1ft(rng)
        TO = tree_outline(T)
        letters = sorted(T.input_alphabet)
        u = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        p, q = rng.sample(T.state_ids, 2)
        lp, lq = longrun(T, u, p), longrun(T, u, q)
        if not (lp <= lq and lp < len(u)):
            continue
        seq_samples += 1
        # Both marked pairs of (p, q) cross u left to left, silently.
        res = simulate_in_fragment(TO, u, pair_id(ABOVE, p, BELOW, q), True)
        assert res == ("left", pair_id(BELOW, p, BELOW, q), ())
        res = simulate_in_fragment(TO, u, pair_id(BELOW, p, ABOVE, q), True)
        assert res == ("left", pair_id(ABOVE, p, ABOVE, q), ())
        if lp < lq:
            res = simulate_in_fragment(TO, u, pair_id(BELOW, q, ABOVE, p), True)
            assert res == ("left", pair_id(BELOW, q, BELOW, p), ())
            res = simulate_in_fragment(TO, u, pair_id(ABOVE, q, BELOW, p), True)
            assert res == ("left", pair_id(ABOVE, q, ABOVE, p), ())
    while acc_samples < 100:
        T = rand_codet_wb_1ft(rng)
        TO = tree_outline(T)
        letters = sorted(T.input_alphabet)
        u = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        p = rng.choice(T.state_ids)
        lp = longrun(T, u, p)
        if lp == 0:
            continue
        prefix = u[:lp]
        t_runs = [r for r in fragment_runs(T, prefix, p, True)
                  if r[0] == "right"]
        endpoints = {s for _, s, _ in t_runs}
        if len(endpoints) != 1:
            continue  # convergence inside the prefix: the lemma's regime
        acc_samples += 1
        res = simulate_in_fragment(TO, prefix, pair_id(ABOVE, p, BELOW, p), True)
        assert res is not None and res[0] == "right"
        (q,) = endpoints
        assert res[1] == pair_id(ABOVE, q, BELOW, q)
        assert res[2] in {out for _, _, out in t_runs}
    _passed(4, "seq_state and acc_state run shapes and outputs on "
               "100+100 random samples")


def test_criterion_05_one_way_pipelines():
    rng = random.Random(109)
    T = fix_t1()
    R = codet1ft_to_reversible(T)
    assert R.state_count() == codet_pipeline_state_count(T.state_count())
    assert check_properties(R).reversible and check_equiv(T, R, 5).equal
    for _ in range(25):
        T = rand_codet_wb_1ft(rng)
        R = codet1ft_to_reversible(T)
        assert R.state_count() == codet_pipeline_state_count(T.state_count())
        assert check_properties(R).reversible and check_equiv(T, R, 5).equal
    T = fix_a1()
    R = det1ft_to_reversible(T)
    assert R.state_count() == det_pipeline_state_count(T.state_count())
    assert check_properties(R).reversible and check_equiv(T, R, 5).equal
    for _ in range(25):
        T = rand_det_1ft(rng)
        R = det1ft_to_reversible(T)
        assert R.state_count() == det_pipeline_state_count(T.state_count())
        assert check_properties(R).reversible and check_equiv(T, R, 5).equal
    _passed(5, "both pipelines reversible, equivalent at max_len 5, and "
               "sized by the implemented formulas (fixtures + 25 random each)")


def test_criterion_06_mirror():
    M = build_mirror({"a", "b"})
    assert M.state_count() == 3
    for u in all_words({"a", "b"}, 8):
        out = run_deterministic(M, u)
        assert out.kind == "accepted" and out.output == tuple(reversed(u))
    _passed(6, "3-state mirror reverses every word up to length 8")


def test_criterion_07_uniformization():
    T = fix_rel()
    R = uniformize(T)
    assert check_properties(R).reversible
    assert check_uniformizes(R, T, 4).ok
    for u in all_words(T.input_alphabet, 4):
        if not enumerate_accepting_runs(T, u):
            continue
        assert run_deterministic(R, u).output == minimal_run(T, u).output
    _passed(7, "uniformize(FIX_REL) reversible, uniformizes at max_len 4, "
               "outputs the minimal run's production")


def _suffix_behavior(T, v):
    B = BehaviorPair(frozenset(), frozenset({T.final}))
    for a in reversed(tuple(v)):
        B = behavior_step(T, a, B)
    return B


def test_criterion_08_uniformizer_slices():
    rng = random.Random(113)
    machines = [fix_rel()] + [rand_2ft(rng) for _ in range(10)]
    checked = 0
    for T in machines:
        for u in all_words(T.input_alphabet, 4):
            if not enumerate_accepting_runs(T, u):
                continue
            run = minimal_run(T, u)
            w = wrap_input(u)
            cur = (T.initial,)
            for i, a in enumerate(w):
                el = EnrichedLetter(a, _suffix_behavior(T, w[i + 1:]))
                cur, _ = slice_update(T, cur, el)
                assert cur == run.slice(T, i + 1)
                checked += 1
    assert checked > 0
    _passed(8, "greedy slice updates equal the minimal run's slices on "
               "FIX_REL + 10 random 2FTs (words up to length 4)")


def test_criterion_09_sst():
    S = fix_sst_pal()
    R = sst_to_reversible(S)
    m = len(S.variables)
    n = len(S.states)
    assert R.state_count() == (2 * m + 2) * det_pipeline_state_count(n)
    assert check_properties(build_navigator(S)).reversible
    for k in range(7):
        for u in itertools.product("ab", repeat=k):
            out = run_deterministic(R, u)
            assert out.kind == "accepted"
            assert out.output == eval_sst(S, u) == u + tuple(reversed(u))
    _passed(9, "sst_to_reversible(FIX_SST_PAL) computes u.reverse(u) for "
               "|u| <= 6; navigator reversible; raw size matches formula")


def test_criterion_10_figure_fixtures():
    A1, A2 = fix_a1(), fix_a2()
    r1 = check_properties(A1)
    assert r1.deterministic and not r1.codeterministic
    assert check_properties(A2).reversible
    for u in all_words({"a", "b"}, 8):
        contains_aa = "aa" in "".join(u)
        assert (run_deterministic(A1, u).kind == "accepted") == contains_aa
        assert (run_deterministic(A2, u).kind == "accepted") == contains_aa
    runs = enumerate_accepting_runs(fix_t1(), word("ab"))
    assert len(runs) == 1
    assert [c.state for c in runs[0].configurations()] == \
        ["q_I", "1", "1", "0", "q_F"]
    _passed(10, "A1 det-not-codet, A2 reversible, both accept exactly the "
                "words containing 'aa' up to length 8; T1 run tree on 'ab' "
                "has the single expected accepting run")
