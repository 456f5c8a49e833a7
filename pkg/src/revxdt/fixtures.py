"""Reference machines used by the tests, the CLI examples, and the docs."""

from __future__ import annotations

from .machine import BACKWARD, BEGIN, END, Transducer


def fix_t1() -> Transducer:
    """Co-deterministic, weakly branching, nondeterministic 1FT.

    Outputs name the target state of each transition, so distinct runs are
    distinguishable.  Declaration order 0 < 1 < 2 < q_I < q_F.
    """
    def t(src, letter, tgt):
        return (src, letter, tgt, (tgt,))
    return Transducer.build(
        "t1",
        input_alphabet={"a", "b"},
        output_alphabet={"0", "1", "2", "q_I", "q_F"},
        states=["0", "1", "2", "q_I", "q_F"],
        initial="q_I",
        final="q_F",
        transitions=[
            t("q_I", BEGIN, "2"),
            t("q_I", BEGIN, "1"),
            t("2", "a", "2"),
            t("2", "b", "1"),
            t("1", "a", "1"),
            t("1", "a", "0"),
            t("1", "b", "0"),
            t("0", END, "q_F"),
        ],
    )


def fix_t1core() -> Transducer:
    """The interior of fix_t1: same letter transitions, no endmarker wiring.

    Used for longest-run computations over bare fragments like "ab⊣"."""
    T = fix_t1()
    keep = [t for t in T.transitions if t.source != "q_I"]
    return Transducer.build(
        "t1core", T.input_alphabet, T.output_alphabet,
        [(s.id, s.polarity) for s in T.states], T.initial, T.final, keep)


def fix_a1() -> Transducer:
    """Deterministic (not co-deterministic) 1FA for words containing "aa".

    As a transducer it echoes each proper letter it reads."""
    def t(src, letter, tgt):
        out = (letter,) if letter not in (BEGIN, END) else ()
        return (src, letter, tgt, out)
    return Transducer.build(
        "a1",
        input_alphabet={"a", "b"},
        output_alphabet={"a", "b"},
        states=["q_I", "0", "1", "2", "q_F"],
        initial="q_I",
        final="q_F",
        transitions=[
            t("q_I", BEGIN, "0"),
            t("0", "a", "1"),
            t("0", "b", "0"),
            t("1", "a", "2"),
            t("1", "b", "0"),
            t("2", "a", "2"),
            t("2", "b", "2"),
            t("2", END, "q_F"),
        ],
    )


def fix_a2() -> Transducer:
    """Reversible 2FA for words containing "aa" (empty outputs).

    After reading an "a" that is not followed by another "a", the machine
    backtracks to re-read the letters it skipped, which restores
    co-determinism at the price of two-way motion."""
    states = [
        "q_I", "0", "1",
        ("1b", BACKWARD), ("1r", BACKWARD), "1s",
        ("0r", BACKWARD),
        "2", "q_F",
    ]
    return Transducer.build(
        "a2",
        input_alphabet={"a", "b"},
        output_alphabet=set(),
        states=states,
        initial="q_I",
        final="q_F",
        transitions=[
            ("q_I", BEGIN, "0"),
            ("0", "a", "1"),
            ("0", "b", "0"),
            ("1", "b", "1b"),
            ("1b", "a", "0"),
            ("1", "a", "1r"),
            ("1r", "a", "0r"),
            ("1s", "b", "1r"),
            ("0r", "a", "1s"),
            ("0r", "b", "0r"),
            ("0r", BEGIN, "2"),
            ("2", "a", "2"),
            ("2", "b", "2"),
            ("2", END, "q_F"),
        ],
    )


def fix_id(alphabet=("a", "b")) -> Transducer:
    """Three-state reversible identity transducer."""
    letters = sorted(alphabet)
    transitions = [("s", BEGIN, "m", ())]
    for a in letters:
        transitions.append(("m", a, "m", (a,)))
    transitions.append(("m", END, "f", ()))
    return Transducer.build(
        "id", set(letters), set(letters), ["s", "m", "f"], "s", "f",
        transitions)


def fix_rel() -> Transducer:
    """Nondeterministic relation over {a}: a^k maps to both 0^k and 1^k.

    Two interior states, two accepting runs per word with distinct outputs;
    the declaration order makes the 0-producing run the minimal one."""
    return Transducer.build(
        "rel",
        input_alphabet={"a"},
        output_alphabet={"0", "1"},
        states=["q_I", "s0", "s1", "q_F"],
        initial="q_I",
        final="q_F",
        transitions=[
            ("q_I", BEGIN, "s0", ()),
            ("q_I", BEGIN, "s1", ()),
            ("s0", "a", "s0", ("0",)),
            ("s1", "a", "s1", ("1",)),
            ("s0", END, "q_F", ()),
            ("s1", END, "q_F", ()),
        ],
    )


def fix_sst_pal():
    """Copyless SST mapping u to u·reverse(u) over {a,b}."""
    from .sst import Sst, Substitution
    variables = ("X", "Y", "O")
    ident = {"X": "${X}", "Y": "${Y}", "O": "${O}"}

    def sub(mapping):
        return Substitution.parse(variables, mapping)

    transitions = [("q_I", BEGIN, "s", sub(ident))]
    for a in ("a", "b"):
        transitions.append(
            ("s", a, "s",
             sub({"X": "${X}" + a, "Y": a + "${Y}", "O": "${O}"})))
    transitions.append(
        ("s", END, "q_F", sub({"X": "", "Y": "", "O": "${X}${Y}"})))
    return Sst.build(
        name="sst_pal",
        input_alphabet={"a", "b"},
        output_alphabet={"a", "b"},
        states=["q_I", "s", "q_F"],
        initial="q_I",
        final="q_F",
        variables=variables,
        final_variable="O",
        transitions=transitions,
    )


def fix_sst_id():
    """Single-variable copyless SST computing the identity over {a,b}."""
    from .sst import Sst, Substitution
    variables = ("O",)

    def sub(mapping):
        return Substitution.parse(variables, mapping)

    transitions = [("q_I", BEGIN, "s", sub({"O": "${O}"}))]
    for a in ("a", "b"):
        transitions.append(("s", a, "s", sub({"O": "${O}" + a})))
    transitions.append(("s", END, "q_F", sub({"O": "${O}"})))
    return Sst.build(
        name="sst_id",
        input_alphabet={"a", "b"},
        output_alphabet={"a", "b"},
        states=["q_I", "s", "q_F"],
        initial="q_I",
        final="q_F",
        variables=variables,
        final_variable="O",
        transitions=transitions,
    )
