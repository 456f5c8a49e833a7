"""Command-line interface.

Exit codes: 0 on success, 1 when a check fails (property, equivalence,
rejection...), 2 on parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .compose import compose_reversible
from .dot import machine_to_dot, run_tree_to_dot
from .errors import RevxdtError
from .machine import trim as trim_machine
from .machine import validate, word
from .oneway import reversibilize
from .oracle import check_equiv, check_uniformizes
from .semantics import check_properties, run_deterministic
from .serialize import (parse_sst, parse_transducer, serialize_sst,
                        serialize_transducer)
from .sst import eval_sst, sst_to_reversible
from .tree_outline import tree_outline_with_tags
from .uniformize import (build_follower, build_right_oracle,
                         build_uniformizer, uniformize)


def _load(path: str):
    with open(path, "rb") as f:
        return parse_transducer(f.read())


def _load_sst(path: str):
    with open(path, "rb") as f:
        return parse_sst(f.read())


def _save(T, path: str | None) -> None:
    raw = serialize_transducer(T)
    if path:
        with open(path, "wb") as f:
            f.write(raw)
    else:
        sys.stdout.write(raw.decode("utf-8"))


def _report_dict(T) -> dict:
    report = check_properties(T)
    return {
        "deterministic": report.deterministic,
        "codeterministic": report.codeterministic,
        "weakly_branching": report.weakly_branching,
        "one_way": report.one_way,
        "reversible": report.reversible,
    }


def cmd_check(args) -> int:
    T = _load(args.machine)
    diag = validate(T)
    out = _report_dict(T)
    out["valid"] = diag.ok
    if diag.errors:
        out["errors"] = list(diag.errors)
    if diag.warnings:
        out["warnings"] = list(diag.warnings)
    print(json.dumps(out, sort_keys=True))
    return 0 if diag.ok else 1


def cmd_run(args) -> int:
    T = _load(args.machine)
    outcome = run_deterministic(T, word(args.input))
    if outcome.kind == "accepted":
        print("accepted: " + "".join(outcome.output))
        return 0
    print(outcome.kind)
    return 1


def cmd_compose(args) -> int:
    T = compose_reversible(_load(args.first), _load(args.second))
    if args.trim:
        T = trim_machine(T)
    _save(T, args.output)
    return 0


def cmd_treeoutline(args) -> int:
    T = _load(args.machine)
    result, tags = tree_outline_with_tags(T)
    _save(result, args.output)
    if args.emit_rule_tags:
        for (src, letter, tgt), tag in sorted(tags.items()):
            print(f"{tag}: {src} --{letter}--> {tgt}", file=sys.stderr)
    return 0


def cmd_reversibilize(args) -> int:
    result = reversibilize(_load(args.machine))
    if args.trim:
        result = trim_machine(result)
    _save(result, args.output)
    return 0


def cmd_uniformize(args) -> int:
    T = _load(args.machine)
    if args.stage == "right-oracle":
        result = build_right_oracle(T)
    elif args.stage == "uniformizer":
        result = build_uniformizer(T)
    elif args.stage == "follower":
        result = build_follower(T)
    else:
        result = uniformize(T)
    _save(result, args.output)
    return 0


def cmd_sst2rev(args) -> int:
    result = sst_to_reversible(_load_sst(args.machine))
    if args.trim:
        result = trim_machine(result)
    _save(result, args.output)
    return 0


def cmd_ssteval(args) -> int:
    S = _load_sst(args.machine)
    out = eval_sst(S, word(args.input))
    if out is None:
        print("rejected")
        return 1
    print("".join(out))
    return 0


def cmd_equiv(args) -> int:
    res = check_equiv(_load(args.first), _load(args.second), args.max_len)
    if res.equal:
        print("equal")
        return 0
    print(f"counterexample: {''.join(res.word)!r}")
    return 1


def cmd_uniformcheck(args) -> int:
    res = check_uniformizes(_load(args.uniformizer), _load(args.machine),
                            args.max_len)
    if res.ok:
        print("ok")
        return 0
    print(f"{res.reason}: {''.join(res.word)!r}")
    return 1


def cmd_trim(args) -> int:
    _save(trim_machine(_load(args.machine)), args.output)
    return 0


def cmd_stats(args) -> int:
    T = _load(args.machine)
    trimmed = trim_machine(T)
    print(json.dumps({
        "states": T.state_count(),
        "transitions": len(T.transitions),
        "states_trimmed": trimmed.state_count(),
        "transitions_trimmed": len(trimmed.transitions),
    }, sort_keys=True))
    return 0


def cmd_dot(args) -> int:
    T = _load(args.machine)
    if args.input is not None:
        print(run_tree_to_dot(T, word(args.input)), end="")
    else:
        print(machine_to_dot(T), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revxdt",
        description="Reversible two-way transducer toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("check", cmd_check, help="validate and print property report")
    p.add_argument("machine")
    p = add("run", cmd_run, help="run a deterministic machine on a word")
    p.add_argument("machine")
    p.add_argument("--input", required=True)
    p = add("compose", cmd_compose, help="compose two reversible machines")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output")
    p.add_argument("--trim", action="store_true")
    p = add("treeoutline", cmd_treeoutline,
            help="reversibilize a co-deterministic weakly branching 1FT")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.add_argument("--emit-rule-tags", action="store_true")
    p = add("reversibilize", cmd_reversibilize,
            help="reversibilize a deterministic or co-deterministic 1FT")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.add_argument("--trim", action="store_true")
    p = add("uniformize", cmd_uniformize,
            help="uniformize a nondeterministic 2FT")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.add_argument("--stage",
                   choices=["right-oracle", "uniformizer", "follower"])
    p = add("sst2rev", cmd_sst2rev, help="convert a copyless SST")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.add_argument("--trim", action="store_true")
    p = add("ssteval", cmd_ssteval, help="evaluate an SST on a word")
    p.add_argument("machine")
    p.add_argument("--input", required=True)
    p = add("equiv", cmd_equiv, help="brute-force equivalence check")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--max-len", type=int, default=4)
    p = add("uniformcheck", cmd_uniformcheck,
            help="check uniformization on short words")
    p.add_argument("uniformizer")
    p.add_argument("machine")
    p.add_argument("--max-len", type=int, default=4)
    p = add("trim", cmd_trim, help="remove useless states")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p = add("stats", cmd_stats, help="print state/transition counts")
    p.add_argument("machine")
    p = add("dot", cmd_dot, help="DOT export of a machine or run tree")
    p.add_argument("machine")
    p.add_argument("--input")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (RevxdtError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
