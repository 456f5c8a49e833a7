"""Graphviz DOT export: machine graphs and run trees."""

from __future__ import annotations

from .machine import Transducer, wrap_input
from .semantics import Configuration, successors
from .oracle import enumerate_accepting_runs


def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def machine_to_dot(T: Transducer) -> str:
    lines = ["digraph machine {", "  rankdir=LR;"]
    for s in T.states:
        shape = "circle" if s.polarity == "+" else "box"
        extras = ""
        if s.id == T.initial:
            extras = ", style=bold"
        if s.id == T.final:
            extras = ", peripheries=2"
        lines.append(f'  "{_esc(s.id)}" [shape={shape}{extras}];')
    for t in T.transitions:
        label = t.letter
        if t.output:
            label += " / " + "".join(t.output)
        lines.append(f'  "{_esc(t.source)}" -> "{_esc(t.target)}"'
                     f' [label="{_esc(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_tree_to_dot(T: Transducer, u, max_word_len: int = 8) -> str:
    """The tree of simple initial runs on ⊢u⊣, accepting paths in red."""
    w = wrap_input(u)
    lines = ["digraph runtree {"]
    root = Configuration(T.initial, 0)
    accept = Configuration(T.final, len(w))
    accepting_paths = set()
    for run in enumerate_accepting_runs(T, u, max_word_len=max_word_len):
        confs = run.configurations()
        for i in range(1, len(confs) + 1):
            accepting_paths.add(tuple(confs[:i]))

    counter = [0]

    def node_id():
        counter[0] += 1
        return f"n{counter[0]}"

    def emit(path, name):
        conf = path[-1]
        color = ', color=red, fontcolor=red' if tuple(path) in accepting_paths else ""
        shape = "doublecircle" if conf == accept else "ellipse"
        lines.append(f'  {name} [label="{_esc(conf.state)},{conf.position}"'
                     f', shape={shape}{color}];')
        for nxt, t in successors(T, w, conf):
            if nxt in path:
                continue
            child = node_id()
            edge_color = ' [color=red]' if tuple(path) + (nxt,) in accepting_paths else ""
            lines.append(f'  {name} -> {child}{edge_color};')
            emit(path + [nxt], child)

    emit([root], node_id())
    lines.append("}")
    return "\n".join(lines) + "\n"
