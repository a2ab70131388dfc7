"""Graph serialisation and fault-set file parsing."""

from __future__ import annotations

import json
from pathlib import Path

from .graph import ArrangementGraph, Graph

FORMATS = ("json", "dot", "edgelist", "text")


def to_dot(g: Graph, name: str | None = None) -> str:
    if name is None:
        name = f"A_{g.n}_{g.k}" if isinstance(g, ArrangementGraph) else "G"
    lines = [f"graph {name} {{"]
    for v in range(g.num_vertices):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: Graph) -> dict:
    out = {}
    if isinstance(g, ArrangementGraph):
        out.update(n=g.n, k=g.k)
    out["vertices"] = [g.label(v) for v in range(g.num_vertices)]
    out["edges"] = [[u, v] for u, v in g.edges()]
    return out


def to_json(g: Graph) -> str:
    return json.dumps(to_json_dict(g)) + "\n"


def to_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def to_text(g: Graph) -> str:
    return "".join(f"{g.label(v)}: {', '.join(g.label(u) for u in g.neighbors(v))}\n"
                   for v in range(g.num_vertices))


def serialize(g: Graph, fmt: str) -> str:
    try:
        writer = {"json": to_json, "dot": to_dot, "edgelist": to_edgelist, "text": to_text}[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}") from None
    return writer(g)


def parse_fault_lines(g: Graph, lines) -> frozenset[int]:
    """Vertex ids for labels given one per line; blank lines and ``#`` comments are skipped."""
    out = set()
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            out.add(g.vertex(line))
    return frozenset(out)


def read_fault_file(g: Graph, path: str | Path) -> frozenset[int]:
    with open(path) as fh:
        return parse_fault_lines(g, fh)


def write_fault_file(g: Graph, faults, path: str | Path) -> None:
    Path(path).write_text("".join(g.label(v) + "\n" for v in sorted(faults)))
