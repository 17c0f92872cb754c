"""Text formats.

Coloured-graph format (.cg): first data line ``n r``; one line per edge
``u v colour`` with 0-based vertices and 1-based colours; ``#`` starts a
comment.  Uncoloured graphs carry ``r = 0`` in the header and ``0`` in the
colour column.

Hypergraph format (.hg): first data line ``r s_1 ... s_r`` (part sizes);
one line per edge with r integers, each a 1-based index within its part;
``#`` starts a comment.  JSON exports mirror the same fields.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .graphs import ColouredGraph, Graph
from .hypergraphs import PartiteHypergraph


def _data_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_cg(text: str) -> ColouredGraph | Graph:
    lines = list(_data_lines(text))
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header {lines[0]!r}, expected 'n r'")
    n, r = int(head[0]), int(head[1])
    rows = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line {line!r}")
        rows.append(tuple(int(x) for x in parts))
    colours = {c for _, _, c in rows}
    if r == 0:
        if colours - {0}:
            raise ValueError("uncoloured file (r = 0) has coloured edges")
        return Graph(n, frozenset((min(u, v), max(u, v)) for u, v, _ in rows))
    if 0 in colours:
        raise ValueError("coloured file contains colour 0")
    return ColouredGraph(
        n, r, frozenset((min(u, v), max(u, v), c) for u, v, c in rows))


def write_cg(g: ColouredGraph | Graph) -> str:
    if isinstance(g, ColouredGraph):
        lines = [f"{g.n} {g.r}"]
        lines += [f"{u} {v} {c}" for u, v, c in sorted(g.edges)]
    else:
        lines = [f"{g.n} 0"]
        lines += [f"{u} {v} 0" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def read_cg(path) -> ColouredGraph | Graph:
    return parse_cg(Path(path).read_text())


def save_cg(g, path) -> None:
    Path(path).write_text(write_cg(g))


def parse_hg(text: str) -> PartiteHypergraph:
    lines = list(_data_lines(text))
    if not lines:
        raise ValueError("empty hypergraph file")
    head = [int(x) for x in lines[0].split()]
    if len(head) < 1 or len(head) != head[0] + 1:
        raise ValueError(f"bad header {lines[0]!r}, expected 'r s_1 .. s_r'")
    r, sizes = head[0], tuple(head[1:])
    edges = set()
    for line in lines[1:]:
        entries = [int(x) for x in line.split()]
        if len(entries) != r:
            raise ValueError(f"edge line {line!r} needs {r} entries")
        edges.add(tuple(v - 1 for v in entries))
    return PartiteHypergraph(sizes, frozenset(edges))


def write_hg(h: PartiteHypergraph) -> str:
    lines = [f"{h.r} " + " ".join(str(s) for s in h.part_sizes)]
    lines += [" ".join(str(v + 1) for v in e) for e in h.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_hg(path) -> PartiteHypergraph:
    return parse_hg(Path(path).read_text())


def save_hg(h, path) -> None:
    Path(path).write_text(write_hg(h))


def hypergraph_to_json(h: PartiteHypergraph) -> str:
    return json.dumps(
        {"r": h.r, "part_sizes": list(h.part_sizes),
         "edges": sorted(list(e) for e in h.edges)},
        indent=2, sort_keys=True)


def hypergraph_from_json(text: str) -> PartiteHypergraph:
    data = json.loads(text)
    return PartiteHypergraph(tuple(data["part_sizes"]),
                             frozenset(tuple(e) for e in data["edges"]))


def graph_to_json(g: ColouredGraph | Graph) -> str:
    if isinstance(g, ColouredGraph):
        payload = {"n": g.n, "r": g.r, "edges": sorted(list(e) for e in g.edges)}
    else:
        payload = {"n": g.n, "r": 0, "edges": sorted(list(e) for e in g.edges)}
    return json.dumps(payload, indent=2, sort_keys=True)


def demo_graph() -> ColouredGraph:
    """The packaged 8-vertex, 3-colour worked example."""
    text = resources.files("monocover").joinpath("data/demo8.cg").read_text()
    g = parse_cg(text)
    assert isinstance(g, ColouredGraph)
    return g
