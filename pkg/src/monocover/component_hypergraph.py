"""Encode a coloured graph as an r-partite hypergraph over its components.

Part i holds one vertex per colour-i monochromatic component that meets a
witness set W, plus one star vertex standing for every colour-i component
disjoint from W.  Each graph vertex u contributes the edge made of the r
components containing u.  Covering the graph by monochromatic components
and covering this hypergraph by vertices are the same problem when W is
the whole vertex set, and shrinking W only makes the hypergraph easier to
cover while keeping part sizes at most |W| + 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .errors import InputNotACover, TargetUnreachable
from .graphs import ColouredGraph, ComponentMap, components
from .hypergraphs import (CoverCertificate, PartiteHypergraph,
                          cover_number, critical_subgraph, is_cover)


@dataclass(frozen=True)
class ComponentHypergraph:
    """The encoding plus both directions of the vertex/component maps."""

    graph: ColouredGraph
    witness: frozenset[int]
    component_map: ComponentMap
    hypergraph: PartiteHypergraph
    # per part, the components meeting W in index order; the star vertex is
    # the next index after them
    part_components: tuple[tuple[frozenset[int], ...], ...]
    # per graph vertex, its hypergraph edge
    edge_image: tuple[tuple[int, ...], ...]

    def star(self, part: int) -> int:
        return len(self.part_components[part])

    @property
    def stars(self) -> tuple[int, ...]:
        return tuple(self.star(i) for i in range(self.graph.r))

    def vertex_of_component(self, colour: int, comp: frozenset[int]) -> int:
        """Hypergraph vertex of a colour-i component (star if it misses W)."""
        part = self.part_components[colour - 1]
        if comp & self.witness:
            return part.index(comp)
        return len(part)

    def component_of_vertex(self, part: int, index: int) -> frozenset[int] | None:
        """Inverse of the component map; None for the star vertex."""
        comps = self.part_components[part]
        return comps[index] if index < len(comps) else None

    def to_json(self) -> str:
        payload = {
            "n": self.graph.n,
            "r": self.graph.r,
            "witness": sorted(self.witness),
            "part_sizes": list(self.hypergraph.part_sizes),
            "stars": list(self.stars),
            "parts": [
                [sorted(c) for c in comps] for comps in self.part_components
            ],
            "edge_image": [list(e) for e in self.edge_image],
            "edges": sorted(list(e) for e in self.hypergraph.edges),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def build_component_hypergraph(g: ColouredGraph,
                               witness=None) -> ComponentHypergraph:
    """Build the encoding for witness set W (defaults to all of V)."""
    w = frozenset(range(g.n)) if witness is None else frozenset(witness)
    if not w <= set(range(g.n)):
        raise ValueError("witness set contains vertices outside the graph")
    cm = components(g)
    part_components = []
    for colour in range(1, g.r + 1):
        meeting = tuple(c for c in cm.colour_components(colour) if c & w)
        part_components.append(meeting)
    part_sizes = tuple(len(pc) + 1 for pc in part_components)

    edge_image = []
    for u in range(g.n):
        edge = []
        for colour in range(1, g.r + 1):
            comp = cm.component_of(colour, u)
            pc = part_components[colour - 1]
            edge.append(pc.index(comp) if comp & w else len(pc))
        edge_image.append(tuple(edge))

    hyper = PartiteHypergraph(part_sizes, frozenset(edge_image))
    return ComponentHypergraph(g, w, cm, hyper, tuple(part_components),
                               tuple(edge_image))


def _require_full_witness(chm: ComponentHypergraph):
    if chm.witness != frozenset(range(chm.graph.n)):
        raise ValueError("this conversion needs the full-witness encoding")


def component_cover_to_vertex_cover(chm: ComponentHypergraph,
                                    family) -> CoverCertificate:
    """Turn a covering family of (colour, component) pairs into an equal-size
    vertex cover of the encoding."""
    _require_full_witness(chm)
    covered: set[int] = set()
    vertices = set()
    for colour, comp in family:
        comps = chm.component_map.colour_components(colour)
        if comp not in comps:
            raise InputNotACover(
                f"{sorted(comp)} is not a colour-{colour} component")
        covered |= comp
        vertices.add((colour - 1, chm.vertex_of_component(colour, comp)))
    if covered != set(range(chm.graph.n)):
        raise InputNotACover("family does not cover the vertex set")
    cert = CoverCertificate(frozenset(vertices)).verified(chm.hypergraph)
    assert cert.status == "valid"
    return cert


def vertex_cover_to_component_cover(chm: ComponentHypergraph, cert):
    """Turn a vertex cover of the encoding into a component cover of the
    graph of at most the same size.

    Star vertices are isolated in the full-witness encoding, so they are
    dropped; the remaining vertices map back to their components.
    """
    _require_full_witness(chm)
    vertices = cert.vertices if isinstance(cert, CoverCertificate) else frozenset(cert)
    if not is_cover(chm.hypergraph, vertices):
        raise InputNotACover("certificate does not cover the hypergraph")
    family = []
    for part, index in sorted(vertices):
        comp = chm.component_of_vertex(part, index)
        if comp is not None:
            family.append((part + 1, comp))
    covered = set().union(*(c for _, c in family)) if family else set()
    if covered != set(range(chm.graph.n)):
        raise InputNotACover("certificate covers only via isolated stars")
    return tuple(family)


def collapse_cover(full: ComponentHypergraph, collapsed: ComponentHypergraph,
                   cert) -> CoverCertificate:
    """Map a cover of the full-witness encoding to a cover of a smaller-W
    encoding of the same coloured graph: components meeting W keep their
    vertex, the rest fall onto the star of their part."""
    if full.graph != collapsed.graph:
        raise ValueError("encodings built from different coloured graphs")
    _require_full_witness(full)
    vertices = cert.vertices if isinstance(cert, CoverCertificate) else frozenset(cert)
    if not is_cover(full.hypergraph, vertices):
        raise InputNotACover("certificate does not cover the full encoding")
    mapped = set()
    for part, index in vertices:
        comp = full.component_of_vertex(part, index)
        if comp is None:
            mapped.add((part, collapsed.star(part)))
        else:
            mapped.add((part, collapsed.vertex_of_component(part + 1, comp)))
    out = CoverCertificate(frozenset(mapped)).verified(collapsed.hypergraph)
    assert out.status == "valid"
    assert len(out.vertices) <= len(vertices)
    return out


def witness_set(g: ColouredGraph, s: int) -> frozenset[int]:
    """A witness set W with |W| <= C(r-1+s, r) whose encoding still needs s
    cover vertices.

    Extract an edge-minimal sub-edge-set of the full encoding with cover
    number >= s, then pick the smallest preimage vertex of each kept edge.
    """
    chm = build_component_hypergraph(g)
    if cover_number(chm.hypergraph) < s:
        raise TargetUnreachable(f"encoding cover number below {s}")
    crit = critical_subgraph(chm.hypergraph, s)
    witness = set()
    for f in crit.sorted_edges():
        witness.add(min(u for u in range(g.n) if chm.edge_image[u] == f))
    assert len(witness) <= comb(g.r - 1 + s, g.r)
    return frozenset(witness)


def most_frequent_edge(chm: ComponentHypergraph, subset):
    """The edge with the most preimages inside ``subset`` (lex tie-break).

    The multiplicity is at least |subset| / (|W| + 1) ** r because the
    encoding has at most (|W| + 1) ** r distinct edges.
    """
    subset = sorted(subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    counts: dict[tuple[int, ...], int] = {}
    for u in subset:
        e = chm.edge_image[u]
        counts[e] = counts.get(e, 0) + 1
    best = min(counts, key=lambda e: (-counts[e], e))
    bound = len(subset) / (len(chm.witness) + 1) ** chm.graph.r
    assert counts[best] >= bound
    return best, counts[best]
