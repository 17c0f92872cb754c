"""Lower-bound machinery: edge assignments and the colourings they induce.

An edge assignment sends every graph vertex to an edge of a target
hypergraph so that adjacent vertices get intersecting edges.  Colouring
each graph edge by a part where the two images agree produces a colouring
whose component cover number is at least the target's cover number, which
is how lower bounds for random graphs are certified.  The same object,
read through the intersection graph of the target, is exactly a surjective
graph homomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .component_hypergraph import build_component_hypergraph
from .coverability import CoverFamily, check_cover_family
from .errors import (IncompatibleAssignment, PreconditionViolated,
                     RefinementViolation)
from .graphs import ColouredGraph, Graph, tree_cover_number
from .hypergraphs import PartiteHypergraph, cover_number, edges_intersect


@dataclass(frozen=True)
class EdgeAssignment:
    """Total map V(G) -> E(target); mapping[u] is the edge of vertex u.

    ``lemma_ready`` marks assignments that are surjective onto the target's
    edge set and edge-compatible with their graph, the two hypotheses of the
    lower-bound argument.
    """

    target: PartiteHypergraph
    mapping: tuple[tuple[int, ...], ...]
    lemma_ready: bool = False

    def __post_init__(self):
        for e in self.mapping:
            if e not in self.target.edges:
                raise ValueError(f"assigned edge {e} not in the target")

    def is_surjective(self) -> bool:
        return set(self.mapping) == set(self.target.edges)


def find_incompatible_edge(g: Graph, ea: EdgeAssignment):
    """First graph edge whose endpoint images do not intersect, or None."""
    for u, v in sorted(g.edges):
        if not edges_intersect(ea.mapping[u], ea.mapping[v]):
            return (u, v)
    return None


def build_colouring(g: Graph, ea: EdgeAssignment) -> ColouredGraph:
    """Colour every edge by the lowest part where its endpoint images agree."""
    r = ea.target.r
    coloured = set()
    for u, v in sorted(g.edges):
        eu, ev = ea.mapping[u], ea.mapping[v]
        for j in range(r):
            if eu[j] == ev[j]:
                coloured.add((u, v, j + 1))
                break
        else:
            raise IncompatibleAssignment(
                f"images of edge ({u}, {v}) do not intersect", edge=(u, v))
    return ColouredGraph(g.n, r, frozenset(coloured))


@dataclass(frozen=True)
class LowerBoundReport:
    bound: int
    target_cover_number: int
    coloured: ColouredGraph
    family: tuple


def verify_lower_bound(g: Graph, ea: EdgeAssignment) -> LowerBoundReport:
    """Build the colouring, solve the component cover exactly, and check the
    whole argument end to end.

    Checks, exhaustively over vertex pairs and parts, that equal components
    in the built colouring force equal target coordinates; then checks that
    the exact component cover number is at least the target's cover number.
    Either failure contradicts the construction and raises
    RefinementViolation.
    """
    if not ea.is_surjective():
        raise PreconditionViolated("assignment not surjective onto the target")
    bad = find_incompatible_edge(g, ea)
    if bad is not None:
        raise IncompatibleAssignment(
            f"images of edge {bad} do not intersect", edge=bad)
    coloured = build_colouring(g, ea)
    chm = build_component_hypergraph(coloured)
    for u, v in itertools.combinations(range(g.n), 2):
        for j in range(ea.target.r):
            if (chm.edge_image[u][j] == chm.edge_image[v][j]
                    and ea.mapping[u][j] != ea.mapping[v][j]):
                raise RefinementViolation(
                    f"vertices {u}, {v} share a colour-{j + 1} component but "
                    f"map to different part-{j} vertices")
    tau0 = cover_number(ea.target)
    bound, family = tree_cover_number(coloured)
    if bound < tau0:
        raise RefinementViolation(
            f"component cover number {bound} below target cover {tau0}")
    return LowerBoundReport(bound, tau0, coloured, family)


def assignment_from_independent_set(g: Graph, h0: PartiteHypergraph,
                                    independent, covers: CoverFamily,
                                    k: int) -> EdgeAssignment:
    """The bijection-plus-fixed-covers assignment.

    The independent set is mapped bijectively onto the edges of h0 (both in
    ascending order).  Every other vertex has at most k neighbours inside
    the set, and is mapped to the first cover-family member intersecting
    all its neighbours' edges.  The target is the image hypergraph (h0 plus
    the cover edges actually used), so the result is surjective, hence
    lemma-ready; its cover number is at least that of h0.
    """
    iset = sorted(set(independent))
    h0_edges = h0.sorted_edges()
    if len(iset) != len(h0_edges):
        raise PreconditionViolated(
            "independent set size must equal the edge count",
            witness=(len(iset), len(h0_edges)))
    adj = g.adjacency_masks()
    for u, v in itertools.combinations(iset, 2):
        if adj[u] >> v & 1:
            raise PreconditionViolated("set not independent", witness=(u, v))
    for subset in itertools.combinations(iset, k + 1):
        common = (1 << g.n) - 1
        for u in subset:
            common &= adj[u]
        if common:
            raise PreconditionViolated(
                f"{k + 1} set members share a common neighbour",
                witness=(subset, common.bit_length() - 1))
    if covers.host != h0 or covers.k != k:
        raise PreconditionViolated(
            "cover family does not match the hypergraph and arity")
    ok, counterexample = check_cover_family(covers)
    if not ok:
        raise PreconditionViolated("invalid cover family",
                                   witness=counterexample)

    family = sorted(covers.family)
    position = {v: i for i, v in enumerate(iset)}
    mapping: list[tuple[int, ...]] = [None] * g.n
    for v, e in zip(iset, h0_edges):
        mapping[v] = e
    for u in range(g.n):
        if mapping[u] is not None:
            continue
        neighbour_edges = [h0_edges[position[v]] for v in iset
                           if adj[u] >> v & 1]
        phi = next(f for f in family
                   if all(edges_intersect(f, e) for e in neighbour_edges))
        mapping[u] = phi
    target = PartiteHypergraph(h0.part_sizes, frozenset(mapping))
    return EdgeAssignment(target, tuple(mapping), lemma_ready=True)


# ---------------------------------------------------------------------------
# Intersection graphs and surjective homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionGraph:
    """Graph on the edges of a hypergraph; adjacency is edge intersection.

    Every nonempty edge intersects itself, so every node carries a loop.
    """

    nodes: tuple[tuple[int, ...], ...]
    adjacency: frozenset[tuple[int, int]]

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.adjacency

    def is_loop_complete(self) -> bool:
        n = len(self.nodes)
        return all(self.has_edge(i, j)
                   for i in range(n) for j in range(i, n))


def intersection_graph(h: PartiteHypergraph) -> IntersectionGraph:
    nodes = tuple(h.sorted_edges())
    adjacency = {(i, i) for i in range(len(nodes))}
    for i, j in itertools.combinations(range(len(nodes)), 2):
        if edges_intersect(nodes[i], nodes[j]):
            adjacency.add((i, j))
    return IntersectionGraph(nodes, frozenset(adjacency))


def check_surjective_homomorphism(g: Graph, target: IntersectionGraph,
                                  mapping) -> bool:
    """True iff mapping is a surjective homomorphism into the loopy target.

    Loops permit adjacent graph vertices to share an image.  A lemma-ready
    edge assignment is exactly a surjective homomorphism to the
    intersection graph of its target.
    """
    mapping = list(mapping)
    if len(mapping) != g.n:
        raise ValueError("mapping must be total on the vertex set")
    if set(mapping) != set(range(len(target.nodes))):
        return False
    return all(target.has_edge(mapping[u], mapping[v])
               for u, v in g.edges)


def assignment_homomorphism(ea: EdgeAssignment) -> list[int]:
    """The vertex-to-edge-index map realizing an assignment as a
    homomorphism into intersection_graph(ea.target)."""
    nodes = ea.target.sorted_edges()
    index = {e: i for i, e in enumerate(nodes)}
    return [index[e] for e in ea.mapping]
