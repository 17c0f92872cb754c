"""Edge-coloured graphs, monochromatic components and exact component covers.

Vertices are 0 .. n-1.  Colours are 1 .. r.  A monochromatic component is a
connected component of the subgraph formed by the edges of one colour;
isolated vertices count as singleton components in every colour.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, NotFound
from .rng import GENERATOR_NAME, GENERATOR_VERSION, threshold_u64, values_u64


@dataclass(frozen=True)
class SampleInfo:
    """Provenance attached to sampled graphs."""

    n: int
    p: float
    seed: int
    generator: str = f"{GENERATOR_NAME}/{GENERATOR_VERSION}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are (u, v) pairs with u < v."""

    n: int
    edges: frozenset[tuple[int, int]]
    provenance: SampleInfo | None = None

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    def adjacency_masks(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj


@dataclass(frozen=True)
class ColouredGraph:
    """Graph with an r-colouring of its edges: (u, v, colour), u < v."""

    n: int
    r: int
    edges: frozenset[tuple[int, int, int]]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("colour count must be >= 1")
        seen = set()
        for u, v, c in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v})")
            if not (1 <= c <= self.r):
                raise ValueError(f"colour {c} out of range 1..{self.r}")
            if (u, v) in seen:
                raise ValueError(f"pair ({u}, {v}) appears more than once")
            seen.add((u, v))

    def underlying(self) -> Graph:
        return Graph(self.n, frozenset((u, v) for u, v, _ in self.edges))


@dataclass(frozen=True)
class RandomModel:
    """Binomial random graph parameters plus a 64-bit reproducibility key."""

    n: int
    p: float
    seed: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class ComponentMap:
    """Per colour, the partition of V into monochromatic components.

    Components of each colour are ordered by their minimum vertex, which
    fixes a deterministic index for every component.
    """

    n: int
    r: int
    parts: tuple[tuple[frozenset[int], ...], ...]
    _index: tuple[tuple[int, ...], ...] = field(repr=False, hash=False, compare=False)

    def colour_components(self, colour: int) -> tuple[frozenset[int], ...]:
        return self.parts[colour - 1]

    def component_of(self, colour: int, vertex: int) -> frozenset[int]:
        return self.parts[colour - 1][self._index[colour - 1][vertex]]

    def component_index(self, colour: int, vertex: int) -> int:
        return self._index[colour - 1][vertex]


def components(g: ColouredGraph) -> ComponentMap:
    """Exact monochromatic component partition for every colour."""
    parts = []
    index = []
    for colour in range(1, g.r + 1):
        dsu = _DisjointSet(g.n)
        for u, v, c in g.edges:
            if c == colour:
                dsu.union(u, v)
        groups: dict[int, list[int]] = {}
        for v in range(g.n):
            groups.setdefault(dsu.find(v), []).append(v)
        comps = sorted((frozenset(vs) for vs in groups.values()), key=min)
        idx = [0] * g.n
        for i, comp in enumerate(comps):
            for v in comp:
                idx[v] = i
        parts.append(tuple(comps))
        index.append(tuple(idx))
    return ComponentMap(g.n, g.r, tuple(parts), tuple(index))


# ---------------------------------------------------------------------------
# Exact minimum component cover (set cover over the component family)
# ---------------------------------------------------------------------------


def _pack(vertices, n) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _greedy_cover_size(masks: list[int], universe: int) -> int:
    uncovered = universe
    count = 0
    while uncovered:
        best = max(masks, key=lambda m: (m & uncovered).bit_count())
        if best & uncovered == 0:
            return len(masks) + 1  # unreachable for component families
        uncovered &= ~best
        count += 1
    return count


def _packing_lower_bound(masks: list[int], uncovered: int) -> int:
    # Greedy family of uncovered vertices no two of which share a set;
    # each needs its own cover member.
    packed = 0
    count = 0
    rest = uncovered
    while rest:
        v = rest & -rest
        rest &= rest - 1
        if any((m & v) and (m & packed) for m in masks):
            continue
        packed |= v
        count += 1
    return count


def _min_cover_size(masks: list[int], universe: int, cap: int) -> int:
    """Minimum number of masks covering universe, or cap + 1 if above cap."""
    if universe == 0:
        return 0
    best = min(cap + 1, _greedy_cover_size(masks, universe))

    def dfs(uncovered: int, depth: int):
        nonlocal best
        if uncovered == 0:
            best = min(best, depth)
            return
        if depth + max(1, _packing_lower_bound(masks, uncovered)) >= best:
            return
        v = uncovered & -uncovered
        candidates = sorted(
            (m for m in masks if m & v),
            key=lambda m: -(m & uncovered).bit_count(),
        )
        for m in candidates:
            dfs(uncovered & ~m, depth + 1)

    dfs(universe, 0)
    return best


def _component_family(g: ColouredGraph, cm: ComponentMap):
    """Deduplicated (colour, component, mask) family, canonically ordered.

    Identical vertex sets arising in several colours are kept once, under
    their smallest colour.
    """
    by_set: dict[frozenset[int], int] = {}
    for colour in range(1, g.r + 1):
        for comp in cm.colour_components(colour):
            if comp not in by_set:
                by_set[comp] = colour
    family = sorted(((c, comp) for comp, c in by_set.items()),
                    key=lambda item: (item[0], sorted(item[1])))
    return [(c, comp, _pack(comp, g.n)) for c, comp in family]


def tree_cover_number(g: ColouredGraph):
    """Minimum number of monochromatic components covering all vertices.

    Returns (count, family) where family is the lexicographically least
    optimal family of (colour, component) pairs.  Exact: branch and bound
    with a greedy upper bound and a disjoint-packing lower bound.
    """
    if g.n == 0:
        return 0, ()
    cm = components(g)
    family = _component_family(g, cm)
    universe = (1 << g.n) - 1
    masks = [m for _, _, m in family]
    total = _min_cover_size(masks, universe, g.n)

    chosen: list[tuple[int, frozenset[int]]] = []
    uncovered = universe
    start = 0
    while uncovered:
        budget = total - len(chosen) - 1
        for i in range(start, len(family)):
            colour, comp, mask = family[i]
            rest_masks = [m for _, _, m in family[i + 1:]]
            if mask & uncovered == 0:
                continue
            rest = uncovered & ~mask
            if _min_cover_size(rest_masks, rest, budget) <= budget:
                chosen.append((colour, comp))
                uncovered = rest
                start = i + 1
                break
        else:  # pragma: no cover - cannot happen, singletons always cover
            raise AssertionError("component cover construction failed")
    return total, tuple(chosen)


def is_component_cover(g: ColouredGraph, family) -> bool:
    """Independent check that a (colour, vertex set) family covers V(G).

    Each member must be a genuine monochromatic component of its colour.
    """
    cm = components(g)
    covered: set[int] = set()
    for colour, comp in family:
        if not 1 <= colour <= g.r:
            return False
        if comp not in cm.colour_components(colour):
            return False
        covered |= comp
    return covered == set(range(g.n))


def max_tree_cover_number(graph: Graph, r: int, *, budget: int = 500_000,
                          parallelism: int = 1) -> int:
    """Exact max over all r-colourings of the component cover number.

    The first edge's colour is fixed to 1: the quantity is invariant under
    permuting colour names, so every colouring is equivalent to one of the
    enumerated ones.  Raises BudgetExceeded when r**(|E|-1) exceeds budget.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    edges = sorted(graph.edges)
    m = len(edges)
    if m == 0:
        return graph.n
    count = r ** (m - 1)
    if count > budget:
        raise BudgetExceeded(
            f"{count} colourings exceed the budget of {budget}", budget=budget)

    def worst_in(lo: int, hi: int) -> int:
        worst = 0
        colours = [1] * m
        for idx in range(lo, hi):
            x = idx
            for j in range(1, m):
                colours[j] = 1 + x % r
                x //= r
            cg = ColouredGraph(
                graph.n, r,
                frozenset((u, v, colours[j]) for j, (u, v) in enumerate(edges)))
            worst = max(worst, tree_cover_number(cg)[0])
        return worst

    if parallelism <= 1 or count < 64:
        return worst_in(0, count)
    from concurrent.futures import ThreadPoolExecutor

    step = -(-count // parallelism)
    ranges = [(i, min(i + step, count)) for i in range(0, count, step)]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return max(pool.map(lambda span: worst_in(*span), ranges))


# ---------------------------------------------------------------------------
# Seeded sampling
# ---------------------------------------------------------------------------


def sample_gnp(model: RandomModel) -> Graph:
    """Sample a binomial random graph, bit-reproducibly.

    Pair (u, v), u < v, is included iff the stream value at its linear
    upper-triangle index falls below the probability threshold.
    """
    n = model.n
    total = n * (n - 1) // 2
    threshold = threshold_u64(model.p)
    info = SampleInfo(n=n, p=model.p, seed=model.seed)
    if total == 0 or threshold == 0:
        return Graph(n, frozenset(), info)
    draws = values_u64(model.seed, 0, total)
    if threshold >= 1 << 64:
        idx = np.arange(total, dtype=np.int64)
    else:
        idx = np.nonzero(draws < np.uint64(threshold))[0]
    offsets = np.cumsum(np.arange(n - 1, 0, -1))  # offsets[u] = end of row u
    u = np.searchsorted(offsets, idx, side="right")
    row_start = np.concatenate(([0], offsets[:-1]))
    v = idx - row_start[u] + u + 1
    edges = frozenset(zip(u.tolist(), v.tolist()))
    return Graph(n, edges, info)


# ---------------------------------------------------------------------------
# Independent sets with no k-wise common neighbour
# ---------------------------------------------------------------------------


def find_sparse_independent_set(g: Graph, m: int, k: int, *,
                                exhaustive: bool = False,
                                budget: int = 200_000) -> frozenset[int]:
    """Find an independent set S, |S| = m, with no k members sharing a
    common neighbour.

    Deterministic search: vertices are tried in ascending order with
    backtracking.  Raises NotFound on failure; NotFound.exhaustive tells
    whether the whole space was examined (a proof of nonexistence) or the
    node budget ran out first.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if k < 2:
        raise ValueError("k must be >= 2")
    adj = g.adjacency_masks()
    chosen: list[int] = []
    nodes = 0

    def violates(v: int) -> bool:
        if adj[v] & _pack(chosen, g.n):
            return True
        if len(chosen) >= k - 1:
            for subset in itertools.combinations(chosen, k - 1):
                common = adj[v]
                for u in subset:
                    common &= adj[u]
                    if not common:
                        break
                if common:
                    return True
        return False

    def dfs(start: int) -> frozenset[int] | None:
        nonlocal nodes
        if len(chosen) == m:
            return frozenset(chosen)
        for v in range(start, g.n - (m - len(chosen)) + 1):
            nodes += 1
            if not exhaustive and nodes > budget:
                raise NotFound(
                    f"budget of {budget} nodes exhausted", exhaustive=False)
            if violates(v):
                continue
            chosen.append(v)
            found = dfs(v + 1)
            if found is not None:
                return found
            chosen.pop()
        return None

    result = dfs(0)
    if result is None:
        raise NotFound(
            f"no independent {m}-set without a {k}-wise common neighbour",
            exhaustive=True)
    return result
