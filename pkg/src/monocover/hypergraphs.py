"""r-partite r-uniform hypergraphs: exact covers, matchings, critical subgraphs.

An edge is an r-tuple whose i-th entry indexes a vertex of part i (0-based).
Vertices are addressed as (part, index) pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from math import comb

from .errors import InfeasibleArity, TargetUnreachable


def edges_intersect(e: tuple[int, ...], f: tuple[int, ...]) -> bool:
    return any(a == b for a, b in zip(e, f))


def is_pairwise_intersecting(edges) -> bool:
    edges = list(edges)
    return all(edges_intersect(e, f)
               for e, f in itertools.combinations(edges, 2))


@dataclass(frozen=True)
class PartiteHypergraph:
    """r parts of the given sizes; every edge takes one vertex per part."""

    part_sizes: tuple[int, ...]
    edges: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("need at least 2 parts")
        if any(s < 1 for s in self.part_sizes):
            raise ValueError("part sizes must be positive")
        for e in self.edges:
            if len(e) != self.r:
                raise ValueError(f"edge {e} is not a transversal")
            for i, v in enumerate(e):
                if not 0 <= v < self.part_sizes[i]:
                    raise ValueError(f"edge {e}: index {v} out of part {i}")

    @property
    def r(self) -> int:
        return len(self.part_sizes)

    def vertices(self):
        for i, s in enumerate(self.part_sizes):
            for j in range(s):
                yield (i, j)

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    def with_edges(self, edges) -> "PartiteHypergraph":
        return replace(self, edges=frozenset(edges))

    def transversal_tuples(self):
        """All possible edges over these parts, in lexicographic order."""
        return itertools.product(*(range(s) for s in self.part_sizes))

    def drop_isolated(self) -> "PartiteHypergraph":
        """Reindex each part to its non-isolated vertices (at least one kept)."""
        used = [sorted({e[i] for e in self.edges}) for i in range(self.r)]
        used = [u if u else [0] for u in used]
        remap = [{old: new for new, old in enumerate(u)} for u in used]
        return PartiteHypergraph(
            tuple(len(u) for u in used),
            frozenset(tuple(remap[i][e[i]] for i in range(self.r))
                      for e in self.edges))

    def canonical_key(self, *, part_permutations: bool = False,
                      ignore_isolated: bool = False):
        """Least (part sizes, sorted edge list) over the relabelling group.

        With part_permutations the group also reorders parts; isomorphism of
        two hypergraphs (under the chosen flags) is equality of keys.
        """
        h = self.drop_isolated() if ignore_isolated else self
        sigmas = (itertools.permutations(range(h.r)) if part_permutations
                  else [tuple(range(h.r))])
        best = None
        for sigma in sigmas:
            sizes = tuple(h.part_sizes[sigma[j]] for j in range(h.r))
            for pis in itertools.product(
                    *(itertools.permutations(range(h.part_sizes[sigma[j]]))
                      for j in range(h.r))):
                relabelled = tuple(sorted(
                    tuple(pis[j][e[sigma[j]]] for j in range(h.r))
                    for e in h.edges))
                key = (sizes, relabelled)
                if best is None or key < best:
                    best = key
        return best


@dataclass(frozen=True)
class CoverCertificate:
    """A vertex set claimed to cover a hypergraph; (part, index) pairs."""

    vertices: frozenset[tuple[int, int]]
    status: str = "unverified"  # unverified | valid | invalid

    def verified(self, h: PartiteHypergraph) -> "CoverCertificate":
        ok = is_cover(h, self.vertices)
        return replace(self, status="valid" if ok else "invalid")


def is_cover(h: PartiteHypergraph, vertices) -> bool:
    """Independent checker: every edge contains a listed vertex."""
    vset = set(vertices)
    for e in h.edges:
        if not any((i, v) in vset for i, v in enumerate(e)):
            return False
    return True


# ---------------------------------------------------------------------------
# Exact vertex cover
# ---------------------------------------------------------------------------


def _vertex_bits(h: PartiteHypergraph):
    offsets = [0]
    for s in h.part_sizes:
        offsets.append(offsets[-1] + s)
    return offsets


def _edge_masks(h: PartiteHypergraph, edges=None):
    offsets = _vertex_bits(h)
    out = []
    for e in sorted(edges if edges is not None else h.edges):
        mask = 0
        for i, v in enumerate(e):
            mask |= 1 << (offsets[i] + v)
        out.append((e, mask))
    return out


def _packing_bound(masks: list[int]) -> int:
    packed = 0
    count = 0
    for m in masks:
        if m & packed == 0:
            packed |= m
            count += 1
    return count


def _min_cover_bnb(masks: list[int], allowed: int, cap: int) -> int:
    """Exact minimum hitting set size over bit masks, or cap + 1 if larger.

    Only vertices inside ``allowed`` may be chosen; an edge with no allowed
    vertex makes the instance infeasible.
    """
    best = cap + 1

    def dfs(remaining: list[int], depth: int):
        nonlocal best
        if not remaining:
            best = min(best, depth)
            return
        if depth + _packing_bound(remaining) >= best:
            return
        edge = remaining[0]
        choices = edge & allowed
        while choices:
            bit = choices & -choices
            choices &= choices - 1
            dfs([m for m in remaining if m & bit == 0], depth + 1)

    dfs(masks, 0)
    return best


def cover_number(h: PartiteHypergraph) -> int:
    """Exact vertex cover number."""
    masks = [m for _, m in _edge_masks(h)]
    total = sum(h.part_sizes)
    return _min_cover_bnb(masks, (1 << total) - 1, min(h.part_sizes))


def minimum_cover(h: PartiteHypergraph):
    """Exact minimum cover: (size, certificate).

    The certificate is the lexicographically least optimal cover under the
    (part, index) vertex order, so golden outputs are stable.
    """
    offsets = _vertex_bits(h)
    masks = [m for _, m in _edge_masks(h)]
    total = offsets[-1]
    full = (1 << total) - 1
    t = _min_cover_bnb(masks, full, min(h.part_sizes) if h.part_sizes else 0)
    vertices = [(i, j) for i, s in enumerate(h.part_sizes) for j in range(s)]
    chosen: list[tuple[int, int]] = []
    remaining = masks
    allowed_from = 0
    while remaining:
        budget = t - len(chosen) - 1
        for idx in range(allowed_from, total):
            bit = 1 << idx
            rest = [m for m in remaining if m & bit == 0]
            above = full & ~((bit << 1) - 1)
            if _min_cover_bnb(rest, above, budget) <= budget:
                chosen.append(vertices[idx])
                remaining = rest
                allowed_from = idx + 1
                break
        else:  # pragma: no cover - t is exact, a completion always exists
            raise AssertionError("cover reconstruction failed")
    cert = CoverCertificate(frozenset(chosen)).verified(h)
    assert cert.status == "valid"
    return t, cert


# ---------------------------------------------------------------------------
# Matchings
# ---------------------------------------------------------------------------


def _bipartite_max_matching(pairs: list[tuple[int, int]],
                            forbidden=frozenset()) -> int:
    """Kuhn's augmenting paths on a bipartite edge list (left, right)."""
    use = [p for p in pairs if p not in forbidden]
    lefts = sorted({a for a, _ in use})
    adj = {a: sorted(b for x, b in use if x == a) for a in lefts}
    match_right: dict[int, int] = {}

    def augment(a, seen) -> bool:
        for b in adj[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match_right or augment(match_right[b], seen):
                match_right[b] = a
                return True
        return False

    size = 0
    for a in lefts:
        if augment(a, set()):
            size += 1
    return size


def _max_matching_size(masks: list[int]) -> int:
    """Exact maximum number of pairwise disjoint masks, branch and bound."""
    best = 0

    def dfs(i: int, used: int, count: int, rest: int):
        nonlocal best
        best = max(best, count)
        if count + rest <= best:
            return
        for j in range(i, len(masks)):
            if masks[j] & used == 0:
                dfs(j + 1, used | masks[j], count + 1, rest - (j - i))
        return

    dfs(0, 0, 0, len(masks))
    return best


def max_matching(h: PartiteHypergraph) -> tuple[tuple[int, ...], ...]:
    """A maximum set of pairwise disjoint edges.

    Exact; augmenting paths when r = 2, branch and bound otherwise.  Returns
    the lexicographically least maximum matching.
    """
    pairs = _edge_masks(h)
    if not pairs:
        return ()

    if h.r == 2:
        def size_of(chosen_masks, start):
            used = 0
            for m in chosen_masks:
                used |= m
            avail = [e for e, m in pairs[start:] if m & used == 0]
            return _bipartite_max_matching([(e[0], e[1]) for e in avail])
    else:
        def size_of(chosen_masks, start):
            used = 0
            for m in chosen_masks:
                used |= m
            return _max_matching_size(
                [m for _, m in pairs[start:] if m & used == 0])

    target = size_of([], 0)
    chosen: list[tuple[int, ...]] = []
    chosen_masks: list[int] = []
    start = 0
    while len(chosen) < target:
        for i in range(start, len(pairs)):
            e, m = pairs[i]
            if any(m & cm for cm in chosen_masks):
                continue
            if 1 + size_of(chosen_masks + [m], i + 1) == target - len(chosen):
                chosen.append(e)
                chosen_masks.append(m)
                start = i + 1
                break
        else:  # pragma: no cover
            raise AssertionError("matching reconstruction failed")
    return tuple(chosen)


def skew_matching(h: PartiteHypergraph, t_set, a_part: int):
    """cover_number(h) - |t_set| edges disjoint from t_set that pairwise
    intersect only inside part ``a_part``.

    Project the edges avoiding t_set onto the two other parts, take a
    matching of the required size in that bipartite graph (it exists: t_set
    plus a cover of the projection covers h), and lift each pair back to its
    lexicographically least preimage edge.
    """
    if h.r != 3:
        raise InfeasibleArity("skew matchings are defined for 3 parts")
    t_set = frozenset(t_set)
    tau = cover_number(h)
    if len(t_set) > tau:
        raise ValueError("t_set larger than the cover number")
    need = tau - len(t_set)
    others = [i for i in range(3) if i != a_part]
    avoid = {(i, v) for (i, v) in t_set}
    usable = [e for e in h.sorted_edges()
              if not any((i, e[i]) in avoid for i in range(3))]
    projection = sorted({(e[others[0]], e[others[1]]) for e in usable})

    full = _bipartite_max_matching(projection)
    if full < need:  # pragma: no cover - contradicts the duality argument
        raise AssertionError("projection matching smaller than guaranteed")

    chosen: list[tuple[int, int]] = []

    def achievable(fixed, start):
        used_l = {a for a, _ in fixed}
        used_r = {b for _, b in fixed}
        rest = [p for p in projection[start:]
                if p[0] not in used_l and p[1] not in used_r]
        return len(fixed) + _bipartite_max_matching(rest)

    start = 0
    while len(chosen) < need:
        for i in range(start, len(projection)):
            a, b = projection[i]
            if any(a == x or b == y for x, y in chosen):
                continue
            if achievable(chosen + [(a, b)], i + 1) >= need:
                chosen.append((a, b))
                start = i + 1
                break
        else:  # pragma: no cover
            raise AssertionError("skew matching reconstruction failed")

    result = []
    for a, b in chosen:
        lifted = min(e for e in usable
                     if e[others[0]] == a and e[others[1]] == b)
        result.append(lifted)
    return tuple(sorted(result))


# ---------------------------------------------------------------------------
# Critical subgraphs
# ---------------------------------------------------------------------------


def critical_subgraph(h: PartiteHypergraph, t: int) -> PartiteHypergraph:
    """Edge-minimal sub-edge-set F with cover number >= t.

    Greedy deletion in lexicographic edge order, re-solving the cover number
    exactly at each step.  Once an edge becomes undeletable it stays so as
    the family shrinks, so one pass reaches edge-minimality; a set-pair
    bound then caps |F| at C(r + t - 1, r).
    """
    if cover_number(h) < t:
        raise TargetUnreachable(f"cover number below target {t}")
    kept = h.sorted_edges()
    for e in list(kept):
        trial = [f for f in kept if f != e]
        if cover_number(h.with_edges(trial)) >= t:
            kept = trial
    result = h.with_edges(kept)
    assert len(kept) <= comb(h.r + t - 1, h.r)
    return result


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


def parity_quad() -> PartiteHypergraph:
    """The four odd-parity transversals of three binary parts.

    Pairwise intersecting, no common vertex, no triple meeting every edge
    twice; cover number 2.  Any transversal tuple meeting all four edges is
    one of them.
    """
    return PartiteHypergraph(
        (2, 2, 2),
        frozenset({(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)}))


def four_disjoint_edges() -> PartiteHypergraph:
    """Four pairwise disjoint edges on three parts of size four."""
    return PartiteHypergraph(
        (4, 4, 4), frozenset({(i, i, i) for i in range(4)}))
