"""Isomorph-free exhaustive generation of r-partite r-graphs.

Enumeration runs over a fixed vertex frame with every part of size
``max_part``; an edge set over that frame stands for the hypergraph with
isolated vertices trimmed, so the classes are exactly the isomorphism
classes of hypergraphs with part sizes <= max_part, up to isolated
vertices.  The group is the product of per-part vertex permutations,
optionally extended by part permutations.

Levels are breadth-first by edge count; each level is deduplicated by a
canonical form, the lexicographically least sorted edge-index tuple over
the group.  Within a level all sets have equal size, so that order is
realized by packing index i with weight 2**(U-1-i) and taking the maximum
packed value over the group.  A hereditary (deletion-closed) restriction
may prune the search; every class at level k+1 has a one-edge-deleted
subclass at level k, so pruned breadth-first extension misses nothing.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

import numpy as np

from .errors import BudgetExceeded
from .hypergraphs import PartiteHypergraph, edges_intersect


class _Frame:
    """Precomputed universe and group action for one (r, part size) frame."""

    def __init__(self, r: int, part_size: int, part_permutations: bool):
        self.r = r
        self.s = part_size
        self.universe = list(itertools.product(range(part_size), repeat=r))
        self.size = len(self.universe)
        if self.size > 64:
            raise BudgetExceeded(
                f"edge universe of {self.size} exceeds the 64-edge frame cap")
        self.index = {e: i for i, e in enumerate(self.universe)}
        self.perms = self._build_group(part_permutations)
        self.weights = (np.uint64(1) << (np.uint64(self.size - 1)
                                         - np.arange(self.size, dtype=np.uint64)))
        inter = np.zeros((self.size, self.size), dtype=bool)
        for i, e in enumerate(self.universe):
            for j, f in enumerate(self.universe):
                inter[i, j] = edges_intersect(e, f)
        self.intersect_masks = [
            sum(1 << j for j in range(self.size) if inter[i, j])
            for i in range(self.size)
        ]

    def _build_group(self, part_permutations: bool) -> np.ndarray:
        r, s = self.r, self.s
        coords = np.array(self.universe, dtype=np.int64)  # (U, r)
        pis = np.array(list(itertools.permutations(range(s))), dtype=np.int64)
        sigmas = (list(itertools.permutations(range(r))) if part_permutations
                  else [tuple(range(r))])
        blocks = []
        for sigma in sigmas:
            # image coordinate j comes from original coordinate sigma^-1(j)
            inv = [0] * r
            for i, j in enumerate(sigma):
                inv[j] = i
            per_coord = [pis[:, coords[:, inv[j]]] for j in range(r)]  # (s!, U)
            grids = np.meshgrid(*(np.arange(len(pis)) for _ in range(r)),
                                indexing="ij")
            image = np.zeros((len(pis),) * r + (self.size,), dtype=np.int64)
            for j in range(r):
                image = image * s + per_coord[j][grids[j]]
            blocks.append(image.reshape(-1, self.size))
        return np.concatenate(blocks, axis=0).astype(np.int16)

    def canonical_key(self, indices) -> int:
        """Packed canonical value of an edge-index set."""
        if not indices:
            return 0
        packed = self.weights[self.perms[:, list(indices)]].sum(axis=1)
        return int(packed.max())

    def decode(self, key: int) -> frozenset[int]:
        out = set()
        pos = 0
        while key:
            if key & 1:
                out.add(self.size - 1 - pos)
            key >>= 1
            pos += 1
        return frozenset(out)

    def materialize(self, key: int) -> PartiteHypergraph:
        return PartiteHypergraph(
            (self.s,) * self.r,
            frozenset(self.universe[i] for i in self.decode(key)))


def enumerate_hypergraphs(
    r: int,
    max_part: int,
    *,
    max_edges: int | None = None,
    intersecting_only: bool = False,
    part_permutations: bool = False,
    hereditary: Callable[[PartiteHypergraph], bool] | None = None,
    predicate: Callable[[PartiteHypergraph], bool] | None = None,
    max_classes: int = 2_000_000,
) -> Iterator[PartiteHypergraph]:
    """Yield one representative per isomorphism class, by edge count.

    ``intersecting_only`` restricts to pairwise-intersecting edge sets (a
    hereditary property, handled by a fast bitmask path).  ``hereditary``
    is a general deletion-closed restriction; ``predicate`` is a final
    filter and does not affect the search.
    """
    frame = _Frame(r, max_part, part_permutations)
    cap = frame.size if max_edges is None else min(max_edges, frame.size)

    def passes_hereditary(key: int) -> bool:
        return hereditary is None or hereditary(frame.materialize(key))

    emitted = 1
    current: dict[int, frozenset[int]] = {}
    if passes_hereditary(0):
        current[0] = frozenset()
        h = frame.materialize(0)
        if predicate is None or predicate(h):
            yield h

    level = 0
    while current and level < cap:
        level += 1
        nxt: dict[int, frozenset[int]] = {}
        for rep in current.values():
            if intersecting_only:
                allowed = (1 << frame.size) - 1
                for i in rep:
                    allowed &= frame.intersect_masks[i]
            candidates = (
                i for i in range(frame.size)
                if i not in rep and (not intersecting_only or (allowed >> i) & 1))
            for i in candidates:
                child = rep | {i}
                key = frame.canonical_key(child)
                if key in nxt:
                    continue
                if hereditary is not None and not passes_hereditary(key):
                    continue
                nxt[key] = frame.decode(key)
        emitted += len(nxt)
        if emitted > max_classes:
            raise BudgetExceeded(
                f"class budget of {max_classes} exceeded", budget=max_classes)
        for key in sorted(nxt):
            h = frame.materialize(key)
            if predicate is None or predicate(h):
                yield h
        current = nxt


def count_classes_naive(
    r: int,
    max_part: int,
    *,
    max_edges: int | None = None,
    part_permutations: bool = False,
    predicate: Callable[[PartiteHypergraph], bool] | None = None,
) -> int:
    """Independent class count: scan all edge subsets, canonicalize each
    with the pure-Python tuple canonical form, count distinct keys.

    Only viable for tiny universes; used to cross-check the generator.
    """
    universe = list(itertools.product(range(max_part), repeat=r))
    if len(universe) > 20:
        raise BudgetExceeded("naive scan limited to 2**20 subsets")
    cap = len(universe) if max_edges is None else max_edges
    seen = set()
    for k in range(cap + 1):
        for combo in itertools.combinations(universe, k):
            h = PartiteHypergraph((max_part,) * r, frozenset(combo))
            if predicate is not None and not predicate(h):
                continue
            seen.add(h.canonical_key(part_permutations=part_permutations))
    return len(seen)
