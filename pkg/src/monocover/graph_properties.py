"""Empirical checkers for the near-threshold properties of dense samples.

Each checker verifies a universally quantified statement about one graph:
exhaustively when the number of candidate tuples is within the configured
limit, otherwise on a seeded sample of tuples (the report says which).
Neighbourhoods are closed: N(A) contains A and everything adjacent to it;
for several arguments the sets are intersected.  Thresholds are supplied
by the caller; natural logarithms are the convention throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .graphs import Graph
from .rng import derive_seed, value_u64

_MAX_RECORDED = 10


def _jsonable(value):
    if isinstance(value, (set, frozenset)):
        return [_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class PropertyReport:
    name: str
    ok: bool
    mode: str                    # "exhaustive" | "sampled"
    cases_examined: int
    violations: tuple
    params: dict

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "mode": self.mode,
            "cases_examined": self.cases_examined,
            "violations": [_jsonable(v) for v in self.violations],
            "params": self.params,
        }


def _closed_neighbourhood(adj: list[int], members) -> int:
    mask = 0
    for v in members:
        mask |= adj[v] | (1 << v)
    return mask


def _sample_distinct(seed: int, n: int, size: int) -> tuple[int, ...]:
    """Deterministic distinct sample: walk the seed's stream, skip repeats."""
    out: list[int] = []
    counter = 0
    while len(out) < size:
        v = value_u64(seed, counter) % n
        counter += 1
        if v not in out:
            out.append(v)
    return tuple(sorted(out))


def check_cross_edges(g: Graph, set_size: int, *,
                      exhaustive_limit: int = 10_000_000,
                      samples: int = 20_000, seed: int = 0) -> PropertyReport:
    """Every two disjoint vertex sets of the given size have a crossing edge.

    A violating pair of larger sets contains a violating pair of this exact
    size, so checking one size is enough.
    """
    n = g.n
    adj = g.adjacency_masks()
    params = {"set_size": set_size, "seed": seed}
    violations: list = []

    def crossing(a, b) -> bool:
        mask_b = sum(1 << v for v in b)
        return any(adj[v] & mask_b for v in a)

    if set_size < 1 or 2 * set_size > n:
        return PropertyReport("cross-edges", True, "exhaustive", 0, (),
                              params)
    total = comb(n, set_size) * comb(n - set_size, set_size) // 2
    if total <= exhaustive_limit:
        cases = 0
        for a in itertools.combinations(range(n), set_size):
            rest = [v for v in range(n) if v not in a]
            for b in itertools.combinations(rest, set_size):
                if min(a) > min(b):
                    continue
                cases += 1
                if not crossing(a, b):
                    if len(violations) < _MAX_RECORDED:
                        violations.append((a, b))
        return PropertyReport("cross-edges", not violations, "exhaustive",
                              cases, tuple(violations), params)

    for case in range(samples):
        both = _sample_distinct(derive_seed(seed, 11, case), n, 2 * set_size)
        a, b = both[:set_size], both[set_size:]
        if not crossing(a, b):
            if len(violations) < _MAX_RECORDED:
                violations.append((a, b))
    return PropertyReport("cross-edges", not violations, "sampled", samples,
                          tuple(violations), params)


def check_common_neighbourhood(g: Graph, tuple_size: int, min_size: float, *,
                               exhaustive_limit: int = 10_000_000,
                               samples: int = 20_000,
                               seed: int = 0) -> PropertyReport:
    """Every set of ``tuple_size`` vertices has a common closed
    neighbourhood of at least ``min_size`` vertices."""
    n = g.n
    adj = g.adjacency_masks()
    params = {"tuple_size": tuple_size, "min_size": min_size, "seed": seed}
    violations: list = []

    def common_size(vs) -> int:
        mask = (1 << n) - 1
        for v in vs:
            mask &= adj[v] | (1 << v)
        return mask.bit_count()

    if tuple_size > n:
        return PropertyReport("common-neighbourhood", True, "exhaustive", 0,
                              (), params)
    total = comb(n, tuple_size)
    if total <= exhaustive_limit:
        for vs in itertools.combinations(range(n), tuple_size):
            if common_size(vs) < min_size:
                if len(violations) < _MAX_RECORDED:
                    violations.append((vs, common_size(vs)))
        return PropertyReport("common-neighbourhood", not violations,
                              "exhaustive", total, tuple(violations), params)

    for case in range(samples):
        vs = _sample_distinct(derive_seed(seed, 12, case), n, tuple_size)
        if common_size(vs) < min_size:
            if len(violations) < _MAX_RECORDED:
                violations.append((vs, common_size(vs)))
    return PropertyReport("common-neighbourhood", not violations, "sampled",
                          samples, tuple(violations), params)


def check_neighbourhood_expansion(g: Graph, tuple_size: int, factor: float,
                                  max_set_size: int, *,
                                  exhaustive_limit: int = 10_000_000,
                                  samples: int = 20_000,
                                  seed: int = 0) -> PropertyReport:
    """For every set U up to ``max_set_size`` and every ``tuple_size``
    further vertices, the joint closed neighbourhood N(U) intersected with
    each N({v}) has at least factor * |U| vertices."""
    n = g.n
    adj = g.adjacency_masks()
    max_set_size = max(1, min(max_set_size, n))
    params = {"tuple_size": tuple_size, "factor": factor,
              "max_set_size": max_set_size, "seed": seed}
    violations: list = []

    def joint_size(u_set, vs) -> int:
        mask = _closed_neighbourhood(adj, u_set)
        for v in vs:
            mask &= adj[v] | (1 << v)
        return mask.bit_count()

    if tuple_size > n:
        return PropertyReport("neighbourhood-expansion", True, "exhaustive",
                              0, (), params)
    total = sum(comb(n, u) for u in range(1, max_set_size + 1))
    total *= comb(n, tuple_size)
    if total <= exhaustive_limit:
        cases = 0
        for u_size in range(1, max_set_size + 1):
            for u_set in itertools.combinations(range(n), u_size):
                for vs in itertools.combinations(range(n), tuple_size):
                    cases += 1
                    if joint_size(u_set, vs) < factor * u_size:
                        if len(violations) < _MAX_RECORDED:
                            violations.append((u_set, vs))
        return PropertyReport("neighbourhood-expansion", not violations,
                              "exhaustive", cases, tuple(violations), params)

    for case in range(samples):
        s = derive_seed(seed, 13, case)
        u_size = 1 + value_u64(s, 0) % max_set_size
        u_set = _sample_distinct(derive_seed(s, 1), n, u_size)
        vs = _sample_distinct(derive_seed(s, 2), n, tuple_size)
        if joint_size(u_set, vs) < factor * u_size:
            if len(violations) < _MAX_RECORDED:
                violations.append((u_set, vs))
    return PropertyReport("neighbourhood-expansion", not violations,
                          "sampled", samples, tuple(violations), params)
