"""Intersecting k-covers, nested cover chains, and bounded extremal searches.

A hypergraph has intersecting k-covers when a pairwise-intersecting family
S of transversal tuples covers every k-tuple of its edges (a member covers
a tuple when it intersects each tuple edge).  Fixing phi(T) = the first
member of S covering T realizes the functional definition, and conversely
the image of any valid phi is such a family, so the extensional form loses
nothing.  Tuples are read as multisets: checking all supports of size
min(k, |E|) covers every tuple with repetition.

A cover chain H_0 >= H_1 >= ... >= H_m (k given) asserts:
  P1  every (k-1)-tuple of H_0 is intersected by a single edge of H_m;
  P2  every (k-1)-tuple of H_0 plus an edge of H_i is intersected by a
      single edge of H_{i+1}, for each i < m;
  P3  the edges of H_m pairwise intersect.

Duplicate-level lemma (used by the search): if H_i = H_{i+1}, dropping one
copy preserves P1-P3, and duplicating any level preserves them; hence a
chain exists iff one exists with m <= |E(H_0)|.  The search runs over
candidate bottom levels B: a chain ending at B exists iff B satisfies P1
and P3, B is contained in PRE(B), and iterating PRE reaches the full edge
set, where PRE(B) holds the edges e such that every (k-1)-tuple joined
with e is intersected by some member of B.  PRE is monotone and the
iteration is the fastest possible ascent, so it also yields the minimal m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .component_hypergraph import ComponentHypergraph
from .errors import (ArityTooSmall, BudgetExceeded, ContradictionError,
                     CounterexampleFound, PreconditionViolated)
from .hypergraphs import (PartiteHypergraph, cover_number, edges_intersect,
                          four_disjoint_edges, is_pairwise_intersecting,
                          max_matching, parity_quad)


# ---------------------------------------------------------------------------
# Cover families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverFamily:
    """Pairwise-intersecting family meant to cover every k-tuple of edges.

    ``strict`` mode requires members to be edges of the host; ``augmented``
    mode lets members be any transversal tuples over the host's parts.
    """

    host: PartiteHypergraph
    k: int
    family: frozenset[tuple[int, ...]]
    mode: str = "strict"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.mode not in ("strict", "augmented"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for f in self.family:
            if len(f) != self.host.r or any(
                    not 0 <= v < s for v, s in zip(f, self.host.part_sizes)):
                raise ValueError(f"{f} is not a transversal over the parts")

    def phi(self, edges: Iterable[tuple[int, ...]]) -> tuple[int, ...]:
        """First family member covering the given edges."""
        edges = list(edges)
        for f in sorted(self.family):
            if all(edges_intersect(f, e) for e in edges):
                return f
        raise PreconditionViolated("no family member covers the tuple",
                                   witness=tuple(edges))


def _tuple_size(k: int, edge_count: int) -> int:
    return min(k, edge_count)


def check_cover_family(cf: CoverFamily):
    """Validate a family; (True, None) or (False, tagged counterexample).

    On success the host provably has no matching of 2r disjoint edges (two
    disjoint half-matchings would force disjoint covers), which is asserted.
    """
    family = sorted(cf.family)
    if cf.mode == "strict":
        for f in family:
            if f not in cf.host.edges:
                return False, ("member-not-an-edge", f)
    for f, g in itertools.combinations(family, 2):
        if not edges_intersect(f, g):
            return False, ("members-disjoint", (f, g))
    edges = cf.host.sorted_edges()
    t = _tuple_size(cf.k, len(edges))
    if edges:
        for combo in itertools.combinations(edges, t):
            if not any(all(edges_intersect(f, e) for e in combo)
                       for f in family):
                return False, ("uncovered-tuple", combo)
    assert len(max_matching(cf.host)) < 2 * cf.host.r
    return True, None


def search_cover_family(host: PartiteHypergraph, k: int, mode: str = "strict",
                        *, budget: int = 2_000_000) -> CoverFamily | None:
    """Find a valid family or prove none exists in the given mode.

    Exhaustive: branch over the uncovered tuples in order, trying every
    universe member that covers the tuple and intersects the members chosen
    so far.
    """
    edges = host.sorted_edges()
    if mode == "strict":
        universe = edges
    else:
        universe = sorted(host.transversal_tuples())
    t = _tuple_size(k, len(edges))
    tuples = list(itertools.combinations(edges, t)) if edges else []
    candidates = [
        [f for f in universe if all(edges_intersect(f, e) for e in combo)]
        for combo in tuples
    ]
    nodes = 0

    def dfs(i: int, chosen: list) -> list | None:
        nonlocal nodes
        if i == len(tuples):
            return chosen
        combo = tuples[i]
        if any(all(edges_intersect(f, e) for e in combo) for f in chosen):
            return dfs(i + 1, chosen)
        for f in candidates[i]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(
                    f"family search budget of {budget} exhausted",
                    budget=budget)
            if all(edges_intersect(f, g) for g in chosen):
                found = dfs(i + 1, chosen + [f])
                if found is not None:
                    return found
        return None

    chosen = dfs(0, [])
    if chosen is None:
        return None
    cf = CoverFamily(host, k, frozenset(chosen), mode)
    ok, counterexample = check_cover_family(cf)
    assert ok, counterexample
    return cf


def four_disjoint_cover_family() -> CoverFamily:
    """The classic augmented 3-cover family for four disjoint edges.

    Any pair of members intersect, and dropping any edge of the host leaves
    three edges covered by one member; together with cover number 4 of the
    host this certifies that 3-tuple covers cannot force cover number 3.
    """
    return CoverFamily(
        four_disjoint_edges(), 3,
        frozenset({(0, 1, 2), (0, 1, 3), (0, 3, 2), (3, 1, 2)}),
        mode="augmented")


# ---------------------------------------------------------------------------
# Cover chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverChain:
    """Nested levels over a host's edge set; levels[0] is the top."""

    host: PartiteHypergraph
    k: int
    levels: tuple[frozenset[tuple[int, ...]], ...]

    def __post_init__(self):
        if self.k < self.host.r:
            raise ArityTooSmall(
                f"chain arity {self.k} below part count {self.host.r}")
        if not self.levels:
            raise ValueError("a chain needs at least one level")
        for level in self.levels:
            if not level <= self.host.edges:
                raise ValueError("levels must be subsets of the host edges")
        for upper, lower in zip(self.levels, self.levels[1:]):
            if not lower <= upper:
                raise ValueError("levels must be nested downward")

    @property
    def m(self) -> int:
        return len(self.levels) - 1


def _chain_properties(chain: CoverChain) -> dict:
    """P1/P2/P3 verdicts with a witness for the first failure of each."""
    top = sorted(chain.levels[0])
    bottom = chain.levels[-1]
    t = _tuple_size(chain.k - 1, len(top))
    tuples = list(itertools.combinations(top, t)) if top else []

    report: dict = {}

    witness = None
    for combo in tuples:
        if not any(all(edges_intersect(e, f) for f in combo) for e in bottom):
            witness = combo
            break
    report["P1"] = (witness is None, witness)

    witness = None
    for i in range(chain.m):
        for e_extra in sorted(chain.levels[i]):
            for combo in tuples:
                need = combo + (e_extra,)
                if not any(all(edges_intersect(f, e) for e in need)
                           for f in chain.levels[i + 1]):
                    witness = (i, combo, e_extra)
                    break
            if witness:
                break
        if witness:
            break
    report["P2"] = (witness is None, witness)

    witness = None
    for e, f in itertools.combinations(sorted(bottom), 2):
        if not edges_intersect(e, f):
            witness = (e, f)
            break
    report["P3"] = (witness is None, witness)
    return report


def check_chain(chain: CoverChain):
    """Exhaustively verify P1-P3; (True, None) or (False, (property, witness)).

    When a chain with arity k equal to the part count r is accepted, the
    top level provably has cover number at most r**2; that bound is
    asserted on every accept and a violation raises ContradictionError.
    """
    report = _chain_properties(chain)
    for name in ("P1", "P2", "P3"):
        ok, witness = report[name]
        if not ok:
            return False, (name, witness)
    r = chain.host.r
    if chain.k == r:
        tau = cover_number(chain.host.with_edges(chain.levels[0]))
        if tau > r * r:
            raise ContradictionError(
                f"accepted chain with arity {r} but cover number {tau} > r^2")
    return True, None


def search_chain(h0: PartiteHypergraph, k: int, max_m: int | None = None, *,
                 budget: int = 2_000_000) -> CoverChain | None:
    """Find nested levels satisfying P1-P3, or prove none exist.

    Candidate bottom levels are the pairwise-intersecting subfamilies, in
    lexicographic order; each is screened by P1 and then lifted by the PRE
    iteration described in the module docstring.  max_m defaults to the
    edge count, which suffices by the duplicate-level lemma.
    """
    if k < h0.r:
        raise ArityTooSmall(f"arity {k} below part count {h0.r}")
    edges = h0.sorted_edges()
    n = len(edges)
    if n == 0:
        return CoverChain(h0, k, (frozenset(), frozenset()))
    cap_m = n if max_m is None else max_m
    rows = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if edges_intersect(edges[i], edges[j]):
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    for i in range(n):
        rows[i] |= 1 << i
    full = (1 << n) - 1
    t = _tuple_size(k - 1, n)
    tuple_masks = [sum(1 << i for i in combo)
                   for combo in itertools.combinations(range(n), t)]

    def hits_all(member: int, requirement: int) -> bool:
        return requirement & ~rows[member] == 0

    def p1_holds(b_list: list[int]) -> bool:
        return all(any(hits_all(e, m) for e in b_list) for m in tuple_masks)

    def pre(level_list: list[int]) -> int:
        mask = 0
        for e in range(n):
            bit = 1 << e
            if all(any(hits_all(f, m | bit) for f in level_list)
                   for m in tuple_masks):
                mask |= bit
        return mask

    def lift(b_mask: int) -> list[int] | None:
        """Masks of the maximal ascent from the bottom level to the full
        edge set, or None when it stalls early or overruns max_m."""
        seq = [b_mask]
        cur = b_mask
        while cur != full:
            nxt = pre([i for i in range(n) if cur >> i & 1])
            if nxt & cur != cur or nxt == cur:
                return None
            seq.append(nxt)
            cur = nxt
            if len(seq) - 1 > cap_m:
                return None
        return seq

    nodes = 0

    def candidates(start: int, chosen: list[int], allowed: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(
                f"chain search budget of {budget} exhausted", budget=budget)
        if chosen and p1_holds(chosen):
            b_mask = sum(1 << i for i in chosen)
            seq = lift(b_mask)
            if seq is not None:
                return seq
        for i in range(start, n):
            if allowed >> i & 1:
                found = candidates(i + 1, chosen + [i],
                                   allowed & rows[i])
                if found is not None:
                    return found
        return None

    seq = candidates(0, [], full)
    if seq is None:
        return None
    if len(seq) == 1:
        seq = seq + seq  # the definition wants m >= 1
    levels = tuple(
        frozenset(edges[i] for i in range(n) if mask >> i & 1)
        for mask in reversed(seq))
    chain = CoverChain(h0, k, levels)
    ok, counterexample = check_chain(chain)
    assert ok, counterexample
    return chain


def multiplicity_level_chain(chm: ComponentHypergraph, k: int,
                             thresholds: Iterable[float]):
    """Chain whose level i keeps the edges with at least thresholds[i-1]
    preimage vertices; returns (chain, property report).

    The properties are typical-case claims about dense samples, so
    failures are reported rather than raised.
    """
    thresholds = list(thresholds)
    if any(t <= 0 for t in thresholds):
        raise ValueError("thresholds must be positive")
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise ValueError("thresholds must be strictly increasing")
    mult: dict[tuple[int, ...], int] = {}
    for e in chm.edge_image:
        mult[e] = mult.get(e, 0) + 1
    levels = [frozenset(chm.hypergraph.edges)]
    for bound in thresholds:
        levels.append(frozenset(e for e, c in mult.items() if c >= bound))
    chain = CoverChain(chm.hypergraph, k, tuple(levels))
    return chain, _chain_properties(chain)


# ---------------------------------------------------------------------------
# The pairwise-intersecting trichotomy for three parts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommonVertex:
    vertex: tuple[int, int]


@dataclass(frozen=True)
class CoreTriple:
    vertices: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class ParityQuad:
    isomorphism: tuple[tuple[tuple[int, int], tuple[int, int]], ...]


def classify_intersecting_3graph(h: PartiteHypergraph):
    """Classify a pairwise-intersecting 3-partite 3-graph.

    Exactly one of: all edges share a vertex (CommonVertex); some triple of
    vertices, one per part, meets every edge at least twice (CoreTriple);
    or the non-isolated part is a relabelling of the parity quad
    (ParityQuad, with the relabelling as witness).  Cases are tried in
    that order and the first hit is returned; anything falling through all
    three contradicts the classification and raises ContradictionError.
    """
    if h.r != 3:
        raise PreconditionViolated("classification needs exactly 3 parts",
                                   witness=h.r)
    edges = h.sorted_edges()
    for e, f in itertools.combinations(edges, 2):
        if not edges_intersect(e, f):
            raise PreconditionViolated("edges not pairwise intersecting",
                                       witness=(e, f))

    if not edges:
        return CommonVertex((0, 0))
    common = set((i, edges[0][i]) for i in range(3))
    for e in edges[1:]:
        common &= {(i, e[i]) for i in range(3)}
        if not common:
            break
    if common:
        return CommonVertex(min(common))

    for triple in itertools.product(*(range(s) for s in h.part_sizes)):
        if all(sum(1 for i in range(3) if e[i] == triple[i]) >= 2
               for e in edges):
            return CoreTriple(((0, triple[0]), (1, triple[1]), (2, triple[2])))

    stripped = h.drop_isolated()
    quad = parity_quad()
    if (len(stripped.edges) == 4 and stripped.part_sizes == (2, 2, 2)):
        for sigma in itertools.permutations(range(3)):
            for swaps in itertools.product((0, 1), repeat=3):
                image = frozenset(
                    tuple(e[sigma[j]] ^ swaps[j] for j in range(3))
                    for e in stripped.edges)
                if image == quad.edges:
                    # original (part i, index v) -> quad (part sigma^-1... )
                    mapping = []
                    used = [sorted({e[i] for e in h.edges})
                            for i in range(3)]
                    for i in range(3):
                        j = sigma.index(i)
                        for new, old in enumerate(used[i]):
                            mapping.append(((i, old), (j, new ^ swaps[j])))
                    return ParityQuad(tuple(sorted(mapping)))
    raise ContradictionError(
        "no classification case applies; this contradicts the trichotomy")


# ---------------------------------------------------------------------------
# Bounded extremal computation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchCaps:
    max_part: int
    max_edges: int
    max_classes: int = 2_000_000
    search_budget: int = 2_000_000


@dataclass(frozen=True)
class ExtremalReport:
    quantity: str
    r: int
    parameter: int
    value: int | None
    kind: str                      # "lower-bound" or "value-under-caps"
    caps: SearchCaps
    classes_examined: int
    exhaustive: bool
    certificates: tuple = ()
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "r": self.r,
            "parameter": self.parameter,
            "value": self.value,
            "kind": self.kind,
            "caps": {"max_part": self.caps.max_part,
                     "max_edges": self.caps.max_edges},
            "classes_examined": self.classes_examined,
            "exhaustive": self.exhaustive,
            "certificates": [
                {"part_sizes": list(h.part_sizes),
                 "edges": sorted(list(e) for e in h.edges),
                 "detail": detail}
                for h, detail in self.certificates
            ],
            "notes": self.notes,
        }


def _builtin_witnesses(quantity: str, r: int, k: int):
    """Known certificates outside small enumeration caps."""
    out = []
    if r == 3 and k == 3 and quantity in ("hi", "Hi"):
        cf = four_disjoint_cover_family()
        ok, _ = check_cover_family(cf)
        if ok:
            out.append((cf.host, {"cover_number": cover_number(cf.host),
                                  "family": sorted(list(f) for f in cf.family),
                                  "mode": cf.mode, "k": k}))
    return out


def compute_extremal(quantity: str, r: int, parameter: int,
                     caps: SearchCaps) -> ExtremalReport:
    """Bounded computation of the extremal quantities.

    hi: largest cover number among enumerated hypergraphs with intersecting
    k-covers (k = parameter); Hi: same over chain-coverable hypergraphs for
    any m; kc: least k whose hi value under the caps is at most t
    (t = parameter), reported together with any certificate showing the
    previous k still exceeds t.  Values found under caps are lower bounds
    for hi/Hi; exactness beyond the caps is never claimed.
    """
    from .enumeration import enumerate_hypergraphs

    if quantity not in ("hi", "Hi", "kc"):
        raise ValueError(f"unknown quantity {quantity!r}")

    def accepted_max(k: int):
        if k < r:
            raise ArityTooSmall(f"arity {k} below part count {r}")
        best = None
        certs = []
        examined = 0
        bound_cap = r * (2 * r - 1)
        for h in enumerate_hypergraphs(
                r, caps.max_part, max_edges=caps.max_edges,
                part_permutations=True, max_classes=caps.max_classes):
            examined += 1
            if quantity == "Hi" or quantity == "kc":
                witness = search_chain(h, k, budget=caps.search_budget)
                detail = None if witness is None else {
                    "levels": [sorted(list(e) for e in lvl)
                               for lvl in witness.levels]}
            else:
                family = search_cover_family(h, k, "strict",
                                             budget=caps.search_budget)
                witness = family
                detail = None if family is None else {
                    "family": sorted(list(f) for f in family.family)}
            if witness is None:
                continue
            tau = cover_number(h)
            assert tau <= bound_cap
            if best is None or tau > best:
                best = tau
                certs = [(h, {"cover_number": tau, "k": k, **detail})]
        for h, detail in _builtin_witnesses(quantity, r, k):
            assert detail["cover_number"] <= bound_cap
            if best is None or detail["cover_number"] > best:
                best = detail["cover_number"]
                certs = [(h, detail)]
        return best, certs, examined

    if quantity in ("hi", "Hi"):
        best, certs, examined = accepted_max(parameter)
        return ExtremalReport(
            quantity, r, parameter, best, "lower-bound", caps, examined,
            exhaustive=False, certificates=tuple(certs),
            notes="maximum over the enumerated classes plus built-in "
                  "witnesses; larger instances outside the caps may exist")

    t = parameter
    previous_certs: tuple = ()
    examined_total = 0
    for k in range(r, r + 8):
        best, certs, examined = accepted_max(k)
        examined_total += examined
        if best is None or best <= t:
            return ExtremalReport(
                "kc", r, t, k, "value-under-caps", caps, examined_total,
                exhaustive=False, certificates=previous_certs,
                notes=f"first arity whose accepted maximum under the caps "
                      f"is at most {t}; certificates witness arity {k - 1} "
                      f"still exceeding {t}" if previous_certs else
                      f"first arity whose accepted maximum under the caps "
                      f"is at most {t}")
        previous_certs = tuple(
            (h, d) for h, d in certs if d["cover_number"] > t)
    raise BudgetExceeded("no arity within r .. r+7 settled under the caps")


@dataclass(frozen=True)
class RefutationReport:
    r: int
    k: int
    min_cover: int
    caps: SearchCaps
    classes_examined: int
    candidates_checked: int
    counterexamples: int = 0

    def to_dict(self) -> dict:
        return {
            "r": self.r, "k": self.k, "min_cover": self.min_cover,
            "caps": {"max_part": self.caps.max_part,
                     "max_edges": self.caps.max_edges},
            "classes_examined": self.classes_examined,
            "candidates_checked": self.candidates_checked,
            "counterexamples": self.counterexamples,
        }


def refute_coverability(caps: SearchCaps, *, r: int = 3, k: int = 4,
                        min_cover: int = 4) -> RefutationReport:
    """Search for chain-coverable hypergraphs with a large cover number.

    Enumerates all classes under the caps, keeps those with cover number at
    least ``min_cover`` and requires the chain search to fail on each.  A
    hit raises CounterexampleFound with the full certificate: for r = 3,
    k = 4, min_cover = 4 it would contradict the arity-4 chain bound.
    """
    from .enumeration import enumerate_hypergraphs

    examined = 0
    candidates = 0
    for h in enumerate_hypergraphs(
            r, caps.max_part, max_edges=caps.max_edges,
            part_permutations=True, max_classes=caps.max_classes):
        examined += 1
        if cover_number(h) < min_cover:
            continue
        candidates += 1
        chain = search_chain(h, k, budget=caps.search_budget)
        if chain is not None:
            raise CounterexampleFound(
                f"found a chain-coverable instance with cover number >= "
                f"{min_cover}",
                certificate={"part_sizes": list(h.part_sizes),
                             "edges": sorted(list(e) for e in h.edges),
                             "levels": [sorted(list(e) for e in lvl)
                                        for lvl in chain.levels]})
    return RefutationReport(r, k, min_cover, caps, examined, candidates)
