"""Experiment harness: seeded sweeps, the oracle corpus, and ladder audits.

Every output embeds the canonical spec JSON, its SHA-256, the generator
name/version and the code version, and is byte-identical across reruns and
across parallelism degrees: trials derive their own seeds from (seed, row
index) and results are assembled in row order.  Wall-clock timings are
only recorded on request because they would break byte-identity.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from math import ceil, comb, log

from . import __version__
from .adversarial import (EdgeAssignment, assignment_from_independent_set,
                          find_incompatible_edge, verify_lower_bound)
from .component_hypergraph import (build_component_hypergraph, collapse_cover,
                                   component_cover_to_vertex_cover,
                                   most_frequent_edge,
                                   vertex_cover_to_component_cover,
                                   witness_set)
from .coverability import (CoverFamily, check_cover_family,
                           four_disjoint_cover_family,
                           multiplicity_level_chain)
from .errors import ContradictionError, NotFound, PreconditionViolated
from .graph_properties import (check_common_neighbourhood, check_cross_edges,
                               check_neighbourhood_expansion)
from .graphs import (ColouredGraph, Graph, RandomModel,
                     find_sparse_independent_set, is_component_cover,
                     sample_gnp, tree_cover_number)
from .hypergraphs import cover_number, minimum_cover
from .rng import GENERATOR_NAME, GENERATOR_VERSION, derive_seed, value_u64


@dataclass(frozen=True)
class ExperimentSpec:
    """Fully determines a run given the code version.

    kinds: "adversarial-sweep" (n_values, coefficients, trials, gadget),
    "oracle-corpus" (count, max_n, max_r), "property-audit" (n, r, C; runs
    the property checkers and the multiplicity-ladder audit).
    """

    kind: str
    seed: int
    n_values: tuple[int, ...] = ()
    exponent_denominator: int = 4
    coefficients: tuple[float, ...] = ()
    include_controls: bool = True
    trials: int = 1
    gadget_hypergraph: str | None = None
    gadget_covers: str | None = None
    gadget_k: int = 3
    find_budget: int = 200_000
    count: int = 0
    max_n: int = 8
    max_r: int = 3
    n: int = 0
    r: int = 3
    C: float = 6.0
    property_samples: int = 2_000
    record_timings: bool = False
    output: str | None = None

    def canonical_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True,
                          separators=(",", ":"))

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown spec fields: {sorted(unknown)}")
        coerced = dict(data)
        for key in ("n_values", "coefficients"):
            if key in coerced:
                coerced[key] = tuple(coerced[key])
        return cls(**coerced)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls.from_dict(json.loads(text))


def _header_lines(spec: ExperimentSpec) -> list[str]:
    return [
        f"monocover {spec.kind}",
        f"code_version: {__version__}",
        f"generator: {GENERATOR_NAME}/{GENERATOR_VERSION}",
        f"spec_sha256: {spec.sha256()}",
        f"spec: {spec.canonical_json()}",
    ]


def _header_dict(spec: ExperimentSpec) -> dict:
    return {
        "kind": spec.kind,
        "code_version": __version__,
        "generator": f"{GENERATOR_NAME}/{GENERATOR_VERSION}",
        "spec_sha256": spec.sha256(),
        "spec": json.loads(spec.canonical_json()),
    }


def _load_gadget(spec: ExperimentSpec) -> CoverFamily:
    if spec.gadget_hypergraph is None:
        family = four_disjoint_cover_family()
        if spec.gadget_k != family.k:
            raise ValueError("built-in gadget is a 3-cover family")
        return family
    from .fileio import read_hg

    host = read_hg(spec.gadget_hypergraph)
    if spec.gadget_covers is None:
        raise ValueError("gadget covers file required with a gadget file")
    covers = read_hg(spec.gadget_covers)
    family = CoverFamily(host, spec.gadget_k, covers.edges, mode="augmented")
    ok, counterexample = check_cover_family(family)
    if not ok:
        raise ValueError(f"gadget cover family invalid: {counterexample}")
    return family


def _run_rows(jobs, worker, parallelism: int):
    if parallelism <= 1:
        return [worker(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(worker, jobs))


# ---------------------------------------------------------------------------
# Adversarial sweep
# ---------------------------------------------------------------------------


def _sweep_pressure_points(spec: ExperimentSpec, n: int):
    points = []
    if spec.include_controls:
        points.append(("control-p0", 0.0))
    base = (log(n) / n) ** (1.0 / spec.exponent_denominator)
    for c in spec.coefficients:
        points.append((str(c), min(1.0, c * base)))
    if spec.include_controls:
        points.append(("control-p1", 1.0))
    return points


def run_adversarial_sweep(spec: ExperimentSpec, *, parallelism: int = 1) -> str:
    """Per (n, p, trial): sample, hunt for the sparse independent set, build
    the assignment and record the certified bound.  Returns the CSV text.

    The set finder needs one more than the gadget's cover arity: the
    assignment construction requires that no k+1 set members share a
    common neighbour.
    """
    if spec.kind != "adversarial-sweep":
        raise ValueError(f"spec kind {spec.kind!r} is not adversarial-sweep")
    covers = _load_gadget(spec)
    h0 = covers.host
    m = len(h0.edges)
    k = covers.k

    jobs = []
    for n in spec.n_values:
        for point_index, (label, p) in enumerate(_sweep_pressure_points(spec, n)):
            for trial in range(spec.trials):
                jobs.append((n, label, p, point_index, trial))

    def worker(job):
        n, label, p, point_index, trial = job
        trial_seed = derive_seed(spec.seed, 7, n, point_index, trial)
        started = time.perf_counter()
        g = sample_gnp(RandomModel(n, p, trial_seed))
        found = 0
        bound = ""
        failure = ""
        try:
            iset = find_sparse_independent_set(
                g, m, k + 1, budget=spec.find_budget)
            ea = assignment_from_independent_set(g, h0, iset, covers, k)
            assert find_incompatible_edge(g, ea) is None
            bound = str(cover_number(ea.target))
            found = 1
        except NotFound:
            failure = "independent-set-not-found"
        except PreconditionViolated as exc:
            failure = f"precondition:{exc.name}"
        wall = f"{time.perf_counter() - started:.6f}" if spec.record_timings else ""
        return [str(n), str(p), str(trial_seed), str(trial), str(found),
                bound, wall, failure]

    rows = _run_rows(jobs, worker, parallelism)
    buf = io.StringIO()
    for line in _header_lines(spec):
        buf.write(f"# {line}\r\n")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["n", "p", "seed", "trial", "is_found", "bound_achieved",
                     "wall_time", "failure"])
    writer.writerows(rows)
    return buf.getvalue()


def sweep_success_rates(csv_text: str) -> list[tuple[float, float]]:
    """(p, success rate) per pressure point, in row order."""
    rows = [r for r in csv.reader(io.StringIO(csv_text))
            if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    p_col, found_col = header.index("p"), header.index("is_found")
    out: list[tuple[float, float]] = []
    for p_value, group in itertools.groupby(body, key=lambda r: r[p_col]):
        group = list(group)
        rate = sum(int(r[found_col]) for r in group) / len(group)
        out.append((float(p_value), rate))
    return out


# ---------------------------------------------------------------------------
# Oracle corpus
# ---------------------------------------------------------------------------


def _random_coloured_graph(inst_seed: int, max_n: int,
                           max_r: int) -> ColouredGraph:
    n = 1 + value_u64(inst_seed, 0) % max_n
    r = 2 if max_r <= 2 else 2 + value_u64(inst_seed, 1) % (max_r - 1)
    p = (0.15, 0.3, 0.5, 0.75)[value_u64(inst_seed, 2) % 4]
    g = sample_gnp(RandomModel(n, p, derive_seed(inst_seed, 1)))
    colour_seed = derive_seed(inst_seed, 2)
    edges = frozenset(
        (u, v, 1 + value_u64(colour_seed, i) % r)
        for i, (u, v) in enumerate(sorted(g.edges)))
    return ColouredGraph(n, r, edges)


def _random_vertex_subset(seed: int, n: int) -> frozenset[int]:
    return frozenset(v for v in range(n) if value_u64(seed, v) & 1)


def _shrink_failure(g: ColouredGraph, still_fails) -> ColouredGraph:
    """Greedy one-pass edge deletion keeping the failure alive."""
    edges = sorted(g.edges)
    for e in list(edges):
        trial = ColouredGraph(g.n, g.r,
                              frozenset(x for x in edges if x != e))
        if still_fails(trial):
            g = trial
            edges = sorted(g.edges)
    return g


_ORACLE_CHECKS = (
    "cover_equality", "certificate_valid", "collapse_bound", "witness_bound",
    "edge_images_intersect", "part_size_bound", "frequent_edge_bound",
    "round_trip", "lower_bound_identity",
)


def _oracle_instance(spec: ExperimentSpec, index: int) -> dict:
    inst_seed = derive_seed(spec.seed, 2, index)
    g = _random_coloured_graph(inst_seed, spec.max_n, spec.max_r)
    results = {}

    tcn, family = tree_cover_number(g)
    chm = build_component_hypergraph(g)
    tau, cert = minimum_cover(chm.hypergraph)
    results["cover_equality"] = tcn == tau
    results["certificate_valid"] = (
        is_component_cover(g, family) and len(family) == tcn
        and cert.status == "valid")

    w = _random_vertex_subset(derive_seed(inst_seed, 3), g.n)
    chm_w = build_component_hypergraph(g, w)
    tau_w = cover_number(chm_w.hypergraph)
    collapsed = collapse_cover(chm, chm_w, cert)
    results["collapse_bound"] = (tau_w <= tau
                                 and len(collapsed.vertices) <= len(cert.vertices)
                                 and collapsed.status == "valid")

    witness = witness_set(g, tau)
    chm_witness = build_component_hypergraph(g, witness)
    results["witness_bound"] = (
        len(witness) <= comb(g.r - 1 + tau, g.r)
        and cover_number(chm_witness.hypergraph) >= tau)

    results["edge_images_intersect"] = all(
        any(enc.edge_image[u][j] == enc.edge_image[v][j]
            for j in range(g.r))
        for enc in (chm, chm_w, chm_witness)
        for u, v, _ in g.edges)
    results["part_size_bound"] = all(
        s <= len(enc.witness) + 1
        for enc in (chm_w, chm_witness)
        for s in enc.hypergraph.part_sizes)

    subset = _random_vertex_subset(derive_seed(inst_seed, 4), g.n) or frozenset(range(g.n))
    try:
        most_frequent_edge(chm_w, subset)
        results["frequent_edge_bound"] = True
    except AssertionError:
        results["frequent_edge_bound"] = False

    back = vertex_cover_to_component_cover(chm, cert)
    forward = component_cover_to_vertex_cover(chm, family)
    results["round_trip"] = (len(back) <= len(cert.vertices)
                             and len(forward.vertices) == len(family)
                             and is_component_cover(g, back))

    ea = EdgeAssignment(chm.hypergraph, chm.edge_image, lemma_ready=True)
    report = verify_lower_bound(g.underlying(), ea)
    results["lower_bound_identity"] = report.bound >= report.target_cover_number

    pipeline = {"attempted": False, "verified": False}
    covers = four_disjoint_cover_family()
    if g.n >= 4:
        try:
            iset = find_sparse_independent_set(
                g.underlying(), len(covers.host.edges), covers.k + 1,
                exhaustive=True)
            pipeline["attempted"] = True
            ea2 = assignment_from_independent_set(
                g.underlying(), covers.host, iset, covers, covers.k)
            rep2 = verify_lower_bound(g.underlying(), ea2)
            pipeline["verified"] = rep2.bound >= rep2.target_cover_number
        except (NotFound, PreconditionViolated):
            pass

    failure = None
    if not all(results.values()):
        failing = sorted(name for name, ok in results.items() if not ok)

        def still_fails(candidate: ColouredGraph) -> bool:
            try:
                t, fam = tree_cover_number(candidate)
                enc = build_component_hypergraph(candidate)
                return t != cover_number(enc.hypergraph)
            except Exception:
                return True

        shrunk = g
        if "cover_equality" in failing:
            shrunk = _shrink_failure(g, still_fails)
        failure = {
            "index": index,
            "checks": failing,
            "instance": {"n": shrunk.n, "r": shrunk.r,
                         "edges": sorted(list(e) for e in shrunk.edges)},
        }
    return {"index": index, "results": results, "pipeline": pipeline,
            "failure": failure}


def run_oracle_corpus(spec: ExperimentSpec, *, parallelism: int = 1) -> str:
    """Exact cross-checks of the encoding identities on a pinned random
    corpus; returns the JSON report."""
    if spec.kind != "oracle-corpus":
        raise ValueError(f"spec kind {spec.kind!r} is not oracle-corpus")
    outcomes = _run_rows(range(spec.count),
                         lambda i: _oracle_instance(spec, i), parallelism)
    counts = {name: sum(1 for o in outcomes if o["results"][name])
              for name in _ORACLE_CHECKS}
    payload = {
        "header": _header_dict(spec),
        "instances": spec.count,
        "passes": counts,
        "pipeline": {
            "attempted": sum(1 for o in outcomes if o["pipeline"]["attempted"]),
            "verified": sum(1 for o in outcomes if o["pipeline"]["verified"]),
        },
        "failures": [o["failure"] for o in outcomes if o["failure"]],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Property audit with the multiplicity ladder
# ---------------------------------------------------------------------------


def _ladder_thresholds(n: int, p: float) -> list[float]:
    base = 10 * log(n)
    m = 1
    while base ** (m - 1) < 1 / p:
        m += 1
    thresholds = [base ** i for i in range(1, m - 1)]
    if m >= 2:
        thresholds.append(1 / p)
    thresholds.append(base / p)
    return thresholds


def run_level_ladder_audit(spec: ExperimentSpec) -> str:
    """Sample, colour uniformly, extract a witness-set encoding, build the
    multiplicity ladder and report which chain properties hold, plus the
    seeded property checkers at the matching thresholds.

    Ladder properties are typical-case facts, so failures are report
    content; but if all hold with arity r and the top level's cover number
    exceeded r**2, that would contradict the chain bound and raises.
    """
    if spec.kind != "property-audit":
        raise ValueError(f"spec kind {spec.kind!r} is not property-audit")
    n, r = spec.n, spec.r
    p = min(1.0, spec.C * (log(n) / n) ** (1.0 / r))
    g = sample_gnp(RandomModel(n, p, derive_seed(spec.seed, 3)))
    colour_seed = derive_seed(spec.seed, 4)
    coloured = ColouredGraph(
        n, r,
        frozenset((u, v, 1 + value_u64(colour_seed, i) % r)
                  for i, (u, v) in enumerate(sorted(g.edges))))

    chm_full = build_component_hypergraph(coloured)
    tau_full = cover_number(chm_full.hypergraph)
    witness = witness_set(coloured, tau_full)
    chm_w = build_component_hypergraph(coloured, witness)
    thresholds = _ladder_thresholds(n, p)
    chain, props = multiplicity_level_chain(chm_w, r, thresholds)

    all_hold = all(ok for ok, _ in props.values())
    consistency = None
    if all_hold:
        tau0 = cover_number(chm_w.hypergraph)
        if tau0 > r * r:
            raise ContradictionError(
                f"ladder verified with arity {r} but cover number {tau0}")
        consistency = {"top_cover_number": tau0, "bound": r * r}

    checks = [
        check_cross_edges(
            g, ceil(10 * log(n) / p),
            samples=spec.property_samples, seed=derive_seed(spec.seed, 5)),
        check_common_neighbourhood(
            g, r - 1, spec.C / 2 * log(n) / p,
            samples=spec.property_samples, seed=derive_seed(spec.seed, 6)),
        check_neighbourhood_expansion(
            g, r - 1, spec.C * log(n) / 6, int(1 / p),
            samples=spec.property_samples, seed=derive_seed(spec.seed, 7)),
    ]

    payload = {
        "header": _header_dict(spec),
        "parameters": {"n": n, "r": r, "C": spec.C, "p": p,
                       "thresholds": thresholds},
        "encoding": {
            "full_cover_number": tau_full,
            "witness": sorted(witness),
            "witness_part_sizes": list(chm_w.hypergraph.part_sizes),
            "level_sizes": [len(level) for level in chain.levels],
        },
        "ladder": {name: {"holds": ok,
                          "witness": None if w is None else repr(w)}
                   for name, (ok, w) in props.items()},
        "consistency": consistency,
        "properties": [c.to_dict() for c in checks],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run(spec: ExperimentSpec, *, parallelism: int = 1) -> str:
    """Dispatch a spec to its runner."""
    if spec.kind == "adversarial-sweep":
        return run_adversarial_sweep(spec, parallelism=parallelism)
    if spec.kind == "oracle-corpus":
        return run_oracle_corpus(spec, parallelism=parallelism)
    if spec.kind == "property-audit":
        return run_level_ladder_audit(spec)
    raise ValueError(f"unknown experiment kind {spec.kind!r}")
