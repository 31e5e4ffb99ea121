"""Exhaustive theorem sweeps, randomized suites and their reports.

Enumeration-backed sweeps walk the canonical generation tree level by level
with a hereditary prune, so "all graphs up to n" is covered exactly once per
isomorphism class while only the relevant hereditary class is materialized.
Work is partitioned by parent graph; partial results merge associatively and
violations are canonically sorted, so serial and parallel runs produce the
same canonical report.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass, field
from multiprocessing import get_context

from .detectors import (
    WheelClass,
    classify_against_hole,
    dirac_order,
    find_even_wheel,
    find_hole,
    find_prism,
    find_theta,
    has_clique,
    in_class_e,
)
from .enumeration import expand_children
from .errors import ContractViolation
from .finders import extract_induced_from_blurry
from .graphs import SimpleGraph, add_vertex, bits, write_graph6
from .ktrees import KTree, embed_in_ktree, validate_embedding, validate_ktree
from .minors import eligible_pairs, thm32_instances, triangle_minor
from .predicates import BlurryWitness, verify_blurry

REPORT_SCHEMA = "obstruction-lab/report-v1"


def default_threads() -> int:
    env = os.environ.get("OBSTRUCTION_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class SweepReport:
    """Outcome of one sweep; a non-empty violation list is build-failing."""

    name: str
    max_n: int
    graphs_examined: int = 0
    instances_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, include_wall: bool = True) -> dict:
        out = {
            "schema": REPORT_SCHEMA,
            "sweep": self.name,
            "max_n": self.max_n,
            "graphs_examined": self.graphs_examined,
            "instances_checked": self.instances_checked,
            "violations": self.violations,
            "findings": self.findings,
            "details": self.details,
        }
        if include_wall:
            out["wall_time_s"] = round(self.wall_time_s, 3)
        return out

    def canonical_json(self) -> str:
        """Deterministic payload: wall time stripped, entries sorted."""
        out = self.to_dict(include_wall=False)
        out["violations"] = sorted(out["violations"], key=lambda v: json.dumps(v, sort_keys=True))
        out["findings"] = sorted(out["findings"], key=lambda v: json.dumps(v, sort_keys=True))
        return json.dumps(out, sort_keys=True)

    def write(self, path: str):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    def summary(self) -> str:
        state = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return (
            f"{self.name}: n<={self.max_n} graphs={self.graphs_examined} "
            f"instances={self.instances_checked} findings={len(self.findings)} "
            f"[{state}] {self.wall_time_s:.1f}s"
        )


# ---------------------------------------------------------------------------
# hereditary prunes (must be module-level for multiprocessing)


def prune_class_e(g: SimpleGraph) -> bool:
    return in_class_e(g).member


def prune_even_hole_free(g: SimpleGraph) -> bool:
    return find_hole(g, parity="even") is None


def prune_tpw_free(g: SimpleGraph) -> bool:
    # theta-, prism- and even-wheel-free; C4 explicitly allowed
    return find_theta(g) is None and find_prism(g) is None and find_even_wheel(g) is None


def _prune_chordal_factory_check(g: SimpleGraph, k: int) -> bool:
    return dirac_order(g) is not None and has_clique(g, k + 2) is None


def prune_chordal_k1(g):
    return _prune_chordal_factory_check(g, 1)


def prune_chordal_k2(g):
    return _prune_chordal_factory_check(g, 2)


def prune_chordal_k3(g):
    return _prune_chordal_factory_check(g, 3)


CHORDAL_PRUNES = {1: prune_chordal_k1, 2: prune_chordal_k2, 3: prune_chordal_k3}


# ---------------------------------------------------------------------------
# per-child processors; each returns (instances, violations, findings)


def corrupt_toggle_01(minor: SimpleGraph) -> SimpleGraph:
    """Fault-injection hook: toggles the lexicographically smallest vertex pair."""
    if minor.n < 2:
        return minor
    adj = list(minor.adj)
    adj[0] ^= 2
    adj[1] ^= 1
    return SimpleGraph(minor.n, tuple(adj))


def process_thm31(g: SimpleGraph, params: dict):
    instances = 0
    violations = []
    mutate = params.get("mutate", False)
    for pair in eligible_pairs(g):
        minor, _, _ = triangle_minor(g, pair.z1, pair.z2)
        if mutate:
            minor = corrupt_toggle_01(minor)
        instances += 1
        verdict = in_class_e(minor)
        if not verdict.member:
            violations.append(
                {
                    "graph6": write_graph6(g),
                    "pair": [pair.z1, pair.z2],
                    "minor_graph6": write_graph6(minor),
                    "certificate": verdict.violation.to_dict(),
                }
            )
    return instances, violations, []


def process_thm32(g: SimpleGraph, params: dict):
    instances = 0
    violations = []
    for cycle, z1, z2 in thm32_instances(g):
        instances += 1
        c1 = classify_against_hole(g, cycle, z1)
        c2 = classify_against_hole(g, cycle, z2)
        if (c1 is WheelClass.BAD) + (c2 is WheelClass.BAD) != 1:
            violations.append(
                {
                    "graph6": write_graph6(g),
                    "cycle": list(cycle),
                    "pair": [z1, z2],
                    "classes": [c1.value, c2.value],
                }
            )
    return instances, violations, []


def process_even_hole_subset(g: SimpleGraph, params: dict):
    verdict = in_class_e(g)
    if verdict.member:
        return 1, [], []
    return 1, [{"graph6": write_graph6(g), "certificate": verdict.violation.to_dict()}], []


def process_embed(g: SimpleGraph, params: dict):
    k = params["k"]
    tree, emb = embed_in_ktree(g, k)
    ok, bad_index = validate_ktree(tree.graph, k, tree.order)
    induced_ok = validate_embedding(tree.graph, g, emb)
    if ok and induced_ok:
        return 1, [], [{"size": tree.graph.n}]
    return (
        1,
        [
            {
                "graph6": write_graph6(g),
                "ktree_graph6": write_graph6(tree.graph),
                "ktree_ok": ok,
                "bad_index": bad_index,
                "embedding_ok": induced_ok,
            }
        ],
        [],
    )


def process_c4_necessity(g: SimpleGraph, params: dict):
    # host must carry an induced C4; the prune already guarantees
    # (theta, prism, even-wheel)-freeness
    if find_hole(g, min_len=4, max_len=4) is None:
        return 0, [], []
    findings = []
    instances = 0
    for pair in eligible_pairs(g):
        minor, _, _ = triangle_minor(g, pair.z1, pair.z2)
        instances += 1
        theta = find_theta(minor)
        if theta is not None:
            findings.append(
                {
                    "graph6": write_graph6(g),
                    "pair": [pair.z1, pair.z2],
                    "minor_graph6": write_graph6(minor),
                    "theta": theta.to_dict(),
                }
            )
    return instances, [], findings


PROCESSORS = {
    "thm31": (prune_class_e, process_thm31),
    "thm32": (prune_class_e, process_thm32),
    "even_hole_subset_E": (prune_even_hole_free, process_even_hole_subset),
    "c4_necessity": (prune_tpw_free, process_c4_necessity),
}


# ---------------------------------------------------------------------------
# level-parallel driver


def _expand_and_process(args):
    parent, prune, processor, params = args
    children = expand_children(parent, prune)
    instances = 0
    violations: list[dict] = []
    findings: list[dict] = []
    for child in children:
        i, v, f = processor(child, params)
        instances += i
        violations.extend(v)
        findings.extend(f)
    return children, instances, violations, findings


def _run_levels(name, max_n, prune, processor, params, threads, report, stop_when=None):
    k1 = SimpleGraph(1, (0,))
    level = [k1] if prune(k1) else []
    per_n = {}
    for g in level:
        i, v, f = processor(g, params)
        report.instances_checked += i
        report.violations.extend(v)
        report.findings.extend(f)
    report.graphs_examined += len(level)
    per_n[1] = len(level)
    for n in range(2, max_n + 1):
        if stop_when is not None and stop_when(report):
            break
        jobs = [(parent, prune, processor, params) for parent in level]
        nxt: list[SimpleGraph] = []
        if threads > 1 and len(jobs) > 1:
            ctx = get_context("fork")
            chunk = max(1, len(jobs) // (threads * 4))
            with ctx.Pool(threads) as pool:
                results = pool.map(_expand_and_process, jobs, chunksize=chunk)
        else:
            results = map(_expand_and_process, jobs)
        for children, i, v, f in results:
            nxt.extend(children)
            report.instances_checked += i
            report.violations.extend(v)
            report.findings.extend(f)
        level = nxt
        report.graphs_examined += len(level)
        per_n[n] = len(level)
    report.details["graphs_per_n"] = per_n
    report.violations.sort(key=lambda v: json.dumps(v, sort_keys=True))
    report.findings.sort(key=lambda v: json.dumps(v, sort_keys=True))


def _run_named(name: str, max_n: int, threads: int | None, params: dict, stop_when=None):
    if not 1 <= max_n <= 10:
        raise ContractViolation("sweeps support max_n in 1..10")
    prune, processor = PROCESSORS[name]
    threads = default_threads() if threads is None else max(1, threads)
    report = SweepReport(name=name, max_n=max_n)
    t0 = time.perf_counter()
    _run_levels(name, max_n, prune, processor, params, threads, report, stop_when)
    report.wall_time_s = time.perf_counter() - t0
    return report


def sweep_thm31(max_n: int, threads: int | None = None, mutate: bool = False) -> SweepReport:
    """Every class member's eligible-pair minor stays in the class."""
    report = _run_named("thm31", max_n, threads, {"mutate": mutate})
    if mutate:
        report.name = "thm31_mutated"
    return report


def sweep_thm32(max_n: int, threads: int | None = None) -> SweepReport:
    """Exactly-one-bad for every (hole, adjacent outside pair) instance."""
    return _run_named("thm32", max_n, threads, {})


def sweep_even_hole_subset_E(max_n: int, threads: int | None = None) -> SweepReport:
    """Even-hole-free graphs are class members."""
    return _run_named("even_hole_subset_E", max_n, threads, {})


def sweep_embed(max_n: int, k: int, threads: int | None = None) -> SweepReport:
    """Chordal K_{k+2}-free graphs embed into valid k-trees, induced."""
    if k not in CHORDAL_PRUNES:
        raise ContractViolation("embed sweep supports k in {1,2,3}")
    if not 1 <= max_n <= 10:
        raise ContractViolation("sweeps support max_n in 1..10")
    prune = CHORDAL_PRUNES[k]
    threads = default_threads() if threads is None else max(1, threads)
    report = SweepReport(name=f"embed_k{k}", max_n=max_n)
    t0 = time.perf_counter()
    _run_levels(report.name, max_n, prune, process_embed, {"k": k}, threads, report)
    sizes = [f["size"] for f in report.findings]
    report.details["max_ktree_size"] = max(sizes) if sizes else 0
    report.findings = []  # sizes were bookkeeping, not exemplars
    report.wall_time_s = time.perf_counter() - t0
    return report


def sweep_c4_necessity(max_n: int, threads: int | None = None, archive_path: str | None = None) -> SweepReport:
    """Search for a (theta, prism, even-wheel)-free host with an induced C4
    whose eligible-pair minor contains a theta; stops at the first vertex
    count that yields exemplars."""
    report = _run_named(
        "c4_necessity", max_n, threads, {}, stop_when=lambda r: bool(r.findings)
    )
    if archive_path and report.findings:
        with open(archive_path, "w") as fh:
            json.dump({"schema": REPORT_SCHEMA, "exemplars": report.findings}, fh, indent=2)
            fh.write("\n")
    return report


# ---------------------------------------------------------------------------
# randomized blurry-copy suite


def random_two_tree(rng: random.Random, h: int) -> KTree:
    """Random 2-tree grown by attaching each new vertex to a random edge."""
    if h < 2:
        raise ContractViolation("2-trees need at least 2 vertices")
    g = SimpleGraph.from_edges(2, [(0, 1)])
    edges = [(0, 1)]
    for v in range(2, h):
        u, w = edges[rng.randrange(len(edges))]
        g = add_vertex(g, (1 << u) | (1 << w))
        edges.extend([(u, v), (w, v)])
    order = tuple(range(h - 1, -1, -1))
    return KTree(g, 2, order)


def _plant_blurry_host(rng: random.Random, tree: KTree) -> SimpleGraph:
    """K4-free host: the 2-tree itself plus noise vertices attached anywhere
    an edge does not complete a K4."""
    g = tree.graph
    extra = rng.randrange(0, 5)
    for _ in range(extra):
        mask = 0
        candidates = list(range(g.n))
        rng.shuffle(candidates)
        for u in candidates:
            if rng.random() < 0.35:
                trial = mask | (1 << u)
                if not _creates_k4(g, trial):
                    mask = trial
        g = add_vertex(g, mask)
    return g


def _creates_k4(g: SimpleGraph, mask: int) -> bool:
    # adding a vertex adjacent to `mask` makes a K4 iff mask holds a triangle
    for u in bits(mask):
        for v in bits(mask & g.adj[u]):
            if u < v and g.adj[u] & g.adj[v] & mask:
                return True
    return False


def sweep_obs51(trials: int, seed: int) -> SweepReport:
    """Randomized blurry witnesses over K4-free hosts: the direct extraction
    path must always apply and the extracted embedding must re-verify."""
    report = SweepReport(name="obs51", max_n=0)
    t0 = time.perf_counter()
    rng = random.Random(seed)
    fallbacks = 0
    for trial in range(trials):
        h = rng.randint(2, 9)
        tree = random_two_tree(rng, h)
        host = _plant_blurry_host(rng, tree)
        witness = BlurryWitness(
            zset=tuple(range(h)),
            y_edges=tuple(tree.graph.edges()),
            order=tree.order,
            target=tree,
        )
        report.instances_checked += 1
        bad = verify_blurry(host, witness)
        if bad is not None:
            report.violations.append({"trial": trial, "clause": bad, "graph6": write_graph6(host)})
            continue
        result = extract_induced_from_blurry(host, witness)
        if result.fallback_used:
            fallbacks += 1
            report.violations.append({"trial": trial, "fallback": True, "graph6": write_graph6(host)})
            continue
        if result.embedding is None or not validate_embedding(host, tree.graph, result.embedding):
            report.violations.append({"trial": trial, "bad_embedding": True, "graph6": write_graph6(host)})
    report.details["fallbacks"] = fallbacks
    report.graphs_examined = trials
    report.wall_time_s = time.perf_counter() - t0
    return report


SWEEPS = {
    "thm31": lambda args: sweep_thm31(args.max_n, args.threads, getattr(args, "mutate", False)),
    "thm32": lambda args: sweep_thm32(args.max_n, args.threads),
    "even-hole-subset": lambda args: sweep_even_hole_subset_E(args.max_n, args.threads),
    "embed": lambda args: sweep_embed(args.max_n, args.k, args.threads),
    "c4-necessity": lambda args: sweep_c4_necessity(args.max_n, args.threads, args.out_archive),
    "obs51": lambda args: sweep_obs51(args.trials, args.seed),
}
