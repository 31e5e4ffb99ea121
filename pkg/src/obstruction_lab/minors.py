"""The class-preserving triangle-minor operation and its theorem checkers.

Contracting an adjacent pair z1,z2 into z and keeping only z's edges into the
common neighborhood N(z1) & N(z2) stays inside the (C4, theta, prism,
even-wheel)-free class whenever that common neighborhood is a stable set of
vertices of degree at most three.  check_thm31/check_thm32 assert exactly that
on concrete graphs; the exhaustive sweeps live in the harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .detectors import (
    Certificate,
    WheelClass,
    classify_against_hole,
    in_class_e,
    is_hole,
    iter_holes,
)
from .errors import ContractViolation
from .graphs import SimpleGraph, bits, mask_of, write_graph6


@dataclass(frozen=True)
class TrianglePair:
    """Adjacent pair with its common neighborhood and the eligibility verdict.

    Eligible means the common neighborhood is a stable set whose members all
    have degree at most three in the host (vacuously true when empty).
    """

    z1: int
    z2: int
    common: int
    eligible: bool


def triangle_pairs(g: SimpleGraph) -> list[TrianglePair]:
    out = []
    for z1 in range(g.n):
        for z2 in bits(g.adj[z1] >> (z1 + 1) << (z1 + 1)):
            common = g.adj[z1] & g.adj[z2]
            out.append(TrianglePair(z1, z2, common, _eligible(g, common)))
    return out


def _eligible(g: SimpleGraph, common: int) -> bool:
    for v in bits(common):
        if g.adj[v] & common:
            return False
        if g.degree(v) > 3:
            return False
    return True


def eligible_pairs(g: SimpleGraph) -> list[TrianglePair]:
    """Adjacent pairs meeting the stable-degree-three hypothesis."""
    return [p for p in triangle_pairs(g) if p.eligible]


def triangle_minor(g: SimpleGraph, z1: int, z2: int) -> tuple[SimpleGraph, int, tuple[int, ...]]:
    """Contract edge z1z2 into z, then keep only z's edges into N(z1) & N(z2).

    Returns (minor, z_index, mapping) where mapping[new_index] = original
    vertex, with the contracted vertex recorded under min(z1, z2); z takes the
    smallest freed index so certificates stay traceable across the minor.
    """
    if z1 == z2 or not (0 <= z1 < g.n and 0 <= z2 < g.n):
        raise ContractViolation("need two distinct vertices")
    if not g.has_edge(z1, z2):
        raise ContractViolation("triangle minor requires an adjacent pair")
    common = g.adj[z1] & g.adj[z2]
    zid = min(z1, z2)
    gone = max(z1, z2)
    keep = [v for v in range(g.n) if v != gone]  # zid slot becomes z
    pos = {v: i for i, v in enumerate(keep)}
    adj = [0] * (g.n - 1)
    z_new = pos[zid]
    for v in keep:
        if v == zid:
            continue
        row = 0
        for u in bits(g.adj[v]):
            if u in (z1, z2):
                continue
            row |= 1 << pos[u]
        adj[pos[v]] = row
    for u in bits(common):
        adj[z_new] |= 1 << pos[u]
        adj[pos[u]] |= 1 << z_new
    return SimpleGraph(g.n - 1, tuple(adj)), z_new, tuple(keep)


@dataclass
class Thm31Report:
    """Per-graph result of the minor-stays-in-class check."""

    hypothesis_met: bool
    pairs_checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_thm31(g: SimpleGraph, mutate=None) -> Thm31Report:
    """For a class member, every eligible pair's minor must stay in the class.

    `mutate` is the fault-injection hook used by the harness self-test: it
    maps a minor to a corrupted minor before the membership check.
    """
    verdict = in_class_e(g)
    if not verdict.member:
        return Thm31Report(hypothesis_met=False)
    report = Thm31Report(hypothesis_met=True)
    for pair in eligible_pairs(g):
        minor, z_new, _ = triangle_minor(g, pair.z1, pair.z2)
        if mutate is not None:
            minor = mutate(minor)
        report.pairs_checked += 1
        inner = in_class_e(minor)
        if not inner.member:
            report.violations.append(
                {
                    "graph6": write_graph6(g),
                    "pair": [pair.z1, pair.z2],
                    "minor_graph6": write_graph6(minor),
                    "certificate": inner.violation.to_dict(),
                }
            )
    return report


@dataclass(frozen=True)
class Thm32Verdict:
    status: str  # "ok" | "violation" | "skip"
    classes: tuple[WheelClass, WheelClass] | None = None
    reason: str = ""


def check_thm32(g: SimpleGraph, cycle: tuple[int, ...], z1: int, z2: int) -> Thm32Verdict:
    """Exactly one of an adjacent outside pair is hole-bad, given: membership,
    a hole, one neighbor each on it, and no common neighbor on it.

    Precondition failures are reported as skips, not failures.
    """
    if not is_hole(g, cycle):
        return Thm32Verdict("skip", reason="cycle is not a hole")
    cmask = mask_of(cycle)
    if z1 == z2 or cmask >> z1 & 1 or cmask >> z2 & 1:
        return Thm32Verdict("skip", reason="pair must be two vertices outside the hole")
    if not g.has_edge(z1, z2):
        return Thm32Verdict("skip", reason="pair not adjacent")
    if not (g.adj[z1] & cmask) or not (g.adj[z2] & cmask):
        return Thm32Verdict("skip", reason="pair must each have a neighbor on the hole")
    if g.adj[z1] & g.adj[z2] & cmask:
        return Thm32Verdict("skip", reason="pair shares a neighbor on the hole")
    if not in_class_e(g).member:
        return Thm32Verdict("skip", reason="graph not in class")
    c1 = classify_against_hole(g, cycle, z1)
    c2 = classify_against_hole(g, cycle, z2)
    bad_count = (c1 is WheelClass.BAD) + (c2 is WheelClass.BAD)
    return Thm32Verdict("ok" if bad_count == 1 else "violation", classes=(c1, c2))


def thm32_instances(g: SimpleGraph):
    """All (hole, adjacent outside pair) instances meeting the hypothesis."""
    for cycle in iter_holes(g):
        cmask = mask_of(cycle)
        outside = [v for v in range(g.n) if not cmask >> v & 1 and g.adj[v] & cmask]
        for i, z1 in enumerate(outside):
            for z2 in outside[i + 1 :]:
                if not g.has_edge(z1, z2):
                    continue
                if g.adj[z1] & g.adj[z2] & cmask:
                    continue
                yield cycle, z1, z2
