"""Best-effort staged pipeline growing a blurry 2-tree copy inside a host.

Stages: (1) locate a strong 2-block to get a pair joined by many paths,
(2) assemble a kaleidoscope together with an adjacent pair mirrored by it,
(3) repeatedly harvest a common neighbor of the current growth pair on one
kaleidoscope hole, filter the surviving holes, and extend the blurry witness
by one vertex.  Every stage records what happened; exhaustion is reported as
an inconclusive trace, never as a silent failure.  The class-membership claim
is re-verified up front and recorded, and the mechanics proceed either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .detectors import in_class_et
from .errors import ContractViolation
from .graphs import SimpleGraph, bits, mask_of
from .ktrees import KTree, forward_neighbors, ktree_quotient, validate_ktree
from .predicates import BlurryWitness, Kaleidoscope, verify_blurry, verify_mirrored
from .finders import find_strong_block


@dataclass
class GrowTrace:
    status: str = "inconclusive"
    hypothesis_ok: bool = False
    stages: list[dict] = field(default_factory=list)
    witness: BlurryWitness | None = None
    kaleidoscope: Kaleidoscope | None = None
    budget_left: int = 0

    def to_dict(self, host: SimpleGraph | None = None) -> dict:
        out = {
            "status": self.status,
            "hypothesis_ok": self.hypothesis_ok,
            "stages": self.stages,
            "budget_left": self.budget_left,
        }
        if host is not None and self.witness is not None:
            from .predicates import witness_to_dict

            out["witness"] = witness_to_dict(host, self.witness)
        return out


def _first_edge(g: SimpleGraph) -> tuple[int, int] | None:
    for u in range(g.n):
        row = g.adj[u] >> (u + 1) << (u + 1)
        if row:
            return u, next(bits(row))
    return None


def _blurry_for_suffix(target: KTree, assigned: list[int]) -> BlurryWitness:
    """Witness for the quotient matching the currently grown suffix.

    assigned[j] is the host image of target.order[h - len(assigned) + j].
    """
    h = target.graph.n
    start = h - len(assigned)
    quotient = ktree_quotient(target, start)
    y_edges = []
    for i in range(len(assigned)):
        for j in range(i + 1, len(assigned)):
            if quotient.graph.has_edge(quotient.order[i], quotient.order[j]):
                y_edges.append((assigned[i], assigned[j]))
    return BlurryWitness(
        zset=tuple(sorted(assigned)),
        y_edges=tuple(y_edges),
        order=tuple(assigned),
        target=quotient,
    )


def _assemble_kaleidoscope(g: SimpleGraph, need_w: int, budget: list[int]):
    """Search for (kaleidoscope, adjacent pair 3-mirrored by it); deterministic,
    budget counts path-extension steps."""
    from .detectors import _induced_ab_paths

    for a in range(g.n):
        nbrs = list(bits(g.adj[a]))
        for xi in range(len(nbrs)):
            for yi in range(xi + 1, len(nbrs)):
                x, y = nbrs[xi], nbrs[yi]
                if g.has_edge(x, y):
                    continue
                allowed = g.vertices_mask & ~(1 << a) & ~g.adj[a] | (1 << x) | (1 << y)
                allowed &= ~(1 << a)
                paths = _induced_ab_paths(g, x, y, allowed & ~(1 << x) & ~(1 << y))
                budget[0] -= len(paths) + 1
                if budget[0] <= 0:
                    return None
                # greedy internally disjoint packing, shortest first
                packed: list[tuple[int, ...]] = []
                seen = 0
                for p in paths:
                    interior = mask_of(p[1:-1])
                    if interior and not interior & seen:
                        packed.append(p)
                        seen |= interior
                if not packed:
                    continue
                body = (1 << a) | seen | (1 << x) | (1 << y)
                for z1 in range(g.n):
                    if body >> z1 & 1:
                        continue
                    for z2 in bits(g.adj[z1] & ~body):
                        if z2 <= z1:
                            continue
                        keep = []
                        for w in packed:
                            wm = mask_of(w)
                            guard = (
                                (1 << x)
                                | (1 << y)
                                | (g.adj[x] & wm)
                                | (g.adj[y] & wm)
                            )
                            ok = True
                            for z in (z1, z2):
                                if g.adj[z] & guard:
                                    ok = False
                                    break
                                if (g.adj[z] & wm).bit_count() < 3:
                                    ok = False
                                    break
                            if ok:
                                keep.append(w)
                        if len(keep) >= need_w:
                            cand = Kaleidoscope(a, x, y, tuple(keep))
                            if verify_mirrored(g, cand, (z1, z2), 3) is None:
                                return cand, (z1, z2)
    return None


def _first_common_neighbor(g: SimpleGraph, w: tuple[int, ...], z1: int, z2: int) -> int | None:
    common = g.adj[z1] & g.adj[z2] & mask_of(w)
    for v in w:  # traversal order from x
        if common >> v & 1:
            return v
    return None


def pipeline_grow(g: SimpleGraph, target: KTree, budget: int = 500000, t: int = 4) -> GrowTrace:
    """Grow a blurry copy of the target 2-tree, one ordered vertex at a time."""
    ok, _ = validate_ktree(target.graph, target.k, target.order)
    if target.k != 2 or not ok:
        raise ContractViolation("target must be a valid 2-tree")
    trace = GrowTrace(budget_left=budget)
    verdict = in_class_et(g, t)
    trace.hypothesis_ok = verdict.member
    trace.stages.append(
        {
            "stage": "membership",
            "ok": verdict.member,
            "violation": None if verdict.member else verdict.violation.kind,
        }
    )

    h = target.graph.n
    seed = _first_edge(g)
    if seed is None:
        trace.stages.append({"stage": "seed", "ok": False})
        return trace
    if h == 2:
        # no kaleidoscope demand: the witness is any edge (w parameter 0 case)
        trace.witness = _blurry_for_suffix(target, [seed[0], seed[1]])
        assert verify_blurry(g, trace.witness) is None
        trace.status = "success"
        trace.stages.append({"stage": "seed", "ok": True, "pair": list(seed)})
        return trace

    counter = [budget]
    block = find_strong_block(g, 2, budget=budget)
    counter[0] -= block.expansions
    trace.stages.append(
        {
            "stage": "strong_block",
            "ok": block.witness is not None,
            "conclusive": block.conclusive,
            "expansions": block.expansions,
        }
    )
    if block.witness is None:
        trace.budget_left = max(counter[0], 0)
        return trace

    steps = h - 2
    got = _assemble_kaleidoscope(g, need_w=steps, budget=counter)
    trace.stages.append({"stage": "kaleidoscope", "ok": got is not None})
    if got is None:
        trace.budget_left = max(counter[0], 0)
        return trace
    kal, (z1, z2) = got
    trace.kaleidoscope = kal

    # base pair maps to the last two ordering positions of the target
    assigned = [z1, z2]
    witness = _blurry_for_suffix(target, assigned)
    bad = verify_blurry(g, witness)
    if bad is not None:
        trace.stages.append({"stage": "extend", "step": 0, "ok": False, "clause": bad})
        trace.budget_left = max(counter[0], 0)
        return trace

    for step in range(1, steps + 1):
        pos = h - 2 - step  # 0-based target position being added
        new_vertex = target.order[pos]
        fwd = forward_neighbors(target.graph, target.order, pos)
        images = {}
        suffix = target.order[pos + 1 :]
        for j, tv in enumerate(suffix):
            images[tv] = assigned[j]
        anchors = [images[v] for v in bits(fwd)]
        picked = None
        for wi, w in enumerate(kal.paths):
            counter[0] -= len(w)
            if counter[0] <= 0:
                trace.stages.append({"stage": "extend", "step": step, "ok": False, "reason": "budget"})
                trace.budget_left = 0
                return trace
            z = _first_common_neighbor(g, w, anchors[0], anchors[1])
            if z is None:
                continue
            if g.has_edge(kal.a, z):
                continue
            # growth adjacency: z sees both anchors and nothing outside their
            # closed common neighborhood
            zn = g.adj[z] & mask_of(assigned)
            allowed = (g.adj[anchors[0]] | (1 << anchors[0])) & (
                g.adj[anchors[1]] | (1 << anchors[1])
            )
            if zn & ~allowed:
                continue
            survivors = []
            for oj, other in enumerate(kal.paths):
                if oj == wi:
                    continue
                om = mask_of(other)
                guard = (
                    (1 << kal.x)
                    | (1 << kal.y)
                    | (g.adj[kal.x] & om)
                    | (g.adj[kal.y] & om)
                )
                if g.adj[z] & guard:
                    continue
                if (g.adj[z] & om).bit_count() >= 3:
                    survivors.append(other)
            if step < steps and not survivors:
                continue
            picked = (z, survivors)
            break
        if picked is None:
            trace.stages.append({"stage": "extend", "step": step, "ok": False, "reason": "no candidate"})
            trace.budget_left = max(counter[0], 0)
            return trace
        z, survivors = picked
        assigned = [z] + assigned
        kal = Kaleidoscope(kal.a, kal.x, kal.y, tuple(survivors))
        witness = _blurry_for_suffix(target, assigned)
        bad = verify_blurry(g, witness)
        trace.stages.append(
            {"stage": "extend", "step": step, "ok": bad is None, "vertex": z, "clause": bad}
        )
        if bad is not None:
            trace.budget_left = max(counter[0], 0)
            return trace
        trace.witness = witness
        trace.kaleidoscope = kal

    trace.status = "success"
    trace.budget_left = max(counter[0], 0)
    return trace
