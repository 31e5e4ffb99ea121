"""Witness types and total verifiers for the proof-level structures.

Witness-first architecture: the verifiers here are total and authoritative
(decidable purely from graph plus witness), the finders next door are
best-effort.  Each verifier reports the first violated clause tag in a fixed
order, or None when the witness checks out.  Malformed witnesses (indices out
of range, non-bijections) raise ContractViolation instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation
from .graphs import SimpleGraph, bits, is_induced_path, mask_of, write_graph6
from .ktrees import KTree, validate_ktree

PathSeq = tuple[int, ...]


@dataclass(frozen=True)
class Kaleidoscope:
    """Apex path x-a-y plus internally disjoint x-y paths avoiding the apex."""

    a: int
    x: int
    y: int
    paths: tuple[PathSeq, ...]

    @property
    def holes(self) -> tuple[PathSeq, ...]:
        """Each path W closed through the apex: a-x-W-y-a, as cycle sequences."""
        return tuple((self.a,) + w for w in self.paths)


@dataclass(frozen=True)
class MirrorSpec:
    zset: tuple[int, ...]
    d: int


@dataclass(frozen=True)
class Palanquin:
    """Apex vertex, stable subset of its neighborhood, and disjoint paths every
    member of the set attaches to while the apex stays anticomplete."""

    a: int
    s_set: tuple[int, ...]
    paths: tuple[PathSeq, ...]


@dataclass(frozen=True)
class Alignment:
    """Stable set whose attachments along the path occur in disjoint blocks,
    strictly ordered from the end x by the bijection pi."""

    s_set: tuple[int, ...]
    path: PathSeq
    x: int
    pi: tuple[int, ...]  # pi[i] = vertex of rank i+1


@dataclass(frozen=True)
class BlurryWitness:
    """Induced set carrying a spanning 2-tree copy of the target.

    zset lists host vertices; y_edges is the spanning 2-tree's edge set;
    order[i] is the host vertex at ordering position i+1; target is the
    2-tree being copied.
    """

    zset: tuple[int, ...]
    y_edges: tuple[tuple[int, int], ...]
    order: tuple[int, ...]
    target: KTree


@dataclass(frozen=True)
class StrongBlockWitness:
    """Block vertices plus one family of internally disjoint paths per pair;
    families from distinct pairs may meet only in shared endpoints."""

    k: int
    block: tuple[int, ...]
    families: tuple[tuple[tuple[int, int], tuple[PathSeq, ...]], ...]


def _check_vertex(g: SimpleGraph, v: int):
    if not 0 <= v < g.n:
        raise ContractViolation(f"vertex {v} out of range")


# ---------------------------------------------------------------------------
# verifiers


def verify_kaleidoscope(g: SimpleGraph, k: Kaleidoscope) -> str | None:
    for v in (k.a, k.x, k.y):
        _check_vertex(g, v)
    for w in k.paths:
        for v in w:
            _check_vertex(g, v)
    if len({k.a, k.x, k.y}) != 3 or not is_induced_path(g, (k.x, k.a, k.y)):
        return "K1"
    a_bit = 1 << k.a
    interiors_seen = 0
    for w in k.paths:
        if len(w) < 2 or w[0] != k.x or w[-1] != k.y:
            return "K2"
        if mask_of(w) & a_bit:
            return "K2"
        if not is_induced_path(g, w):
            return "K2"
        interior = mask_of(w[1:-1])
        if interior & interiors_seen:
            return "K2"
        interiors_seen |= interior
    for w in k.paths:
        if g.adj[k.a] & mask_of(w[1:-1]):
            return "K3"
    return None


def verify_mirrored(g: SimpleGraph, k: Kaleidoscope, zset: tuple[int, ...], d: int) -> str | None:
    """Clause order: the kaleidoscope's own clauses first, then M1..M3."""
    bad = verify_kaleidoscope(g, k)
    if bad is not None:
        return bad
    if d < 1:
        raise ContractViolation("d must be >= 1")
    for z in zset:
        _check_vertex(g, z)
    zmask = mask_of(zset)
    body = 1 << k.a
    for w in k.paths:
        body |= mask_of(w)
    if zmask & body:
        return "M1"
    if (g.adj[k.a] & zmask).bit_count() > 1:
        return "M2"
    for z in zset:
        row = g.adj[z]
        for w in k.paths:
            wm = mask_of(w)
            guard = (1 << k.x) | (1 << k.y) | (g.adj[k.x] & wm) | (g.adj[k.y] & wm)
            if row & guard:
                return "M3"
            if (row & wm).bit_count() < d:
                return "M3"
    return None


def verify_palanquin(g: SimpleGraph, p: Palanquin) -> str | None:
    _check_vertex(g, p.a)
    for v in p.s_set:
        _check_vertex(g, v)
    for path in p.paths:
        for v in path:
            _check_vertex(g, v)
    smask = mask_of(p.s_set)
    if len(p.s_set) != smask.bit_count() or not p.s_set:
        raise ContractViolation("s_set must be nonempty and duplicate-free")
    if g.adj[p.a] & smask != smask:
        return "P1"
    for s in p.s_set:
        if g.adj[s] & smask:
            return "P1"
    banned = smask | (1 << p.a)
    seen = 0
    for path in p.paths:
        pm = mask_of(path)
        if pm & banned or pm & seen or not is_induced_path(g, path):
            return "P1"
        seen |= pm
    for path in p.paths:
        pm = mask_of(path)
        if g.adj[p.a] & pm:
            return "P2"
        for s in p.s_set:
            if not g.adj[s] & pm:
                return "P2"
    return None


def verify_alignment(g: SimpleGraph, al: Alignment) -> str | None:
    for v in al.s_set + al.path:
        _check_vertex(g, v)
    smask = mask_of(al.s_set)
    if sorted(al.pi) != sorted(al.s_set):
        raise ContractViolation("pi must be a bijection onto the stable set")
    if len(al.s_set) != smask.bit_count():
        raise ContractViolation("s_set has duplicates")
    if mask_of(al.path) & smask:
        return "A1"
    if not is_induced_path(g, al.path) or al.x not in (al.path[0], al.path[-1]):
        return "A1"
    for s in al.s_set:
        if g.adj[s] & smask:
            return "A1"
    seq = al.path if al.path[0] == al.x else al.path[::-1]
    pos = {v: i for i, v in enumerate(seq)}
    blocks = []
    for s in al.pi:
        hits = [pos[v] for v in seq if g.has_edge(s, v)]
        if not hits:
            return "A2"
        blocks.append((min(hits), max(hits)))
    for i in range(len(blocks) - 1):
        if blocks[i][1] >= blocks[i + 1][0]:
            return "A3"
    return None


def verify_blurry(g: SimpleGraph, w: BlurryWitness) -> str | None:
    for v in w.zset + w.order:
        _check_vertex(g, v)
    zmask = mask_of(w.zset)
    if len(w.zset) != zmask.bit_count():
        raise ContractViolation("zset has duplicates")
    if sorted(w.order) != sorted(w.zset):
        raise ContractViolation("order must be a bijection on zset")
    h = len(w.zset)
    if w.target.k != 2 or w.target.graph.n != h:
        return "B1"
    pos = {v: i for i, v in enumerate(w.order)}
    y_adj = [0] * h
    for u, v in w.y_edges:
        if not (zmask >> u & 1 and zmask >> v & 1):
            raise ContractViolation("spanning edge outside the induced set")
        if not g.has_edge(u, v):
            return "B1"
        y_adj[pos[u]] |= 1 << pos[v]
        y_adj[pos[v]] |= 1 << pos[u]
    y_graph = SimpleGraph(h, tuple(y_adj))
    ok, _ = validate_ktree(y_graph, 2, tuple(range(h)))
    if not ok:
        return "B1"
    # isomorphic to the target respecting both orderings
    t = w.target
    tpos = {v: i for i, v in enumerate(t.order)}
    for i in range(h):
        for j in range(i + 1, h):
            if y_graph.has_edge(i, j) != t.graph.has_edge(t.order[i], t.order[j]):
                return "B1"
    for i in range(h):
        u = w.order[i]
        for j in range(i + 1, h):
            v = w.order[j]
            if g.has_edge(u, v) and not y_graph.has_edge(i, j):
                fwd = y_adj[i] >> (i + 1) << (i + 1)
                if fwd.bit_count() != 2:
                    return "B2"
                for f in bits(fwd):
                    if not g.has_edge(v, w.order[f]):
                        return "B2"
    return None


def blurry_extra_edges(g: SimpleGraph, w: BlurryWitness) -> list[tuple[int, int]]:
    """Host edges inside the induced set that the spanning 2-tree is missing."""
    y_set = {frozenset(e) for e in w.y_edges}
    out = []
    verts = sorted(w.zset)
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if g.has_edge(u, v) and frozenset((u, v)) not in y_set:
                out.append((u, v))
    return out


def _is_plain_path(g: SimpleGraph, seq: PathSeq) -> bool:
    # strong-block paths: distinct vertices, consecutive adjacency only
    if len(seq) < 2 or len(set(seq)) != len(seq):
        return False
    return all(g.has_edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


def verify_strong_block(g: SimpleGraph, w: StrongBlockWitness) -> str | None:
    for v in w.block:
        _check_vertex(g, v)
    bmask = mask_of(w.block)
    if len(w.block) != bmask.bit_count():
        raise ContractViolation("block has duplicates")
    if w.k < 1:
        raise ContractViolation("k must be >= 1")
    if len(w.block) < w.k:
        return "SB1"
    fams = {frozenset(pair): paths for pair, paths in w.families}
    want = {
        frozenset((w.block[i], w.block[j]))
        for i in range(len(w.block))
        for j in range(i + 1, len(w.block))
    }
    if set(fams) != want:
        return "SB2"
    for pair, paths in w.families:
        x, y = pair
        if len(paths) < w.k:
            return "SB2"
        seen_shapes = set()
        interiors = 0
        for p in paths:
            if {p[0], p[-1]} != {x, y} or not _is_plain_path(g, p):
                return "SB2"
            shape = min(p, p[::-1])
            if shape in seen_shapes:
                return "SB2"
            seen_shapes.add(shape)
            interior = mask_of(p[1:-1])
            if interior & interiors:
                return "SB2"
            interiors |= interior
    entries = list(w.families)
    for i in range(len(entries)):
        (pair_i, paths_i) = entries[i]
        for j in range(i + 1, len(entries)):
            (pair_j, paths_j) = entries[j]
            shared = set(pair_i) & set(pair_j)
            for p in paths_i:
                pm = set(p)
                for q in paths_j:
                    if pm & set(q) != shared:
                        return "SB3"
    return None


# ---------------------------------------------------------------------------
# witness file format (the finders emit these; `verify` consumes them)


def witness_to_dict(g: SimpleGraph, witness) -> dict:
    out: dict = {"schema": "obstruction-lab/witness-v1", "graph6": write_graph6(g)}
    if isinstance(witness, Kaleidoscope):
        out["kind"] = "kaleidoscope"
        out.update(a=witness.a, x=witness.x, y=witness.y, paths=[list(p) for p in witness.paths])
    elif isinstance(witness, Palanquin):
        out["kind"] = "palanquin"
        out.update(a=witness.a, s_set=list(witness.s_set), paths=[list(p) for p in witness.paths])
    elif isinstance(witness, Alignment):
        out["kind"] = "alignment"
        out.update(
            s_set=list(witness.s_set), path=list(witness.path), x=witness.x, pi=list(witness.pi)
        )
    elif isinstance(witness, BlurryWitness):
        out["kind"] = "blurry"
        out.update(
            zset=list(witness.zset),
            y_edges=[list(e) for e in witness.y_edges],
            order=list(witness.order),
            target_graph6=write_graph6(witness.target.graph),
            target_k=witness.target.k,
            target_order=list(witness.target.order),
        )
    elif isinstance(witness, StrongBlockWitness):
        out["kind"] = "strong_block"
        out.update(
            k=witness.k,
            block=list(witness.block),
            families=[
                {"pair": list(pair), "paths": [list(p) for p in paths]}
                for pair, paths in witness.families
            ],
        )
    else:
        raise ContractViolation(f"unknown witness type {type(witness).__name__}")
    return out


def witness_from_dict(d: dict):
    from .graphs import parse_graph6

    kind = d["kind"]
    g = parse_graph6(d["graph6"])
    if kind == "kaleidoscope":
        w = Kaleidoscope(d["a"], d["x"], d["y"], tuple(tuple(p) for p in d["paths"]))
    elif kind == "palanquin":
        w = Palanquin(d["a"], tuple(d["s_set"]), tuple(tuple(p) for p in d["paths"]))
    elif kind == "alignment":
        w = Alignment(tuple(d["s_set"]), tuple(d["path"]), d["x"], tuple(d["pi"]))
    elif kind == "blurry":
        target = KTree(parse_graph6(d["target_graph6"]), d["target_k"], tuple(d["target_order"]))
        w = BlurryWitness(
            tuple(d["zset"]),
            tuple((e[0], e[1]) for e in d["y_edges"]),
            tuple(d["order"]),
            target,
        )
    elif kind == "strong_block":
        w = StrongBlockWitness(
            d["k"],
            tuple(d["block"]),
            tuple(
                (tuple(f["pair"]), tuple(tuple(p) for p in f["paths"])) for f in d["families"]
            ),
        )
    else:
        raise ContractViolation(f"unknown witness kind {kind!r}")
    return g, w


def verify_witness(g: SimpleGraph, witness) -> str | None:
    """Dispatch on witness type; MirrorSpec is checked through verify_mirrored."""
    if isinstance(witness, Kaleidoscope):
        return verify_kaleidoscope(g, witness)
    if isinstance(witness, Palanquin):
        return verify_palanquin(g, witness)
    if isinstance(witness, Alignment):
        return verify_alignment(g, witness)
    if isinstance(witness, BlurryWitness):
        return verify_blurry(g, witness)
    if isinstance(witness, StrongBlockWitness):
        return verify_strong_block(g, witness)
    raise ContractViolation(f"unknown witness type {type(witness).__name__}")
