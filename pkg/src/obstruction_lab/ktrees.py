"""k-tree recognition, the chordal-to-k-tree embedding, quotients and friends.

A k-tree is either the complete graph on k vertices or a graph with an
ordering in which every vertex among the first h-k has forward neighbors
forming a clique of cardinality exactly k.  Orderings are stored as tuples
where order[i] is the vertex at position i+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detectors import dirac_order, has_clique, _is_clique
from .errors import ContractViolation
from .graphs import (
    SimpleGraph,
    add_vertex,
    bits,
    complete_graph,
    components,
    induced_subgraph,
    mask_of,
    write_graph6,
)

Embedding = tuple[int, ...]  # embedding[h_vertex] = host vertex


@dataclass(frozen=True)
class KTree:
    graph: SimpleGraph
    k: int
    order: tuple[int, ...]

    def to_text(self) -> str:
        """graph6 line, then k and the ordering on a second line."""
        return f"{write_graph6(self.graph)}\n{self.k} " + " ".join(map(str, self.order)) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "KTree":
        from .graphs import parse_graph6

        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ContractViolation("expected graph6 line plus ordering line")
        g = parse_graph6(lines[0])
        nums = [int(x) for x in lines[1].split()]
        return cls(g, nums[0], tuple(nums[1:]))


def forward_neighbors(g: SimpleGraph, order: tuple[int, ...], i: int) -> int:
    """Neighbors of order[i] among positions after i, as a mask."""
    later = mask_of(order[i + 1 :])
    return g.adj[order[i]] & later


def validate_ktree(g: SimpleGraph, k: int, order: tuple[int, ...]) -> tuple[bool, int | None]:
    """Check the base/inductive clauses exactly.

    Returns (ok, first violated position): position 0 flags a base-case
    failure (wrong size or non-complete base), positions 1..h-k flag the first
    ordering index whose forward neighborhood is not a k-clique.
    """
    if k < 1:
        raise ContractViolation("k must be >= 1")
    if sorted(order) != list(range(g.n)):
        raise ContractViolation("order must be a bijection on the vertices")
    h = g.n
    if h < k:
        return False, 0
    if h == k:
        ok = _is_clique(g, (1 << h) - 1)
        return ok, (None if ok else 0)
    for i in range(h - k):
        fwd = forward_neighbors(g, order, i)
        if fwd.bit_count() != k or not _is_clique(g, fwd):
            return False, i + 1
    return True, None


def recognize_ktree(g: SimpleGraph, k: int) -> tuple[int, ...] | None:
    """Greedy peel: repeatedly remove the lowest vertex whose remaining
    neighborhood is a k-clique; succeeds iff the graph is a k-tree."""
    if k < 1:
        raise ContractViolation("k must be >= 1")
    n = g.n
    if n < k:
        return None
    remaining = g.vertices_mask
    order: list[int] = []
    while remaining.bit_count() > k:
        found = -1
        for v in bits(remaining):
            nbrs = g.adj[v] & remaining
            if nbrs.bit_count() == k and _is_clique(g, nbrs):
                found = v
                break
        if found < 0:
            return None
        order.append(found)
        remaining ^= 1 << found
    if not _is_clique(g, remaining):
        return None
    order.extend(bits(remaining))
    return tuple(order)


def ktree_quotient(t: KTree, i: int) -> KTree:
    """Drop the first i ordering positions; quotient 0 is the k-tree itself."""
    h = t.graph.n
    if not 0 <= i <= h - t.k:
        raise ContractViolation(f"quotient index {i} outside 0..{h - t.k}")
    if i == 0:
        return t
    keep_vertices = t.order[i:]
    sub, mapping = induced_subgraph(t.graph, mask_of(keep_vertices))
    pos = {v: idx for idx, v in enumerate(mapping)}
    return KTree(sub, t.k, tuple(pos[v] for v in keep_vertices))


def cone(f: SimpleGraph) -> SimpleGraph:
    """f plus one universal vertex (the new vertex gets index n)."""
    return add_vertex(f, f.vertices_mask)


def gen_tdr(d: int, r: int) -> SimpleGraph:
    """Rooted tree with root degree d, internal non-root degree d+1 and every
    leaf at depth r; vertex 0 is the root, levels are numbered consecutively."""
    if d < 0 or r < 0:
        raise ContractViolation("d and r must be >= 0")
    edges = []
    level = [0]
    next_id = 1
    for _ in range(r):
        nxt = []
        for parent in level:
            for _ in range(d):
                edges.append((parent, next_id))
                nxt.append(next_id)
                next_id += 1
        level = nxt
    return SimpleGraph.from_edges(next_id, edges)


# ---------------------------------------------------------------------------
# induced-subgraph isomorphism (the universal "contains" oracle)


def contains_induced(g: SimpleGraph, h: SimpleGraph) -> Embedding | None:
    """Backtracking induced-subgraph isomorphism with degree and
    neighborhood pruning; None when no embedding exists."""
    if h.n > g.n:
        raise ContractViolation("pattern larger than host")
    if h.n == 0:
        return ()
    # order pattern vertices: most-constrained first, preferring neighbors of
    # already-placed vertices
    order: list[int] = []
    placed_mask = 0
    degs = [h.adj[v].bit_count() for v in range(h.n)]
    while len(order) < h.n:
        cands = [v for v in range(h.n) if not placed_mask >> v & 1]
        cands.sort(key=lambda v: (-(h.adj[v] & placed_mask).bit_count(), -degs[v], v))
        order.append(cands[0])
        placed_mask |= 1 << cands[0]

    gdeg = [g.adj[v].bit_count() for v in range(g.n)]
    assign: dict[int, int] = {}
    used = 0

    def backtrack(idx: int) -> bool:
        nonlocal used
        if idx == h.n:
            return True
        u = order[idx]
        for cand in range(g.n):
            if used >> cand & 1 or gdeg[cand] < degs[u]:
                continue
            ok = True
            for w, img in assign.items():
                if h.has_edge(u, w) != g.has_edge(cand, img):
                    ok = False
                    break
            if not ok:
                continue
            assign[u] = cand
            used |= 1 << cand
            if backtrack(idx + 1):
                return True
            del assign[u]
            used ^= 1 << cand
        return False

    if not backtrack(0):
        return None
    return tuple(assign[v] for v in range(h.n))


def validate_embedding(host: SimpleGraph, pattern: SimpleGraph, emb: Embedding) -> bool:
    """Injective and adjacency-preserving in both directions on the image."""
    if len(emb) != pattern.n or len(set(emb)) != pattern.n:
        return False
    if any(not 0 <= v < host.n for v in emb):
        return False
    for u in range(pattern.n):
        for w in range(u + 1, pattern.n):
            if pattern.has_edge(u, w) != host.has_edge(emb[u], emb[w]):
                return False
    return True


# ---------------------------------------------------------------------------
# the chordal-to-k-tree embedding construction


def embed_in_ktree(h: SimpleGraph, k: int) -> tuple[KTree, Embedding]:
    """Embed a chordal K_{k+2}-free graph into a k-tree, constructively.

    Disconnected inputs first gain a hub vertex with exactly one neighbor in
    each component (the lowest-indexed vertex of each); the connected case
    recurses on the graph minus the first vertex of a perfect elimination
    ordering and then extends the neighborhood clique to size k, attaching a
    ladder of new vertices whose forward neighborhoods are k-cliques by
    construction.
    """
    if k < 1:
        raise ContractViolation("k must be >= 1")
    peo = dirac_order(h)
    if peo is None:
        raise ContractViolation("input is not chordal")
    if has_clique(h, k + 2) is not None:
        raise ContractViolation(f"input contains a clique on {k + 2} vertices")

    comps = components(h)
    if h.n == 0:
        return KTree(complete_graph(k), k, tuple(range(k))), ()
    if len(comps) > 1:
        hub_neighbors = mask_of(next(bits(c)) for c in comps)
        augmented = add_vertex(h, hub_neighbors)
        tree, emb = _embed_connected(augmented, k)
        return tree, emb[: h.n]
    return _embed_connected(h, k)


def _embed_connected(h: SimpleGraph, k: int) -> tuple[KTree, Embedding]:
    n = h.n
    if n <= k and _is_clique(h, h.vertices_mask):
        # small complete graphs sit inside the base K_k
        base = complete_graph(k)
        return KTree(base, k, tuple(range(k))), tuple(range(n))

    peo = dirac_order(h)
    x0 = peo[0]
    reduced, mapping = induced_subgraph(h, h.vertices_mask ^ (1 << x0))
    pos = {v: i for i, v in enumerate(mapping)}
    sub_tree, sub_emb = _embed_connected(reduced, k)

    # image of N(x0) inside the sub-k-tree
    n_mask = 0
    for u in bits(h.adj[x0]):
        n_mask |= 1 << sub_emb[pos[u]]
    tree, new_root = _attach(sub_tree, n_mask, k)

    # old vertices keep their indices in the extended k-tree; x0 maps to the
    # first new vertex
    emb = [0] * n
    emb[x0] = new_root
    for i, old in enumerate(mapping):
        emb[old] = sub_emb[i]
    return tree, tuple(emb)


def _extend_to_k_clique(t: KTree, n_mask: int, k: int) -> int:
    """A k-clique of the k-tree containing the given nonempty clique."""
    size = n_mask.bit_count()
    if size > k:
        raise ContractViolation("clique larger than k cannot extend")
    if size == k:
        return n_mask
    g = t.graph
    position = {v: i for i, v in enumerate(t.order)}
    x = min(bits(n_mask), key=position.__getitem__)
    if position[x] < g.n - k:
        pool = forward_neighbors(g, t.order, position[x]) | (1 << x)
    else:
        # all of the clique sits in the final base positions, which form a K_k
        pool = mask_of(t.order[g.n - k :])
    extras = [v for v in bits(pool & ~n_mask)]
    out = n_mask
    for v in extras[: k - size]:
        out |= 1 << v
    return out


def _attach(t: KTree, n_mask: int, k: int) -> tuple[KTree, int]:
    """Add the ladder x_0..x_{k-|N|} in front of the ordering; x_0 is the
    embedded image of the removed vertex and sees exactly N among old
    vertices."""
    clique = _extend_to_k_clique(t, n_mask, k)
    ys = sorted(bits(clique & ~n_mask))  # enumeration of K minus N, ascending
    m = len(ys)  # = k - |N|
    g = t.graph
    base_n = g.n
    new_ids = list(range(base_n, base_n + m + 1))  # x_0 .. x_m
    adj = list(g.adj)
    adj.extend([0] * (m + 1))

    def connect(u: int, v: int):
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    for i, xi in enumerate(new_ids):
        for y in bits(n_mask):
            connect(xi, y)
        for j in range(i):
            connect(xi, ys[j])
        for j in range(i + 1, m + 1):
            connect(xi, new_ids[j])
    bigger = SimpleGraph(base_n + m + 1, tuple(adj))
    order = tuple(new_ids) + t.order
    return KTree(bigger, k, order), new_ids[0]
