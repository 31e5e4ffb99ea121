"""Immutable bitset graphs, set algebra, connectivity and bit-exact file I/O.

Vertices are dense integers 0..n-1.  A vertex set is a plain Python int used
as a bitmask, so intersection/union/complement are single operations and every
structure stores vertex indices, never labels.  Graphs are immutable after
construction and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ContractViolation, GraphFormatError

MAX_VERTICES = 128  # hard representation cap; n <= 64 fits one machine word per row


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of a vertex-set mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph: vertex count plus one neighbor bitmask per vertex.

    Invariants: adjacency is symmetric and irreflexive; equality is plain
    (n, adj) equality.  Construction from untrusted data goes through
    from_edges or the parsers, which call validate(); internal builders are
    trusted and skip it (constructions sit on the sweep hot path).
    """

    n: int
    adj: tuple[int, ...]

    def validate(self) -> "SimpleGraph":
        if not 0 <= self.n <= MAX_VERTICES:
            raise ContractViolation(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ContractViolation("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ContractViolation(f"vertex {v} has neighbors out of range")
            if row >> v & 1:
                raise ContractViolation(f"vertex {v} is self-adjacent")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ContractViolation(f"edge {v}-{u} is not symmetric")
        return self

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        adj = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ContractViolation(f"bad edge ({u},{v}) for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj)).validate()

    @property
    def vertices_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(row):
                out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# builders


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, (0,) * n)


def complete_graph(n: int) -> SimpleGraph:
    full = (1 << n) - 1
    return SimpleGraph(n, tuple(full ^ (1 << v) for v in range(n)))


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ContractViolation("cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return SimpleGraph.from_edges(n, edges)


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return SimpleGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return SimpleGraph(g.n + h.n, tuple(adj))


def complement_graph(g: SimpleGraph) -> SimpleGraph:
    full = g.vertices_mask
    return SimpleGraph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def add_vertex(g: SimpleGraph, neighbors: int) -> SimpleGraph:
    """New graph with one extra vertex adjacent to the given mask."""
    if neighbors & ~g.vertices_mask:
        raise ContractViolation("neighbor mask out of range")
    v = g.n
    adj = [row | (1 << v if neighbors >> u & 1 else 0) for u, row in enumerate(g.adj)]
    adj.append(neighbors)
    return SimpleGraph(g.n + 1, tuple(adj))


# ---------------------------------------------------------------------------
# induced subgraphs, set predicates, paths, connectivity


def induced_subgraph(g: SimpleGraph, subset: int) -> tuple[SimpleGraph, tuple[int, ...]]:
    """Relabeled induced subgraph plus the map new index -> original vertex."""
    if subset & ~g.vertices_mask:
        raise ContractViolation("subset has members outside the graph")
    keep = tuple(bits(subset))
    pos = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for u in bits(g.adj[v] & subset):
            row |= 1 << pos[u]
        adj.append(row)
    return SimpleGraph(len(keep), tuple(adj)), keep


def delete_vertex(g: SimpleGraph, v: int) -> SimpleGraph:
    """Induced subgraph on all vertices but v, later indices shifted down by one."""
    if not 0 <= v < g.n:
        raise ContractViolation("vertex out of range")
    low = (1 << v) - 1
    adj = []
    for u, row in enumerate(g.adj):
        if u == v:
            continue
        adj.append((row & low) | (row >> (v + 1)) << v)
    return SimpleGraph(g.n - 1, tuple(adj))


def neighbors_of_set(g: SimpleGraph, subset: int) -> int:
    """All vertices outside the set with at least one neighbor inside it."""
    out = 0
    for v in bits(subset):
        out |= g.adj[v]
    return out & ~subset


def is_anticomplete(g: SimpleGraph, xs: int, ys: int) -> bool:
    if xs & ys:
        raise ContractViolation("anticomplete check requires disjoint sets")
    for v in bits(xs):
        if g.adj[v] & ys:
            return False
    return True


def is_complete_to(g: SimpleGraph, xs: int, ys: int) -> bool:
    if xs & ys:
        raise ContractViolation("complete check requires disjoint sets")
    for v in bits(xs):
        if g.adj[v] & ys != ys:
            return False
    return True


def is_induced_path(g: SimpleGraph, seq: tuple[int, ...]) -> bool:
    """True iff consecutive vertices are adjacent and non-consecutive ones are not."""
    k = len(seq)
    if len(set(seq)) != k:
        raise ContractViolation("path sequence has duplicate vertices")
    for v in seq:
        if not 0 <= v < g.n:
            raise ContractViolation(f"path vertex {v} out of range")
    for i in range(k):
        for j in range(i + 1, k):
            if g.has_edge(seq[i], seq[j]) != (j == i + 1):
                return False
    return True


def components(g: SimpleGraph) -> list[int]:
    """Connected components as vertex-set masks, ordered by smallest member."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = g.adj[v] & ~comp
        while frontier:
            comp |= frontier
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: SimpleGraph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


# ---------------------------------------------------------------------------
# graph6 (bit-exact per the public format description)


def write_graph6(g: SimpleGraph) -> str:
    if g.n > MAX_VERTICES:
        raise ContractViolation("graph too large for this implementation")
    if g.n <= 62:
        head = [g.n + 63]
    else:
        head = [126, (g.n >> 12) + 63, ((g.n >> 6) & 63) + 63, (g.n & 63) + 63]
    stream = []
    for j in range(1, g.n):
        for i in range(j):
            stream.append(g.adj[i] >> j & 1)
    while len(stream) % 6:
        stream.append(0)
    body = []
    for k in range(0, len(stream), 6):
        val = 0
        for b in stream[k : k + 6]:
            val = val << 1 | b
        body.append(val + 63)
    return bytes(head + body).decode("ascii")


def parse_graph6(text: str) -> SimpleGraph:
    data = text.strip().encode("ascii")
    if not data:
        raise GraphFormatError("empty graph6 line")
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphFormatError(f"invalid graph6 byte at offset {off}")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise GraphFormatError("graph6 extended (>258047 vertices) header at offset 1 not supported")
        if len(data) < 4:
            raise GraphFormatError(f"truncated graph6 header at offset {len(data)}")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        n = data[0] - 63
        pos = 1
    if n > MAX_VERTICES:
        raise GraphFormatError(f"vertex count {n} exceeds cap {MAX_VERTICES} (header at offset 0)")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise GraphFormatError(f"truncated graph6 body at offset {len(data)}")
    if len(data) - pos > nbytes:
        raise GraphFormatError(f"trailing bytes at offset {pos + nbytes}")
    adj = [0] * n
    idx = 0
    for k in range(nbytes):
        val = data[pos + k] - 63
        for shift in range(5, -1, -1):
            if idx >= nbits:
                if val >> shift & 1:
                    raise GraphFormatError(f"nonzero padding bit at offset {pos + k}")
                continue
            if val >> shift & 1:
                # bit idx corresponds to pair (i, j), column-major upper triangle
                j = _col_of(idx)
                i = idx - j * (j - 1) // 2
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            idx += 1
    return SimpleGraph(n, tuple(adj)).validate()


def _col_of(idx: int) -> int:
    # smallest j with j*(j+1)/2 > idx
    j = int((2 * idx) ** 0.5)
    while j * (j - 1) // 2 > idx:
        j -= 1
    while (j + 1) * j // 2 <= idx:
        j += 1
    return j


# ---------------------------------------------------------------------------
# plain edge-list text ("n" header line, then "u v" lines, 0-based)


def write_edgelist(g: SimpleGraph) -> str:
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> SimpleGraph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphFormatError("empty edge list: missing header line 1")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphFormatError("bad vertex count on line 1") from None
    edges = []
    for no, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v' on line {no}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer endpoint on line {no}") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphFormatError(f"edge out of range on line {no}")
        edges.append((u, v))
    return SimpleGraph.from_edges(n, edges)
