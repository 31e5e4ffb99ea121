"""Certificate-producing detectors for the forbidden induced structures.

Each find_* returns a role-annotated Certificate or None.  Searches are
anchored (end pair, triangle pair, hole-plus-center) rather than subset
enumeration; the subset oracles live with the tests.  All searches iterate in
a fixed ascending order, so certificates are deterministic: holes come
shortest length first, then smallest anchor vertex, then lexicographically
smallest vertex sequence (with the orientation fixed by second < last).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from .errors import ContractViolation
from .graphs import SimpleGraph, bits, mask_of, write_graph6

HOLE = "hole"
THETA = "theta"
PRISM = "prism"
EVEN_WHEEL = "even_wheel"
CLIQUE = "clique"
BICLIQUE = "biclique"


@dataclass(frozen=True)
class Certificate:
    """Tagged witness for a found structure, as explicit vertex lists.

    Role fields by kind: hole -> cycle; theta -> ends + paths; prism ->
    triangles + paths; even_wheel -> cycle + center; clique -> vertices;
    biclique -> side_a + side_b.  Unused fields stay at their defaults.
    """

    kind: str
    cycle: tuple[int, ...] = ()
    center: int = -1
    ends: tuple[int, int] = (-1, -1)
    paths: tuple[tuple[int, ...], ...] = ()
    triangles: tuple[tuple[int, ...], ...] = ()
    vertices: tuple[int, ...] = ()
    side_a: tuple[int, ...] = ()
    side_b: tuple[int, ...] = ()

    def to_dict(self, g: SimpleGraph | None = None) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == HOLE:
            out["cycle"] = list(self.cycle)
        elif self.kind == THETA:
            out["ends"] = list(self.ends)
            out["paths"] = [list(p) for p in self.paths]
        elif self.kind == PRISM:
            out["triangles"] = [list(t) for t in self.triangles]
            out["paths"] = [list(p) for p in self.paths]
        elif self.kind == EVEN_WHEEL:
            out["cycle"] = list(self.cycle)
            out["center"] = self.center
        elif self.kind == CLIQUE:
            out["vertices"] = list(self.vertices)
        elif self.kind == BICLIQUE:
            out["side_a"] = list(self.side_a)
            out["side_b"] = list(self.side_b)
        if g is not None:
            out["graph6"] = write_graph6(g)
        return out


def certificate_from_dict(d: dict) -> Certificate:
    kind = d["kind"]
    return Certificate(
        kind=kind,
        cycle=tuple(d.get("cycle", ())),
        center=d.get("center", -1),
        ends=tuple(d.get("ends", (-1, -1))),
        paths=tuple(tuple(p) for p in d.get("paths", ())),
        triangles=tuple(tuple(t) for t in d.get("triangles", ())),
        vertices=tuple(d.get("vertices", ())),
        side_a=tuple(d.get("side_a", ())),
        side_b=tuple(d.get("side_b", ())),
    )


class WheelClass(enum.Enum):
    GOOD = "good"
    BAD = "bad"
    UGLY = "ugly"
    NO_NEIGHBOR = "no_neighbor"


# ---------------------------------------------------------------------------
# holes


def is_hole(g: SimpleGraph, cycle: tuple[int, ...]) -> bool:
    """True iff the sequence is an induced cycle on >= 4 vertices."""
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(cycle[i], cycle[j])
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


def iter_holes(
    g: SimpleGraph, min_len: int = 4, max_len: int | None = None, parity: str = "any"
) -> Iterator[tuple[int, ...]]:
    """All holes, shortest first; each exactly once in canonical orientation.

    Canonical form: the cycle starts at its smallest vertex and runs toward
    the smaller of that vertex's two cycle-neighbors.
    """
    if min_len < 4:
        raise ContractViolation("holes have at least 4 vertices")
    top = g.n if max_len is None else min(max_len, g.n)
    want = {"any": (0, 1), "even": (0,), "odd": (1,)}[parity]
    for length in range(min_len, top + 1):
        if length % 2 not in want:
            continue
        yield from _holes_of_length(g, length)


def _holes_of_length(g: SimpleGraph, length: int) -> Iterator[tuple[int, ...]]:
    n, adj = g.n, g.adj
    for anchor in range(n - length + 1):
        above = ((1 << n) - 1) & ~((1 << (anchor + 1)) - 1)
        a_adj = adj[anchor]

        # path[0]=anchor; intermediate vertices avoid the anchor's neighborhood,
        # the closing vertex must sit in it
        def extend(path: tuple[int, ...], forbidden: int) -> Iterator[tuple[int, ...]]:
            last = path[-1]
            depth = len(path)
            if depth == length - 1:
                cands = adj[last] & a_adj & above & ~forbidden & ~mask_of(path)
                first = path[1]
                for w in bits(cands):
                    if first < w:
                        yield path + (w,)
                return
            if depth == 1:
                cands = a_adj & above
            else:
                cands = adj[last] & above & ~a_adj & ~forbidden & ~mask_of(path)
            nxt_forbidden = forbidden | (adj[last] if depth > 1 else 0)
            for w in bits(cands):
                yield from extend(path + (w,), nxt_forbidden)

        yield from extend((anchor,), 0)


def find_hole(
    g: SimpleGraph, parity: str = "any", min_len: int = 4, max_len: int | None = None
) -> Certificate | None:
    """First hole of the requested parity and length range, or None."""
    for cyc in iter_holes(g, min_len=min_len, max_len=max_len, parity=parity):
        return Certificate(HOLE, cycle=cyc)
    return None


def has_even_hole(g: SimpleGraph) -> bool:
    return find_hole(g, parity="even") is not None


def validate_hole(g: SimpleGraph, cert: Certificate) -> bool:
    return cert.kind == HOLE and is_hole(g, cert.cycle)


# ---------------------------------------------------------------------------
# chordality (greedy simplicial elimination; Dirac witness ordering)


def dirac_order(g: SimpleGraph) -> tuple[int, ...] | None:
    """Perfect elimination ordering, or None when the graph has a hole.

    Repeatedly peels the lowest-indexed simplicial vertex; for each position
    the forward neighborhood (neighbors not yet peeled) is a clique.
    """
    remaining = g.vertices_mask
    order = []
    for _ in range(g.n):
        found = -1
        for v in bits(remaining):
            nbrs = g.adj[v] & remaining
            if _is_clique(g, nbrs):
                found = v
                break
        if found < 0:
            return None
        order.append(found)
        remaining ^= 1 << found
    return tuple(order)


def is_chordal(g: SimpleGraph) -> tuple[bool, tuple[int, ...] | None]:
    order = dirac_order(g)
    return (order is not None), order


def _is_clique(g: SimpleGraph, mask: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if g.adj[v] & rest != rest:
            return False
    return True


# ---------------------------------------------------------------------------
# cliques and bicliques (exact, branch and bound)


def clique_number(g: SimpleGraph) -> int:
    best = _max_clique(g)
    return best.bit_count()


def _max_clique(g: SimpleGraph) -> int:
    adj = g.adj
    best = [0]

    def grow(current: int, cand: int):
        if current.bit_count() + cand.bit_count() <= best[0].bit_count():
            return
        if not cand:
            if current.bit_count() > best[0].bit_count():
                best[0] = current
            return
        # pivot on the candidate with most candidate-neighbors
        pivot = max(bits(cand), key=lambda v: (adj[v] & cand).bit_count())
        for v in bits(cand & ~adj[pivot] | (1 << pivot)):
            grow(current | (1 << v), cand & adj[v])
            cand ^= 1 << v

    grow(0, g.vertices_mask)
    return best[0]


def has_clique(g: SimpleGraph, t: int) -> Certificate | None:
    if t < 1:
        raise ContractViolation("clique size must be >= 1")
    if t == 0 or g.n < t:
        return None
    adj = g.adj

    def grow(current: int, cand: int) -> int | None:
        if current.bit_count() == t:
            return current
        if current.bit_count() + cand.bit_count() < t:
            return None
        for v in bits(cand):
            got = grow(current | (1 << v), cand & adj[v])
            if got is not None:
                return got
            cand ^= 1 << v
        return None

    got = grow(0, g.vertices_mask)
    if got is None:
        return None
    return Certificate(CLIQUE, vertices=tuple(bits(got)))


def has_biclique(g: SimpleGraph, s: int) -> Certificate | None:
    """Induced K_{s,s}: two disjoint stable s-sets, complete to each other."""
    if s < 1:
        raise ContractViolation("biclique size must be >= 1")
    from itertools import combinations

    verts = range(g.n)
    for a_side in combinations(verts, s):
        a_mask = mask_of(a_side)
        if not _is_stable(g, a_mask):
            continue
        common = g.vertices_mask & ~a_mask
        for v in a_side:
            common &= g.adj[v]
        if common.bit_count() < s:
            continue
        for b_side in combinations(tuple(bits(common)), s):
            if _is_stable(g, mask_of(b_side)):
                return Certificate(BICLIQUE, side_a=a_side, side_b=b_side)
    return None


def _is_stable(g: SimpleGraph, mask: int) -> bool:
    for v in bits(mask):
        if g.adj[v] & mask:
            return False
    return True


def validate_clique(g: SimpleGraph, cert: Certificate) -> bool:
    m = mask_of(cert.vertices)
    return cert.kind == CLIQUE and len(cert.vertices) == m.bit_count() and _is_clique(g, m)


def validate_biclique(g: SimpleGraph, cert: Certificate) -> bool:
    if cert.kind != BICLIQUE:
        return False
    a_mask, b_mask = mask_of(cert.side_a), mask_of(cert.side_b)
    if a_mask & b_mask or len(cert.side_a) != len(cert.side_b):
        return False
    if not (_is_stable(g, a_mask) and _is_stable(g, b_mask)):
        return False
    for v in bits(a_mask):
        if g.adj[v] & b_mask != b_mask:
            return False
    return True


# ---------------------------------------------------------------------------
# theta


def _iter_induced_ab_paths(g: SimpleGraph, a: int, b: int, allowed: int) -> Iterator[tuple[int, ...]]:
    """Induced a-b paths of length >= 2 with interior inside `allowed`, lazily,
    in DFS order (ascending vertex choices)."""
    adj = g.adj
    b_adj = adj[b]

    def extend(seq: tuple[int, ...], forbidden: int) -> Iterator[tuple[int, ...]]:
        last = seq[-1]
        if b_adj >> last & 1:
            # a b-neighbor closes the path; extending past it would chord
            yield (a,) + seq + (b,)
            return
        cands = adj[last] & allowed & ~forbidden & ~adj[a] & ~mask_of(seq)
        nxt_forbidden = forbidden | adj[last]
        for w in bits(cands):
            yield from extend(seq + (w,), nxt_forbidden)

    for first in bits(adj[a] & allowed):
        yield from extend((first,), 0)


def _induced_ab_paths(g: SimpleGraph, a: int, b: int, allowed: int) -> list[tuple[int, ...]]:
    """All induced a-b paths of length >= 2, shortest first then lexicographic."""
    out = list(_iter_induced_ab_paths(g, a, b, allowed))
    out.sort(key=lambda p: (len(p), p))
    return out


def find_theta(g: SimpleGraph) -> Certificate | None:
    """Two non-adjacent ends joined by three internally disjoint induced paths
    of length >= 2 whose interiors are pairwise anticomplete."""
    n, adj = g.n, g.adj
    for a in range(n):
        if adj[a].bit_count() < 3:
            continue
        for b in range(a + 1, n):
            if adj[b].bit_count() < 3 or g.has_edge(a, b):
                continue
            allowed = g.vertices_mask & ~(1 << a) & ~(1 << b)
            paths = _induced_ab_paths(g, a, b, allowed)
            if len(paths) < 3:
                continue
            interiors = [mask_of(p[1:-1]) for p in paths]
            closed = []
            for im in interiors:
                nb = im
                for v in bits(im):
                    nb |= adj[v]
                closed.append(nb)
            count = len(paths)
            compat = [0] * count
            for i in range(count):
                for j in range(i + 1, count):
                    if not (closed[i] & interiors[j]) and not (interiors[i] & interiors[j]):
                        compat[i] |= 1 << j
            for i in range(count):
                row = compat[i]
                for j in bits(row):
                    both = row & compat[j]
                    if both:
                        k = next(bits(both))
                        return Certificate(THETA, ends=(a, b), paths=(paths[i], paths[j], paths[k]))
    return None


def validate_theta(g: SimpleGraph, cert: Certificate) -> bool:
    if cert.kind != THETA or len(cert.paths) != 3:
        return False
    a, b = cert.ends
    if a == b or g.has_edge(a, b):
        return False
    interiors = []
    from .graphs import is_induced_path

    for p in cert.paths:
        if len(p) < 3 or p[0] != a or p[-1] != b:
            return False
        if not is_induced_path(g, p):
            return False
        interiors.append(mask_of(p[1:-1]))
    for i in range(3):
        for j in range(i + 1, 3):
            if interiors[i] & interiors[j]:
                return False
            for v in bits(interiors[i]):
                if g.adj[v] & interiors[j]:
                    return False
    return True


# ---------------------------------------------------------------------------
# prism


def _triangles(g: SimpleGraph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        for v in bits(g.adj[u] >> (u + 1) << (u + 1)):
            common = g.adj[u] & g.adj[v]
            for w in bits(common >> (v + 1) << (v + 1)):
                out.append((u, v, w))
    return out


def _bfs_distances(g: SimpleGraph, start: int) -> list[int]:
    dist = [-1] * g.n
    dist[start] = 0
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in bits(g.adj[u]):
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def find_prism(g: SimpleGraph) -> Certificate | None:
    """Two disjoint triangles joined by three disjoint paths, with only the
    triangle edges running between different paths.

    Triangle pairs are tried closest first so that on prism-bearing hosts the
    certificate surfaces before any expensive failing pair is exhausted.
    """
    tris = _triangles(g)
    if len(tris) < 2:
        return None
    dist_from = {}
    pairs = []
    for ti in range(len(tris)):
        t1 = tris[ti]
        m1 = mask_of(t1)
        if t1[0] not in dist_from:
            dist_from[t1[0]] = _bfs_distances(g, t1[0])
        for tj in range(ti + 1, len(tris)):
            t2 = tris[tj]
            if m1 & mask_of(t2):
                continue
            dd = [dist_from[t1[0]][v] for v in t2]
            gap = min((d for d in dd if d >= 0), default=g.n + 1)
            pairs.append((gap, ti, tj))
    pairs.sort()
    for _, ti, tj in pairs:
        t1, t2 = tris[ti], tris[tj]
        for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
            corners_b = (t2[perm[0]], t2[perm[1]], t2[perm[2]])
            paths = _prism_paths(g, t1, corners_b)
            if paths is not None:
                return Certificate(PRISM, triangles=(t1, corners_b), paths=paths)
    return None


def _prism_paths(
    g: SimpleGraph, aa: tuple[int, int, int], bb: tuple[int, int, int]
) -> tuple[tuple[int, ...], ...] | None:
    adj = g.adj
    corner_mask = mask_of(aa) | mask_of(bb)
    # no cross edges between corners other than the two triangles and the matching
    for i in range(3):
        for j in range(3):
            if i != j and g.has_edge(aa[i], bb[j]):
                return None

    def path_for(i: int, banned: int) -> Iterator[tuple[int, ...]]:
        a, b = aa[i], bb[i]
        other = corner_mask & ~(1 << a) & ~(1 << b)
        other_nbrs = 0
        for v in bits(other):
            other_nbrs |= adj[v]
        allowed = g.vertices_mask & ~corner_mask & ~banned & ~other_nbrs
        if g.has_edge(a, b):
            yield (a, b)
            return
        yield from _iter_induced_ab_paths(g, a, b, allowed)

    for p1 in path_for(0, 0):
        used1 = mask_of(p1[1:-1])
        nb1 = used1
        for v in bits(used1):
            nb1 |= adj[v]
        for p2 in path_for(1, used1 | nb1):
            used2 = mask_of(p2[1:-1])
            nb2 = used2
            for v in bits(used2):
                nb2 |= adj[v]
            for p3 in path_for(2, used1 | nb1 | used2 | nb2):
                return (p1, p2, p3)
    return None


def validate_prism(g: SimpleGraph, cert: Certificate) -> bool:
    if cert.kind != PRISM or len(cert.triangles) != 2 or len(cert.paths) != 3:
        return False
    aa, bb = cert.triangles
    if len(aa) != 3 or len(bb) != 3:
        return False
    if mask_of(aa) & mask_of(bb):
        return False
    for tri in (aa, bb):
        if not _is_clique(g, mask_of(tri)) or len(set(tri)) != 3:
            return False
    from .graphs import is_induced_path

    masks = []
    for i, p in enumerate(cert.paths):
        if p[0] != aa[i] or p[-1] != bb[i] or len(p) < 2:
            return False
        if not is_induced_path(g, p):
            return False
        masks.append(mask_of(p))
    for i in range(3):
        for j in range(i + 1, 3):
            if masks[i] & masks[j]:
                return False
            crossing = []
            for v in bits(masks[i]):
                for u in bits(g.adj[v] & masks[j]):
                    crossing.append(frozenset((v, u)))
            expect = {frozenset((aa[i], aa[j])), frozenset((bb[i], bb[j]))}
            if set(crossing) != expect or len(crossing) != 2:
                return False
    return True


# ---------------------------------------------------------------------------
# even wheels


def find_even_wheel(g: SimpleGraph) -> Certificate | None:
    """Hole C plus outside vertex with an even number (hence >= 4) of
    neighbors on C; holes are scanned shortest first (iterative deepening)."""
    for cyc in iter_holes(g):
        cmask = mask_of(cyc)
        for v in range(g.n):
            if cmask >> v & 1:
                continue
            k = (g.adj[v] & cmask).bit_count()
            if k >= 4 and k % 2 == 0:
                return Certificate(EVEN_WHEEL, cycle=cyc, center=v)
    return None


def validate_even_wheel(g: SimpleGraph, cert: Certificate) -> bool:
    if cert.kind != EVEN_WHEEL or not is_hole(g, cert.cycle):
        return False
    v = cert.center
    cmask = mask_of(cert.cycle)
    if not 0 <= v < g.n or cmask >> v & 1:
        return False
    k = (g.adj[v] & cmask).bit_count()
    return k >= 4 and k % 2 == 0


# ---------------------------------------------------------------------------
# class membership


@dataclass(frozen=True)
class Verdict:
    member: bool
    violation: Certificate | None = None

    def to_dict(self, g: SimpleGraph | None = None) -> dict:
        out = {"member": self.member}
        if self.violation is not None:
            out["violation"] = self.violation.to_dict(g)
        return out


def in_class_e(g: SimpleGraph) -> Verdict:
    """Membership in the (C4, theta, prism, even wheel)-free class; the first
    violation is reported in the fixed order C4, theta, prism, even wheel."""
    c4 = find_hole(g, min_len=4, max_len=4)
    if c4 is not None:
        return Verdict(False, c4)
    theta = find_theta(g)
    if theta is not None:
        return Verdict(False, theta)
    prism = find_prism(g)
    if prism is not None:
        return Verdict(False, prism)
    wheel = find_even_wheel(g)
    if wheel is not None:
        return Verdict(False, wheel)
    return Verdict(True)


def in_class_et(g: SimpleGraph, t: int) -> Verdict:
    """As in_class_e, with a clique check last: members must be K_t-free."""
    if t < 1:
        raise ContractViolation("t must be >= 1")
    base = in_class_e(g)
    if not base.member:
        return base
    big = has_clique(g, t)
    if big is not None:
        return Verdict(False, big)
    return Verdict(True)


def validate_certificate(g: SimpleGraph, cert: Certificate) -> bool:
    return {
        HOLE: validate_hole,
        THETA: validate_theta,
        PRISM: validate_prism,
        EVEN_WHEEL: validate_even_wheel,
        CLIQUE: validate_clique,
        BICLIQUE: validate_biclique,
    }[cert.kind](g, cert)


# ---------------------------------------------------------------------------
# hole-relative classification and d-substantial vertices


def classify_against_hole(g: SimpleGraph, cycle: tuple[int, ...], v: int) -> WheelClass:
    """Good / Bad / Ugly split of an outside vertex by its hole neighborhood."""
    if not is_hole(g, cycle):
        raise ContractViolation("cycle argument is not a hole")
    cmask = mask_of(cycle)
    if not 0 <= v < g.n or cmask >> v & 1:
        raise ContractViolation("vertex must lie outside the hole")
    nbrs = g.adj[v] & cmask
    k = nbrs.bit_count()
    if k == 0:
        return WheelClass.NO_NEIGHBOR
    if k == 1:
        return WheelClass.GOOD
    return WheelClass.BAD if _is_clique(g, nbrs) else WheelClass.UGLY


@dataclass(frozen=True)
class SubstantialWitness:
    cycle: tuple[int, ...]
    neighbors: tuple[int, ...]


def is_d_substantial(g: SimpleGraph, v: int, d: int) -> SubstantialWitness | None:
    """Hole C avoiding v with >= d+1 neighbors of v whose removal from C
    leaves it disconnected; None when no such hole exists."""
    if d < 1:
        raise ContractViolation("d must be >= 1")
    if not 0 <= v < g.n:
        raise ContractViolation("vertex out of range")
    rest = g.vertices_mask ^ (1 << v)
    for cyc in iter_holes(g):
        cmask = mask_of(cyc)
        if cmask >> v & 1:
            continue
        nbrs = g.adj[v] & cmask
        if nbrs.bit_count() < d + 1:
            continue
        if _cycle_minus_disconnected(cyc, nbrs):
            return SubstantialWitness(cycle=cyc, neighbors=tuple(bits(nbrs)))
    return None


def _cycle_minus_disconnected(cycle: tuple[int, ...], removed: int) -> bool:
    # survivors form arcs of the cycle; disconnected iff more than one arc
    k = len(cycle)
    keep = [not (removed >> c & 1) for c in cycle]
    if not any(keep):
        return False
    arcs = 0
    for i in range(k):
        if keep[i] and not keep[i - 1]:
            arcs += 1
    if arcs == 0:
        return False  # whole cycle survives, connected
    return arcs >= 2
