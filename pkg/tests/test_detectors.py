import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from obstruction_lab.detectors import (
    WheelClass,
    classify_against_hole,
    clique_number,
    dirac_order,
    find_even_wheel,
    find_hole,
    find_prism,
    find_theta,
    has_biclique,
    has_clique,
    in_class_e,
    in_class_et,
    is_chordal,
    is_d_substantial,
    is_hole,
    iter_holes,
    validate_certificate,
)
from obstruction_lab.errors import ContractViolation
from obstruction_lab.graphs import (
    SimpleGraph,
    add_vertex,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    mask_of,
    path_graph,
)

from conftest import all_graphs, diamond
from oracle_detectors import (
    oracle_has_even_wheel,
    oracle_has_hole,
    oracle_has_prism,
    oracle_has_theta,
)


def test_find_hole_examples():
    c4 = cycle_graph(4)
    cert = find_hole(c4, parity="even")
    assert cert.cycle == (0, 1, 2, 3)
    assert find_hole(complete_graph(4)) is None
    c5 = cycle_graph(5)
    assert find_hole(c5, parity="even") is None
    assert find_hole(c5, parity="odd").cycle == (0, 1, 2, 3, 4)


def test_find_hole_deterministic_and_shortest_first():
    # C4 and C5 glued along nothing: the C4 must be reported
    g = SimpleGraph.from_edges(9, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4)])
    assert find_hole(g).cycle == (0, 1, 2, 3)
    assert find_hole(g, min_len=5).cycle == (4, 5, 6, 7, 8)


def test_is_chordal_examples():
    ok, order = is_chordal(diamond())
    assert ok and order is not None
    ok, order = is_chordal(cycle_graph(4))
    assert not ok and order is None
    # trees are chordal, leaf-first ordering
    tree = SimpleGraph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    ok, order = is_chordal(tree)
    assert ok
    remaining = set(range(5))
    for v in order:
        nbrs = {u for u in remaining if tree.has_edge(u, v)} - {v}
        assert len(nbrs) <= 1
        remaining.remove(v)


def test_dirac_order_forward_cliques():
    for g in all_graphs(6):
        order = dirac_order(g)
        if order is None:
            assert find_hole(g) is not None
            continue
        assert find_hole(g) is None
        remaining = g.vertices_mask
        for v in order:
            fwd = g.adj[v] & remaining & ~(1 << v)
            for u in range(g.n):
                if fwd >> u & 1:
                    assert g.adj[u] & fwd == fwd & ~(1 << u)
            remaining ^= 1 << v


def test_clique_examples():
    assert clique_number(complete_graph(4)) == 4
    assert clique_number(cycle_graph(5)) == 2
    k33 = complete_bipartite(3, 3)
    assert clique_number(k33) == 2
    assert has_biclique(k33, 3) is not None
    assert validate_certificate(k33, has_biclique(k33, 3))
    cert = has_clique(complete_graph(4), 3)
    assert validate_certificate(complete_graph(4), cert)
    assert has_clique(cycle_graph(5), 3) is None


def test_find_theta_examples():
    k23 = complete_bipartite(2, 3)
    cert = find_theta(k23)
    assert cert is not None and validate_certificate(k23, cert)
    k33 = complete_bipartite(3, 3)
    cert = find_theta(k33)
    assert cert is not None and validate_certificate(k33, cert)
    assert find_theta(cycle_graph(6)) is None


def test_find_prism_examples():
    prism = SimpleGraph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    )
    cert = find_prism(prism)
    assert cert is not None and validate_certificate(prism, cert)
    assert find_prism(complete_bipartite(3, 3)) is None


def _wall_3x3() -> SimpleGraph:
    rows, cols = 4, 8
    idx = {}
    n = 0
    for r in range(rows):
        for c in range(cols):
            idx[(r, c)] = n
            n += 1
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((idx[(r, c)], idx[(r, c + 1)]))
    for r in range(rows - 1):
        for c in range(cols):
            if c % 2 == r % 2:
                edges.append((idx[(r, c)], idx[(r + 1, c)]))
    g = SimpleGraph.from_edges(n, edges)
    # trim the two degree-1 corners the brick pattern leaves behind
    keep = mask_of(v for v in range(n) if g.degree(v) >= 2)
    from obstruction_lab.graphs import induced_subgraph

    return induced_subgraph(g, keep)[0]


def _subdivide_all(g: SimpleGraph) -> SimpleGraph:
    edges = []
    next_id = g.n
    for u, v in g.edges():
        edges.append((u, next_id))
        edges.append((next_id, v))
        next_id += 1
    return SimpleGraph.from_edges(next_id, edges)


def _line_graph(g: SimpleGraph) -> SimpleGraph:
    es = g.edges()
    out = []
    for i, (a, b) in enumerate(es):
        for j in range(i + 1, len(es)):
            c, d = es[j]
            if len({a, b} & {c, d}) == 1:
                out.append((i, j))
    return SimpleGraph.from_edges(len(es), out)


def test_prism_in_line_graph_of_subdivided_wall():
    host = _line_graph(_subdivide_all(_wall_3x3()))
    cert = find_prism(host)
    assert cert is not None
    assert validate_certificate(host, cert)


def test_find_even_wheel_examples():
    hub6 = add_vertex(cycle_graph(6), 0b111111)
    cert = find_even_wheel(hub6)
    assert cert is not None and cert.center == 6
    assert validate_certificate(hub6, cert)
    hub5 = add_vertex(cycle_graph(5), 0b11111)
    # derived with the subset oracle: the rim is the only hole, five spokes
    assert not oracle_has_even_wheel(hub5)
    assert find_even_wheel(hub5) is None
    assert find_even_wheel(cycle_graph(7)) is None
    assert find_even_wheel(path_graph(5)) is None


def test_class_membership_examples():
    assert in_class_e(cycle_graph(5)).member
    assert in_class_et(cycle_graph(5), 3).member
    v = in_class_e(cycle_graph(4))
    assert not v.member and v.violation.kind == "hole" and len(v.violation.cycle) == 4
    v = in_class_et(complete_graph(4), 4)
    assert not v.member and v.violation.kind == "clique"
    # fixed violation order: C4 before anything else
    g = add_vertex(cycle_graph(4), 0)
    assert in_class_e(g).violation.kind == "hole"


def test_classify_against_hole_examples():
    c6 = cycle_graph(6)
    g = add_vertex(c6, 0b000001)
    assert classify_against_hole(g, (0, 1, 2, 3, 4, 5), 6) is WheelClass.GOOD
    g = add_vertex(c6, 0b000011)
    assert classify_against_hole(g, (0, 1, 2, 3, 4, 5), 6) is WheelClass.BAD
    g = add_vertex(c6, 0b001001)
    assert classify_against_hole(g, (0, 1, 2, 3, 4, 5), 6) is WheelClass.UGLY
    g = add_vertex(c6, 0)
    assert classify_against_hole(g, (0, 1, 2, 3, 4, 5), 6) is WheelClass.NO_NEIGHBOR
    with pytest.raises(ContractViolation):
        classify_against_hole(g, (0, 1, 2), 6)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_classification_partitions(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 9)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
    g = SimpleGraph.from_edges(n, edges)
    for cycle in iter_holes(g):
        cmask = mask_of(cycle)
        for v in range(g.n):
            if cmask >> v & 1:
                continue
            cls = classify_against_hole(g, cycle, v)
            if g.adj[v] & cmask:
                assert cls in (WheelClass.GOOD, WheelClass.BAD, WheelClass.UGLY)
            else:
                assert cls is WheelClass.NO_NEIGHBOR


def test_d_substantial_examples():
    # hub adjacent to three alternating rim vertices of a C6
    g = add_vertex(cycle_graph(6), 0b010101)
    w = is_d_substantial(g, 6, 2)
    assert w is not None and len(w.neighbors) >= 3
    assert is_hole(g, w.cycle)
    # forests have no holes at all
    tree = SimpleGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    assert is_d_substantial(tree, 0, 2) is None
    # two rim neighbors are not enough for d = 2
    g = add_vertex(cycle_graph(6), 0b000101)
    assert is_d_substantial(g, 6, 2) is None


def test_even_hole_free_implies_member_small():
    for n in range(1, 7):
        for g in all_graphs(n):
            if find_hole(g, parity="even") is None:
                assert in_class_e(g).member


def test_oracle_equivalence_small():
    for n in range(1, 7):
        for g in all_graphs(n):
            assert (find_hole(g) is not None) == oracle_has_hole(g)
            assert (find_hole(g, parity="even") is not None) == oracle_has_hole(g, "even")
            assert (find_theta(g) is not None) == oracle_has_theta(g)
            assert (find_prism(g) is not None) == oracle_has_prism(g)
            assert (find_even_wheel(g) is not None) == oracle_has_even_wheel(g)


def test_certificates_validate_everywhere():
    for n in range(4, 7):
        for g in all_graphs(n):
            for cert in (find_hole(g), find_theta(g), find_prism(g), find_even_wheel(g)):
                if cert is not None:
                    assert validate_certificate(g, cert)


def test_certificate_json_round_trip():
    from obstruction_lab.detectors import certificate_from_dict

    k33 = complete_bipartite(3, 3)
    cert = find_theta(k33)
    doc = cert.to_dict(k33)
    assert doc["graph6"]
    again = certificate_from_dict(doc)
    assert again == cert
