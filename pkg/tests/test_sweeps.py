import json

import pytest

from obstruction_lab.detectors import find_hole, find_theta, in_class_e, validate_certificate
from obstruction_lab.detectors import certificate_from_dict
from obstruction_lab.graphs import parse_graph6
from obstruction_lab.minors import eligible_pairs, triangle_minor
from obstruction_lab.sweeps import (
    SweepReport,
    corrupt_toggle_01,
    random_two_tree,
    sweep_c4_necessity,
    sweep_embed,
    sweep_even_hole_subset_E,
    sweep_obs51,
    sweep_thm31,
    sweep_thm32,
)
from obstruction_lab.ktrees import validate_ktree


def test_sweep_thm31_small_tiers():
    assert sweep_thm31(5, threads=1).ok
    r = sweep_thm31(6, threads=1)
    assert r.ok and r.graphs_examined > 100 and r.instances_checked > 200


def test_sweep_thm32_small():
    r = sweep_thm32(7, threads=1)
    assert r.ok and r.instances_checked >= 3


def test_sweep_even_hole_subset_small():
    r = sweep_even_hole_subset_E(7, threads=1)
    assert r.ok and r.graphs_examined > 500


def test_sweep_embed_small():
    for k in (1, 2, 3):
        r = sweep_embed(6, k, threads=1)
        assert r.ok, r.violations[:1]
        assert r.details["max_ktree_size"] >= 1


def test_mutation_self_test_reports_violations():
    # measured: the toggled-pair fault first bites at the n=5 tier
    r = sweep_thm31(5, threads=1, mutate=True)
    assert r.name == "thm31_mutated"
    assert len(r.violations) >= 1
    entry = r.violations[0]
    host = parse_graph6(entry["graph6"])
    pair = tuple(entry["pair"])
    minor, _, _ = triangle_minor(host, *pair)
    corrupted = corrupt_toggle_01(minor)
    assert parse_graph6(entry["minor_graph6"]) == corrupted
    verdict = in_class_e(corrupted)
    assert not verdict.member
    cert = certificate_from_dict(entry["certificate"])
    assert validate_certificate(corrupted, cert)


def test_parallel_serial_reports_identical():
    serial = sweep_thm31(6, threads=1)
    parallel = sweep_thm31(6, threads=2)
    assert serial.canonical_json() == parallel.canonical_json()
    s32 = sweep_thm32(6, threads=1)
    p32 = sweep_thm32(6, threads=2)
    assert s32.canonical_json() == p32.canonical_json()


def test_sweeps_deterministic_given_args():
    a = sweep_even_hole_subset_E(6, threads=1)
    b = sweep_even_hole_subset_E(6, threads=1)
    assert a.canonical_json() == b.canonical_json()
    ra = sweep_obs51(100, seed=7)
    rb = sweep_obs51(100, seed=7)
    assert ra.canonical_json() == rb.canonical_json()


def test_report_json_schema(tmp_path):
    r = sweep_thm31(4, threads=1)
    path = tmp_path / "report.json"
    r.write(str(path))
    doc = json.loads(path.read_text())
    assert doc["schema"] == "obstruction-lab/report-v1"
    assert doc["sweep"] == "thm31"
    assert "wall_time_s" in doc
    assert doc["violations"] == []


def test_sweep_obs51_small():
    r = sweep_obs51(300, seed=3)
    assert r.ok
    assert r.details["fallbacks"] == 0


def test_random_two_tree_always_valid():
    import random

    rng = random.Random(5)
    for _ in range(50):
        t = random_two_tree(rng, rng.randint(2, 10))
        assert validate_ktree(t.graph, 2, t.order) == (True, None)


def test_sweep_c4_necessity_finds_at_8(tmp_path):
    archive = tmp_path / "exemplars.json"
    r = sweep_c4_necessity(8, threads=1, archive_path=str(archive))
    assert len(r.findings) >= 1
    assert r.ok  # findings are not violations
    doc = json.loads(archive.read_text())
    for entry in doc["exemplars"]:
        host = parse_graph6(entry["graph6"])
        assert find_hole(host, min_len=4, max_len=4) is not None
        assert find_theta(host) is None
        pair = tuple(entry["pair"])
        assert any((p.z1, p.z2) == pair for p in eligible_pairs(host))
        minor, _, _ = triangle_minor(host, *pair)
        assert parse_graph6(entry["minor_graph6"]) == minor
        cert = certificate_from_dict(entry["theta"])
        assert validate_certificate(minor, cert)


def test_sweep_c4_necessity_empty_below_8():
    r = sweep_c4_necessity(7, threads=1)
    assert not r.findings
