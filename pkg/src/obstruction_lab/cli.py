"""Command-line entry point: check, find, minor, embed, verify, sweep, gen, grow.

Graphs stream one graph6 line at a time (or a single edge-list document), so
external generators can be piped straight into the sweeps and checkers.  Exit
codes: 0 clean, 1 violation found, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import detectors, sweeps
from .detectors import certificate_from_dict, validate_certificate
from .errors import ContractViolation, GraphFormatError
from .graphs import SimpleGraph, parse_edgelist, parse_graph6, write_graph6
from .ktrees import KTree, cone, embed_in_ktree, gen_tdr, recognize_ktree
from .minors import triangle_minor
from .pipeline import pipeline_grow
from .predicates import verify_witness, witness_from_dict
from .sweeps import default_threads, random_two_tree

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _read_graphs(path: str, fmt: str) -> list[SimpleGraph]:
    text = _read_text(path)
    if fmt == "edgelist":
        return [parse_edgelist(text)]
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def _cmd_check(args) -> int:
    graphs = _read_graphs(args.input, args.format)
    worst = EXIT_OK
    for g in graphs:
        verdict = detectors.in_class_et(g, args.t) if args.t else detectors.in_class_e(g)
        name = f"E_{args.t}" if args.t else "E"
        if verdict.member:
            print(f"{write_graph6(g)}: member of {name}")
        else:
            worst = EXIT_VIOLATION
            print(f"{write_graph6(g)}: violation {json.dumps(verdict.violation.to_dict())}")
    return worst


_FINDERS = {
    "hole": lambda g, a: detectors.find_hole(g, parity=a.parity, min_len=a.min_len),
    "theta": lambda g, a: detectors.find_theta(g),
    "prism": lambda g, a: detectors.find_prism(g),
    "even-wheel": lambda g, a: detectors.find_even_wheel(g),
    "clique": lambda g, a: detectors.has_clique(g, a.size),
    "biclique": lambda g, a: detectors.has_biclique(g, a.size),
}


def _cmd_find(args) -> int:
    graphs = _read_graphs(args.input, args.format)
    results = []
    for g in graphs:
        cert = _FINDERS[args.structure](g, args)
        results.append(
            {"graph6": write_graph6(g), "found": cert is not None}
            | ({"certificate": cert.to_dict(g)} if cert else {})
        )
    print(json.dumps(results[0] if len(results) == 1 else results, indent=2))
    if args.out:
        # the file variant is the bare certificate so `verify` can consume it
        found = [r["certificate"] for r in results if r["found"]]
        if not found:
            print("nothing found; no witness file written", file=sys.stderr)
        else:
            with open(args.out, "w") as fh:
                json.dump(found[0] if len(found) == 1 else found, fh, indent=2)
                fh.write("\n")
    return EXIT_OK


def _cmd_minor(args) -> int:
    (g,) = _read_graphs(args.input, args.format)
    minor, z, mapping = triangle_minor(g, args.z1, args.z2)
    print(write_graph6(minor))
    if args.explain:
        print(f"# z={z} mapping={list(mapping)}", file=sys.stderr)
    return EXIT_OK


def _cmd_embed(args) -> int:
    (g,) = _read_graphs(args.input, args.format)
    tree, emb = embed_in_ktree(g, args.k)
    sys.stdout.write(tree.to_text())
    print(" ".join(f"{i}:{v}" for i, v in enumerate(emb)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    doc = json.loads(_read_text(args.witness))
    if not isinstance(doc, dict) or "kind" not in doc:
        print("witness file must be a JSON object with a 'kind' field", file=sys.stderr)
        return EXIT_USAGE
    kind = doc.get("kind")
    if kind in (
        detectors.HOLE,
        detectors.THETA,
        detectors.PRISM,
        detectors.EVEN_WHEEL,
        detectors.CLIQUE,
        detectors.BICLIQUE,
    ):
        g = parse_graph6(doc["graph6"])
        cert = certificate_from_dict(doc)
        if validate_certificate(g, cert):
            print(f"{kind}: ok")
            return EXIT_OK
        print(f"{kind}: invalid certificate")
        return EXIT_VIOLATION
    g, witness = witness_from_dict(doc)
    bad = verify_witness(g, witness)
    if bad is None:
        print(f"{kind}: ok")
        return EXIT_OK
    print(f"{kind}: clause {bad} violated")
    return EXIT_VIOLATION


def _cmd_sweep(args) -> int:
    runner = sweeps.SWEEPS.get(args.suite)
    if runner is None:
        print(f"unknown sweep {args.suite!r}", file=sys.stderr)
        return EXIT_USAGE
    report = runner(args)
    print(report.summary())
    if args.out:
        report.write(args.out)
    if args.suite == "c4-necessity" and not report.findings:
        print("no exemplar found", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _cmd_gen(args) -> int:
    if args.what == "cone":
        (g,) = _read_graphs(args.input, args.format)
        print(write_graph6(cone(g)))
        return EXIT_OK
    if args.what == "tdr":
        print(write_graph6(gen_tdr(args.d, args.r)))
        return EXIT_OK
    rng = random.Random(args.seed)
    if args.what == "ktree-random":
        if args.k != 2:
            print("random generation supports k=2 trees", file=sys.stderr)
            return EXIT_USAGE
        tree = random_two_tree(rng, args.n)
        sys.stdout.write(tree.to_text())
        return EXIT_OK
    if args.what == "random-graph":
        edges = [
            (i, j)
            for i in range(args.n)
            for j in range(i + 1, args.n)
            if rng.random() < args.p
        ]
        print(write_graph6(SimpleGraph.from_edges(args.n, edges)))
        return EXIT_OK
    return EXIT_USAGE


def _cmd_grow(args) -> int:
    (g,) = _read_graphs(args.input, args.format)
    target = KTree.from_text(_read_text(args.target))
    if target.k == 2 and recognize_ktree(target.graph, 2) is None:
        print("target is not a 2-tree", file=sys.stderr)
        return EXIT_USAGE
    trace = pipeline_grow(g, target, budget=args.budget, t=args.t)
    print(json.dumps(trace.to_dict(g), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="obstruction-lab")
    sub = top.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("input", nargs="?", default="-", help="path or - for stdin")
        p.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")

    p = sub.add_parser("check", help="class membership verdict with certificate")
    add_io(p)
    p.add_argument("--t", type=int, default=0, help="also require K_t-freeness")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("find", help="search one named structure")
    add_io(p)
    p.add_argument("--structure", required=True, choices=sorted(_FINDERS))
    p.add_argument("--parity", choices=["any", "even", "odd"], default="any")
    p.add_argument("--min-len", type=int, default=4, dest="min_len")
    p.add_argument("--size", type=int, default=3, help="clique/biclique size")
    p.add_argument("--out", help="write the result JSON here")
    p.set_defaults(fn=_cmd_find)

    p = sub.add_parser("minor", help="triangle minor of an adjacent pair")
    add_io(p)
    p.add_argument("--z1", type=int, required=True)
    p.add_argument("--z2", type=int, required=True)
    p.add_argument("--explain", action="store_true")
    p.set_defaults(fn=_cmd_minor)

    p = sub.add_parser("embed", help="embed a chordal K_{k+2}-free graph in a k-tree")
    add_io(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_embed)

    p = sub.add_parser("verify", help="re-verify a witness or certificate file")
    p.add_argument("witness", help="witness JSON path or - for stdin")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("sweep", help="run a named theorem suite")
    p.add_argument("suite", choices=sorted(sweeps.SWEEPS))
    p.add_argument("--max-n", type=int, default=8, dest="max_n")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--mutate", action="store_true", help="fault-injection self-test")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--out-archive", help="archive c4-necessity exemplars here")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("gen", help="generate cone | tdr | ktree-random | random-graph")
    p.add_argument("what", choices=["cone", "tdr", "ktree-random", "random-graph"])
    add_io(p)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("grow", help="best-effort blurry 2-tree growing pipeline")
    add_io(p)
    p.add_argument("--target", required=True, help="k-tree file: graph6 line + ordering line")
    p.add_argument("--budget", type=int, default=500000)
    p.add_argument("--t", type=int, default=4)
    p.set_defaults(fn=_cmd_grow)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ContractViolation, GraphFormatError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
