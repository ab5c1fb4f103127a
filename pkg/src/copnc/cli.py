"""Command line surface.

Subcommands:
  validate      check a JSON certificate (graph + partitions)
  construct     build a partition or conformal triple and emit a certificate
  family        emit the certified triples for petersen / flower:k / goldberg:k
  switch-class  explore switching reachability classes
  sweep         run a conjecture check over a graph corpus, JSONL out

Graph arguments accept a family name ("petersen"), a parametrized name
("flower:7"), or a file reference ("@graphs.g6", "@graphs.edges").

Exit codes: 0 success/verified, 2 validation failure, 3 precondition
failure, 4 cap or budget exhausted, 5 I/O or format trouble.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from . import certificates as C
from . import families
from .construct import (
    ConformalTriple,
    NoMatching,
    NotBipartite,
    NotThreeEdgeColorable,
    SearchExhausted,
    bipartite_triple,
    conformal_triple_general,
    nop_from_matching,
)
from .graph import BadParameter, CubicGraph, Malformed, NonCubic, generate, parse_edge_list, parse_graph6
from .partition import associated_matching
from .search import check_graph, enumerate_normal_partitions, enumerate_nops
from .switching import CapExceeded, partition_classes

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3
EXIT_EXHAUSTED = 4
EXIT_IO = 5


class UsageError(ValueError):
    pass


def resolve_graphs(spec: str) -> list[tuple[str, CubicGraph]]:
    """A graph spec names a generator or a file of graphs."""
    if spec.startswith("@"):
        path = Path(spec[1:])
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc
        if path.suffix == ".g6":
            out = []
            for i, line in enumerate(text.splitlines()):
                if line.strip():
                    out.append((f"{path.stem}:{i}", parse_graph6(line)))
            return out
        if path.suffix == ".edges":
            return [
                (f"{path.stem}:{i}", g) for i, g in enumerate(parse_edge_list(text))
            ]
        raise UsageError(f"unknown graph file type: {path.suffix}")
    if ":" in spec:
        name, _, param = spec.partition(":")
        try:
            k = int(param)
        except ValueError:
            raise UsageError(f"bad parameter in graph spec '{spec}'") from None
        return [(spec, generate(name, k))]
    return [(spec, generate(spec))]


def resolve_graph(spec: str) -> CubicGraph:
    graphs = resolve_graphs(spec)
    if len(graphs) != 1:
        raise UsageError(f"'{spec}' holds {len(graphs)} graphs, need exactly one")
    return graphs[0][1]


def _emit(doc: dict, out: Optional[str]) -> None:
    text = C.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    try:
        doc = json.loads(Path(args.certificate).read_text())
    except OSError as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"certificate is not JSON: {exc}", file=sys.stderr)
        return EXIT_IO
    expect = resolve_graph(args.graph) if args.graph else None
    try:
        report = C.validate_certificate(doc, expect)
    except (C.CertificateError, Malformed, NonCubic) as exc:
        print(json.dumps({"ok": False, "error": str(exc)}))
        return EXIT_IO
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK if report["ok"] else EXIT_INVALID


def cmd_construct(args) -> int:
    g = resolve_graph(args.graph)
    try:
        if args.method == "matching":
            p = nop_from_matching(g)
            doc = C.certificate(g, [p], {"method": "matching"})
        elif args.method == "bipartite":
            triple = bipartite_triple(g)
            doc = _triple_doc(g, triple, "bipartite")
        elif args.method == "conformal":
            triple = conformal_triple_general(g, seed=args.seed)
            doc = _triple_doc(g, triple, "conformal")
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown method {args.method}")
    except (NotBipartite, NotThreeEdgeColorable, NoMatching) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SearchExhausted as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    _emit(doc, args.out)
    return EXIT_OK


def _triple_doc(g: CubicGraph, triple: ConformalTriple, method: str) -> dict:
    return C.certificate(
        g,
        list(triple.partitions),
        {
            "method": method,
            "coloring": list(triple.coloring),
            "matchings": [sorted(associated_matching(p)) for p in triple.partitions],
        },
    )


def cmd_family(args) -> int:
    if args.regenerate:
        ok = families.regenerate_check()
        print("frozen family data reproduced" if ok else "family data drift detected")
        return EXIT_OK if ok else EXIT_INVALID
    if not args.name:
        print("family name required (petersen | flower:k | goldberg:k)", file=sys.stderr)
        return EXIT_IO
    name, _, param = args.name.partition(":")
    try:
        if name == "petersen":
            triple = families.petersen_triple()
            g = generate("petersen")
        elif name == "flower":
            triple = families.flower_triple(int(param))
            g = generate("flower", int(param))
        elif name == "goldberg":
            triple = families.goldberg_triple(int(param))
            g = generate("goldberg", int(param))
        else:
            raise UsageError(f"unknown family '{name}'")
    except (BadParameter, ValueError) as exc:
        print(f"bad family: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    doc = C.certificate(g, list(triple), {"family": args.name})
    if args.emit_partitions:
        doc["matchings"] = [sorted(associated_matching(p)) for p in triple]
        doc["profiles"] = [sorted(p.lengths(), reverse=True) for p in triple]
    _emit(doc, args.out)
    return EXIT_OK


def cmd_switch_class(args) -> int:
    g = resolve_graph(args.graph)
    try:
        matching = (
            frozenset(int(x) for x in args.matching.split(",")) if args.matching else None
        )
    except ValueError:
        print(f"bad --matching '{args.matching}': expected comma separated edge ids", file=sys.stderr)
        return EXIT_IO
    try:
        if args.moves == "plain":
            pool = enumerate_normal_partitions(g, cap=args.cap)
        elif args.moves == "odd":
            pool = enumerate_nops(g, cap=args.cap)
        else:
            if matching is None:
                raise UsageError("--matching is required for conformal moves")
            pool = enumerate_nops(g, cap=args.cap, conformal_to=matching)
        classes = partition_classes(pool, args.moves, matching, cap=args.cap)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    doc = {
        "schema": C.SCHEMA,
        "graph": C.graph_payload(g),
        "moves": args.moves,
        "matching": sorted(matching) if matching else None,
        "count": len(classes),
        "sizes": sorted((len(c) for c in classes), reverse=True),
    }
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def _sweep_worker(item):
    (gid, n, edges), which = item
    g = CubicGraph(n, edges)
    rep = check_graph(g, which, gid)
    return rep.to_json()


def cmd_sweep(args) -> int:
    try:
        graphs = resolve_graphs(args.input if args.input.startswith("@") else "@" + args.input)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    items = [((gid, g.n, g.endpoints), args.check) for gid, g in graphs]
    out = open(args.out, "w") if args.out else sys.stdout
    failures = 0
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = pool.map(_sweep_worker, items, chunksize=4)
                for rep in reports:
                    out.write(json.dumps(rep, sort_keys=True) + "\n")
                    failures += 0 if rep.get("agree", True) else 1
        else:
            for item in items:
                rep = _sweep_worker(item)
                out.write(json.dumps(rep, sort_keys=True) + "\n")
                failures += 0 if rep.get("agree", True) else 1
    finally:
        if args.out:
            out.close()
    if failures:
        print(f"{failures} graphs disagree with the expected property", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="copnc", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="verify a partition certificate")
    p.add_argument("certificate", help="path to the JSON certificate")
    p.add_argument("--graph", help="optional graph spec the certificate must match")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("construct", help="build partitions and emit a certificate")
    p.add_argument("--method", required=True, choices=["matching", "bipartite", "conformal"])
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("family", help="emit a certified family triple")
    p.add_argument("name", nargs="?", help="petersen | flower:k | goldberg:k")
    p.add_argument("--emit-partitions", action="store_true")
    p.add_argument("--regenerate", action="store_true", help="re-derive and compare to frozen data")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("switch-class", help="switching reachability classes")
    p.add_argument("--graph", required=True)
    p.add_argument("--moves", required=True, choices=["plain", "odd", "conformal"])
    p.add_argument("--matching", help="comma separated edge ids (conformal moves)")
    p.add_argument("--cap", type=int, default=100000)
    p.set_defaults(fn=cmd_switch_class)

    p = sub.add_parser("sweep", help="conjecture checks over a corpus")
    p.add_argument("--input", required=True, help="file.g6 or file.edges")
    p.add_argument("--check", required=True, choices=["conj25", "thm12", "thm5"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="JSONL report path (default stdout)")
    p.set_defaults(fn=cmd_sweep)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    except (Malformed, NonCubic, BadParameter) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
