"""JSON certificates for graphs and partition families.

Schema tag "copnc/1".  A certificate is:

    {
      "schema": "copnc/1",
      "graph": {"n": <int>, "edges": [[u, v], ...]},
      "partitions": [ [ {"vertices": [...], "edges": [...]}, ... ], ... ]
    }

Edge ids are positions in the edges array.  Serialization is canonical
(sorted keys, fixed separators, trailing newline) so identical structures
produce identical bytes.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .graph import CubicGraph
from .partition import NormalPartition, Trail, partition_violations, validate_normal

SCHEMA = "copnc/1"


class CertificateError(ValueError):
    """Structurally unusable certificate document."""


def graph_payload(g: CubicGraph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.endpoints]}


def certificate(
    g: CubicGraph,
    partitions: Sequence[NormalPartition],
    extra: Optional[dict] = None,
) -> dict:
    doc = {
        "schema": SCHEMA,
        "graph": graph_payload(g),
        "partitions": [
            [
                {"vertices": list(t.vertices), "edges": list(t.edges)}
                for t in p.trails
            ]
            for p in partitions
        ],
    }
    if extra:
        doc.update(extra)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def parse_graph(doc: dict) -> CubicGraph:
    try:
        n = int(doc["graph"]["n"])
        edges = [(int(u), int(v)) for u, v in doc["graph"]["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"bad graph payload: {exc}") from exc
    return CubicGraph(n, edges)


def parse_partitions(doc: dict, g: CubicGraph) -> list[list[Trail]]:
    """Strict parsing; raises CertificateError on any unusable trail."""
    out = []
    try:
        raw = doc["partitions"]
    except KeyError as exc:
        raise CertificateError("certificate has no partitions") from exc
    for i, part in enumerate(raw):
        trails = []
        for j, t in enumerate(part):
            try:
                trails.append(Trail(g, t["vertices"], t["edges"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise CertificateError(
                    f"partition {i} trail {j}: {exc}"
                ) from exc
        out.append(trails)
    return out


def validate_certificate(doc: dict, expect_graph: Optional[CubicGraph] = None) -> dict:
    """Full verification: trails form normal partitions; with two or more
    partitions they must be pairwise compatible.

    Returns a report dict with "ok" plus per-partition diagnostics; never
    raises for semantic failures (only for unusable documents)."""
    from .partition import compatibility_set

    from .partition import MalformedTrail

    g = parse_graph(doc)
    report: dict = {"schema": SCHEMA, "ok": True, "n": g.n, "m": g.m, "partitions": []}
    if expect_graph is not None and g != expect_graph:
        report["ok"] = False
        report["graph_mismatch"] = True
        return report
    try:
        raw = doc["partitions"]
    except KeyError as exc:
        raise CertificateError("certificate has no partitions") from exc
    parts: list[Optional[NormalPartition]] = []
    for i, part in enumerate(raw):
        entry: dict = {"index": i, "violations": []}
        trails = []
        for j, t in enumerate(part):
            try:
                trails.append(Trail(g, t["vertices"], t["edges"]))
            except MalformedTrail as exc:
                entry["violations"].append(f"trail {j} malformed: {exc}")
            except (KeyError, TypeError) as exc:
                raise CertificateError(f"partition {i} trail {j}: {exc}") from exc
        if not entry["violations"]:
            entry["violations"] = [str(v) for v in partition_violations(g, trails)]
        if entry["violations"]:
            report["ok"] = False
            parts.append(None)
        else:
            p = validate_normal(g, trails)
            parts.append(p)
            entry["lengths"] = sorted(p.lengths(), reverse=True)
        report["partitions"].append(entry)
    live = [p for p in parts if p is not None]
    if len(live) == len(parts) and len(live) >= 2:
        conflicts = []
        for i in range(len(live)):
            for j in range(i + 1, len(live)):
                agree = compatibility_set(live[i], live[j])
                if agree:
                    conflicts.append(
                        {"pair": [i, j], "agreement": sorted(agree)}
                    )
        if conflicts:
            report["ok"] = False
            report["incompatible"] = conflicts
    return report
