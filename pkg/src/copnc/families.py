"""Certified compatible triples for the Petersen, flower and Goldberg graphs.

The triples for the base members (Petersen, flower k=3, Goldberg k=3) were
derived once by constrained search and are frozen as package data together
with the two inductive gadgets that extend a triple from parameter k to
k+2.  Construction is deterministic: repeated calls produce byte-identical
certificates, and regenerate_check() re-runs the derivations to confirm
the frozen data has not drifted.

Derivation constraints:
  * Petersen: each partition has trail length profile (5, 3, 3, 3, 1); the
    first compatible triple among such partitions in canonical order.
  * flower base: the marked edges at u1, v1, w1, t1, u2, v2, w2, t2 are
    pinned to the boundary table in _flower_eqs; additionally u1u2 must be
    an odd edge of the first partition and t1t2 an odd edge of the other
    two.  The same conditions are re-imposed after every k -> k+2 step,
    which is what makes the gadget replayable.
  * Goldberg base: first compatible triple in search order whose marks
    admit a gadget that replays through k = 9; the interface contract is
    exactly the frozen block-boundary marks.

The k -> k+2 step deletes the three chaining edges between the first two
claws (flower) or blocks (Goldberg), inserts the new middle section, keeps
every carried mark, re-points the six marks that sat on deleted edges to
their replacement edges, and stamps the frozen gadget marks onto the new
vertices.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Optional, Sequence

from .graph import BadParameter, CubicGraph, generate
from .partition import (
    NormalPartition,
    Trail,
    is_odd,
    length_profile,
    trails_from_marking,
    triple_set,
    validate_normal,
)

Triple = tuple[NormalPartition, NormalPartition, NormalPartition]

_DATA_PACKAGE = "copnc.data"
_DATA_FILE = "families.json"


# ---------------------------------------------------------------------------
# Role coordinates
# ---------------------------------------------------------------------------


def _flower_vid(k: int, role: tuple[str, int]) -> int:
    x, i = role
    return {"u": 0, "v": 1, "w": 2, "t": 3}[x] * k + i - 1


def _edge_lookup(g: CubicGraph) -> dict[tuple[int, int], int]:
    lut = {}
    for e, (a, b) in enumerate(g.endpoints):
        lut[(a, b)] = e
        lut[(b, a)] = e
    return lut


def _dart_at(g: CubicGraph, lut, v: int, w: int) -> int:
    e = lut[(v, w)]
    return 2 * e if g.endpoints[e][0] == v else 2 * e + 1


def _flower_eqs(k: int) -> list[dict[tuple[str, int], tuple[str, int]]]:
    """Pinned boundary marks at the first two claws, one table per
    partition; the (u,k), (w,k), (t,k) entries wrap around the rings."""
    return [
        {
            ("u", 1): ("v", 1), ("v", 1): ("w", 1), ("w", 1): ("w", 2), ("t", 1): ("t", 2),
            ("u", 2): ("u", 3), ("v", 2): ("u", 2), ("w", 2): ("v", 2), ("t", 2): ("t", 1),
        },
        {
            ("u", 1): ("u", k), ("v", 1): ("t", 1), ("w", 1): ("v", 1), ("t", 1): ("w", k),
            ("u", 2): ("v", 2), ("v", 2): ("t", 2), ("w", 2): ("w", 3), ("t", 2): ("t", 3),
        },
        {
            ("u", 1): ("u", 2), ("v", 1): ("u", 1), ("w", 1): ("t", k), ("t", 1): ("v", 1),
            ("u", 2): ("u", 1), ("v", 2): ("w", 2), ("w", 2): ("w", 1), ("t", 2): ("v", 2),
        },
    ]


def _flower_role_edges(k: int) -> set[frozenset]:
    es = set()
    for i in range(1, k + 1):
        es.add(frozenset((("u", i), ("u", i % k + 1))))
        es.add(frozenset((("v", i), ("u", i))))
        es.add(frozenset((("v", i), ("w", i))))
        es.add(frozenset((("v", i), ("t", i))))
    for i in range(1, k):
        es.add(frozenset((("w", i), ("w", i + 1))))
        es.add(frozenset((("t", i), ("t", i + 1))))
    es.add(frozenset((("w", k), ("t", 1))))
    es.add(frozenset((("t", k), ("w", 1))))
    return es


def _flower_rename(role: tuple[str, int]) -> tuple[str, int]:
    x, i = role
    return (x, 1) if i == 1 else (x, i + 2)


def _flower_extend_tables(tables, k_new: int):
    """Carry per-partition role marks from F_{k_new-2} into F_{k_new}:
    rename indexes, re-point the six marks that lived on deleted edges."""
    edges = _flower_role_edges(k_new)
    out = []
    for tab in tables:
        new = {}
        for role, nrole in tab.items():
            r2, n2 = _flower_rename(role), _flower_rename(nrole)
            if frozenset((r2, n2)) in edges:
                new[r2] = n2
            else:
                x, i = r2
                assert i in (1, 4), (r2, n2)
                new[r2] = (x, 2) if i == 1 else (x, 3)
        out.append(new)
    return out


def _flower_side_ok(g, lut, k, parts: Sequence[NormalPartition]) -> bool:
    e_u12 = lut[(_flower_vid(k, ("u", 1)), _flower_vid(k, ("u", 2)))]
    e_t12 = lut[(_flower_vid(k, ("t", 1)), _flower_vid(k, ("t", 2)))]
    odd = lambda p, e: p.edge_pos[e][1] % 2 == 0
    return odd(parts[0], e_u12) and odd(parts[1], e_t12) and odd(parts[2], e_t12)


def flower_boundary_ok(k: int, parts: Sequence[NormalPartition]) -> bool:
    """Whether the triple satisfies the pinned boundary marks and the
    odd-edge side conditions at the first two claws."""
    g = generate("flower", k)
    lut = _edge_lookup(g)
    for tab, p in zip(_flower_eqs(k), parts):
        for role, nrole in tab.items():
            v, w = _flower_vid(k, role), _flower_vid(k, nrole)
            if p.marked_edge(v) != lut[(v, w)]:
                return False
    return _flower_side_ok(g, lut, k, parts)


def _roles_to_fixed(g, lut, k, tables):
    fixed: dict[int, list] = {}
    for p_idx, tab in enumerate(tables):
        for role, nrole in tab.items():
            v, w = _flower_vid(k, role), _flower_vid(k, nrole)
            fixed.setdefault(v, [None, None, None])[p_idx] = _dart_at(g, lut, v, w)
    return {v: tuple(ds) for v, ds in fixed.items() if all(d is not None for d in ds)}


def _flower_tables_for(k: int, base_tables, gadget_tables):
    """Full role tables for F_k obtained by replaying the gadget."""
    tables = [dict(t) for t in base_tables]
    for kk in range(5, k + 1, 2):
        tables = _flower_extend_tables(tables, kk)
        eqs = _flower_eqs(kk)
        for p_idx in range(3):
            for role in (("u", 2), ("v", 2), ("w", 2), ("t", 2)):
                tables[p_idx][role] = eqs[p_idx][role]
            tables[p_idx].update(gadget_tables[p_idx])
    return tables


def _decode_flower(k: int, tables) -> Triple:
    g = generate("flower", k)
    lut = _edge_lookup(g)
    parts = []
    for tab in tables:
        marking = [0] * g.n
        for role, nrole in tab.items():
            v, w = _flower_vid(k, role), _flower_vid(k, nrole)
            marking[v] = _dart_at(g, lut, v, w)
        parts.append(trails_from_marking(g, marking))
    return tuple(parts)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Goldberg coordinates: absolute vertex ids, since blocks 0..3 occupy the
# same id range 0..31 for every parameter
# ---------------------------------------------------------------------------


def _gold_b(j: int, i: int) -> int:
    return 8 * j + i - 1


def _gold_carry(k_new: int, marks_old):
    """Carry per-partition vertex->neighbor marks from G_{k_new-2} into
    G_{k_new}: old blocks j >= 1 shift by one double-block, marks on the
    three deleted chaining edges re-point to their replacements."""
    gk = generate("goldberg", k_new)
    lut = _edge_lookup(gk)
    shift = lambda v: v if v < 8 else v + 16
    repoint = {
        _gold_b(0, 6): _gold_b(1, 6), _gold_b(3, 6): _gold_b(2, 6),
        _gold_b(0, 4): _gold_b(1, 3), _gold_b(3, 3): _gold_b(2, 4),
        _gold_b(0, 7): _gold_b(1, 8), _gold_b(3, 8): _gold_b(2, 7),
    }
    out = []
    for tab in marks_old:
        new = {}
        for v, w in tab.items():
            v2, w2 = shift(v), shift(w)
            new[v2] = w2 if (v2, w2) in lut else repoint[v2]
        out.append(new)
    return gk, lut, out


def _gold_marks_of(g: CubicGraph, parts: Sequence[NormalPartition]):
    out = []
    for p in parts:
        tab = {}
        for v in range(g.n):
            e = p.marked_edge(v)
            a, b = g.endpoints[e]
            tab[v] = b if a == v else a
        out.append(tab)
    return out


def _decode_goldberg(k: int, base_marks, gadget_marks) -> Triple:
    marks = [dict(t) for t in base_marks]
    g = generate("goldberg", 3)
    for kk in range(5, k + 1, 2):
        g, _, marks = _gold_carry(kk, marks)
        for p_idx in range(3):
            marks[p_idx].update(gadget_marks[p_idx])
    lut = _edge_lookup(g)
    parts = []
    for tab in marks:
        marking = [_dart_at(g, lut, v, tab[v]) for v in range(g.n)]
        parts.append(trails_from_marking(g, marking))
    return tuple(parts)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Frozen data access and the public constructors
# ---------------------------------------------------------------------------


def _load_data() -> dict:
    text = resources.files(_DATA_PACKAGE).joinpath(_DATA_FILE).read_text()
    return json.loads(text)


_cache: Optional[dict] = None


def _data() -> dict:
    global _cache
    if _cache is None:
        _cache = _load_data()
    return _cache


def _role_from_str(s: str) -> tuple[str, int]:
    return (s[0], int(s[1:]))


def _tables_from_json(tabs) -> list[dict]:
    return [
        {_role_from_str(r): _role_from_str(nr) for r, nr in tab.items()}
        for tab in tabs
    ]


def _tables_to_json(tabs) -> list[dict]:
    return [
        {f"{x}{i}": f"{y}{j}" for (x, i), (y, j) in sorted(tab.items())}
        for tab in tabs
    ]


def petersen_triple() -> Triple:
    """The frozen compatible triple of the Petersen graph; each partition
    has one trail of length five, three of length three and one of length
    one."""
    g = generate("petersen")
    parts = []
    for trails_json in _data()["petersen"]["partitions"]:
        trails = [Trail(g, t["vertices"], t["edges"]) for t in trails_json]
        parts.append(validate_normal(g, trails))
    triple = tuple(parts)
    _check_triple(triple)
    return triple  # type: ignore[return-value]


def flower_triple(k: int) -> Triple:
    """Compatible triple of the flower graph on 4k vertices (odd k >= 3),
    satisfying the boundary marks and side conditions at every step."""
    if k < 3 or k % 2 == 0:
        raise BadParameter(f"flower parameter must be odd and >= 3, got {k}")
    d = _data()["flower"]
    tables = _flower_tables_for(k, _tables_from_json(d["base"]), _tables_from_json(d["gadget"]))
    triple = _decode_flower(k, tables)
    _check_triple(triple)
    return triple


def goldberg_triple(k: int) -> Triple:
    """Compatible triple of the Goldberg graph on 8k vertices (odd k >= 3)."""
    if k < 3 or k % 2 == 0:
        raise BadParameter(f"goldberg parameter must be odd and >= 3, got {k}")
    d = _data()["goldberg"]
    base = [{int(v): w for v, w in tab.items()} for tab in d["base"]]
    gadget = [{int(v): w for v, w in tab.items()} for tab in d["gadget"]]
    triple = _decode_goldberg(k, base, gadget)
    _check_triple(triple)
    return triple


def _check_triple(parts: Sequence[NormalPartition]) -> None:
    assert all(is_odd(p) for p in parts)
    assert not triple_set(*parts)


# ---------------------------------------------------------------------------
# Derivations (used once to build the frozen data, and by regenerate())
# ---------------------------------------------------------------------------


def derive_petersen() -> Triple:
    """First compatible triple among profile-(5,3,3,3,1) partitions in
    canonical order."""
    from .search import enumerate_nops

    g = generate("petersen")
    want = (5, 3, 3, 3, 1)
    cand = [p for p in enumerate_nops(g) if length_profile(p) == want]
    marks = [tuple(p.marked_edge(v) for v in range(g.n)) for p in cand]

    def ok(i: int, j: int) -> bool:
        return all(a != b for a, b in zip(marks[i], marks[j]))

    for i in range(len(cand)):
        for j in range(i + 1, len(cand)):
            if not ok(i, j):
                continue
            for k in range(j + 1, len(cand)):
                if ok(i, k) and ok(j, k):
                    return (cand[i], cand[j], cand[k])
    raise AssertionError("no profile triple on the Petersen graph")


def derive_flower() -> tuple[list[dict], list[dict]]:
    """Base tables for k=3 plus the replayable gadget, both as role maps.

    Searches base triples pinned to the boundary table, then gadget
    completions on k=5, and keeps the first pair whose replay validates
    through k=9."""
    from .search import enumerate_compatible_triples

    g3 = generate("flower", 3)
    lut3 = _edge_lookup(g3)
    base_fixed = _roles_to_fixed(g3, lut3, 3, _flower_eqs(3))
    all_roles3 = [(x, i) for x in "uvwt" for i in range(1, 4)]

    def role_tables(g, k, parts, roles):
        rev = {_flower_vid(k, (x, i)): (x, i) for x in "uvwt" for i in range(1, k + 1)}
        out = []
        for p in parts:
            tab = {}
            for role in roles:
                v = _flower_vid(k, role)
                e = p.marked_edge(v)
                a, b = g.endpoints[e]
                tab[role] = rev[b if a == v else a]
            out.append(tab)
        return out

    g5 = generate("flower", 5)
    lut5 = _edge_lookup(g5)
    for base in enumerate_compatible_triples(g3, fixed=base_fixed):
        if not _flower_side_ok(g3, lut3, 3, base):
            continue
        base_tables = role_tables(g3, 3, base, all_roles3)
        carried = _flower_extend_tables(base_tables, 5)
        eq5 = _flower_eqs(5)
        for p_idx in range(3):
            for role in (("u", 2), ("v", 2), ("w", 2), ("t", 2)):
                carried[p_idx][role] = eq5[p_idx][role]
        fixed5 = _roles_to_fixed(g5, lut5, 5, carried)
        for trip5 in enumerate_compatible_triples(g5, fixed=fixed5):
            if not _flower_side_ok(g5, lut5, 5, trip5):
                continue
            gadget = role_tables(g5, 5, trip5, [("u", 3), ("v", 3), ("w", 3), ("t", 3)])
            if _flower_replays(base_tables, gadget):
                return base_tables, gadget
    raise AssertionError("no replayable flower gadget found")


def _flower_replays(base_tables, gadget) -> bool:
    for kk in (7, 9):
        try:
            parts = _decode_flower(kk, _flower_tables_for(kk, base_tables, gadget))
        except Exception:
            return False
        if not all(is_odd(p) for p in parts) or triple_set(*parts):
            return False
        if not flower_boundary_ok(kk, parts):
            return False
    return True


def derive_goldberg() -> tuple[list[dict], list[dict]]:
    """Base marks on the k=3 graph plus the 16-vertex gadget, found as the
    first (base, completion) pair in search order that replays through
    k=9."""
    from .search import enumerate_compatible_triples

    g3 = generate("goldberg", 3)
    for base in enumerate_compatible_triples(g3):
        base_marks = _gold_marks_of(g3, base)
        g5, lut5, carried = _gold_carry(5, base_marks)
        fixed5 = {}
        for p_idx, tab in enumerate(carried):
            for v, w in tab.items():
                fixed5.setdefault(v, [None, None, None])[p_idx] = _dart_at(g5, lut5, v, w)
        fixed5 = {v: tuple(ds) for v, ds in fixed5.items()}
        for trip5 in enumerate_compatible_triples(g5, fixed=fixed5):
            m5 = _gold_marks_of(g5, trip5)
            gadget = [{v: tab[v] for v in range(8, 24)} for tab in m5]
            if _gold_replays(base_marks, gadget):
                return base_marks, gadget
    raise AssertionError("no replayable goldberg gadget found")


def _gold_replays(base_marks, gadget) -> bool:
    for kk in (7, 9):
        try:
            parts = _decode_goldberg(kk, base_marks, gadget)
        except Exception:
            return False
        if not all(is_odd(p) for p in parts) or triple_set(*parts):
            return False
    return True


def derive_family_data() -> dict:
    """Re-run every derivation and assemble the frozen-data document."""
    pet = derive_petersen()
    fl_base, fl_gadget = derive_flower()
    go_base, go_gadget = derive_goldberg()
    return {
        "schema": "copnc/1",
        "petersen": {
            "partitions": [
                [
                    {"vertices": list(t.vertices), "edges": list(t.edges)}
                    for t in p.trails
                ]
                for p in pet
            ]
        },
        "flower": {
            "base": _tables_to_json(fl_base),
            "gadget": _tables_to_json(fl_gadget),
        },
        "goldberg": {
            "base": [{str(v): w for v, w in sorted(tab.items())} for tab in go_base],
            "gadget": [{str(v): w for v, w in sorted(tab.items())} for tab in go_gadget],
        },
    }


def family_data_text(data: Optional[dict] = None) -> str:
    """Canonical serialization used for the frozen file and drift checks."""
    if data is None:
        data = derive_family_data()
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def regenerate_check() -> bool:
    """True when re-derivation reproduces the frozen data byte for byte."""
    frozen = resources.files(_DATA_PACKAGE).joinpath(_DATA_FILE).read_text()
    return family_data_text() == frozen
