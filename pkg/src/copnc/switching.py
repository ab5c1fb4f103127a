"""The switching move on normal partitions, and reachability under it.

A switch at vertex v re-ends trails locally: v is internal in a trail T_i
and an end vertex of a trail T_j; the move detaches the end at v and
re-attaches it across the internal passage.  In marking terms the move is
exactly "move v's marked slot to one of its two passage slots and decode
again": when T_i and T_j are distinct both passage slots decode to valid
partitions (two branches, one per end of T_i); when T_i = T_j exactly one
does, the other would close the detached part into a cycle.  Every switch
changes the marked edge at v and nothing anywhere else.

Odd switching restricts to moves between odd partitions; conformal
switching additionally preserves the associated perfect matching.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .partition import (
    CycleError,
    NormalPartition,
    associated_matching,
    is_odd,
    trails_from_marking,
)

log = logging.getLogger(__name__)


class BadBranch(ValueError):
    """The branch vertex is not a usable end of the trail through v."""


class NotConformalInput(ValueError):
    """conformal_switch requires a partition conformal to the matching."""


class CapExceeded(RuntimeError):
    """Breadth-first exploration outgrew the caller-supplied node cap."""


def switch(p: NormalPartition, v: int, branch: int) -> NormalPartition:
    """Switch p on v; branch names the end of the internal trail kept on
    the re-attached side (the end playing the detached role must differ
    from v, so branch = v is rejected).

    The marked edge changes at v and only at v.
    """
    g = p.graph
    e = p.passage[v][0] >> 1
    ti = p.edge_pos[e][0]
    t = p.trails[ti]
    a, b = t.ends
    if branch == v or branch not in (a, b):
        raise BadBranch(f"vertex {branch} is not a usable end of {t}")
    i = next(
        k for k in range(1, len(t.vertices) - 1) if t.vertices[k] == v
    )
    # new marked slot: the passage dart on the far side from the branch end
    if branch == t.vertices[0]:
        new_dart = t.out_darts[i]
    else:
        new_dart = t.out_darts[i - 1] ^ 1
    marking = list(p.marked)
    marking[v] = new_dart
    try:
        return trails_from_marking(g, marking)
    except CycleError as exc:  # the forbidden re-attachment
        raise BadBranch(
            f"switch on {v} toward end {branch} closes a cycle"
        ) from exc


def switch_candidates(p: NormalPartition, v: int) -> list[NormalPartition]:
    """All valid switch results at v (two when v's trails differ, else one).

    Equivalent to trying both branch choices and keeping the decodable
    ones; results come out ordered by the new marked dart.
    """
    g = p.graph
    out = []
    for d in p.passage[v]:
        marking = list(p.marked)
        marking[v] = d
        try:
            out.append(trails_from_marking(g, marking))
        except CycleError:
            continue
    return out


def odd_switches(p: NormalPartition, v: int) -> list[NormalPartition]:
    """Switch results at v that are again odd partitions."""
    return [q for q in switch_candidates(p, v) if is_odd(q)]


def conformal_switch(
    p: NormalPartition, m: frozenset[int], v: int
) -> Optional[NormalPartition]:
    """The switch at v preserving conformality to m, or None when no such
    move exists (v internal and end of the same trail in the blocking
    pattern).

    At most one candidate can qualify: the move that re-marks v's matching
    slot makes a matching edge a trail end, which conformality forbids.
    """
    m = frozenset(m)
    if associated_matching(p) != m:
        raise NotConformalInput("partition is not conformal to the matching")
    winners = [
        q
        for q in switch_candidates(p, v)
        if is_odd(q) and associated_matching(q) == m
    ]
    if len(winners) > 1:  # pragma: no cover - would contradict the analysis
        log.warning(
            "conformal switch on %d produced %d candidates; keeping the first",
            v,
            len(winners),
        )
    return winners[0] if winners else None


def _moves(
    p: NormalPartition, kind: str, matching: Optional[frozenset[int]]
) -> Iterable[NormalPartition]:
    g = p.graph
    if kind == "plain":
        for v in range(g.n):
            yield from switch_candidates(p, v)
    elif kind == "odd":
        for v in range(g.n):
            yield from odd_switches(p, v)
    elif kind == "conformal":
        assert matching is not None
        for v in range(g.n):
            q = conformal_switch(p, matching, v)
            if q is not None:
                yield q
    else:
        raise ValueError(f"unknown move kind '{kind}'")


@dataclass(frozen=True)
class ClassSummary:
    size: int
    diameter: int
    diameter_exact: bool


def reachable_class(
    p: NormalPartition,
    kind: str = "plain",
    matching: Optional[frozenset[int]] = None,
    cap: Optional[int] = None,
) -> list[NormalPartition]:
    """Breadth-first closure of p under the chosen move kind.

    Raises CapExceeded when more than cap partitions get visited.  The
    result is ordered by discovery, seed first.
    """
    if kind == "conformal":
        matching = frozenset(matching) if matching else associated_matching(p)
    seen = {p.key: p}
    order = [p]
    frontier = [p]
    while frontier:
        nxt = []
        for q in frontier:
            for r in _moves(q, kind, matching):
                if r.key not in seen:
                    seen[r.key] = r
                    order.append(r)
                    nxt.append(r)
                    if cap is not None and len(seen) > cap:
                        raise CapExceeded(f"switch class exceeds cap {cap}")
        frontier = nxt
    return order


def _eccentricity(
    seed: NormalPartition,
    members: dict,
    kind: str,
    matching: Optional[frozenset[int]],
) -> int:
    depth = {seed.key: 0}
    frontier = [seed]
    ecc = 0
    while frontier:
        nxt = []
        for q in frontier:
            for r in _moves(q, kind, matching):
                if r.key in members and r.key not in depth:
                    depth[r.key] = depth[q.key] + 1
                    ecc = max(ecc, depth[r.key])
                    nxt.append(r)
        frontier = nxt
    return ecc


def switch_class(
    p: NormalPartition,
    kind: str = "plain",
    matching: Optional[frozenset[int]] = None,
    cap: Optional[int] = None,
    exact_diameter_limit: int = 128,
) -> tuple[ClassSummary, list[NormalPartition]]:
    """Summary (size, diameter) of p's reachability class plus its members.

    The diameter is exact (all-pairs breadth first) for classes up to
    exact_diameter_limit members; beyond that the seed eccentricity is
    reported as a lower bound and flagged inexact.
    """
    if kind == "conformal" and matching is None:
        matching = associated_matching(p)
    members = reachable_class(p, kind, matching, cap)
    keys = {q.key: q for q in members}
    if len(members) <= exact_diameter_limit:
        diam = max(_eccentricity(q, keys, kind, matching) for q in members)
        return ClassSummary(len(members), diam, True), members
    diam = _eccentricity(p, keys, kind, matching)
    return ClassSummary(len(members), diam, False), members


def partition_classes(
    partitions: Sequence[NormalPartition],
    kind: str,
    matching: Optional[frozenset[int]] = None,
    cap: Optional[int] = None,
) -> list[list[NormalPartition]]:
    """Quotient a family of partitions into switch-reachability classes.

    The family must be closed under the chosen moves (all odd partitions
    for odd moves, all partitions conformal to m for conformal moves);
    reached partitions outside the family would signal a caller error and
    are rejected.
    """
    pool = {p.key: p for p in partitions}
    classes: list[list[NormalPartition]] = []
    remaining = dict(sorted(pool.items()))
    while remaining:
        _, seed = next(iter(remaining.items()))
        members = reachable_class(seed, kind, matching, cap)
        for q in members:
            if q.key not in pool:
                raise ValueError("moves left the supplied family of partitions")
            remaining.pop(q.key, None)
        classes.append(members)
    return classes
