"""Connecting suffix-independent paths with a common outer start."""

from __future__ import annotations

from typing import Sequence

from ..constructions import StartNotOuter, strongly_ssi_on
from ..flips import FlipPlan, rooted
from ..paths import PlanePath, is_suffix_independent
from .builder import NotSuffixIndependent, PlanBuilder, PlannerDefect


def _connect_from(b: PlanBuilder, k: int, target: Sequence[int]) -> None:
    # b.cur.order[k:] and target are suffix-independent orders on the same
    # points with the same first point.
    target = tuple(target)
    while True:
        cur = b.cur.order[k:]
        if cur == target:
            return
        if len(cur) <= 2:
            raise PlannerDefect(f"cannot connect {cur} to {target}")
        s, s1, s2 = cur[0], cur[1], target[1]
        if s1 == s2:
            k += 1
            target = target[1:]
            continue
        bridge = strongly_ssi_on(b.S, cur[1:], s1, s2)
        _connect_from(b, k + 1, bridge)
        b.flip((s, s1), (s, s2), "swap first edge, reversing the bridge")
        _connect_from(b, k + 1, target[1:])
        return


def ssi_connect_plan(P1: PlanePath, P2: PlanePath, s: int | None = None) -> FlipPlan:
    """Flip sequence between two suffix-independent paths from the same outer
    start; every intermediate path is suffix-independent as well."""
    if s is not None:
        P1, P2 = rooted(P1, s), rooted(P2, s)
    S = P1.S
    if P1.start != P2.start:
        raise ValueError("paths must share their start")
    if S.layer_of[P1.start] != 0:
        raise StartNotOuter(f"{P1.start} is not outer")
    for P in (P1, P2):
        if not is_suffix_independent(P):
            raise NotSuffixIndependent(f"{list(P.order)} is not suffix-independent")
    b = PlanBuilder(P1)
    _connect_from(b, 0, P2.order)
    return b.plan()
