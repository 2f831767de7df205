"""Fixed-start planning on convex point sets via the two hull spirals."""

from __future__ import annotations

from ..constructions import Direction, NotConvex, spiral
from ..flips import FlipPlan, rooted
from ..paths import PlanePath
from .builder import PlanBuilder, PlannerDefect


def _shared(P: PlanePath, Q: PlanePath) -> int:
    return len(P.edge_set & Q.edge_set)


def convex_to_spiral_plan(P: PlanePath, s: int | None = None) -> FlipPlan:
    """At most n-3 flips from P to one of the two spirals from its start.

    Each flip adds the missing target-spiral hull edge at the current end.
    """
    S = P.S
    if not S.is_convex():
        raise NotConvex("convex planner needs a convex point set")
    if s is not None:
        P = rooted(P, s)
    s = P.start
    b = PlanBuilder(P)
    if S.n <= 2:
        return b.plan()
    cw, ccw = spiral(S, s, Direction.CLOCKWISE), spiral(S, s, Direction.COUNTERCLOCKWISE)
    if P.order in (cw.order, ccw.order):
        return b.plan()
    target = cw if _shared(P, cw) >= 2 else ccw
    goal = target.edge_set
    for _ in range(S.n):
        cur = b.cur
        if cur.order == target.order:
            return b.plan()
        t = cur.end
        for w in (S.ccw_next(t), S.cw_next(t)):
            if (min(t, w), max(t, w)) in goal and not cur.has_edge(t, w):
                b.flip_at_end(w, "hull step toward spiral")
                break
        else:
            raise PlannerDefect(f"no spiral hull edge available at end {t}")
    raise PlannerDefect("convex planner did not converge")


def spiral_swap(b: PlanBuilder) -> None:
    """One flip between the two spirals: join the end to s, drop s's first edge."""
    b.flip_at_end(b.cur.start, "swap spiral chirality")


def convex_pair_plan(P1: PlanePath, P2: PlanePath, s: int | None = None) -> FlipPlan:
    """P1 -> spiral [-> other spiral] -> P2, at most 2n-5 flips."""
    if s is not None:
        P1, P2 = rooted(P1, s), rooted(P2, s)
    if P1.start != P2.start:
        raise ValueError("paths must share their start")
    b = PlanBuilder(P1)
    if P1.order == P2.order:
        return b.plan()
    b.extend(convex_to_spiral_plan(P1).steps)
    back = convex_to_spiral_plan(P2)
    if b.cur.order != back.final.order:
        spiral_swap(b)
    b.extend(back.reversed().steps)
    if b.cur.order != P2.order:
        raise PlannerDefect("convex pair plan missed its target")
    return b.plan()
