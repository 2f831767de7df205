"""Canonical paths: onion spirals, convex zigzags and reversible
suffix-independent paths between two outer points."""

from __future__ import annotations

from enum import Enum
from functools import cmp_to_key
from itertools import count

from .geom import PointSet, convex_hull, cross
from .paths import PathError, PlanePath, validate_path


class Direction(Enum):
    CLOCKWISE = "cw"
    COUNTERCLOCKWISE = "ccw"


class StartNotOuter(PathError):
    pass


class EndpointNotOuter(PathError):
    pass


class NotConvex(PathError):
    pass


def spiral(S: PointSet, s: int, d: Direction) -> PlanePath:
    """Peel inward from s, always stepping to the d-adjacent outer point of
    what is left (the current point included)."""
    if S.layer_of[s] != 0:
        raise StartNotOuter(f"{s} is not on the convex hull")
    remaining = set(range(S.n))
    order = [s]
    cur = s
    step = -1 if d is Direction.CLOCKWISE else 1
    while len(remaining) > 1:
        hull = convex_hull(S.points, remaining)
        nxt = hull[(hull.index(cur) + step) % len(hull)]
        remaining.discard(cur)
        order.append(nxt)
        cur = nxt
    return PlanePath(S, tuple(order))


def zigzag(S: PointSet, s: int, d: Direction) -> PlanePath:
    """Alternate between the two hull arcs leaving s; the ccw variant steps
    counterclockwise first."""
    if not S.is_convex():
        raise NotConvex("zigzag paths are defined for convex point sets")
    hull = list(S.layers[0])
    k = hull.index(s)
    ring = hull[k:] + hull[:k]
    if d is Direction.CLOCKWISE:
        ring = [ring[0]] + ring[1:][::-1]
    order = [ring[0]]
    lo, hi = 1, len(ring) - 1
    take_lo = True
    while lo <= hi:
        if take_lo:
            order.append(ring[lo])
            lo += 1
        else:
            order.append(ring[hi])
            hi -= 1
        take_lo = not take_lo
    return PlanePath(S, tuple(order))


def _outward_normal(S: PointSet, a: int, b: int) -> tuple[int, int]:
    # a -> b is a counterclockwise hull edge; its outward normal
    (ax, ay), (bx, by) = S.points[a], S.points[b]
    return (by - ay, ax - bx)


def extreme_direction(S: PointSet, t: int) -> tuple[int, int]:
    """Integer direction in which t is the unique maximum and no two points
    share a projection."""
    hull = list(S.layers[0])
    k = hull.index(t)
    prev, nxt = hull[k - 1], hull[(k + 1) % len(hull)]
    n1 = _outward_normal(S, prev, t)
    n2 = _outward_normal(S, t, nxt)
    pts = S.points
    for total in count(2):
        for a in range(1, total):
            b = total - a
            d = (a * n1[0] + b * n2[0], a * n1[1] + b * n2[1])
            proj = [d[0] * x + d[1] * y for x, y in pts]
            if len(set(proj)) == len(proj):
                return d
    raise AssertionError("unreachable")


def strongly_ssi_order(S: PointSet, s: int, t: int) -> tuple[int, ...]:
    """Order of a path from s to t that is suffix-independent in both directions.

    Points on s's far side of the line through s orthogonal to the extreme
    direction of t are swept by angle around s, starting at s's hull
    neighbour; the rest are collected by increasing projection, ending at t.
    """
    if s == t:
        raise PathError("endpoints must differ")
    if S.layer_of[s] != 0 or S.layer_of[t] != 0:
        raise EndpointNotOuter(f"{s} and {t} must both be outer")
    if S.n == 2:
        return (s, t)
    d = extreme_direction(S, t)
    pts = S.points

    def proj(i):
        return d[0] * pts[i][0] + d[1] * pts[i][1]

    ps = proj(s)
    near = [i for i in range(S.n) if i != s and proj(i) < ps]
    far = [i for i in range(S.n) if proj(i) > ps]
    order = [s]
    if near:
        hull = list(S.layers[0])
        k = hull.index(s)
        h = next(x for x in (hull[k - 1], hull[(k + 1) % len(hull)]) if proj(x) < ps)
        rest = [i for i in near if i != h]
        sign = 1
        if rest and cross(pts[s], pts[h], pts[rest[0]]) < 0:
            sign = -1

        def before(a, b):
            return -1 if sign * cross(pts[s], pts[a], pts[b]) > 0 else 1

        order.append(h)
        order.extend(sorted(rest, key=cmp_to_key(before)))
    order.extend(sorted(far, key=proj))
    return tuple(order)


def strongly_ssi_path(S: PointSet, s: int, t: int) -> PlanePath:
    return validate_path(S, strongly_ssi_order(S, s, t))


def strongly_ssi_on(S: PointSet, indices, s: int, t: int) -> tuple[int, ...]:
    """Strongly suffix-independent s-t order on a subset, in global indices."""
    sub, mapping = S.subset(indices)
    local = {g: k for k, g in enumerate(mapping)}
    return tuple(mapping[k] for k in strongly_ssi_order(sub, local[s], local[t]))
