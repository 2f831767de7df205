"""Exact integer predicates, convex hulls and convex-layer peeling.

All arithmetic is on Python integers, so every predicate is exact.  Points
are plain ``(x, y)`` tuples; a :class:`PointSet` owns an ordered tuple of
them and caches the derived structure the rest of the package needs
(layers, level edges, a pairwise segment-crossing table).
"""

from __future__ import annotations

import json
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Point = tuple[int, int]

COORD_LIMIT = 2**31 - 1


class Orientation(IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class GeometryError(ValueError):
    """Input points violate an exactness or general-position requirement."""


class NotInGeneralPosition(GeometryError):
    def __init__(self, triple: tuple[int, int, int] | None, duplicate: tuple[int, int] | None = None):
        self.triple = triple
        self.duplicate = duplicate
        if duplicate is not None:
            msg = f"points {duplicate[0]} and {duplicate[1]} coincide"
        else:
            msg = f"points {triple[0]}, {triple[1]}, {triple[2]} are collinear"
        super().__init__(msg)


def cross(p: Point, q: Point, r: Point) -> int:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    d = cross(p, q, r)
    if d > 0:
        return Orientation.COUNTERCLOCKWISE
    if d < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    # r collinear with pq; is it within the bounding box?
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff closed segments ab and cd meet somewhere other than a shared endpoint."""
    shared = {a, b} & {c, d}
    if len(shared) == 2:
        return True  # identical segments overlap everywhere
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if shared:
        # Two segments from a common endpoint only overlap when collinear and
        # pointing the same way.
        (o,) = shared
        p = b if a == o else a
        q = d if c == o else c
        if cross(o, p, q) != 0:
            return False
        return (p[0] - o[0]) * (q[0] - o[0]) + (p[1] - o[1]) * (q[1] - o[1]) > 0
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(c, d, a):
        return True
    if d2 == 0 and _on_segment(c, d, b):
        return True
    if d3 == 0 and _on_segment(a, b, c):
        return True
    if d4 == 0 and _on_segment(a, b, d):
        return True
    return False


def find_degeneracy(points: Sequence[Point]) -> NotInGeneralPosition | None:
    """Return a diagnostic for the first duplicate pair or collinear triple, else None."""
    seen: dict[Point, int] = {}
    for i, p in enumerate(points):
        if p in seen:
            return NotInGeneralPosition(None, (seen[p], i))
        seen[p] = i
    for i, j, k in combinations(range(len(points)), 3):
        if cross(points[i], points[j], points[k]) == 0:
            return NotInGeneralPosition((i, j, k))
    return None


def in_general_position(points: Sequence[Point]) -> bool:
    return find_degeneracy(points) is None


def convex_hull(points: Sequence[Point], indices: Iterable[int] | None = None) -> list[int]:
    """Counterclockwise hull of ``points[indices]``, lowest index first.

    Only strict extreme points are reported.  One or two points give a
    degenerate cycle of that length.
    """
    idx = sorted(set(range(len(points)) if indices is None else indices))
    if len(idx) <= 2:
        return idx
    order = sorted(idx, key=lambda i: points[i])

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and cross(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    k = hull.index(min(hull))
    return hull[k:] + hull[:k]


def peel_layers(points: Sequence[Point], indices: Iterable[int] | None = None) -> list[list[int]]:
    remaining = set(range(len(points)) if indices is None else indices)
    layers = []
    while remaining:
        hull = convex_hull(points, remaining)
        layers.append(hull)
        remaining.difference_update(hull)
    return layers


def strictly_inside(points: Sequence[Point], hull: Sequence[int], q: Point) -> bool:
    """Is q strictly inside the convex polygon given by a ccw index cycle?"""
    if len(hull) < 3:
        return False
    m = len(hull)
    return all(cross(points[hull[k]], points[hull[(k + 1) % m]], q) > 0 for k in range(m))


def inside_or_on(points: Sequence[Point], hull: Sequence[int], q) -> bool:
    """Closed containment test; q may carry Fraction coordinates."""
    m = len(hull)
    if m == 0:
        return False
    if m == 1:
        return tuple(points[hull[0]]) == tuple(q)
    if m == 2:
        a, b = points[hull[0]], points[hull[1]]
        return cross(a, b, q) == 0 and _on_segment(a, b, q)
    return all(cross(points[hull[k]], points[hull[(k + 1) % m]], q) >= 0 for k in range(m))


def clip_segment(points: Sequence[Point], hull: Sequence[int], a: Point, b: Point):
    """Portion of segment ab inside a ccw convex polygon, as two Fraction
    points, or None when the intersection is empty.  Cyrus-Beck with exact
    rationals."""
    lo, hi = Fraction(0), Fraction(1)
    m = len(hull)
    dx, dy = b[0] - a[0], b[1] - a[1]
    for k in range(m):
        p, q = points[hull[k]], points[hull[(k + 1) % m]]
        # inside: cross(p, q, x) >= 0; along the segment it is c0 + s * c1
        c0 = cross(p, q, a)
        c1 = (q[0] - p[0]) * dy - (q[1] - p[1]) * dx
        if c1 == 0:
            if c0 < 0:
                return None
            continue
        s = Fraction(-c0, c1)
        if c1 > 0:
            lo = max(lo, s)
        else:
            hi = min(hi, s)
        if lo > hi:
            return None
    return ((a[0] + lo * dx, a[1] + lo * dy), (a[0] + hi * dx, a[1] + hi * dy))


class PointSet:
    """An immutable general-position point set with cached convex layers."""

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = []
        for p in points:
            x, y = p
            if not (isinstance(x, int) and isinstance(y, int)) or isinstance(x, bool) or isinstance(y, bool):
                raise GeometryError(f"coordinates must be integers, got {p!r}")
            if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
                raise GeometryError(f"coordinate out of 32-bit range: {p!r}")
            pts.append((x, y))
        bad = find_degeneracy(pts)
        if bad is not None:
            raise bad
        self.points: tuple[Point, ...] = tuple(pts)
        self.n = len(pts)
        self.layers: tuple[tuple[int, ...], ...] = tuple(tuple(layer) for layer in peel_layers(pts))
        layer_of = [0] * self.n
        for i, layer in enumerate(self.layers):
            for v in layer:
                layer_of[v] = i
        self.layer_of: tuple[int, ...] = tuple(layer_of)
        self._subsets: dict[frozenset, tuple[PointSet, tuple[int, ...]]] = {}

    def __repr__(self):
        return f"PointSet({list(self.points)!r})"

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    @property
    def layer_number(self) -> int:
        return len(self.layers)

    @property
    def outer(self) -> tuple[int, ...]:
        return self.layers[0] if self.layers else ()

    def is_convex(self) -> bool:
        return self.layer_number <= 1

    @cached_property
    def level_edges(self) -> frozenset[tuple[int, int]]:
        edges = set()
        for layer in self.layers:
            m = len(layer)
            if m == 2:
                edges.add(tuple(sorted(layer)))
            elif m >= 3:
                for k in range(m):
                    edges.add(tuple(sorted((layer[k], layer[(k + 1) % m]))))
        return frozenset(edges)

    @cached_property
    def _hull_pos(self) -> dict[int, int]:
        return {v: k for layer in self.layers for k, v in enumerate(layer)}

    def ccw_next(self, v: int) -> int:
        """Counterclockwise successor of v on its own layer."""
        layer = self.layers[self.layer_of[v]]
        return layer[(self._hull_pos[v] + 1) % len(layer)]

    def cw_next(self, v: int) -> int:
        layer = self.layers[self.layer_of[v]]
        return layer[(self._hull_pos[v] - 1) % len(layer)]

    def adjacent_on_layer(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.level_edges

    # Segment crossing table.  Edge (i, j), i < j, has id i * n + j; for each id
    # we keep a bitmask of every edge id whose segment crosses it.
    def edge_id(self, u: int, v: int) -> int:
        return u * self.n + v if u < v else v * self.n + u

    @cached_property
    def crossing_masks(self) -> list[int]:
        n, pts = self.n, self.points
        masks = [0] * (n * n)
        edges = list(combinations(range(n), 2))
        for (a, b), (c, d) in combinations(edges, 2):
            if len({a, b, c, d}) < 4:
                continue  # general position: edges sharing an endpoint never overlap
            if segments_cross(pts[a], pts[b], pts[c], pts[d]):
                e, f = a * n + b, c * n + d
                masks[e] |= 1 << f
                masks[f] |= 1 << e
        return masks

    def edges_cross(self, e: tuple[int, int], f: tuple[int, int]) -> bool:
        return bool(self.crossing_masks[self.edge_id(*e)] >> self.edge_id(*f) & 1)

    def is_cutting_segment(self, u: int, v: int) -> bool:
        masks = self.crossing_masks
        e = self.edge_id(u, v)
        return any(masks[e] >> self.edge_id(a, b) & 1 for a, b in self.level_edges)

    def hull_of(self, indices: Iterable[int]) -> list[int]:
        return convex_hull(self.points, indices)

    def subset(self, indices: Iterable[int]) -> tuple["PointSet", tuple[int, ...]]:
        """Restrict to ``indices``.  Returns the sub-set and the local-to-global
        index map (local index k is global ``mapping[k]``)."""
        key = frozenset(indices)
        hit = self._subsets.get(key)
        if hit is None:
            mapping = tuple(sorted(key))
            sub = PointSet.__new__(PointSet)
            pts = tuple(self.points[i] for i in mapping)
            sub.points = pts
            sub.n = len(pts)
            sub.layers = tuple(tuple(layer) for layer in peel_layers(pts))
            layer_of = [0] * sub.n
            for i, layer in enumerate(sub.layers):
                for v in layer:
                    layer_of[v] = i
            sub.layer_of = tuple(layer_of)
            sub._subsets = {}
            hit = (sub, mapping)
            self._subsets[key] = hit
        return hit


def side_split(S: PointSet, i: int, u: int, v: int, w: int) -> tuple[set[int], set[int]]:
    """Split layer i minus {u, v} by the line uv.  The plus-set holds the
    points strictly on w's side, the minus-set the rest."""
    if u == v:
        raise GeometryError("side_split needs two distinct points")
    pts = S.points
    side_w = cross(pts[u], pts[v], pts[w])
    if side_w == 0:
        raise GeometryError(f"reference point {w} lies on the line through {u} and {v}")
    plus, minus = set(), set()
    for x in S.layers[i]:
        if x in (u, v):
            continue
        if (cross(pts[u], pts[v], pts[x]) > 0) == (side_w > 0):
            plus.add(x)
        else:
            minus.add(x)
    return plus, minus


class PointSetFormatError(GeometryError):
    pass


def _int_coord(tok, where: str) -> int:
    if isinstance(tok, bool) or not isinstance(tok, int):
        raise PointSetFormatError(f"{where}: coordinate {tok!r} is not an integer")
    return tok


def parse_point_set(text: str) -> PointSet:
    """Read either the line format (count, then one "x y" per line) or a JSON
    array of pairs.  Degenerate sets are rejected by :class:`PointSet`."""
    body = text.strip()
    if body.startswith("["):
        try:
            data = json.loads(body)
        except json.JSONDecodeError as exc:
            raise PointSetFormatError(f"bad JSON point set: {exc}") from None
        if not isinstance(data, list):
            raise PointSetFormatError("JSON point set must be an array of pairs")
        pts = []
        for k, item in enumerate(data):
            if not isinstance(item, list) or len(item) != 2:
                raise PointSetFormatError(f"entry {k}: expected [x, y], got {item!r}")
            pts.append((_int_coord(item[0], f"entry {k}"), _int_coord(item[1], f"entry {k}")))
        return PointSet(pts)
    lines = [ln.strip() for ln in body.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise PointSetFormatError("empty point-set file")
    try:
        n = int(lines[0])
    except ValueError:
        raise PointSetFormatError(f"first line must be the point count, got {lines[0]!r}") from None
    if len(lines) - 1 != n:
        raise PointSetFormatError(f"header says {n} points but {len(lines) - 1} follow")
    pts = []
    for k, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != 2:
            raise PointSetFormatError(f"line {k + 2}: expected 'x y', got {ln!r}")
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise PointSetFormatError(f"line {k + 2}: non-integer coordinate in {ln!r}") from None
    return PointSet(pts)


def dumps_point_set(S: PointSet, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps([list(p) for p in S.points]) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown point-set format {fmt!r}")
    return "".join([f"{S.n}\n"] + [f"{x} {y}\n" for x, y in S.points])
