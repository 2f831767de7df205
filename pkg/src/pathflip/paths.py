"""Plane spanning paths on a point set and the edge vocabulary built on layers."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from .geom import PointSet, convex_hull, strictly_inside


class PathError(ValueError):
    pass


class NotAPermutation(PathError):
    pass


class CrossingEdges(PathError):
    def __init__(self, e1: tuple[int, int], e2: tuple[int, int]):
        self.e1, self.e2 = e1, e2
        super().__init__(f"edges {e1} and {e2} cross")


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class PlanePath:
    """A directed plane spanning path; ``order[0]`` is the start.

    Construct through :func:`validate_path` unless the order is already known
    to be plane (the flip machinery does this after its own checks).
    """

    S: PointSet
    order: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, PlanePath) and self.order == other.order and self.S is other.S

    def __hash__(self):
        return hash(self.order)

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __repr__(self):
        return f"PlanePath({list(self.order)})"

    @property
    def start(self) -> int:
        return self.order[0]

    @property
    def end(self) -> int:
        return self.order[-1]

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: k for k, v in enumerate(self.order)}

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        o = self.order
        return tuple(norm_edge(o[k], o[k + 1]) for k in range(len(o) - 1))

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def edge_mask(self) -> int:
        n = self.S.n
        mask = 0
        for u, v in self.edges:
            mask |= 1 << (u * n + v)
        return mask

    def succ(self, v: int) -> int | None:
        k = self.position[v]
        return self.order[k + 1] if k + 1 < len(self.order) else None

    def pred(self, v: int) -> int | None:
        k = self.position[v]
        return self.order[k - 1] if k > 0 else None

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_set

    def reversed(self) -> "PlanePath":
        return PlanePath(self.S, self.order[::-1])

    def canonical(self) -> tuple[int, ...]:
        """Undirected identity: the lexicographically smaller orientation."""
        return min(self.order, self.order[::-1])


def validate_path(S: PointSet, order: Iterable[int]) -> PlanePath:
    order = tuple(order)
    if sorted(order) != list(range(S.n)):
        raise NotAPermutation(f"{list(order)} is not a permutation of 0..{S.n - 1}")
    edges = [norm_edge(order[k], order[k + 1]) for k in range(len(order) - 1)]
    for a in range(len(edges)):
        for b in range(a + 2, len(edges)):
            if S.edges_cross(edges[a], edges[b]):
                raise CrossingEdges(edges[a], edges[b])
    return PlanePath(S, order)


def parse_path(text: str) -> list[int]:
    text = text.strip().strip("[]")
    if not text:
        return []
    return [int(tok) for tok in text.split(",")]


def format_path(order: Sequence[int]) -> str:
    return ",".join(str(v) for v in order)


def sees(P: PlanePath, u: int, v: int) -> bool:
    """Segment uv meets no edge of P except at shared endpoints."""
    S = P.S
    return not (S.crossing_masks[S.edge_id(u, v)] & P.edge_mask)


class EdgeKind(Enum):
    LEVEL = "level"
    CHORD = "chord"
    INWARD = "inward"
    OUTWARD = "outward"
    # same inner layer, not hull-adjacent; the chord analogue below L_0
    INNER_DIAGONAL = "inner-diagonal"


@dataclass(frozen=True)
class EdgeClass:
    kind: EdgeKind
    layer: int | None = None
    cutting: bool = False


def classify_edge(S: PointSet, u: int, v: int) -> EdgeClass:
    """Classify the directed edge u -> v."""
    lu, lv = S.layer_of[u], S.layer_of[v]
    if lu == lv:
        if S.adjacent_on_layer(u, v):
            return EdgeClass(EdgeKind.LEVEL, lu)
        return EdgeClass(EdgeKind.CHORD if lu == 0 else EdgeKind.INNER_DIAGONAL, lu)
    kind = EdgeKind.INWARD if lu < lv else EdgeKind.OUTWARD
    return EdgeClass(kind, None, S.is_cutting_segment(u, v))


def directed_edges(P: PlanePath):
    o = P.order
    return [(o[k], o[k + 1]) for k in range(len(o) - 1)]


def level_count(P: PlanePath, i: int) -> int:
    S = P.S
    return sum(1 for u, v in P.edges if S.layer_of[u] == S.layer_of[v] == i and S.adjacent_on_layer(u, v))


def cutting_count(P: PlanePath) -> int:
    S = P.S
    return sum(1 for u, v in P.edges if S.layer_of[u] != S.layer_of[v] and S.is_cutting_segment(u, v))


def chords(P: PlanePath) -> list[tuple[int, int]]:
    """Chords in path order, as directed edges."""
    S = P.S
    return [
        (u, v)
        for u, v in directed_edges(P)
        if S.layer_of[u] == S.layer_of[v] == 0 and not S.adjacent_on_layer(u, v)
    ]


def is_layer_monotone(P: PlanePath) -> bool:
    layers = [P.S.layer_of[v] for v in P.order]
    return all(layers[k] <= layers[k + 1] for k in range(len(layers) - 1))


def order_is_suffix_independent(points, order: Sequence[int]) -> bool:
    """Every point is a hull vertex of itself together with everything after it."""
    m = len(order)
    if m <= 3:
        return True
    hull = convex_hull(points, order[m - 2:])
    for k in range(m - 3, -1, -1):
        p = points[order[k]]
        if strictly_inside(points, hull, p):
            return False
        hull = convex_hull(points, list(hull) + [order[k]])
    return True


def is_suffix_independent(P: PlanePath, reverse: bool = False) -> bool:
    order = P.order[::-1] if reverse else P.order
    return order_is_suffix_independent(P.S.points, order)


def is_strongly_suffix_independent(P: PlanePath) -> bool:
    return is_suffix_independent(P) and is_suffix_independent(P, reverse=True)


def li_suffix_start(P: PlanePath, i: int) -> int:
    """Position where the maximal suffix on layers >= i begins (len(P) if empty)."""
    layer_of = P.S.layer_of
    k = len(P.order)
    while k > 0 and layer_of[P.order[k - 1]] >= i:
        k -= 1
    return k


def li_suffix(P: PlanePath, i: int) -> tuple[int, ...]:
    return P.order[li_suffix_start(P, i):]
