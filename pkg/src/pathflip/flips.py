"""Single flips, flip plans and flip-neighbour enumeration."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .paths import CrossingEdges, PathError, PlanePath, norm_edge, validate_path
from .geom import PointSet


class NotAPath(PathError):
    pass


class EdgeNotPresent(PathError):
    pass


class EdgeAlreadyPresent(PathError):
    pass


class StartNotEndpoint(PathError):
    pass


@dataclass(frozen=True)
class Flip:
    """Exchange of one path edge for another; edges are stored normalised."""

    removed: tuple[int, int]
    added: tuple[int, int]
    note: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "removed", norm_edge(*self.removed))
        object.__setattr__(self, "added", norm_edge(*self.added))
        if self.removed == self.added:
            raise ValueError("a flip must change the edge set")

    def inverse(self) -> "Flip":
        return Flip(self.added, self.removed, self.note)

    def to_json(self) -> dict:
        return {"remove": list(self.removed), "add": list(self.added)}


def _splice(order: tuple[int, ...], k: int, added: tuple[int, int]) -> tuple[int, ...] | None:
    """Order obtained by dropping edge (order[k], order[k+1]) and adding ``added``,
    or None if the result is not a path."""
    head, tail = order[: k + 1], order[k + 1:]
    a_ends = {head[0], head[-1]}
    b_ends = {tail[0], tail[-1]}
    x, y = added
    if x in b_ends and y in a_ends:
        x, y = y, x
    if not (x in a_ends and y in b_ends):
        return None
    # keep the old start whenever it stays an endpoint, otherwise the old end
    if x == head[-1] and y == tail[-1]:
        return head + tail[::-1]
    if x == head[0] and y == tail[0]:
        return head[::-1] + tail
    if x == head[0] and y == tail[-1]:
        return head[::-1] + tail[::-1]
    return None  # the removed edge itself


def apply_flip(P: PlanePath, f: Flip) -> PlanePath:
    S = P.S
    pos = P.position
    u, v = f.removed
    if not P.has_edge(u, v):
        raise EdgeNotPresent(f"edge {f.removed} is not in the path")
    if P.has_edge(*f.added):
        raise EdgeAlreadyPresent(f"edge {f.added} is already in the path")
    k = min(pos[u], pos[v])
    order = _splice(P.order, k, f.added)
    if order is None:
        raise NotAPath(f"removing {f.removed} and adding {f.added} does not leave a path")
    rest = P.edge_mask & ~(1 << S.edge_id(u, v))
    hit = S.crossing_masks[S.edge_id(*f.added)] & rest
    if hit:
        bit = (hit & -hit).bit_length() - 1
        raise CrossingEdges(f.added, divmod(bit, S.n))
    return PlanePath(S, order)


def neighbors(P: PlanePath) -> list[tuple[Flip, PlanePath]]:
    """All single flips of P, one per distinct undirected result."""
    S = P.S
    o = P.order
    n = len(o)
    masks = S.crossing_masks
    out: dict[tuple[int, ...], tuple[Flip, PlanePath]] = {}
    for k in range(n - 1):
        removed = norm_edge(o[k], o[k + 1])
        rest = P.edge_mask & ~(1 << S.edge_id(*removed))
        for x, y in ((o[k], o[-1]), (o[0], o[k + 1]), (o[0], o[-1])):
            if x == y:
                continue
            added = norm_edge(x, y)
            if added == removed or added in P.edge_set:
                continue
            if masks[S.edge_id(x, y)] & rest:
                continue
            order = _splice(o, k, added)
            if order is None:
                continue
            key = min(order, order[::-1])
            if key not in out:
                out[key] = (Flip(removed, added), PlanePath(S, order))
    return [out[key] for key in sorted(out)]


def rooted(P: PlanePath, s: int) -> PlanePath:
    if P.start == s:
        return P
    if P.end == s:
        return P.reversed()
    raise StartNotEndpoint(f"{s} is not an endpoint of {list(P.order)}")


def neighbors_fixed_start(P: PlanePath, s: int) -> list[tuple[Flip, PlanePath]]:
    """Flips keeping s as the start: each adds an edge at the current end."""
    P = rooted(P, s)
    S = P.S
    o = P.order
    t = o[-1]
    masks = S.crossing_masks
    out = []
    for k in range(len(o) - 2):
        w = o[k]
        if masks[S.edge_id(w, t)] & P.edge_mask:
            continue
        order = o[: k + 1] + o[k + 1:][::-1]
        out.append((Flip((w, o[k + 1]), (w, t)), PlanePath(S, order)))
    return out


class PlanError(RuntimeError):
    pass


UNDO = "undo:"


def _undo(name: str) -> str:
    """Label of a marked sub-plan once it is walked backwards."""
    return name[len(UNDO):] if name.startswith(UNDO) else UNDO + name


@dataclass
class FlipPlan:
    start: PlanePath
    steps: list[Flip] = field(default_factory=list)
    # (label, first step, one past last step) for annotated sub-plans; a
    # label starting with UNDO marks a sub-plan that runs backwards here
    marks: list[tuple[str, int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self) -> Iterator[Flip]:
        return iter(self.steps)

    def replay(self) -> list[PlanePath]:
        """Every intermediate path, start included.  Raises on the first bad step."""
        seq = [self.start]
        cur = self.start
        for i, f in enumerate(self.steps):
            try:
                cur = apply_flip(cur, f)
            except PathError as exc:
                raise PlanError(f"step {i} ({f.removed} -> {f.added}) invalid: {exc}") from exc
            seq.append(cur)
        return seq

    @property
    def final(self) -> PlanePath:
        return self.replay()[-1]

    def reversed(self) -> "FlipPlan":
        """The plan walked backwards, starting from this plan's final path."""
        seq = self.replay()
        m = len(self.steps)
        marks = [(_undo(name), m - hi, m - lo) for name, lo, hi in self.marks]
        return FlipPlan(seq[-1], [f.inverse() for f in reversed(self.steps)], marks)

    def then(self, other: "FlipPlan") -> "FlipPlan":
        m = len(self.steps)
        marks = self.marks + [(name, m + lo, m + hi) for name, lo, hi in other.marks]
        return FlipPlan(self.start, self.steps + other.steps, marks)

    def to_json(self, narrate: bool = False) -> dict:
        steps = []
        for f in self.steps:
            d = f.to_json()
            if narrate:
                d["reason"] = f.note
            steps.append(d)
        return {"start": list(self.start.order), "steps": steps}

    def dumps(self, narrate: bool = False) -> str:
        return json.dumps(self.to_json(narrate))

    @classmethod
    def from_json(cls, S: PointSet, data: dict) -> "FlipPlan":
        start = validate_path(S, data["start"])
        steps = [Flip(tuple(d["remove"]), tuple(d["add"]), d.get("reason", "")) for d in data["steps"]]
        return cls(start, steps)


def same_path(P: PlanePath, Q: PlanePath | Sequence[int], directed: bool = True) -> bool:
    q = tuple(Q.order if isinstance(Q, PlanePath) else Q)
    if directed:
        return P.order == q
    return P.order == q or P.order == q[::-1]
