"""Exhaustive path enumeration, flip-graph construction and graph metrics."""

from __future__ import annotations

import json
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .flips import Flip, FlipPlan, neighbors, neighbors_fixed_start, rooted
from .geom import PointSet
from .paths import PlanePath

DEFAULT_CAP_FREE = 10
DEFAULT_CAP_FIXED = 12
MAX_GRAPH_EDGES = 2**31


class CapExceeded(RuntimeError):
    pass


class Disconnected(RuntimeError):
    pass


class Unreachable(RuntimeError):
    pass


def _cap(default: int, cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("PATHFLIP_CAP")
    return int(env) if env else default


def _extend(S: PointSet, order: list[int], mask: int, used: int, out: list):
    n = S.n
    if len(order) == n:
        out.append(tuple(order))
        return
    masks = S.crossing_masks
    last = order[-1]
    for v in range(n):
        if used >> v & 1:
            continue
        e = S.edge_id(last, v)
        if masks[e] & mask:
            continue
        order.append(v)
        _extend(S, order, mask | 1 << e, used | 1 << v, out)
        order.pop()


def enumerate_directed_from(S: PointSet, s: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    if S.n:
        _extend(S, [s], 0, 1 << s, out)
    return out


def enumerate_paths(S: PointSet, cap: int | None = None) -> list[tuple[int, ...]]:
    """Every plane spanning path once, in canonical (smaller-orientation) form, sorted."""
    if S.n > _cap(DEFAULT_CAP_FREE, cap):
        raise CapExceeded(f"n={S.n} exceeds free-mode enumeration cap")
    if S.n == 1:
        return [(0,)]
    out = []
    for s in range(S.n):
        out.extend(p for p in enumerate_directed_from(S, s) if p[0] < p[-1])
    return sorted(out)


def enumerate_paths_fixed_start(S: PointSet, s: int, cap: int | None = None) -> list[tuple[int, ...]]:
    if S.n > _cap(DEFAULT_CAP_FIXED, cap):
        raise CapExceeded(f"n={S.n} exceeds fixed-start enumeration cap")
    return sorted(enumerate_directed_from(S, s))


@dataclass
class FlipGraph:
    S: PointSet
    root: int | None  # None for the free flip graph, else the fixed start
    vertices: list[tuple[int, ...]]
    adjacency: list[list[int]]
    index: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def mode(self) -> str:
        return "free" if self.root is None else f"fixed:{self.root}"

    def __len__(self):
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def key(self, P: PlanePath | Sequence[int]) -> tuple[int, ...]:
        order = tuple(P.order if isinstance(P, PlanePath) else P)
        if self.root is None:
            return min(order, order[::-1])
        return order if order[0] == self.root else order[::-1]

    def path(self, i: int) -> PlanePath:
        return PlanePath(self.S, self.vertices[i])


def _neighbor_keys(S: PointSet, root: int | None, orders: list[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    res = []
    for o in orders:
        P = PlanePath(S, o)
        if root is None:
            res.append([Q.canonical() for _, Q in neighbors(P)])
        else:
            res.append([Q.order for _, Q in neighbors_fixed_start(P, root)])
    return res


def _neighbor_keys_job(args):
    points, root, orders = args
    return _neighbor_keys(PointSet(points), root, orders)


def build_flip_graph(S: PointSet, root: int | None = None, cap: int | None = None, workers: int = 1) -> FlipGraph:
    """Free flip graph (root=None) or the fixed-start graph rooted at ``root``."""
    if root is None:
        verts = enumerate_paths(S, cap)
    else:
        verts = enumerate_paths_fixed_start(S, root, cap)
    if workers > 1 and len(verts) > 256:
        size = -(-len(verts) // (workers * 4))
        chunks = [verts[i:i + size] for i in range(0, len(verts), size)]
        with ProcessPoolExecutor(workers) as pool:
            keys = [k for part in pool.map(_neighbor_keys_job, [(S.points, root, c) for c in chunks]) for k in part]
    else:
        keys = _neighbor_keys(S, root, verts)
    index = {v: i for i, v in enumerate(verts)}
    adjacency = [sorted(index[k] for k in ks) for ks in keys]
    total = sum(len(a) for a in adjacency)
    if total > MAX_GRAPH_EDGES:
        raise CapExceeded(f"flip graph has more than {MAX_GRAPH_EDGES} edges")
    return FlipGraph(S, root, verts, adjacency, index)


def bfs_distances(adjacency: list[list[int]], source: int) -> list[int]:
    dist = [-1] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def components(G: FlipGraph) -> list[list[int]]:
    seen = [False] * len(G)
    comps = []
    for v in range(len(G)):
        if seen[v]:
            continue
        comp = [v]
        seen[v] = True
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def induced_components(G: FlipGraph, keep: set[int]) -> list[list[int]]:
    """Components of the subgraph induced by ``keep``."""
    seen = set()
    comps = []
    for v in sorted(keep):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if w in keep and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class Profile:
    diameter: int
    radius: int
    centers: list[int]
    eccentricities: list[int]


def eccentricity_profile(G: FlipGraph) -> Profile:
    ecc = []
    for v in range(len(G)):
        dist = bfs_distances(G.adjacency, v)
        if min(dist) < 0:
            raise Disconnected(f"flip graph ({G.mode}) is disconnected")
        ecc.append(max(dist))
    radius = min(ecc)
    return Profile(max(ecc), radius, [v for v, e in enumerate(ecc) if e == radius], ecc)


def flip_between(P: PlanePath, Q: PlanePath) -> Flip:
    (removed,) = P.edge_set - Q.edge_set
    (added,) = Q.edge_set - P.edge_set
    return Flip(removed, added)


def flip_distance(S: PointSet, P1: PlanePath, P2: PlanePath, root: int | None = None) -> tuple[int, FlipPlan]:
    """Shortest flip sequence by bidirectional BFS over implicitly generated neighbours."""
    if root is not None:
        P1, P2 = rooted(P1, root), rooted(P2, root)

    def key(P):
        return P.order if root is not None else P.canonical()

    def expand(P):
        if root is None:
            return [Q for _, Q in neighbors(P)]
        return [Q for _, Q in neighbors_fixed_start(P, root)]

    k1, k2 = key(P1), key(P2)
    if k1 == k2:
        return 0, FlipPlan(P1, [])
    parents = [{k1: None}, {k2: None}]
    paths = [{k1: P1}, {k2: P2}]
    frontiers = [[P1], [P2]]
    meet = None
    while frontiers[0] and frontiers[1] and meet is None:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        nxt = []
        for P in frontiers[side]:
            kp = key(P)
            for Q in expand(P):
                kq = key(Q)
                if kq in parents[side]:
                    continue
                parents[side][kq] = kp
                paths[side][kq] = Q
                nxt.append(Q)
                if kq in parents[1 - side] and meet is None:
                    meet = kq
        frontiers[side] = nxt
    if meet is None:
        raise Unreachable("the two paths lie in different flip-graph components")

    def chain(side, k):
        out = []
        while k is not None:
            out.append(paths[side][k])
            k = parents[side][k]
        return out

    seq = chain(0, meet)[::-1] + chain(1, meet)[1:]
    steps = [flip_between(seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
    return len(steps), FlipPlan(P1, steps)


def metrics(G: FlipGraph) -> dict:
    comps = components(G)
    out = {
        "mode": G.mode,
        "vertices": len(G),
        "edges": G.edge_count,
        "components": len(comps),
        "diameter": None,
        "radius": None,
        "centers": [],
    }
    if len(comps) == 1 and len(G):
        prof = eccentricity_profile(G)
        out.update(diameter=prof.diameter, radius=prof.radius, centers=[list(G.vertices[c]) for c in prof.centers])
    return out


def to_dot(G: FlipGraph, tagged: Sequence[Sequence[int]] = ()) -> str:
    tags = {G.key(t) for t in tagged}
    lines = [f'graph flips {{  // {G.mode}, {len(G)} paths']
    for i, v in enumerate(G.vertices):
        label = ",".join(map(str, v))
        attr = ', spiral="true", color="red"' if v in tags else ""
        lines.append(f'  p{i} [label="{label}"{attr}];')
    for i, adj in enumerate(G.adjacency):
        lines.extend(f"  p{i} -- p{j};" for j in adj if j > i)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_adjacency_json(G: FlipGraph) -> str:
    return json.dumps(
        {
            "mode": G.mode,
            "points": [list(p) for p in G.S.points],
            "vertices": [list(v) for v in G.vertices],
            "adjacency": G.adjacency,
        }
    )
