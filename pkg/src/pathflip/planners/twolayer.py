"""Fixed-start and free planning on point sets with at most two convex layers.

The fixed-start planner first drives each path to a suffix-independent one:
chords are removed by re-planning the independent suffix behind them, and the
remaining work alternates between gaining outer level edges and removing
cutting edges.  Suffix-independent paths are then joined directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..constructions import StartNotOuter, strongly_ssi_on, strongly_ssi_path
from ..flips import FlipPlan, rooted
from ..geom import PointSet, clip_segment, convex_hull, cross, inside_or_on, side_split, strictly_inside
from ..paths import (
    PathError,
    PlanePath,
    chords,
    cutting_count,
    is_suffix_independent,
    level_count,
    li_suffix_start,
    sees,
)
from .builder import PlanBuilder, PlannerDefect, PlannerError, PreconditionViolated, TooManyLayers
from .convex import convex_pair_plan
from .suffix import ssi_connect_plan

_RECOVERABLE = (PathError, PlannerError)


def fixed_start_connect(P1: PlanePath, P2: PlanePath) -> FlipPlan:
    """Any fixed-start plan between two paths with the same start."""
    S = P1.S
    if P1.order == P2.order:
        return FlipPlan(P1, [])
    if S.is_convex():
        return convex_pair_plan(P1, P2)
    if S.layer_number > 2:
        raise TooManyLayers(f"{S.layer_number} layers")
    return two_layer_fixed_start_plan(P1, P2)


def _replan_to_end(b: PlanBuilder, k: int, z: int, note: str) -> None:
    """Re-plan the independent suffix at position k so that it ends at z."""
    X = b.cur.order[k:]
    if X[-1] == z:
        return
    if X[0] == z:
        raise PlannerDefect("a suffix cannot end at its own first point")
    b.replan_suffix(k, strongly_ssi_on(b.S, X, X[0], z), fixed_start_connect, note)


def _first_obstruction(P: PlanePath, t: int, p: int) -> tuple[int, int] | None:
    """The path edge met first when walking the segment from t to p."""
    S = P.S
    hit = S.crossing_masks[S.edge_id(t, p)] & P.edge_mask
    if not hit:
        return None
    pts = S.points
    best, best_at = None, None
    while hit:
        bit = (hit & -hit).bit_length() - 1
        hit &= hit - 1
        a, c = divmod(bit, S.n)
        ct, cp = cross(pts[a], pts[c], pts[t]), cross(pts[a], pts[c], pts[p])
        at = Fraction(ct, ct - cp)
        if best_at is None or at < best_at:
            best, best_at = (a, c), at
    return best


# ---------------------------------------------------------------------------
# sweeping an empty region between a hull edge of the suffix and a path edge


def _region_violation(P: PlanePath, A: set[int], u: int, v: int) -> str | None:
    S = P.S
    pts = S.points
    if u in A or v in A:
        return "edge endpoint inside the suffix"
    if not P.has_edge(u, v):
        return f"({u}, {v}) is not a path edge"
    hull_A = convex_hull(pts, A)
    if any(strictly_inside(pts, hull_A, pts[w]) for w in range(S.n) if w not in A):
        return "suffix is not independent"
    H = convex_hull(pts, A | {u, v})
    m = len(H)
    if not any({H[k], H[(k + 1) % m]} == {u, v} for k in range(m)):
        return "edge is not on the hull of the suffix with its endpoints"
    if any(strictly_inside(pts, H, pts[w]) for w in range(S.n) if w not in A and w not in (u, v)):
        return "region contains a point"
    pred_a = None
    inner = {e for e in P.edges if e[0] in A and e[1] in A}
    for e in P.edges:
        if e in inner or set(e) == {u, v}:
            continue
        clip = clip_segment(pts, H, pts[e[0]], pts[e[1]])
        if clip is None or clip[0] == clip[1]:
            continue
        mid = ((clip[0][0] + clip[1][0]) / 2, (clip[0][1] + clip[1][1]) / 2)
        if not _strictly_inside_frac(pts, H, mid):
            continue  # runs along the boundary
        if not (inside_or_on(pts, hull_A, clip[0]) and inside_or_on(pts, hull_A, clip[1])):
            pred_a = e
            break
    if pred_a is not None:
        return f"edge {pred_a} enters the region"
    return None


def _strictly_inside_frac(pts, hull, q) -> bool:
    m = len(hull)
    return all(cross(pts[hull[k]], pts[hull[(k + 1) % m]], q) > 0 for k in range(m))


def _region_sweep(b: PlanBuilder, a: int, u: int, v: int, goal: int) -> None:
    """Flip until the path ends at ``goal``, using only edges inside the hull of
    the suffix from a together with the edge uv."""
    S = b.S
    pts = S.points
    size = None
    while b.cur.end != goal:
        P = b.cur
        k = P.position[a]
        X = P.order[k:]
        A = set(X)
        if size is not None and len(A) >= size:
            raise PlannerDefect("region sweep did not shrink its suffix")
        size = len(A)
        why = _region_violation(P, A, u, v)
        if why is not None:
            raise PreconditionViolated(why)
        x, y = (u, v) if P.position[u] < P.position[v] else (v, u)
        if len(A) == 1:
            b.flip_at_end(x, "join the edge tail to the lone suffix point")
            if b.cur.end != goal:
                b.flip_at_end(a, "hand the end back across the region")
            continue
        H = convex_hull(pts, A | {u, v})
        i = H.index(u)
        f, g = (u, v) if H[(i + 1) % len(H)] == v else (v, u)
        j = H.index(g)
        rot = H[j:] + H[:j]
        cs = rot[1:-1]  # g, c_1 .. c_k, f counterclockwise
        hull_A = convex_hull(pts, A)
        zs = [cs[-1]]
        r = hull_A.index(cs[-1])
        while True:
            r = (r + 1) % len(hull_A)
            zs.append(hull_A[r])
            if hull_A[r] == cs[0]:
                break
        nxt = _sweep_step(b, k, a, x, y, f, g, zs, goal)
        if nxt is None:
            raise PlannerDefect("no region sweep step applies")
        u, v = nxt


def _sweep_step(b, k, a, x, y, f, g, zs, goal):
    S = b.S
    A = set(b.cur.order[k:])
    m = len(zs)

    def fits(edge):
        # the step is only useful if the next, smaller region is still clean
        P = b.cur
        if P.end == goal:
            return True
        return _region_violation(P, set(P.order[P.position[a]:]), *edge) is None
    if m == 2:
        for z in zs:
            if z == a:
                continue
            partner = g if z == zs[0] else f
            snap = b.snapshot()
            try:
                _replan_to_end(b, k, z, "reorder the suffix inside its hull")
                b.flip_at_end(x, "cross the region to a hull point of the suffix")
                if b.cur.end != goal:
                    b.flip_at_end(z, "close the region behind the new edge")
                if fits((z, partner)):
                    return (z, partner)
            except _RECOVERABLE:
                pass
            b.restore(snap)
        return None
    if len(A) == 2:
        snap = b.snapshot()
        try:
            b.flip_at_end(x, "cross the region to the suffix end")
            if b.cur.end != goal:
                b.flip_at_end(a, "hand the end back across the region")
            if b.cur.end == goal:
                return (x, y)
        except _RECOVERABLE:
            pass
        b.restore(snap)
        return None
    for i in range(1, m - 1):
        zi = zs[i]
        if zi == a:
            continue
        for p in (zs[i - 1], zs[i + 1]):
            if p == a or p == zi:
                continue
            for variant in (0, 1):
                snap = b.snapshot()
                try:
                    rest = [w for w in b.cur.order[k:] if w != zi]
                    target = strongly_ssi_on(S, rest, a, p) + (zi,)
                    b.replan_suffix(k, target, fixed_start_connect, "reorder the suffix inside its hull")
                    b.flip_at_end(x, "cross the region to a hidden hull point")
                    if b.cur.end == goal:
                        return (x, y)
                    if variant == 0:
                        b.flip_at_end(p, "close the region behind two new edges")
                    else:
                        b.flip_at_end(zi, "swing the hidden point to the far side")
                        b.flip_at_end(x, "reattach through its neighbour")
                        b.flip_at_end(p, "close the region behind two new edges")
                    if fits((zi, p)):
                        return (zi, p)
                except _RECOVERABLE:
                    pass
                b.restore(snap)
    return None


def convex_region_flip_plan(P: PlanePath, a: int, uv: tuple[int, int]) -> FlipPlan:
    """Flips that move the end of P to the original predecessor of a.

    The suffix X from a must be independent, uv a path edge on the hull of X
    plus {u, v}, and the region between that hull and the hull of X free of
    points and foreign edges.  Every added edge lies inside that region.
    """
    u, v = uv
    if P.pred(a) is None:
        raise PreconditionViolated("a must not be the start")
    A = P.order[P.position[a]:]
    sub, _ = P.S.subset(A)
    if P.S.points[a] not in {sub.points[w] for w in sub.layers[0]}:
        raise PreconditionViolated("the suffix must start on its own hull")
    if sub.layer_number > 2:
        raise PreconditionViolated("the suffix needs at most two layers")
    goal = P.pred(a)
    why = _region_violation(P, set(P.order[P.position[a]:]), u, v)
    if why is not None:
        raise PreconditionViolated(why)
    b = PlanBuilder(P)
    _region_sweep(b, a, u, v, goal)
    return b.plan()


# ---------------------------------------------------------------------------
# two-layer fixed start: gaining level edges and removing cutting edges


def _layers2(S: PointSet) -> None:
    if S.layer_number > 2:
        raise TooManyLayers(f"{S.layer_number} layers")


def _outer_level_gain(b: PlanBuilder) -> None:
    """End on L_0: bring in the hull edge to its earlier-visited neighbour."""
    P = b.cur
    S = P.S
    t = P.end
    pos = P.position
    a = min((S.ccw_next(t), S.cw_next(t)), key=lambda w: pos[w])
    before = level_count(P, 0)
    if a == P.start:
        b.flip_at_end(a, "close an outer level edge at the start")
    else:
        if S.layer_of[P.succ(a)] != 1:
            raise PlannerDefect("hull neighbour of the end does not leave the hull")
        b.flip_at_end(a, "take the outer level edge to the end")
    if level_count(b.cur, 0) <= before:
        raise PlannerDefect("outer level edge count did not grow")


def _tangents(S: PointSet, X: Sequence[int], p: int) -> list[int]:
    if len(X) == 1:
        return [X[0]]
    H = convex_hull(S.points, list(X) + [p])
    i = H.index(p)
    return [H[(i + 1) % len(H)], H[i - 1]]


def _cutting_removal(b: PlanBuilder, u: int, v: int) -> None:
    """Replace the cutting inward edge uv by a non-cutting edge from u.

    The L_1-suffix must contain every inner point on the end's side of uv.
    """
    P = b.cur
    S = P.S
    t = P.end
    kx = li_suffix_start(P, 1)
    X = P.order[kx:]
    Xs = set(X)
    plus, minus = side_split(S, 1, u, v, t) if t != v else (set(), set())
    if t == v or not plus <= Xs:
        raise PreconditionViolated("the inner suffix does not cover the end's side")
    psi, ell = cutting_count(P), level_count(P, 0)
    near = [z for z in plus if any(S.adjacent_on_layer(z, w) for w in minus | {v})]
    others = [z for z in plus if z not in near]
    for z in sorted(near) + sorted(others):
        if S.is_cutting_segment(u, z):
            continue
        snap = b.snapshot()
        base = len(b.steps)
        try:
            if b.cur.end == z:
                pass
            elif b.cur.order[kx] != z:
                _replan_to_end(b, kx, z, "steer the inner suffix toward the cut")
            else:
                head = b.cur.pred(z)
                for c in sorted(plus - {z}):
                    if S.is_cutting_segment(head, c):
                        continue
                    inner = b.snapshot()
                    try:
                        _replan_to_end(b, kx, c, "steer the inner suffix toward the cut")
                        b.flip_at_end(head, "enter the inner suffix elsewhere")
                        break
                    except _RECOVERABLE:
                        b.restore(inner)
                else:
                    raise PlannerDefect("no alternative entry point")
            if b.cur.end != z or b.cur.succ(u) != v:
                raise PlannerDefect("suffix steering went astray")
            b.flip_at_end(u, "replace a cutting edge")
            Q = b.cur
            if cutting_count(Q) >= psi or level_count(Q, 0) != ell or chords(Q):
                raise PlannerDefect("cutting edge removal did not make progress")
            b.marks.append(("cutting-removal", base, len(b.steps)))
            return
        except _RECOVERABLE:
            b.restore(snap)
    # the direct steering can fail when the only re-entry edge into the
    # suffix is itself cutting; search for the same postcondition instead
    _search_progress(b, lambda Q: _in_star(Q) and cutting_count(Q) < psi and level_count(Q, 0) == ell,
                     "cutting-removal")


SEARCH_LIMIT = 200_000


def _in_star(Q: PlanePath) -> bool:
    S = Q.S
    return not chords(Q) and (len(Q) < 2 or S.layer_of[Q.order[1]] != 0)


def _search_progress(b: PlanBuilder, accept, label: str) -> None:
    """Breadth-first search over fixed-start flips for the nearest path that
    satisfies ``accept``.  Last resort when the direct construction has no
    valid move; every use is logged."""
    from collections import deque

    from ..flips import neighbors_fixed_start

    start = b.cur
    s = start.start
    parent = {start.order: None}
    queue = deque([start])
    found = None
    while queue and len(parent) < SEARCH_LIMIT:
        P = queue.popleft()
        if P is not start and accept(P):
            found = P
            break
        for f, Q in neighbors_fixed_start(P, s):
            if Q.order not in parent:
                parent[Q.order] = (P.order, f)
                queue.append(Q)
    if found is None:
        raise PlannerDefect(f"{label}: no progress within the search limit")
    chain = []
    key = found.order
    while parent[key] is not None:
        prev, f = parent[key]
        chain.append(f)
        key = prev
    base = len(b.steps)
    for f in reversed(chain):
        b.flip(f.removed, f.added, "searched step toward " + label.replace("-", " "))
    b.mark("search-fallback", label=label, length=len(chain))
    b.marks.append((label, base, len(b.steps)))


def _inner_attempt(b: PlanBuilder, p: int, allow_cutting: bool) -> str | None:
    """Try to move the end from L_1 to L_0 through the outward edge at p."""
    S = b.S
    layer = S.layer_of
    for _ in range(3):
        P = b.cur
        t = P.end
        if sees(P, t, p):
            b.flip_at_end(p, "leave the inner layer through a visible outward edge")
            return "done"
        e = _first_obstruction(P, t, p)
        kx = li_suffix_start(P, 1)
        X = P.order[kx:]
        Xs = set(X)
        if e[0] in Xs and e[1] in Xs:
            for z in _tangents(S, X, p):
                snap = b.snapshot()
                try:
                    _replan_to_end(b, kx, z, "turn the inner suffix toward the exit")
                    e2 = _first_obstruction(b.cur, b.cur.end, p)
                    if e2 is None or not (e2[0] in Xs and e2[1] in Xs):
                        break
                except _RECOVERABLE:
                    pass
                b.restore(snap)
            else:
                return None
            continue
        u, v = e
        if layer[u] == layer[v] == 1:
            _region_sweep(b, X[0], u, v, P.order[kx - 1])
            return "done"
        if layer[u] != layer[v] and allow_cutting:
            w, z = (u, v) if P.position[u] < P.position[v] else (v, u)
            if layer[w] == 0 and S.is_cutting_segment(w, z):
                _cutting_removal(b, w, z)
                return "reduced"
        return None
    return None


def _inner_exit(b: PlanBuilder) -> None:
    """End on L_1: reach an end on L_0, possibly removing cutting edges first."""
    S = b.S
    layer = S.layer_of
    for _ in range(4 * S.n + 4):
        P = b.cur
        if layer[P.end] == 0:
            return
        cands = [w for w in P.order[:-1] if layer[w] == 1 and layer[P.succ(w)] == 0]
        for p in cands:
            if sees(P, P.end, p):
                b.flip_at_end(p, "leave the inner layer through a visible outward edge")
                return
        progressed = False
        for allow in (False, True):
            for p in cands:
                snap = b.snapshot()
                try:
                    res = _inner_attempt(b, p, allow)
                except _RECOVERABLE:
                    res = None
                if res is None:
                    b.restore(snap)
                    continue
                if res == "done":
                    return
                progressed = True
                break
            if progressed:
                break
        if not progressed:
            # two cutting edges can each block the other's exit with neither
            # far side inside the suffix; search for the same postcondition
            ell = level_count(P, 0)
            _search_progress(b, lambda Q: _in_star(Q) and layer[Q.end] == 0 and level_count(Q, 0) == ell,
                             "inner-exit")
            return
    raise PlannerDefect("inner exit did not terminate")


def _check_star(P: PlanePath) -> None:
    S = P.S
    _layers2(S)
    if S.layer_of[P.start] != 0:
        raise StartNotOuter(f"{P.start} is not outer")
    if chords(P):
        raise PreconditionViolated("path has a chord")
    if len(P) > 1 and S.layer_of[P.order[1]] != 1:
        raise PreconditionViolated("first edge must leave the hull")
    if level_count(P, 0) >= len(S.layers[0]) - 1:
        raise PreconditionViolated("outer level edges already saturated")


def _progress_step(b: PlanBuilder) -> None:
    if b.S.layer_of[b.cur.end] == 0:
        _outer_level_gain(b)
    else:
        _inner_exit(b)


def k_property_step(P: PlanePath, s: int | None = None) -> FlipPlan:
    """One unit of progress on a chord-free path whose first edge leaves the hull.

    With the end on L_0 the result has strictly more outer level edges; with the
    end on L_1 it has the same number and ends on L_0.
    """
    if s is not None:
        P = rooted(P, s)
    _check_star(P)
    S = P.S
    b = PlanBuilder(P)
    ell = level_count(P, 0)
    outer_end = S.layer_of[P.end] == 0
    _progress_step(b)
    Q = b.cur
    if outer_end:
        ok = level_count(Q, 0) > ell
    else:
        ok = level_count(Q, 0) == ell and S.layer_of[Q.end] == 0
    if not ok or chords(Q):
        raise PlannerDefect("progress step missed its postcondition")
    return b.plan()


def to_suffix_independent_plan(P: PlanePath, s: int | None = None) -> FlipPlan:
    """Fixed-start flips from P to a suffix-independent path."""
    if s is not None:
        P = rooted(P, s)
    S = P.S
    _layers2(S)
    if S.layer_of[P.start] != 0:
        raise StartNotOuter(f"{P.start} is not outer")
    b = PlanBuilder(P)
    bound = len(S.layers[0]) * (cutting_count(P) + 2) + S.n + 4
    for _ in range(bound):
        cur = b.cur
        if is_suffix_independent(cur):
            return b.plan()
        ch = chords(cur)
        if ch:
            u, v = ch[0]
            k = cur.position[u]
            b.replan_suffix(k, strongly_ssi_on(S, cur.order[k:], u, v), fixed_start_connect, "re-plan behind a chord")
            continue
        if S.layer_of[cur.order[1]] == 0:
            b.on_suffix(1, to_suffix_independent_plan, "recurse past an outer level edge")
            continue
        ell = level_count(cur, 0)
        for _ in range(2):
            _progress_step(b)
            if level_count(b.cur, 0) > ell:
                break
    if is_suffix_independent(b.cur):
        return b.plan()
    raise PlannerDefect("suffix-independence driver did not converge")


def two_layer_fixed_start_plan(P1: PlanePath, P2: PlanePath, s: int | None = None) -> FlipPlan:
    if s is not None:
        P1, P2 = rooted(P1, s), rooted(P2, s)
    if P1.start != P2.start:
        raise ValueError("paths must share their start")
    S = P1.S
    if S.is_convex():
        return convex_pair_plan(P1, P2)
    a = to_suffix_independent_plan(P1)
    c = to_suffix_independent_plan(P2)
    mid = ssi_connect_plan(a.final, c.final)
    return a.then(mid).then(c.reversed())


# ---------------------------------------------------------------------------
# free mode: move an endpoint onto the hull, then join through a bridge


def _escape_once(b: PlanBuilder) -> bool:
    S = b.S
    layer = S.layer_of
    for P in (b.cur, b.cur.reversed()):
        s, t = P.start, P.end
        if sees(P, s, t):
            for w in P.order:
                if layer[w] != 0:
                    continue
                snap = b.snapshot()
                try:
                    b.flip((w, P.succ(w)), (s, t), "close into a cycle and reopen at the hull")
                    return True
                except _RECOVERABLE:
                    b.restore(snap)
        for p in P.order[:-1]:
            if layer[p] == 1 and layer[P.succ(p)] == 0 and sees(P, t, p):
                b.flip((p, P.succ(p)), (p, t), "leave the inner layer through a visible outward edge")
                return True
    return False


def _escape_obstructed(b: PlanBuilder, P: PlanePath) -> bool:
    """Handle the first edge blocking the end's view of the start."""
    S = b.S
    layer = S.layer_of
    t, s = P.end, P.start
    e = _first_obstruction(P, t, s)
    kx = li_suffix_start(P, 1)
    if kx == 0:
        raise PlannerDefect("path has no outer point")
    X = P.order[kx:]
    Xs = set(X)
    if e[0] in Xs and e[1] in Xs:
        for z in _tangents(S, X, s):
            snap = b.snapshot()
            try:
                _replan_like(b, P, kx, z)
                if _escape_once(b):
                    return True
                Q = _oriented(b.cur, s)
                e2 = _first_obstruction(Q, Q.end, s)
                if e2 is not None and not (e2[0] in Xs and e2[1] in Xs):
                    if _escape_obstructed(b, Q):
                        return True
            except _RECOVERABLE:
                pass
            b.restore(snap)
        return False
    u, v = e
    snap = b.snapshot()
    try:
        _region_sweep_oriented(b, P, X[0], u, v, P.order[kx - 1])
        return True
    except _RECOVERABLE:
        b.restore(snap)
    x, y = (u, v) if P.position[u] < P.position[v] else (v, u)
    if layer[x] == layer[y] == 0:
        try:
            k = P.position[x]
            _on_oriented(b, P, k, strongly_ssi_on(S, P.order[k:], x, y))
            return True
        except _RECOVERABLE:
            b.restore(snap)
    if layer[x] == 0 and layer[y] == 1 and S.is_cutting_segment(x, y):
        try:
            _with_orientation(b, P, lambda bb: _cutting_removal(bb, x, y))
            return True
        except _RECOVERABLE:
            b.restore(snap)
    return False


def _oriented(P: PlanePath, s: int) -> PlanePath:
    return P if P.start == s else P.reversed()


def _with_orientation(b: PlanBuilder, P: PlanePath, action) -> None:
    """Run a fixed-start action on b as if its path were oriented like P."""
    sub = PlanBuilder(P)
    action(sub)
    base = len(b.steps)
    b.extend(sub.steps)
    for name, lo, hi in sub.marks:
        b.marks.append((name, base + lo, base + hi))


def _replan_like(b: PlanBuilder, P: PlanePath, k: int, z: int) -> None:
    _with_orientation(b, P, lambda bb: _replan_to_end(bb, k, z, "turn the inner suffix toward the start"))


def _on_oriented(b: PlanBuilder, P: PlanePath, k: int, target) -> None:
    _with_orientation(b, P, lambda bb: bb.replan_suffix(k, target, fixed_start_connect, "re-plan behind a chord"))


def _region_sweep_oriented(b: PlanBuilder, P: PlanePath, a: int, u: int, v: int, goal: int) -> None:
    _with_orientation(b, P, lambda bb: _region_sweep(bb, a, u, v, goal))


def escape_plan(P: PlanePath) -> FlipPlan:
    """Free flips from P to a path with at least one endpoint on the hull."""
    S = P.S
    _layers2(S)
    layer = S.layer_of
    b = PlanBuilder(P)
    for _ in range(4 * S.n + 4):
        cur = b.cur
        if layer[cur.start] == 0 or layer[cur.end] == 0:
            return b.plan()
        if _escape_once(b):
            continue
        if not any(_escape_obstructed(b, Q) for Q in (cur, cur.reversed())):
            raise PlannerDefect("no escape step applies")
    raise PlannerDefect("escape did not terminate")


def two_layer_plan(P1: PlanePath, P2: PlanePath) -> FlipPlan:
    """Free-mode plan between any two plane paths on a set with at most two layers."""
    S = P1.S
    _layers2(S)
    layer = S.layer_of
    e1, e2 = escape_plan(P1), escape_plan(P2)
    Q1, Q2 = e1.final, e2.final
    ends1 = [w for w in (Q1.start, Q1.end) if layer[w] == 0]
    ends2 = [w for w in (Q2.start, Q2.end) if layer[w] == 0]
    common = [w for w in ends1 if w in ends2]
    if common:
        s = common[0]
        mid = fixed_start_connect(rooted(Q1, s), rooted(Q2, s))
    else:
        s1, s2 = ends1[0], ends2[0]
        H = strongly_ssi_path(S, s1, s2)
        first = fixed_start_connect(rooted(Q1, s1), H)
        second = fixed_start_connect(H.reversed(), rooted(Q2, s2))
        mid = first.then(FlipPlan(H.reversed(), second.steps, second.marks))
    plan = e1.then(mid).then(e2.reversed())
    return FlipPlan(P1, plan.steps, plan.marks)


def free_connect(P1: PlanePath, P2: PlanePath) -> FlipPlan:
    if P1.S.layer_number > 2:
        raise TooManyLayers(f"{P1.S.layer_number} layers")
    return two_layer_plan(P1, P2)
