"""Invariant suites behind ``pathflip verify``.

Each suite sweeps a range of n over seeded point sets and records one
:class:`Check` per measured fact.  Small sets (n <= ``EXHAUSTIVE_N``) are
checked over every path; larger ones over paths sampled by random flips.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable

from .constructions import Direction, spiral, strongly_ssi_path, zigzag
from .explore import (
    build_flip_graph,
    bfs_distances,
    components,
    eccentricity_profile,
    enumerate_paths,
    enumerate_paths_fixed_start,
    flip_distance,
    induced_components,
)
from .flips import UNDO, FlipPlan, PlanError, apply_flip, neighbors, neighbors_fixed_start, rooted
from .generate import RunConfig, TWO33, convex_position, derived_seed, generate_point_set
from .geom import PointSet, segments_cross, side_split
from .paths import (
    PathError,
    PlanePath,
    chords,
    cutting_count,
    directed_edges,
    is_layer_monotone,
    is_strongly_suffix_independent,
    is_suffix_independent,
    level_count,
)
from .planners.builder import PlannerError
from .planners.convex import convex_to_spiral_plan
from .planners.suffix import ssi_connect_plan
from .planners.twolayer import (
    escape_plan,
    k_property_step,
    to_suffix_independent_plan,
    two_layer_fixed_start_plan,
    two_layer_plan,
)

EXHAUSTIVE_N = 7
SAMPLED_PATHS = 60

# raised by a planner that gives up or by a replay that breaks; a suite
# records these against the input instead of stopping
FAULTS = (PathError, PlannerError, PlanError)


@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.label}: {self.detail}"


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    # per-n tallies for callers that need more than pass/fail
    stats: dict = field(default_factory=dict)

    def add(self, label: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(label, bool(ok), detail))
        return ok

    def failure(self, label: str, **data) -> None:
        self.counterexamples.append({"check": label, **data})

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "counterexamples": self.counterexamples,
        }


# --- sources of sets and paths -------------------------------------------


def random_sets(n: int, samples: int, seed: int, layers=None) -> Iterable[PointSet]:
    for i in range(samples):
        yield generate_point_set(RunConfig(seed=derived_seed(seed, n, i), n=n, layers=layers))


def two_layer_sets(n: int, samples: int, seed: int) -> Iterable[PointSet]:
    """Sets with exactly two layers; the inner size cycles through 1..n-3."""
    for i in range(samples):
        inner = 1 + i % (n - 3)
        cfg = RunConfig(seed=derived_seed(seed, n, i, 2), n=n, layers=(n - inner, inner))
        yield generate_point_set(cfg)


def first_path_from(S: PointSet, s: int) -> PlanePath:
    """Some plane path starting at s, found by depth-first search."""
    masks = S.crossing_masks
    stack = [((s,), 0, 1 << s)]
    while stack:
        order, mask, used = stack.pop()
        if len(order) == S.n:
            return PlanePath(S, order)
        last = order[-1]
        for v in range(S.n - 1, -1, -1):
            if used >> v & 1:
                continue
            e = S.edge_id(last, v)
            if not masks[e] & mask:
                stack.append((order + (v,), mask | 1 << e, used | 1 << v))
    raise RuntimeError(f"no plane path from {s}")


def sample_paths(S: PointSet, count: int, rng: random.Random, root: int | None = None) -> list[PlanePath]:
    """Distinct paths met by a random flip walk (fixed-start if root is given)."""
    P = first_path_from(S, 0 if root is None else root)
    seen: dict[tuple, PlanePath] = {}
    for _ in range(count * 20):
        if len(seen) >= count:
            break
        for _ in range(S.n):
            nb = neighbors(P) if root is None else neighbors_fixed_start(P, root)
            if not nb:
                break
            P = rng.choice(nb)[1]
        key = P.canonical() if root is None else P.order
        seen.setdefault(key, P)
    return list(seen.values())


def path_pool(S: PointSet, rng: random.Random, root: int | None = None, count: int = SAMPLED_PATHS) -> list[PlanePath]:
    if S.n <= EXHAUSTIVE_N:
        orders = enumerate_paths(S) if root is None else enumerate_paths_fixed_start(S, root)
        return [PlanePath(S, o) for o in orders]
    return sample_paths(S, count, rng, root)


def _both_orientations(pool: list[PlanePath]) -> Iterable[PlanePath]:
    for P in pool:
        yield P
        if len(P) > 1:
            yield P.reversed()


def _n_values(n_range: tuple[int, int], lo: int = 1, hi: int | None = None) -> list[int]:
    a, b = n_range
    a = max(a, lo)
    if hi is not None:
        b = min(b, hi)
    return list(range(a, b + 1))


# --- convex position -------------------------------------------------------


def suite_convex_fixed(n_range, samples: int = 1, seed: int = 0, **_) -> SuiteReport:
    """Convex sets, fixed start: diameter, radius, centers, zigzag distance,
    path counts and the spiral planner's length bound."""
    rep = SuiteReport("thm1")
    for n in _n_values(n_range, 3, 9):
        S = convex_position(n)
        G = build_flip_graph(S, 0)
        prof = eccentricity_profile(G)
        spirals = {spiral(S, 0, d).order for d in Direction}
        centers = {G.vertices[c] for c in prof.centers}
        rep.add(
            f"n={n} fixed-start profile",
            prof.diameter == 2 * n - 5 and prof.radius == n - 2 and centers == spirals,
            f"diameter {prof.diameter} (want {2 * n - 5}), radius {prof.radius} (want {n - 2}), "
            f"centers {'= the two spirals' if centers == spirals else sorted(centers)}",
        )
        rep.add(f"n={n} fixed-start count", len(G) == 2 ** (n - 2), f"{len(G)} paths (want {2 ** (n - 2)})")
        if n >= 4:
            zc, zw = zigzag(S, 0, Direction.COUNTERCLOCKWISE), zigzag(S, 0, Direction.CLOCKWISE)
            d, plan = flip_distance(S, zw, zc, root=0)
            rep.add(f"n={n} zigzag distance", d == 2 * n - 5 and plan.final.order == zc.order,
                    f"{d} (want {2 * n - 5})")
        worst = 0
        bad = 0
        for o in G.vertices:
            plan = convex_to_spiral_plan(PlanePath(S, o))
            if plan.final.order not in spirals or len(plan) > n - 3:
                bad += 1
            worst = max(worst, len(plan))
        rep.add(f"n={n} spiral planner", bad == 0 and worst <= max(n - 3, 0),
                f"max length {worst} over {len(G)} paths (bound {max(n - 3, 0)}), {bad} bad")
    return rep


def suite_convex_free(n_range, samples: int = 1, seed: int = 0, **_) -> SuiteReport:
    """Free flip graph of convex sets: 3 at n=4, 2n-6 from n=5 on."""
    rep = SuiteReport("convex-free")
    for n in _n_values(n_range, 4, 8):
        S = convex_position(n)
        G = build_flip_graph(S)
        prof = eccentricity_profile(G)
        want = 3 if n == 4 else 2 * n - 6
        count = n * 2 ** (n - 3)
        rep.add(f"n={n} free diameter", prof.diameter == want and len(G) == count,
                f"diameter {prof.diameter} (want {want}), {len(G)} paths (want {count})")
    return rep


# --- structural facts about single paths --------------------------------------


def suite_monotone_independence(n_range, samples: int = 5, seed: int = 0, **_) -> SuiteReport:
    """Layer-monotone implies suffix-independent; a path that is not
    suffix-independent has an outward edge."""
    rep = SuiteReport("lemma5")
    for n in _n_values(n_range, 2, 10):
        rng = random.Random(derived_seed(seed, n, 5))
        checked = bad = 0
        for S in random_sets(n, samples, seed):
            for P in _both_orientations(path_pool(S, rng)):
                checked += 1
                si = is_suffix_independent(P)
                if is_layer_monotone(P) and not si:
                    bad += 1
                    rep.failure("monotone-not-si", points=S.points, path=P.order)
                if not si and not any(S.layer_of[u] > S.layer_of[v] for u, v in directed_edges(P)):
                    bad += 1
                    rep.failure("no-outward-edge", points=S.points, path=P.order)
        rep.add(f"n={n}", bad == 0, f"{checked} directed paths on {samples} sets, {bad} violations")
    return rep


def suite_side_coverage(n_range, samples: int = 5, seed: int = 0, **_) -> SuiteReport:
    """With both endpoints outer, the prefix up to any outer v covers the
    outer points on the far side of sv from t."""
    rep = SuiteReport("lemma6")
    for n in _n_values(n_range, 3, 10):
        rng = random.Random(derived_seed(seed, n, 6))
        checked = bad = 0
        for S in random_sets(n, samples, seed):
            outer = set(S.layers[0])
            for P in _both_orientations(path_pool(S, rng)):
                s, t = P.start, P.end
                if s not in outer or t not in outer:
                    continue
                pos = P.position
                for v in outer - {s, t}:
                    checked += 1
                    _, minus = side_split(S, 0, s, v, t)
                    if any(pos[x] > pos[v] for x in minus):
                        bad += 1
                        rep.failure("prefix-misses-side", points=S.points, path=P.order, v=v)
        rep.add(f"n={n}", bad == 0, f"{checked} (path, v) instances, {bad} violations")
    return rep


def suite_adjacent_ends(n_range, samples: int = 5, seed: int = 0, **_) -> SuiteReport:
    """Endpoints adjacent on the hull rule out chords."""
    rep = SuiteReport("lemma7")
    for n in _n_values(n_range, 3, 10):
        rng = random.Random(derived_seed(seed, n, 7))
        checked = bad = 0
        for S in random_sets(n, samples, seed):
            for P in path_pool(S, rng):
                s, t = P.start, P.end
                if S.layer_of[s] == S.layer_of[t] == 0 and S.adjacent_on_layer(s, t):
                    checked += 1
                    if chords(P):
                        bad += 1
                        rep.failure("chord", points=S.points, path=P.order)
        rep.add(f"n={n}", bad == 0, f"{checked} paths with hull-adjacent ends, {bad} with a chord")
    return rep


def _brute_fixed_neighbors(P: PlanePath, s: int) -> set[tuple[int, ...]]:
    """Every single edge exchange whose result is a plane path with endpoint
    s, by direct construction and pairwise segment tests."""
    S = P.S
    pts = S.points
    n = S.n
    out = set()
    edges = set(P.edge_set)
    for removed in edges:
        rest = edges - {removed}
        for a, b in combinations(range(n), 2):
            if (a, b) in edges:
                continue
            E = rest | {(a, b)}
            deg = [0] * n
            adj = [[] for _ in range(n)]
            for x, y in E:
                deg[x] += 1
                deg[y] += 1
                adj[x].append(y)
                adj[y].append(x)
            if max(deg) > 2 or deg[s] != 1:
                continue
            order = [s]
            prev = -1
            while len(order) < n:
                nxt = [w for w in adj[order[-1]] if w != prev]
                if not nxt:
                    break
                prev = order[-1]
                order.append(nxt[0])
            if len(order) < n or len(set(order)) < n:
                continue
            if any(not {a, b} & {x, y} and segments_cross(pts[a], pts[b], pts[x], pts[y]) for x, y in rest):
                continue
            out.add(tuple(order))
    return out


def _sees_oracle(P: PlanePath, u: int, v: int) -> bool:
    pts = P.S.points
    return not any(
        not {u, v} & {x, y} and segments_cross(pts[u], pts[v], pts[x], pts[y]) for x, y in P.edges
    )


def suite_fixed_neighbors(n_range, samples: int = 3, seed: int = 0, **_) -> SuiteReport:
    """Fixed-start neighbours against brute force, the degree law, flip
    symmetry in both modes, and flip/plan round trips."""
    rep = SuiteReport("obs4")
    for n in _n_values(n_range, 3, 10):
        rng = random.Random(derived_seed(seed, n, 4))
        stats = dict(paths=0, complete=0, degree=0, sym=0, inverse=0, replay=0)
        for S in random_sets(n, samples, seed):
            starts = range(n) if n <= EXHAUSTIVE_N else rng.sample(range(n), 2)
            for s in starts:
                pool = path_pool(S, rng, root=s, count=SAMPLED_PATHS // 2)
                keys = {P.order for P in pool}
                for P in pool:
                    stats["paths"] += 1
                    nb = neighbors_fixed_start(P, s)
                    got = {Q.order for _, Q in nb}
                    t = P.end
                    if got != _brute_fixed_neighbors(P, s) or any(t not in f.added for f, _ in nb):
                        stats["complete"] += 1
                        rep.failure("fixed-neighbors", points=S.points, path=P.order)
                    visible = sum(1 for w in range(n) if w != t and _sees_oracle(P, t, w))
                    if len(nb) != visible - 1:
                        stats["degree"] += 1
                        rep.failure("degree-law", points=S.points, path=P.order)
                    for f, Q in nb:
                        if n <= EXHAUSTIVE_N and Q.order not in keys:
                            stats["sym"] += 1
                        if P.order not in {R.order for _, R in neighbors_fixed_start(Q, s)}:
                            stats["sym"] += 1
                            rep.failure("fixed-symmetry", points=S.points, path=P.order, other=Q.order)
                        if apply_flip(Q, f.inverse()).order != P.order:
                            stats["inverse"] += 1
            for P in path_pool(S, rng, count=SAMPLED_PATHS // 2):
                for f, Q in neighbors(P):
                    if P.canonical() not in {R.canonical() for _, R in neighbors(Q)}:
                        stats["sym"] += 1
                        rep.failure("free-symmetry", points=S.points, path=P.order, other=Q.order)
                    if apply_flip(Q, f.inverse()).canonical() != P.canonical():
                        stats["inverse"] += 1
                # a short random plan survives JSON and replays to the same path
                walk, cur = [], P
                for _ in range(n):
                    f, cur = rng.choice(neighbors(cur)) if neighbors(cur) else (None, cur)
                    if f is None:
                        break
                    walk.append(f)
                plan = FlipPlan(P, walk)
                back = FlipPlan.from_json(S, json.loads(plan.dumps()))
                if back.final.canonical() != cur.canonical() or plan.reversed().final.canonical() != P.canonical():
                    stats["replay"] += 1
        bad = sum(v for k, v in stats.items() if k != "paths")
        rep.add(
            f"n={n}",
            bad == 0,
            f"{stats['paths']} rooted paths: {stats['complete']} neighbour mismatches, "
            f"{stats['degree']} degree-law, {stats['sym']} symmetry, {stats['inverse']} inverse, "
            f"{stats['replay']} replay failures",
        )
    return rep


# --- suffix independence ----------------------------------------------------


def suite_strong_paths(n_range, samples: int = 10, seed: int = 0, **_) -> SuiteReport:
    rep = SuiteReport("lemma8")
    for n in _n_values(n_range, 2, 12):
        pairs = bad = 0
        for S in random_sets(n, samples, seed):
            for s, t in combinations(S.layers[0], 2):
                for a, b in ((s, t), (t, s)):
                    pairs += 1
                    P = strongly_ssi_path(S, a, b)
                    if P.start != a or P.end != b or not is_strongly_suffix_independent(P):
                        bad += 1
                        rep.failure("not-strongly-si", points=S.points, s=a, t=b, path=P.order)
        rep.add(f"n={n}", bad == 0, f"{pairs} ordered outer pairs on {samples} sets, {bad} failures")
    return rep


def _check_ssi_plan(P1: PlanePath, P2: PlanePath, plan: FlipPlan | None = None,
                    si_cache: dict | None = None) -> str | None:
    if plan is None:
        plan = ssi_connect_plan(P1, P2)
    seq = plan.replay()
    if seq[-1].order != P2.order:
        return "wrong target"

    def si(Q):
        if si_cache is None:
            return is_suffix_independent(Q)
        if Q.order not in si_cache:
            si_cache[Q.order] = is_suffix_independent(Q)
        return si_cache[Q.order]

    if not all(Q.start == P1.start and si(Q) for Q in seq):
        return "left the suffix-independent paths"
    return None


def suite_si_subgraph(n_range, samples: int = 10, seed: int = 0, pairs: int = 20, **_) -> SuiteReport:
    """Suffix-independent fixed-start paths induce a connected subgraph, and
    the planner joins them without leaving that subgraph."""
    rep = SuiteReport("thm2")
    for n in _n_values(n_range, 3, 8):
        rng = random.Random(derived_seed(seed, n, 2))
        starts = planned = bad = 0
        for S in random_sets(n, samples, seed):
            for s in S.layers[0]:
                starts += 1
                G = build_flip_graph(S, s)
                keep = {i for i, o in enumerate(G.vertices) if is_suffix_independent(PlanePath(S, o))}
                if len(induced_components(G, keep)) != 1:
                    bad += 1
                    rep.failure("si-subgraph-disconnected", points=S.points, s=s)
                si = sorted(keep)
                for _ in range(pairs if len(si) > 1 else 0):
                    i, j = rng.sample(si, 2)
                    planned += 1
                    try:
                        why = _check_ssi_plan(G.path(i), G.path(j))
                    except FAULTS as exc:
                        why = f"{type(exc).__name__}: {exc}"
                    if why:
                        bad += 1
                        rep.failure("ssi-plan", points=S.points, start=G.vertices[i], target=G.vertices[j], why=why)
        rep.add(f"n={n}", bad == 0,
                f"{starts} (set, outer start) graphs connected on SI paths, {planned} SI pairs planned, {bad} failures")
    lem = suite_strong_paths(n_range, samples, seed)
    rep.checks.extend(Check("strong paths " + c.label, c.ok, c.detail) for c in lem.checks)
    rep.counterexamples.extend(lem.counterexamples)
    return rep


# --- two layers -------------------------------------------------------------


def _marks_ok(plan: FlipPlan, seq: list[PlanePath]) -> tuple[int, int]:
    """(number of annotated cutting-edge removals, how many broke the rule)."""
    total = bad = 0
    for name, lo, hi in plan.marks:
        if name == "cutting-removal":
            a, b = seq[lo], seq[hi]
        elif name == UNDO + "cutting-removal":
            # the inverse of a removal: the rule holds read backwards
            a, b = seq[hi], seq[lo]
        else:
            continue
        total += 1
        if not (cutting_count(b) < cutting_count(a) and level_count(b, 0) >= level_count(a, 0)):
            bad += 1
    return total, bad


class PlanMemo:
    """Verified plan pieces for one point set.

    The two-layer planners are deterministic compositions of a few pieces:
    the hull-endpoint escape, the drive to a suffix-independent path, the
    suffix-independent connector and the bridge path.  Each piece is replayed
    once when first built.  A pair's plan is then sound exactly when its
    pieces are and their end paths meet; :meth:`compose_fixed` and
    :meth:`compose_free` rebuild the full step list so that sampled direct
    planner calls can be compared against it.
    """

    def __init__(self, S: PointSet):
        self.S = S
        # plan and its replayed final path, keyed by the start order
        self.si: dict[tuple, tuple[FlipPlan, PlanePath]] = {}
        self.ssi: dict[tuple, FlipPlan] = {}
        self.esc: dict[tuple, tuple[FlipPlan, PlanePath]] = {}
        self.bridges: dict[tuple, PlanePath] = {}
        self.si_known: dict[tuple, bool] = {}
        self.errors: list[dict] = []
        self.marks = [0, 0]

    def _fail(self, what, **info):
        self.errors.append({"piece": what, **info})

    def _note_marks(self, plan, seq):
        t, b = _marks_ok(plan, seq)
        self.marks[0] += t
        self.marks[1] += b
        if b:
            self._fail("cutting-removal mark", start=plan.start.order)

    def to_si(self, P: PlanePath) -> tuple[FlipPlan, PlanePath]:
        hit = self.si.get(P.order)
        if hit is None:
            plan = to_suffix_independent_plan(P)
            seq = plan.replay()
            back = plan.reversed().replay()
            if not is_suffix_independent(seq[-1]) or back[-1].order != P.order or any(Q.start != P.start for Q in seq):
                self._fail("to-si", path=P.order)
            self._note_marks(plan, seq)
            hit = self.si[P.order] = (plan, seq[-1])
        return hit

    def connect_si(self, A: PlanePath, C: PlanePath) -> FlipPlan:
        key = (A.order, C.order)
        if key not in self.ssi:
            plan = ssi_connect_plan(A, C)
            why = _check_ssi_plan(A, C, plan, self.si_known)
            if why:
                self._fail("ssi", start=A.order, target=C.order, why=why)
            self.ssi[key] = plan
        return self.ssi[key]

    def compose_fixed(self, P1: PlanePath, P2: PlanePath, build: bool = True) -> list | None:
        """The pair's fixed-start steps; with ``build`` false only the
        pieces are made and checked."""
        if P1.order == P2.order:
            return []
        (a, A), (c, C) = self.to_si(P1), self.to_si(P2)
        m = self.connect_si(A, C)
        if not build:
            return None
        return a.steps + m.steps + [f.inverse() for f in reversed(c.steps)]

    def escape(self, P: PlanePath) -> tuple[FlipPlan, PlanePath]:
        hit = self.esc.get(P.order)
        if hit is None:
            plan = escape_plan(P)
            seq = plan.replay()
            Q = seq[-1]
            if 0 not in (self.S.layer_of[Q.start], self.S.layer_of[Q.end]):
                self._fail("escape", path=P.order)
            self._note_marks(plan, seq)
            hit = self.esc[P.order] = (plan, Q)
        return hit

    def bridge(self, s1: int, s2: int) -> PlanePath:
        hit = self.bridges.get((s1, s2))
        if hit is None:
            hit = self.bridges[(s1, s2)] = strongly_ssi_path(self.S, s1, s2)
            if not is_strongly_suffix_independent(hit):
                self._fail("bridge", s=s1, t=s2)
        return hit

    def compose_free(self, P1: PlanePath, P2: PlanePath, build: bool = True) -> list | None:
        layer = self.S.layer_of
        (e1, Q1), (e2, Q2) = self.escape(P1), self.escape(P2)
        ends1 = [w for w in (Q1.start, Q1.end) if layer[w] == 0]
        ends2 = [w for w in (Q2.start, Q2.end) if layer[w] == 0]
        common = [w for w in ends1 if w in ends2]
        if common:
            mid = self.compose_fixed(rooted(Q1, common[0]), rooted(Q2, common[0]), build)
        else:
            H = self.bridge(ends1[0], ends2[0])
            mid = self.compose_fixed(rooted(Q1, ends1[0]), H, build)
            rest = self.compose_fixed(H.reversed(), rooted(Q2, ends2[0]), build)
            mid = mid + rest if build else None
        if not build:
            return None
        return e1.steps + mid + [f.inverse() for f in reversed(e2.steps)]


def _check_direct(rep: SuiteReport, planner: Callable, memo: PlanMemo, P1: PlanePath, P2: PlanePath,
                  fixed: bool, marks: list[int]) -> bool:
    try:
        composed = memo.compose_fixed(P1, P2) if fixed else memo.compose_free(P1, P2)
        plan = planner(P1, P2)
    except FAULTS as exc:
        rep.failure("direct-plan", points=P1.S.points, start=P1.order, target=P2.order, fixed=fixed,
                    error=f"{type(exc).__name__}: {exc}")
        return False
    seq = plan.replay()
    end = seq[-1]
    ok = end.order == P2.order if fixed else end.canonical() == P2.canonical()
    if fixed:
        ok = ok and all(Q.start == P1.start for Q in seq)
    ok = ok and plan.steps == composed
    t, b = _marks_ok(plan, seq)
    marks[0] += t
    marks[1] += b
    if not ok or b:
        rep.failure("direct-plan", points=P1.S.points, start=P1.order, target=P2.order, fixed=fixed)
    return ok and not b


def _compose(memo: PlanMemo, P1: PlanePath, P2: PlanePath, fixed: bool) -> None:
    try:
        memo.compose_fixed(P1, P2, False) if fixed else memo.compose_free(P1, P2, False)
    except FAULTS as exc:
        memo._fail("planner", start=P1.order, target=P2.order, fixed=fixed, error=f"{type(exc).__name__}: {exc}")


def _star_paths(S: PointSet, orders) -> list[PlanePath]:
    out = []
    for o in orders:
        P = PlanePath(S, o)
        if len(o) > 1 and S.layer_of[o[1]] == 1 and not chords(P) and level_count(P, 0) < len(S.layers[0]) - 1:
            out.append(P)
    return out


def _check_k_property(P: PlanePath) -> tuple[bool, int, int]:
    S = P.S
    try:
        plan = k_property_step(P)
    except FAULTS:
        return False, 0, 0
    seq = plan.replay()
    Q = seq[-1]
    ell, ell2 = level_count(P, 0), level_count(Q, 0)
    if S.layer_of[P.end] == 0:
        ok = ell2 > ell
    else:
        ok = ell2 == ell and S.layer_of[Q.end] == 0
    ok = ok and not chords(Q) and Q.start == P.start
    t, b = _marks_ok(plan, seq)
    return ok, t, b


def suite_two_layer(n_range, samples: int = 4, seed: int = 0, pairs: int = 30, direct: int = 40, **_) -> SuiteReport:
    """Two-layer sets: fixed-start connectivity by enumeration, planner
    soundness on path pairs, the progress-step contract and the cutting-edge
    removal contract."""
    rep = SuiteReport("two-layer")
    for n in _n_values(n_range, 4, 9):
        rng = random.Random(derived_seed(seed, n, 13))
        st = dict(starts=0, disconnected=0, fixed_pairs=0, free_pairs=0, direct=0, bad_direct=0,
                  kprop=0, bad_kprop=0, marks=0, bad_marks=0, piece_errors=0)
        for S in two_layer_sets(n, samples, seed):
            memo = PlanMemo(S)
            direct_marks = [0, 0]
            free_pool = path_pool(S, rng)
            for s in S.layers[0]:
                st["starts"] += 1
                G = build_flip_graph(S, s)
                if len(components(G)) != 1:
                    st["disconnected"] += 1
                    rep.failure("fixed-disconnected", points=S.points, s=s)
                paths = [G.path(i) for i in range(len(G))]
                if n <= EXHAUSTIVE_N:
                    for P1, P2 in combinations(paths, 2):
                        _compose(memo, P1, P2, True)
                        st["fixed_pairs"] += 1
                sample = [tuple(rng.sample(paths, 2)) for _ in range(direct if n <= EXHAUSTIVE_N else pairs)]
                for P1, P2 in sample:
                    st["direct"] += 1
                    if not _check_direct(rep, two_layer_fixed_start_plan, memo, P1, P2, True, direct_marks):
                        st["bad_direct"] += 1
                star = _star_paths(S, G.vertices)
                if n > EXHAUSTIVE_N and len(star) > 4 * pairs:
                    star = rng.sample(star, 4 * pairs)
                for P in star:
                    ok, t, b = _check_k_property(P)
                    st["kprop"] += 1
                    st["bad_kprop"] += not ok
                    st["marks"] += t
                    st["bad_marks"] += b
                    if not ok or b:
                        rep.failure("k-property", points=S.points, path=P.order)
            if n <= EXHAUSTIVE_N:
                for P1, P2 in combinations(free_pool, 2):
                    _compose(memo, P1, P2, False)
                    st["free_pairs"] += 1
            count = direct if n <= EXHAUSTIVE_N else pairs
            for _ in range(count if len(free_pool) > 1 else 0):
                P1, P2 = rng.sample(free_pool, 2)
                st["direct"] += 1
                if not _check_direct(rep, two_layer_plan, memo, P1, P2, False, direct_marks):
                    st["bad_direct"] += 1
            st["marks"] += memo.marks[0] + direct_marks[0]
            st["bad_marks"] += memo.marks[1] + direct_marks[1]
            st["piece_errors"] += len(memo.errors)
            for e in memo.errors:
                rep.failure("plan-piece", points=S.points, **e)
        rep.stats[n] = st
        rep.add(f"n={n} (a) fixed-start connectivity", st["disconnected"] == 0,
                f"{st['starts']} (set, outer start) graphs, {st['disconnected']} disconnected")
        mode = "exhaustive" if n <= EXHAUSTIVE_N else "sampled"
        rep.add(
            f"n={n} (b) plan replay ({mode})",
            st["bad_direct"] == 0 and st["piece_errors"] == 0,
            f"{st['fixed_pairs']} fixed + {st['free_pairs']} free pairs via verified pieces, "
            f"{st['direct']} direct plans replayed, {st['bad_direct'] + st['piece_errors']} failures",
        )
        rep.add(f"n={n} (c) progress step", st["bad_kprop"] == 0,
                f"{st['kprop']} chord-free inward-starting paths, {st['bad_kprop']} violations")
        rep.add(f"n={n} (d) cutting-edge removals", st["bad_marks"] == 0,
                f"{st['marks']} annotated sub-plans, {st['bad_marks']} without strict decrease")
    return rep


# --- sweeps and the 3+3 replica ----------------------------------------------


def suite_connectivity(n_range, samples: int = 200, seed: int = 0, artifact_dir: str | None = None, **_) -> SuiteReport:
    """Free flip graphs of random sets are connected."""
    rep = SuiteReport("connectivity")
    for n in _n_values(n_range, 2, 9):
        bad = 0
        sizes = []
        for i, S in enumerate(random_sets(n, samples, seed)):
            G = build_flip_graph(S)
            k = len(components(G))
            sizes.append(len(G))
            if k != 1:
                bad += 1
                rep.failure("free-disconnected", n=n, index=i, points=S.points, components=k)
                if artifact_dir:
                    d = Path(artifact_dir)
                    d.mkdir(parents=True, exist_ok=True)
                    (d / f"disconnected_n{n}_{seed}_{i}.json").write_text(
                        json.dumps({"points": [list(p) for p in S.points], "components": k}) + "\n")
        rep.add(f"n={n}", bad == 0,
                f"{samples} sets, flip graphs of {min(sizes)}..{max(sizes)} paths, {bad} disconnected")
    return rep


def suite_replica33(n_range=(6, 6), samples: int = 1, seed: int = 0, **_) -> SuiteReport:
    """The 3+3 replica: spiral distance, whether the spirals are mutually
    furthest, and the number of paths that are not suffix-independent."""
    rep = SuiteReport("fig2")
    S = PointSet(TWO33)
    s = 0
    G = build_flip_graph(S, s)
    a = G.index[spiral(S, s, Direction.COUNTERCLOCKWISE).order]
    b = G.index[spiral(S, s, Direction.CLOCKWISE).order]
    da, db = bfs_distances(G.adjacency, a), bfs_distances(G.adjacency, b)
    prof = eccentricity_profile(G)
    non_si = sum(1 for o in G.vertices if not is_suffix_independent(PlanePath(S, o)))
    faithful = [len(L) for L in S.layers] == [3, 3]
    rep.add("replica order type", faithful, f"layers {[len(L) for L in S.layers]}")
    mutual = max(da) == da[b] and max(db) == db[a]
    rep.add("spiral pair", da[b] == 5 and mutual,
            f"distance {da[b]}, eccentricities {max(da)} and {max(db)} "
            f"({'mutually furthest' if mutual else 'not furthest'}); global diameter {prof.diameter}")
    rep.add("non-suffix-independent paths", non_si == 6, f"{non_si} of {len(G)} (want 6)")
    plan = two_layer_plan(G.path(a), G.path(b))
    ok = plan.final.canonical() == G.path(b).canonical() and len(plan) >= 5
    rep.add("two-layer plan between the spirals", ok, f"length {len(plan)}, replayed")
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "thm1": suite_convex_fixed,
    "convex-free": suite_convex_free,
    "lemma5": suite_monotone_independence,
    "lemma6": suite_side_coverage,
    "lemma7": suite_adjacent_ends,
    "obs4": suite_fixed_neighbors,
    "lemma8": suite_strong_paths,
    "thm2": suite_si_subgraph,
    "two-layer": suite_two_layer,
    "connectivity": suite_connectivity,
    "fig2": suite_replica33,
}


def run_suite(name: str, n_range: tuple[int, int], samples: int | None = None, seed: int = 0, **opts) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    if samples is not None:
        opts["samples"] = samples
    return fn(n_range, seed=seed, **opts)
