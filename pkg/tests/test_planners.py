import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import point_sets
from oracles import inside_hull, orient, suffix_independent
from pathflip.constructions import (
    Direction,
    EndpointNotOuter,
    NotConvex,
    StartNotOuter,
    spiral,
    strongly_ssi_path,
    zigzag,
)
from pathflip.explore import build_flip_graph, bfs_distances, enumerate_paths, enumerate_paths_fixed_start
from pathflip.flips import UNDO, rooted
from pathflip.generate import SQUARE, SQUARE_CENTER, TWO33, RunConfig, convex_position, generate_point_set
from pathflip.geom import PointSet, convex_hull
from pathflip.paths import (
    PlanePath,
    chords,
    cutting_count,
    is_layer_monotone,
    is_strongly_suffix_independent,
    is_suffix_independent,
    level_count,
    sees,
)
from pathflip.planners.builder import NotSuffixIndependent, PreconditionViolated, TooManyLayers
from pathflip.planners.convex import convex_pair_plan, convex_to_spiral_plan
from pathflip.planners.suffix import ssi_connect_plan
from pathflip.planners.twolayer import (
    convex_region_flip_plan,
    escape_plan,
    free_connect,
    k_property_step,
    to_suffix_independent_plan,
    two_layer_fixed_start_plan,
    two_layer_plan,
)

T33 = PointSet(TWO33)
CW, CCW = Direction.CLOCKWISE, Direction.COUNTERCLOCKWISE

# a 3+6 set whose progress step needs a cutting-edge removal and then the
# searched inner exit
NINE = PointSet(((744, 8241), (-8469, -1710), (6019, -5888), (259, 2561), (-2218, 1279), (-2717, -260),
                 (-693, -2350), (1705, -2034), (2821, 89)))


def _replay_fixed(plan, target):
    seq = plan.replay()
    assert all(Q.start == plan.start.start for Q in seq)
    assert seq[-1].order == target.order
    return seq


class TestSpiral:
    def test_convex_cw(self):
        assert spiral(convex_position(5), 0, CW).order == (0, 4, 3, 2, 1)

    def test_square_center_ccw(self):
        assert spiral(PointSet(SQUARE_CENTER), 0, CCW).order == (0, 1, 2, 3, 4)

    def test_two33_monotone_and_inside(self):
        for d in Direction:
            P = spiral(T33, 0, d)
            assert is_layer_monotone(P) and T33.layer_of[P.end] == 1

    def test_inner_start(self):
        with pytest.raises(StartNotOuter):
            spiral(T33, 4, CW)


class TestZigzag:
    def test_small(self):
        assert zigzag(convex_position(3), 0, CCW).order == (0, 1, 2)
        assert zigzag(convex_position(4), 0, CCW).order == (0, 1, 3, 2)
        assert zigzag(convex_position(5), 0, CCW).order == (0, 1, 4, 2, 3)

    def test_not_convex(self):
        with pytest.raises(NotConvex):
            zigzag(T33, 0, CW)


class TestConvexPlans:
    def test_already_spiral(self):
        S = convex_position(6)
        assert len(convex_to_spiral_plan(spiral(S, 0, CW))) == 0

    def test_zigzag_n5(self):
        S = convex_position(5)
        plan = convex_to_spiral_plan(zigzag(S, 0, CCW))
        assert len(plan) <= 2
        assert plan.final.order in {spiral(S, 0, d).order for d in Direction}

    @pytest.mark.parametrize("n", range(3, 9))
    def test_every_path_within_bound(self, n):
        S = convex_position(n)
        spirals = {spiral(S, 0, d).order for d in Direction}
        for o in enumerate_paths_fixed_start(S, 0):
            plan = convex_to_spiral_plan(PlanePath(S, o))
            seq = plan.replay()
            assert len(plan) <= max(n - 3, 0) and seq[-1].order in spirals
            hull_edges = [level_count(Q, 0) for Q in seq]
            for k, f in enumerate(plan.steps):
                # only a flip that closes onto s may keep the count level
                a, b = hull_edges[k], hull_edges[k + 1]
                assert a < b or (a == b and 0 in f.added)

    def test_zigzags_n6_tight(self):
        S = convex_position(6)
        plan = convex_pair_plan(zigzag(S, 0, CW), zigzag(S, 0, CCW))
        _replay_fixed(plan, zigzag(S, 0, CCW))
        assert len(plan) == 7

    def test_identity(self):
        S = convex_position(5)
        P = zigzag(S, 0, CW)
        assert len(convex_pair_plan(P, P)) == 0

    @pytest.mark.parametrize("n", range(4, 9))
    def test_random_pairs_between_bfs_and_bound(self, n):
        S = convex_position(n)
        G = build_flip_graph(S, 0)
        rng = random.Random(n)
        for _ in range(15):
            i, j = rng.randrange(len(G)), rng.randrange(len(G))
            plan = convex_pair_plan(G.path(i), G.path(j))
            _replay_fixed(plan, G.path(j))
            assert bfs_distances(G.adjacency, i)[j] <= len(plan) <= 2 * n - 5


class TestStronglySSI:
    def test_two_points(self):
        S = PointSet([(0, 0), (2, 1)])
        assert strongly_ssi_path(S, 0, 1).order == (0, 1)

    def test_square(self):
        P = strongly_ssi_path(PointSet(SQUARE), 0, 2)
        assert (P.start, P.end) == (0, 2)
        assert suffix_independent(P.S.points, P.order) and suffix_independent(P.S.points, P.order[::-1])

    def test_inner_endpoint(self):
        with pytest.raises((EndpointNotOuter, StartNotOuter)):
            strongly_ssi_path(T33, 0, 4)

    @settings(max_examples=40)
    @given(point_sets(3, 10, bound=200))
    def test_random_sets(self, S):
        outer = S.layers[0]
        for s in outer:
            for t in outer:
                if s == t:
                    continue
                P = strongly_ssi_path(S, s, t)
                assert (P.start, P.end) == (s, t)
                assert is_strongly_suffix_independent(P)
                assert suffix_independent(S.points, P.order)


class TestSSIConnect:
    def test_identity(self):
        P = spiral(T33, 0, CW)
        assert len(ssi_connect_plan(P, P)) == 0

    def test_convex_spirals(self):
        S = convex_position(5)
        a, b = spiral(S, 0, CW), spiral(S, 0, CCW)
        seq = _replay_fixed(ssi_connect_plan(a, b), b)
        assert all(is_suffix_independent(Q) for Q in seq)

    def test_two33_all_pairs(self):
        si = [PlanePath(T33, o) for o in enumerate_paths_fixed_start(T33, 0)
              if is_suffix_independent(PlanePath(T33, o))]
        for P1 in si:
            for P2 in si:
                seq = _replay_fixed(ssi_connect_plan(P1, P2), P2)
                assert all(is_suffix_independent(Q) for Q in seq)

    def test_rejects_non_si(self):
        bad = next(PlanePath(T33, o) for o in enumerate_paths_fixed_start(T33, 0)
                   if not is_suffix_independent(PlanePath(T33, o)))
        with pytest.raises(NotSuffixIndependent):
            ssi_connect_plan(bad, spiral(T33, 0, CW))


def _region_instances(S):
    """Every (path, a, uv) accepted by the region sweep's precondition."""
    for s in S.layers[0]:
        for o in enumerate_paths_fixed_start(S, s):
            P = PlanePath(S, o)
            for k in range(1, S.n):
                a = o[k]
                for u, v in P.edges:
                    try:
                        plan = convex_region_flip_plan(P, a, (u, v))
                    except PreconditionViolated:
                        continue
                    yield P, a, (u, v), plan


class TestRegionSweep:
    def test_single_point_two_flips(self):
        S = PointSet(SQUARE)
        P = PlanePath(S, (0, 1, 2, 3))
        plan = convex_region_flip_plan(P, 3, (0, 1))
        seq = plan.replay()
        assert len(plan) == 2
        assert seq[-1].end == P.pred(3) == 2
        assert all(Q.start == 0 for Q in seq)

    def test_point_in_region(self):
        S = PointSet(SQUARE_CENTER)
        # the centre (2, 1) lies in the triangle of 3 with the edge 01
        P = PlanePath(S, (4, 0, 1, 2, 3))
        with pytest.raises(PreconditionViolated, match="region contains a point"):
            convex_region_flip_plan(P, 3, (0, 1))

    @pytest.mark.parametrize("pts", [TWO33, SQUARE_CENTER, ((0, 0), (9, 0), (11, 6), (5, 11), (-2, 7), (4, 4))],
                             ids=["two33", "square-center", "hexagon-ish"])
    def test_edges_stay_in_region(self, pts):
        S = PointSet(pts)
        seen_multi = 0
        count = 0
        for P, a, (u, v), plan in _region_instances(S):
            count += 1
            A = P.order[P.position[a]:]
            seen_multi += len(A) >= 2
            region = set(A) | {u, v}
            H = convex_hull(S.points, region)
            for f in plan.steps:
                for w in f.added:
                    q = S.points[w]
                    assert w in region or inside_hull(S.points, H, q)
            seq = plan.replay()
            assert seq[-1].end == P.pred(a)
            assert all(Q.start == P.start for Q in seq)
        assert count > 0
        if pts != SQUARE_CENTER:
            assert seen_multi > 0


def _star(S, s):
    out = []
    for o in enumerate_paths_fixed_start(S, s):
        P = PlanePath(S, o)
        if S.layer_of[o[1]] == 1 and not chords(P) and level_count(P, 0) < len(S.layers[0]) - 1:
            out.append(P)
    return out


class TestProgressStep:
    def test_outer_end_gains_level_edge(self):
        cases = [P for P in _star(T33, 0) if T33.layer_of[P.end] == 0]
        assert cases
        for P in cases:
            Q = k_property_step(P).final
            assert level_count(Q, 0) > level_count(P, 0) and not chords(Q) and Q.start == 0

    def test_visible_outward_edge_single_flip(self):
        cases = []
        for P in _star(T33, 0):
            t = P.end
            if T33.layer_of[t] == 1 and any(
                    T33.layer_of[w] == 1 and T33.layer_of[P.succ(w)] == 0 and sees(P, t, w) for w in P.order[:-1]):
                cases.append(P)
        assert cases
        for P in cases:
            plan = k_property_step(P)
            Q = plan.final
            assert len(plan) == 1
            assert level_count(Q, 0) == level_count(P, 0) and T33.layer_of[Q.end] == 0

    def test_cutting_edge_removal(self):
        P = PlanePath(NINE, (0, 5, 4, 1, 7, 6, 2, 3, 8))
        plan = k_property_step(P)
        seq = plan.replay()
        removals = [(lo, hi) for name, lo, hi in plan.marks if name == "cutting-removal"]
        assert removals
        for lo, hi in removals:
            assert cutting_count(seq[hi]) < cutting_count(seq[lo])
            assert level_count(seq[hi], 0) >= level_count(seq[lo], 0)
        Q = seq[-1]
        assert NINE.layer_of[Q.end] == 0 and level_count(Q, 0) == level_count(P, 0)

    def test_mutually_blocked_exits(self):
        P = PlanePath(NINE, (0, 5, 4, 1, 7, 6, 2, 8, 3))
        Q = k_property_step(P).final
        assert NINE.layer_of[Q.end] == 0 and level_count(Q, 0) == level_count(P, 0) and not chords(Q)

    def test_whole_star_of_two33(self):
        for s in T33.layers[0]:
            for P in _star(T33, s):
                Q = k_property_step(P).final
                if T33.layer_of[P.end] == 0:
                    assert level_count(Q, 0) > level_count(P, 0)
                else:
                    assert level_count(Q, 0) == level_count(P, 0) and T33.layer_of[Q.end] == 0

    def test_precondition(self):
        P = spiral(T33, 0, CW)
        assert T33.layer_of[P.order[1]] == 0
        with pytest.raises(PreconditionViolated):
            k_property_step(P)


class TestToSI:
    def test_already_si(self):
        P = spiral(T33, 0, CCW)
        plan = to_suffix_independent_plan(P)
        assert is_suffix_independent(plan.final)

    @pytest.mark.parametrize("S", [T33, generate_point_set(RunConfig(seed=7, n=8, layers=(5, 3)))],
                             ids=["two33", "random-5+3"])
    def test_every_path(self, S):
        for s in S.layers[0]:
            for o in enumerate_paths_fixed_start(S, s):
                seq = to_suffix_independent_plan(PlanePath(S, o)).replay()
                assert is_suffix_independent(seq[-1]) and all(Q.start == s for Q in seq)

    def test_three_layers(self):
        S = PointSet(((0, 0), (40, 0), (20, 40), (15, 8), (25, 8), (21, 20), (19, 12)))
        assert S.layer_number == 3
        with pytest.raises(TooManyLayers):
            to_suffix_independent_plan(spiral(S, 0, CW))


class TestTwoLayerPlans:
    def test_identity(self):
        P = spiral(T33, 0, CW)
        assert two_layer_fixed_start_plan(P, P).final.order == P.order

    def test_two33_fixed_all_pairs(self):
        G = build_flip_graph(T33, 0)
        for i in range(len(G)):
            dist = bfs_distances(G.adjacency, i)
            for j in range(len(G)):
                plan = two_layer_fixed_start_plan(G.path(i), G.path(j))
                _replay_fixed(plan, G.path(j))
                assert len(plan) >= dist[j]

    def test_convex_falls_back_to_spirals(self):
        S = convex_position(7)
        G = build_flip_graph(S, 0)
        for i in range(0, len(G), 5):
            for j in range(0, len(G), 7):
                plan = two_layer_fixed_start_plan(G.path(i), G.path(j))
                _replay_fixed(plan, G.path(j))
                assert len(plan) <= 2 * 7 - 5

    def test_outer_ends_skip_escape(self):
        P1, P2 = spiral(T33, 0, CW).reversed(), spiral(T33, 1, CCW).reversed()
        assert T33.layer_of[P1.start] == 1 and T33.layer_of[P1.end] == 0
        assert len(escape_plan(P1)) == 0 and len(escape_plan(P2)) == 0
        plan = two_layer_plan(P1, P2)
        assert plan.final.canonical() == P2.canonical()

    def test_two33_free_all_pairs(self):
        orders = enumerate_paths(T33)
        for o1 in orders:
            for o2 in orders:
                P1, P2 = PlanePath(T33, o1), PlanePath(T33, o2)
                assert two_layer_plan(P1, P2).final.canonical() == P2.canonical()

    def test_random_eight_point_pairs(self):
        S = generate_point_set(RunConfig(seed=3, n=8, layers=(5, 3)))
        orders = enumerate_paths(S)
        rng = random.Random(0)
        for _ in range(100):
            o1, o2 = rng.sample(orders, 2)
            P1, P2 = PlanePath(S, o1), PlanePath(S, o2)
            plan = two_layer_plan(P1, P2)
            assert plan.final.canonical() == P2.canonical()
            seq = plan.replay()
            for name, lo, hi in plan.marks:
                a, b = (seq[lo], seq[hi]) if not name.startswith(UNDO) else (seq[hi], seq[lo])
                if name.endswith("cutting-removal"):
                    assert cutting_count(b) < cutting_count(a)

    def test_three_layers_rejected(self):
        S = PointSet(((0, 0), (40, 0), (20, 40), (15, 8), (25, 8), (21, 20), (19, 12)))
        P = spiral(S, 0, CW)
        with pytest.raises(TooManyLayers):
            free_connect(P, P)

    def test_fixed_start_mismatch(self):
        with pytest.raises(ValueError):
            two_layer_fixed_start_plan(spiral(T33, 0, CW), spiral(T33, 1, CW))


def test_rooted_orientation_helper():
    P = spiral(T33, 0, CW)
    assert rooted(P.reversed(), 0).order == P.order
    assert orient((0, 0), (1, 0), (0, 1)) == 1
