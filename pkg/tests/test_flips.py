import json

import pytest
from hypothesis import given, strategies as st

from conftest import point_sets
from oracles import flip_set
from pathflip.explore import enumerate_paths, enumerate_paths_fixed_start
from pathflip.generate import SQUARE, TWO33, convex_position
from pathflip.geom import PointSet
from pathflip.flips import (
    UNDO,
    EdgeAlreadyPresent,
    EdgeNotPresent,
    Flip,
    FlipPlan,
    NotAPath,
    PlanError,
    apply_flip,
    neighbors,
    neighbors_fixed_start,
    rooted,
    same_path,
)
from pathflip.paths import PlanePath, sees

SQ = PointSet(SQUARE)
P0123 = PlanePath(SQ, (0, 1, 2, 3))


class TestApplyFlip:
    def test_cycle_plus_isolated(self):
        with pytest.raises(NotAPath):
            apply_flip(P0123, Flip((0, 1), (1, 3)))

    def test_chord_exchange(self):
        assert apply_flip(P0123, Flip((1, 2), (3, 1))).order == (0, 1, 3, 2)

    def test_degree_three(self):
        with pytest.raises(NotAPath):
            apply_flip(P0123, Flip((0, 1), (0, 2)))

    def test_missing_and_present_edges(self):
        with pytest.raises(EdgeNotPresent):
            apply_flip(P0123, Flip((0, 2), (0, 3)))
        with pytest.raises(EdgeAlreadyPresent):
            apply_flip(P0123, Flip((0, 1), (1, 2)))

    def test_inverse_restores(self):
        f = Flip((1, 2), (3, 1))
        Q = apply_flip(P0123, f)
        assert apply_flip(Q, f.inverse()).canonical() == P0123.canonical()


class TestNeighbors:
    def test_triangle(self):
        S = convex_position(3)
        P = PlanePath(S, (0, 1, 2))
        got = {Q.canonical() for _, Q in neighbors(P)}
        assert got == flip_set(S.points, P.order) == {(0, 2, 1), (1, 0, 2)}

    def test_square_matches_brute_force(self):
        got = {Q.canonical() for _, Q in neighbors(P0123)}
        assert got == flip_set(SQ.points, P0123.order)

    def test_two_points(self):
        S = PointSet([(0, 0), (1, 2)])
        assert neighbors(PlanePath(S, (0, 1))) == []


class TestFixedStart:
    def test_square(self):
        got = {(f.removed, f.added, Q.order) for f, Q in neighbors_fixed_start(P0123, 0)}
        assert {o for *_, o in got} == flip_set(SQ.points, P0123.order, 0) == {(0, 1, 3, 2), (0, 3, 2, 1)}
        assert {(r, a) for r, a, _ in got} == {((1, 2), (1, 3)), ((0, 1), (0, 3))}

    def test_triangle(self):
        S = convex_position(3)
        assert [Q.order for _, Q in neighbors_fixed_start(PlanePath(S, (0, 1, 2)), 0)] == [(0, 2, 1)]

    def test_two_points(self):
        S = PointSet([(0, 0), (1, 2)])
        assert neighbors_fixed_start(PlanePath(S, (0, 1)), 0) == []

    def test_rooted(self):
        R = rooted(P0123, 3)
        assert R.order == (3, 2, 1, 0)
        with pytest.raises(Exception):
            rooted(P0123, 1)


def _sets():
    return [PointSet(TWO33), PointSet(SQUARE), convex_position(6)]


@pytest.mark.parametrize("S", _sets(), ids=["two33", "square", "convex6"])
def test_brute_force_and_degree_law(S):
    for s in range(S.n):
        for o in enumerate_paths_fixed_start(S, s):
            P = PlanePath(S, o)
            nb = neighbors_fixed_start(P, s)
            assert {Q.order for _, Q in nb} == flip_set(S.points, o, s)
            t = P.end
            assert all(t in f.added for f, _ in nb)
            visible = sum(1 for w in range(S.n) if w != t and sees(P, t, w))
            assert len(nb) == visible - 1


@given(point_sets(3, 7))
def test_symmetry_both_modes(S):
    free = {o: {Q.canonical() for _, Q in neighbors(PlanePath(S, o))} for o in enumerate_paths(S)}
    for o, nb in free.items():
        assert all(o in free[q] for q in nb)
    for s in S.layers[0][:2]:
        fixed = {o: {Q.order for _, Q in neighbors_fixed_start(PlanePath(S, o), s)}
                 for o in enumerate_paths_fixed_start(S, s)}
        for o, nb in fixed.items():
            assert all(o in fixed[q] for q in nb)


@given(point_sets(3, 7), st.data())
def test_free_matches_brute_force(S, data):
    o = data.draw(st.sampled_from(sorted(enumerate_paths(S))))
    assert {Q.canonical() for _, Q in neighbors(PlanePath(S, o))} == flip_set(S.points, o)


@given(point_sets(3, 7), st.data())
def test_flip_then_inverse(S, data):
    o = data.draw(st.sampled_from(sorted(enumerate_paths(S))))
    P = PlanePath(S, o)
    for f, Q in neighbors(P):
        assert apply_flip(Q, f.inverse()).canonical() == P.canonical()


class TestFlipPlan:
    def _plan(self):
        return FlipPlan(P0123, [Flip((1, 2), (1, 3)), Flip((1, 3), (0, 3))])

    def test_replay(self):
        seq = self._plan().replay()
        assert [Q.order for Q in seq] == [(0, 1, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2)]
        assert same_path(seq[-1], self._plan().final)

    def test_bad_step_reports_index(self):
        plan = FlipPlan(P0123, [Flip((1, 2), (1, 3)), Flip((1, 2), (0, 3))])
        with pytest.raises(PlanError, match="step 1"):
            plan.replay()

    def test_reverse_walks_back(self):
        plan = self._plan()
        back = plan.reversed()
        assert back.final.canonical() == P0123.canonical()
        assert back.start.canonical() == plan.final.canonical()

    def test_marks_survive_reverse_and_then(self):
        plan = FlipPlan(P0123, self._plan().steps, [("cutting-removal", 1, 2)])
        back = plan.reversed()
        assert back.marks == [(UNDO + "cutting-removal", 0, 1)]
        assert back.reversed().marks == plan.marks
        both = plan.then(back)
        assert both.marks == [("cutting-removal", 1, 2), (UNDO + "cutting-removal", 2, 3)]
        assert both.final.canonical() == P0123.canonical()

    def test_json_round_trip(self):
        plan = self._plan()
        data = json.loads(plan.dumps(narrate=True))
        again = FlipPlan.from_json(SQ, data)
        assert again.steps == plan.steps
        assert again.final.order == plan.final.order
