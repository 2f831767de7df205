from __future__ import annotations

from typing import Callable, Sequence

from ..flips import Flip, FlipPlan, apply_flip
from ..geom import PointSet
from ..paths import PathError, PlanePath, validate_path


class PlannerError(RuntimeError):
    """A planner could not produce a plan for its input."""


class PreconditionViolated(PlannerError):
    pass


class TooManyLayers(PlannerError):
    pass


class NotSuffixIndependent(PlannerError):
    pass


class PlannerDefect(PlannerError):
    """A constructive step found itself in a situation its argument rules out."""


def localize(S: PointSet, indices: Sequence[int]):
    """Sub-point-set on ``indices`` with global<->local translators."""
    sub, mapping = S.subset(indices)
    local = {g: k for k, g in enumerate(mapping)}
    return sub, mapping, local


class PlanBuilder:
    """Accumulates flips on a working path, validating each one as it goes."""

    def __init__(self, P: PlanePath):
        self.start = P
        self.cur = P
        self.steps: list[Flip] = []
        self.log: list[tuple[str, dict]] = []
        self.marks: list[tuple[str, int, int]] = []

    @property
    def S(self) -> PointSet:
        return self.cur.S

    def flip(self, removed, added, note: str = "") -> PlanePath:
        f = Flip(tuple(removed), tuple(added), note)
        self.cur = apply_flip(self.cur, f)
        self.steps.append(f)
        return self.cur

    def flip_at_end(self, w: int, note: str = "") -> PlanePath:
        """Fixed-start flip: add (w, end), drop the edge from w to its successor."""
        P = self.cur
        return self.flip((w, P.succ(w)), (w, P.end), note)

    def try_flip_at_end(self, w: int, note: str = "") -> bool:
        try:
            self.flip_at_end(w, note)
        except PathError:
            return False
        return True

    def extend(self, steps) -> None:
        for f in steps:
            self.flip(f.removed, f.added, f.note)

    def mark(self, event: str, **info) -> None:
        self.log.append((event, info))

    def snapshot(self):
        return (self.cur, len(self.steps), len(self.log), len(self.marks))

    def restore(self, snap) -> None:
        self.cur, n_steps, n_log, n_marks = snap
        del self.steps[n_steps:]
        del self.log[n_log:]
        del self.marks[n_marks:]

    def on_suffix(self, k: int, planner: Callable[[PlanePath], FlipPlan], note: str = "") -> None:
        """Run ``planner`` on the suffix starting at position k, viewed as a path
        on its own point set, and replay the result here.  The suffix must be
        independent so that flips inside its point set never touch the rest of
        the path."""
        if k == 0:
            raise PlannerDefect("suffix planning would recurse on the whole set")
        X = self.cur.order[k:]
        if len(X) <= 1:
            return
        sub, mapping, local = localize(self.S, X)
        plan = planner(PlanePath(sub, tuple(local[v] for v in X)))
        # annotations of the sub-plan refer to the sub-set's layers; drop them
        for f in plan.steps:
            a, b = f.removed
            c, d = f.added
            self.flip((mapping[a], mapping[b]), (mapping[c], mapping[d]), f.note or note)

    def replan_suffix(self, k: int, target: Sequence[int], connect: Callable, note: str = "") -> None:
        """Rewrite the suffix starting at position k into ``target`` (global
        indices, same start and point set)."""
        X = self.cur.order[k:]
        target = tuple(target)
        if X == target:
            return
        if target[0] != X[0] or sorted(target) != sorted(X):
            raise PlannerDefect(f"bad suffix target {target} for {X}")
        sub, mapping, local = localize(self.S, X)
        goal = validate_path(sub, (local[v] for v in target))
        self.on_suffix(k, lambda P: connect(P, goal), note)
        if self.cur.order[k:] != target:
            raise PlannerDefect("suffix re-plan did not reach its target")

    def plan(self) -> FlipPlan:
        return FlipPlan(self.start, list(self.steps), list(self.marks))
