"""Seeded point-set generation and a few named sets.

Every generator is a pure function of its configuration: the same
:class:`RunConfig` always produces the same coordinates, so written files
are byte-identical across runs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .geom import PointSet, find_degeneracy, peel_layers

COORD_RANGE = 10_000


class InfeasibleLayerSpec(ValueError):
    pass


class SamplingExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    n: int = 6
    layers: tuple[int, ...] | None = None
    coord_range: int = COORD_RANGE
    max_tries: int = 20_000


def check_layer_spec(n: int, layers) -> tuple[int, ...]:
    layers = tuple(int(k) for k in layers)
    if not layers:
        raise InfeasibleLayerSpec("layer spec is empty")
    if sum(layers) != n:
        raise InfeasibleLayerSpec(f"layer counts {list(layers)} sum to {sum(layers)}, not n = {n}")
    if any(k < 1 for k in layers):
        raise InfeasibleLayerSpec(f"layer counts must be positive: {list(layers)}")
    if any(k < 3 for k in layers[:-1]):
        raise InfeasibleLayerSpec(f"every layer but the innermost needs at least 3 points: {list(layers)}")
    if len(layers) == 1 and n >= 3 and layers[0] != n:
        raise InfeasibleLayerSpec(f"a single layer must hold all {n} points")
    return layers


def _ring(rng: random.Random, k: int, radius: float, cx: float, cy: float) -> list[tuple[float, float]]:
    # a perturbed regular k-gon; jitter stays below half the angular gap
    base = rng.uniform(0.0, 2 * math.pi)
    step = 2 * math.pi / k
    out = []
    for j in range(k):
        a = base + j * step + rng.uniform(-0.3, 0.3) * step
        r = radius * rng.uniform(0.85, 1.0)
        out.append((cx + r * math.cos(a), cy + r * math.sin(a)))
    return out


def _layered_draw(rng: random.Random, layers: tuple[int, ...], R: int) -> list[tuple[int, int]]:
    radius = 0.95 * R
    cx = cy = 0.0
    pts: list[tuple[float, float]] = []
    for depth, k in enumerate(layers):
        if k <= 4 and depth == len(layers) - 1:
            # small innermost layers: uniform in the disc, for more varied order types
            spread = radius * (0.3 if k <= 2 else 0.9)
            for _ in range(k):
                a = rng.uniform(0.0, 2 * math.pi)
                r = spread * math.sqrt(rng.random())
                pts.append((cx + r * math.cos(a), cy + r * math.sin(a)))
            break
        pts.extend(_ring(rng, k, radius, cx, cy))
        # the next ring must fit inside this perturbed polygon's inner disc
        radius *= rng.uniform(0.25, 0.45) * math.cos(math.pi / k) / math.cos(math.pi / 3)
        cx += rng.uniform(-0.05, 0.05) * radius
        cy += rng.uniform(-0.05, 0.05) * radius
    return [(round(x), round(y)) for x, y in pts]


def generate_point_set(cfg: RunConfig) -> PointSet:
    """Rejection-sampled integer point set in general position, with exactly
    the requested convex-layer sizes when ``cfg.layers`` is given."""
    n = cfg.n
    if n < 1:
        raise InfeasibleLayerSpec("n must be positive")
    layers = None if cfg.layers is None else check_layer_spec(n, cfg.layers)
    rng = random.Random(cfg.seed)
    R = cfg.coord_range
    last = "no attempt made"
    for _ in range(cfg.max_tries):
        if layers is None:
            pts = [(rng.randint(-R, R), rng.randint(-R, R)) for _ in range(n)]
        else:
            pts = _layered_draw(rng, layers, R)
        bad = find_degeneracy(pts)
        if bad is not None:
            last = str(bad)
            continue
        if layers is not None:
            got = tuple(len(L) for L in peel_layers(pts))
            if got != layers:
                last = f"layer profile {list(got)}"
                continue
        return PointSet(pts)
    raise SamplingExhausted(f"no admissible set after {cfg.max_tries} draws (last rejection: {last})")


MIX = 0x9E3779B97F4A7C15


def derived_seed(seed: int, *parts: int) -> int:
    """A 64-bit seed for sub-runs, stable across platforms."""
    h = seed & (2**64 - 1)
    for p in parts:
        h = (h * MIX + p + 1) & (2**64 - 1)
        h ^= h >> 29
    return h


# --- named sets ---------------------------------------------------------

# a 3+3 two-layer set whose fixed-start flip graph at 0 has the spirals at
# distance 5 and six paths that are not suffix-independent
TWO33 = ((0, 0), (10, 0), (5, 9), (4, 1), (6, 3), (3, 2))
SQUARE = ((0, 0), (4, 0), (4, 4), (0, 4))
SQUARE_CENTER = SQUARE + ((2, 1),)


def convex_position(n: int) -> PointSet:
    """n points in convex position on the parabola y = x^2, counterclockwise
    from index 0.  Any n works, and coordinates stay small."""
    return PointSet([(i, i * i) for i in range(n)])


PRESETS = {
    "two33": lambda: PointSet(TWO33),
    "square": lambda: PointSet(SQUARE),
    "square-center": lambda: PointSet(SQUARE_CENTER),
}


def preset(name: str) -> PointSet:
    """``two33``, ``square``, ``square-center`` or ``convex:N``."""
    if name.startswith("convex:"):
        return convex_position(int(name.split(":", 1)[1]))
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}, convex:N") from None
