"""Static SVG pictures of a point set with a path, or a plan as a grid of frames."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .flips import Flip, FlipPlan
from .geom import PointSet
from .paths import PlanePath

FRAME = 320
MARGIN = 24
LAYER_COLORS = ("#888888", "#b0b0d8", "#d8b0b0", "#b0d8b0")


def _scaler(S: PointSet, size: int):
    xs = [p[0] for p in S.points]
    ys = [p[1] for p in S.points]
    w = max(max(xs) - min(xs), 1)
    h = max(max(ys) - min(ys), 1)
    k = (size - 2 * MARGIN) / max(w, h)
    x0, y1 = min(xs), max(ys)
    return lambda p: (MARGIN + (p[0] - x0) * k, MARGIN + (y1 - p[1]) * k)


def _frame(S: PointSet, P: PlanePath | None, caption: str, fresh: tuple[int, int] | None, size: int) -> list[str]:
    at = _scaler(S, size)
    out = []
    for i, layer in enumerate(S.layers):
        if len(layer) < 2:
            continue
        pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in (at(S.points[v]) for v in layer))
        color = LAYER_COLORS[i % len(LAYER_COLORS)]
        out.append(f'<polygon points="{pts}" fill="none" stroke="{color}" stroke-dasharray="4 3"/>')
    if P is not None:
        for u, v in P.edges:
            (x1, y1), (x2, y2) = at(S.points[u]), at(S.points[v])
            new = fresh is not None and {u, v} == set(fresh)
            color, width = ("#d62728", 3) if new else ("#1f4e9a", 2)
            out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                       f'stroke="{color}" stroke-width="{width}"/>')
    for i, p in enumerate(S.points):
        x, y = at(p)
        fill = "#000"
        if P is not None and i == P.start:
            fill = "#2ca02c"
        elif P is not None and i == P.end:
            fill = "#ff7f0e"
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="{fill}"/>')
        out.append(f'<text x="{x + 6:.1f}" y="{y - 6:.1f}" font-size="11">{i}</text>')
    if caption:
        out.append(f'<text x="{MARGIN}" y="{size - 6}" font-size="12">{escape(caption)}</text>')
    return out


def _document(width: int, height: int, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif">')
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def path_svg(S: PointSet, P: PlanePath | None = None, caption: str = "", size: int = FRAME) -> str:
    return _document(size, size, _frame(S, P, caption, None, size))


def _step_caption(k: int, f: Flip) -> str:
    return f"step {k}: -{f.removed[0]}{f.removed[1]} +{f.added[0]}{f.added[1]}"


def plan_svg(plan: FlipPlan, columns: int = 4, size: int = FRAME) -> str:
    """One frame per path along the plan, the start first; each frame after
    the first highlights the edge just added."""
    seq = plan.replay()
    S = plan.start.S
    cols = max(1, min(columns, len(seq)))
    rows = -(-len(seq) // cols)
    body = []
    for k, P in enumerate(seq):
        r, c = divmod(k, cols)
        f = plan.steps[k - 1] if k else None
        caption = "start" if f is None else _step_caption(k, f)
        body.append(f'<g transform="translate({c * size},{r * size})">')
        body.extend(_frame(S, P, caption, None if f is None else f.added, size))
        body.append("</g>")
    return _document(cols * size, rows * size, body)

