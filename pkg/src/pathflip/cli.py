"""``pathflip`` command line.

Exit codes: 0 success, 2 bad input or unmet precondition, 3 a verification
or replay failure, 4 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import Direction, spiral
from .explore import (
    CapExceeded,
    Disconnected,
    Unreachable,
    build_flip_graph,
    enumerate_paths,
    enumerate_paths_fixed_start,
    flip_distance,
    metrics,
    to_adjacency_json,
    to_dot,
)
from .flips import FlipPlan, PlanError, rooted
from .generate import InfeasibleLayerSpec, RunConfig, SamplingExhausted, generate_point_set, preset
from .geom import GeometryError, PointSet, dumps_point_set, parse_point_set
from .paths import PathError, format_path, parse_path, validate_path
from .planners.builder import PlannerDefect, PlannerError
from .planners.convex import convex_pair_plan
from .planners.suffix import ssi_connect_plan
from .planners.twolayer import fixed_start_connect, two_layer_plan
from .suites import SUITES, run_suite
from .svg import path_svg, plan_svg

EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY, EXIT_CAP = 0, 2, 3, 4


class VerificationFailed(RuntimeError):
    pass


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (CapExceeded, SamplingExhausted)):
        return EXIT_CAP
    if isinstance(exc, (VerificationFailed, PlannerDefect, PlanError, Unreachable, Disconnected)):
        return EXIT_VERIFY
    if isinstance(exc, (PlannerError, GeometryError, PathError, InfeasibleLayerSpec, ValueError, KeyError, OSError)):
        return EXIT_PRECONDITION
    raise exc


# --- input helpers ------------------------------------------------------------


def load_points(src: str) -> PointSet:
    """A file name, ``-`` for stdin, or ``@name`` for a built-in set."""
    if src.startswith("@"):
        return preset(src[1:])
    text = sys.stdin.read() if src == "-" else Path(src).read_text()
    return parse_point_set(text)


def load_path(S: PointSet, text: str):
    text = text.strip()
    order = json.loads(text) if text.startswith("[") else parse_path(text)
    return validate_path(S, order)


def _write(dest: str | None, text: str) -> None:
    if dest is None or dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def _parse_mode(mode: str) -> int | None:
    if mode == "free":
        return None
    if mode.startswith("fixed:"):
        return int(mode.split(":", 1)[1])
    raise ValueError(f"mode must be 'free' or 'fixed:s', got {mode!r}")


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        return int(lo), int(lo)
    return int(lo), int(hi)


# --- subcommands --------------------------------------------------------------


def cmd_gen(args) -> int:
    layers = tuple(int(k) for k in args.layers.split(",")) if args.layers else None
    S = generate_point_set(RunConfig(seed=args.seed, n=args.n, layers=layers, max_tries=args.max_tries))
    _write(args.output, dumps_point_set(S, args.format))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    S = load_points(args.points)
    if args.fixed_start is None:
        paths = enumerate_paths(S, args.cap)
    else:
        paths = enumerate_paths_fixed_start(S, args.fixed_start, args.cap)
    if args.json:
        body = {"count": len(paths)}
        if args.list:
            body["paths"] = [list(p) for p in paths]
        print(json.dumps(body))
    else:
        print(len(paths))
        if args.list:
            for p in paths:
                print(format_path(p))
    return EXIT_OK


def cmd_graph(args) -> int:
    S = load_points(args.points)
    root = _parse_mode(args.mode)
    G = build_flip_graph(S, root, args.cap, args.workers)
    m = metrics(G)
    text = json.dumps(m, sort_keys=True) + "\n"
    if args.metrics:
        Path(args.metrics).write_text(text)
    if args.dot:
        tags = []
        starts = [root] if root is not None else list(S.layers[0])
        if all(S.layer_of[s] == 0 for s in starts):
            tags = [spiral(S, s, d).order for s in starts for d in Direction]
        Path(args.dot).write_text(to_dot(G, tags))
    if args.adjacency:
        Path(args.adjacency).write_text(to_adjacency_json(G) + "\n")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_distance(args) -> int:
    S = load_points(args.points)
    P1, P2 = load_path(S, args.p1), load_path(S, args.p2)
    d, plan = flip_distance(S, P1, P2, args.fixed_start)
    final = plan.final
    if args.fixed_start is None:
        same = final.canonical() == P2.canonical()
    else:
        same = final.order == rooted(P2, args.fixed_start).order
    if not same:
        raise VerificationFailed("witness plan does not reach the target")
    print(json.dumps({"distance": d, "plan": plan.to_json()}))
    return EXIT_OK


PLANNERS = ("convex", "ssi", "two-layer-fixed", "two-layer")


def make_plan(S: PointSet, planner: str, P1, P2) -> tuple[FlipPlan, bool]:
    """The plan and whether it is a fixed-start plan."""
    if planner == "two-layer":
        return two_layer_plan(P1, P2), False
    s = P1.start
    P2 = rooted(P2, s)
    if planner == "convex":
        return convex_pair_plan(P1, P2), True
    if planner == "ssi":
        return ssi_connect_plan(P1, P2), True
    if planner == "two-layer-fixed":
        return fixed_start_connect(P1, P2), True
    raise ValueError(f"unknown planner {planner!r}")


def replay_report(plan: FlipPlan, target, fixed: bool) -> dict:
    seq = plan.replay()
    end = seq[-1]
    reached = end.order == target.order if fixed else end.canonical() == target.canonical()
    if fixed:
        reached = reached and all(Q.start == plan.start.start for Q in seq)
    return {"replayed": True, "steps": len(plan), "reached_target": reached, "final": list(end.order)}


def cmd_plan(args) -> int:
    S = load_points(args.points)
    P1, P2 = load_path(S, args.source), load_path(S, args.target)
    plan, fixed = make_plan(S, args.planner, P1, P2)
    target = rooted(P2, P1.start) if fixed else P2
    report = replay_report(plan, target, fixed)
    text = json.dumps(plan.to_json(args.narrate)) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        print(json.dumps(report))
    else:
        sys.stdout.write(text)
        print(json.dumps(report), file=sys.stderr)
    if not report["reached_target"]:
        raise VerificationFailed("plan replayed but did not reach the target")
    return EXIT_OK


def cmd_verify(args) -> int:
    opts = {}
    if args.artifact_dir:
        opts["artifact_dir"] = args.artifact_dir
    rep = run_suite(args.suite, _parse_range(args.n_range), args.samples, args.seed, **opts)
    if args.json:
        print(json.dumps(rep.to_json()))
    else:
        for line in rep.lines():
            print(line)
        print(f"suite {rep.suite}: {'ok' if rep.ok else 'FAILED'}")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_export(args) -> int:
    S = load_points(args.points)
    if args.plan:
        plan = FlipPlan.from_json(S, json.loads(Path(args.plan).read_text()))
        svg = plan_svg(plan, args.columns)
    else:
        P = load_path(S, args.path) if args.path else None
        svg = path_svg(S, P, "" if P is None else format_path(P.order))
    _write(args.svg, svg)
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathflip", description="Flip graphs of plane spanning paths.")
    ap.add_argument("--error-json", action="store_true", help="report errors as JSON on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def points_arg(p):
        p.add_argument("--points", required=True, help="point-set file, '-' for stdin, or @two33, @square-center, @convex:N")

    p = sub.add_parser("gen", help="write a seeded random point set")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--layers", help="comma-separated layer sizes, outermost first")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-tries", type=int, default=RunConfig.max_tries)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enumerate", help="count (and list) plane spanning paths")
    points_arg(p)
    p.add_argument("--fixed-start", type=int)
    p.add_argument("--list", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, help="largest n to enumerate (default from PATHFLIP_CAP or built in)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="build a flip graph and report its metrics")
    points_arg(p)
    p.add_argument("--mode", default="free", help="free or fixed:s")
    p.add_argument("--dot")
    p.add_argument("--metrics")
    p.add_argument("--adjacency")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("distance", help="shortest flip distance with a witness plan")
    points_arg(p)
    p.add_argument("--fixed-start", type=int)
    p.add_argument("p1")
    p.add_argument("p2")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("plan", help="run a constructive planner and replay its output")
    points_arg(p)
    p.add_argument("--planner", choices=PLANNERS, required=True)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--narrate", action="store_true", help="annotate each flip with the step that produced it")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--n-range", default="3..7", help="a..b")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--artifact-dir", help="where counterexamples are written")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="static SVG of a point set, path or plan")
    points_arg(p)
    p.add_argument("--svg", required=True, help="output file ('-' for stdout)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--path")
    g.add_argument("--plan", help="FlipPlan JSON file; one frame per step")
    p.add_argument("--columns", type=int, default=4)
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # mapped to an exit code, or re-raised
        code = _exit_code(exc)
        msg = str(exc) if not isinstance(exc, KeyError) else exc.args[0]
        if args.error_json:
            print(json.dumps({"error": type(exc).__name__, "message": msg, "exit_code": code}), file=sys.stderr)
        else:
            print(f"pathflip: {type(exc).__name__}: {msg}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
