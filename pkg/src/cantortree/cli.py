"""Command-line entry point: ``python -m cantortree <command> ...``.

Exit codes: 0 success (or a non-parabolicity certificate), 1 a lemma sweep
found a negative margin, 2 bad input, 3 a hypothesis is not satisfied,
4 inconclusive.
"""

import argparse
import json
import math
import sys

from . import constants
from .analysis import Verdict, to_jsonable, dirichlet_certificate
from .errors import CantorTreeError, InfeasibleProfile, ProfileFormatError
from .foliation import QUAD_RTOL, pants_dirichlet
from .hyptrig import check_lengths, front_geometry, relative_lengths
from .render import CAYLEY, IDENTITY, INVERT, emit_svg, lift_front
from .surface import ConstantProfile, PowerProfile, build_tree, load_profile, validate_hypotheses
from .sweeps import lemma_report

EXIT_OK, EXIT_MARGIN, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
VERDICT_EXIT = {
    Verdict.NOT_PARABOLIC: EXIT_OK,
    Verdict.HYPOTHESIS_NOT_SATISFIED: EXIT_HYPOTHESIS,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}
DEFAULT_DEPTH = {"homogeneous": 20, "table": 14}
DEFAULT_RENDER_DEPTH = 6
VIEWS = {"raw": IDENTITY, "invert": INVERT, "cayley": CAYLEY}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_profile_args(p):
    g = p.add_argument_group("profile")
    g.add_argument("--profile", help="profile JSON file")
    g.add_argument("--r", type=float, help="exponent of a power profile")
    g.add_argument("--c1", type=float, help="lower constant C1 of a power profile")
    g.add_argument("--c2", type=float, help="upper constant C2 of a power profile")
    g.add_argument("--jitter", type=float, default=0.0, help="seeded per-cuff perturbation in [0, 1)")
    g.add_argument("--constant", type=float, metavar="L", help="constant profile with every cuff of length L")
    g.add_argument("--no-clamp", action="store_true",
                   help="reject power profiles whose window is empty at some level")
    p.add_argument("--depth", type=int, help="truncation depth")


def build_parser():
    parser = _Parser(prog="cantortree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pants", help="geometry and energy of one pair of pants")
    p.add_argument("lengths", nargs=3, type=float, metavar="L")
    p.add_argument("--tol", type=float, default=QUAD_RTOL, help="quadrature relative tolerance")
    p.add_argument("--out")

    p = sub.add_parser("lemmas", help="inequality sweeps")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--out")

    for name, text in (("dirichlet", "Dirichlet report"), ("verdict", "Dirichlet report, exit code by verdict")):
        p = sub.add_parser(name, help=text)
        _add_profile_args(p)
        p.add_argument("--seed", type=int, default=0, help="seed of the jitter")
        p.add_argument("--tol", type=float, default=QUAD_RTOL, help="quadrature relative tolerance")
        p.add_argument("--genus-cap", type=int, default=0, help="genus bound C of a blooming tree")
        p.add_argument("--out")

    p = sub.add_parser("render", help="SVG of the lifted front")
    _add_profile_args(p)
    p.add_argument("--seed", type=int, default=0, help="seed of the jitter")
    p.add_argument("--out", required=True, help="SVG path")
    p.add_argument("--svg-viewport", help="xmin,xmax,ymin,ymax in half-plane coordinates; write --svg-viewport=... when xmin is negative")
    p.add_argument("--view", choices=sorted(VIEWS), default=None,
                   help="normalization: raw root axis on [i, e^oP i], invert (default) or cayley")
    p.add_argument("--both-sides", action="store_true")
    p.add_argument("--width", type=int, default=800)
    return parser


def _profile_from_args(args):
    inline = args.r is not None or args.c1 is not None or args.c2 is not None
    chosen = [args.profile is not None, inline, args.constant is not None]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --profile, --r/--c1/--c2, --constant")
    if args.profile is not None:
        profile, depth = load_profile(args.profile)
    elif inline:
        if None in (args.r, args.c1, args.c2):
            raise UsageError("power profiles need all of --r, --c1, --c2")
        try:
            profile = PowerProfile(args.r, args.c1, args.c2, args.jitter, args.seed,
                                   clamp=not args.no_clamp)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        depth = None
    else:
        profile, depth = ConstantProfile(args.constant), None
    if args.depth is not None:
        depth = args.depth
    if depth is None:
        depth = DEFAULT_DEPTH["homogeneous" if profile.homogeneous else "table"]
    if depth < 1:
        raise UsageError("depth must be at least 1")
    return profile, depth


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)


def cmd_pants(args):
    l1, l2, l3 = args.lengths
    try:
        check_lengths(l1, l2, l3)
    except CantorTreeError as exc:
        raise UsageError(str(exc)) from exc
    g = front_geometry(l1, l2, l3)
    e = pants_dirichlet(l1, l2, l3, rtol=args.tol)
    rel0, rel1 = relative_lengths(l1, l2, l3)
    report = {
        "lengths": [l1, l2, l3],
        "geometry": g.as_dict(),
        "relative_lengths": [rel0, rel1],
        "energy": {
            "numeric": e.numeric,
            "analytic_bound": e.analytic_bound,
            "quad_error": e.quad_error,
            "k_pants": constants.K_PANTS,
            "parts": {name: {"numeric": q.numeric, "analytic_bound": q.analytic_bound,
                             "quad_error": q.quad_error} for name, q in e.parts},
        },
    }
    _emit(_dumps(report), args.out)
    return EXIT_OK


def cmd_lemmas(args):
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    report = lemma_report(args.seed, args.count)
    _emit(_dumps(report), args.out)
    return EXIT_OK if report["pass"] else EXIT_MARGIN


def _infeasible_report(profile, depth, exc):
    hyp = to_jsonable(validate_hypotheses(profile, depth).to_dict())
    return {
        "profile": profile.describe(), "depth": depth, "verdict": Verdict.HYPOTHESIS_NOT_SATISFIED.value,
        "reason": f"infeasible profile: {exc}", "infeasible_level": exc.level,
        "hypotheses": hyp,
    }


def _certificate(args):
    profile, depth = _profile_from_args(args)
    try:
        tree = build_tree(profile, depth, strict=False)
    except InfeasibleProfile as exc:
        return None, _infeasible_report(profile, depth, exc)
    report = dirichlet_certificate(tree, genus_cap=args.genus_cap, rtol=args.tol)
    return report, None


def cmd_dirichlet(args):
    report, fallback = _certificate(args)
    _emit(report.to_json() if report else _dumps(fallback), args.out)
    return EXIT_OK


def cmd_verdict(args):
    report, fallback = _certificate(args)
    _emit(report.to_json() if report else _dumps(fallback), args.out)
    return VERDICT_EXIT[report.verdict] if report else EXIT_HYPOTHESIS


def _viewport(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError("--svg-viewport expects four numbers") from exc
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise UsageError("--svg-viewport expects xmin,xmax,ymin,ymax")
    return tuple(vals)


def cmd_render(args):
    if args.depth is None:
        args.depth = DEFAULT_RENDER_DEPTH
    render_depth = args.depth
    args.depth = render_depth + 1
    profile, depth = _profile_from_args(args)
    viewport = _viewport(args.svg_viewport) if args.svg_viewport else None
    view = args.view or ("cayley" if args.both_sides else "invert")
    tree = build_tree(profile, depth, strict=False)
    arcs = lift_front(tree, render_depth, args.both_sides, VIEWS[view])
    emit_svg(arcs, args.out, viewport=viewport, width=args.width)
    return EXIT_OK


COMMANDS = {"pants": cmd_pants, "lemmas": cmd_lemmas, "dirichlet": cmd_dirichlet,
            "verdict": cmd_verdict, "render": cmd_render}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ProfileFormatError) as exc:
        sys.stderr.write(f"cantortree: error: {exc}\n")
        return EXIT_USAGE
    except CantorTreeError as exc:
        sys.stderr.write(f"cantortree: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
