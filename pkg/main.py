import argparse
import logging
import sys
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

from config import CPQ_SCAN_MAX_P, EXIT_ERROR, EXIT_OK, LOG_FORMAT, LOG_LEVEL
from src.agents.render_agent import RenderAgent, RenderConfig
from src.agents.scenario_agent import ScenarioAgent
from src.core.hj import cpq_string
from src.core.plumbing import ConfigurationMatch, PlumbingGraph, find_cpq, parse
from src.core.quotients import ck_cl_counts, ck_curve, e4_curve, product_pipeline
from src.core.singularities import normalize
from src.core.smoothing import TFamilySpec, smoothing_report
from src.core.surfaces import (
    FourManifoldInvariants,
    HirzebruchClass,
    double_cover,
    hirzebruch_invariants,
    projective_plane_double_cover,
)
from src.core.surgery import BlowdownPlan, full_blow_down, plan_from_inventory, w4n
from src.utils import payloads, types
from src.utils.string import parse_pair

logger = logging.getLogger(__name__)


def _pair(text: str) -> Tuple[int, int]:
    try:
        return parse_pair(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def cmd_hj(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    if args.action == "expand":
        return payloads.hj_expand_payload(args.x, args.y), types.HJExpandPayload
    return payloads.cpq_payload(args.x, args.y), types.CpqPayload


def cmd_sing(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    if args.action == "classify":
        return payloads.classify_payload(normalize(args.r, args.a, args.b), args.a, args.b), types.ClassifyPayload
    return payloads.resolve_payload(normalize(args.r, 1, args.q)), types.ResolvePayload


def _all_cpq_matches(g: PlumbingGraph) -> List[ConfigurationMatch]:
    """C_{p,q} configurations for every p up to the scan bound whose chain fits in g."""
    matches: List[ConfigurationMatch] = []
    for p in range(2, CPQ_SCAN_MAX_P + 1):
        for q in range(1, p):
            if gcd(p, q) == 1 and len(cpq_string(p, q)) <= len(g.vertices):
                matches.extend(find_cpq(g, p, q))
    return matches


def cmd_plumb(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    with open(args.file, encoding="utf-8") as f:
        graph = parse(f.read())
    logger.info(f"Loaded plumbing graph from {args.file}")
    return payloads.plumb_payload(graph, _all_cpq_matches(graph)), types.PlumbPayload


def cmd_surface(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    if args.action == "double-cover":
        a, b = args.L
        L = HirzebruchClass(e=args.e, a=a, b=b)
        cover = double_cover(hirzebruch_invariants(args.e), L)
        return payloads.surface_payload(f"double cover of Sigma_{args.e} branched in |2({a}C0+{b}f)|", cover), types.SurfacePayload
    if args.action == "p2-cover":
        cover = projective_plane_double_cover(args.degree)
        return payloads.surface_payload(f"double cover of P^2 branched along a curve of degree {args.degree}", cover), types.SurfacePayload
    m = FourManifoldInvariants(chi=args.chi, sigma=args.sigma)
    return payloads.surface_payload("given invariants", m), types.SurfacePayload


def cmd_blowdown(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    m = FourManifoldInvariants(chi=args.chi, sigma=args.sigma)
    plan = BlowdownPlan(configurations=tuple(args.config or ()))
    return payloads.blowdown_payload(m, plan.configurations, full_blow_down(m, plan)), types.BlowdownPayload


def cmd_w4n(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    return payloads.w4n_payload(args.n, w4n(args.n)), types.W4nPayload


def cmd_quotient(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    if args.demo == "e4":
        result = product_pipeline(e4_curve())
    elif args.explicit:
        result = product_pipeline(ck_curve(args.k), ck_curve(args.l))
    else:
        return payloads.ck_cl_payload(ck_cl_counts(args.k, args.l)), types.CkClPayload
    blown_down = full_blow_down(result.invariants, plan_from_inventory(result.inventory))
    return payloads.quotient_demo_payload(result, blown_down), types.QuotientDemoPayload


def cmd_smooth(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    spec = TFamilySpec.of(args.d, args.n, args.a, args.t)
    return payloads.smooth_payload(smoothing_report(spec)), types.SmoothPayload


def cmd_verify(args: argparse.Namespace) -> Tuple[Dict[str, Any], Any]:
    return ScenarioAgent().verify(), types.VerifyPayload


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser; output options are accepted after every sub-command."""
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_mutually_exclusive_group()
    output.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    output.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable output")
    common.add_argument("--log-level", default=LOG_LEVEL, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.set_defaults(pretty=False)

    parser = argparse.ArgumentParser(prog="rbd", description="Rational blow-down and class T calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    hj = sub.add_parser("hj", parents=[common], help="Hirzebruch-Jung continued fractions")
    hj.add_argument("action", choices=["expand", "cpq"])
    hj.add_argument("x", type=int)
    hj.add_argument("y", type=int)
    hj.set_defaults(handler=cmd_hj)

    sing = sub.add_parser("sing", parents=[common], help="cyclic quotient singularities")
    sing_sub = sing.add_subparsers(dest="action", required=True)
    classify = sing_sub.add_parser("classify", parents=[common])
    for name in ("r", "a", "b"):
        classify.add_argument(name, type=int)
    resolve_p = sing_sub.add_parser("resolve", parents=[common])
    for name in ("r", "q"):
        resolve_p.add_argument(name, type=int)
    sing.set_defaults(handler=cmd_sing)

    plumb = sub.add_parser("plumb", parents=[common], help="plumbing graphs")
    plumb.add_argument("action", choices=["check"])
    plumb.add_argument("file")
    plumb.set_defaults(handler=cmd_plumb)

    surface = sub.add_parser("surface", parents=[common], help="Hirzebruch surfaces and double covers")
    surface_sub = surface.add_subparsers(dest="action", required=True)
    cover = surface_sub.add_parser("double-cover", parents=[common])
    cover.add_argument("--e", type=int, required=True)
    cover.add_argument("--L", type=_pair, required=True, help="a,b for L = a C0 + b f")
    p2 = surface_sub.add_parser("p2-cover", parents=[common])
    p2.add_argument("degree", type=int)
    en = surface_sub.add_parser("en", parents=[common])
    en.add_argument("--chi", type=int, required=True)
    en.add_argument("--sigma", type=int, required=True)
    surface.set_defaults(handler=cmd_surface)

    blowdown = sub.add_parser("blowdown", parents=[common], help="rational blow-down of invariants")
    blowdown.add_argument("--chi", type=int, required=True)
    blowdown.add_argument("--sigma", type=int, required=True)
    blowdown.add_argument("--config", type=_pair, action="append", help="p,q of a C_{p,q} to blow down")
    blowdown.set_defaults(handler=cmd_blowdown)

    w4n_p = sub.add_parser("w4n", parents=[common], help="invariants of W_{4,n}")
    w4n_p.add_argument("n", type=int)
    w4n_p.set_defaults(handler=cmd_w4n)

    quotient = sub.add_parser("quotient", parents=[common], help="Z_4 quotients of products of curves")
    quotient.add_argument("action", choices=["demo"])
    demo_sub = quotient.add_subparsers(dest="example", required=True)
    z4 = demo_sub.add_parser(
        "paper-z4", aliases=["z4-e4"], parents=[common], help="Z_4 quotient of C x C resolving to E(4)"
    )
    z4.set_defaults(demo="e4")
    ckcl = demo_sub.add_parser("ck-cl", parents=[common])
    ckcl.set_defaults(demo="ck-cl")
    ckcl.add_argument("k", type=int)
    ckcl.add_argument("l", type=int)
    ckcl.add_argument("--explicit", action="store_true", help="use explicit curves (k, l <= 4)")
    quotient.set_defaults(handler=cmd_quotient)

    smooth = sub.add_parser("smooth", parents=[common], help="Q-Gorenstein smoothing family diagnostics")
    smooth.add_argument("--d", type=int, required=True)
    smooth.add_argument("--n", type=int, required=True)
    smooth.add_argument("--a", type=int, required=True)
    smooth.add_argument("--t", type=_rational, nargs="+", required=True)
    smooth.set_defaults(handler=cmd_smooth)

    verify = sub.add_parser(
        "verify-paper", aliases=["verify"], parents=[common], help="run every verification scenario"
    )
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main application function; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK

    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    renderer = RenderAgent(RenderConfig(pretty=args.pretty))
    try:
        payload, schema = args.handler(args)
        print(renderer.render(payload, schema))
    except OSError as e:
        logger.error(f"File error: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        print(f"error: {type(e).__name__}: {str(e)}", file=sys.stderr)
        return EXIT_ERROR

    if args.handler is cmd_verify:
        return payload["exit_code"]
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
