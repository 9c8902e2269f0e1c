"""Command-line interface: ``sphconvex gen | analyze | polar | wulff | export | verify``.

Exit codes: 0 success, 1 property failure, 2 usage or schema error,
3 geometric precondition failure.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import io
from .bodies import hausdorff_upper
from .errors import DimensionMismatchError, GeometryError
from .generators import gen_cap, gen_gamma, gen_orthant, gen_random_polytope, gen_reuleaux, north
from .metrics import diameter, thickness, verify_theorem_1
from .polar import polar_exact
from .sphere import ToleranceConfig
from .suites import SUITES, run_suite
from .wulff import (
    build_wulff,
    check_prop_3_3,
    check_self_dual,
    corollary_3_2_report,
    dual_gamma,
    spherical_wulff,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GEOMETRY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(kind):
    def conv(text):
        try:
            val = kind(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"not a number: {text}") from exc
        if not val > 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text}")
        return val
    return conv


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=_positive(float), default=None,
                   help="constancy tolerance in radians (default 5 * tol-sample)")
    p.add_argument("--tol-sample", type=_positive(float), default=1e-3)
    p.add_argument("--samples", type=_positive(int), default=2048, help="boundary samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=["json", "csv", "off"], default="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="sphconvex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="write a generated body or gamma field")
    gen.add_argument("family", choices=["cap", "orthant", "reuleaux", "random", "gamma"])
    gen.add_argument("--dim", type=int, default=3)
    gen.add_argument("--tau", type=float, default=math.pi / 3)
    gen.add_argument("--radius", type=float, default=math.pi / 5)
    gen.add_argument("--center", type=float, nargs="+", default=None)
    gen.add_argument("--m", type=int, default=12)
    gen.add_argument("--spread", type=float, default=0.8)
    gen.add_argument("--kind", choices=["constant", "perturbed", "cube"], default="constant")
    gen.add_argument("--grid", type=int, default=200)
    gen.add_argument("--value", type=float, default=1.0)
    gen.add_argument("--amplitude", type=float, default=0.2)

    an = sub.add_parser("analyze", parents=[common], help="diameter, thickness and constancy")
    an.add_argument("body")

    po = sub.add_parser("polar", parents=[common], help="write the polar body")
    po.add_argument("body")
    po.add_argument("--roundtrip", action="store_true",
                    help="report the Hausdorff distance of the double polar on stderr")

    wu = sub.add_parser("wulff", parents=[common], help="Wulff shape operations")
    wu.add_argument("action", choices=["build", "dual", "selfdual", "prop33", "cor32", "lift"])
    wu.add_argument("gamma")
    wu.add_argument("--grid", type=int, default=200, help="evaluation grid size")

    ex = sub.add_parser("export", parents=[common], help="OFF mesh of a body on S^2")
    ex.add_argument("body")
    ex.add_argument("--mesh-samples", type=_positive(int), default=128)

    ve = sub.add_parser("verify", parents=[common], help="run a property suite")
    ve.add_argument("suite", choices=["all", *SUITES])
    return parser


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(args, obj, text: str | None = None) -> None:
    if text is None:
        text = io.report_csv(obj) if args.format == "csv" else io.dumps(obj) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _config(args) -> ToleranceConfig:
    return ToleranceConfig(tol_sample=args.tol_sample, boundary_samples=args.samples, seed=args.seed)


def cmd_gen(args, cfg) -> int:
    try:
        if args.family == "gamma":
            g = gen_gamma(args.kind, dim=args.dim, grid=args.grid, value=args.value,
                          amplitude=args.amplitude, seed=args.seed)
            _emit(args, io.gamma_to_dict(g))
            return EXIT_OK
        if args.family == "cap":
            center = north(args.dim) if args.center is None else np.asarray(args.center)
            body = gen_cap(center, args.radius, cfg)
        elif args.family == "orthant":
            body = gen_orthant(args.dim, cfg)
        elif args.family == "reuleaux":
            body = gen_reuleaux(args.tau, cfg)
        else:
            body = gen_random_polytope(args.dim, args.m, args.spread, args.seed, cfg)
    except GeometryError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, io.body_to_dict(body))
    return EXIT_OK


def cmd_analyze(args, cfg) -> int:
    body = io.load_body(_read(args.body), cfg)
    d = diameter(body, cfg)
    th = thickness(body, cfg)
    rep = verify_theorem_1(body, args.tol, cfg)
    _emit(args, {
        "body": body.summary(),
        "diameter": d.value,
        "thickness": th.value,
        "thickness_sampled": th.cross_check,
        "constant_width": rep.constant_width,
        "constant_diameter": rep.constant_diameter,
        "theorem1_pass": rep.passed,
        "witnesses": {"diameter": d.witness_pair, "thickness": th.witness_pair},
    })
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_polar(args, cfg) -> int:
    body = io.load_body(_read(args.body), cfg)
    pol = polar_exact(body, cfg)
    _emit(args, io.body_to_dict(pol))
    if args.roundtrip:
        back = polar_exact(pol, cfg)
        gap = hausdorff_upper(body, back, cfg.boundary_samples, cfg.seed, cfg)
        sys.stderr.write(io.dumps({"double_polar_hausdorff": gap}) + "\n")
    return EXIT_OK


def cmd_wulff(args, cfg) -> int:
    g = io.load_gamma(_read(args.gamma))
    w = build_wulff(g)
    if args.action == "build":
        _emit(args, io.wulff_to_dict(w))
        return EXIT_OK
    if args.action == "dual":
        _emit(args, io.gamma_to_dict(dual_gamma(w, g.directions)))
        return EXIT_OK
    if args.action == "lift":
        _emit(args, io.body_to_dict(spherical_wulff(w, cfg).polytope))
        return EXIT_OK
    if args.action == "prop33":
        rep = check_prop_3_3(g, args.tol, cfg, grid=args.grid)
        _emit(args, rep)
        return EXIT_OK if rep.passed else EXIT_FAIL
    if args.action == "selfdual":
        rep = check_self_dual(g, args.tol, cfg, grid=args.grid)
        _emit(args, rep)
        return EXIT_OK if rep.consistent and rep.verdict else EXIT_FAIL
    rep = corollary_3_2_report(g, 1e-2 if args.tol is None else args.tol, cfg)
    _emit(args, rep)
    if not rep.hypothesis_met:
        return EXIT_GEOMETRY
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_export(args, cfg) -> int:
    if args.format != "off":
        raise UsageError("export supports --format off only")
    body = io.load_body(_read(args.body), cfg)
    if body.dim != 3:
        raise UsageError("OFF export needs a body on S^2 (dim 3)")
    verts, faces = io.body_mesh(body, args.mesh_samples, cfg)
    _emit(args, None, io.to_off(verts, faces))
    return EXIT_OK


def cmd_verify(args, cfg) -> int:
    out = run_suite(args.suite, args.seed, args.tol, cfg)
    _emit(args, out)
    return EXIT_OK if out["pass"] else EXIT_FAIL


COMMANDS = {"gen": cmd_gen, "analyze": cmd_analyze, "polar": cmd_polar, "wulff": cmd_wulff,
            "export": cmd_export, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, io.SchemaError, DimensionMismatchError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except GeometryError as exc:
        sys.stderr.write(f"geometric precondition failed: {exc}\n")
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
