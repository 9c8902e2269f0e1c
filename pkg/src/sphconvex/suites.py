"""Property suites over the generator families, as run by ``sphconvex verify``."""
from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np

from .bodies import Body
from .generators import gen_cap, gen_gamma, gen_orthant, gen_random_polytope, gen_reuleaux, north
from .metrics import diameter, is_constant_diameter, is_constant_width, thickness, verify_theorem_1
from .polar import check_lemma_2_2, polar_body
from .sphere import DEFAULT_TOL, ToleranceConfig
from .wulff import check_prop_3_3, check_self_dual, corollary_3_2_report

REULEAUX_WIDTHS = (math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2, 2 * math.pi / 3)
CAP_RADII = (math.pi / 8, math.pi / 5)
DENSE_GRID = 2000
N_RANDOM_BODIES = 50
N_SUPPORT_RANDOM = 20
N_RANDOM_GAMMAS = 20


def constant_width_family(tol: ToleranceConfig = DEFAULT_TOL) -> Iterator[tuple[str, Body, float]]:
    """``(name, body, width)`` for every generator body of known constant width."""
    for tau in REULEAUX_WIDTHS:
        yield f"reuleaux(tau={tau:.6f})", gen_reuleaux(tau, tol), tau
    for r in CAP_RADII:
        yield f"cap(r={r:.6f})", gen_cap(north(3), r, tol), 2 * r
    for d in (3, 4):
        yield f"orthant(dim={d})", gen_orthant(d, tol), math.pi / 2


def random_polytopes(n: int, seed: int,
                     tol: ToleranceConfig = DEFAULT_TOL) -> Iterator[tuple[str, Body]]:
    """Seeded random polytopes on S^2 with 6 to 20 points and spreads in [0.3, 1.3]."""
    rng = np.random.default_rng(seed)
    for i in range(n):
        m = int(rng.integers(6, 21))
        spread = float(rng.uniform(0.3, 1.3))
        s = int(rng.integers(0, 2**31))
        yield f"random(m={m}, spread={spread:.3f}, seed={s})", gen_random_polytope(3, m, spread, s, tol)


def _row(suite: str, case: str, passed: bool, **data) -> dict:
    return {"suite": suite, "case": case, "pass": bool(passed), **data}


def suite_theorem1(seed: int, tol: float, cfg: ToleranceConfig) -> Iterator[dict]:
    bodies = [(name, b) for name, b, _ in constant_width_family(cfg)]
    bodies += list(random_polytopes(N_RANDOM_BODIES, seed, cfg))
    for name, body in bodies:
        rep = verify_theorem_1(body, tol, cfg)
        yield _row("theorem1", name, rep.passed,
                   constant_width=rep.constant_width.is_constant,
                   constant_diameter=rep.constant_diameter.is_constant,
                   tau_width=rep.constant_width.tau, tau_diameter=rep.constant_diameter.tau,
                   notes=rep.notes)


def suite_lemma22(seed: int, tol: float, cfg: ToleranceConfig) -> Iterator[dict]:
    bodies = [(name, b) for name, b, _ in constant_width_family(cfg)]
    bodies += list(random_polytopes(N_SUPPORT_RANDOM, seed, cfg))
    for name, body in bodies:
        rep = check_lemma_2_2(body, seed=seed, tol=cfg)
        yield _row("lemma22", name, rep.passed, max_violation=rep.max_violation)


def suite_lemma23(seed: int, tol: float, cfg: ToleranceConfig) -> Iterator[dict]:
    for name, body, tau in constant_width_family(cfg):
        pol = polar_body(body, cfg)
        th = thickness(pol, cfg).value
        cw = is_constant_width(pol, tol, cfg)
        target = math.pi - tau
        ok = cw.is_constant and abs(cw.tau - target) <= tol and abs(th - target) <= tol
        yield _row("lemma23", name, ok, expected=target, polar_thickness=th,
                   polar_width_tau=cw.tau, polar_width_spread=cw.max_deviation)


def suite_cor24(seed: int, tol: float, cfg: ToleranceConfig) -> Iterator[dict]:
    for name, body, tau in constant_width_family(cfg):
        pol = polar_body(body, cfg)
        dm = diameter(pol, cfg).value
        cd = is_constant_diameter(pol, tol, cfg)
        target = math.pi - tau
        ok = cd.is_constant and abs(cd.tau - target) <= tol and abs(dm - target) <= tol
        yield _row("cor24", name, ok, expected=target, polar_diameter=dm,
                   polar_diameter_deviation=cd.max_deviation)


def gamma_family(seed: int, grid: int = 200):
    yield "constant(1)", gen_gamma("constant", grid=grid)
    yield "cube", gen_gamma("cube")
    rng = np.random.default_rng(seed)
    for _ in range(N_RANDOM_GAMMAS):
        s = int(rng.integers(0, 2**31))
        yield f"perturbed(a=0.2, seed={s})", gen_gamma("perturbed", grid=grid, amplitude=0.2, seed=s)


def suite_prop33(seed: int, tol: float, cfg: ToleranceConfig) -> Iterator[dict]:
    for name, g in gamma_family(seed):
        rep = check_prop_3_3(g, tol, cfg)
        yield _row("prop33", name, rep.passed, max_rel_error=rep.max_rel_error,
                   polar_max_rel_error=rep.polar_max_rel_error)


def suite_cor32(seed: int, tol: float, cfg: ToleranceConfig) -> Iterator[dict]:
    for c in (1.0, 0.5, 2.0):
        rep = corollary_3_2_report(gen_gamma("constant", grid=DENSE_GRID, value=c), cfg=cfg)
        yield _row("cor32", f"constant({c})", rep.hypothesis_met and rep.passed,
                   sums=rep.sums, values=rep.values)
    rep = corollary_3_2_report(gen_gamma("cube"), cfg=cfg)
    yield _row("cor32", "cube", not rep.hypothesis_met, note=rep.note)


def suite_selfdual(seed: int, tol: float, cfg: ToleranceConfig) -> Iterator[dict]:
    cases = [("constant(1)", gen_gamma("constant", grid=DENSE_GRID), True, math.pi / 2),
             ("constant(2)", gen_gamma("constant", grid=DENSE_GRID, value=2.0), False,
              2 * math.atan(2.0)),
             ("cube", gen_gamma("cube"), False, None)]
    for name, g, expected, width in cases:
        rep = check_self_dual(g, tol, cfg)
        ok = rep.consistent and rep.verdict == expected
        if width is not None:
            ok = ok and abs(rep.width["tau"] - width) <= tol
        yield _row("selfdual", name, ok, radial_verdict=rep.radial_verdict,
                   width_verdict=rep.width_verdict, diameter_verdict=rep.diameter_verdict,
                   width=rep.width["tau"], diameter=rep.diameter["tau"], radial_gap=rep.radial_gap)


SUITES: dict[str, Callable[[int, float, ToleranceConfig], Iterator[dict]]] = {
    "theorem1": suite_theorem1,
    "lemma22": suite_lemma22,
    "lemma23": suite_lemma23,
    "cor24": suite_cor24,
    "prop33": suite_prop33,
    "cor32": suite_cor32,
    "selfdual": suite_selfdual,
}


def run_suite(name: str, seed: int = 0, tol: float | None = None,
              cfg: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Run one suite (or ``all``) and summarise; stops at nothing, reports the first failure."""
    tol = cfg.tol_constancy if tol is None else tol
    names = list(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        results.extend(SUITES[n](seed, tol, cfg))
    failed = [r for r in results if not r["pass"]]
    out = {"suite": name, "seed": seed, "tolerance": tol, "cases": len(results),
           "failed": len(failed), "pass": not failed, "results": results}
    if failed:
        out["counterexample"] = failed[0]
    return out
