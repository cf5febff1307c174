"""Quick oracle comparisons for every module, printed as a pass/fail table."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import laplace, local_fcalc, nonlocal_fcalc, ode, oracles, physics
from .errors import FractalCalcError
from .staircase import IDENTITY, TRIADIC, cantor_points, staircase_eval, staircase_inverse


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    seconds: float
    note: str = ""


def _staircase():
    rng = np.random.default_rng(2024)
    x = rng.random(500)
    got = staircase_eval(x)
    want = np.array([oracles.staircase_by_counting(v) for v in x])
    return float(np.max(np.abs(got - want))), 1e-9


def _self_similarity():
    rng = np.random.default_rng(2025)
    worst = 0.0
    for v in rng.random(200):
        q = Fraction(float(v))
        worst = max(worst, abs(staircase_eval(q / 3) - staircase_eval(q) / 2))
    return worst, 4 * np.finfo(float).eps


def _power_rules():
    worst = 0.0
    for eta in (0.5, 2.0):
        p = local_fcalc.power(eta)
        for beta in (0.25, 0.75):
            for u in (0.1, 0.5, 1.0):
                i = nonlocal_fcalc.rl_integral_u(p, beta, u)
                d = nonlocal_fcalc.rl_derivative_u(p, beta, u)
                wi = oracles.power_integral(eta, beta, u)
                wd = oracles.power_derivative(eta, beta, u)
                worst = max(worst, abs(i - wi) / abs(wi), abs(d - wd) / abs(wd))
    return worst, 1e-6


def _grunwald():
    p = local_fcalc.power(2.0)
    ref = nonlocal_fcalc.rl_derivative_u(p, 0.5, 0.5)
    errs = [abs(nonlocal_fcalc.grunwald_derivative_u(p, 0.5, 0.5, n) - ref)
            for n in (2**12, 2**13, 2**14)]
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    ok = errs[-1] < 1e-3 and all(1.8 <= r <= 2.2 for r in ratios)
    return errs[-1], 1e-3, ok, "ratios " + ", ".join(f"{r:.3f}" for r in ratios)


def _scaling():
    worst = 0.0
    x = float(staircase_inverse(0.75))
    for lam in (1 / 3, 1 / 9):
        for beta in (0.3, 0.5):
            lhs, rhs = nonlocal_fcalc.scale_check(local_fcalc.power(1.5), nonlocal_fcalc.OrderPair(
                TRIADIC.alpha, beta), lam, x)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst, 1e-5


def _laplace():
    worst = 0.0
    for zeta in (0.33, 0.25):
        expr = laplace.Lemma2(zeta, TRIADIC.alpha, 1.0)
        worst = max(worst, laplace.roundtrip_check(expr, (2.0, 3.0, 5.0)))
    return worst, 1e-4


def _example_local():
    y = ode.solve_local(ode.LinearFDEProblem(grid_n=64))
    return abs(y.value[-1] - math.exp(-1.0)), 1e-6


def _example_nonlocal():
    prob = ode.LinearFDEProblem("nonlocal-caputo", beta=0.33, grid_n=2**12)
    run = ode.gl_stepper(prob)
    mask = run.s >= 0.1
    exact = ode.nonlocal_solution_u(run.s[mask], 0.33, TRIADIC.alpha)
    return float(np.max(np.abs(run.value[mask] - exact) / np.abs(exact))), 1e-2


def _tautochrone():
    params = physics.TautochroneParams(0.5, math.pi)
    t = physics.descent_time(params, np.linspace(0.05, 1.0, 8))
    return float(np.ptp(t) / np.mean(t)), 1e-3


def _blair():
    t = staircase_inverse(np.linspace(0.05, 1.0, 8))
    worst = 0.0
    for beta in (0.25, 0.5, 0.6):
        params = physics.BlairParams(1.0, 1.0, beta)
        got = physics.blair_stress(params, physics.step_strain(), t)
        want = physics.blair_closed_form(params, t)
        worst = max(worst, float(np.max(np.abs(got - want) / np.abs(want))))
    return worst, 1e-6


def _reductions():
    rng = np.random.default_rng(7)
    x = cantor_points(5, rng)
    x = x[x > 0.05]
    p = local_fcalc.exponential(-1.0)
    order = nonlocal_fcalc.OrderPair(TRIADIC.alpha, TRIADIC.alpha)
    worst = float(np.max(np.abs(nonlocal_fcalc.caputo_derivative(p, order, x)
                                - local_fcalc.falpha_derivative(p, x))))
    half = nonlocal_fcalc.OrderPair(1.0, 0.5)
    for v in (0.25, 0.5, 1.0):
        got = nonlocal_fcalc.rl_derivative(local_fcalc.identity(), half, v, IDENTITY)
        worst = max(worst, abs(got - 2.0 * math.sqrt(v / math.pi)))
    return worst, 1e-6


CHECKS: list[tuple[str, Callable]] = [
    ("staircase vs counting oracle", _staircase),
    ("staircase self-similarity", _self_similarity),
    ("non-local power rules", _power_rules),
    ("Grunwald first-order convergence", _grunwald),
    ("non-local scale change", _scaling),
    ("Mittag-Leffler transform roundtrip", _laplace),
    ("local linear equation", _example_local),
    ("non-local linear equation stepper", _example_nonlocal),
    ("tautochrone descent time", _tautochrone),
    ("Blair step-strain stress", _blair),
    ("local and classical reductions", _reductions),
]


def run_checks() -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            worst, tol, *extra = fn()
            passed = bool(extra[0]) if extra else bool(worst <= tol)
            note = extra[1] if len(extra) > 1 else ""
        except FractalCalcError as exc:
            worst, tol, passed, note = math.inf, math.nan, False, str(exc)
        results.append(CheckResult(name, passed, worst, tol, time.perf_counter() - start, note))
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  status  worst      tolerance"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.name:<{width}}  {status:<6}  {r.worst:<9.2e}  {r.tol:.1e}"
        if r.note:
            line += f"  ({r.note})"
        lines.append(line)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
