"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records one PASS/FAIL line (shown in the "acceptance criteria"
section of the pytest summary) before asserting.
"""

import math
import re
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.special import gamma

from fractalcalc import laplace, local_fcalc, nonlocal_fcalc, ode, oracles, physics
from fractalcalc.cli import FIGURES
from fractalcalc.laplace import Lemma2, Lemma3, Lemma4, forward_transform
from fractalcalc.local_fcalc import Profile, constant, exponential, power
from fractalcalc.nonlocal_fcalc import OrderPair
from fractalcalc.staircase import IDENTITY, TRIADIC, cantor_points, staircase_eval, staircase_inverse

ALPHA = TRIADIC.alpha
FIXTURES = laplace.read_fixtures((Path(__file__).parent / "data" / "transform_fixtures.csv").read_text())


def _rel(got, want):
    got, want = np.asarray(got, dtype=float), np.asarray(want, dtype=float)
    return float(np.max(np.abs(got - want) / np.abs(want)))


def test_criterion_01_staircase(verdict):
    rng = np.random.default_rng(1)
    x = rng.random(10_000)
    want = np.array([oracles.staircase_by_counting(v) for v in x])
    oracle_err = float(np.max(np.abs(staircase_eval(x) - want)))
    eps = np.finfo(float).eps
    sim_err = 0.0
    for v in rng.random(1_000):
        q = Fraction(float(v))
        sim_err = max(sim_err, abs(staircase_eval(q / 3) - staircase_eval(q) / 2))
    ok = oracle_err <= 1e-9 and sim_err <= eps
    verdict(1, "staircase exactness", ok,
            f"oracle gap {oracle_err:.1e} (tol 1e-9), self-similarity gap {sim_err:.1e} (tol eps)")
    assert ok


def test_criterion_02_power_rules(verdict):
    u = np.linspace(0.05, 1.0, 20)
    worst = 0.0
    for eta in (0.5, 1.0, 2.0, 3.25):
        p = power(eta)
        for beta in (0.25, 0.5, 0.75):
            i = nonlocal_fcalc.rl_integral_u(p, beta, u)
            d = nonlocal_fcalc.rl_derivative_u(p, beta, u)
            wi = [oracles.power_integral(eta, beta, v) for v in u]
            wd = [oracles.power_derivative(eta, beta, v) for v in u]
            worst = max(worst, _rel(i, wi), _rel(d, wd))
    ok = worst <= 1e-6
    verdict(2, "power-rule suite", ok, f"worst relative error {worst:.1e} over 240 pairs (tol 1e-6)")
    assert ok


def test_criterion_03_grunwald(verdict):
    worst_err, ratios = 0.0, []
    for eta in (0.5, 1.0, 2.0, 3.25):
        p = power(eta)
        for beta in (0.25, 0.5, 0.75):
            ref = nonlocal_fcalc.rl_derivative_u(p, beta, 1.0)
            errs = [abs(nonlocal_fcalc.grunwald_derivative_u(p, beta, 1.0, 2**k) - ref)
                    for k in (12, 13, 14)]
            worst_err = max(worst_err, errs[-1] / abs(ref))
            if eta != beta:
                ratios += [errs[0] / errs[1], errs[1] / errs[2]]
    ok = worst_err <= 1e-3 and all(1.8 <= r <= 2.2 for r in ratios)
    verdict(3, "Grunwald convergence", ok,
            f"error at n=2^14 {worst_err:.1e} (tol 1e-3), "
            f"doubling ratios {min(ratios):.3f}..{max(ratios):.3f} (window 1.8-2.2)")
    assert ok


def test_criterion_04_scaling(verdict):
    worst = 0.0
    for x in (1.0, float(staircase_inverse(0.75)), 8 / 9):
        for eta in (1.0, 1.5, 2.0):
            for lam in (1 / 3, 1 / 9):
                for beta in (0.3, 0.5):
                    lhs, rhs = nonlocal_fcalc.scale_check(power(eta), OrderPair(ALPHA, beta), lam, x)
                    worst = max(worst, abs(lhs - rhs) / abs(rhs))
    ok = worst <= 1e-5
    verdict(4, "scaling law", ok, f"worst relative gap {worst:.1e} (tol 1e-5)")
    assert ok


def test_criterion_05_transforms(verdict):
    lemma = max(
        laplace.roundtrip_check(Lemma2(1, 1, 1), (2, 3, 5)),
        laplace.roundtrip_check(Lemma2(0.5, ALPHA, 1), (2, 4)),
        laplace.roundtrip_check(Lemma3(1, 0.5, 0.2, 1), (3, 6)),
        laplace.roundtrip_check(Lemma4(1, 0.5, 0.3, 0.2, 0.5), (3, 6)),
    )
    fixtures = max(abs(forward_transform(e.profile(), s, 1e-11) - want) / abs(want)
                   for e, s, want in FIXTURES)

    table = 0.0
    for n in range(5):  # L[S^n] = n!/s^(n+1)
        for s in (1.5, 3.0):
            table = max(table, abs(forward_transform(power(float(n)), s) * s ** (n + 1)
                                   / math.factorial(n) - 1))
    p = exponential(-0.5)
    for s in (1.5, 3.0):  # integral rule
        F = forward_transform(p, s)
        table = max(table, _rel(forward_transform(local_fcalc.antiderivative(p), s),
                                laplace.integral_rule(F, s)))
    q = exponential(-1.0)
    for n in (1, 2):  # frequency differentiation: transform of u^n e^-u
        got = laplace.frequency_derivative(lambda v: forward_transform(q, v), 2.0, n)
        table = max(table, _rel(got, math.factorial(n) / 3.0 ** (n + 1)))
    for m in (0.5, 1.0, 2.0):  # convolution theorem, 3 x 3 grid
        conv = laplace.convolution(power(m), power(1.0))
        for s in (1.5, 3.0, 5.0):
            want = math.gamma(m + 1) / s ** (m + 3)
            table = max(table, _rel(forward_transform(conv, s, 1e-10), want))
    cube = Profile(lambda u: (1 + u) ** 3, "(1+u)^3")
    d1 = Profile(lambda u: 3 * (1 + u) ** 2, "3(1+u)^2")
    d2 = Profile(lambda u: 6 * (1 + u), "6(1+u)")
    for s in (1.5, 2.0, 4.0):  # derivative rule with initial values
        F = forward_transform(cube, s)
        table = max(table, _rel(laplace.derivative_rule(F, s, [1.0]), forward_transform(d1, s)),
                    _rel(laplace.derivative_rule(F, s, [1.0, 3.0]), forward_transform(d2, s)))

    ok = lemma <= 1e-4 and fixtures <= 1e-4 and table <= 1e-5
    verdict(5, "transform roundtrips", ok,
            f"lemma grids {lemma:.1e}, {len(FIXTURES)} fixtures {fixtures:.1e} (tol 1e-4), "
            f"local table {table:.1e} (tol 1e-5)")
    assert ok


def test_criterion_06_local_equation(verdict):
    x = cantor_points(10, np.random.default_rng(6))
    y = exponential(-1.0)
    residual = float(np.max(np.abs(local_fcalc.falpha_derivative(y, x) + y(staircase_eval(x)))))
    run = ode.solve_local(ode.LinearFDEProblem(grid_n=512))
    exact = bool(np.array_equal(run.value, np.exp(-run.s)))
    y1 = float(run.value[-1])
    ok = residual <= 1e-5 and exact and abs(y1 - 0.367879) <= 1e-6
    verdict(6, "local linear equation", ok,
            f"residual {residual:.1e} (tol 1e-5), closed form bitwise {exact}, y(1) = {y1:.7f}")
    assert ok


def test_criterion_07_nonlocal_equation(verdict):
    transform, stepper = 0.0, 0.0
    for beta in (0.33, 0.25):
        run = ode.solve_nonlocal(ode.LinearFDEProblem("nonlocal-caputo", beta=beta, grid_n=512))
        assert np.all(np.isfinite(run.value[1:]))
        prof = Profile(lambda u, b=beta: ode.nonlocal_solution_u(u, b, ALPHA), "solution",
                       singular=(0.0,))
        for s in (2.0, 3.0, 5.0):
            want = s ** (beta - ALPHA) / (1 + s**beta)
            transform = max(transform, abs(forward_transform(prof, s, 1e-11) - want) / want)
        gl = ode.gl_stepper(ode.LinearFDEProblem("nonlocal-caputo", beta=beta, grid_n=2**12))
        mask = (gl.s >= 0.1) & (gl.s <= 1.0)
        exact = ode.nonlocal_solution_u(gl.s[mask], beta, ALPHA)
        stepper = max(stepper, _rel(gl.value[mask], exact))
    ok = transform <= 1e-4 and stepper <= 1e-2
    verdict(7, "non-local linear equation", ok,
            f"transform gap {transform:.1e} (tol 1e-4), stepper gap {stepper:.1e} (tol 1e-2)")
    assert ok


def test_criterion_08_tautochrone(verdict):
    params = physics.TautochroneParams(0.5, math.pi)
    y = np.arange(1, 65) / 64
    curve = physics.tautochrone_solve(params, y)
    t = physics.descent_time(params, curve.s)
    spread = float(np.ptp(t) / np.mean(t))
    ok = spread <= 1e-3
    verdict(8, "tautochrone", ok, f"descent-time spread {spread:.1e} across 64 heights (tol 1e-3)")
    assert ok


def test_criterion_09_blair(verdict):
    t = np.arange(1, 33) / 32
    worst = 0.0
    for beta in (0.25, 0.5, 0.6):
        params = physics.BlairParams(2.0, 1.5, beta)
        got = physics.blair_stress(params, physics.step_strain(), t)
        worst = max(worst, _rel(got, physics.blair_closed_form(params, t)))
    hooke = physics.blair_stress(physics.BlairParams(2.0, 1.5, 0.0), physics.step_strain(), t)
    eps = physics.strain_trace(physics.step_strain(), t)
    exact = bool(np.array_equal(hooke, 2.0 * eps))
    ok = worst <= 1e-6 and exact
    verdict(9, "Blair stress", ok,
            f"pipeline vs closed form {worst:.1e} (tol 1e-6), beta=0 equals E*strain: {exact}")
    assert ok


def test_criterion_10_reductions(verdict):
    x = cantor_points(12, np.random.default_rng(10))
    x = x[x > 0.02]
    same = OrderPair(ALPHA, ALPHA)
    local = 0.0
    for p in (exponential(-1.0), power(2.0), power(1.5)):
        want = local_fcalc.falpha_derivative(p, x)
        for op in (nonlocal_fcalc.rl_derivative, nonlocal_fcalc.caputo_derivative):
            local = max(local, float(np.max(np.abs(op(p, same, x) - want))))

    u = np.array([0.25, 0.5, 1.0])
    classical = 0.0
    for eta in (1.0, 2.0):
        p = power(eta)
        for beta in (0.25, 0.5, 0.75):
            order = OrderPair(1.0, beta)
            d = gamma(eta + 1) / gamma(eta - beta + 1) * u ** (eta - beta)
            i = gamma(eta + 1) / gamma(eta + beta + 1) * u ** (eta + beta)
            classical = max(
                classical,
                _rel(nonlocal_fcalc.rl_integral(p, order, u, IDENTITY), i),
                _rel(nonlocal_fcalc.rl_derivative(p, order, u, IDENTITY), d),
                _rel(nonlocal_fcalc.caputo_derivative(p, order, u, IDENTITY), d),
                _rel(nonlocal_fcalc.grunwald_derivative(p, order, u, 2**20, IDENTITY), d),
            )
    c = constant(1.0)
    for beta in (0.25, 0.5):  # Caputo annihilates constants; RL does not
        order = OrderPair(1.0, beta)
        classical = max(classical,
                        float(np.max(np.abs(nonlocal_fcalc.caputo_derivative(c, order, u, IDENTITY)))),
                        _rel(nonlocal_fcalc.rl_derivative(c, order, u, IDENTITY),
                             u ** (-beta) / gamma(1 - beta)))
    e = exponential(-1.0)
    classical = max(classical,
                    _rel(local_fcalc.falpha_derivative(e, u, IDENTITY), -np.exp(-u)),
                    _rel([local_fcalc.falpha_integral(e, 0.0, v, IDENTITY) for v in u],
                         1 - np.exp(-u)),
                    _rel(forward_transform(power(0.5), 2.0), gamma(1.5) / 2.0**1.5))
    run = ode.solve_nonlocal(ode.LinearFDEProblem("nonlocal-caputo", beta=1.0, grid_n=64), IDENTITY)
    classical = max(classical, _rel(run.value, np.exp(-run.x)))
    ok = local <= 1e-5 and classical <= 1e-6
    verdict(10, "reductions", ok,
            f"beta=alpha vs local derivative {local:.1e} (tol 1e-5), "
            f"identity staircase vs classical {classical:.1e} (tol 1e-6)")
    assert ok


def _figure_commands():
    return [re.split(r"\s{2,}", line.strip())[1].split()
            for line in FIGURES.splitlines() if line.strip().startswith("Figure")]


def _run(args):
    return subprocess.run([sys.executable, "-m", "fractalcalc", *args],
                          capture_output=True, check=False)


def test_criterion_11_cli(verdict):
    commands = _figure_commands()
    commands.append(["ode", "--kind", "nonlocal", "--beta", "0.25", "--n", "512"])
    problems = []
    for args in commands:
        first, second = _run(args), _run(args)
        if first.returncode != 0 or not first.stdout:
            problems.append(f"{' '.join(args)} exited {first.returncode}")
        elif first.stdout != second.stdout:
            problems.append(f"{' '.join(args)} differs between runs")
    check = _run(["selfcheck"])
    if check.returncode != 0:
        problems.append(f"selfcheck exited {check.returncode}")
    ok = not problems
    detail = "; ".join(problems) if problems else (
        f"{len(commands)} figure commands byte-identical across two runs, selfcheck exit 0")
    verdict(11, "CLI determinism", ok, detail)
    assert ok
