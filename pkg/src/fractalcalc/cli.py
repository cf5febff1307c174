"""Command-line front end: figure data as CSV or JSON, plus ``selfcheck``.

Exit status is 0 on success, 1 on a usage error and 2 on a numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import laplace, local_fcalc, nonlocal_fcalc, ode, physics, selfcheck
from .errors import DomainError, FractalCalcError
from .series import GridSeries
from .staircase import IDENTITY, LOG3_2, CantorSpec, in_cantor, staircase_eval

FIGURES = """\
figure data:
  Figure 2   staircase --n 512
  Figure 3   ode --kind local --n 512
  Figure 4   ode --kind nonlocal --beta 0.33 --n 512   (panel a; --beta 0.25 for panel b)
  Figure 5   blair --betas 0 --n 512                   (strain column)
  Figure 6   blair --beta 0.5 --n 512                  (stress column beta_0.5)
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    alpha: float = LOG3_2
    beta: float | None = None
    grid_n: int = 512
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.grid_n < 2:
            raise UsageError(f"--n must be at least 2, got {self.grid_n}")
        if not 0.0 < self.alpha <= 1.0:
            raise UsageError(f"--alpha must lie in (0, 1], got {self.alpha}")


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _betas(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad beta list {text!r}") from exc


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--alpha", type=float, default=LOG3_2, help="gamma-dimension (default ln2/ln3)")
    g.add_argument("--beta", type=float, default=None, help="non-local order")
    g.add_argument("--n", type=int, default=512, dest="grid_n", help="grid size (default 512)")
    g.add_argument("--depth", type=int, default=32, help="membership depth (default 32)")
    g.add_argument("--identity", action="store_true",
                   help="use the identity staircase S(x) = x (requires --alpha 1)")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--out", default=None, help="output path (default standard output)")
    return p


def _profile_options(p):
    p.add_argument("--profile", choices=("power", "exp", "const"), default="power")
    p.add_argument("--eta", type=float, default=1.0, help="power exponent or exp rate")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="fractalcalc", description="Local and non-local calculus on the "
                     "middle-third Cantor set.", epilog=FIGURES,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                              epilog=FIGURES, formatter_class=argparse.RawDescriptionHelpFormatter)

    add("staircase", "staircase function and set membership on a uniform grid")

    p = add("deriv", "F^alpha derivative, or a non-local derivative when --beta is given")
    _profile_options(p)
    p.add_argument("--kind", choices=("rl", "caputo", "grunwald"), default="rl")
    p.add_argument("--terms", type=int, default=4096, help="Grunwald terms")

    p = add("integ", "F^alpha integral from 0, or the non-local integral when --beta is given")
    _profile_options(p)

    p = add("laplace", "closed-form inverse transform of a rational shape in s")
    p.add_argument("--shape", choices=("lemma2", "lemma3", "lemma4"), default="lemma2")
    p.add_argument("--zeta", type=float, default=None, help="defaults to --beta or 0.5")
    p.add_argument("--mu", type=float, default=None, help="defaults to --alpha")
    p.add_argument("--xi", type=float, default=0.0)
    p.add_argument("--rate", type=float, default=1.0, help="coefficient a")
    p.add_argument("--b", type=float, default=0.0, help="coefficient b (lemma4)")
    p.add_argument("--order", type=int, default=0, help="power n (lemma3)")

    p = add("ode", "linear local or non-local equation")
    p.add_argument("--kind", choices=("local", "nonlocal", "gl", "compare"), default="local")
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--init", type=float, default=1.0)

    p = add("tautochrone", "fractal cycloid density on y_j = j/n")
    p.add_argument("--gf", type=_positive, default=0.5)
    p.add_argument("--T", type=_positive, default=math.pi)

    p = add("blair", "Blair stress under a step strain")
    p.add_argument("--E", type=_positive, default=1.0)
    p.add_argument("--chi", type=_positive, default=1.0)
    p.add_argument("--betas", type=_betas, default=None, help="comma list, overrides --beta")

    sub.add_parser("selfcheck", help="run the oracle checks and print a pass/fail table")
    return parser


def _spec(args) -> CantorSpec:
    if getattr(args, "identity", False):
        if args.alpha != 1.0:
            raise UsageError("--identity requires --alpha 1")
        return IDENTITY
    return CantorSpec(depth=args.depth, alpha=args.alpha)


def _profile(args) -> local_fcalc.Profile:
    if args.profile == "power":
        return local_fcalc.power(args.eta)
    if args.profile == "exp":
        return local_fcalc.exponential(args.eta)
    return local_fcalc.constant(args.eta)


def _positive_grid(n, spec):
    return np.arange(1, n + 1) * (spec.length / n)


def _cmd_staircase(args, spec):
    x = np.linspace(0.0, spec.length, args.grid_n)
    s = staircase_eval(x, spec)
    cols = {"value": s, "in_set": np.asarray(in_cantor(x, spec), dtype=float)}
    return GridSeries(x, s, cols, {"alpha": spec.alpha, "depth": spec.depth})


def _cmd_deriv(args, spec):
    p = _profile(args)
    if args.beta is None:
        x = np.linspace(0.0, spec.length, args.grid_n)
        v = local_fcalc.falpha_derivative(p, x, spec)
        meta = {"operator": "F^alpha derivative"}
    else:
        x = _positive_grid(args.grid_n, spec)
        order = nonlocal_fcalc.OrderPair(spec.alpha, args.beta)
        if args.kind == "rl":
            v = nonlocal_fcalc.rl_derivative(p, order, x, spec)
        elif args.kind == "caputo":
            v = nonlocal_fcalc.caputo_derivative(p, order, x, spec)
        else:
            v = nonlocal_fcalc.grunwald_derivative(p, order, x, args.terms, spec)
        meta = {"operator": f"{args.kind} derivative", "beta": args.beta}
    meta.update(profile=p.description, alpha=spec.alpha)
    return GridSeries(x, staircase_eval(x, spec), {"value": v}, meta)


def _cmd_integ(args, spec):
    p = _profile(args)
    if args.beta is None:
        x = np.linspace(0.0, spec.length, args.grid_n)
        v = np.array([local_fcalc.falpha_integral(p, 0.0, xi, spec) for xi in x])
        meta = {"operator": "F^alpha integral"}
    else:
        x = _positive_grid(args.grid_n, spec)
        order = nonlocal_fcalc.OrderPair(spec.alpha, args.beta)
        v = nonlocal_fcalc.rl_integral(p, order, x, spec)
        meta = {"operator": "rl integral", "beta": args.beta}
    meta.update(profile=p.description, alpha=spec.alpha)
    return GridSeries(x, staircase_eval(x, spec), {"value": v}, meta)


def _cmd_laplace(args, spec):
    zeta = args.zeta if args.zeta is not None else (args.beta if args.beta is not None else 0.5)
    mu = args.mu if args.mu is not None else spec.alpha
    if args.shape == "lemma2":
        expr = laplace.Lemma2(zeta, mu, args.rate)
    elif args.shape == "lemma3":
        expr = laplace.Lemma3(zeta, mu, args.rate, args.order)
    else:
        expr = laplace.Lemma4(zeta, mu, args.xi, args.rate, args.b)
    x = _positive_grid(args.grid_n, spec)
    v = laplace.invert(expr, x, spec)
    meta = {"shape": expr.name, **expr.params(), "alpha": spec.alpha}
    return GridSeries(x, staircase_eval(x, spec), {"value": v}, meta)


def _cmd_ode(args, spec):
    if args.kind == "local":
        return ode.solve_local(ode.LinearFDEProblem("local", args.rate, None, args.init,
                                                    args.grid_n), spec)
    if args.beta is None:
        raise UsageError(f"ode --kind {args.kind} needs --beta")
    prob = ode.LinearFDEProblem("nonlocal-caputo", args.rate, args.beta, args.init, args.grid_n)
    if args.kind == "nonlocal":
        return ode.solve_nonlocal(prob, spec)
    if args.kind == "gl":
        return ode.gl_stepper(prob, spec)
    local = ode.solve_local(ode.LinearFDEProblem("local", args.rate, None, args.init,
                                                 args.grid_n), spec)
    return ode.compare_runs(local, ode.solve_nonlocal(prob, spec))


def _cmd_tautochrone(args, spec):
    params = physics.TautochroneParams(args.gf, args.T)
    return physics.tautochrone_solve(params, _positive_grid(args.grid_n, spec), spec)


def _cmd_blair(args, spec):
    betas = args.betas if args.betas is not None else [args.beta if args.beta is not None else 0.5]
    for b in betas:
        if not 0.0 <= b <= spec.alpha:
            raise DomainError(f"memory index must lie in [0, alpha], got {b}")
    if args.grid_n < 16:
        raise UsageError("blair needs --n 16 or more")
    params = physics.BlairParams(args.E, args.chi, betas[0])
    return physics.blair_sweep(params, betas, physics.step_strain(), args.grid_n, spec)


COMMANDS = {
    "staircase": _cmd_staircase,
    "deriv": _cmd_deriv,
    "integ": _cmd_integ,
    "laplace": _cmd_laplace,
    "ode": _cmd_ode,
    "tautochrone": _cmd_tautochrone,
    "blair": _cmd_blair,
}


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(config: RunConfig, args: argparse.Namespace) -> int:
    """Execute one parsed command; returns the exit status."""
    if config.command == "selfcheck":
        results = selfcheck.run_checks()
        _emit(selfcheck.format_table(results), None)
        return 0 if all(r.passed for r in results) else 2
    series = COMMANDS[config.command](args, _spec(args))
    text = series.to_csv() if config.format == "csv" else series.to_json()
    _emit(text, config.output)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selfcheck":
            config = RunConfig("selfcheck")
        else:
            config = RunConfig(args.command, args.alpha, args.beta, args.grid_n, args.out,
                               args.format)
        return run(config, args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fractalcalc: error: {exc}", file=sys.stderr)
        return 1
    except FractalCalcError as exc:
        print(f"fractalcalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
