"""Fractal tautochrone and the fractal Blair viscoelastic element.

Tautochrone: the descent time from height ``y`` is a half-order integral of
the arc-length density ``f``; requiring it to equal ``T`` everywhere gives

    I^(1/2) f = sqrt(2 g) T / sqrt(pi),    f(u) = c u**(-1/2),    c = sqrt(2 g) T / pi

in the staircase coordinate ``u = S(y)``.

Blair element: ``sigma = E chi**beta D^beta eps`` (Riemann-Liouville order
``beta``).  ``beta = 0`` is a fractal Hooke solid and ``beta = alpha`` a
fractal Newton fluid.  For a step strain (the indicator of the Cantor set,
profile constant 1) the stress is ``E chi**beta S(t)**(-beta) / Gamma(1 - beta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .local_fcalc import Profile, constant, power
from .nonlocal_fcalc import OrderPair, rl_derivative, rl_integral_u
from .series import GridSeries
from .special import gamma_f
from .staircase import TRIADIC, CantorSpec, in_cantor, staircase_eval

__all__ = [
    "BlairParams",
    "TautochroneParams",
    "tautochrone_coefficient",
    "tautochrone_profile",
    "tautochrone_solve",
    "descent_time",
    "blair_stress",
    "blair_closed_form",
    "blair_sweep",
    "step_strain",
    "strain_trace",
]


@dataclass(frozen=True)
class TautochroneParams:
    g_f: float = 0.5
    T: float = math.pi

    def __post_init__(self):
        if not (self.g_f > 0 and self.T > 0):
            raise DomainError("g_f and T must be positive")


@dataclass(frozen=True)
class BlairParams:
    E: float = 1.0
    chi: float = 1.0
    beta: float = 0.5

    def __post_init__(self):
        if not (self.E > 0 and self.chi > 0):
            raise DomainError("E and chi must be positive")
        if not 0.0 <= self.beta <= 1.0:
            raise DomainError(f"beta must lie in [0, 1], got {self.beta}")


def tautochrone_coefficient(params: TautochroneParams) -> float:
    """``c = sqrt(2 g) T / pi``: the constant rule ``I^(1/2) u**(-1/2) = sqrt(pi)`` inverted."""
    rhs = math.sqrt(2.0 * params.g_f) * params.T / math.sqrt(math.pi)
    return rhs / gamma_f(0.5)


def tautochrone_profile(params: TautochroneParams) -> Profile:
    return power(-0.5, tautochrone_coefficient(params))


def tautochrone_solve(params: TautochroneParams, y_grid, spec: CantorSpec = TRIADIC) -> GridSeries:
    """Rows ``(y, S(y), f)`` of the fractal cycloid on ``y_grid``."""
    y = np.asarray(y_grid, dtype=float)
    if y.ndim != 1 or y.size == 0:
        raise DomainError("y_grid must be a non-empty one-dimensional grid")
    if np.any(y <= 0.0):
        raise DomainError("the cycloid density is singular at y = 0")
    if np.any(y > spec.length):
        raise DomainError(f"y_grid must lie in (0, {spec.length}]")
    s = staircase_eval(y, spec)
    f = tautochrone_profile(params)(s)
    meta = {"g_f": params.g_f, "T": params.T, "c": tautochrone_coefficient(params),
            "alpha": spec.alpha}
    return GridSeries(y, s, {"value": np.atleast_1d(f)}, meta, xname="y")


def descent_time(params: TautochroneParams, u) -> float | np.ndarray:
    """Descent time from staircase height ``u`` recovered from the density by quadrature."""
    p = tautochrone_profile(params)
    return np.asarray(rl_integral_u(p, 0.5, u)) * math.sqrt(math.pi) / math.sqrt(2.0 * params.g_f)


def step_strain(level: float = 1.0) -> Profile:
    """Profile of ``level`` times the indicator of the Cantor set."""
    return constant(level)


def strain_trace(strain: Profile, t, spec: CantorSpec = TRIADIC):
    """The strain itself: the profile value on the Cantor set and 0 in the gaps."""
    member = np.asarray(in_cantor(t, spec))
    out = np.where(member, np.asarray(strain(staircase_eval(t, spec)), dtype=float), 0.0)
    return out.item() if out.ndim == 0 else out


def blair_stress(params: BlairParams, strain: Profile, t, spec: CantorSpec = TRIADIC):
    """``E chi**beta D^beta eps`` at ``t``; ``beta = 0`` returns ``E eps(t)`` exactly.

    For ``beta > 0`` the memory integral depends on the strain profile only,
    so the stress is defined in the gaps of the set as well.
    """
    if params.beta == 0.0:
        return params.E * strain_trace(strain, t, spec)
    order = OrderPair(spec.alpha, params.beta)
    return params.E * params.chi**params.beta * rl_derivative(strain, order, t, spec)


def blair_closed_form(params: BlairParams, t, spec: CantorSpec = TRIADIC, level: float = 1.0):
    """Stress under a step strain: ``E chi**beta S(t)**(-beta) / Gamma(1 - beta)``."""
    s = np.asarray(staircase_eval(t, spec), dtype=float)
    b = params.beta
    return level * params.E * params.chi**b * s ** (-b) / gamma_f(1.0 - b)


def _beta_label(b: float) -> str:
    return f"beta_{b:g}"


def blair_sweep(params: BlairParams, betas, strain: Profile, grid_n: int,
                spec: CantorSpec = TRIADIC) -> GridSeries:
    """Stress curves on ``t_j = j L / grid_n`` for every ``beta`` in ``betas``.

    ``strain`` holds the strain trace as the profile value on the set and 0
    in the gaps; ``params.beta`` is ignored in favour of ``betas``.
    """
    if grid_n < 16:
        raise DomainError(f"grid_n must be at least 16, got {grid_n}")
    t = np.arange(1, grid_n + 1) * (spec.length / grid_n)
    s = staircase_eval(t, spec)
    cols = {"strain": strain_trace(strain, t, spec)}
    for b in betas:
        p = BlairParams(params.E, params.chi, float(b))
        cols[_beta_label(float(b))] = np.asarray(blair_stress(p, strain, t, spec), dtype=float)
    meta = {"E": params.E, "chi": params.chi, "alpha": spec.alpha,
            "strain": strain.description, "grid_n": grid_n}
    return GridSeries(t, s, cols, meta, xname="t")
