"""Local F^alpha calculus through the staircase conjugacy ``f(x) = g(S(x))``.

A function supported on the Cantor set enters the engine as its profile
``g`` in the staircase coordinate ``u = S(x)``.  The F^alpha derivative is
then ``g'(S(x))`` on the set (and 0 off it), and the F^alpha integral over
``[a, b]`` is the ordinary integral of ``g`` over ``[S(a), S(b)]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._numerics import adaptive_quad, fd_derivative
from .errors import DomainError, EvaluationError
from .series import GridSeries
from .staircase import TRIADIC, CantorSpec, in_cantor, staircase_eval

__all__ = [
    "Profile",
    "constant",
    "identity",
    "power",
    "exponential",
    "antiderivative",
    "integrate_profile",
    "falpha_derivative",
    "falpha_integral",
    "sample_series",
]

FD_STEP = 1e-6
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class Profile:
    """Staircase-coordinate profile ``g`` of a fractal function.

    ``g`` must accept numpy arrays.  ``singular`` lists the points of
    ``[0, 1]`` where ``g`` may be infinite (only ``0.0`` is treated
    specially by the integrators).  ``derivs`` optionally holds exact
    derivatives ``g', g'', ...``; without them derivatives are differenced.
    """

    g: Callable
    description: str = ""
    singular: tuple = ()
    derivs: tuple = field(default=(), compare=False)

    def __call__(self, u):
        out = np.asarray(self.g(np.asarray(u, dtype=float)), dtype=float)
        if out.shape != np.shape(u):
            out = np.broadcast_to(out, np.shape(u)).copy()
        return out.item() if out.ndim == 0 else out

    @property
    def singular_at_zero(self) -> bool:
        return 0.0 in self.singular

    def derivative(self, u, n: int = 1):
        """n-th derivative of the profile, exact when available."""
        if n == 0:
            return self(u)
        if len(self.derivs) >= n:
            out = np.asarray(self.derivs[n - 1](np.asarray(u, dtype=float)), dtype=float)
            out = np.broadcast_to(out, np.shape(u)).copy()
            return out.item() if out.ndim == 0 else out
        h = 1e-4 if n == 1 else 1e-3
        return fd_derivative(self.g, u, n=n, h=h, levels=1, lower=0.0)

    def __add__(self, other: "Profile") -> "Profile":
        n = min(len(self.derivs), len(other.derivs))
        derivs = tuple(_sum(a, b) for a, b in zip(self.derivs[:n], other.derivs[:n]))
        return Profile(_sum(self.g, other.g), f"({self.description} + {other.description})",
                       tuple(sorted(set(self.singular) | set(other.singular))), derivs)

    def scaled(self, c: float) -> "Profile":
        """The profile ``c * g``."""
        return Profile(_times(self.g, c), f"{c!r}*{self.description}", self.singular,
                       tuple(_times(d, c) for d in self.derivs))

    def dilated(self, lam: float) -> "Profile":
        """The profile ``u -> g(lam * u)``."""
        g = self.g
        derivs = tuple(_dilate(d, lam, k + 1) for k, d in enumerate(self.derivs))
        return Profile(lambda u: g(lam * np.asarray(u)), f"{self.description}({lam!r}u)",
                       self.singular, derivs)


def _sum(f, g):
    return lambda u: np.asarray(f(u), dtype=float) + np.asarray(g(u), dtype=float)


def _times(f, c):
    return lambda u: c * np.asarray(f(u), dtype=float)


def _dilate(d, lam, k):
    return lambda u: lam**k * np.asarray(d(lam * np.asarray(u)), dtype=float)


def constant(c: float = 1.0) -> Profile:
    zero = lambda u: np.zeros(np.shape(u))  # noqa: E731
    return Profile(lambda u: np.full(np.shape(u), float(c)), f"const({c!r})", (), (zero, zero))


def identity() -> Profile:
    return Profile(lambda u: np.asarray(u, dtype=float), "u", (),
                   (lambda u: np.ones(np.shape(u)), lambda u: np.zeros(np.shape(u))))


def power(eta: float, coeff: float = 1.0) -> Profile:
    """``coeff * u**eta`` with exact first and second derivatives."""
    if eta == 0:
        return constant(coeff)

    def g(u):
        with np.errstate(divide="ignore"):
            return coeff * np.asarray(u, dtype=float) ** eta

    def d1(u):
        with np.errstate(divide="ignore"):
            return coeff * eta * np.asarray(u, dtype=float) ** (eta - 1)

    def d2(u):
        with np.errstate(divide="ignore"):
            return coeff * eta * (eta - 1) * np.asarray(u, dtype=float) ** (eta - 2)

    singular = (0.0,) if eta < 0 else ()
    return Profile(g, f"{coeff!r}*u^{eta!r}", singular, (d1, d2))


def exponential(rate: float = -1.0, coeff: float = 1.0) -> Profile:
    """``coeff * exp(rate * u)``."""
    return Profile(
        lambda u: coeff * np.exp(rate * np.asarray(u, dtype=float)),
        f"{coeff!r}*exp({rate!r}u)",
        (),
        (lambda u: coeff * rate * np.exp(rate * np.asarray(u, dtype=float)),
         lambda u: coeff * rate**2 * np.exp(rate * np.asarray(u, dtype=float))),
    )


def integrate_profile(p: Profile, lo: float, hi: float, tol: float = QUAD_TOL,
                      rtol: float = 0.0) -> float:
    """Ordinary integral of the profile over ``[lo, hi]`` in the u coordinate.

    An integrable singularity declared at 0 is removed by the substitution
    ``u = lo + (hi - lo) t**4``.
    """
    if hi == lo:
        return 0.0
    if lo == 0.0 and p.singular_at_zero:
        span = hi - lo

        def f(t):
            return p(lo + span * t**4) * 4.0 * span * t**3

        return adaptive_quad(f, 0.0, 1.0, tol, rtol).value
    return adaptive_quad(p, lo, hi, tol, rtol).value


def antiderivative(p: Profile, tol: float = 1e-12) -> Profile:
    """Profile ``u -> integral of g over [0, u]``; its first derivative is ``g``."""

    def G(u):
        u = np.asarray(u, dtype=float)
        flat = [integrate_profile(p, 0.0, float(v), tol) for v in u.ravel()]
        return np.array(flat).reshape(u.shape)

    return Profile(G, f"int[{p.description}]", (), (p.g,))


def falpha_derivative(p: Profile, x, spec: CantorSpec = TRIADIC):
    """F^alpha derivative of ``f = g(S(x))``: ``g'(S(x))`` on the set, 0 off it.

    Central difference with step 1e-6 in u and one Richardson level;
    one-sided stencils at the ends of ``[0, S(L)]``.
    """
    u = np.asarray(staircase_eval(x, spec), dtype=float)
    member = np.asarray(in_cantor(x, spec))
    out = np.zeros(u.shape)
    if np.any(member):
        try:
            out[member] = fd_derivative(p.g, u[member], n=1, h=FD_STEP, levels=1,
                                        lower=0.0, upper=spec.s_max)
        except EvaluationError as exc:
            raise EvaluationError(f"{p.description}: {exc}") from exc
    return out.item() if out.ndim == 0 else out


def falpha_integral(p: Profile, a: float, b: float, spec: CantorSpec = TRIADIC,
                    tol: float = QUAD_TOL) -> float:
    """F^alpha integral of ``f = g(S(x))`` over ``[a, b]``.

    Equals the Stieltjes integral against the staircase measure, i.e. the
    ordinary integral of ``g`` over ``[S(a), S(b)]``; zero across a gap.
    """
    if not 0.0 <= a <= b <= spec.length:
        raise DomainError(f"need 0 <= a <= b <= {spec.length}, got a={a}, b={b}")
    lo = staircase_eval(a, spec)
    hi = staircase_eval(b, spec)
    if lo > 0.0:
        return adaptive_quad(p, lo, hi, tol).value
    return integrate_profile(p, lo, hi, tol)


def sample_series(p: Profile, n: int, spec: CantorSpec = TRIADIC,
                  membership: bool = False) -> GridSeries:
    """``n`` uniformly spaced rows ``(x, S(x), g(S(x)))`` over the domain.

    Values that are not finite (declared singularities) are left empty and
    flagged in a ``singular`` column.
    """
    if n < 2:
        raise DomainError(f"need at least two samples, got {n}")
    x = np.linspace(0.0, spec.length, n)
    s = staircase_eval(x, spec)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.asarray(p(s), dtype=float)
    cols = {"value": np.where(np.isfinite(v), v, math.nan)}
    if not np.all(np.isfinite(v)):
        cols["singular"] = (~np.isfinite(v)).astype(float)
    if membership:
        cols["in_set"] = np.asarray(in_cantor(x, spec), dtype=float)
    meta = {"profile": p.description, "alpha": spec.alpha, "n": n}
    return GridSeries(x, s, cols, meta)
