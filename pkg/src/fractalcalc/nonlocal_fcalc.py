"""Non-local fractal operators acting on staircase-coordinate profiles.

Riemann-Liouville integral and derivative, Caputo derivative and the
Grunwald sum are the classical operators of order ``beta`` applied to the
profile ``g`` and evaluated at ``u = S(x)``.  With this calibration the
power rules

    I^beta u^eta = Gamma(eta+1)/Gamma(eta+beta+1) u^(eta+beta)
    D^beta u^eta = Gamma(eta+1)/Gamma(eta-beta+1) u^(eta-beta)

hold exactly.  An order that is an integer multiple ``k*alpha`` of the
fractal dimension is routed to ``k`` repeated local operators, so that
``beta = alpha`` reproduces the F^alpha derivative and integral.

Kernel singularities are removed analytically before quadrature: on
``tau in [1/2, 1]`` the substitution ``v = (1 - tau)**c`` absorbs the weight
``(1 - tau)**(c - 1)``, and on ``[0, 1/2]`` the grading ``tau = t**4``
absorbs integrable singularities of the profile at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import adaptive_quad, richardson
from .errors import DomainError
from .local_fcalc import Profile, falpha_derivative, falpha_integral
from .special import gamma_f
from .staircase import TRIADIC, CantorSpec, in_cantor, staircase_eval

__all__ = [
    "OrderPair",
    "rl_integral_u",
    "rl_derivative_u",
    "caputo_derivative_u",
    "grunwald_derivative_u",
    "grunwald_weights",
    "rl_integral",
    "rl_derivative",
    "caputo_derivative",
    "grunwald_derivative",
    "scale_check",
]

QUAD_RTOL = 1e-12
QUAD_ATOL = 1e-15
# relative step for differentiating the frozen-rule integral
DIFF_REL_STEP = 0.02
DIFF_LEVELS = 2


@dataclass(frozen=True)
class OrderPair:
    """Fractal dimension ``alpha`` and non-local order ``beta``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.beta < 0.0:
            raise DomainError(f"beta must be non-negative, got {self.beta}")

    @property
    def n(self) -> int:
        """Smallest integer with ``n * alpha >= beta``."""
        k = math.ceil(self.beta / self.alpha - 1e-12)
        return max(k, 1)

    @property
    def local_multiple(self) -> int | None:
        """``k`` when ``beta == k * alpha`` for a positive integer ``k``."""
        if self.beta == 0:
            return None
        k = round(self.beta / self.alpha)
        if k >= 1 and abs(self.beta - k * self.alpha) <= 1e-12 * max(1.0, self.beta):
            return k
        return None

    def in_caputo_window(self) -> bool:
        return (self.n - 1) * self.alpha <= self.beta < self.n * self.alpha


def _kernel_rule(phi, c: float, rtol: float = QUAD_RTOL, atol: float = QUAD_ATOL):
    """Nodes and weights on [0, 1] for ``int (1 - tau)**(c - 1) phi(tau) dtau``."""
    t_hi = 0.5**0.25

    def left(t):
        tau = t**4
        return phi(tau) * 4.0 * t**3 * (1.0 - tau) ** (c - 1.0)

    res_l = adaptive_quad(left, 0.0, t_hi, atol, rtol)
    t, wt = res_l.rule()
    tau_l = t**4
    w_l = wt * 4.0 * t**3 * (1.0 - tau_l) ** (c - 1.0)

    if c < 1.0:
        v_hi = 0.5**c

        def right(v):
            return phi(1.0 - v ** (1.0 / c)) / c

        res_r = adaptive_quad(right, 0.0, v_hi, atol, rtol)
        v, wv = res_r.rule()
        tau_r = 1.0 - v ** (1.0 / c)
        w_r = wv / c
    else:

        def right(tau):
            return phi(tau) * (1.0 - tau) ** (c - 1.0)

        res_r = adaptive_quad(right, 0.5, 1.0, atol, rtol)
        tau_r, wr = res_r.rule()
        w_r = wr * (1.0 - tau_r) ** (c - 1.0)
    return np.concatenate([tau_l, tau_r]), np.concatenate([w_l, w_r])


def _frozen_integral(p: Profile, c: float, u: float):
    """``v -> I^c g(v)`` using a rule adapted at ``v = u`` (smooth in ``v``)."""
    tau, w = _kernel_rule(lambda t: p(u * t), c)
    norm = 1.0 / gamma_f(c)

    def F(v):
        v = np.atleast_1d(np.asarray(v, dtype=float))
        vals = np.array([vi**c * norm * float(w @ p(vi * tau)) for vi in v])
        return vals

    return F


def _each(u, fn):
    arr = np.asarray(u, dtype=float)
    out = np.array([fn(float(v)) for v in arr.ravel()]).reshape(arr.shape)
    return out.item() if out.ndim == 0 else out


def _check_u(u):
    if np.any(np.asarray(u) < 0.0):
        raise DomainError("u must be non-negative")


def rl_integral_u(p: Profile, b: float, u):
    """Riemann-Liouville integral of order ``b > 0`` of the profile at ``u``."""
    if b <= 0:
        raise DomainError(f"integral order must be positive, got {b}")
    _check_u(u)

    def one(v):
        if v == 0.0:
            return 0.0
        tau, w = _kernel_rule(lambda t: p(v * t), b)
        return v**b / gamma_f(b) * float(w @ p(v * tau))

    return _each(u, one)


def rl_derivative_u(p: Profile, b: float, u):
    """Riemann-Liouville derivative of order ``b`` of the profile at ``u > 0``.

    ``D^b g = (d/du)^n I^(n-b) g`` with ``n = ceil(b)``; the integral is frozen
    on one quadrature rule and differentiated by Richardson-extrapolated
    central differences with a step proportional to ``u``.
    """
    if b < 0:
        raise DomainError(f"derivative order must be non-negative, got {b}")
    _check_u(u)
    if b == 0:
        return p(u)
    n = math.ceil(b)
    if b == n:
        return p.derivative(u, n)
    c = n - b

    def one(v):
        if v == 0.0:
            raise DomainError("the Riemann-Liouville derivative is evaluated at u > 0 only")
        F = _frozen_integral(p, c, v)
        h = DIFF_REL_STEP * v
        if n == 1:
            diff = lambda s: float((F(v + s) - F(v - s))[0]) / (2.0 * s)  # noqa: E731
        else:
            diff = lambda s: float((F(v + s) - 2.0 * F(v) + F(v - s))[0]) / (s * s)  # noqa: E731
        return richardson(diff, h, DIFF_LEVELS, 2)

    return _each(u, one)


def caputo_derivative_u(p: Profile, b: float, u):
    """Caputo derivative of order ``b``: ``I^(n-b)`` applied to ``g^(n)``."""
    if b < 0:
        raise DomainError(f"derivative order must be non-negative, got {b}")
    _check_u(u)
    if b == 0:
        return p(u)
    n = math.ceil(b)
    if b == n:
        return p.derivative(u, n)
    c = n - b

    def one(v):
        if v == 0.0:
            return 0.0
        tau, w = _kernel_rule(lambda t: p.derivative(v * t, n), c)
        samples = np.asarray(p.derivative(v * tau, n), dtype=float)
        if not np.any(samples):
            return 0.0
        return v**c / gamma_f(c) * float(w @ samples)

    return _each(u, one)


def grunwald_weights(b: float, n_terms: int) -> np.ndarray:
    """``Gamma(k - b) / (Gamma(-b) Gamma(k + 1))`` for ``k < n_terms`` by recurrence."""
    k = np.arange(1, n_terms)
    factors = (k - 1.0 - b) / k
    return np.concatenate([[1.0], np.cumprod(factors)])


def grunwald_derivative_u(p: Profile, b: float, u, n_terms: int):
    """Grunwald sum ``(u/n)**(-b) sum_{k<n} w_k g(u - k u/n)``."""
    if n_terms < 2:
        raise DomainError(f"n_terms must be at least 2, got {n_terms}")
    if b >= 0 and float(b).is_integer():
        raise DomainError(f"Grunwald order {b} makes Gamma(-b) degenerate")
    _check_u(u)
    w = grunwald_weights(b, n_terms)
    k = np.arange(n_terms)

    def one(v):
        if v == 0.0:
            raise DomainError("the Grunwald sum is evaluated at u > 0 only")
        h = v / n_terms
        return h ** (-b) * float(w @ p(v - k * h))

    return _each(u, one)


# --- fractal wrappers: evaluate at u = S(x) ---------------------------------


def _u_of(x, spec):
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0.0):
        raise DomainError("non-local operators are evaluated at x > 0")
    return staircase_eval(x, spec)


def _local_derivative(p, k, x, spec):
    if k == 1:
        return falpha_derivative(p, x, spec)
    u = np.asarray(staircase_eval(x, spec), dtype=float)
    member = np.asarray(in_cantor(x, spec))
    out = np.where(member, np.asarray(p.derivative(u, k), dtype=float), 0.0)
    return out.item() if out.ndim == 0 else out


def rl_integral(p: Profile, order: OrderPair, x, spec: CantorSpec = TRIADIC):
    """Fractal Riemann-Liouville integral of order ``order.beta`` at ``x``."""
    u = _u_of(x, spec)
    k = order.local_multiple
    if k == 1:
        return _each(x, lambda xi: falpha_integral(p, 0.0, xi, spec))
    if k is not None:
        return rl_integral_u(p, float(k), u)
    return rl_integral_u(p, order.beta, u)


def rl_derivative(p: Profile, order: OrderPair, x, spec: CantorSpec = TRIADIC):
    """Fractal Riemann-Liouville derivative of order ``order.beta`` at ``x``."""
    k = order.local_multiple
    if k is not None:
        return _local_derivative(p, k, x, spec)
    return rl_derivative_u(p, order.beta, _u_of(x, spec))


def caputo_derivative(p: Profile, order: OrderPair, x, spec: CantorSpec = TRIADIC):
    """Fractal Caputo derivative of order ``order.beta`` at ``x``."""
    k = order.local_multiple
    if k is not None:
        return _local_derivative(p, k, x, spec)
    if order.beta >= 2:
        raise DomainError("orders beta >= 2 are not supported")
    return caputo_derivative_u(p, order.beta, _u_of(x, spec))


def grunwald_derivative(p: Profile, order: OrderPair, x, n_terms: int,
                        spec: CantorSpec = TRIADIC):
    """Fractal Grunwald derivative: a finite Grunwald sum at ``u = S(x)``."""
    return grunwald_derivative_u(p, order.beta, _u_of(x, spec), n_terms)


def scale_check(p: Profile, order: OrderPair, lam: float, x: float,
                spec: CantorSpec = TRIADIC) -> tuple[float, float]:
    """Both sides of the non-local scale-change law, computed independently.

    ``lhs`` differentiates ``x -> f(S(lam x))`` (profile ``g(lam**alpha u)``)
    at ``x``; ``rhs`` is ``lam**(beta*alpha)`` times the derivative of ``g``
    at the point ``lam x``.  ``lam`` must be a power ``3**-m``.
    """
    m = -math.log(lam) / math.log(3.0)
    if lam <= 0 or abs(m - round(m)) > 1e-9 or round(m) < 0:
        raise DomainError(f"lambda must be 3**-m for integer m >= 0, got {lam}")
    alpha = spec.alpha
    lhs = rl_derivative(p.dilated(lam**alpha), order, x, spec)
    rhs = lam ** (order.beta * alpha) * rl_derivative(p, order, lam * x, spec)
    return float(lhs), float(rhs)
