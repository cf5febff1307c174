"""Fractal Laplace transform in the staircase coordinate.

``L[f](s) = int_0^inf g(u) exp(-s u) du`` for ``f = g(S(x))``: the
classical transform of the profile.  Closed-form inverses are provided for
three rational shapes in ``s``:

    Lemma2   s**(zeta-mu) / (s**zeta + a)
    Lemma3   1 / (s**zeta + a s**mu)**(n+1)
    Lemma4   s**xi / (s**zeta + a s**mu + b)

and transform rules for derivatives, integrals, convolutions and the
non-local Caputo derivative.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields

import numpy as np

from ._numerics import adaptive_quad, fd_derivative
from .errors import ConvergenceError, DomainError
from .local_fcalc import Profile
from .nonlocal_fcalc import OrderPair
from .special import mittag_leffler
from .staircase import TRIADIC, CantorSpec, staircase_eval

__all__ = [
    "forward_transform",
    "caputo_transform",
    "derivative_rule",
    "integral_rule",
    "rl_integral_rule",
    "frequency_derivative",
    "convolution",
    "Lemma2",
    "Lemma3",
    "Lemma4",
    "invert",
    "roundtrip_check",
    "fixture_csv",
    "read_fixtures",
]

SERIES_TOL = 1e-13
SERIES_KMAX = 5000


def _truncation_point(p: Profile, s: float, tol: float) -> float:
    U = max(1.0, -math.log(tol) / s)
    for _ in range(80):
        probe = np.linspace(U, 2.0 * U, 9)
        with np.errstate(over="ignore", invalid="ignore"):
            bound = np.max(np.abs(p(probe)) * np.exp(-s * probe)) * max(U, 1.0 / s)
        if np.isfinite(bound) and bound < tol:
            return U
        U *= 1.5
        if U > 1e5:
            break
    raise DomainError(f"transform integrand does not decay at s={s}; s is below the growth bound")


def forward_transform(p: Profile, s: float, tol: float = 1e-11) -> float:
    """Numerical transform of the profile at real ``s > 0``.

    The half-line is cut at ``U`` where ``exp(-s U) max|g|`` falls below
    ``tol``.  ``[0, 1]`` is integrated after ``u = t**4`` (which absorbs an
    integrable singularity at the origin), ``[1, U]`` directly.
    """
    if not s > 0:
        raise DomainError(f"the transform variable must be positive, got {s}")
    U = _truncation_point(p, s, tol)
    head = min(1.0, U)

    def near(t):
        u = head * t**4
        return p(u) * np.exp(-s * u) * 4.0 * head * t**3

    total = adaptive_quad(near, 0.0, 1.0, tol, 1e-12).value
    if U > head:
        total += adaptive_quad(lambda u: p(u) * np.exp(-s * u), head, U, tol, 1e-12).value
    return total


# --- transform rules -------------------------------------------------------


def caputo_transform(F: float, s: float, order: OrderPair, init) -> float:
    """Transform of the non-local Caputo derivative of order ``order.beta``.

    ``[s**(n a) F - sum_k s**((n-k-1) a) init_k] / s**(n a - beta)`` with
    ``a = order.alpha`` and ``n = order.n``.  ``init[k]`` is the k-th local
    derivative at the origin.  For ``alpha = 1`` this is the classical Caputo
    rule; for ``n = 1`` it reads ``(s**alpha F - init_0) / s**(alpha - beta)``.
    """
    n = order.n
    init = list(init)
    if len(init) != n:
        raise DomainError(f"expected {n} initial values, got {len(init)}")
    a = order.alpha
    num = s ** (n * a) * F - sum(s ** ((n - k - 1) * a) * init[k] for k in range(n))
    return num / s ** (n * a - order.beta)


def derivative_rule(F: float, s: float, init) -> float:
    """Transform of the n-th local derivative: ``s**n F - sum s**(n-1-k) g^(k)(0)``."""
    n = len(init)
    return s**n * F - sum(s ** (n - 1 - k) * init[k] for k in range(n))


def integral_rule(F: float, s: float) -> float:
    """Transform of the local integral from 0: ``F / s``."""
    return F / s


def rl_integral_rule(F: float, s: float, beta: float) -> float:
    """Transform of the non-local integral of order ``beta``: ``F / s**beta``."""
    return F / s**beta


def frequency_derivative(transform, s: float, n: int = 1, h: float = 1e-3) -> float:
    """``(-1)**n d^n/ds^n`` of a transform function: the transform of ``u**n g``."""
    return (-1) ** n * fd_derivative(lambda v: np.vectorize(transform)(v), s, n=n, h=h, levels=2)


def convolution(p: Profile, q: Profile, tol: float = 1e-12) -> Profile:
    """Staircase convolution ``u -> int_0^u g_p(u - t) g_q(t) dt`` as a profile."""

    def one(u):
        if u == 0.0:
            return 0.0
        return adaptive_quad(lambda t: p(u - t) * q(t), 0.0, u, tol, 1e-12).value

    def g(u):
        u = np.asarray(u, dtype=float)
        return np.array([one(v) for v in u.ravel()]).reshape(u.shape)

    return Profile(g, f"({p.description})*({q.description})")


# --- closed-form inverses --------------------------------------------------


def _binomial_series(n: int, a: float, d: float, base: float, u: float) -> tuple[float, float]:
    """``sum_k C(n+k, k) (-a)^k u^(k d) / Gamma(k d + base)`` and its largest term."""
    total = 0.0
    biggest = 0.0
    prev = math.inf
    log_u = math.log(u) if u > 0 else -math.inf
    for k in range(SERIES_KMAX):
        arg = k * d + base
        if k > 0 and (a == 0.0 or (u == 0.0 and d > 0)):
            break
        logc = math.lgamma(n + k + 1) - math.lgamma(k + 1) - math.lgamma(n + 1)
        if arg > 0:
            logmag = logc + (k * math.log(abs(a)) if k else 0.0) + (k * d * log_u if k else 0.0)
            logmag -= math.lgamma(arg)
            if logmag > 700:
                raise ConvergenceError(f"series term overflows at k={k}", estimate=total)
            term = (-1.0 if a > 0 else 1.0) ** k * math.exp(logmag)
        else:
            rg = 0.0 if float(arg).is_integer() else 1.0 / math.gamma(arg)
            term = math.exp(logc) * (-a) ** k * u ** (k * d) * rg
        total += term
        mag = abs(term)
        biggest = max(biggest, mag)
        if k > 0 and arg > 0 and mag <= prev and mag < SERIES_TOL * (1.0 + abs(total)):
            return total, biggest
        prev = mag
    else:
        raise ConvergenceError(f"binomial series did not converge at u={u}", estimate=total)
    return total, biggest


def _map_u(fn, u):
    arr = np.asarray(u, dtype=float)
    out = np.array([fn(float(v)) for v in arr.ravel()]).reshape(arr.shape)
    return out.item() if out.ndim == 0 else out


class _Shape:
    name = ""

    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def profile(self) -> Profile:
        singular = (0.0,) if self.leading_exponent() < 0 else ()
        return Profile(self.inverse_u, f"{self.name}{tuple(self.params().values())}", singular)


@dataclass(frozen=True)
class Lemma2(_Shape):
    """``s**(zeta-mu) / (s**zeta + a)`` with inverse ``u**(mu-1) E_{zeta,mu}(-a u**zeta)``."""

    zeta: float
    mu: float
    a: float
    name = "lemma2"

    def __post_init__(self):
        if not (self.zeta > 0 and self.mu > 0):
            raise DomainError("Lemma2 needs zeta > 0 and mu > 0")

    def valid_at(self, s: float) -> bool:
        return s**self.zeta > abs(self.a)

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        return s ** (self.zeta - self.mu) / (s**self.zeta + self.a)

    def leading_exponent(self) -> float:
        return self.mu - 1.0

    def inverse_u(self, u):
        def one(v):
            z = -self.a * v**self.zeta
            return v ** (self.mu - 1.0) * mittag_leffler(z, self.zeta, self.mu,
                                                        tol=SERIES_TOL, k_max=SERIES_KMAX)

        return _map_u(one, u)


@dataclass(frozen=True)
class Lemma3(_Shape):
    """``1 / (s**zeta + a s**mu)**(n+1)`` inverted by the binomial series."""

    zeta: float
    mu: float
    a: float
    n: int
    name = "lemma3"

    def __post_init__(self):
        if not self.zeta >= self.mu > 0:
            raise DomainError("Lemma3 needs zeta >= mu > 0")
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError("Lemma3 needs a non-negative integer n")

    def valid_at(self, s: float) -> bool:
        return s ** (self.zeta - self.mu) > abs(self.a)

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        return 1.0 / (s**self.zeta + self.a * s**self.mu) ** (self.n + 1)

    def leading_exponent(self) -> float:
        return self.zeta * (self.n + 1) - 1.0

    def inverse_u(self, u):
        n, d = int(self.n), self.zeta - self.mu
        base = (n + 1) * self.zeta

        def one(v):
            total, _ = _binomial_series(n, self.a, d, base, v)
            return v ** (base - 1.0) * total

        return _map_u(one, u)


@dataclass(frozen=True)
class Lemma4(_Shape):
    """``s**xi / (s**zeta + a s**mu + b)`` inverted by a double series."""

    zeta: float
    mu: float
    xi: float
    a: float
    b: float
    name = "lemma4"

    def __post_init__(self):
        if not (self.zeta >= self.mu and self.zeta > self.xi):
            raise DomainError("Lemma4 needs zeta >= mu and zeta > xi")

    def valid_at(self, s: float) -> bool:
        inner = s**self.zeta + self.a * s**self.mu
        return s ** (self.zeta - self.mu) > abs(self.a) and abs(self.b) < abs(inner)

    def evaluate(self, s):
        s = np.asarray(s, dtype=float)
        return s**self.xi / (s**self.zeta + self.a * s**self.mu + self.b)

    def leading_exponent(self) -> float:
        return self.zeta - self.xi - 1.0

    def inverse_u(self, u):
        d = self.zeta - self.mu

        def one(v):
            total = 0.0
            prev = math.inf
            for n in range(SERIES_KMAX):
                if n > 0 and (self.b == 0.0 or v == 0.0):
                    break
                row, big = _binomial_series(n, self.a, d, (n + 1) * self.zeta - self.xi, v)
                scale = (-self.b) ** n * v ** (n * self.zeta)
                total += scale * row
                bound = abs(scale) * big
                if n > 0 and bound <= prev and bound < SERIES_TOL * (1.0 + abs(total)):
                    break
                prev = bound
            else:
                raise ConvergenceError(f"Lemma4 double series did not converge at u={v}",
                                       estimate=total)
            return v ** (self.zeta - self.xi - 1.0) * total

        return _map_u(one, u)


def invert(expr: _Shape, x, spec: CantorSpec = TRIADIC):
    """Closed-form inverse transform of ``expr`` evaluated at ``u = S(x)``."""
    if np.any(np.asarray(x, dtype=float) <= 0.0):
        raise DomainError("the inverse is evaluated at x > 0")
    return expr.inverse_u(staircase_eval(x, spec))


def roundtrip_check(expr: _Shape, s_grid, tol: float = 1e-11) -> float:
    """Largest relative gap between the transform of the inverse and ``expr`` on ``s_grid``."""
    worst = 0.0
    prof = expr.profile()
    for s in s_grid:
        if not expr.valid_at(s):
            raise DomainError(f"s={s} lies outside the validity region of {expr}")
        got = forward_transform(prof, s, tol)
        want = float(expr.evaluate(s))
        worst = max(worst, abs(got - want) / abs(want))
    return worst


# --- fixture vectors -------------------------------------------------------

_SHAPES = {"lemma2": Lemma2, "lemma3": Lemma3, "lemma4": Lemma4}
_FIXTURE_FIELDS = ["shape", "zeta", "mu", "xi", "a", "b", "n", "s", "expected"]


def fixture_csv(exprs, s_grid) -> str:
    """CSV test vectors ``shape,zeta,mu,xi,a,b,n,s,expected`` from the closed forms."""
    buf = io.StringIO()
    buf.write(",".join(_FIXTURE_FIELDS) + "\n")
    for expr in exprs:
        params = expr.params()
        for s in s_grid:
            if not expr.valid_at(s):
                continue
            row = [expr.name] + [
                "" if params.get(k) is None else format(params[k], ".17g") if k != "n"
                else str(params[k])
                for k in _FIXTURE_FIELDS[1:7]
            ]
            row += [format(s, ".17g"), format(float(expr.evaluate(s)), ".17g")]
            buf.write(",".join(row) + "\n")
    return buf.getvalue()


def read_fixtures(text: str):
    """Parse fixture CSV into ``(expr, s, expected)`` triples."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        cls = _SHAPES[rec["shape"]]
        kwargs = {}
        for f in fields(cls):
            raw = rec[f.name]
            kwargs[f.name] = int(raw) if f.name == "n" else float(raw)
        out.append((cls(**kwargs), float(rec["s"]), float(rec["expected"])))
    return out
