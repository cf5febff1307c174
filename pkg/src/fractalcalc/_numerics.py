"""Quadrature and differencing kernels shared by the operator modules.

Adaptive Gauss-Kronrod (7/15) with global bisection of the worst interval.
The final partition can be frozen into a fixed node/weight rule, which lets
callers differentiate a quadrature result with respect to a parameter
without the partition jumping between nearby parameter values.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, EvaluationError

_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])

# 15 abscissae on [-1, 1] and matching Kronrod / Gauss weights
KRONROD_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
_GAUSS_FULL = np.zeros(15)
_GAUSS_FULL[[1, 3, 5]] = _WG[:3]
_GAUSS_FULL[7] = _WG[3]
_GAUSS_FULL[[9, 11, 13]] = _WG[2::-1]
GAUSS_WEIGHTS = _GAUSS_FULL

_EPS = np.finfo(float).eps


def _gk15(f, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid + half * KRONROD_NODES
    y = np.asarray(f(x), dtype=float)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise EvaluationError(f"integrand is not finite at {bad!r}")
    k = half * float(KRONROD_WEIGHTS @ y)
    g = half * float(GAUSS_WEIGHTS @ y)
    err = abs(k - g)
    # roundoff floor: cannot do better than the scale of the integrand
    floor = 50.0 * _EPS * half * float(KRONROD_WEIGHTS @ np.abs(y))
    return k, max(err, floor), floor


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    intervals: tuple

    def rule(self):
        """Frozen nodes and weights of the final partition."""
        a = np.array([iv[0] for iv in self.intervals])
        b = np.array([iv[1] for iv in self.intervals])
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        nodes = (mid[:, None] + half[:, None] * KRONROD_NODES[None, :]).ravel()
        weights = (half[:, None] * KRONROD_WEIGHTS[None, :]).ravel()
        return nodes, weights


def adaptive_quad(f, a: float, b: float, tol: float = 1e-10, rtol: float = 0.0,
                  max_depth: int = 40, max_intervals: int = 5000) -> QuadResult:
    """Integrate the vectorized ``f`` over ``[a, b]`` to ``max(tol, rtol*|I|)``.

    Raises ConvergenceError carrying the achieved estimate when the budget of
    bisections (depth ``max_depth`` per interval) is exhausted.
    """
    if a == b:
        return QuadResult(0.0, 0.0, ())
    if b < a:
        res = adaptive_quad(f, b, a, tol, rtol, max_depth, max_intervals)
        return QuadResult(-res.value, res.error, res.intervals)
    val, err, floor = _gk15(f, a, b)
    heap = [(-err, a, b, 0, val, err, floor)]
    done = []
    total, total_err = val, err
    while heap and total_err > max(tol, rtol * abs(total)):
        _, lo, hi, depth, v, e, fl = heapq.heappop(heap)
        if depth >= max_depth or e <= fl:
            done.append((-e, lo, hi, depth, v, e, fl))
            continue
        mid = 0.5 * (lo + hi)
        v1, e1, f1 = _gk15(f, lo, mid)
        v2, e2, f2 = _gk15(f, mid, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, lo, mid, depth + 1, v1, e1, f1))
        heapq.heappush(heap, (-e2, mid, hi, depth + 1, v2, e2, f2))
        if len(heap) + len(done) > max_intervals:
            raise ConvergenceError(
                f"quadrature on [{a}, {b}] exceeded {max_intervals} intervals", estimate=total
            )
    pieces = heap + done
    roundoff = sum(p[6] for p in pieces)
    if total_err > max(tol, rtol * abs(total), 2.0 * roundoff):
        raise ConvergenceError(
            f"quadrature on [{a}, {b}] stalled at error {total_err:.3e}", estimate=total
        )
    pieces = [(p[1], p[2], p[4], p[5]) for p in pieces]
    pieces.sort()
    value = float(sum(p[2] for p in pieces))
    error = float(sum(p[3] for p in pieces))
    return QuadResult(value, error, tuple((p[0], p[1]) for p in pieces))


def richardson(diff, h: float, levels: int = 1, order: int = 2) -> float:
    """Extrapolate ``diff(h)`` whose error expands in powers ``h**order, h**(2*order)...``."""
    table = [diff(h / 2**i) for i in range(levels + 1)]
    for j in range(1, levels + 1):
        factor = 2.0 ** (order * j)
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
    return table[0]


def _central(g, u, h, n):
    if n == 1:
        return (g(u + h) - g(u - h)) / (2.0 * h)
    if n == 2:
        return (g(u + h) - 2.0 * g(u) + g(u - h)) / (h * h)
    raise ValueError("only first and second derivatives are supported")


def _forward(g, u, h, n):
    if n == 1:
        return (-3.0 * g(u) + 4.0 * g(u + h) - g(u + 2.0 * h)) / (2.0 * h)
    if n == 2:
        return (2.0 * g(u) - 5.0 * g(u + h) + 4.0 * g(u + 2.0 * h) - g(u + 3.0 * h)) / (h * h)
    raise ValueError("only first and second derivatives are supported")


def _backward(g, u, h, n):
    return _forward(lambda v: g(-v), -u, h, n) * (-1.0) ** n


def fd_derivative(g, u, n: int = 1, h: float = 1e-6, levels: int = 1,
                  lower: float | None = None, upper: float | None = None):
    """n-th derivative of the vectorized ``g`` at ``u`` by differences with Richardson.

    Central differences are used where ``[u - 2h, u + 2h]`` stays inside
    ``[lower, upper]``; otherwise a one-sided second-order stencil.
    """
    u = np.asarray(u, dtype=float)
    reach = 3.0 * h
    central = np.ones(u.shape, dtype=bool)
    if lower is not None:
        central &= u - reach >= lower
    if upper is not None:
        central &= u + reach <= upper
    out = np.empty(u.shape)
    near_low = ~central & (u - reach < lower) if lower is not None else np.zeros(u.shape, bool)
    near_high = ~central & ~near_low
    # non-finite samples are reported below, not warned about
    with np.errstate(all="ignore"):
        if np.any(central):
            uc = u[central]
            out[central] = richardson(lambda s: _central(g, uc, s, n), h, levels, 2)
        if np.any(near_low):
            uf = u[near_low]
            out[near_low] = richardson(lambda s: _forward(g, uf, s, n), h, levels, 2)
        if np.any(near_high):
            ub = u[near_high]
            out[near_high] = richardson(lambda s: _backward(g, ub, s, n), h, levels, 2)
    if not np.all(np.isfinite(out)):
        bad = u[~np.isfinite(out)].ravel()[0]
        raise EvaluationError(f"finite difference is not finite near u={bad!r}")
    return out.item() if out.ndim == 0 else out
