"""Brute-force references that share no code with the fast paths.

* ``staircase_by_counting`` walks the nested construction intervals with
  exact rational comparisons and counts how many depth-``d`` intervals lie
  to the left of ``x``.
* ``power_integral`` / ``power_derivative`` are the classical power rules.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .special import gamma_f

__all__ = [
    "staircase_by_counting",
    "power_integral",
    "power_derivative",
    "classical_exp_solution",
]


def staircase_by_counting(x, depth: int = 40) -> float:
    """Measure of the Cantor set left of ``x`` from a depth-``depth`` cover.

    Each of the ``2**depth`` closed intervals carries mass ``2**-depth``; an
    interval that contains ``x`` contributes its mass in proportion to the
    covered length, so the error is below ``2**-depth``.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x outside [0, 1]: {x}")
    lo, width = Fraction(0), Fraction(1)
    count = Fraction(0)
    for level in range(depth):
        third = width / 3
        below = 2 ** (depth - level - 1)  # intervals inside one child
        if x <= lo + third:
            width = third
            continue
        count += below
        if x < lo + 2 * third:
            return float(count / 2**depth)
        lo += 2 * third
        width = third
    count += min((x - lo) / width, Fraction(1))
    return float(count / 2**depth)


def power_integral(eta: float, beta: float, u: float) -> float:
    """``I^beta u**eta = Gamma(eta+1)/Gamma(eta+beta+1) u**(eta+beta)``."""
    return gamma_f(eta + 1.0) / gamma_f(eta + beta + 1.0) * u ** (eta + beta)


def power_derivative(eta: float, beta: float, u: float) -> float:
    """``D^beta u**eta = Gamma(eta+1)/Gamma(eta-beta+1) u**(eta-beta)`` (0 at the poles)."""
    a = eta - beta + 1.0
    if a <= 0 and float(a).is_integer():
        return 0.0
    return gamma_f(eta + 1.0) / gamma_f(a) * u ** (eta - beta)


def classical_exp_solution(rate: float, u: float) -> float:
    return math.exp(-rate * u)
