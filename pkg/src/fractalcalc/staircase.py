"""Triadic Cantor set and its integral staircase function.

The staircase ``S(x)`` is evaluated exactly from the ternary expansion of
``x``: digits 0 and 2 become binary digits 0 and 1, and the first ternary
digit equal to 1 contributes a final binary 1.  Every double is a dyadic
rational, so the expansion is extracted with integer arithmetic and is exact.

Only the middle-third construction is shipped.  ``construction="identity"``
replaces the staircase by ``S(x) = x`` with ``alpha = 1``; this is the
classical limit used to check that fractal operators collapse to ordinary
fractional calculus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError

LOG3_2 = math.log(2.0) / math.log(3.0)
TERNARY_DIGITS = 64

__all__ = [
    "LOG3_2",
    "CantorSpec",
    "TRIADIC",
    "IDENTITY",
    "staircase_eval",
    "staircase_inverse",
    "in_cantor",
    "cantor_points",
]


@dataclass(frozen=True)
class CantorSpec:
    """Fractal support: construction, gamma-dimension and domain ``[0, length]``.

    ``depth`` is the number of middle-third removals used by membership tests.
    """

    depth: int = 32
    alpha: float = LOG3_2
    length: float = 1.0
    construction: str = "triadic"

    def __post_init__(self):
        if self.depth < 1:
            raise DomainError(f"depth must be >= 1, got {self.depth}")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.length > 0.0:
            raise DomainError(f"domain length must be positive, got {self.length}")
        if self.construction not in ("triadic", "identity"):
            raise DomainError(f"unknown construction {self.construction!r}")
        if self.construction == "identity" and self.alpha != 1.0:
            raise DomainError("the identity staircase requires alpha = 1")

    @property
    def s_max(self) -> float:
        """Value of the staircase at the right end of the domain."""
        if self.construction == "identity":
            return self.length
        return self.length**self.alpha

    def with_alpha(self, alpha: float) -> "CantorSpec":
        return CantorSpec(self.depth, alpha, self.length, self.construction)


TRIADIC = CantorSpec()
IDENTITY = CantorSpec(alpha=1.0, construction="identity")


def _cantor_ratio(num: int, den: int) -> float:
    """Cantor function of ``num/den`` in [0, 1] by exact ternary-digit extraction."""
    if num >= den:
        return 1.0
    bits = 0
    for k in range(1, TERNARY_DIGITS + 1):
        num *= 3
        digit, num = divmod(num, den)
        if digit == 1:
            return math.ldexp((bits << 1) | 1, -k)
        bits = (bits << 1) | (digit >> 1)
        if num == 0:
            return math.ldexp(bits, -k)
    return math.ldexp(bits, -TERNARY_DIGITS)


def _cantor_unit(x: float) -> float:
    return _cantor_ratio(*float(x).as_integer_ratio())


def _check_x(x, spec):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > spec.length):
        raise DomainError(f"x outside the domain [0, {spec.length}]")
    return arr


def staircase_eval(x, spec: CantorSpec = TRIADIC):
    """Integral staircase function ``S(x)`` with base point 0.

    Accepts a scalar or an array; a ``Fraction`` scalar is expanded exactly
    before rounding, so ``staircase_eval(Fraction(1, 3)) == 0.5``.
    """
    if isinstance(x, Fraction):
        if not 0 <= x <= spec.length:
            raise DomainError(f"x outside the domain [0, {spec.length}]")
        if spec.construction == "identity":
            return float(x)
        return spec.s_max * _cantor_ratio(*(x / Fraction(spec.length)).as_integer_ratio())
    arr = _check_x(x, spec)
    if spec.construction == "identity":
        return arr.item() if arr.ndim == 0 else arr.copy()
    if spec.length == 1.0:
        scaled = arr
    else:
        scaled = np.clip(arr / spec.length, 0.0, 1.0)
    out = np.array([_cantor_unit(v) for v in scaled.ravel()]).reshape(arr.shape)
    if spec.length != 1.0:
        out = out * spec.s_max
    return out.item() if arr.ndim == 0 else out


def _inverse_unit(s: float) -> float:
    # left endpoint of the plateau: the last binary 1 becomes the ternary digit 1
    if s <= 0.0:
        return 0.0
    if s >= 1.0:
        return 1.0
    num, den = float(s).as_integer_ratio()
    m = den.bit_length() - 1  # den == 2**m
    x = Fraction(0)
    for k in range(1, m + 1):
        bit = (num >> (m - k)) & 1
        if bit and k == m:
            x += Fraction(1, 3**k)
        elif bit:
            x += Fraction(2, 3**k)
    xf = float(x)
    if Fraction(xf) < x:
        xf = math.nextafter(xf, 2.0)
    return xf


def staircase_inverse(s, spec: CantorSpec = TRIADIC):
    """Left endpoint of ``{x : S(x) = s}``.

    The exact endpoint is rounded up to the next double so that it lands on
    the plateau.  Round trips are exact for dyadic ``s`` with up to about 30
    bits; beyond that the spacing of doubles limits them to about 1e-10.
    """
    arr = np.asarray(s, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > spec.s_max):
        raise DomainError(f"s outside the range [0, {spec.s_max}]")
    if spec.construction == "identity":
        return arr.item() if arr.ndim == 0 else arr.copy()
    scaled = arr / spec.s_max if spec.length != 1.0 else arr
    out = np.array([_inverse_unit(v) for v in scaled.ravel()]).reshape(arr.shape)
    if spec.length != 1.0:
        out = out * spec.length
    return out.item() if arr.ndim == 0 else out


def _member_unit(x: float, depth: int, tol: float) -> bool:
    slack = Fraction(tol)
    pos = Fraction(x)
    for _ in range(depth):
        pos *= 3
        slack *= 3
        if pos <= 1 + slack:
            pos = min(pos, Fraction(1))
        elif pos >= 2 - slack:
            pos = max(pos - 2, Fraction(0))
        else:
            return False
        if slack >= Fraction(1, 3):
            return True
    return True


def in_cantor(x, spec: CantorSpec = TRIADIC, tol: float | None = None):
    """True where ``x`` survives ``spec.depth`` middle-third removals.

    Points within ``tol`` (default four units of roundoff) of a closed
    depth-``depth`` interval count as members, which makes rounded images of
    endpoints such as ``1/3`` and ``8/9`` members.
    """
    arr = _check_x(x, spec)
    if spec.construction == "identity":
        out = np.ones(arr.shape, dtype=bool)
        return bool(out) if arr.ndim == 0 else out
    if tol is None:
        tol = 4.0 * np.finfo(float).eps
    unit = arr / spec.length if spec.length != 1.0 else arr
    unit_tol = tol / spec.length
    out = np.array([_member_unit(v, spec.depth, unit_tol) for v in unit.ravel()], dtype=bool)
    out = out.reshape(arr.shape)
    return bool(out) if arr.ndim == 0 else out


def cantor_points(n: int, rng: np.random.Generator, digits: int = 30,
                  spec: CantorSpec = TRIADIC) -> np.ndarray:
    """``n`` random points of the Cantor set built from random ternary digits 0/2."""
    choice = rng.integers(0, 2, size=(n, digits))
    weights = 2.0 * 3.0 ** -np.arange(1, digits + 1)
    pts = choice @ weights
    return np.clip(pts, 0.0, 1.0) * spec.length
