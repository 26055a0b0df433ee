"""Starlike and convex functions of order alpha/2 - 1.

For ``1 <= alpha <= 2`` write ``beta = 2 - alpha/2``. A normalized ``f``
is starlike of order ``alpha/2 - 1`` when ``z f'/f = 1 + beta (P - 1)``
for some Carathéodory function ``P``, and convex of that order when
``z f''/f' = beta (P - 1)``. Equating coefficients gives recursions for
``a_n`` in terms of ``c_k``; they hold for every ``n``, not just
``n <= 4``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .caratheodory import CoefficientSequence, as_coefficients
from .errors import DivisionBySmallLeadingTerm, InsufficientCoefficients, InsufficientOrder
from .series import PowerSeries, check_normalized, differentiate, evaluate

MEMBERSHIP_RADIUS = 0.9
MEMBERSHIP_SAMPLES = 720
TAIL_TOL = 1e-6


@dataclass(frozen=True)
class OrderParam:
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (1.0 <= a <= 2.0) or math.isnan(a):
            raise ValueError("alpha must lie in [1,2]")
        object.__setattr__(self, "alpha", a)

    @property
    def beta(self) -> float:
        return 2.0 - self.alpha / 2.0

    @property
    def order(self) -> float:
        """Order of starlikeness/convexity, ``alpha/2 - 1``."""
        return self.alpha / 2.0 - 1.0


class FunctionClass(str, enum.Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"


def _prepare(c, N: int) -> np.ndarray:
    if N < 2:
        raise ValueError("N must be at least 2")
    c = as_coefficients(c)
    if c.shape[-1] < N - 1:
        raise InsufficientCoefficients(f"need {N - 1} coefficients c_k, got {c.shape[-1]}")
    return c


def starlike_taylor(c, beta: float, N: int) -> np.ndarray:
    """Taylor coefficients ``a_0..a_N`` of the starlike function built from ``c``.

    ``(n - 1) a_n = beta * sum_{k=1}^{n-1} c_k a_{n-k}``. Works on a leading
    batch axis: ``c`` of shape ``(..., M)`` gives ``(..., N + 1)``.
    """
    c = _prepare(c, N)
    a = np.zeros(c.shape[:-1] + (N + 1,), dtype=np.complex128)
    a[..., 1] = 1.0
    for n in range(2, N + 1):
        s = (c[..., : n - 1] * a[..., n - 1:0:-1]).sum(-1)
        a[..., n] = beta * s / (n - 1)
    return a


def convex_taylor(c, beta: float, N: int) -> np.ndarray:
    """Convex analogue of :func:`starlike_taylor`.

    ``n (n - 1) a_n = beta * (c_{n-1} + sum_{m=2}^{n-1} m a_m c_{n-m})``.
    """
    c = _prepare(c, N)
    a = np.zeros(c.shape[:-1] + (N + 1,), dtype=np.complex128)
    a[..., 1] = 1.0
    m = np.arange(N + 1)
    for n in range(2, N + 1):
        # m = 1 term is c_{n-1} since a_1 = 1
        s = (m[1:n] * a[..., 1:n] * c[..., n - 2::-1][..., : n - 1]).sum(-1)
        a[..., n] = beta * s / (n * (n - 1))
    return a


def starlike_coefficients(c: CoefficientSequence, p: OrderParam, N: int) -> PowerSeries:
    return PowerSeries(starlike_taylor(c, p.beta, N))


def convex_coefficients(c: CoefficientSequence, p: OrderParam, N: int) -> PowerSeries:
    return PowerSeries(convex_taylor(c, p.beta, N))


def build_function(cls: FunctionClass, c, p: OrderParam, N: int) -> PowerSeries:
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        return starlike_coefficients(c, p, N)
    return convex_coefficients(c, p, N)


def taylor_batch(cls: FunctionClass, c: np.ndarray, beta: float, N: int) -> np.ndarray:
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        return starlike_taylor(c, beta, N)
    return convex_taylor(c, beta, N)


def alexander(f: PowerSeries) -> PowerSeries:
    """``z f'(z)``: ``a_n -> n a_n``. Maps convex functions to starlike ones."""
    check_normalized(f)
    return PowerSeries(np.arange(f.order + 1) * f.coeffs)


def min_membership_order(radius: float, tol: float = TAIL_TOL) -> int:
    """Smallest ``N`` with ``sum_{n>N} (n+1)^3 radius^n <= tol``.

    Coefficients of ``f``, ``f'`` and ``f''`` in both classes grow at most
    like ``n^3`` for ``beta <= 3/2``, so this is a crude bound on the
    truncation error of every quantity the margin evaluates.
    """
    if not 0.0 < radius < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    n = np.arange(1, 20000)
    terms = (n + 1.0) ** 3 * radius ** n
    tails = terms[::-1].cumsum()[::-1]  # tails[k] = sum_{n >= k+1}
    ok = np.nonzero(tails <= tol)[0]
    if ok.size == 0:
        raise ValueError(f"radius {radius} too close to 1")
    return int(ok[0])


def membership_margin(f: PowerSeries, cls: FunctionClass, p: OrderParam,
                      radius: float = MEMBERSHIP_RADIUS,
                      samples: int = MEMBERSHIP_SAMPLES, eps: float = 1e-12) -> float:
    """Minimum over ``|z| = radius`` of the defining real part minus the order.

    Starlike: ``Re(z f'/f) - (alpha/2 - 1)``; convex:
    ``Re(1 + z f''/f') - (alpha/2 - 1)``. A positive value certifies the
    defining inequality on the sampled circle.
    """
    check_normalized(f)
    need = min_membership_order(radius)
    if f.order < need:
        raise InsufficientOrder(f"membership at radius {radius} needs order >= {need}, got {f.order}")
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    d1 = differentiate(f)
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        num, den = z * evaluate(d1, z), evaluate(f, z)
        offset = 0.0
    else:
        num, den = z * evaluate(differentiate(d1), z), evaluate(d1, z)
        offset = 1.0
    if np.min(np.abs(den)) <= eps:
        raise DivisionBySmallLeadingTerm("function vanishes on the sampling circle")
    return float(np.min((offset + num / den).real) - p.order)
