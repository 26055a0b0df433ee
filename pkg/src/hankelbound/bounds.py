"""Closed forms for the second Hankel determinant bounds.

Everything here is a polynomial or rational function of ``c`` in [0, 2],
``delta`` in [0, 1] and ``beta = 2 - alpha/2``:

* the functional ``a_2 a_4 - a_3^2`` written in terms of ``c_1, c_2, c_3``;
* the triangle-inequality surrogates ``F(c, delta)`` for both classes;
* the reductions ``G(c) = F(c, 1)`` with their derivatives;
* the published bounds and a corrected convex envelope.

The convex surrogate as published keeps the signed coefficient
``(1 + beta - 2 beta^2)/2`` on ``c^4``. That coefficient is negative for
``beta > 1``, so the published surrogate is not an upper bound of the
modulus there. ``literal=False`` uses its absolute value instead.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .classes import FunctionClass, OrderParam
from .errors import OutOfBox

BOX_TOL = 1e-12


class BoundSource(str, enum.Enum):
    PAPER_THEOREM_1 = "PaperTheorem1"
    PAPER_THEOREM_2 = "PaperTheorem2"
    CORRECTED_CONVEX_ENVELOPE = "CorrectedConvexEnvelope"


@dataclass(frozen=True)
class ClosedFormBound:
    class_kind: FunctionClass
    alpha: float
    value: float
    maximizer_c: float
    source: BoundSource

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("bound must be non-negative")
        if not 0.0 <= self.maximizer_c <= 2.0:
            raise ValueError("maximizer must lie in [0, 2]")

    def to_json(self) -> dict:
        d = asdict(self)
        d["class_kind"] = FunctionClass(self.class_kind).value
        d["source"] = BoundSource(self.source).value
        return d


def starlike_bound(p: OrderParam) -> ClosedFormBound:
    b2 = p.beta ** 2
    value = b2 * (4.0 * (b2 - 1.0) + 3.0) / 3.0
    return ClosedFormBound(FunctionClass.STARLIKE, p.alpha, value, 2.0, BoundSource.PAPER_THEOREM_1)


def critical_point_convex(p: OrderParam) -> float:
    """Positive root of ``G'``: ``c^2 = (1 + beta) / (1 + beta^2)``."""
    b = p.beta
    return math.sqrt((1.0 + b) / (1.0 + b * b))


def convex_bound(p: OrderParam) -> ClosedFormBound:
    b = p.beta
    value = b * b * (17 * b * b + 2 * b + 17) / (144.0 * (1 + b * b))
    return ClosedFormBound(FunctionClass.CONVEX, p.alpha, value, critical_point_convex(p),
                           BoundSource.PAPER_THEOREM_2)


def corrected_convex_envelope(p: OrderParam) -> ClosedFormBound:
    """Maximum over the box of the convex surrogate with ``literal=False``.

    ``G(c) = (beta^2/144)[(beta-2)(beta+1) c^4 + 2(1+beta) c^2 + 16]`` peaks
    at ``c^2 = 1/(2 - beta)`` with value
    ``(beta^2/144)[16 + (1+beta)/(2-beta)]``. The test suite certifies this
    against a dense grid maximization.
    """
    b = p.beta
    value = b * b * (16.0 + (1.0 + b) / (2.0 - b)) / 144.0
    return ClosedFormBound(FunctionClass.CONVEX, p.alpha, value, 1.0 / math.sqrt(2.0 - b),
                           BoundSource.CORRECTED_CONVEX_ENVELOPE)


def paper_bound(cls: FunctionClass, p: OrderParam) -> ClosedFormBound:
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        return starlike_bound(p)
    return convex_bound(p)


def functional_from_c(cls: FunctionClass, p: OrderParam, c1, c2, c3):
    """``a_2 a_4 - a_3^2`` as a polynomial in ``c_1, c_2, c_3`` (before the modulus).

    Broadcasts over array arguments.
    """
    b = p.beta
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        return b * b * (4 * c1 * c3 - 3 * c2 * c2 - b * b * c1 ** 4) / 12.0
    return b * b * (6 * c1 * c3 - 4 * c2 * c2 + b * c1 * c1 * c2 - b * b * c1 ** 4) / 144.0


def _check_box(c, delta=None):
    c = np.asarray(c, dtype=float)
    if np.any(c < -BOX_TOL) or np.any(c > 2 + BOX_TOL):
        raise OutOfBox("c must lie in [0, 2]")
    if delta is not None:
        delta = np.asarray(delta, dtype=float)
        if np.any(delta < -BOX_TOL) or np.any(delta > 1 + BOX_TOL):
            raise OutOfBox("delta must lie in [0, 1]")
    return c, delta


def convex_quartic_coefficient(p: OrderParam, literal: bool = True) -> float:
    """Coefficient of ``c^4`` inside the convex surrogate's braces."""
    b = p.beta
    k = (1.0 + b - 2.0 * b * b) / 2.0
    return k if literal else abs(k)


def f_surrogate(cls: FunctionClass, p: OrderParam, c, delta, literal: bool = True):
    """Triangle-inequality upper surrogate ``F(c, delta)``.

    ``literal=True`` reproduces the published expressions term for term.
    ``literal=False`` takes the modulus of the convex ``c^4`` coefficient;
    for the starlike class both modes coincide since ``4 beta^2 - 1 > 0``.
    """
    c, d = _check_box(c, delta)
    b = p.beta
    s = 4.0 - c * c
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        k4 = 4 * b * b - 1
        if not literal:
            k4 = abs(k4)
        inner = (k4 * c ** 4 + 8 * s * c + 2 * s * c * c * d
                 + (c - 6) * (c - 2) * s * d * d)
        out = b * b / 48.0 * inner
    else:
        inner = (convex_quartic_coefficient(p, literal) * c ** 4 + 3 * c * s
                 + (2 + b) / 2 * c * c * s * d + (c - 2) * (c - 4) * s / 2 * d * d)
        out = b * b / 144.0 * inner
    return out[()] if np.ndim(out) == 0 else out


def g_reduced(cls: FunctionClass, p: OrderParam, c):
    """``G(c) = F(c, 1)`` in the simplified polynomial form of the proofs."""
    c, _ = _check_box(c)
    b = p.beta
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        out = b * b / 48.0 * (4 * (b * b - 1) * c ** 4 + 48)
    else:
        out = b * b / 144.0 * (-(b * b + 1) * c ** 4 + 2 * (b + 1) * c * c + 16)
    return out[()] if np.ndim(out) == 0 else out


def g_reduced_derivative(cls: FunctionClass, p: OrderParam, c, order: int = 1):
    """First or second derivative of :func:`g_reduced` in ``c``."""
    c = np.asarray(c, dtype=float)
    b = p.beta
    w = b * b / 48.0 if FunctionClass(cls) is FunctionClass.STARLIKE else b * b / 144.0
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        k4 = 4 * (b * b - 1)
        coeffs = {1: k4 * 4 * c ** 3, 2: k4 * 12 * c ** 2}
    else:
        coeffs = {1: -4 * (b * b + 1) * c ** 3 + 4 * (b + 1) * c,
                  2: -12 * (b * b + 1) * c ** 2 + 4 * (b + 1)}
    if order not in coeffs:
        raise ValueError("order must be 1 or 2")
    out = w * coeffs[order]
    return out[()] if np.ndim(out) == 0 else out


def g_reduced_corrected(p: OrderParam, c):
    """Convex ``F(c, 1)`` for ``literal=False``, simplified."""
    c, _ = _check_box(c)
    b = p.beta
    out = b * b / 144.0 * ((b - 2) * (b + 1) * c ** 4 + 2 * (1 + b) * c * c + 16)
    return out[()] if np.ndim(out) == 0 else out
