"""Truncated complex power series.

A :class:`PowerSeries` stores ``a_0, ..., a_N`` as a read-only complex
array. Binary operations truncate to the shorter operand, so high-order
terms that one side does not know are never trusted.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionBySmallLeadingTerm, NotNormalized

DIVISION_EPS = 1e-12
NORMALIZATION_TOL = 1e-12


class PowerSeries:
    """Truncated Taylor series ``sum_{k<=N} a_k z^k`` with complex coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[complex]):
        arr = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                       dtype=np.complex128).ravel()
        if arr.size == 0:
            raise ValueError("a power series needs at least the constant term")
        if not np.all(np.isfinite(arr)):
            raise ValueError("power series coefficients must be finite")
        arr.setflags(write=False)
        self._coeffs = arr

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def order(self) -> int:
        """Truncation order N (index of the last stored coefficient)."""
        return self._coeffs.size - 1

    def __getitem__(self, k: int) -> complex:
        return complex(self._coeffs[k])

    def __len__(self) -> int:
        return self._coeffs.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._coeffs, other._coeffs))

    def __repr__(self) -> str:
        return f"PowerSeries({self._coeffs.tolist()!r})"

    def allclose(self, other: "PowerSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self._coeffs[:n], other._coeffs[:n], rtol=0.0, atol=atol))

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self._coeffs[: order + 1])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return mul(self, other)

    def __truediv__(self, other: "PowerSeries") -> "PowerSeries":
        return div(self, other)

    def __call__(self, z):
        return evaluate(self, z)

    # JSON helpers: list of [re, im] pairs
    def to_pairs(self) -> list[list[float]]:
        return [[float(v.real), float(v.imag)] for v in self._coeffs]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "PowerSeries":
        return cls(complex(re, im) for re, im in pairs)

    @classmethod
    def monomial_sum(cls, coeffs: dict[int, complex], order: int) -> "PowerSeries":
        arr = np.zeros(order + 1, dtype=np.complex128)
        for k, v in coeffs.items():
            if k <= order:
                arr[k] = v
        return cls(arr)


def koebe(order: int) -> PowerSeries:
    """``z/(1-z)^2`` truncated, a_n = n."""
    return PowerSeries(np.arange(order + 1, dtype=np.complex128))


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    return PowerSeries(np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1])


def div(a: PowerSeries, b: PowerSeries, eps: float = DIVISION_EPS) -> PowerSeries:
    """Quotient ``q`` with ``q * b = a`` up to the common truncation order.

    Computed by forward substitution; raises
    :class:`DivisionBySmallLeadingTerm` when ``|b_0| <= eps``.
    """
    b0 = b.coeffs[0]
    if abs(b0) <= eps:
        raise DivisionBySmallLeadingTerm(f"|b_0| = {abs(b0):.3g} <= {eps:g}")
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    q = np.zeros(n + 1, dtype=np.complex128)
    for k in range(n + 1):
        # sum_{j<k} q_j b_{k-j}
        acc = np.dot(q[:k], bc[k:0:-1]) if k else 0.0
        q[k] = (ac[k] - acc) / b0
    return PowerSeries(q)


def differentiate(a: PowerSeries) -> PowerSeries:
    if a.order == 0:
        return PowerSeries([0.0])
    k = np.arange(1, a.order + 1)
    return PowerSeries(k * a.coeffs[1:])


def shift_down(a: PowerSeries) -> PowerSeries:
    """``a(z)/z`` for a series with ``a_0 = 0`` (the constant term is dropped)."""
    if a.order == 0:
        return PowerSeries([0.0])
    return PowerSeries(a.coeffs[1:])


def check_normalized(f: PowerSeries, tol: float = NORMALIZATION_TOL) -> None:
    if f.order < 1 or abs(f.coeffs[0]) > tol or abs(f.coeffs[1] - 1.0) > tol:
        raise NotNormalized("expected a_0 = 0 and a_1 = 1")


def rotate(f: PowerSeries, theta: float) -> PowerSeries:
    """Series of ``e^{-i theta} f(e^{i theta} z)``: ``a_n -> a_n e^{i(n-1) theta}``."""
    check_normalized(f)
    n = np.arange(f.order + 1)
    return PowerSeries(f.coeffs * np.exp(1j * (n - 1) * theta))


def evaluate(a: PowerSeries, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for coeff in a.coeffs[::-1]:
        acc = acc * z + coeff
    return complex(acc) if acc.ndim == 0 else acc
