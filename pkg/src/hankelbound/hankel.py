"""Hankel determinants of Taylor coefficients."""

from __future__ import annotations

import numpy as np

from .errors import InsufficientOrder
from .series import PowerSeries


def _det_direct(m: np.ndarray) -> complex:
    q = m.shape[0]
    if q == 1:
        return complex(m[0, 0])
    if q == 2:
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    # cofactor expansion along the first row
    return complex(m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
                   - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
                   + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def hankel_matrix(f: PowerSeries, q: int, n: int) -> np.ndarray:
    if q < 1 or n < 1:
        raise ValueError("q and n must be positive")
    need = n + 2 * q - 2
    if f.order < need:
        raise InsufficientOrder(f"need order >= {need}, got {f.order}")
    i, j = np.indices((q, q))
    return f.coeffs[n + i + j]


def hankel_determinant(f: PowerSeries, q: int, n: int) -> complex:
    """``H_q(n)``, the determinant of ``[a_{n+i+j}]_{0 <= i,j < q}``.

    Closed cofactor formulas for ``q <= 3``, LAPACK LU with partial
    pivoting above that.
    """
    m = hankel_matrix(f, q, n)
    if q <= 3:
        return _det_direct(m)
    return complex(np.linalg.det(m))


def second_hankel(f: PowerSeries) -> complex:
    """``a_2 a_4 - a_3^2``."""
    if f.order < 4:
        raise InsufficientOrder(f"need order >= 4, got {f.order}")
    return hankel_determinant(f, 2, 2)


def fekete_szego(f: PowerSeries, mu: float) -> complex:
    """``a_3 - mu a_2^2``."""
    if f.order < 3:
        raise InsufficientOrder(f"need order >= 3, got {f.order}")
    a = f.coeffs
    return complex(a[3] - mu * a[2] * a[2])


def second_hankel_batch(a: np.ndarray) -> np.ndarray:
    """``a_2 a_4 - a_3^2`` along the last axis of a coefficient array."""
    return a[..., 2] * a[..., 4] - a[..., 3] * a[..., 3]
