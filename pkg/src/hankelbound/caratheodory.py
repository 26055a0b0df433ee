"""Carathéodory-class coefficient data.

Two independent generators for the coefficients ``c_n`` of a function
``P(z) = 1 + c_1 z + c_2 z^2 + ...`` with positive real part on the disc:

* atomic Herglotz measures, ``c_n = 2 sum_j w_j omega_j^n``;
* the three-parameter form ``(c1, x, z)`` that expresses ``c_2, c_3`` in
  terms of ``c_1`` and two points of the closed disc.

:func:`toeplitz_admissible` is a third, independent check: a finite
prefix extends to a Carathéodory function iff its Hermitian Toeplitz
matrix is positive semidefinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegenerateC1,
    DegenerateX,
    InvalidMeasure,
    NotRepresentable,
)

MEASURE_TOL = 1e-12
TRIPLE_TOL = 1e-12
COEFF_CAP_TOL = 1e-9
MINOR_TOL = 1e-9
REPRESENTABLE_TOL = 1e-9
DEGENERACY_TOL = 1e-9
DEFAULT_ATOMS = 3


@dataclass(frozen=True)
class HerglotzMeasure:
    """Finite probability measure on the unit circle.

    ``weights`` are positive and sum to one; ``points`` are unimodular.
    """

    weights: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        p = np.asarray(self.points, dtype=np.complex128).ravel()
        if w.size == 0:
            raise InvalidMeasure("a measure needs at least one atom")
        if w.size != p.size:
            raise InvalidMeasure("weights and points differ in length")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise InvalidMeasure("weights must be positive and finite")
        if abs(w.sum() - 1.0) > MEASURE_TOL:
            raise InvalidMeasure(f"weights sum to {w.sum()!r}, not 1")
        if np.any(np.abs(np.abs(p) - 1.0) > MEASURE_TOL):
            raise InvalidMeasure("atoms must lie on the unit circle")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", p)

    @classmethod
    def from_angles(cls, weights: Sequence[float], angles: Sequence[float]) -> "HerglotzMeasure":
        return cls(np.asarray(weights, dtype=float), np.exp(1j * np.asarray(angles, dtype=float)))

    @property
    def angles(self) -> np.ndarray:
        return np.angle(self.points)

    def rotated(self, theta: float) -> "HerglotzMeasure":
        return HerglotzMeasure(self.weights, self.points * np.exp(1j * theta))

    def to_json(self) -> dict:
        return {"atoms": [{"weight": float(w), "angle": float(a)}
                          for w, a in zip(self.weights, self.angles)]}

    @classmethod
    def from_json(cls, doc: dict) -> "HerglotzMeasure":
        atoms = doc["atoms"]
        return cls.from_angles([a["weight"] for a in atoms], [a["angle"] for a in atoms])

    def evaluate(self, z):
        """``P(z) = sum_j w_j (1 + omega_j z) / (1 - omega_j z)``."""
        z = np.asarray(z, dtype=np.complex128)[..., None]
        vals = (self.weights * (1 + self.points * z) / (1 - self.points * z)).sum(-1)
        return complex(vals) if vals.ndim == 0 else vals


@dataclass(frozen=True)
class SchwarzTriple:
    """``c1`` in [0, 2] together with ``x``, ``z`` in the closed unit disc."""

    c1: float
    x: complex
    z: complex

    def __post_init__(self):
        c1 = float(self.c1)
        if not (-TRIPLE_TOL <= c1 <= 2 + TRIPLE_TOL):
            raise ValueError(f"c1 = {c1} outside [0, 2]")
        if abs(self.x) > 1 + TRIPLE_TOL:
            raise ValueError(f"|x| = {abs(self.x)} exceeds 1")
        if abs(self.z) > 1 + TRIPLE_TOL:
            raise ValueError(f"|z| = {abs(self.z)} exceeds 1")
        object.__setattr__(self, "c1", min(max(c1, 0.0), 2.0))
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "z", complex(self.z))

    @property
    def delta(self) -> float:
        return abs(self.x)

    def to_json(self) -> dict:
        return {"c1": self.c1, "x": [self.x.real, self.x.imag], "z": [self.z.real, self.z.imag]}


@dataclass(frozen=True)
class CoefficientSequence:
    """``c_1 .. c_N``; ``c_0 = 2`` is implicit.

    With ``caratheodory=True`` the sequence claims to come from a member of
    the class and must respect ``|c_n| <= 2``.
    """

    values: np.ndarray
    caratheodory: bool = field(default=False, compare=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128).ravel()
        if not np.all(np.isfinite(v)):
            raise ValueError("coefficients must be finite")
        if self.caratheodory and np.any(np.abs(v) > 2 + COEFF_CAP_TOL):
            raise ValueError("|c_n| > 2 is impossible for a Caratheodory function")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, n: int) -> complex:
        """1-based access, ``seq[1] == c_1``."""
        if n == 0:
            return 2.0 + 0j
        return complex(self.values[n - 1])


def as_coefficients(c) -> np.ndarray:
    """Return the raw ``c_1..c_N`` array of a sequence or array-like."""
    if isinstance(c, CoefficientSequence):
        return c.values
    return np.asarray(c, dtype=np.complex128)


def herglotz_coefficients(m: HerglotzMeasure, N: int) -> CoefficientSequence:
    if N < 1:
        raise ValueError("N must be at least 1")
    n = np.arange(1, N + 1)
    c = 2.0 * (m.weights[None, :] * m.points[None, :] ** n[:, None]).sum(axis=1)
    return CoefficientSequence(c, caratheodory=True)


def herglotz_coefficients_batch(weights: np.ndarray, points: np.ndarray, N: int) -> np.ndarray:
    """Vectorised :func:`herglotz_coefficients` over a leading sample axis.

    ``weights`` and ``points`` have shape ``(S, k)``; the result has shape
    ``(S, N)``.
    """
    out = np.empty(weights.shape[:-1] + (N,), dtype=np.complex128)
    power = np.ones_like(points)
    for n in range(N):
        power = power * points
        out[..., n] = 2.0 * (weights * power).sum(-1)
    return out


def schwarz_to_c23(t: SchwarzTriple):
    c1, x, z = t.c1, t.x, t.z
    return _c23(c1, x, z)


def _c23(c1, x, z):
    # works elementwise on arrays as well as on scalars
    s = 4.0 - c1 * c1
    c2 = (c1 * c1 + s * x) / 2.0
    c3 = (c1 ** 3 + 2 * c1 * s * x - c1 * s * x * x
          + 2 * s * (1 - np.abs(x) ** 2) * z) / 4.0
    return c2, c3


@dataclass(frozen=True)
class SchwarzRecovery:
    """Result of inverting the ``(c1, x, z)`` form.

    ``x`` is ``None`` when ``c1 = 2``; ``z`` is ``None`` when ``c1 = 2`` or
    ``|x| = 1``. ``degenerate`` names the obstruction (``"c1"``/``"x"``).
    """

    c1: float
    x: Optional[complex]
    z: Optional[complex]
    degenerate: Optional[str] = None

    def triple(self) -> SchwarzTriple:
        if self.degenerate == "c1":
            raise DegenerateC1("c1 = 2 leaves x undetermined")
        if self.degenerate == "x":
            raise DegenerateX("|x| = 1 leaves z undetermined")
        return SchwarzTriple(self.c1, self.x, self.z)


def c_to_schwarz(c1: float, c2: complex, c3: complex,
                 tol: float = DEGENERACY_TOL) -> SchwarzRecovery:
    """Recover ``x`` and ``z`` from ``(c1, c2, c3)`` where possible.

    Raises :class:`NotRepresentable` if the recovered ``|x|`` or ``|z|``
    exceeds one by more than ``1e-9``. Degenerate inputs are flagged on
    the returned record; call ``.triple()`` to turn a flag into the
    matching exception.
    """
    c1 = float(c1)
    if not (-TRIPLE_TOL <= c1 <= 2 + TRIPLE_TOL):
        raise NotRepresentable(f"c1 = {c1} outside [0, 2]")
    s = 4.0 - c1 * c1
    if s <= tol:
        return SchwarzRecovery(c1, None, None, "c1")
    x = (2 * complex(c2) - c1 * c1) / s
    ax = abs(x)
    # rounding in the inputs is amplified by the 1/s and 1/(1-|x|^2) divisions
    eps = 64 * np.finfo(float).eps
    if ax > 1 + REPRESENTABLE_TOL + eps * 8 / s:
        raise NotRepresentable(f"|x| = {ax:.12g} > 1")
    if abs(ax - 1.0) <= tol:
        return SchwarzRecovery(c1, x, None, "x")
    num = 4 * complex(c3) - c1 ** 3 - 2 * c1 * s * x + c1 * s * x * x
    den = 2 * s * (1 - ax * ax)
    z = num / den
    if abs(z) > 1 + REPRESENTABLE_TOL + eps * 48 / abs(den):
        raise NotRepresentable(f"|z| = {abs(z):.12g} > 1")
    return SchwarzRecovery(c1, x, z)


def toeplitz_matrix(c) -> np.ndarray:
    """Hermitian Toeplitz matrix with first row ``(2, c_1, ..., c_N)``.

    Accepts a leading batch axis.
    """
    c = as_coefficients(c)
    full = np.concatenate([np.full(c.shape[:-1] + (1,), 2.0 + 0j), c], axis=-1)
    n = full.shape[-1]
    i, j = np.indices((n, n))
    d = j - i
    T = full[..., np.abs(d)]
    return np.where(d >= 0, T, np.conj(T))


def leading_minors(c) -> np.ndarray:
    """Leading principal minors of :func:`toeplitz_matrix`, real parts."""
    T = toeplitz_matrix(c)
    n = T.shape[-1]
    return np.stack([np.linalg.det(T[..., :k, :k]).real for k in range(1, n + 1)], axis=-1)


def toeplitz_admissible(c, tol: float = MINOR_TOL) -> tuple[bool, float]:
    """Positive-semidefiniteness test for ``(2, c_1, ..., c_N)``.

    Every leading principal minor must be ``>= -tol``. The smallest
    eigenvalue is checked at the same tolerance, which closes the gap left
    by leading minors on singular matrices.
    """
    minors = leading_minors(c)
    eig_min = np.linalg.eigvalsh(toeplitz_matrix(c)).min()
    min_minor = float(minors.min())
    return bool(min_minor >= -tol and eig_min >= -tol), min_minor


def toeplitz_admissible_batch(c: np.ndarray, tol: float = MINOR_TOL) -> np.ndarray:
    """Boolean mask version of :func:`toeplitz_admissible` for ``(S, N)`` input."""
    c = np.asarray(c, dtype=np.complex128)
    if c.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    minors_ok = (leading_minors(c) >= -tol).all(-1)
    eig_ok = np.linalg.eigvalsh(toeplitz_matrix(c)).min(-1) >= -tol
    return minors_ok & eig_ok


def random_measure(k: int = DEFAULT_ATOMS, seed: int = 0) -> HerglotzMeasure:
    """``k`` atoms: flat-Dirichlet weights, uniform angles. Deterministic in ``(k, seed)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    w, p = _draw(rng, 1, k)
    return HerglotzMeasure(w[0], p[0])


def _draw(rng: np.random.Generator, size: int, k: int):
    w = rng.dirichlet(np.ones(k), size=size)
    # Dirichlet draws can underflow to 0 for tiny shape sums; keep weights positive
    w = np.clip(w, np.finfo(float).tiny, None)
    w /= w.sum(-1, keepdims=True)
    theta = rng.uniform(0.0, 2 * math.pi, size=(size, k))
    return w, np.exp(1j * theta)


def random_measures_batch(size: int, k: int, seed: int, chunk: int):
    """Batch of ``size`` measures drawn from the generator keyed ``(seed, chunk)``.

    Sample ``i`` of a Monte-Carlo run lives in chunk ``i // chunk_size``;
    keying the generator on the chunk index makes serial and parallel runs
    draw identical streams.
    """
    rng = np.random.default_rng([seed, chunk])
    return _draw(rng, size, k)


def conjugate_pair(c1: float) -> HerglotzMeasure:
    """Two atoms of weight 1/2 at ``exp(+-i theta)`` with ``2 cos theta = c1``.

    Realizes ``x = -1`` in the ``(c1, x, z)`` form.
    """
    theta = math.acos(max(-1.0, min(1.0, c1 / 2.0)))
    return HerglotzMeasure.from_angles([0.5, 0.5], [theta, -theta])

