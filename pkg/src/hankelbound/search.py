"""Brute-force maximization of ``|a_2 a_4 - a_3^2|`` and bound verification.

Three searches, each independent of the closed forms they are compared to:

* :func:`grid_maximize_surrogate` maximizes a surrogate ``F(c, delta)`` on a
  dense grid, then polishes the best cell with a bounded scalar search;
* :func:`schwarz_box_maximize` maximizes the true functional over a polar
  grid of the ``(c1, x, z)`` parameters;
* :func:`monte_carlo_verify` samples random atomic measures, builds the
  class member by the coefficient recursion and tallies bound violations.

A published-bound violation only counts once it is confirmed twice: the value
from the recursion and ``second_hankel`` must agree with the polynomial
``functional_from_c``, and the prefix ``(c_1, c_2, c_3)`` must pass the
Toeplitz test.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import bounds
from .caratheodory import (
    HerglotzMeasure,
    _c23,
    herglotz_coefficients_batch,
    random_measures_batch,
    toeplitz_admissible,
    toeplitz_admissible_batch,
)
from .classes import (
    FunctionClass,
    OrderParam,
    build_function,
    membership_margin,
    min_membership_order,
    taylor_batch,
)
from .hankel import second_hankel, second_hankel_batch

log = logging.getLogger(__name__)

VIOLATION_TOL = 1e-9
CONFIRM_TOL = 1e-10
SHARP_TOL = 1e-9


@dataclass(frozen=True)
class SearchConfig:
    class_kind: FunctionClass = FunctionClass.STARLIKE
    alpha: float = 2.0
    grid_c: int = 2001
    grid_delta: int = 2001
    mc_samples: int = 10_000
    atoms: int = 3
    seed: int = 0
    truncation: int = 64
    # (c1, x, z) box search resolution
    box_c: int = 201
    x_angles: int = 64
    x_radii: int = 32
    z_angles: int = 64
    # points of the injected extremal family (convex: conjugate pairs)
    stress_points: int = 2001
    chunk_size: int = 4096
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "class_kind", FunctionClass(self.class_kind))
        object.__setattr__(self, "alpha", float(self.alpha))
        OrderParam(self.alpha)
        if min(self.grid_c, self.grid_delta, self.box_c) < 2:
            raise ValueError("grid sizes must be at least 2")
        if min(self.x_angles, self.x_radii, self.z_angles) < 1:
            raise ValueError("polar grids need at least one node")
        if self.mc_samples < 0 or self.stress_points < 0:
            raise ValueError("sample counts must be non-negative")
        if self.atoms < 1:
            raise ValueError("atoms must be at least 1")
        if self.truncation < 4:
            raise ValueError("truncation must be at least 4")
        if self.chunk_size < 1 or self.workers < 1:
            raise ValueError("chunk_size and workers must be positive")

    @property
    def order_param(self) -> OrderParam:
        return OrderParam(self.alpha)

    def to_json(self) -> dict:
        d = asdict(self)
        d["class_kind"] = self.class_kind.value
        return d

    @classmethod
    def from_json(cls, doc: dict) -> "SearchConfig":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in doc.items() if k in known})


@dataclass
class ExtremumReport:
    method: str
    class_kind: str
    alpha: float
    best_value: float
    best_location: dict
    bound_paper: float
    bound_corrected: Optional[float]
    exceeded_paper: bool
    margin: float
    confirmed: Optional[bool] = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class VerificationReport:
    class_kind: str
    alpha: float
    samples_run: int
    stress_samples: int
    violations_paper: int
    violations_corrected: Optional[int]
    unconfirmed_exceedances: int
    empirical_max: float
    attaining_sample: dict
    bound_paper: float
    bound_corrected: Optional[float]
    attaining_membership_margin: Optional[float] = None
    confirmed_examples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ScanRow:
    alpha: float
    beta: float
    bound_paper: float
    bound_corrected: Optional[float]
    empirical_max: float
    gap: float
    verdict: str

    CSV_COLUMNS = ("alpha", "beta", "bound_paper", "bound_corrected",
                   "empirical_max", "gap", "verdict")

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.CSV_COLUMNS}


def _corrected(cfg: SearchConfig) -> Optional[float]:
    if cfg.class_kind is FunctionClass.CONVEX:
        return bounds.corrected_convex_envelope(cfg.order_param).value
    return None


def _extremum(method, cfg, value, location, confirmed=None) -> ExtremumReport:
    bound = bounds.paper_bound(cfg.class_kind, cfg.order_param).value
    return ExtremumReport(
        method=method,
        class_kind=cfg.class_kind.value,
        alpha=cfg.alpha,
        best_value=float(value),
        best_location=location,
        bound_paper=bound,
        bound_corrected=_corrected(cfg),
        exceeded_paper=bool(value > bound + VIOLATION_TOL),
        margin=bound - float(value),
        confirmed=confirmed,
    )


# ---------------------------------------------------------------------------
# surrogate grid

def _tie_tol(v: float) -> float:
    return 0.0 if not np.isfinite(v) else 8 * np.finfo(float).eps * max(1.0, abs(v))


def _polish(fun, lo, hi, x0, f0):
    """Bounded Brent (golden section + parabolic steps) on ``[lo, hi]``."""
    if hi <= lo:
        return x0, f0
    res = minimize_scalar(lambda t: -fun(t), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    if res.success and -res.fun > f0 + _tie_tol(f0):
        return float(res.x), float(-res.fun)
    return x0, f0


def grid_maximize_surrogate(cfg: SearchConfig, literal: bool = True,
                            block: int = 128) -> ExtremumReport:
    """Maximize ``F(c, delta)`` on ``[0, 2] x [0, 1]``.

    Exhaustive grid of ``grid_c x grid_delta`` nodes; ties go to the
    smallest ``(c, delta)``. One refinement pass along ``c`` and then
    ``delta`` inside the neighbouring cells.
    """
    p, cls = cfg.order_param, cfg.class_kind
    cs = np.linspace(0.0, 2.0, cfg.grid_c)
    ds = np.linspace(0.0, 1.0, cfg.grid_delta)
    best, bi, bj = -np.inf, 0, 0
    for start in range(0, cs.size, block):
        F = bounds.f_surrogate(cls, p, cs[start:start + block, None], ds[None, :], literal)
        m = float(F.max())
        if m > best + _tie_tol(best):
            # first node within rounding of the block maximum: smallest (c, delta)
            k = int(np.argmax(F >= m - _tie_tol(m)))
            i, j = divmod(k, ds.size)
            best, bi, bj = float(F[i, j]), start + i, j
    c0, d0 = float(cs[bi]), float(ds[bj])
    grid_value = best

    def F(c, d):
        return float(bounds.f_surrogate(cls, p, c, d, literal))

    c_best, best = _polish(lambda t: F(t, d0), cs[max(bi - 1, 0)], cs[min(bi + 1, cs.size - 1)],
                           c0, best)
    d_best, best = _polish(lambda t: F(c_best, t), ds[max(bj - 1, 0)], ds[min(bj + 1, ds.size - 1)],
                           d0, best)
    location = {"kind": "surrogate", "literal": literal, "c": c_best, "delta": d_best,
                "grid_c": c0, "grid_delta": d0, "grid_value": grid_value}
    rep = _extremum("grid_surrogate" + ("" if literal else "_corrected"), cfg, best, location)
    return rep


# ---------------------------------------------------------------------------
# (c1, x, z) box

def _x_grid(cfg: SearchConfig) -> np.ndarray:
    radii = np.linspace(0.0, 1.0, cfg.x_radii) if cfg.x_radii > 1 else np.ones(1)
    angles = 2 * np.pi * np.arange(cfg.x_angles) / cfg.x_angles
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def _z_ring(cfg: SearchConfig) -> np.ndarray:
    # The functional is affine in z, so its modulus over any polar grid of
    # the closed disc is maximized on the outer ring.
    return np.exp(2j * np.pi * np.arange(cfg.z_angles) / cfg.z_angles)


def _first_admissible(vals: np.ndarray, c1: float, c2: np.ndarray, c3: np.ndarray,
                      chunk: int = 256):
    """Index of the largest value whose prefix passes the Toeplitz test."""
    flat = vals.ravel()
    k = int(np.argmax(flat))
    c2f = np.broadcast_to(c2, vals.shape).ravel()
    c3f = c3.ravel()
    if toeplitz_admissible_batch(np.array([[c1, c2f[k], c3f[k]]]))[0]:
        return k, 0
    order = np.argsort(-flat, kind="stable")
    rejected = 0
    for start in range(0, order.size, chunk):
        idx = order[start:start + chunk]
        pre = np.stack([np.full(idx.size, c1, dtype=complex), c2f[idx], c3f[idx]], axis=-1)
        ok = toeplitz_admissible_batch(pre)
        if ok.any():
            first = int(np.argmax(ok))
            return int(idx[first]), rejected + first
        rejected += idx.size
    return None, rejected


def schwarz_box_maximize(cfg: SearchConfig) -> ExtremumReport:
    """Maximize the true ``|a_2 a_4 - a_3^2|`` over admissible ``(c1, x, z)``."""
    p, cls = cfg.order_param, cfg.class_kind
    xs = _x_grid(cfg)
    zs = _z_ring(cfg)
    best, where, rejected = -np.inf, None, 0
    for c1 in np.linspace(0.0, 2.0, cfg.box_c):
        c1 = float(c1)
        c2, c3 = _c23(c1, xs[:, None], zs[None, :])
        vals = np.abs(bounds.functional_from_c(cls, p, c1, c2, c3))
        if vals.max() <= best:
            continue
        k, r = _first_admissible(vals, c1, c2, c3)
        rejected += r
        if k is None:
            continue
        i, j = divmod(k, zs.size)
        if vals[i, j] > best:
            best = float(vals[i, j])
            where = (c1, complex(xs[i]), complex(zs[j]), complex(c2[i, 0]), complex(c3[i, j]))
    c1, x, z, c2, c3 = where
    # second path: build f from (c1, c2, c3) and take its Hankel determinant
    f = build_function(cls, [c1, c2, c3], p, 4)
    recomputed = abs(second_hankel(f))
    admissible, _ = toeplitz_admissible([c1, c2, c3])
    confirmed = bool(admissible and abs(recomputed - best) <= CONFIRM_TOL)
    location = {"kind": "schwarz", "c1": c1, "x": [x.real, x.imag], "z": [z.real, z.imag],
                "c2": [c2.real, c2.imag], "c3": [c3.real, c3.imag],
                "recomputed": recomputed, "rejected_candidates": rejected}
    return _extremum("schwarz_box", cfg, best, location, confirmed)


# ---------------------------------------------------------------------------
# Monte Carlo

def stress_family(cls: FunctionClass, points: int):
    """Extremal measures injected into every verification run.

    Convex: conjugate pairs ``1/2 (delta_{e^{i theta}} + delta_{e^{-i theta}})``
    with ``2 cos theta = c`` swept over the open interval ``(0, 2)``; these
    realize ``x = -1``. Starlike: the single atom at 1.
    """
    if FunctionClass(cls) is FunctionClass.STARLIKE:
        return np.ones((1, 1)), np.ones((1, 1), dtype=complex)
    if points == 0:
        return np.zeros((0, 2)), np.zeros((0, 2), dtype=complex)
    c = np.linspace(0.0, 2.0, points + 2)[1:-1]
    theta = np.arccos(c / 2)
    w = np.full((c.size, 2), 0.5)
    pts = np.stack([np.exp(1j * theta), np.exp(-1j * theta)], axis=-1)
    return w, pts


@dataclass
class _ChunkResult:
    size: int
    max_value: float
    argmax: int
    weights: np.ndarray
    points: np.ndarray
    published_confirmed: int
    corrected_confirmed: int
    unconfirmed: int
    examples: list


def _evaluate(cfg: SearchConfig, weights: np.ndarray, points: np.ndarray,
              bound: float, corrected: Optional[float]) -> _ChunkResult:
    p, cls = cfg.order_param, cfg.class_kind
    N = cfg.truncation
    c = herglotz_coefficients_batch(weights, points, N - 1)
    a = taylor_batch(cls, c, p.beta, N)
    h = np.abs(second_hankel_batch(a))
    k = int(np.argmax(h)) if h.size else 0

    limit = bound if corrected is None else min(bound, corrected)
    suspects = np.nonzero(h > limit + VIOLATION_TOL)[0]
    confirmed = np.zeros(0, dtype=int)
    if suspects.size:
        pre = c[suspects, :3]
        poly = np.abs(bounds.functional_from_c(cls, p, pre[:, 0], pre[:, 1], pre[:, 2]))
        agree = np.abs(poly - h[suspects]) <= CONFIRM_TOL * np.maximum(1.0, h[suspects])
        ok = agree & toeplitz_admissible_batch(pre)
        confirmed = suspects[ok]
    published = int((h[confirmed] > bound + VIOLATION_TOL).sum())
    corr = int((h[confirmed] > corrected + VIOLATION_TOL).sum()) if corrected is not None else 0
    examples = []
    if published:
        top = confirmed[np.argmax(h[confirmed])]
        examples.append({"value": float(h[top]),
                         "c": [[float(v.real), float(v.imag)] for v in c[top, :3]],
                         "measure": HerglotzMeasure(weights[top], points[top]).to_json()})
    return _ChunkResult(h.size, float(h[k]) if h.size else -np.inf, k,
                        weights[k] if h.size else None, points[k] if h.size else None,
                        published, corr, int(suspects.size - confirmed.size), examples)


def monte_carlo_verify(cfg: SearchConfig, membership: bool = True) -> VerificationReport:
    """Sample class members and compare ``|a_2 a_4 - a_3^2|`` with the bounds.

    Random draws use one generator per chunk keyed on ``(seed, chunk)``, so
    the report is independent of ``workers``. The extremal family of
    :func:`stress_family` is always appended.
    """
    p, cls = cfg.order_param, cfg.class_kind
    bound = bounds.paper_bound(cls, p).value
    corrected = _corrected(cfg)
    n_chunks = math.ceil(cfg.mc_samples / cfg.chunk_size)

    def run(j: int) -> _ChunkResult:
        size = min(cfg.chunk_size, cfg.mc_samples - j * cfg.chunk_size)
        w, pts = random_measures_batch(size, cfg.atoms, cfg.seed, j)
        return _evaluate(cfg, w, pts, bound, corrected)

    if cfg.workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(run, range(n_chunks)))
    else:
        results = [run(j) for j in range(n_chunks)]
    sw, sp = stress_family(cls, cfg.stress_points)
    stress = _evaluate(cfg, sw, sp, bound, corrected) if sw.shape[0] else None
    parts = results + ([stress] if stress is not None else [])

    best = None
    for r in parts:
        if r.size and (best is None or r.max_value > best.max_value):
            best = r
    measure = HerglotzMeasure(best.weights, best.points)
    margin = None
    if membership:
        N = min_membership_order(0.9)
        c = herglotz_coefficients_batch(best.weights[None], best.points[None], N - 1)[0]
        margin = membership_margin(build_function(cls, c, p, N), cls, p)
    rep = VerificationReport(
        class_kind=cls.value,
        alpha=cfg.alpha,
        samples_run=sum(r.size for r in parts),
        stress_samples=stress.size if stress is not None else 0,
        violations_paper=sum(r.published_confirmed for r in parts),
        violations_corrected=(sum(r.corrected_confirmed for r in parts)
                              if corrected is not None else None),
        unconfirmed_exceedances=sum(r.unconfirmed for r in parts),
        empirical_max=best.max_value,
        attaining_sample=measure.to_json(),
        bound_paper=bound,
        bound_corrected=corrected,
        attaining_membership_margin=margin,
        confirmed_examples=[e for r in parts for e in r.examples][:5],
    )
    log.info("%s alpha=%g: max %.12g vs bound %.12g, %d violations",
             cls.value, cfg.alpha, rep.empirical_max, bound, rep.violations_paper)
    return rep


def alpha_scan(cls: FunctionClass, steps: int, cfg: SearchConfig,
               membership: bool = False) -> list[ScanRow]:
    """One Monte-Carlo verification per point of a uniform ``alpha`` grid on [1, 2]."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    rows = []
    for alpha in np.linspace(1.0, 2.0, steps):
        rep = monte_carlo_verify(replace(cfg, class_kind=FunctionClass(cls), alpha=float(alpha)),
                                 membership=membership)
        gap = rep.bound_paper - rep.empirical_max
        if rep.violations_paper:
            verdict = "violated"
        elif abs(gap) <= SHARP_TOL:
            verdict = "sharp"
        else:
            verdict = "holds"
        rows.append(ScanRow(float(alpha), OrderParam(float(alpha)).beta, rep.bound_paper,
                            rep.bound_corrected, rep.empirical_max, gap, verdict))
    return rows
