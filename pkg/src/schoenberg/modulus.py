"""Discretized sup norms, the second-order modulus of smoothness and the
K-functional right-hand side 4||f - Sf|| + t^2 ||D^2 S f||.

Every supremum here is taken over a finite grid followed by golden-section
searches near the best grid points, so the returned numbers are lower bounds
of the true suprema.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import DomainError, UniformMesh
from .operator import SplineFunction, _fvalues, eval_spline, schoenberg, second_derivative


@dataclass(frozen=True)
class GridSpec:
    x_points: int = 4097
    h_points: int = 512
    per_interval: int = 32  # samples per knot interval for spline-derivative norms

    def __post_init__(self):
        for name in ("x_points", "h_points", "per_interval"):
            if getattr(self, name) < 2:
                raise DomainError(f"GridSpec.{name} must be >= 2, got {getattr(self, name)}")


DEFAULT_GRID = GridSpec()
INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_max(g, a: float, b: float, tol: float = 1e-14) -> tuple[float, float]:
    """Golden-section search for the max of scalar g on [a, b]; returns (x, g(x)).

    Unlike parabolic methods it never leaves [a, b] and copes with cusps.
    """
    c, d = b - INVPHI * (b - a), a + INVPHI * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - INVPHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + INVPHI * (b - a)
            gd = g(d)
    return (c, gc) if gc >= gd else (d, gd)


def golden_max_many(g, a: np.ndarray, b: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    """Elementwise golden-section maxima of vectorized g on brackets [a_i, b_i].

    Returns the best value found on each bracket.
    """
    a, b = np.array(a, dtype=float), np.array(b, dtype=float)
    c, d = b - INVPHI * (b - a), a + INVPHI * (b - a)
    gc, gd = g(c), g(d)
    while np.max(b - a) > tol:
        left = gc >= gd
        # left: keep [a, d] and the old c becomes d; right: keep [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        kept, gkept = np.where(left, c, d), np.where(left, gc, gd)
        c = np.where(left, b - INVPHI * (b - a), kept)
        d = np.where(left, kept, a + INVPHI * (b - a))
        fresh = g(np.where(left, c, d))
        gc, gd = np.where(left, fresh, gkept), np.where(left, gkept, fresh)
    return np.maximum(gc, gd)


def _top_peaks(vals: np.ndarray, count: int) -> list[int]:
    """Indices of the ``count`` largest discrete local maxima."""
    padded = np.concatenate(([-np.inf], vals, [-np.inf]))
    peaks = np.flatnonzero((padded[1:-1] >= padded[:-2]) & (padded[1:-1] >= padded[2:]))
    return sorted(peaks[np.argsort(vals[peaks], kind="stable")[::-1][:count]].tolist())


def _refine_max(g, xs: np.ndarray, vals: np.ndarray, candidates: int = 4) -> float:
    """Grid max of g, improved by golden searches around the largest local maxima."""
    best = float(np.max(vals))
    idx = np.array(_top_peaks(vals, candidates))
    a, b = xs[np.maximum(idx - 1, 0)], xs[np.minimum(idx + 1, xs.size - 1)]
    keep = b > a
    if keep.any():
        best = max(best, float(np.max(golden_max_many(g, a[keep], b[keep]))))
    return best


def sup_norm(g, grid: GridSpec = DEFAULT_GRID, lo: float = 0.0, hi: float = 1.0) -> float:
    """sup |g| over [lo, hi], g vectorized."""
    xs = np.linspace(lo, hi, grid.x_points)
    absg = lambda z: np.abs(g(z))  # noqa: E731
    return _refine_max(absg, xs, absg(xs))


def sup_norm_error(f, s: SplineFunction, grid: GridSpec = DEFAULT_GRID) -> float:
    """sup_x |f(x) - s(x)| on [0, 1]."""
    return sup_norm(lambda z: _fvalues(f, z) - eval_spline(s, z), grid)


def spline_sup_norm(
    s: SplineFunction, grid: GridSpec = DEFAULT_GRID, lo_knot: int = 0, hi_knot: int | None = None
) -> float:
    """Max |s| over per_interval samples on each knot interval in [x_lo, x_hi].

    Knot interval endpoints are always included, so piecewise-linear s is exact.
    """
    mesh = s.mesh
    hi_knot = mesh.n if hi_knot is None else hi_knot
    if not 0 <= lo_knot < hi_knot <= mesh.n:
        raise DomainError(f"bad knot range [{lo_knot}, {hi_knot}] for n = {mesh.n}")
    x = _interval_samples(mesh, lo_knot, hi_knot, grid.per_interval)
    return float(np.max(np.abs(eval_spline(s, x))))


def _interval_samples(mesh: UniformMesh, lo: int, hi: int, per: int) -> np.ndarray:
    u = np.linspace(0.0, 1.0, per + 1)
    starts = np.arange(lo, hi)
    x = (starts[:, None] + u[None, :]) / mesh.n
    return np.clip(x.ravel(), 0.0, 1.0)


def _second_diff_max(fn, h: float, xs: np.ndarray) -> np.ndarray:
    return np.abs(fn(xs) - 2.0 * fn(xs + h) + fn(xs + 2.0 * h))


def omega2(f, t: float, grid: GridSpec = DEFAULT_GRID) -> float:
    """sup_{0<h<=t} sup_{x in [0,1-2h]} |f(x) - 2 f(x+h) + f(x+2h)|.

    The step grid is geometric from t/h_points to t.  The closing h = t is
    harmless since omega2 is continuous in h for continuous f.
    """
    if not 0.0 < t <= 0.5:
        raise DomainError(f"omega2 needs 0 < t <= 1/2, got {t}")
    fn = lambda z: _fvalues(f, z)  # noqa: E731
    hs = np.geomspace(t / grid.h_points, t, grid.h_points)
    hs[-1] = t
    u = np.linspace(0.0, 1.0, grid.x_points)
    row_max = np.empty(hs.size)
    for chunk in np.array_split(np.arange(hs.size), max(1, hs.size // 64)):
        h = hs[chunk][:, None]
        row_max[chunk] = _second_diff_max(fn, h, u[None, :] * (1.0 - 2.0 * h)).max(axis=1)
    best = float(row_max.max())

    def phi(h):
        # x-refined row maximum; the bare x-grid can miss a cusp by O(sqrt(dx))
        xs = u * (1.0 - 2.0 * h)
        g = lambda z: _second_diff_max(fn, h, z)  # noqa: E731
        return _refine_max(g, xs, g(xs))

    best = max(best, phi(float(t)))
    for r in _top_peaks(row_max, 3):
        a, b = hs[max(r - 1, 0)], hs[min(r + 1, hs.size - 1)]
        best = max(best, phi(float(hs[r])), golden_max(phi, a, b, tol=1e-9 * t)[1])
    return best


def d2_sup_norm(mesh: UniformMesh, f, grid: GridSpec = DEFAULT_GRID) -> float:
    """||D^2 S f|| over [0, 1]; needs k >= 3 so that D^2 S f is continuous."""
    if mesh.k < 3:
        raise DomainError(f"D^2 S f is only continuous for k >= 3, got k = {mesh.k}")
    return spline_sup_norm(second_derivative(schoenberg(mesh, f)), grid)


def kfunctional_rhs(f, mesh: UniformMesh, t: float, grid: GridSpec = DEFAULT_GRID) -> float:
    """4 ||f - S f|| + t^2 ||D^2 S f||, an upper bound for omega2(f, t)."""
    if mesh.k < 3:
        raise DomainError(f"kfunctional_rhs needs k >= 3, got k = {mesh.k}")
    if not 0.0 < t <= 0.5:
        raise DomainError(f"t must lie in (0, 1/2], got {t}")
    s = schoenberg(mesh, f)
    return 4.0 * sup_norm_error(f, s, grid) + t * t * d2_sup_norm(mesh, f, grid)
