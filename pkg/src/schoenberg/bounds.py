"""Constants of the lower estimate and the per-function bound report.

The chain of estimates is

    omega2(f, t) <= 4 ||f - S f|| + t^2 ||D^2 S f||
    ||D^2 S f||  <= (4 d_k + 2 eps_{n,k} zeta(3/2)) / h^2 * ||f - S f||

which combine into omega2(f, t) <= lower_const * ||f - S f||, and with
t = delta the constant becomes exactly 5.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

from .basis import DomainError, UniformMesh, _greville, basis_matrix
from .modulus import DEFAULT_GRID, GridSpec, omega2, spline_sup_norm, sup_norm_error
from .operator import collocation_matrix, iterate, schoenberg, second_derivative

DK_STRATEGIES = ("alternating", "grid_lp")
GUARD = 1e-14


def _min_n(k: int) -> int:
    return 4 * k + 8


def interior_knot_range(mesh: UniformMesh) -> tuple[int, int]:
    """Knot indices (2k+2, n-2k-2) bounding the translation-invariant region."""
    lo, hi = 2 * mesh.k + 2, mesh.n - 2 * mesh.k - 2
    if hi <= lo:
        raise DomainError(
            f"mesh n={mesh.n}, k={mesh.k} has no interior region; need n >= 4k+8 = {_min_n(mesh.k)}"
        )
    return lo, hi


@lru_cache(maxsize=None)
def epsilon_nk(mesh: UniformMesh) -> float:
    """sqrt of sup_i sum_j (N_j(xi_i) - 2 N_j(xi_{i-1}) + N_j(xi_{i-2}))^2 / N_j(xi_i).

    Zero denominators are replaced by 1.  i runs over nodes whose whole
    three-point stencil lies in [x_{2k+2}, x_{n-2k-2}].
    """
    if mesh.n < _min_n(mesh.k):
        raise DomainError(f"epsilon_nk needs n >= 4k+8 = {_min_n(mesh.k)}, got n = {mesh.n}")
    lo, hi = interior_knot_range(mesh)
    A = collocation_matrix(mesh)
    xi = _greville(mesh, mesh.k)
    tol = 1e-12
    rows = [
        i
        for i in range(2, A.shape[0])
        if xi[i - 2] >= lo / mesh.n - tol and xi[i] <= hi / mesh.n + tol
    ]
    if not rows:
        raise DomainError(f"no interior Greville stencil; need n >= 4k+8 = {_min_n(mesh.k)}")
    best = 0.0
    for i in rows:
        num = (A[i] - 2.0 * A[i - 1] + A[i - 2]) ** 2
        den = np.where(A[i] > GUARD, A[i], 1.0)
        best = max(best, float(np.sum(num / den)))
    return math.sqrt(best)


def zeta_three_halves(terms: int = 1000) -> float:
    """zeta(3/2) from a partial sum plus an Euler-Maclaurin tail.

    Tail for s = 3/2 after N terms:
        2/sqrt(N) - N^{-3/2}/2 + (s/12) N^{-5/2} - s(s+1)(s+2)/720 N^{-9/2}
    The next correction is below 1e-21 for N = 1000.
    """
    N = terms
    m = np.arange(1, N + 1, dtype=float)
    partial = math.fsum(m**-1.5)
    s = 1.5
    tail = (
        2.0 / math.sqrt(N)
        - 0.5 * N**-1.5
        + s / 12.0 * N**-2.5
        - s * (s + 1) * (s + 2) / 720.0 * N**-4.5
    )
    return partial + tail


ZETA_3_2 = zeta_three_halves()


def iterate_d2_bound(mesh: UniformMesh, m: int) -> float:
    """2 eps_{n,k} / ((m-1)^{3/2} h^2), the bound on |D^2 S^m f| / ||f||."""
    if m < 2:
        raise DomainError(f"iterate_d2_bound needs m >= 2, got {m}")
    return 2.0 * epsilon_nk(mesh) / ((m - 1) ** 1.5 * mesh.h**2)


def interior_d2_iterate_norm(mesh: UniformMesh, f, m: int, grid: GridSpec = DEFAULT_GRID, A=None) -> float:
    """Max |D^2 S^m f| on [x_{2k+2}, x_{n-2k-2}]."""
    lo, hi = interior_knot_range(mesh)
    d2 = second_derivative(iterate(mesh, f, m, A))
    return spline_sup_norm(d2, grid, lo, hi)


# --- stability constant d_k ------------------------------------------------


def _ratio(B: np.ndarray, c: np.ndarray) -> float:
    s = np.max(np.abs(B @ c))
    return float(np.max(np.abs(c)) / s) if s > 0 else 0.0


def _dense_basis(mesh: UniformMesh) -> np.ndarray:
    per = 64
    x = np.linspace(0.0, 1.0, mesh.n * per + 1)
    return basis_matrix(mesh, mesh.k, x)


def _alternating_trials(mesh: UniformMesh):
    dim = mesh.n + mesh.k
    yield from np.eye(dim)
    alt = (-1.0) ** np.arange(dim)
    for pad in range(0, min(3 * mesh.k + 3, dim // 2) + 1):
        c = alt.copy()
        c[:pad] = 0.0
        c[dim - pad :] = 0.0
        yield c


def _lp_trial(B: np.ndarray, j0: int) -> np.ndarray | None:
    # maximize c_{j0} subject to |B c| <= 1 on the grid
    dim = B.shape[1]
    obj = np.zeros(dim)
    obj[j0] = -1.0
    res = linprog(
        obj,
        A_ub=np.vstack([B, -B]),
        b_ub=np.ones(2 * B.shape[0]),
        bounds=[(None, None)] * dim,
        method="highs",
    )
    return res.x if res.status == 0 else None


def estimate_dk(mesh: UniformMesh, strategy: str = "alternating", seed: int = 0) -> float:
    """Lower estimate of the smallest d with ||c|| <= d ||sum c_j N_j||.

    Each trial vector c contributes ||c|| / ||s||, with ||s|| measured on 64
    points per knot interval; the estimate is the largest contribution.

    ``alternating``: coordinate vectors and (-1)^j, with 0..3k+3 coefficients
    at each end zeroed.  ``grid_lp`` adds random sign patterns improved by
    greedy single-coefficient flips, and LP maximizers of c_j subject to
    |s| <= 1 on a coarser grid for a few j.
    """
    if strategy not in DK_STRATEGIES:
        raise DomainError(f"unknown d_k strategy {strategy!r}; expected one of {DK_STRATEGIES}")
    return _estimate_dk(mesh, strategy, seed)


@lru_cache(maxsize=None)
def _estimate_dk(mesh: UniformMesh, strategy: str, seed: int) -> float:
    B = _dense_basis(mesh)
    best = max(_ratio(B, c) for c in _alternating_trials(mesh))
    if strategy == "alternating":
        return best
    dim = B.shape[1]
    rng = np.random.default_rng(seed)
    for _ in range(8):
        c = rng.choice([-1.0, 1.0], size=dim)
        r = _ratio(B, c)
        for _sweep in range(3):
            improved = False
            for j in range(dim):
                for v in (-c[j], 0.0):
                    old = c[j]
                    c[j] = v
                    rv = _ratio(B, c)
                    if rv > r:
                        r, improved = rv, True
                    else:
                        c[j] = old
            if not improved:
                break
        best = max(best, r)
    coarse = basis_matrix(mesh, mesh.k, np.linspace(0.0, 1.0, mesh.n * 16 + 1))
    for j0 in sorted({0, 1, 2, mesh.k, dim // 2}):
        if j0 < dim:
            c = _lp_trial(coarse, j0)
            if c is not None:
                best = max(best, _ratio(B, c))
    return best


@lru_cache(maxsize=4096)
def _omega2_cached(f, t: float, grid: GridSpec) -> float:
    return omega2(f, t, grid)


def _omega2(f, t: float, grid: GridSpec) -> float:
    try:
        return _omega2_cached(f, t, grid)
    except TypeError:  # unhashable callable
        return omega2(f, t, grid)


# --- assembled constants --------------------------------------------------


def _check_k(mesh: UniformMesh):
    if mesh.k < 3:
        raise DomainError(f"the lower bound needs k >= 3, got k = {mesh.k}")


def telescoping_constant(mesh: UniformMesh, d_k: float) -> float:
    """4 d_k + 2 eps_{n,k} zeta(3/2); times ||f - Sf|| / h^2 it bounds ||D^2 S f||."""
    return 4.0 * d_k + 2.0 * epsilon_nk(mesh) * ZETA_3_2


def lower_bound_constant(mesh: UniformMesh, t: float, d_k: float) -> float:
    _check_k(mesh)
    if not 0.0 < t <= 0.5:
        raise DomainError(f"t must lie in (0, 1/2], got {t}")
    if d_k < 1.0:
        raise DomainError(f"d_k must be >= 1, got {d_k}")
    return 4.0 + t * t * telescoping_constant(mesh, d_k) / mesh.h**2


def delta(mesh: UniformMesh, d_k: float) -> float:
    if d_k < 1.0:
        raise DomainError(f"d_k must be >= 1, got {d_k}")
    return mesh.h / math.sqrt(telescoping_constant(mesh, d_k))


def beutel_upper_constant(mesh: UniformMesh, t: float) -> float:
    """1 + min(1/(2k), (k+1) H^2 / 12) / (2 t^2) with H = h."""
    if not 0.0 < t <= 0.5:
        raise DomainError(f"t must lie in (0, 1/2], got {t}")
    k, H = mesh.k, mesh.h
    return 1.0 + min(1.0 / (2 * k), (k + 1) * H * H / 12.0) / (2.0 * t * t)


@dataclass(frozen=True)
class BoundReport:
    fn: str
    n: int
    k: int
    t: float
    delta: float
    omega2_t: float
    omega2_delta: float
    err_norm: float
    epsilon_nk: float
    d_k: float
    lower_const: float
    upper_const: float
    five_check: bool
    sandwich_check: bool
    slack: float
    dk_strategy: str = "alternating"

    def recheck(self) -> tuple[bool, bool]:
        """Recompute (five_check, sandwich_check) from the stored numbers."""
        five = self.omega2_delta <= 5.0 * self.err_norm + self.slack
        sandwich = (
            self.omega2_t / self.lower_const <= self.err_norm + self.slack
            and self.err_norm <= self.upper_const * self.omega2_t + self.slack
        )
        return five, sandwich

    def as_dict(self) -> dict:
        return asdict(self)


def lower_bound_report(
    f,
    mesh: UniformMesh,
    t: float | None = None,
    grid: GridSpec = DEFAULT_GRID,
    dk_strategy: str = "alternating",
    slack: float = 1e-9,
    seed: int = 0,
) -> BoundReport:
    """Evaluate every constant for one (f, n, k, t); t=None means t = delta."""
    _check_k(mesh)
    d_k = estimate_dk(mesh, dk_strategy, seed)
    eps = epsilon_nk(mesh)
    dl = delta(mesh, d_k)
    t = dl if t is None else float(t)
    if not 0.0 < t <= 0.5:
        raise DomainError(f"t must lie in (0, 1/2], got {t}")
    err = sup_norm_error(f, schoenberg(mesh, f), grid)
    w_delta = _omega2(f, dl, grid)
    w_t = _omega2(f, t, grid)
    report = BoundReport(
        fn=getattr(f, "name", getattr(f, "__name__", "f")),
        n=mesh.n,
        k=mesh.k,
        t=t,
        delta=dl,
        omega2_t=w_t,
        omega2_delta=w_delta,
        err_norm=err,
        epsilon_nk=eps,
        d_k=d_k,
        lower_const=lower_bound_constant(mesh, t, d_k),
        upper_const=beutel_upper_constant(mesh, t),
        five_check=False,
        sandwich_check=False,
        slack=slack,
        dk_strategy=dk_strategy,
    )
    five, sandwich = report.recheck()
    return BoundReport(**{**report.as_dict(), "five_check": five, "sandwich_check": sandwich})
