"""Clamped uniform meshes, Greville nodes and normalized B-splines on [0, 1].

Indexing follows the usual convention for the clamped sequence: knots are
x_{-k}, ..., x_{n+k} and the degree-l basis function N_{j,l} (support
[x_j, x_{j+l+1}]) has index j in -l, ..., n-1.  Arrays store index j at
offset j + l.

Knots outside the stored range are clamped, x_i = min(max(i/n, 0), 1), so a
single mesh serves every basis degree l <= k + 2.  The derivative of a degree
l spline then lives on the degree l-1 basis of the same mesh.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np


class DomainError(ValueError):
    """Raised when an argument lies outside the mathematical domain."""


@dataclass(frozen=True)
class UniformMesh:
    """Equidistant knots j/n on [0, 1], each end knot repeated k + 1 times."""

    n: int
    k: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise DomainError(f"n must be an integer, got {self.n!r}")
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)):
            raise DomainError(f"k must be an integer, got {self.k!r}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.k < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    def knot(self, i):
        """Knot x_i for any integer (array) i, clamped to [0, 1]."""
        i = np.asarray(i)
        return np.clip(i / self.n, 0.0, 1.0)

    @cached_property
    def knots(self) -> np.ndarray:
        """x_{-k}, ..., x_{n+k}; length n + 2k + 1."""
        return self.knot(np.arange(-self.k, self.n + self.k + 1))

    @cached_property
    def breaks(self) -> np.ndarray:
        """Distinct knots x_0, ..., x_n."""
        return self.knot(np.arange(self.n + 1))

    def dim(self, l: int | None = None) -> int:
        """Dimension n + l of the degree-l spline space."""
        return self.n + (self.k if l is None else l)


def make_mesh(n: int, k: int) -> UniformMesh:
    return UniformMesh(n, k)


@dataclass(frozen=True, eq=False)
class GrevilleNodes:
    order: int
    nodes: np.ndarray  # xi_{j,order}, j = -order .. n-1

    def __getitem__(self, j: int) -> float:
        return float(self.nodes[j + self.order])

    def __len__(self) -> int:
        return len(self.nodes)


def _greville(mesh: UniformMesh, l: int) -> np.ndarray:
    j = np.arange(-l, mesh.n)
    # xi_{j,l} = (x_{j+1} + ... + x_{j+l}) / l
    window = mesh.knot(j[:, None] + np.arange(1, l + 1)[None, :])
    return window.sum(axis=1) / l


def greville_nodes(mesh: UniformMesh, l: int) -> GrevilleNodes:
    if not 1 <= l <= mesh.k + 2:
        raise DomainError(f"Greville order must lie in [1, {mesh.k + 2}], got {l}")
    return GrevilleNodes(l, _greville(mesh, l))


def _check_x(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0.0) or np.any(x > 1.0):
        raise DomainError("evaluation points must lie in [0, 1]")
    return x


def find_span(mesh: UniformMesh, x: np.ndarray) -> np.ndarray:
    """Index mu with x_mu <= x < x_{mu+1}; x = 1 falls into the last interval."""
    mu = np.searchsorted(mesh.breaks, x, side="right") - 1
    return np.clip(mu, 0, mesh.n - 1)


def nonzero_basis(mesh: UniformMesh, l: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Degree-l basis values that may be nonzero at each x.

    Returns ``(mu, vals)`` where ``vals[p, r] = N_{mu[p]-l+r, l}(x[p])`` for
    r = 0..l.  This is the triangular Cox-de Boor scheme.  Evaluating on the
    last interval at x = 1 gives the left limit, i.e. N_{n-1,l}(1) = 1.
    """
    x = np.atleast_1d(_check_x(x))
    mu = find_span(mesh, x)
    vals = np.zeros((x.size, l + 1))
    vals[:, 0] = 1.0
    left = np.empty((x.size, l + 1))
    right = np.empty((x.size, l + 1))
    for d in range(1, l + 1):
        left[:, d] = x - mesh.knot(mu + 1 - d)
        right[:, d] = mesh.knot(mu + d) - x
        saved = np.zeros(x.size)
        for r in range(d):
            temp = vals[:, r] / (right[:, r + 1] + left[:, d - r])
            vals[:, r] = saved + right[:, r + 1] * temp
            saved = left[:, d - r] * temp
        vals[:, d] = saved
    return mu, vals


def basis_matrix(mesh: UniformMesh, l: int, x) -> np.ndarray:
    """Dense matrix B[p, j + l] = N_{j,l}(x[p])."""
    mu, vals = nonzero_basis(mesh, l, x)
    out = np.zeros((mu.size, mesh.n + l))
    cols = mu[:, None] + np.arange(l + 1)[None, :]  # offset of j = mu - l + r
    np.put_along_axis(out, cols, vals, axis=1)
    return out


def bspline_value(mesh: UniformMesh, l: int, j: int, x):
    """N_{j,l}(x) for scalar or array x."""
    if not -l <= j <= mesh.n - 1:
        raise DomainError(f"basis index j must lie in [{-l}, {mesh.n - 1}], got {j}")
    scalar = np.ndim(x) == 0
    mu, vals = nonzero_basis(mesh, l, x)
    r = j - mu + l
    inside = (r >= 0) & (r <= l)
    out = np.where(inside, vals[np.arange(mu.size), np.clip(r, 0, l)], 0.0)
    return float(out[0]) if scalar else out


def divided_difference(
    points: Sequence[float],
    values: Sequence[float],
    derivative: Callable[[float, int], float] | None = None,
) -> float:
    """Leading coefficient of the polynomial interpolating values at points.

    Repeated points must be adjacent (sorted runs).  For a run of length
    r + 1 the confluent value ``derivative(t, r) / r!`` is used, so any
    repetition requires ``derivative``.
    """
    t = np.asarray(points, dtype=float)
    table = np.asarray(values, dtype=float).copy()
    if t.ndim != 1 or t.shape != table.shape or t.size == 0:
        raise ValueError("points and values must be 1-d sequences of equal nonzero length")
    if len(set(t.tolist())) < t.size:
        if np.any(np.diff(t) < 0):
            raise ValueError("repeated points must come in sorted runs")
        if derivative is None:
            raise ValueError("repeated points need a derivative rule")
    for order in range(1, t.size):
        nxt = np.empty(t.size - order)
        for i in range(t.size - order):
            span = t[i + order] - t[i]
            if span == 0.0:
                nxt[i] = derivative(t[i], order) / math.factorial(order)
            else:
                nxt[i] = (table[i + 1] - table[i]) / span
        table = nxt
    return float(table[0])


def _truncated_power(x: float, l: int) -> tuple[Callable, Callable]:
    # g(t) = (t - x)_+^l and its derivatives; (u)_+^0 is 1 only for u > 0,
    # which makes the resulting B-splines right-continuous.
    def g(t):
        u = t - x
        if l == 0:
            return 1.0 if u > 0 else 0.0
        return u**l if u > 0 else 0.0

    def dg(t, r):
        u = t - x
        p = l - r
        if p < 0 or u <= 0:
            return 0.0
        return math.factorial(l) / math.factorial(p) * u**p

    return g, dg


def bspline_value_reference(mesh: UniformMesh, l: int, j: int, x: float) -> float:
    """N_{j,l}(x) from the truncated-power divided-difference definition.

    Slow and only meant as a cross-check for small n and l.
    """
    if not -l <= j <= mesh.n - 1:
        raise DomainError(f"basis index j must lie in [{-l}, {mesh.n - 1}], got {j}")
    x = float(_check_x(x))
    if x == 1.0:
        return 1.0 if j == mesh.n - 1 else 0.0
    t = [float(v) for v in mesh.knot(np.arange(j, j + l + 2))]
    if x < t[0]:
        # (. - x)_+^l is a degree-l polynomial on the knots: the difference is 0
        return 0.0
    g, dg = _truncated_power(x, l)
    return (t[-1] - t[0]) * divided_difference(t, [g(s) for s in t], dg)


def shift_invariance_defect(mesh: UniformMesh) -> float:
    """max |N_{j+1,k}(xi_i) - N_{j,k}(xi_{i-1})| over j in 0..n-k-2, i in 0..n-k.

    Outside that i range xi_i - xi_{i-1} < h because of the clamped end knots,
    and the translate identity does not hold.
    """
    n, k = mesh.n, mesh.k
    if n - k - 1 <= 0:
        return 0.0
    A = basis_matrix(mesh, k, _greville(mesh, k))
    rows = np.arange(0, n - k + 1) + k  # offset of xi_i
    shifted = A[rows][:, k + 1 : n]  # N_{j+1}, j = 0..n-k-2
    base = A[rows - 1][:, k : n - 1]  # N_j at xi_{i-1}
    return float(np.max(np.abs(shifted - base)))
