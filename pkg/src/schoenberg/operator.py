"""The variation-diminishing Schoenberg operator, its iterates and derivatives."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import (
    DomainError,
    UniformMesh,
    _check_x,
    _greville,
    basis_matrix,
    bspline_value,
    nonzero_basis,
)

Function = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class SplineFunction:
    """sum_j c_j N_{j,degree} on ``mesh``; coefficients indexed -degree..n-1."""

    mesh: UniformMesh
    degree: int
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.shape != (self.mesh.n + self.degree,):
            raise ValueError(
                f"expected {self.mesh.n + self.degree} coefficients, got shape {c.shape}"
            )
        object.__setattr__(self, "coefficients", c)

    def __call__(self, x):
        return eval_spline(self, x)

    def coef(self, j: int) -> float:
        return float(self.coefficients[j + self.degree])


def _fvalues(f, x: np.ndarray) -> np.ndarray:
    # TestFunction objects and plain callables are both accepted.
    fn = getattr(f, "evaluator", f)
    return np.asarray(np.broadcast_to(fn(x), x.shape), dtype=float)


def schoenberg(mesh: UniformMesh, f) -> SplineFunction:
    """S_{n,k} f: sample f at the degree-k Greville nodes."""
    return SplineFunction(mesh, mesh.k, _fvalues(f, _greville(mesh, mesh.k)))


def eval_spline(s: SplineFunction, x):
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(_check_x(x))
    mu, vals = nonzero_basis(s.mesh, s.degree, x)
    idx = mu[:, None] + np.arange(s.degree + 1)[None, :]
    out = np.sum(vals * s.coefficients[idx], axis=1)
    return float(out[0]) if scalar else out


def collocation_matrix(mesh: UniformMesh) -> np.ndarray:
    """A[i + k, j + k] = N_{j,k}(xi_{i,k}); row-stochastic and banded."""
    return basis_matrix(mesh, mesh.k, _greville(mesh, mesh.k))


def iterate(mesh: UniformMesh, f, m: int, A: np.ndarray | None = None) -> SplineFunction:
    """S^m f, coefficients A^{m-1} f(xi).  A may be passed to avoid rebuilding it."""
    if m < 1:
        raise DomainError(f"iterate count m must be >= 1, got {m}")
    s = schoenberg(mesh, f)
    if m == 1:
        return s
    if A is None:
        A = collocation_matrix(mesh)
    c = s.coefficients
    for _ in range(m - 1):
        c = A @ c
    return SplineFunction(mesh, mesh.k, c)


def iterate_naive(mesh: UniformMesh, f, m: int) -> SplineFunction:
    """S^m f by applying the operator to the previous spline m times."""
    s = schoenberg(mesh, f)
    for _ in range(m - 1):
        s = schoenberg(mesh, s)
    return s


def iterate_nested_sum(mesh: UniformMesh, f, m: int, x: float) -> float:
    """S^m f(x) from the explicit m-fold index sum.

    Cost is (n + k)^m basis evaluations; only for tiny instances.
    """
    k = mesh.k
    idx = range(-k, mesh.n)
    xi = {j: float(v) for j, v in zip(idx, _greville(mesh, k))}
    fx = {j: float(_fvalues(f, np.array([xi[j]]))[0]) for j in idx}
    N = {(j, i): bspline_value(mesh, k, j, xi[i]) for j in idx for i in idx}
    Nx = {j: bspline_value(mesh, k, j, x) for j in idx}
    total = 0.0
    for js in itertools.product(idx, repeat=m):
        term = fx[js[0]] * Nx[js[-1]]
        for a, b in zip(js, js[1:]):
            term *= N[(a, b)]
            if term == 0.0:
                break
        total += term
    return total


def backward_difference(mesh: UniformMesh, l: int, values) -> np.ndarray:
    """Delta_l: (v_j - v_{j-1}) / (xi_{j,l} - xi_{j-1,l}) for j = 1-l .. n-1.

    ``values`` holds v_{-l}, ..., v_{n-1}.
    """
    v = np.asarray(values, dtype=float)
    if v.shape != (mesh.n + l,):
        raise ValueError(f"expected {mesh.n + l} values, got shape {v.shape}")
    dxi = np.diff(_greville(mesh, l))
    if np.any(dxi <= 0.0):
        raise RuntimeError("zero Greville spacing in backward difference")
    return np.diff(v) / dxi


def derivative(s: SplineFunction) -> SplineFunction:
    """D s as a spline of degree s.degree - 1 on the same mesh."""
    if s.degree < 2:
        raise DomainError(
            f"derivative needs degree >= 2 to stay a continuous spline, got {s.degree}"
        )
    return SplineFunction(s.mesh, s.degree - 1, backward_difference(s.mesh, s.degree, s.coefficients))


def second_derivative(s: SplineFunction) -> SplineFunction:
    return derivative(derivative(s))
