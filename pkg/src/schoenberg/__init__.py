"""Uniform Schoenberg spline operator and numerical checks of its lower bound."""

from .basis import (
    DomainError,
    GrevilleNodes,
    UniformMesh,
    bspline_value,
    bspline_value_reference,
    divided_difference,
    greville_nodes,
    make_mesh,
)
from .bounds import (
    BoundReport,
    beutel_upper_constant,
    delta,
    epsilon_nk,
    estimate_dk,
    iterate_d2_bound,
    lower_bound_constant,
    lower_bound_report,
    zeta_three_halves,
)
from .corpus import TestFunction, builtin_corpus
from .modulus import GridSpec, kfunctional_rhs, omega2, sup_norm_error
from .operator import (
    SplineFunction,
    backward_difference,
    collocation_matrix,
    derivative,
    eval_spline,
    iterate,
    schoenberg,
)

__version__ = "0.1.0"
