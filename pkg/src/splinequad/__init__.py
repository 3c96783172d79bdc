"""Gaussian quadrature rules exact for C0/C1 polynomial splines on
arbitrary non-uniform partitions of a closed interval.

The construction needs no global equation solving: Dirac-coefficient
vectors march from the boundaries to one designated subinterval, each
subinterval's nodes are roots of a small semi-classical Jacobi polynomial
(carried in a Gegenbauer basis), and closed forms give the weights.
"""

from .maps import (
    JacobiCoefficientVector,
    PoleError,
    connection,
    connection_j,
    f_map,
    fixed_point,
    recursion,
    recursion_stretch,
    reflect_j,
    reflection,
    stretch,
)
from .orthopoly import GegenbauerSeries, gegenbauer_eval, real_roots, series_derivative, series_eval
from .rulegen import Partition, QuadratureRule, generate, scale_to_interval
from .semiclassical import (
    DiracVector,
    SingularityError,
    WeightSpec,
    inner_product,
    m_poly,
    m_poly_omega,
    m_weights,
    q_poly,
    q_weights,
)
from .verify import DefectReport, SplineSpace, bspline_eval, bspline_integral, defect, reproduce_table, verify_exactness

__version__ = "0.1.0"

__all__ = [
    "DiracVector",
    "DefectReport",
    "GegenbauerSeries",
    "JacobiCoefficientVector",
    "Partition",
    "PoleError",
    "QuadratureRule",
    "SingularityError",
    "SplineSpace",
    "WeightSpec",
    "bspline_eval",
    "bspline_integral",
    "connection",
    "connection_j",
    "defect",
    "f_map",
    "fixed_point",
    "gegenbauer_eval",
    "generate",
    "inner_product",
    "m_poly",
    "m_poly_omega",
    "m_weights",
    "q_poly",
    "q_weights",
    "real_roots",
    "recursion",
    "recursion_stretch",
    "reflect_j",
    "reflection",
    "reproduce_table",
    "scale_to_interval",
    "series_derivative",
    "series_eval",
    "stretch",
    "verify_exactness",
]
