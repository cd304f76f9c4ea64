"""Weighted harmonic and holomorphic Bergman kernel diagonals on the ball,
full space, upper half-space, and Siegel domain, with verification of their
high-power asymptotic laws against series, quadrature, and closed forms."""

__version__ = "0.1.0"

from ._backend import BACKEND_NAME
from .weights import (
    RadialWeightProfile,
    VerticalWeightProfile,
    check_defining,
    check_radial_psh,
    check_vertical_hypotheses,
    eval_with_derivatives,
    parse_weight,
    render_weight,
)
from .quadrature import (
    QuadratureSpec,
    MomentTable,
    integrate_adaptive,
    laplace_transform_rho,
    moment,
    moment_table,
)

__all__ = [
    "BACKEND_NAME",
    "RadialWeightProfile",
    "VerticalWeightProfile",
    "check_defining",
    "check_radial_psh",
    "check_vertical_hypotheses",
    "eval_with_derivatives",
    "parse_weight",
    "render_weight",
    "QuadratureSpec",
    "MomentTable",
    "integrate_adaptive",
    "laplace_transform_rho",
    "moment",
    "moment_table",
]
