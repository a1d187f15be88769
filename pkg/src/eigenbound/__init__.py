"""Certified bounds for principal Dirichlet eigenvalues of degenerate and
fully nonlinear elliptic operators.

The lower bounds come from increasing radial barriers certified pointwise to
satisfy L phi + lambda phi <= 0; they depend on the domain only through its
inradius R (and, for the annular route, the inradius of dilations).  Upper
bounds come from inscribed-ball eigenvalues.  Independent finite-difference
and ODE-shooting oracles cross-validate every closed form.
"""

from .bounds import (BoundReport, InradiusOnly, PScanRow, full_report,
                     lower_bound, p_limit_scan, rfk_bound, upper_bound)
from .exceptions import GeometryError, NumericError, UnsupportedError
from .geometry import (Ball, Box, Cylinder, GeometrySummary, LShape, Polygon,
                       Stadium, UShape, dilated_inradius, distance_to_complement,
                       inradius, is_convex, solve_delta_for_ratio, summarize,
                       volume)
from .oracle import (GridEigenResult, bessel_zero_scan, fd_laplacian_lambda1,
                     radial_shoot_ball_lambda1)
from .radial import (OperatorSpec, RadialProfile, ResidualReport,
                     build_theorem1_profile, build_theorem2_profile, evaluate,
                     radial_ode_coefficients, residual, verify_supersolution)

__version__ = "0.1.0"

__all__ = [
    "Ball", "BoundReport", "Box", "Cylinder", "GeometryError",
    "GeometrySummary", "GridEigenResult", "InradiusOnly", "LShape",
    "NumericError", "OperatorSpec", "PScanRow", "Polygon", "RadialProfile",
    "ResidualReport", "Stadium", "UShape", "UnsupportedError",
    "bessel_zero_scan", "build_theorem1_profile", "build_theorem2_profile",
    "dilated_inradius", "distance_to_complement", "evaluate",
    "fd_laplacian_lambda1", "full_report", "inradius", "is_convex",
    "lower_bound", "p_limit_scan", "radial_ode_coefficients",
    "radial_shoot_ball_lambda1", "residual", "rfk_bound",
    "solve_delta_for_ratio", "summarize", "upper_bound", "verify_supersolution",
    "volume",
]
