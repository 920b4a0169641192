"""Numerical toolkit for the half-line operator family -y'' + c x^a y:
spectra via complex shooting, Stokes-graph geometry of the associated
quadratic potentials, branch-tracked action integrals, and the
transcendental threshold angle bounding the completeness sector of the
a = 2/3 operator.
"""

__version__ = "0.1.0"

from .numerics import Bracket, Contour, find_root_complex, find_root_real, gamma_fn, gauss_legendre, integrate_ode_contour
from .actions import (
    PotentialQuadratic,
    action,
    action_with_phase,
    half_line_integral_split,
    segment_integral_closed,
    sqrt_branch_track,
)
from .stokes import (
    build_stokes_graph,
    numerical_ray_extremum,
    ray_crossing_report,
    ray_extremum,
    trace_stokes_curve,
    turning_points,
)
from .threshold import (
    completeness_verdict,
    f_theta,
    f_theta_routes,
    solve_theta0,
    verify_threshold_bounds,
)
from .spectrum import (
    OperatorSpec,
    SampledFunction,
    apply_inverse,
    bs_constant,
    complex_spectrum,
    eigenfunction,
    homogeneous_pair,
    real_spectrum,
    s_numbers,
    spectral_det,
    t_asymptotic,
)

__all__ = [
    "Bracket",
    "Contour",
    "OperatorSpec",
    "PotentialQuadratic",
    "SampledFunction",
    "action",
    "action_with_phase",
    "apply_inverse",
    "bs_constant",
    "build_stokes_graph",
    "completeness_verdict",
    "complex_spectrum",
    "eigenfunction",
    "f_theta",
    "f_theta_routes",
    "find_root_complex",
    "find_root_real",
    "gamma_fn",
    "gauss_legendre",
    "half_line_integral_split",
    "homogeneous_pair",
    "integrate_ode_contour",
    "numerical_ray_extremum",
    "ray_crossing_report",
    "ray_extremum",
    "real_spectrum",
    "s_numbers",
    "segment_integral_closed",
    "solve_theta0",
    "spectral_det",
    "sqrt_branch_track",
    "t_asymptotic",
    "trace_stokes_curve",
    "turning_points",
    "verify_threshold_bounds",
]
