"""Conditional optimal quantization of the uniform measure on a regular polygon's boundary.

The polygon's vertices always belong to the quantizer; the remaining points
are free, or restricted to the circumcircle, the incircle or a diagonal of the
hexagon.
"""
from .circle_constrained import (circumcircle_breakpoints, circumcircle_group_solve, circumcircle_optimal_set,
                                 incircle_group_solve, incircle_optimal_set)
from .diagonal_constrained import (long_diagonal_group, long_diagonal_optimal_set, short_diagonal_optimal_set,
                                   triangle_q_solve)
from .errors import (DegenerateBisector, InstanceTooLarge, InvalidArgument, InvalidInterval, PolyquantError,
                     SolverFailure, TooFewPoints, UnsupportedConstraint)
from .geometry import (Constraint, RegularPolygon, RigidMap, Segment, constraint_curve, isometry_u, make_polygon,
                       reflection_f, rotation_map)
from .measure import (QuantizerSet, UniformMeasure, boundary_measure, distortion, restricted_distortion,
                      segment_distortion_exact, triangle_measure, voronoi_breakpoint_on_segment)
from .oracle import OracleConfig, OracleVerdict, exhaustive_allocation_check, global_minimize, sampled_distortion, verify
from .regimes import solve
from .results import SolveReport
from .unconstrained import balanced_allocations, dimension_and_coefficient, optimal_set, quantization_coefficient

__version__ = "0.1.0"
