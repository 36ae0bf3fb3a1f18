"""Maximal translation surfaces in Lorentz-Minkowski 3-space.

Construction, sampling, export, and numerical verification of
zero-mean-curvature surfaces of the form X(s,t) = alpha(s) + beta(t).
"""

from .errors import (CausalityError, ConfigError, DegenerateCurveError, DomainError,
                     MinksurfError, ParameterError, PlanarCurveError,
                     PreconditionError, RegularityError, WrongFrameError)
from .lorentz import (Causality, MVec3, causality, cross, det3, euclidean_sq,
                      inner, lorentz_norm)
from .curves import (AnalyticCurve, ArcLengthCurve, CallableCurve, Curve,
                     CurveInvariants, FrenetFrame, PseudoNullFrame,
                     acceleration_causality, arc_length_reparam, curvature_at,
                     curve_invariants, derivative, frenet_frame,
                     planarity_residual, pseudo_null_frame)
from .named_curves import NAMED_CURVES, make_named_curve
from .ode import AffineArgRhs, OdeSolution, PlanarGraphCurve, solve_scalar_ode
from .surface import (CausalMap, GridSpec, SurfaceSample, TranslationSurface,
                      causal_map, mean_curvature_oracle, principal_summands)
from .families import (FAMILY_IDS, SCHERK_FEASIBILITY, SCHERK_TABLE, build_control,
                       build_family, build_helix_sum, build_pseudo_null_sum,
                       build_scherk_graph, build_scherk_type, build_t31, build_t32,
                       build_t34, default_grid)
from .verification import (DEFAULT_SUITE, SuiteResult, VerificationReport,
                           check_H_zero, check_frame, check_generator_translation,
                           check_curvature_ode, check_planarity_propagation, check_conserved_quantities,
                           run_suite)

__version__ = "0.1.0"
