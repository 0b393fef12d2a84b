"""Non-algebraic quadrature domains in R^4: construction, verification and growth."""
from .conformal import (BoundaryCurve, CircleGrid, MapParams, boundary_curve, check_univalent,
                        curve_from_map, curve_from_taylor, decomposition_constants, eval_f,
                        eval_f_contour, eval_fprime, eval_g, eval_h, laurent_coeffs)
from .continuation import (CutGeometry, SheetState, carlson_pi, continue_along, ellipk_agm,
                           eval_F, eval_F_circle, eval_G, jump, jump_expected, ladder_tokens,
                           loop_path, run_loops, xi_form)
from .classical import (ClassicalShape, karp_quadrature_4d, limacon_quadrature_2d,
                        neumann_map, oval_residue_weights, oval_schwarz, pk_cardioid_map,
                        pk_schwarz, sphere_schwarz_potential)
from .moments import (HarmonicTestFamily, QuadratureData, complex_moment,
                      extract_quadrature_direct, extract_quadrature_laurent,
                      extract_quadrature_laurent_taylor, harmonic_moments_4d)
from .growth import (GrowthState, PKState, evolve, find_cusp_parameter, initial_state,
                     invert_parameters, pk_evolve, pk_state)
from .kernels import BACKEND

__version__ = "0.1.0"
