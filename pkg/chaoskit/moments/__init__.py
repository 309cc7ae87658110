"""Fourth moments of single chaoses and the fourth-moment-theorem diagnostic."""

from .aux import AuxKernels, aux_kernels
from .fourth import (GAP_ROUTES, GapReport, DerivativeVariances, SandwichReport,
                     fm_gap, fm_gap_routes, gap_direct, gap_via_psi, gap_via_phi,
                     gap_via_derivative, fourth_moment_kernel, fourth_moment_via_derivatives,
                     variance_formulas, variance_oracle, fmt_sandwich, contraction_norms)
from .diagnostic import FMTRow, fmt_diagnostic, fmt_row, gaussian_limit_sequence
