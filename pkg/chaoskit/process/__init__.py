"""Complex fBm and OU paths on time grids, the drift estimator and discrete Clark-Ocone."""

from .grid import GridSpec, check_hurst, phi_gram, toeplitz_row, increment_factor, gram_embed
from .fbm import HURST_MIN, HURST_MAX, ComplexPath, simulate_cfbm, simulate_cfbm_paths
from .ou import (DENSE_EVAL_LIMIT, OUModel, I11Result, OUExperiment, simulate_cou, drive_cou,
                 lse_estimate, ou_kernel, i11_statistic, lse_divergence_estimate,
                 run_ou_experiment, summarize_estimates)
from .clark_ocone import (ClarkOconeReport, clark_ocone_decompose, clark_ocone_residual,
                          cell_integral, terminal_square, increment_poly)
