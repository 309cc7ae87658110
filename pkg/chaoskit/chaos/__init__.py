"""Multiple Wiener-Ito integrals over C^d and the operators acting on them."""

from .expansion import ChaosExpansion, project, conj_expansion, stroock_expand
from .integral import (IsonormalSample, sample_isonormal, eval_integral,
                       eval_integral_batch, eval_expansion, stratonovich_eval,
                       kernel_to_poly, expansion_to_poly)
from .product import (product_pair, product_coefficient, expansion_product,
                      wick_product, wick_expansion, wick_ratio, wick_monomial_poly,
                      wick_monomial_check, WickCheckReport, independence_test,
                      IndependenceReport)
from .malliavin import malliavin_D, malliavin_Dbar, divergence, divergence_bar
from .ou import (OUParams, ou_L, ou_Lbar, ou_semigroup, mehler_estimate,
                 abs_moment_exact, hypercontractivity_margin)
from .humeyer import (StratonovichExpansion, hu_meyer_forward, hu_meyer_inverse,
                      stratonovich_poly)
