"""Real and complex Hermite polynomials and their basis conversions."""

from .poly import (DEFAULT_DEGREE_CAP, HermitePoly, ZPoly, Z, ZBAR, RHO,
                   eval_J, poly_J, eval_H, gf_partial_sum, J_product_expand,
                   monomial_to_J, expansion_to_zpoly, rodrigues_poly,
                   eigen_operator, j_coefficient)
from .conversion import (ThetaMatrix, ConversionCoeffs, directional_to_complex,
                         complex_to_directional, hermite_pair_rep, complex_from_real,
                         real_from_complex, rotated_argument, default_thetas)
from .quadrature import gaussian_inner, gaussian_expect
