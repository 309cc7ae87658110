"""Exact polynomial oracle: algebra, Wirtinger derivatives, Gaussian expectations."""

from .exact import (Exact, exact, to_complex, conj, is_zero, real_fraction, imag_fraction,
                    inverse_int, ZERO, ONE)
from .wickpoly import WickPoly, compose, coordinate_polys, random_poly
from .gaussian import (expect_gaussian, expect_partial, expect_product,
                       expect_abs2, mc_expectation)
