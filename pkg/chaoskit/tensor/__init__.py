"""Symmetric tensor kernels and their contraction algebra."""

from .kernel import (Kernel, symmetrize, reversed_conjugate, inner, norm,
                     random_kernel, identity_kernel, tensor_power)
from .contraction import contract, contract_sym, tensor_product, trace_k
