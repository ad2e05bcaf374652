"""Exact arithmetic for Tribonacci and Tribonacci-Lucas numbers and matrices at every signed index."""

from trimat.errors import (
    ParseError, RoundingError, SingularMatrix, TrimatError, UnknownSequence, ZeroDenominator,
)
from trimat.exact import (
    BuiltinSeq, SequenceSpec, eval_sequence, sequence_slice, tribonacci, tribonacci_lucas,
)
from trimat.matrices import (
    K0, Mat3, adjugate_inverse, determinant, k_matrix, kk_product_expansion, mat_mul, mat_pow,
    t_matrix,
)
from trimat.analytic import (
    binet_coefficients, binet_k, binet_matrix, binet_t, consecutive_ratio, tribonacci_roots,
)
from trimat.genfunc import GFKind, builtin_gf, gf_coefficients, matrix_gf_coefficients
from trimat.sums import SumQuery, sum_closed, sum_direct, sum_matrix_form
from trimat.identities import (
    SeqEnv, builtin_corpus, check_identity, conjecture_probe, eval_expr, parse_identity, render,
)

__version__ = "0.1.0"
