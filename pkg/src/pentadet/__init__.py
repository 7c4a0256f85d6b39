"""Determinants of k,2k-pentadiagonal matrices by several independent routes."""
from .decomposition import BlockSet, det_via_blocks, sigma, split_blocks
from .dispatch import DetResult, compute, run_verify
from .errors import PivotZero, RangeError, SchemaError, ShapeError
from .model import (
    DenseMatrix, ImperfectSpec, PentaSpec, Shape, ToeplitzSpec,
    assemble_dense, lower_to_general, validate_shape,
)
from .oracle import LogDet, det_exact_dense, det_float_dense
from .poly import MultiPoly, reference_pn, symbolic_d_polynomial, verify_pn
from .reduction import (
    IterationState, det_q3_general, det_theorem1, det_via_reduction, iterate_diagonals,
)
from .toeplitz import (
    DSequence, d_sequence, det_imperfect, det_q3_imperfect_closed, det_q3_toeplitz_closed,
    det_toeplitz, imperfect_sequence,
)

__version__ = "0.1.0"
