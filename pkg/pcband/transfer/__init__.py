"""
Transfer matrices.

Differential transfer matrices for graded media (dtmm) and exact jump-matrix
products for layer stacks (stratified).
"""

from pcband.transfer.dtmm import (
    IntervalMatrix,
    TransferContext,
    interval_matrix,
    m12_by_substitution,
    m_symmetric,
    m_symmetric_tm,
    period_transfer_general,
    transfer_matrix,
    u_matrix,
    v_matrix,
)
from pcband.transfer.stratified import LayerStack, jump_matrix, period_transfer, staircase

__all__ = [
    "TransferContext",
    "IntervalMatrix",
    "u_matrix",
    "v_matrix",
    "interval_matrix",
    "transfer_matrix",
    "period_transfer_general",
    "m_symmetric",
    "m_symmetric_tm",
    "m12_by_substitution",
    "LayerStack",
    "jump_matrix",
    "period_transfer",
    "staircase",
]
