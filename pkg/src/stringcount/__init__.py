"""Exact counting of q=0 Bethe strings, the Q-system and weight multiplicities."""

from .algebra import AlgebraData, AlgebraLabel, g_kernel, load_algebra, parse_label
from .qsystem import canonical_q, q_system_residual, r_series
from .series import TruncSeries
from .strings import SparseArray, r_number

__all__ = [
    "AlgebraData",
    "AlgebraLabel",
    "SparseArray",
    "TruncSeries",
    "canonical_q",
    "g_kernel",
    "load_algebra",
    "parse_label",
    "q_system_residual",
    "r_number",
    "r_series",
]

__version__ = "0.1.0"
