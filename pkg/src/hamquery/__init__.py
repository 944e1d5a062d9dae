"""Uniquely-identifying query matrices for Hamming and overlap oracles."""

from .bitmat import BinaryMatrix, matvec
from .construct import Construction, build_q1, extend, load_construction, save_construction
from .decode import decode, decode_hamming
from .oracle import OracleSession
from .verify import is_ui_exact, is_ui_random, is_ui_subsets

__all__ = [
    "BinaryMatrix",
    "Construction",
    "OracleSession",
    "build_q1",
    "decode",
    "decode_hamming",
    "extend",
    "is_ui_exact",
    "is_ui_random",
    "is_ui_subsets",
    "load_construction",
    "matvec",
    "save_construction",
]
