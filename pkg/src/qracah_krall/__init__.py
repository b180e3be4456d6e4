"""Exact q-Racah polynomials and their two-mass Krall modifications."""

from .exactnum import format_rational, parse_rational, qpochhammer
from .family import OrthogonalFamily
from .kernels import kernel_cd, kernel_sum
from .krall import KrallExistenceError, KrallFamily, MassConfig, eval_krall
from .lattice import Lattice, QBase
from .oracle import DiscreteMeasure, gram_schmidt_monic
from .qracah import QRacahFamily, RacahParams, Truncation
from .report import VerificationReport

__all__ = [
    "DiscreteMeasure",
    "KrallExistenceError",
    "KrallFamily",
    "Lattice",
    "MassConfig",
    "OrthogonalFamily",
    "QBase",
    "QRacahFamily",
    "RacahParams",
    "Truncation",
    "VerificationReport",
    "eval_krall",
    "format_rational",
    "gram_schmidt_monic",
    "kernel_cd",
    "kernel_sum",
    "parse_rational",
    "qpochhammer",
]
