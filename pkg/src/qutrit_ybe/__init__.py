"""Qutrit Yang-Baxter R-matrix, its Hamiltonian, and Berry phases."""
from .algebra import HeckeParams, build_M, su2_realization, su3_realization
from .dynamics import HamiltonianSpec, block_diagonalize, build_H, o_matrix, subsystem_block
from .errors import (
    BadLabel, BadShape, BadSubsystem, BlockLeakage, DegenerateSpectrum, NotConverged,
    NotHermitian, NotNormalized, QutritYBEError, ZeroFrequency,
)
from .geometric import BerryResult, LoopSpec, berry_analytic, berry_numeric
from .yangbaxter import RParams, build_R, negativity, negativity_closed

__version__ = "0.1.0"

__all__ = [
    "HeckeParams", "build_M", "su2_realization", "su3_realization",
    "HamiltonianSpec", "block_diagonalize", "build_H", "o_matrix", "subsystem_block",
    "BadLabel", "BadShape", "BadSubsystem", "BlockLeakage", "DegenerateSpectrum", "NotConverged",
    "NotHermitian", "NotNormalized", "QutritYBEError", "ZeroFrequency",
    "BerryResult", "LoopSpec", "berry_analytic", "berry_numeric",
    "RParams", "build_R", "negativity", "negativity_closed",
]
