"""
Models package: exact scalars, exact matrices, errors and report payloads.
"""

from .exactfield import EISENSTEIN, RATIONALS, EisensteinScalar, Field
from .exactmatrix import ExactMatrix
from .reports import AxiomReport

__all__ = ['EISENSTEIN', 'RATIONALS', 'EisensteinScalar', 'Field', 'ExactMatrix', 'AxiomReport']
