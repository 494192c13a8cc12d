"""Arbitrary-precision real arithmetic and reusable summation primitives."""

from .kernels import (EM_ORDER, LogPowerKernel, PeriodicLattice,
                      alternating_lattice_sum, first_cut, periodic_tail,
                      split_lattice_sum, trapezoid_lattice_sum)
from .precision import (DEFAULT_PRECISION, DEFAULT_TOLERANCE, Precision,
                        SumReport, Tolerance, as_tolerance, to_mpf)
from .summation import (MAX_INNER_TERMS, MAX_OUTER_TERMS, RATIO_CAP, Accumulator,
                        inner_tolerance, sum_alternating, sum_geometric_outer,
                        sum_with_tail)

__all__ = [
    "Accumulator", "DEFAULT_PRECISION", "DEFAULT_TOLERANCE", "EM_ORDER",
    "LogPowerKernel", "MAX_INNER_TERMS", "MAX_OUTER_TERMS", "PeriodicLattice",
    "Precision", "RATIO_CAP", "SumReport", "Tolerance", "alternating_lattice_sum",
    "as_tolerance", "first_cut", "inner_tolerance", "periodic_tail",
    "split_lattice_sum", "sum_alternating", "sum_geometric_outer", "sum_with_tail",
    "to_mpf", "trapezoid_lattice_sum",
]
