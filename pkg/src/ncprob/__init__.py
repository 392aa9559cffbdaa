"""Exact moments, cumulants and transforms under classical, free, Boolean and monotone independence."""

from .analysis import LawDescriptor, cauchy_eval, quadrature_moments, weak_distance
from .cumulant_calculus import (
    bp_map,
    convolve_cumulants,
    cumulants_from_moments,
    dilate_cumulants,
    levy_pair_to_cumulants,
    moments_from_cumulants,
    power_cumulants,
)
from .errors import (
    AccuracyError,
    DomainError,
    InvalidInputError,
    InvalidMomentSequenceError,
    NcprobError,
    NotAMeasureError,
    OrderLimitError,
    SizeLimitError,
    UnsupportedOperationError,
)
from .measures import AtomicMeasure, FiniteMeasure, LevyPair
from .partitions import MonotonePartition, Partition
from .sequences import CumulantSeq, Flavor, MomentSeq
from .spectral import JacobiParams, jacobi_from_moments, moments_from_jacobi
from .surd import QuadraticSurd

__version__ = "0.1.0"
