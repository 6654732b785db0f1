"""Exact verification of invariant contact, Sasakian and Einstein structures on
tangent sphere bundles of compact rank-one symmetric spaces."""
from .contact import (
    AlmostContactStructure,
    build_structure,
    cone_check,
    contact_check,
    einstein_check,
    kcontact_check,
    nijenhuis,
    sasakian_check,
    three_sasakian_check,
)
from .geometry import BlockParams, InvariantMetric, MetricError, metric_from_blocks, metric_from_gram
from .kernels import BACKEND as KERNEL_BACKEND
from .models import ComplexProjective, RealProjective, SpaceKind, Sphere, build_model
from .report import CheckReport, ConsistencyError, OrderingError

__version__ = "0.1.0"

__all__ = [
    "AlmostContactStructure", "BlockParams", "CheckReport", "ComplexProjective",
    "ConsistencyError", "InvariantMetric", "KERNEL_BACKEND", "MetricError", "OrderingError",
    "RealProjective", "SpaceKind", "Sphere", "build_model", "build_structure", "cone_check",
    "contact_check", "einstein_check", "kcontact_check", "metric_from_blocks", "metric_from_gram",
    "nijenhuis", "sasakian_check", "three_sasakian_check",
]
