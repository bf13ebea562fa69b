"""Sequence constructions that break 0-1 laws, and their validators."""

from .boundary import BoundaryLayout, SumFreeSupport, validate_boundary
from .nice import NiceSupport, validate_nice
from .plan_store import PlanStore, load_plan_file
from .proper import make_proper_base, proper_base_builder, validate_proper
from .steps import extend_neg, extend_pos
from .variants import (
    VARIANTS,
    build_oscillator,
    build_pendant_witness,
    evaluate_deterministic,
)

__all__ = [
    "BoundaryLayout",
    "NiceSupport",
    "PlanStore",
    "SumFreeSupport",
    "VARIANTS",
    "build_oscillator",
    "build_pendant_witness",
    "evaluate_deterministic",
    "extend_neg",
    "extend_pos",
    "load_plan_file",
    "make_proper_base",
    "proper_base_builder",
    "validate_boundary",
    "validate_nice",
    "validate_proper",
]
