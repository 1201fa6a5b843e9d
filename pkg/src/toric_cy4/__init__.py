"""Exact-arithmetic invariants of Calabi-Yau fourfolds obtained by doubling
admissible pairs built from smooth toric Fano fourfolds."""

from .lattice_fan import (
    Fan,
    enumerate_cones,
    euler_characteristic_ambient,
    primitive_collections,
    validate_fan,
)
from .cox_grading import anticanonical_degree, chow_group, divisor_map
from .quotient_ring import (
    CohomClass,
    MultiPoly,
    RingContext,
    build_ring,
    buchberger,
    hilbert_ranks,
    integrate_top,
    multilinear_oracle,
    normal_form,
)
from .pipeline import DoublingReport, compute_report
from .cli import data_path, parse_fan_file

__version__ = "0.1.0"

__all__ = [
    "Fan",
    "validate_fan",
    "enumerate_cones",
    "primitive_collections",
    "euler_characteristic_ambient",
    "divisor_map",
    "chow_group",
    "anticanonical_degree",
    "MultiPoly",
    "CohomClass",
    "RingContext",
    "build_ring",
    "buchberger",
    "normal_form",
    "hilbert_ranks",
    "integrate_top",
    "multilinear_oracle",
    "DoublingReport",
    "compute_report",
    "parse_fan_file",
    "data_path",
]
