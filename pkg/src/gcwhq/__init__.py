"""Exact verification of group-cograded weak Hopf quasigroups and their
Yetter–Drinfeld modules, by structure constants over the rationals."""
from .exactlin import DimensionError, Mat, NotInvertible, Wiring, factor_permute, image_basis, invert, kron, rank
from .groups import FiniteGroup, make_cyclic, make_from_table, make_symmetric
from .report import CheckReport, Verdict
from .whq import WhqData, check_base_whq, group_algebra, groupoid_algebra
from .core import GcwhqData, check_graded_axioms, check_derived_identities, check_gcwhq, counital_maps, sweedler
from .crossed import CrossedGcwhq, build_barHG, build_HG, build_tildeHG, certify, check_crossing, mirror
from .yd import (YdModuleData, braiding, braiding_inverse, check_braided_crossed_laws, check_yd_module,
                 check_yd_weak_quasimodule, conjugate_yd, qybe_map, tensor_yd, yd_adjoint)

__version__ = "0.1.0"

__all__ = [
    "DimensionError", "Mat", "NotInvertible", "Wiring", "factor_permute", "image_basis", "invert", "kron", "rank",
    "FiniteGroup", "make_cyclic", "make_from_table", "make_symmetric",
    "CheckReport", "Verdict",
    "WhqData", "check_base_whq", "group_algebra", "groupoid_algebra",
    "GcwhqData", "check_graded_axioms", "check_derived_identities", "check_gcwhq", "counital_maps", "sweedler",
    "CrossedGcwhq", "build_barHG", "build_HG", "build_tildeHG", "certify", "check_crossing", "mirror",
    "YdModuleData", "braiding", "braiding_inverse", "check_braided_crossed_laws", "check_yd_module",
    "check_yd_weak_quasimodule", "conjugate_yd", "qybe_map", "tensor_yd", "yd_adjoint",
]
