"""Bordered Floer computations over the torus algebra."""

from .algebra import Alg, DDCoeff, alg_mul, dd_mul, mul, parse_alg
from .direct_limit import (ColimitPresentation, DirectSystem, build_system, detect_periodicity,
                           knot_system, only_f1_survives, phi_step, stable_images, stable_part,
                           truncated_colimit)
from .f2 import f2_homology, f2_rank
from .knot_cfd import CfkMinus, builtin_knot, cfd_from_cfk, validate_cfk
from .library import builtin
from .morphisms import (DAMorphism, DDMorphism, DMorphism, are_homotopic, compose_d, is_chain_map,
                        mor_dd_basis, mor_dd_diff, mor_dd_homology)
from .reduction import cancel_edge, canonical_form, is_isomorphic, reduce
from .structures import (TypeAA, TypeD, TypeDA, TypeDD, coefficient_maps, da_to_dd_dual, dualize_d,
                         validate_type_d, validate_type_da, validate_type_dd)
from .tensor import box_da_d, box_da_da, box_damor_id, box_dd_aa, box_ddmor_aa

__version__ = "0.1.0"

__all__ = [
    "Alg", "DDCoeff", "alg_mul", "dd_mul", "mul", "parse_alg",
    "ColimitPresentation", "DirectSystem", "build_system", "detect_periodicity", "knot_system",
    "only_f1_survives", "phi_step", "stable_images", "stable_part", "truncated_colimit",
    "f2_homology", "f2_rank",
    "CfkMinus", "builtin_knot", "cfd_from_cfk", "validate_cfk",
    "builtin",
    "DAMorphism", "DDMorphism", "DMorphism", "are_homotopic", "compose_d", "is_chain_map",
    "mor_dd_basis", "mor_dd_diff", "mor_dd_homology",
    "cancel_edge", "canonical_form", "is_isomorphic", "reduce",
    "TypeAA", "TypeD", "TypeDA", "TypeDD", "coefficient_maps", "da_to_dd_dual", "dualize_d",
    "validate_type_d", "validate_type_da", "validate_type_dd",
    "box_da_d", "box_da_da", "box_damor_id", "box_dd_aa", "box_ddmor_aa",
]
