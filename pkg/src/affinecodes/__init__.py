"""Affine-invariant codes over finite fields and their group code structures."""

from .code import AffineInvariantCode, DefiningSet, code_basis, dimension, enumerate_affine_invariant, make_code
from .descriptors import GroupDescriptor, build_descriptor_group
from .finite_field import FieldElement, FieldSpec, make_field
from .groups import GroupFingerprint, fingerprint
from .oracle import (
    brute_paut_scan,
    centralizer_of_regular,
    enumerate_paut,
    left_and_twosided_groups,
    regular_subgroup_search,
)
from .semilinear import AffineElement, compute_params, paut_order
from .structures import (
    AlphaMap,
    ChiF,
    RegularGroup,
    build_regular_group,
    check_iyb,
    classify_chi_f,
    decompose_chi_f,
    estr_descriptor,
    is_twosided_alpha,
    make_chi_f,
    nonabelian_exists,
    nonabelian_witness,
)

__all__ = [
    "AffineElement",
    "AffineInvariantCode",
    "AlphaMap",
    "ChiF",
    "DefiningSet",
    "FieldElement",
    "FieldSpec",
    "GroupDescriptor",
    "GroupFingerprint",
    "RegularGroup",
    "brute_paut_scan",
    "build_descriptor_group",
    "build_regular_group",
    "centralizer_of_regular",
    "check_iyb",
    "classify_chi_f",
    "code_basis",
    "compute_params",
    "decompose_chi_f",
    "dimension",
    "enumerate_affine_invariant",
    "enumerate_paut",
    "estr_descriptor",
    "fingerprint",
    "is_twosided_alpha",
    "left_and_twosided_groups",
    "make_chi_f",
    "make_code",
    "make_field",
    "nonabelian_exists",
    "nonabelian_witness",
    "paut_order",
    "regular_subgroup_search",
]
