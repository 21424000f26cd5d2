"""Exact computations with tensor rings of nilpotent bimodules over finite-dimensional algebras."""

__version__ = "0.1.0"

from .algebra import (Algebra, Quiver, build_path_algebra, cyclic_nakayama, direct_product_algebra,
                      opposite_algebra)
from .exactla import FieldSpec
from .fdmod import Bimodule, FdModule, ModHom, hom_basis, k_dual, outer_tensor, tensor_over_algebra
from .tring import (CopairModule, PairModule, TensorPowers, build_tensor_ring, classify_over_t, coind, ind,
                    tensor_powers)
from .verdict import DimBound, Verdict

__all__ = [
    "Algebra", "Bimodule", "CopairModule", "DimBound", "FdModule", "FieldSpec", "ModHom", "PairModule",
    "Quiver", "TensorPowers", "Verdict", "build_path_algebra", "build_tensor_ring", "classify_over_t",
    "coind", "cyclic_nakayama", "direct_product_algebra", "hom_basis", "ind", "k_dual", "opposite_algebra",
    "outer_tensor", "tensor_over_algebra", "tensor_powers",
]
