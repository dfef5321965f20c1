"""Exact finite-field workbench for rings without units and corings without counits."""

from .errors import AxiomError, BudgetExceeded, Infeasible, Report
from .exactla import AffineSet, QuotientSpace, Subspace, kernel, quotient_with_section, rref, solve_affine
from .algebras import (
    Algebra,
    Bimodule,
    BimoduleMap,
    HomSpace,
    ModuleOver,
    RingOver,
    Tensor,
    check_ring_over,
    hom_left,
    hom_right,
    map_on_tensor,
    tensor,
    tensor_over,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSet", "Algebra", "AxiomError", "Bimodule", "BimoduleMap", "BudgetExceeded", "HomSpace",
    "Infeasible", "ModuleOver", "QuotientSpace", "Report", "RingOver", "Subspace", "Tensor",
    "check_ring_over", "hom_left", "hom_right", "kernel", "map_on_tensor", "quotient_with_section",
    "rref", "solve_affine", "tensor", "tensor_over",
]
