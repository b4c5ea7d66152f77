"""Exact-arithmetic checks for parabolic Dolbeault complexes.

Monodromy weight filtrations, windowed nearby-cycle modules at a
normal crossing, Koszul strands, L2 parabolic complexes in charts,
and nodal-fiber pushforward audits, all over exact rationals.
"""

from .complexes import (build_absolute_complex, build_relative_complex,
                        ses_relative_absolute)
from .linalg import Matrix, Q, QuotientPresentation, Subspace
from .modules import PresentedModule, PsiModule, tensor_formula_module
from .parabolic import DivisorModel, ParabolicChart
from .pushforward import (FamilyFixture, curve_cohomology,
                          direct_image_table, fiber_hypercohomology,
                          gauss_manin_theta)
from .vnearby import (GraphModule, build_comparison_map, koszul_strand,
                      nearby_cycles, verify_qis)
from .weights import NilpotentEndo, WeightFiltration, weight_filtration

__version__ = "0.1.0"

__all__ = [
    "Matrix", "Q", "Subspace", "QuotientPresentation",
    "NilpotentEndo", "WeightFiltration", "weight_filtration",
    "PsiModule", "PresentedModule", "tensor_formula_module",
    "GraphModule", "nearby_cycles", "koszul_strand",
    "build_comparison_map", "verify_qis",
    "DivisorModel", "ParabolicChart",
    "build_relative_complex", "build_absolute_complex",
    "ses_relative_absolute",
    "FamilyFixture", "curve_cohomology", "fiber_hypercohomology",
    "direct_image_table", "gauss_manin_theta",
    "__version__",
]
