"""Exact arithmetic for finite-dimensional n-Hom-Lie color algebras.

Algebras are stored by structure constants on canonical (weakly increasing)
index tuples over the rationals; every other ordering is recovered with its
Koszul sign.
"""

from .algebra import (
    ColorSpace, HomColorAlgebra, HomogeneousMap, NAryBracket, NormalizationError, PreconditionError, Verdict,
    bracket_basis, bracket_eval, check_grading, check_hom_jacobi, check_morphism, check_multiplicative, classify,
    hom_jacobi_residual, is_hom_lie_color, koszul_normalize, load_normalize, verify,
)
from .constructions import (
    CommAssocAlgebra, averaging_hom_twist, averaging_twist_double, averaging_twist_single, check_averaging,
    check_semi_morphism, reduce_by_element, reduce_by_elements, semimorphism_twist, tensor_product, twist_power,
    untwist, yau_twist,
)
from .derivations import (
    ClosureError, assoc_centroid, check_map_kind, check_tensor_centroid, commutator, compute_gder, compute_qder,
    compute_space, der_algebra, inner_derivation, omega_twist,
)
from .documents import DocumentError, load_algebra, save_algebra
from .exactla import Matrix, Subspace
from .grading import Bicharacter, Degree, GradingGroup
from .hommodules import HomModule, ModuleActions, check_module, direct_sum_modules, self_module, semidirect_sum, twist_actions
from .structure import (
    GradedSubspace, bracket_span, center, centralizer, check_hom_ideal, check_hom_subalgebra, derived_sequence,
    descending_central_sequence,
)

__version__ = "0.1.0"
