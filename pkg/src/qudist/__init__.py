"""Distance from an orthogonal projection to the projections orthogonal to a hermitian involution."""

from .distance import (
    DistanceReport,
    distance_formula,
    eue_norm,
    full_report,
    minimizer_canonical,
    minimizer_cstar,
    walters_bound,
)
from .family import FamilyElement, WStarElement, build_family_element, solve_family
from .halmos import CanonicalForm, SpectralDatum, canonical_decomposition, eigenspaces_of_involution, reconstruct
from .matrices import (
    EigenSystem,
    apply_scalar_function,
    hermitian_eigendecomposition,
    operator_norm,
    orthonormal_null_basis,
)
from .oracle import InstanceSpec, general_family_3x3, lambda_eigenvalue, oracle_distance, random_instance
from .settings import DEFAULT, Tolerances

__version__ = "0.1.0"
