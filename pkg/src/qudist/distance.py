"""Exact distance from ``e`` to the projections ``q`` in the algebra of ``(e, u)`` with ``quq = 0``.

With ``b = ||eue||``::

    d = 1                                   if ran(e) meets an eigenspace of u
    d = sqrt((1 - sqrt(1 - b^2)) / 2)       otherwise

The minimizer is ``q0 = (1/2) [[I, I], [I, I]]`` on the generic part, which
can also be written as ``(1/2)(S + z |z|^-1)`` with ``z = (e - ueu)/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CaseOne, ConsistencyError, NormTooLarge, OutOfRange
from .family import FamilyElement, build_family_element
from .halmos import CanonicalForm, canonical_decomposition, check_involution, check_projection
from .matrices import apply_scalar_function, dagger, hermitian_eigendecomposition, operator_norm
from .settings import DEFAULT, Tolerances

# Hypothesis threshold of the earlier estimate ||e - q|| <= b/2 + 4 b^2.
WALTERS_XI = 0.455


def walters_useful_limit() -> float:
    """Positive root of ``8x^2 + x - 2``, where the earlier estimate reaches 1."""
    return (-1.0 + math.sqrt(65.0)) / 16.0


def eue_norm(e, u, cf: CanonicalForm | None = None, settings: Tolerances = DEFAULT) -> float:
    """``||e u e||``; cross-checked against ``max |2t - 1|`` over the spectrum of ``H``
    when a Case 2 canonical form is supplied."""
    e = check_projection(e, settings.input_tol)
    u = check_involution(u, settings.input_tol)
    b = operator_norm(e @ u @ e)
    if cf is not None and not cf.case_one:
        spectral = float(np.max(np.abs(2 * cf.distinct_values - 1))) if cf.h_spectrum else 0.0
        if abs(spectral - b) > 1e-10:
            raise ConsistencyError(f"||eue|| = {b!r} but max|2t-1| = {spectral!r}")
    return b


def distance_formula(b: float, case_one: bool) -> float:
    if b < -1e-12 or b > 1 + 1e-12:
        raise OutOfRange(f"||eue|| must lie in [0, 1], got {b!r}")
    if case_one:
        return 1.0
    b = min(max(b, 0.0), 1.0)
    # same value as sqrt((1 - sqrt(1 - b^2)) / 2) without the cancellation at small b
    return b / math.sqrt(2.0 * (1.0 + math.sqrt(1.0 - b * b)))


def walters_bound(b: float) -> float | None:
    if b < 0:
        raise OutOfRange(f"||eue|| must be nonnegative, got {b!r}")
    if b >= WALTERS_XI:
        return None
    return 0.5 * b + 4.0 * b * b


def minimizer_canonical(cf: CanonicalForm, settings: Tolerances = DEFAULT) -> np.ndarray:
    if cf.case_one:
        raise CaseOne("ran(e) meets an eigenspace of u; there is no Case 2 minimizer")
    return build_family_element(cf, FamilyElement.constant(len(cf.h_spectrum)), settings)


def minimizer_cstar(e, u, settings: Tolerances = DEFAULT) -> np.ndarray:
    """``q0 = (1/2)(S + z (z^2)^(-1/2))`` with ``z = (e - u e u)/2``.

    ``S`` is the support projection of ``z^2`` and the inverse square root is
    taken on that support; ``z`` vanishes on ker(e) intersected with either
    eigenspace of ``u``, where ``q0`` must vanish too.
    """
    e = check_projection(e, settings.input_tol)
    u = check_involution(u, settings.input_tol)
    b = operator_norm(e @ u @ e)
    if b > 1.0 - settings.boundary_margin:
        raise NormTooLarge(f"||eue|| = {b:.12g} exceeds 1 - {settings.boundary_margin:g}")
    z = 0.5 * (e - u @ e @ dagger(u))
    z = 0.5 * (z + dagger(z))
    z2 = z @ z
    sq = hermitian_eigendecomposition(0.5 * (z2 + dagger(z2)), settings=settings)
    n = e.shape[0]
    # generic eigenvalues of z^2 are t(1-t) >= (1 - b^2)/4; everything else is round-off
    threshold = settings.rank_tol * n * max(operator_norm(z2), 1.0)

    def inv_sqrt(x):
        return 1.0 / math.sqrt(x) if x > threshold else 0.0

    def support(x):
        return 1.0 if x > threshold else 0.0

    q = 0.5 * (apply_scalar_function(sq, support, settings.cluster_tol)
               + z @ apply_scalar_function(sq, inv_sqrt, settings.cluster_tol))
    return 0.5 * (q + dagger(q))


@dataclass(frozen=True)
class DistanceReport:
    b: float
    case_one: bool
    d: float
    q0: np.ndarray | None
    q0_cstar: np.ndarray | None
    witness: np.ndarray
    witness_unique: bool | None
    dims: tuple[int, int, int, int, int]
    spectrum: tuple[tuple[float, int], ...]
    residual_projection: float
    residual_orthogonality: float
    residual_distance: float
    residual_routes: float | None

    @property
    def case(self) -> int:
        return 1 if self.case_one else 2


def _residuals(e, u, q, d) -> tuple[float, float, float]:
    proj = max(operator_norm(q @ q - q), operator_norm(q - dagger(q)))
    orth = operator_norm(q @ u @ q)
    dist = abs(operator_norm(e - q) - d)
    return proj, orth, dist


def full_report(e, u, settings: Tolerances = DEFAULT) -> DistanceReport:
    """Decompose, classify, evaluate the distance and build the minimizer with residuals.

    In Case 1 every admissible ``q`` sits at distance 1, so ``q = 0`` is
    returned as a non-unique witness and ``q0`` is ``None``. In Case 2 the
    witness is ``q0`` and no uniqueness claim is made (``witness_unique`` is ``None``).
    """
    cf = canonical_decomposition(e, u, settings)
    e = np.asarray(e, dtype=np.complex128)
    u = np.asarray(u, dtype=np.complex128)
    b = eue_norm(e, u, cf, settings)
    d = distance_formula(b, cf.case_one)
    spectrum = tuple((sd.value, sd.multiplicity) for sd in cf.h_spectrum)

    q0 = q0_cstar = None
    routes = None
    if cf.case_one:
        witness = np.zeros_like(e)
        unique = False
    else:
        q0 = minimizer_canonical(cf, settings)
        witness = q0
        unique = None
        if b <= 1.0 - settings.boundary_margin:
            q0_cstar = minimizer_cstar(e, u, settings)
            routes = operator_norm(q0 - q0_cstar)
    proj, orth, dist = _residuals(e, u, witness, d)
    return DistanceReport(b, cf.case_one, d, q0, q0_cstar, witness, unique, cf.dims, spectrum,
                          proj, orth, dist, routes)
