"""Brute-force checks that share no code path with the closed-form distance.

``oracle_distance`` enumerates every ``chi`` pattern and, at each spectral
point, a grid of phase angles, scoring each 2x2 block ``Phi(t)`` by a numeric
eigenvalue computation. ``random_instance`` builds ``(e, u)`` pairs with a
known canonical form by conjugating the block model with a seeded unitary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import BadSpec, CaseOne, ConsistencyError, NotNormalized, OutOfRange, TooManyClusters
from .family import TWO_PI, FamilyElement, build_family_element, solve_family
from .halmos import CanonicalForm, SpectralDatum, reconstruct
from .matrices import dagger, operator_norm
from .settings import DEFAULT, Tolerances


def phi_block(t: float, chi: int, angle: float) -> np.ndarray:
    """``e - q`` restricted to one spectral point ``t`` of the generic part."""
    w = complex(math.cos(angle), math.sin(angle))
    r = math.sqrt(t * (1.0 - t))
    return np.array([[t - 0.5 * chi, r - 0.5 * chi * w],
                     [r - 0.5 * chi * w.conjugate(), 1.0 - t - 0.5 * chi]])


def lambda_numeric(t: float, chi: int, angle: float) -> float:
    """Largest eigenvalue magnitude of :func:`phi_block`, by ``eigvalsh``."""
    return float(np.max(np.abs(np.linalg.eigvalsh(phi_block(t, chi, angle)))))


def lambda_eigenvalue(t: float, chi_val: int, omega_angle: float, check: bool = True) -> float:
    """Closed-form positive eigenvalue of ``Phi_{chi,w}(t)``: 1 if ``chi = 0`` else
    ``sqrt(1/2 - sqrt(t(1-t)) cos(angle))``."""
    if not 0.0 < t < 1.0:
        raise OutOfRange(f"t must lie in (0, 1), got {t!r}")
    if chi_val == 0:
        value = 1.0
    else:
        value = math.sqrt(max(0.5 - math.sqrt(t * (1.0 - t)) * math.cos(omega_angle), 0.0))
    if check:
        numeric = lambda_numeric(t, chi_val, omega_angle)
        if abs(numeric - value) > 1e-10:
            raise ConsistencyError(f"closed form {value!r} vs numeric {numeric!r} at t={t}")
    return value


class OracleResult(NamedTuple):
    min_value: float
    argmin: FamilyElement
    assembled_value: float


def _pointwise_lambda(t: float, angles: np.ndarray) -> np.ndarray:
    # numeric spectral radius of phi_block(t, 1, angle) for every candidate angle at once
    w = np.exp(1j * angles)
    r = math.sqrt(t * (1.0 - t))
    blocks = np.empty((angles.size, 2, 2), dtype=np.complex128)
    blocks[:, 0, 0] = t - 0.5
    blocks[:, 1, 1] = 0.5 - t
    blocks[:, 0, 1] = r - 0.5 * w
    blocks[:, 1, 0] = r - 0.5 * w.conj()
    return np.max(np.abs(np.linalg.eigvalsh(blocks)), axis=1)


def oracle_distance(cf: CanonicalForm, omega_grid: int = 64, settings: Tolerances = DEFAULT) -> OracleResult:
    """Minimize ``||e - q||`` over the whole family by enumeration.

    The score of a family element is the max over spectral points of the
    numeric eigenvalue of its 2x2 block. For a fixed ``chi`` the angles at
    different points act independently on that max, so each point takes its
    own best angle from ``{2 pi j / omega_grid}`` (which contains 0). Ties go
    to the lexicographically smallest ``chi``, then the smallest angle. The
    winner is assembled as a matrix and ``||e - q||`` is checked against the
    score within 1e-10.
    """
    if cf.case_one:
        raise CaseOne("the oracle searches the Case 2 family only")
    if omega_grid < 1:
        raise ValueError("omega_grid must be positive")
    space = solve_family(cf)
    k = space.n_points
    if k > settings.max_clusters:
        raise TooManyClusters(f"{k} distinct eigenvalues exceed the cap {settings.max_clusters}")

    angles = TWO_PI * np.arange(omega_grid) / omega_grid
    best_on = np.empty(k)
    best_angle = np.empty(k)
    for i, t in enumerate(cf.distinct_values):
        lam = _pointwise_lambda(float(t), angles)
        j = int(np.argmin(lam))
        best_on[i], best_angle[i] = lam[j], angles[j]
    # chi = 0 leaves phi_block(t, 0, .) = e restricted to the point, a rank-one projection
    off_value = np.array([lambda_numeric(float(t), 0, 0.0) for t in cf.distinct_values])

    best = None
    for chi in space.chi_patterns():
        mask = np.array(chi, dtype=bool)
        score = float(np.max(np.where(mask, best_on, off_value))) if k else 0.0
        if best is None or score < best[0]:
            best = (score, chi)
    score, chi = best
    fe = FamilyElement(chi, tuple(a if c else 0.0 for a, c in zip(best_angle, chi)))

    e, _ = reconstruct(cf)
    q = build_family_element(cf, fe, settings)
    assembled = operator_norm(e - q)
    if abs(assembled - score) > 1e-10:
        raise ConsistencyError(f"assembled ||e - q|| = {assembled!r} but enumeration gives {score!r}")
    return OracleResult(score, fe, assembled)


def general_family_3x3(x: complex, y: complex) -> tuple[np.ndarray, float]:
    """Member ``q_{x,y}`` of the full set of projections with ``quq = 0`` for
    ``u = diag(1, 1, -1)``, and its distance to ``e = diag(1, 0, 0)``."""
    x, y = complex(x), complex(y)
    if abs(abs(x) ** 2 + abs(y) ** 2 - 1.0) > 1e-12:
        raise NotNormalized(f"|x|^2 + |y|^2 = {abs(x) ** 2 + abs(y) ** 2!r}, expected 1")
    q = 0.5 * np.array([[abs(x) ** 2, x * y.conjugate(), x],
                        [x.conjugate() * y, abs(y) ** 2, y],
                        [x.conjugate(), y.conjugate(), 1.0]], dtype=np.complex128)
    u = np.diag([1.0, 1.0, -1.0]).astype(np.complex128)
    e = np.diag([1.0, 0.0, 0.0]).astype(np.complex128)
    if operator_norm(q @ q - q) > 1e-10 or operator_norm(q @ u @ q) > 1e-10:
        raise ConsistencyError("q_{x,y} is not a projection orthogonal to its symmetry")
    dist = operator_norm(e - q)
    expected = math.sqrt((1.0 + abs(y) ** 2) / 2.0)
    if abs(dist - expected) > 1e-10:
        raise ConsistencyError(f"||e - q_xy|| = {dist!r}, expected {expected!r}")
    return q, dist


@dataclass(frozen=True)
class InstanceSpec:
    dim_m00: int = 0
    dim_m01: int = 0
    dim_m10: int = 0
    dim_m11: int = 0
    spectrum: tuple[tuple[float, int], ...] = field(default_factory=tuple)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "spectrum", tuple((float(t), int(m)) for t, m in self.spectrum))
        dims = (self.dim_m00, self.dim_m01, self.dim_m10, self.dim_m11)
        if any(d < 0 for d in dims):
            raise BadSpec(f"negative block dimension in {dims}")
        if sum(dims) + sum(m for _, m in self.spectrum) == 0:
            raise BadSpec("instance must have at least one non-empty block")
        if self.seed < 0:
            raise BadSpec("seed must be a non-negative integer")
        cluster_gap = 10 * DEFAULT.cluster_tol
        values = sorted(t for t, _ in self.spectrum)
        for t, m in self.spectrum:
            if m < 1:
                raise BadSpec(f"multiplicity of {t} must be positive")
            if not cluster_gap < t < 1.0 - cluster_gap:
                raise BadSpec(f"spectral value {t} is not strictly inside (0, 1)")
        if any(b - a <= cluster_gap for a, b in zip(values, values[1:])):
            raise BadSpec(f"spectral values {values} are not separated")

    @property
    def dim(self) -> int:
        return self.dim_m00 + self.dim_m01 + self.dim_m10 + self.dim_m11 + 2 * self.dim_m

    @property
    def dim_m(self) -> int:
        return sum(m for _, m in self.spectrum)


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Seeded unitary from the QR factorization of a complex Gaussian matrix."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_instance(spec: InstanceSpec) -> tuple[np.ndarray, np.ndarray, CanonicalForm]:
    """Conjugate the block model of ``spec`` by a seeded unitary.

    Returns ``(e, u, ground_truth)`` where the ground-truth canonical form's
    bases are the corresponding column blocks of the unitary.
    """
    n = spec.dim
    w = random_unitary(n, spec.seed)
    splits = np.cumsum([spec.dim_m00, spec.dim_m01, spec.dim_m10, spec.dim_m11, spec.dim_m])
    b00, b01, b10, b11, bp, bm = np.split(w, splits, axis=1)

    m = spec.dim_m
    eye_m = np.eye(m, dtype=np.complex128)
    spectrum = []
    col = 0
    for t, mult in sorted(spec.spectrum):
        spectrum.append(SpectralDatum(t, mult, eye_m[:, col:col + mult]))
        col += mult
    truth = CanonicalForm(b00, b01, b10, b11, bp, bm, tuple(spectrum))
    e, u = reconstruct(truth)
    return e, u, truth
