"""Projections ``q`` in the algebra generated by ``e, u`` with ``quq = 0``.

Every such ``q`` vanishes on the four intersection summands and acts on the
generic part ``M+ (+) M-`` as ``(1/2) [[chi, chi*w], [chi*conj(w), chi]](H)``
with ``chi`` a 0/1 function and ``w`` a unimodular function on the spectrum
of ``H``. Both are sampled once per distinct eigenvalue.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .errors import LengthMismatch
from .halmos import CanonicalForm
from .matrices import apply_scalar_function, dagger
from .settings import DEFAULT, Tolerances

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FamilyElement:
    """One bit ``chi`` and one phase angle ``omega`` per distinct eigenvalue of ``H``."""

    chi: tuple[int, ...]
    omega: tuple[float, ...]

    def __post_init__(self):
        chi = tuple(int(c) for c in self.chi)
        if any(c not in (0, 1) for c in chi):
            raise ValueError(f"chi must be 0/1 valued, got {self.chi}")
        omega = tuple(float(a) % TWO_PI for a in self.omega)
        if len(chi) != len(omega):
            raise LengthMismatch(f"chi has {len(chi)} entries but omega has {len(omega)}")
        object.__setattr__(self, "chi", chi)
        object.__setattr__(self, "omega", omega)

    @classmethod
    def constant(cls, k: int, chi: int = 1, angle: float = 0.0) -> "FamilyElement":
        return cls((chi,) * k, (angle,) * k)

    def __len__(self) -> int:
        return len(self.chi)

    def phases(self) -> np.ndarray:
        return np.exp(1j * np.asarray(self.omega, dtype=float))


@dataclass(frozen=True)
class WStarElement:
    """Element of the generated von Neumann algebra in canonical coordinates.

    ``phi`` has shape ``(k, 2, 2)``: the 2x2 function table sampled at each
    distinct eigenvalue of ``H``.
    """

    a00: complex = 0.0
    a01: complex = 0.0
    a10: complex = 0.0
    a11: complex = 0.0
    phi: np.ndarray = field(default_factory=lambda: np.zeros((0, 2, 2), dtype=np.complex128))

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=np.complex128)
        if phi.ndim == 2:
            phi = phi[None]
        if phi.ndim != 3 or phi.shape[1:] != (2, 2):
            raise LengthMismatch(f"phi must have shape (k, 2, 2), got {phi.shape}")
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_family(cls, fe: FamilyElement) -> "WStarElement":
        chi = np.asarray(fe.chi, dtype=float)
        w = fe.phases()
        phi = 0.5 * np.stack([np.stack([chi, chi * w], -1), np.stack([chi * w.conj(), chi], -1)], -2)
        return cls(phi=phi)

    @property
    def scalars(self) -> np.ndarray:
        return np.array([self.a00, self.a01, self.a10, self.a11], dtype=np.complex128)


class ConditionCheck(NamedTuple):
    ok: bool
    residuals: dict[str, float]


def _max(x) -> float:
    x = np.abs(np.asarray(x))
    return float(x.max()) if x.size else 0.0


def check_projection_conditions(w: WStarElement, tol: float = 1e-10) -> ConditionCheck:
    """Pointwise conditions for ``w`` to be an orthogonal projection.

    Scalars must be 0 or 1, ``phi00``/``phi11`` real, ``phi10 = conj(phi01)``,
    ``phi00 - phi00^2 = phi11 - phi11^2 = |phi01|^2`` and
    ``(phi00 + phi11 - 1) phi01 = 0``.
    """
    s = w.scalars
    p00, p01, p10, p11 = w.phi[:, 0, 0], w.phi[:, 0, 1], w.phi[:, 1, 0], w.phi[:, 1, 1]
    residuals = {
        "scalars_binary": _max(np.minimum(np.abs(s), np.abs(s - 1))),
        "diagonal_real": max(_max(p00.imag), _max(p11.imag)),
        "offdiagonal_conjugate": _max(p10 - p01.conj()),
        "idempotent_00": _max(p00 - p00 ** 2 - np.abs(p01) ** 2),
        "idempotent_11": _max(p11 - p11 ** 2 - np.abs(p01) ** 2),
        "idempotent_01": _max((p00 + p11 - 1) * p01),
    }
    return ConditionCheck(all(v <= tol for v in residuals.values()), residuals)


def check_orthogonality_conditions(w: WStarElement, tol: float = 1e-10) -> ConditionCheck:
    """Pointwise reading of ``q u q = 0``.

    On the generic part: ``phi00^2 = phi11^2 = phi01 phi10`` and
    ``(phi00 - phi11) phi01 = (phi00 - phi11) phi10 = 0``. On each intersection
    summand ``u = +-I``, so ``quq`` there is ``+-a_ij^2`` and every scalar must vanish.
    """
    p00, p01, p10, p11 = w.phi[:, 0, 0], w.phi[:, 0, 1], w.phi[:, 1, 0], w.phi[:, 1, 1]
    residuals = {
        "scalars_zero": _max(w.scalars ** 2),
        "squares_equal": _max(p00 ** 2 - p11 ** 2),
        "square_product": _max(p00 ** 2 - p01 * p10),
        "mixed_01": _max((p00 - p11) * p01),
        "mixed_10": _max((p00 - p11) * p10),
    }
    return ConditionCheck(all(v <= tol for v in residuals.values()), residuals)


def _generic_blocks(cf: CanonicalForm, phi: np.ndarray, settings: Tolerances) -> list[np.ndarray]:
    hsys = cf.h_eigensystem()
    k = len(cf.h_spectrum)
    if phi.shape[0] != k:
        raise LengthMismatch(f"expected {k} spectral samples, got {phi.shape[0]}")
    return [apply_scalar_function(hsys, {c: phi[c, i, j] for c in range(k)}, settings.cluster_tol)
            for i in (0, 1) for j in (0, 1)]


def assemble_wstar(cf: CanonicalForm, w: WStarElement, settings: Tolerances = DEFAULT) -> np.ndarray:
    """Matrix of ``w`` in the original coordinates."""
    n = cf.ambient_dim
    q = np.zeros((n, n), dtype=np.complex128)
    for a, b in zip(w.scalars, (cf.basis_m00, cf.basis_m01, cf.basis_m10, cf.basis_m11)):
        if a != 0 and b.shape[1]:
            q += a * (b @ dagger(b))
    if cf.basis_m_plus.shape[1]:
        x00, x01, x10, x11 = _generic_blocks(cf, w.phi, settings)
        bp, bm = cf.basis_m_plus, cf.basis_m_minus
        q += bp @ x00 @ dagger(bp) + bp @ x01 @ dagger(bm) + bm @ x10 @ dagger(bp) + bm @ x11 @ dagger(bm)
    return q


def build_family_element(cf: CanonicalForm, fe: FamilyElement, settings: Tolerances = DEFAULT) -> np.ndarray:
    """Projection ``q`` parametrized by ``fe``, in the original coordinates."""
    k = len(cf.h_spectrum)
    if len(fe) != k:
        raise LengthMismatch(f"family element has {len(fe)} samples but H has {k} distinct eigenvalues")
    q = assemble_wstar(cf, WStarElement.from_family(fe), settings)
    return 0.5 * (q + dagger(q))


@dataclass(frozen=True)
class SolutionSpace:
    """All solutions of the projection and orthogonality conditions for one canonical form.

    Scalars ``a_ij`` are forced to 0; at each of the ``n_points`` distinct
    eigenvalues either ``chi = 0`` (``phi = 0``) or ``chi = 1`` with
    ``phi00 = phi11 = 1/2``, ``phi01 = w/2``, ``phi10 = conj(w)/2``, ``|w| = 1``.
    """

    n_points: int
    scalars: tuple[int, int, int, int] = (0, 0, 0, 0)

    @property
    def n_patterns(self) -> int:
        return 2 ** self.n_points

    def chi_patterns(self) -> Iterator[tuple[int, ...]]:
        """All ``chi`` patterns in lexicographic order."""
        return itertools.product((0, 1), repeat=self.n_points)

    @staticmethod
    def phi(chi: int, angle: float) -> np.ndarray:
        w = complex(math.cos(angle), math.sin(angle))
        return 0.5 * chi * np.array([[1, w], [w.conjugate(), 1]])

    def describe(self) -> str:
        if self.n_points == 0:
            return "only q = 0 (no generic part)"
        return (f"{self.n_patterns} chi-patterns over {self.n_points} spectral points, "
                f"each chi=1 point carrying a free phase in [0, 2pi); a_ij = 0")


def solve_family(cf: CanonicalForm) -> SolutionSpace:
    return SolutionSpace(len(cf.h_spectrum))
