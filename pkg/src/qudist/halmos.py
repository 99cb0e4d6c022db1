"""Canonical form of a projection ``e`` and a hermitian involution ``u``.

In the orthonormal basis ``[M00 | M01 | M10 | M11 | M+ | M-]``::

    u = I + I + (-I) + (-I) + diag(I, -I)
    e = I + 0 + 0 + I + [[H, sqrt(H(I-H))], [sqrt(H(I-H)), I-H]]

where ``M00``/``M11`` are the intersections of ran(e) with the +1/-1
eigenspaces of ``u``, ``M01``/``M10`` those of ker(e), and ``H`` is the
compression of ``e`` onto ``M+``. ``M+`` is ordered so that ``H`` is diagonal
with ascending eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, DimensionMismatch, NotInvolution, NotProjection
from .matrices import (
    EigenSystem,
    _frozen,
    as_matrix,
    dagger,
    hermitian_eigendecomposition,
    operator_norm,
    orthonormal_null_basis,
)
from .settings import DEFAULT, Tolerances


@dataclass(frozen=True)
class SpectralDatum:
    """One distinct eigenvalue of ``H``; ``vectors`` are columns in the ``M+`` frame."""

    value: float
    multiplicity: int
    vectors: np.ndarray


@dataclass(frozen=True)
class CanonicalForm:
    basis_m00: np.ndarray
    basis_m01: np.ndarray
    basis_m10: np.ndarray
    basis_m11: np.ndarray
    basis_m_plus: np.ndarray
    basis_m_minus: np.ndarray
    h_spectrum: tuple[SpectralDatum, ...]

    def __post_init__(self):
        for name in ("basis_m00", "basis_m01", "basis_m10", "basis_m11", "basis_m_plus", "basis_m_minus"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=np.complex128)))
        object.__setattr__(self, "h_spectrum", tuple(self.h_spectrum))
        if self.basis_m_plus.shape[1] != self.basis_m_minus.shape[1]:
            raise ValueError("generic bases must have equal column counts")
        if sum(d.multiplicity for d in self.h_spectrum) != self.basis_m_plus.shape[1]:
            raise ValueError("h_spectrum multiplicities must sum to dim M")

    @property
    def ambient_dim(self) -> int:
        return self.basis_m00.shape[0]

    @property
    def dims(self) -> tuple[int, int, int, int, int]:
        """``(dim M00, dim M01, dim M10, dim M11, dim M)``."""
        return (self.basis_m00.shape[1], self.basis_m01.shape[1], self.basis_m10.shape[1],
                self.basis_m11.shape[1], self.basis_m_plus.shape[1])

    @property
    def case_one(self) -> bool:
        """ran(e) meets an eigenspace of ``u``."""
        return self.basis_m00.shape[1] > 0 or self.basis_m11.shape[1] > 0

    @property
    def distinct_values(self) -> np.ndarray:
        return np.array([d.value for d in self.h_spectrum], dtype=float)

    def h_eigensystem(self) -> EigenSystem:
        """Eigensystem of ``H`` in the ``M+`` frame (one column per basis vector)."""
        vals, vecs = [], []
        for d in self.h_spectrum:
            vals.extend([d.value] * d.multiplicity)
            vecs.append(d.vectors)
        m = self.basis_m_plus.shape[1]
        v = np.hstack(vecs) if vecs else np.zeros((m, 0), dtype=np.complex128)
        return EigenSystem(np.array(vals, dtype=float), v)

    def basis(self) -> np.ndarray:
        """Concatenated unitary ``[M00 | M01 | M10 | M11 | M+ | M-]``."""
        return np.hstack([self.basis_m00, self.basis_m01, self.basis_m10, self.basis_m11,
                          self.basis_m_plus, self.basis_m_minus])

    def canonical_blocks(self) -> tuple[np.ndarray, np.ndarray]:
        """``(e, u)`` expressed in the canonical basis."""
        n00, n01, n10, n11, m = self.dims
        hsys = self.h_eigensystem()
        h = hsys.reconstruct()
        off = (hsys.vectors * np.sqrt(hsys.eigenvalues * (1.0 - hsys.eigenvalues))) @ dagger(hsys.vectors)
        eye_m = np.eye(m)
        e_gen = np.block([[h, off], [off, eye_m - h]])
        e_c = _block_diag(np.eye(n00), np.zeros((n01, n01)), np.zeros((n10, n10)), np.eye(n11), e_gen)
        u_c = np.diag(np.concatenate([np.ones(n00 + n01), -np.ones(n10 + n11), np.ones(m), -np.ones(m)]))
        return e_c.astype(np.complex128), u_c.astype(np.complex128)


def _block_diag(*blocks: np.ndarray) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.complex128)
    k = 0
    for b in blocks:
        r = b.shape[0]
        out[k:k + r, k:k + r] = b
        k += r
    return out


def check_projection(e, tol: float, name: str = "e") -> np.ndarray:
    e = as_matrix(e, name)
    if e.shape[0] != e.shape[1]:
        raise DimensionMismatch(f"{name} is not square: {e.shape}")
    if operator_norm(e - dagger(e)) > tol:
        raise NotProjection(f"{name} is not hermitian within {tol:g}")
    if operator_norm(e @ e - e) > tol:
        raise NotProjection(f"{name} is not idempotent within {tol:g}")
    return e


def check_involution(u, tol: float, name: str = "u") -> np.ndarray:
    u = as_matrix(u, name)
    if u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"{name} is not square: {u.shape}")
    if operator_norm(u - dagger(u)) > tol:
        raise NotInvolution(f"{name} is not hermitian within {tol:g}")
    if operator_norm(u @ u - np.eye(u.shape[0])) > tol:
        raise NotInvolution(f"{name} squared deviates from I beyond {tol:g}")
    return u


def eigenspaces_of_involution(u, tol: float = DEFAULT.input_tol,
                              settings: Tolerances = DEFAULT) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of ker(u - I) and ker(u + I)."""
    u = check_involution(u, tol)
    eig = hermitian_eigendecomposition(u, tol=max(tol, settings.hermitian_tol), settings=settings)
    plus = eig.eigenvalues > 0
    # eigenvalues ascend, so the -1 block comes first
    return eig.vectors[:, plus], eig.vectors[:, ~plus]


def canonical_decomposition(e, u, settings: Tolerances = DEFAULT) -> CanonicalForm:
    """Split the space into the six canonical summands of the pair ``(e, (u+I)/2)``."""
    tol = settings.input_tol
    e = check_projection(e, tol)
    u = check_involution(u, tol)
    if e.shape != u.shape:
        raise DimensionMismatch(f"e is {e.shape} but u is {u.shape}")
    n = e.shape[0]
    eye = np.eye(n)

    b_plus, _ = eigenspaces_of_involution(u, tol, settings)
    m00 = orthonormal_null_basis(np.vstack([e - eye, u - eye]), settings.rank_tol, scale=1.0)
    m01 = orthonormal_null_basis(np.vstack([e, u - eye]), settings.rank_tol, scale=1.0)
    m10 = orthonormal_null_basis(np.vstack([e, u + eye]), settings.rank_tol, scale=1.0)
    m11 = orthonormal_null_basis(np.vstack([e - eye, u + eye]), settings.rank_tol, scale=1.0)

    # M+ = H+ minus (M00 + M01), taken inside the coordinates of H+
    taken = np.hstack([m00, m01])
    if taken.shape[1]:
        m_plus = b_plus @ orthonormal_null_basis(dagger(taken) @ b_plus, settings.rank_tol, scale=1.0)
    else:
        m_plus = b_plus

    m = m_plus.shape[1]
    if m:
        compression = dagger(m_plus) @ e @ m_plus
        compression = 0.5 * (compression + dagger(compression))
        hsys = hermitian_eigendecomposition(compression, tol=max(tol, settings.hermitian_tol), settings=settings)
        t = hsys.eigenvalues
        edge = 10 * settings.cluster_tol
        if t[0] <= edge or t[-1] >= 1.0 - edge:
            raise DegenerateSpectrum(
                f"compression has eigenvalues {t[0]:.3g}..{t[-1]:.3g} at the boundary of (0, 1)")
        m_plus = m_plus @ hsys.vectors
        p_plus = b_plus @ dagger(b_plus)
        m_minus = ((eye - p_plus) @ e @ m_plus) / np.sqrt(t * (1.0 - t))
        groups = hsys.clusters(settings.cluster_tol)
    else:
        t = np.zeros(0)
        m_minus = np.zeros((n, 0), dtype=np.complex128)
        groups = []

    identity_m = np.eye(m, dtype=np.complex128)
    spectrum = tuple(
        SpectralDatum(float(t[g].mean()), g.stop - g.start, identity_m[:, g]) for g in groups
    )
    return CanonicalForm(m00, m01, m10, m11, m_plus, m_minus, spectrum)


def reconstruct(cf: CanonicalForm) -> tuple[np.ndarray, np.ndarray]:
    """Rebuild ``(e, u)`` in the original coordinates from the canonical blocks."""
    w = cf.basis()
    e_c, u_c = cf.canonical_blocks()
    e = w @ e_c @ dagger(w)
    u = w @ u_c @ dagger(w)
    return 0.5 * (e + dagger(e)), 0.5 * (u + dagger(u))
