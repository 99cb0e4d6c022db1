"""Dense complex linear algebra: Jacobi eigensolver, norms, kernels, matrix functions.

Matrices are plain ``numpy`` complex128 arrays. Everything here is a pure
function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .errors import MissingClusterValue, NonConvergence, NotHermitian, ValidationError
from .settings import DEFAULT, Tolerances


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite, non-empty, 2-D complex128 array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValidationError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    return arr


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


def operator_norm(a) -> float:
    """Largest singular value of ``a`` (0 for an empty array)."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in ascending order with orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _frozen(np.asarray(self.eigenvalues, dtype=float)))
        object.__setattr__(self, "vectors", _frozen(np.asarray(self.vectors, dtype=np.complex128)))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def clusters(self, cluster_tol: float = DEFAULT.cluster_tol) -> list[slice]:
        """Group consecutive eigenvalues whose gaps are ``<= cluster_tol``.

        Returns one slice into ``eigenvalues`` per distinct spectral point.
        """
        vals = self.eigenvalues
        if vals.size == 0:
            return []
        out = []
        start = 0
        for i in range(1, vals.size):
            if vals[i] - vals[i - 1] > cluster_tol:
                out.append(slice(start, i))
                start = i
        out.append(slice(start, vals.size))
        return out

    def distinct_values(self, cluster_tol: float = DEFAULT.cluster_tol) -> np.ndarray:
        return np.array([self.eigenvalues[s].mean() for s in self.clusters(cluster_tol)])

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.eigenvalues) @ dagger(v)


_TINY = 1e-300 / np.finfo(float).eps


def _jacobi_rotation(a_pp: float, a_qq: float, a_pq: complex) -> np.ndarray:
    # Entries of the 2x2 unitary G with G^H [[a_pp, a_pq], [conj(a_pq), a_qq]] G diagonal.
    a_pq = complex(a_pq)
    mag = abs(a_pq)
    phase = (a_pq / mag).conjugate()
    theta = (float(a_qq) - float(a_pp)) / (2.0 * mag)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0)), theta)
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    return (c, s), (-s * phase, c * phase)


def hermitian_eigendecomposition(a, tol: float = DEFAULT.hermitian_tol,
                                 settings: Tolerances = DEFAULT) -> EigenSystem:
    """Cyclic Jacobi eigendecomposition of a hermitian matrix.

    Sweeps over all pairs ``(p, q)`` annihilating ``a[p, q]`` with a complex
    plane rotation until the off-diagonal Frobenius mass falls below
    ``settings.jacobi_tol * ||A||_F``. Raises :class:`NotHermitian` when
    ``||A - A^H|| > tol * ||A||`` and :class:`NonConvergence` when the sweep
    budget runs out.
    """
    a = as_matrix(a)
    n, m = a.shape
    if n != m:
        raise NotHermitian(f"matrix is not square: {a.shape}")
    scale = operator_norm(a)
    if operator_norm(a - dagger(a)) > tol * scale:
        raise NotHermitian("matrix is not hermitian within tolerance")

    work = 0.5 * (a + dagger(a))
    work[np.diag_indices(n)] = work.diagonal().real
    vecs = np.eye(n, dtype=np.complex128)
    target = settings.jacobi_tol * np.linalg.norm(work)

    off_diag = ~np.eye(n, dtype=bool)

    def off_mass():
        return np.linalg.norm(work[off_diag])

    for _ in range(settings.jacobi_sweeps + 1):
        if off_mass() <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                a_pq = work[p, q]
                mag = abs(a_pq)
                # negligible against both diagonal entries: drop instead of rotating
                if mag == 0 or mag < _TINY * max(abs(work[p, p]), abs(work[q, q]), target):
                    continue
                (g00, g01), (g10, g11) = _jacobi_rotation(work[p, p].real, work[q, q].real, a_pq)
                col_p, col_q = work[:, p].copy(), work[:, q].copy()
                work[:, p] = g00 * col_p + g10 * col_q
                work[:, q] = g01 * col_p + g11 * col_q
                row_p, row_q = work[p, :].copy(), work[q, :].copy()
                work[p, :] = np.conj(g00) * row_p + np.conj(g10) * row_q
                work[q, :] = np.conj(g01) * row_p + np.conj(g11) * row_q
                work[p, q] = work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
                vec_p, vec_q = vecs[:, p].copy(), vecs[:, q].copy()
                vecs[:, p] = g00 * vec_p + g10 * vec_q
                vecs[:, q] = g01 * vec_p + g11 * vec_q
    else:
        raise NonConvergence(f"Jacobi did not converge in {settings.jacobi_sweeps} sweeps")

    vals = work.diagonal().real
    order = np.argsort(vals, kind="stable")
    return EigenSystem(vals[order], vecs[:, order])


def orthonormal_null_basis(a, tol: float = DEFAULT.rank_tol, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical kernel of ``a``.

    A singular value counts as zero when ``s <= tol * max(rows, cols) * scale``
    with ``scale = ||A||`` unless given. Pass a fixed ``scale`` when ``A`` is
    built from unit-norm operators and may itself be pure round-off.
    The result has shape ``(cols, nullity)``; nullity may be 0.
    """
    a = np.asarray(a, dtype=np.complex128)
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.complex128)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    if scale is None:
        scale = s[0] if s.size else 0.0
    threshold = tol * max(rows, cols) * scale
    rank = int(np.sum(s > threshold))
    return dagger(vh[rank:])


def apply_scalar_function(eig: EigenSystem, table: Mapping[int, complex] | Callable[[float], complex],
                          cluster_tol: float = DEFAULT.cluster_tol) -> np.ndarray:
    """Evaluate ``f(A) = sum_i f(t_i) P_i`` over the distinct spectral points of ``A``.

    ``table`` maps the cluster index (ascending eigenvalue order) to ``f(t_i)``;
    a callable is evaluated at each cluster's mean eigenvalue instead.
    """
    groups = eig.clusters(cluster_tol)
    if callable(table):
        values = [table(float(eig.eigenvalues[g].mean())) for g in groups]
    else:
        missing = [i for i in range(len(groups)) if i not in table]
        if missing:
            raise MissingClusterValue(f"no value for spectral clusters {missing}")
        values = [table[i] for i in range(len(groups))]

    weights = np.empty(eig.eigenvalues.size, dtype=np.complex128)
    for g, val in zip(groups, values):
        weights[g] = val
    v = eig.vectors
    out = (v * weights) @ dagger(v)
    if np.all(np.imag(weights) == 0):
        out = 0.5 * (out + dagger(out))
    return out
