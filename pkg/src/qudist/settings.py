"""Tolerance bundle shared by every numerical routine."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    input_tol
        Absolute slack when checking that ``e`` is a projection
        (``||e^2 - e||``, ``||e - e^H||``) and ``u`` an involution.
    hermitian_tol
        Relative slack ``||A - A^H|| <= hermitian_tol * ||A||`` accepted by the
        eigensolver.
    eig_residual
        Documented bound on the eigensolver reconstruction residual,
        relative to ``||A||``.
    jacobi_sweeps, jacobi_tol
        Sweep budget and relative off-diagonal stopping mass of the Jacobi
        eigensolver.
    cluster_tol
        Absolute gap below which two eigenvalues are one spectral point.
    rank_tol
        Singular values ``<= rank_tol * max(rows, cols) * ||A||`` count as zero.
    boundary_margin
        The C*-route minimizer refuses inputs with ``||eue|| > 1 - boundary_margin``.
    max_clusters
        Cap on distinct spectral points enumerated by the oracle.
    """

    input_tol: float = 1e-8
    hermitian_tol: float = 1e-10
    eig_residual: float = 1e-10
    jacobi_sweeps: int = 30
    jacobi_tol: float = 1e-14
    cluster_tol: float = 1e-8
    rank_tol: float = 1e-10
    boundary_margin: float = 1e-6
    max_clusters: int = 20

    def with_input_tol(self, tol: float) -> "Tolerances":
        return replace(self, input_tol=tol)


DEFAULT = Tolerances()
