"""Dense small-matrix algebra: symmetric inversion, linear solves and the
symmetric-definite generalized eigenproblem.

Everything here is a thin, checked layer over LAPACK (through numpy/scipy).
Matrices are at most a few hundred rows, so no attempt is made at sparsity.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import MassNotPositiveDefinite, NotPositiveDefinite, NotSymmetric, Singular

SYMMETRY_RTOL = 1e-8
MAX_CONDITION = 1e14
ZERO_EIG_RTOL = 1e-9


def symmetrize(m, rtol=SYMMETRY_RTOL, name="matrix"):
    """Return ``(m + m.T) / 2`` after checking the asymmetry is within `rtol`.

    The asymmetry is measured as ``max|m - m.T| / max|m|``.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    scale = np.abs(m).max()
    if scale == 0.0:
        return m.copy()
    asym = np.abs(m - m.T).max() / scale
    if asym > rtol:
        raise NotSymmetric(f"{name} asymmetry {asym:.3g} exceeds {rtol:.0e}")
    return 0.5 * (m + m.T)


def asymmetry(m):
    m = np.asarray(m, dtype=float)
    scale = np.abs(m).max()
    return 0.0 if scale == 0.0 else float(np.abs(m - m.T).max() / scale)


def is_positive_definite(m):
    try:
        sla.cholesky(m, lower=True)
    except np.linalg.LinAlgError:
        return False
    return True


def invert_symmetric(m, name="matrix"):
    """Inverse of a symmetric positive definite matrix via Cholesky."""
    s = symmetrize(m, name=name)
    try:
        factor = sla.cho_factor(s, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"{name} is not positive definite") from exc
    inv = sla.cho_solve(factor, np.eye(len(s)))
    return 0.5 * (inv + inv.T)


def solve_linear(a, b):
    """Solve ``a x = b``; raises `Singular` when ``cond(a) >= 1e14``.

    `b` may be a vector or a matrix of right-hand sides.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise Singular("coefficient matrix has non-finite entries")
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond >= MAX_CONDITION:
        raise Singular(f"matrix is numerically singular (cond={cond:.3g})")
    return sla.solve(a, b)


def inverse(a):
    """General inverse built on `solve_linear` (used for bordered systems)."""
    a = np.asarray(a, dtype=float)
    return solve_linear(a, np.eye(len(a)))


@dataclass(frozen=True)
class EigenSolution:
    """Generalized eigenpairs; ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``.

    Eigenvalues are squared circular frequencies (rad^2/s^2) when the pencil is
    a stiffness/mass pair.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def omegas(self):
        return np.sqrt(self.eigenvalues)

    @property
    def frequencies_hz(self):
        return self.omegas / (2.0 * np.pi)

    def __len__(self):
        return len(self.eigenvalues)


def generalized_eigs(k, m, zero_rtol=ZERO_EIG_RTOL):
    """Solve ``k v = w2 m v`` for a symmetric PSD `k` and symmetric PD `m`.

    The pencil is reduced to standard form with the Cholesky factor ``L`` of
    the mass matrix, ``L^-1 k L^-T``, and solved with a symmetric eigensolver.
    Eigenvalues below ``zero_rtol * max(eigenvalue)`` are reported as exactly
    zero (rigid-body modes). Eigenvectors are scaled to unit Euclidean norm.
    """
    k = symmetrize(k, name="stiffness matrix")
    m = symmetrize(m, name="mass matrix")
    if k.shape != m.shape:
        raise ValueError(f"stiffness {k.shape} and mass {m.shape} differ in size")
    try:
        low = sla.cholesky(m, lower=True)
    except np.linalg.LinAlgError as exc:
        raise MassNotPositiveDefinite("mass matrix is not positive definite") from exc

    tmp = sla.solve_triangular(low, k, lower=True)
    reduced = sla.solve_triangular(low, tmp.T, lower=True)
    reduced = 0.5 * (reduced + reduced.T)
    w2, y = np.linalg.eigh(reduced)

    top = max(abs(w2[-1]), abs(w2[0]))
    if w2[0] < -1e-6 * top:
        raise NotPositiveDefinite(
            f"stiffness matrix is indefinite (eigenvalue {w2[0]:.3g}, max {top:.3g})")
    w2 = np.where(w2 < zero_rtol * top, 0.0, w2)

    vecs = sla.solve_triangular(low.T, y, lower=False)
    vecs /= np.linalg.norm(vecs, axis=0)
    return EigenSolution(eigenvalues=w2, eigenvectors=vecs)
