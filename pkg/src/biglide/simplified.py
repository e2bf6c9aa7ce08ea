"""Drive-elasticity-only models: Cartesian compliance ``J K^-1 J^T`` and the
platform natural frequencies of the pencil ``(J^-1 K J^-T, M)``.
"""

import numpy as np

from .errors import SingularPosture
from .numerics import generalized_eigs

DRIVE_STIFFNESS = 1e9
TOOL_MASS = 46.0


def drive_matrix(K, n=2):
    """Diagonal drive stiffness from a scalar, a vector or a diagonal matrix."""
    K = np.asarray(K, dtype=float)
    if K.ndim == 0:
        K = np.full(n, float(K))
    if K.ndim == 2:
        if np.any(K != np.diag(np.diag(K))):
            raise ValueError("drive stiffness must be diagonal")
        K = np.diag(K)
    if np.any(K <= 0):
        raise ValueError("drive stiffnesses must be positive")
    return np.diag(K)


def platform_inertia(m=TOOL_MASS):
    M = np.asarray(m, dtype=float)
    return M * np.eye(2) if M.ndim == 0 else M


def compliance_simplified(J, K=DRIVE_STIFFNESS):
    J = np.asarray(J, dtype=float)
    Kd = drive_matrix(K, J.shape[1])
    return J @ np.diag(1.0 / np.diag(Kd)) @ J.T


def deflection_simplified(J, K=DRIVE_STIFFNESS, f=(1000.0, 0.0)):
    """Planar deflection ``J K^-1 J^T f`` (m) of the platform under force `f` (N)."""
    return compliance_simplified(J, K) @ np.asarray(f, dtype=float)


def frequencies_simplified(J, K=DRIVE_STIFFNESS, M=TOOL_MASS):
    """Two natural frequencies (Hz, ascending) of the drive-stiffness model."""
    J = np.asarray(J, dtype=float)
    if abs(np.linalg.det(J)) <= 1e-12 * max(np.abs(J).max(), 1.0) ** 2:
        raise SingularPosture("J is not invertible")
    Ji = np.linalg.inv(J)
    Kd = drive_matrix(K, J.shape[1])
    Kx = Ji.T @ Kd @ Ji
    sol = generalized_eigs(0.5 * (Kx + Kx.T), platform_inertia(M))
    return sol.frequencies_hz
