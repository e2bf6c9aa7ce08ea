"""Uniform Euler-Bernoulli beams: tip compliance, equivalent-beam fitting and
the constant-stroke leg-length scaling.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidAlpha, NonPositiveCompliance
from .mechanism import Geometry, workspace_bounds


@dataclass(frozen=True)
class BeamParams:
    """Rigidities (EA in N; EIy, EIz, GJ in N m^2), length (m), linear density (kg/m).

    The beam axis is local x; EIz governs bending in the x-y plane.
    """

    EA: float
    EIy: float
    EIz: float
    GJ: float
    L: float
    mass_per_length: float = 1.0

    def __post_init__(self):
        for name in ("EA", "EIy", "EIz", "GJ", "L", "mass_per_length"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")

    @property
    def mass(self):
        return self.mass_per_length * self.L

    def with_length(self, L):
        """Same cross-section and density at another length."""
        return replace(self, L=L)


def beam_end_compliance(b):
    """6x6 tip compliance of a cantilever in its local frame (x along the axis)."""
    L = b.L
    c = np.diag([L / b.EA, L**3 / (3 * b.EIz), L**3 / (3 * b.EIy),
                 L / b.GJ, L / b.EIy, L / b.EIz])
    c[1, 5] = c[5, 1] = L**2 / (2 * b.EIz)
    c[2, 4] = c[4, 2] = -L**2 / (2 * b.EIy)
    return c


def segment_stiffness(b):
    """Stiffness of the segment referred to its midpoint (decoupled diagonal)."""
    L = b.L
    return np.diag([b.EA / L, 12 * b.EIz / L**3, 12 * b.EIy / L**3,
                    b.GJ / L, b.EIy / L, b.EIz / L])


def fit_equivalent_beam(c, L, link_mass=None):
    """Beam with the same axial, two bending and torsional tip compliances as `c`."""
    c = np.asarray(c, dtype=float)
    d = np.diag(c)[:4]
    if np.any(~np.isfinite(d)) or np.any(d <= 0):
        raise NonPositiveCompliance(f"leading compliance diagonal must be positive, got {d}")
    if L <= 0:
        raise ValueError("length must be positive")
    mu = 1.0 if link_mass is None else link_mass / L
    return BeamParams(EA=L / d[0], EIy=L**3 / (3 * d[2]), EIz=L**3 / (3 * d[1]),
                      GJ=L / d[3], L=L, mass_per_length=mu)


def alpha_limit(L10, L20, d):
    """Smallest admissible scale factor (rail spacing reaches zero)."""
    return d / (L10 + L20)


def scale_geometry(g0, masses, alpha):
    """Scale both legs by `alpha` and move the rails so the stroke is unchanged.

    `masses` is a sequence of link masses scaled linearly (fixed cross-section).
    """
    if not np.isfinite(alpha) or alpha <= 0:
        raise InvalidAlpha(f"alpha must be positive, got {alpha}")
    if alpha == 1.0:
        return g0, tuple(masses)
    _, _, d = workspace_bounds(g0)
    a = alpha * (g0.L1 + g0.L2) - d
    if a <= 0:
        raise InvalidAlpha(
            f"alpha = {alpha:g} gives rail spacing {a:.3g} <= 0 "
            f"(limit {alpha_limit(g0.L1, g0.L2, d):.6g})")
    g = Geometry(a=a, L1=alpha * g0.L1, L2=alpha * g0.L2, L_tool=g0.L_tool,
                 assembly_sign=g0.assembly_sign)
    return g, tuple(alpha * m for m in masses)
