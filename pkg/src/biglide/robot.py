"""Whole-mechanism models assembled from a dataset: simplified and refined
stiffness, simplified and refined natural frequencies, for the nominal or an
alpha-scaled geometry.
"""

from dataclasses import dataclass

import numpy as np

from . import beams, modal, simplified, vjm
from .mechanism import DEFAULT_FOOT_ANGLE, jacobian, leg_angles, rotation, Z_AXIS

LOAD = 1000.0
RIGID_COMPLIANCE = 1e-12


@dataclass(frozen=True)
class ModelOptions:
    """Modelling choices shared by the refined models.

    foot_angle : orientation (rad, about z) of the frame of the foot compliance.
    tool_offset : height (m) of the reference point above the tool joint.
    tool_compliance : attach the tool compliance to leg 1.
    vjm_drive_stiffness : finite rail stiffness in the static model (None: rigid rails).
    n_elements : rigid elements per leg in the modal model.
    """

    foot_angle: float = DEFAULT_FOOT_ANGLE
    tool_offset: float = 0.0
    tool_compliance: bool = True
    vjm_drive_stiffness: float = None
    n_elements: int = 20

    def chain_options(self):
        return dict(foot_angle=self.foot_angle, tool_offset=self.tool_offset,
                    tool_spring=self.tool_compliance,
                    drive_stiffness=self.vjm_drive_stiffness)


DEFAULT_OPTIONS = ModelOptions()


def equivalent_beams(ds):
    """Equivalent uniform beams of the two legs at their nominal lengths."""
    return (beams.fit_equivalent_beam(ds.compliance("leg1"), ds.L1, ds.m_leg1),
            beams.fit_equivalent_beam(ds.compliance("leg2"), ds.L2, ds.m_leg2))


def scaled(ds, alpha=1.0):
    """Geometry and equivalent beams for leg-length factor `alpha`."""
    g, _ = beams.scale_geometry(ds.geometry(), ds.leg_masses, alpha)
    b1, b2 = equivalent_beams(ds)
    return g, (b1.with_length(g.L1), b2.with_length(g.L2))


# ----------------------------------------------------------------- statics

def simplified_compliance(ds, x, alpha=1.0, allow_type1=True):
    g = scaled(ds, alpha)[0] if alpha != 1.0 else ds.geometry()
    J = jacobian(g, x, allow_type1=allow_type1)
    return simplified.compliance_simplified(J, ds.drive_stiffness)


def refined_compliance(ds, x, alpha=1.0, links="dataset", options=DEFAULT_OPTIONS):
    """6x6 compliance at the tool point.

    ``links="dataset"`` uses the printed leg compliances (nominal geometry
    only); ``links="beam"`` substitutes equivalent beams, as needed for
    ``alpha != 1``.
    """
    if links not in ("dataset", "beam"):
        raise ValueError("links must be 'dataset' or 'beam'")
    if links == "dataset":
        if alpha != 1.0:
            raise ValueError("dataset link compliances cannot be length-scaled")
        g, lc = ds.geometry(), None
    else:
        g, bs = scaled(ds, alpha)
        lc = [beams.beam_end_compliance(b) for b in bs]
    K = vjm.refined_stiffness(ds, x, geometry=g, leg_compliances=lc,
                              **options.chain_options())
    C = np.linalg.inv(K)
    return 0.5 * (C + C.T)


def deflection_metrics(C, load=LOAD, planar_only=False):
    """Planar deflection norms under x and y forces and z deflection under a z force."""
    out = {"planar_fx_m": float(np.linalg.norm(C[:2, 0]) * load),
           "planar_fy_m": float(np.linalg.norm(C[:2, 1]) * load)}
    if not planar_only:
        out["z_fz_m"] = float(abs(C[2, 2]) * load)
    return out


# ------------------------------------------------------------------ modal

def simplified_frequencies(ds, x, alpha=1.0):
    g = scaled(ds, alpha)[0] if alpha != 1.0 else ds.geometry()
    return simplified.frequencies_simplified(jacobian(g, x), ds.drive_stiffness, ds.m_tool)


def ground_stiffness(ds, options=DEFAULT_OPTIONS):
    """Foot compliance in series with the rail drive; other rail directions rigid."""
    Rf = modal.block_rotation(rotation(Z_AXIS, options.foot_angle))
    rail = np.full(6, RIGID_COMPLIANCE)
    rail[1] = 1.0 / ds.drive_stiffness
    c = Rf @ ds.compliance("foot") @ Rf.T + np.diag(rail)
    return np.linalg.inv(0.5 * (c + c.T))


def robot_system(ds, x, alpha=1.0, options=DEFAULT_OPTIONS):
    """Assembled modal model of the mechanism with tool joint at ``(x, 0)``.

    Links: two massless feet carrying the foot rotary inertia, leg 1 and leg
    2 as discretized equivalent beams. Each foot is tied to the ground by the
    foot compliance in series with the drive; revolute joints at both feet
    and at the tool joint; the tool mass sits on the last element of leg 1.
    """
    g, (b1, b2) = scaled(ds, alpha)
    phi1, phi2 = leg_angles(g, x)
    A = np.array([0.0, -np.sqrt(max(g.L1**2 - x**2, 0.0)), 0.0])
    C = np.array([g.a, -np.sqrt(max(g.L2**2 - (x - g.a)**2, 0.0)), 0.0])
    if g.assembly_sign == 1:
        A[1], C[1] = -A[1], -C[1]
    B = np.array([x, 0.0, 0.0])
    R1, R2 = rotation(Z_AXIS, phi1), rotation(Z_AXIS, phi2)

    Rf = rotation(Z_AXIS, options.foot_angle)
    J_foot = Rf @ ds.inertia("foot") @ Rf.T
    n = options.n_elements
    links = [
        modal.single_body(modal.RigidElement(0.0, J_foot, A)),
        modal.single_body(modal.RigidElement(0.0, J_foot, C)),
        modal.discretize_link(b1, n, A, R1),
        modal.discretize_link(b2, n, C, R2),
    ]
    Ks1 = beams.segment_stiffness(b1.with_length(b1.L / (n - 1)))
    Ks2 = beams.segment_stiffness(b2.with_length(b2.L / (n - 1)))
    Kg = ground_stiffness(ds, options)
    joints = [
        modal.GroundSpring(0, 0, A, Kg),
        modal.GroundSpring(1, 0, C, Kg),
        modal.Hinge(0, 0, 2, 0, A, Ks1, R1),
        modal.Hinge(1, 0, 3, 0, C, Ks2, R2),
        modal.Hinge(2, n - 1, 3, n - 1, B, Ks2, R2),
        modal.PointMass(2, n - 1, ds.m_tool, B + np.array([0.0, 0.0, options.tool_offset])),
    ]
    return modal.assemble_system(links, joints)


def refined_modes(ds, x, alpha=1.0, n=2, options=DEFAULT_OPTIONS):
    return modal.natural_frequencies(robot_system(ds, x, alpha, options), n)
