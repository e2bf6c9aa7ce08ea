"""Geometry, kinematics and serial-chain description of the two-rail
(PRRRP, "Biglide") planar parallel mechanism.

Frame: origin on rail A, x toward rail C, y along the rails, z out of the
plane. Leg 1 joins rail A to the tool joint B, leg 2 joins rail C to B.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyWorkspace, OutOfWorkspace, SingularPosture
from .numerics import invert_symmetric

EPS_SING = 1e-6
Z_AXIS = np.array([0.0, 0.0, 1.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])

# Foot spring frame: local x along global -y, local z along global z.
DEFAULT_FOOT_ANGLE = -np.pi / 2


@dataclass(frozen=True)
class Geometry:
    """Rail spacing `a`, leg lengths `L1`, `L2` and tool length `L_tool` (m).

    ``assembly_sign = -1`` places both feet below B (smaller y than B).
    """

    a: float
    L1: float
    L2: float
    L_tool: float = 0.155
    assembly_sign: int = -1

    def __post_init__(self):
        for name in ("a", "L1", "L2", "L_tool"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")
        if self.assembly_sign not in (1, -1):
            raise ValueError("assembly_sign must be +1 or -1")


def workspace_bounds(g):
    """Return ``(x_min, x_max, d)``: the stroke between the two Type-1 postures."""
    d = g.L1 + g.L2 - g.a
    if d <= 0:
        raise EmptyWorkspace(f"L1 + L2 = {g.L1 + g.L2:g} does not exceed a = {g.a:g}")
    return g.a - g.L2, g.L1, d


def _leg_height(L, dx, what):
    r2 = L * L - dx * dx
    if r2 < 0:
        if r2 > -1e-12 * L * L:
            return 0.0
        raise OutOfWorkspace(f"{what} cannot reach: |dx| = {abs(dx):.6g} > {L:.6g}")
    return np.sqrt(r2)


def inverse_kinematics(g, x, y=0.0):
    """Rail positions ``(q1, q2)`` placing B at ``(x, y)``."""
    x_min, x_max, _ = workspace_bounds(g)
    tol = 1e-12 * max(g.L1, g.L2)
    if not (x_min - tol <= x <= x_max + tol):
        raise OutOfWorkspace(f"x = {x:.6g} outside [{x_min:.6g}, {x_max:.6g}]")
    s = g.assembly_sign
    q1 = y + s * _leg_height(g.L1, x, "leg 1")
    q2 = y + s * _leg_height(g.L2, x - g.a, "leg 2")
    return q1, q2


def constraint_matrices(g, x, y=0.0):
    """``A`` and ``B`` of the differentiated loop equations ``A t = B qdot``."""
    q1, q2 = inverse_kinematics(g, x, y)
    A = np.array([[x, y - q1], [x - g.a, y - q2]])
    B = np.diag([y - q1, y - q2])
    return A, B


def jacobian(g, x, y=0.0, eps=EPS_SING, allow_type1=False):
    """2x2 matrix ``J`` with ``t = J qdot`` (planar velocity of B).

    Raises `SingularPosture` within `eps` (relative to the leg lengths) of a
    Type-1 or Type-2 singularity. With ``allow_type1=True`` the Type-1 check
    is skipped; ``J`` is finite there and loses a column.
    """
    A, B = constraint_matrices(g, x, y)
    if not allow_type1:
        if abs(B[0, 0]) <= eps * g.L1 or abs(B[1, 1]) <= eps * g.L2:
            raise SingularPosture(f"Type-1 singularity at x = {x:.9g}")
    if abs(np.linalg.det(A)) <= eps * g.L1 * g.L2:
        raise SingularPosture(f"Type-2 singularity at x = {x:.9g}")
    return np.linalg.solve(A, B)


def leg_angles(g, x, y=0.0):
    """Orientation of each leg (angle of foot->B from the x axis)."""
    q1, q2 = inverse_kinematics(g, x, y)
    return np.arctan2(y - q1, x), np.arctan2(y - q2, x - g.a)


# ---------------------------------------------------------------- transforms

def skew(v):
    return np.array([[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]])


def vee(w):
    return np.array([w[2, 1], w[0, 2], w[1, 0]])


def rotation(axis, angle):
    """Rodrigues rotation about a unit `axis`."""
    k = skew(np.asarray(axis, dtype=float))
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


@dataclass(frozen=True)
class Transform:
    """Rigid placement ``x -> R x + p``."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        R = np.asarray(self.rotation, dtype=float)
        p = np.asarray(self.translation, dtype=float)
        if R.shape != (3, 3) or p.shape != (3,):
            raise ValueError("rotation must be 3x3 and translation a 3-vector")
        if not np.allclose(R.T @ R, np.eye(3), atol=1e-12) or np.linalg.det(R) < 0:
            raise ValueError("rotation is not proper orthonormal")
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "translation", p)

    @classmethod
    def from_matrix(cls, T):
        T = np.asarray(T, dtype=float)
        return cls(T[:3, :3], T[:3, 3])

    @classmethod
    def rot(cls, axis, angle):
        return cls(rotation(axis, angle), np.zeros(3))

    @classmethod
    def trans(cls, p):
        return cls(np.eye(3), np.asarray(p, dtype=float))

    @property
    def matrix(self):
        T = np.eye(4)
        T[:3, :3] = self.rotation
        T[:3, 3] = self.translation
        return T

    def __matmul__(self, other):
        return Transform(self.rotation @ other.rotation,
                         self.rotation @ other.translation + self.translation)


def homogeneous(R=None, p=None):
    T = np.eye(4)
    if R is not None:
        T[:3, :3] = R
    if p is not None:
        T[:3, 3] = p
    return T


def spring_transform(theta):
    """Small-deflection 6-DOF spring displacement: translation then x-y-z rotations."""
    t = np.asarray(theta, dtype=float)
    R = rotation((1, 0, 0), t[3]) @ rotation((0, 1, 0), t[4]) @ rotation((0, 0, 1), t[5])
    return homogeneous(R, t[:3])


# ------------------------------------------------------------ chain elements

@dataclass(frozen=True)
class RigidTransform:
    transform: Transform
    name: str = ""

    n_spring = 0

    def matrix(self, theta=None, dq=0.0):
        return self.transform.matrix

    def generators(self):
        return []


@dataclass(frozen=True)
class ActuatedPrismatic:
    """Actuated rail joint; with a finite `stiffness` (N/m) it adds one spring coordinate."""

    axis: np.ndarray
    value: float
    stiffness: float = None
    name: str = ""

    @property
    def n_spring(self):
        return 0 if self.stiffness is None else 1

    def matrix(self, theta=None, dq=0.0):
        s = self.value + (0.0 if theta is None or self.n_spring == 0 else theta[0])
        return homogeneous(p=np.asarray(self.axis) * s)

    def generators(self):
        if self.n_spring == 0:
            return []
        G = np.zeros((4, 4))
        G[:3, 3] = self.axis
        return [G]

    @property
    def spring_compliance(self):
        return np.array([[1.0 / self.stiffness]])


@dataclass(frozen=True)
class PassiveRevolute:
    axis: np.ndarray
    angle: float
    name: str = ""

    n_spring = 0

    def matrix(self, theta=None, dq=0.0):
        return homogeneous(rotation(self.axis, self.angle + dq))

    def generators(self):
        return []

    def passive_generator(self):
        G = np.zeros((4, 4))
        G[:3, :3] = skew(self.axis)
        return G


@dataclass(frozen=True)
class VirtualSpring6:
    """Six-coordinate virtual spring; `stiffness` is its 6x6 local stiffness."""

    stiffness: np.ndarray
    name: str = ""

    n_spring = 6

    @classmethod
    def from_compliance(cls, c, name=""):
        return cls(invert_symmetric(c, name=f"{name} compliance"), name)

    @property
    def spring_compliance(self):
        return invert_symmetric(self.stiffness, name=f"{self.name} stiffness")

    def matrix(self, theta=None, dq=0.0):
        return np.eye(4) if theta is None else spring_transform(theta)

    def generators(self):
        gens = []
        for k in range(3):
            G = np.zeros((4, 4))
            G[k, 3] = 1.0
            gens.append(G)
        for k in range(3):
            G = np.zeros((4, 4))
            G[:3, :3] = skew(np.eye(3)[k])
            gens.append(G)
        return gens


@dataclass(frozen=True)
class LegChain:
    leg: int
    elements: tuple

    def __len__(self):
        return len(self.elements)

    @property
    def n_spring(self):
        return sum(e.n_spring for e in self.elements)

    @property
    def passive(self):
        return [e for e in self.elements if isinstance(e, PassiveRevolute)]

    @property
    def springs(self):
        return [e for e in self.elements if e.n_spring > 0]

    def pose(self, theta=None, dq=None):
        """End pose (4x4) with spring coordinates `theta` and passive offsets `dq`."""
        theta = np.zeros(self.n_spring) if theta is None else np.asarray(theta, dtype=float)
        dq = np.zeros(len(self.passive)) if dq is None else np.asarray(dq, dtype=float)
        T = np.eye(4)
        it, iq = 0, 0
        for e in self.elements:
            if isinstance(e, PassiveRevolute):
                T = T @ e.matrix(dq=dq[iq])
                iq += 1
            else:
                T = T @ e.matrix(theta[it:it + e.n_spring] if e.n_spring else None)
                it += e.n_spring
        return T

    def partial_products(self):
        """Nominal products to the left of and including each element."""
        left = [np.eye(4)]
        for e in self.elements:
            left.append(left[-1] @ e.matrix())
        return left


def build_leg_chain(g, leg, x, y=0.0, dataset=None, *, foot_compliance=None,
                    leg_compliance=None, tool_compliance=None, tool_spring=True,
                    foot_angle=DEFAULT_FOOT_ANGLE, tool_offset=0.0,
                    drive_stiffness=None):
    """Serial chain from the base to the tool point for leg 1 or 2.

    Element order: base transform, actuated rail joint (along y), foot
    transform, foot spring, passive revolute, leg transform, leg spring,
    [leg 2: second passive revolute], tool transform, [leg 1: tool spring].

    Compliances default to those of `dataset`. `foot_angle` orients the foot
    spring frame about z; `tool_offset` is the height of the reference point
    above B. The tool spring is attached to leg 1 only.
    """
    if leg not in (1, 2):
        raise ValueError("leg must be 1 or 2")
    if dataset is not None:
        foot_compliance = dataset.compliance("foot") if foot_compliance is None else foot_compliance
        if leg_compliance is None:
            leg_compliance = dataset.compliance(f"leg{leg}")
        if tool_compliance is None:
            tool_compliance = dataset.compliance("tool")
    if foot_compliance is None or leg_compliance is None:
        raise ValueError("foot and leg compliances are required")

    q = inverse_kinematics(g, x, y)
    phi = leg_angles(g, x, y)
    rail = (0.0, g.a)[leg - 1]
    L = (g.L1, g.L2)[leg - 1]
    qi, ph = q[leg - 1], phi[leg - 1]

    el = [
        RigidTransform(Transform.trans([rail, 0.0, 0.0]), "base"),
        ActuatedPrismatic(Y_AXIS, qi, drive_stiffness, "rail"),
        RigidTransform(Transform.rot(Z_AXIS, foot_angle), "foot"),
        VirtualSpring6.from_compliance(foot_compliance, "foot"),
        PassiveRevolute(Z_AXIS, ph - foot_angle, "foot hinge"),
        RigidTransform(Transform.trans([L, 0.0, 0.0]), "leg"),
        VirtualSpring6.from_compliance(leg_compliance, f"leg{leg}"),
    ]
    if leg == 2:
        el.append(PassiveRevolute(Z_AXIS, phi[0] - ph, "tool hinge"))
    el.append(RigidTransform(Transform(rotation(Z_AXIS, -phi[0]), [0.0, 0.0, tool_offset]), "tool"))
    if leg == 1 and tool_spring and tool_compliance is not None:
        el.append(VirtualSpring6.from_compliance(tool_compliance, "tool"))
    return LegChain(leg, tuple(el))
