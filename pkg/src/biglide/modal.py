"""Lumped-parameter elastodynamics with rigid finite elements.

A link is split into rigid elements joined by 6-DOF springs. Each element
carries a twist ``q_k = (x, y, z, phi_x, phi_y, phi_z)`` of its mass center in
the global frame. A spring at point ``p`` between elements ``i`` and ``j`` is
deflected by

    theta = C(p - c_j) q_j - C(p - c_i) q_i,    C(r) = [[I, -[r]x], [0, I]],

so rigid motions leave every spring unstrained. The global stiffness is
``C^T blockdiag(K_s) C`` and the mass matrix is block diagonal.
"""

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .beams import segment_stiffness
from .errors import InconsistentTopology, InvalidElementCount, NoDynamicDOF
from .mechanism import skew
from .numerics import ZERO_EIG_RTOL, generalized_eigs

REVOLUTE_SELECTOR = np.diag([1.0, 1.0, 1.0, 1.0, 1.0, 0.0])
OUT_OF_PLANE = (2, 3, 4)
IN_PLANE = (0, 1, 5)
CLASS_THRESHOLD = 0.6


def block_rotation(R):
    return sla.block_diag(R, R)


def lever(r):
    """Twist transfer from a mass center to a point offset by `r`."""
    C = np.eye(6)
    C[:3, 3:] = -skew(np.asarray(r, dtype=float))
    return C


@dataclass(frozen=True)
class RigidElement:
    """Rigid body: mass (kg), central inertia in its local frame, global center, orientation.

    A zero mass is allowed for auxiliary bodies; their massless coordinates are
    condensed out during assembly.
    """

    mass: float
    inertia: np.ndarray
    center: np.ndarray
    orientation: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        if not np.isfinite(self.mass) or self.mass < 0:
            raise ValueError(f"mass must be nonnegative, got {self.mass}")
        J = np.asarray(self.inertia, dtype=float)
        if J.shape != (3, 3) or not np.allclose(J, J.T, rtol=1e-8, atol=0):
            raise ValueError("inertia must be a symmetric 3x3 matrix")
        object.__setattr__(self, "inertia", J)
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "orientation", np.asarray(self.orientation, dtype=float))


@dataclass(frozen=True)
class SpringLink:
    """Spring between consecutive elements; `stiffness` is local, axis along local x.

    `d_prev` and `d_next` are the distances from the spring to the centers of
    the preceding and following elements.
    """

    stiffness: np.ndarray
    position: np.ndarray
    orientation: np.ndarray
    d_prev: float
    d_next: float

    @property
    def global_stiffness(self):
        D = block_rotation(self.orientation)
        return D @ self.stiffness @ D.T


@dataclass(frozen=True)
class DiscretizedLink:
    elements: tuple
    springs: tuple
    beam: object = None

    def __iter__(self):
        return iter((self.elements, self.springs))

    @property
    def mass(self):
        return sum(e.mass for e in self.elements)


def single_body(element):
    """A link made of one rigid element and no springs."""
    return DiscretizedLink((element,), ())


def element_mass_matrix(e):
    """6x6 mass matrix of a rigid element about its center, in global axes."""
    D = block_rotation(e.orientation)
    M = D @ sla.block_diag(e.mass * np.eye(3), e.inertia) @ D.T
    return 0.5 * (M + M.T)


def coupling_matrices(d_2k, d_1k1):
    """Lever matrices from the two neighbouring centers to the spring (axis along x)."""
    return lever([d_2k, 0.0, 0.0]), lever([-d_1k1, 0.0, 0.0])


def discretize_link(b, m, origin=(0.0, 0.0, 0.0), orientation=None):
    """Split beam `b` into `m` rigid elements and ``m - 1`` springs.

    The ``m - 1`` segments have length ``h = L / (m - 1)``; springs sit at the
    segment midpoints and carry the segment stiffness, so the elements span
    between consecutive midpoints and the two end elements are half-length.
    The link starts at `origin` and runs along the first column of
    `orientation`.
    """
    if int(m) != m or m < 2:
        raise InvalidElementCount(f"element count must be an integer >= 2, got {m}")
    m = int(m)
    R = np.eye(3) if orientation is None else np.asarray(orientation, dtype=float)
    o = np.asarray(origin, dtype=float)
    u = R[:, 0]
    L = b.L
    h = L / (m - 1)
    mu = b.mass_per_length
    # slender-rod inertia; polar term from the section radii of gyration
    r2 = (b.EIy + b.EIz) / b.EA

    elements = []
    for k in range(m):
        lo = max(0.0, (k - 0.5) * h)
        hi = min(L, (k + 0.5) * h)
        lk = hi - lo
        mk = mu * lk
        J = np.diag([mk * r2, mk * lk**2 / 12, mk * lk**2 / 12])
        elements.append(RigidElement(mk, J, o + u * (lo + hi) / 2, R))

    Ks = segment_stiffness(b.with_length(h))
    springs = []
    for k in range(m - 1):
        p = (k + 0.5) * h
        c_prev = 0.5 * (max(0.0, (k - 0.5) * h) + (k + 0.5) * h)
        c_next = 0.5 * ((k + 0.5) * h + min(L, (k + 1.5) * h))
        springs.append(SpringLink(Ks, o + u * p, R, p - c_prev, c_next - p))
    return DiscretizedLink(tuple(elements), tuple(springs), b)


# ------------------------------------------------------------------- joints

@dataclass(frozen=True)
class Clamp:
    """Element fixed to the ground (its coordinates are removed)."""

    link: int
    element: int


@dataclass(frozen=True)
class RJoint:
    """Internal spring of a link released about its local z axis."""

    link: int
    spring: int


@dataclass(frozen=True)
class PointMass:
    """Concentrated mass (kg) rigidly attached to an element at `point` (global)."""

    link: int
    element: int
    mass: float
    point: np.ndarray = None


@dataclass(frozen=True)
class Hinge:
    """Revolute joint between two elements of different links.

    The joint spring is ``D P K_s P D^T`` with ``P = diag(1,1,1,1,1,0)``,
    `stiffness` local to `orientation`, whose third column is the hinge axis.
    """

    link_a: int
    element_a: int
    link_b: int
    element_b: int
    point: np.ndarray
    stiffness: np.ndarray
    orientation: np.ndarray = field(default_factory=lambda: np.eye(3))


@dataclass(frozen=True)
class GroundSpring:
    """6-DOF spring (global axes) from the ground to an element at `point`."""

    link: int
    element: int
    point: np.ndarray
    stiffness: np.ndarray


def revolute_spring(K_s, orientation=None):
    """Joint stiffness with the rotation about local z released."""
    D = block_rotation(np.eye(3) if orientation is None else orientation)
    return D @ REVOLUTE_SELECTOR @ K_s @ REVOLUTE_SELECTOR @ D.T


@dataclass(frozen=True)
class AssembledSystem:
    """Reduced mass/stiffness pair.

    `dof_map` maps ``(link, element)`` to the rows it owns in ``M`` and ``K``
    (fewer than six when coordinates were condensed); `components` gives the
    twist component (0..5 for x, y, z, phi_x, phi_y, phi_z) of every row.
    `grounded` is set when a clamp or ground spring removes the rigid modes.
    """

    M: np.ndarray
    K: np.ndarray
    dof_map: dict
    components: np.ndarray
    n_condensed: int = 0
    grounded: bool = False

    @property
    def n_dof(self):
        return len(self.M)


def _spring_operator(n, i, ci, j, cj, point):
    """Rows mapping global coordinates to the spring deflection."""
    G = np.zeros((6, n))
    if j is not None:
        G[:, 6 * j:6 * j + 6] += lever(point - cj)
    if i is not None:
        G[:, 6 * i:6 * i + 6] -= lever(point - ci)
    return G


def assemble_system(links, joints=()):
    """Global ``(M, K)`` of connected links with clamps, hinges and masses.

    Clamped coordinates are removed; coordinates carrying no mass at all are
    statically condensed.
    """
    links = list(links)
    if not links:
        raise InconsistentTopology("no links")
    offsets = np.cumsum([0] + [len(l.elements) for l in links])
    n_el = offsets[-1]
    n = 6 * n_el

    def index(link, element):
        if not (0 <= link < len(links)) or not (0 <= element < len(links[link].elements)):
            raise InconsistentTopology(f"no element {element} in link {link}")
        return offsets[link] + element

    elements = [e for l in links for e in l.elements]
    centers = [e.center for e in elements]
    blocks = [element_mass_matrix(e) for e in elements]

    released = set()
    clamped = set()
    for jt in joints:
        if isinstance(jt, RJoint):
            if not (0 <= jt.link < len(links)) or not (0 <= jt.spring < len(links[jt.link].springs)):
                raise InconsistentTopology(f"no spring {jt.spring} in link {jt.link}")
            released.add((jt.link, jt.spring))
        elif isinstance(jt, Clamp):
            clamped.add(index(jt.link, jt.element))
        elif isinstance(jt, PointMass):
            k = index(jt.link, jt.element)
            if jt.mass < 0:
                raise InconsistentTopology("point mass must be nonnegative")
            r = np.zeros(3) if jt.point is None else np.asarray(jt.point) - centers[k]
            G = lever(r)[:3]
            blocks[k] = blocks[k] + jt.mass * (G.T @ G)

    K = np.zeros((n, n))

    def add(G, Ks):
        nonlocal K
        K += G.T @ Ks @ G

    for li, l in enumerate(links):
        for si, s in enumerate(l.springs):
            i = offsets[li] + si
            Ks = s.global_stiffness
            if (li, si) in released:
                Ks = revolute_spring(s.stiffness, s.orientation)
            add(_spring_operator(n, i, centers[i], i + 1, centers[i + 1], s.position), Ks)
    for jt in joints:
        if isinstance(jt, Hinge):
            a = index(jt.link_a, jt.element_a)
            b = index(jt.link_b, jt.element_b)
            if a == b:
                raise InconsistentTopology("hinge connects an element to itself")
            p = np.asarray(jt.point, dtype=float)
            add(_spring_operator(n, a, centers[a], b, centers[b], p),
                revolute_spring(jt.stiffness, jt.orientation))
        elif isinstance(jt, GroundSpring):
            k = index(jt.link, jt.element)
            p = np.asarray(jt.point, dtype=float)
            add(_spring_operator(n, None, None, k, centers[k], p), jt.stiffness)

    M = sla.block_diag(*blocks)
    K = 0.5 * (K + K.T)
    components = np.tile(np.arange(6), n_el)
    owner = np.repeat(np.arange(n_el), 6)

    keep = np.array([owner[r] not in clamped for r in range(n)], dtype=bool)
    massless = keep & (np.abs(np.diag(M)) == 0.0)
    dyn = keep & ~massless
    if not dyn.any():
        raise NoDynamicDOF("no coordinate carries mass")
    kd = np.flatnonzero(dyn)
    kz = np.flatnonzero(massless)
    Kr = K[np.ix_(kd, kd)]
    if len(kz):
        Kzz = K[np.ix_(kz, kz)]
        try:
            cz = sla.cho_factor(Kzz)
        except np.linalg.LinAlgError as exc:
            raise InconsistentTopology("massless coordinates are not restrained") from exc
        Kr = Kr - K[np.ix_(kd, kz)] @ sla.cho_solve(cz, K[np.ix_(kz, kd)])
        Kr = 0.5 * (Kr + Kr.T)
    Mr = M[np.ix_(kd, kd)]

    dof_map = {}
    pos = {r: i for i, r in enumerate(kd)}
    for li, l in enumerate(links):
        for ei in range(len(l.elements)):
            k = offsets[li] + ei
            rows = [pos[r] for r in range(6 * k, 6 * k + 6) if r in pos]
            if rows:
                dof_map[(li, ei)] = np.array(rows)
    grounded = bool(clamped) or any(isinstance(jt, GroundSpring) for jt in joints)
    return AssembledSystem(Mr, Kr, dof_map, components[kd], len(kz), grounded)


# ------------------------------------------------------------------- modes

class ModeClass(enum.Enum):
    OUT_OF_PLANE_BENDING = "OutOfPlaneBending"
    IN_PLANE = "InPlane"
    OTHER = "Other"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ModeResult:
    frequency: float
    shape: np.ndarray
    classification: ModeClass
    out_of_plane_fraction: float


def out_of_plane_fraction(shape, components):
    s2 = np.asarray(shape, dtype=float) ** 2
    total = s2.sum()
    if total == 0:
        return 0.0
    return float(s2[np.isin(components, OUT_OF_PLANE)].sum() / total)


def classify_mode(shape, components):
    """Classify a mode shape by the share of squared components out of the plane.

    `components` is an `AssembledSystem` or the per-row component index array.
    """
    comp = components.components if isinstance(components, AssembledSystem) else components
    f = out_of_plane_fraction(shape, comp)
    if f >= CLASS_THRESHOLD:
        return ModeClass.OUT_OF_PLANE_BENDING
    if 1.0 - f >= CLASS_THRESHOLD:
        return ModeClass.IN_PLANE
    return ModeClass.OTHER


def natural_frequencies(sys, n=None, zero_rtol=None):
    """Lowest `n` modes of `sys` (all when `n` is None), frequencies in Hz.

    Eigenvalues below ``zero_rtol`` times the largest are reported as rigid
    modes. The default is ZERO_EIG_RTOL for free assemblies and 0 for grounded
    ones, whose spectrum can span more decades than the relative threshold.
    """
    if zero_rtol is None:
        zero_rtol = 0.0 if sys.grounded else ZERO_EIG_RTOL
    sol = generalized_eigs(sys.K, sys.M, zero_rtol=zero_rtol)
    n = len(sol) if n is None else min(n, len(sol))
    out = []
    for i in range(n):
        v = sol.eigenvectors[:, i]
        f = out_of_plane_fraction(v, sys.components)
        out.append(ModeResult(float(sol.frequencies_hz[i]), v,
                              classify_mode(v, sys.components), f))
    return out
