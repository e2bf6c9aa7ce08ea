"""Lumped (virtual-spring) stiffness of the legs and of the whole mechanism.

Each leg is a serial chain with rigid transforms, passive joints and 6-DOF
virtual springs. Its Cartesian stiffness at the tool point follows from the
bordered kinetostatic system

    [[J_th K_th^-1 J_th^T, J_q], [J_q^T, 0]] [f; dq] = [dt; 0]

and the legs add in parallel.
"""

import numpy as np
import scipy.linalg as sla

from .errors import Singular, SingularBorderedSystem
from .mechanism import (ActuatedPrismatic, PassiveRevolute, build_leg_chain, vee)
from .numerics import invert_symmetric, solve_linear, symmetrize


def _twist_column(dT, R_end):
    """(p', phi') from the derivative ``dT`` of the end pose."""
    return np.concatenate([dT[:3, 3], vee(dT[:3, :3] @ R_end.T)])


def _chain_jacobian(chain, passive):
    left = chain.partial_products()
    T_end = left[-1]
    R_end = T_end[:3, :3]
    cols = []
    for i, e in enumerate(chain.elements):
        if passive:
            gens = [e.passive_generator()] if isinstance(e, PassiveRevolute) else []
        else:
            gens = e.generators()
        if not gens:
            continue
        HL = left[i]
        # H^R: product of everything to the right of element i
        HR = np.linalg.solve(left[i + 1], T_end)
        E = e.matrix()
        for G in gens:
            cols.append(_twist_column(HL @ G @ E @ HR if isinstance(e, PassiveRevolute)
                                      else HL @ E @ G @ HR, R_end))
    return np.array(cols).T.reshape(6, len(cols))


def spring_jacobian(chain):
    """6 x n_theta matrix of tool-point twists per unit spring coordinate."""
    return _chain_jacobian(chain, passive=False)


def passive_jacobian(chain):
    """6 x n_q matrix of tool-point twists per unit passive-joint rotation."""
    return _chain_jacobian(chain, passive=True)


def finite_difference_jacobian(chain, passive=False, h=1e-7):
    """Central-difference reference for `spring_jacobian` / `passive_jacobian`."""
    n = len(chain.passive) if passive else chain.n_spring
    R_end = chain.pose()[:3, :3]
    cols = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        if passive:
            dT = (chain.pose(dq=e) - chain.pose(dq=-e)) / (2 * h)
        else:
            dT = (chain.pose(theta=e) - chain.pose(theta=-e)) / (2 * h)
        cols.append(_twist_column(dT, R_end))
    return np.array(cols).T.reshape(6, n)


def spring_compliances(chain):
    return [e.spring_compliance for e in chain.springs]


def assemble_K_theta(chain):
    """Block-diagonal stiffness of all springs of `chain`, in chain order."""
    blocks = []
    for e in chain.springs:
        if isinstance(e, ActuatedPrismatic):
            blocks.append(np.array([[e.stiffness]]))
        else:
            blocks.append(symmetrize(e.stiffness, name=f"{e.name} stiffness"))
    return sla.block_diag(*blocks)


def leg_cartesian_stiffness(J_theta, J_q, K_theta):
    """Leg stiffness: upper-left 6x6 block of the inverted bordered matrix."""
    J_theta = np.asarray(J_theta, dtype=float)
    J_q = np.asarray(J_q, dtype=float).reshape(6, -1)
    S = J_theta @ invert_symmetric(K_theta, name="K_theta") @ J_theta.T
    nq = J_q.shape[1]
    bordered = np.block([[S, J_q], [J_q.T, np.zeros((nq, nq))]])
    try:
        if nq == 0:
            inv = invert_symmetric(S, name="S_theta")
        else:
            inv = solve_linear(bordered, np.eye(6 + nq))
    except (Singular, np.linalg.LinAlgError) as exc:
        raise SingularBorderedSystem(str(exc)) from exc
    K = inv[:6, :6]
    return 0.5 * (K + K.T)


def leg_stiffness(chain):
    """Cartesian stiffness of one leg chain at the tool point."""
    return leg_cartesian_stiffness(spring_jacobian(chain), passive_jacobian(chain),
                                   assemble_K_theta(chain))


def manipulator_stiffness(legs):
    """Parallel combination: the sum of the leg stiffness matrices."""
    legs = list(legs)
    if not legs:
        raise ValueError("at least one leg is required")
    K = np.sum(legs, axis=0)
    return 0.5 * (K + K.T)


def deflection_refined(K_m, wrench):
    """Twist ``K_m^-1 f`` of the tool point under `wrench` (N, N m)."""
    w = np.asarray(wrench, dtype=float)
    if not np.any(w):
        return np.zeros(6)
    return solve_linear(K_m, w)


def refined_stiffness(dataset, x, y=0.0, geometry=None, *, leg_compliances=None,
                      **chain_options):
    """Mechanism stiffness at B for posture ``(x, y)``.

    `leg_compliances` may replace the dataset leg compliances, e.g. with
    equivalent-beam matrices; `chain_options` go to `build_leg_chain`.
    """
    g = dataset.geometry() if geometry is None else geometry
    Ks = []
    for leg in (1, 2):
        lc = None if leg_compliances is None else leg_compliances[leg - 1]
        chain = build_leg_chain(g, leg, x, y, dataset, leg_compliance=lc, **chain_options)
        Ks.append(leg_stiffness(chain))
    return manipulator_stiffness(Ks)
