import numpy as np
import pytest
from numpy.testing import assert_allclose

from biglide import robot
from biglide.beams import BeamParams, beam_end_compliance, fit_equivalent_beam
from biglide.errors import InconsistentTopology, InvalidElementCount, NoDynamicDOF
from biglide.mechanism import rotation
from biglide.modal import (Clamp, ModeClass, PointMass, RigidElement, RJoint, assemble_system,
                           classify_mode, coupling_matrices, discretize_link,
                           element_mass_matrix, lever, natural_frequencies, revolute_spring,
                           single_body)
from biglide.numerics import generalized_eigs

BETA1 = 1.8751040687
BETA1_CC = 4.7300407449


def leg1_beam(ds):
    return fit_equivalent_beam(ds.compliance("leg1"), ds.L1, ds.m_leg1)


def analytic_cantilever(b, beta=BETA1):
    EI = min(b.EIy, b.EIz)
    return beta**2 * np.sqrt(EI / b.mass_per_length) / (2 * np.pi * b.L**2)


def cantilever(b, m, both=False):
    link = discretize_link(b, m)
    joints = [Clamp(0, 0)] + ([Clamp(0, m - 1)] if both else [])
    return assemble_system([link], joints)


def test_minimal_split():
    b = BeamParams(1e6, 1e3, 2e3, 5e2, 0.5, 3.0)
    els, springs = discretize_link(b, 2)
    assert len(els) == 2 and len(springs) == 1
    assert_allclose([e.mass for e in els], [0.75, 0.75])
    with pytest.raises(InvalidElementCount):
        discretize_link(b, 1)


def test_mass_and_static_tip_compliance(ds):
    b = leg1_beam(ds)
    link = discretize_link(b, 20)
    assert_allclose(link.mass, ds.m_leg1, rtol=1e-12)
    sys = assemble_system([link], [Clamp(0, 0)])
    rows = sys.dof_map[(0, 19)]
    G = lever(np.array([b.L, 0, 0]) - link.elements[-1].center)
    C = G @ np.linalg.inv(sys.K)[np.ix_(rows, rows)] @ G.T
    ref = beam_end_compliance(b)
    assert_allclose(np.diag(C), np.diag(ref), rtol=1e-2)


def test_cantilever_first_frequency(ds):
    b = leg1_beam(ds)
    f1 = natural_frequencies(cantilever(b, 20), 1)[0].frequency
    assert abs(f1 / analytic_cantilever(b) - 1) < 0.01


def test_convergence_is_monotone(ds):
    b = leg1_beam(ds)
    f = analytic_cantilever(b)
    err = [abs(natural_frequencies(cantilever(b, m), 1)[0].frequency / f - 1) for m in (5, 10, 20, 40)]
    assert all(e2 <= e1 + 1e-3 for e1, e2 in zip(err, err[1:]))
    assert err[-1] < err[0]


def test_fine_mesh_keeps_first_mode(ds):
    # axial springs of an 80-element mesh sit > 1e9 above f1^2
    sys = cantilever(leg1_beam(ds), 80)
    assert sys.grounded
    f1 = natural_frequencies(sys, 1)[0].frequency
    assert abs(f1 / analytic_cantilever(leg1_beam(ds)) - 1) < 1e-3
    free = assemble_system([discretize_link(leg1_beam(ds), 80)])
    assert not free.grounded
    assert sum(m.frequency == 0.0 for m in natural_frequencies(free, 8)) == 6


def test_clamped_clamped_ratio(ds):
    b = leg1_beam(ds)
    cf = natural_frequencies(cantilever(b, 20), 1)[0].frequency
    cc = natural_frequencies(cantilever(b, 20, both=True), 1)[0].frequency
    assert_allclose(cc / cf, (BETA1_CC / BETA1) ** 2, rtol=0.02)


def test_element_mass_matrix():
    e = RigidElement(2.0, 3.0 * np.eye(3), np.zeros(3))
    assert_allclose(element_mass_matrix(e), np.diag([2, 2, 2, 3, 3, 3.0]))
    J = np.diag([1.0, 2.0, 5.0])
    w0 = np.linalg.eigvalsh(element_mass_matrix(RigidElement(2.0, J, np.zeros(3))))
    R = rotation(np.array([1.0, 2.0, 2.0]) / 3.0, 0.7)
    M = element_mass_matrix(RigidElement(2.0, J, np.zeros(3), R))
    assert_allclose(np.linalg.eigvalsh(M), w0)
    assert_allclose(np.trace(M[:3, :3]), 6.0)


def test_coupling_matrices():
    C2, C1 = coupling_matrices(0.0, 0.0)
    assert_allclose(C2, np.eye(6)) and assert_allclose(C1, np.eye(6))
    C2, C1 = coupling_matrices(0.5, 0.25)
    assert C2[1, 5] == 0.5 and C2[2, 4] == -0.5
    assert C1[1, 5] == -0.25 and C1[2, 4] == 0.25
    q = np.array([0.1, -0.2, 0.3, 0, 0, 0])
    assert_allclose(C1 @ q - C2 @ q, 0.0)


def test_rigid_motion_is_strain_free():
    b = BeamParams(1e6, 1e3, 2e3, 5e2, 1.0, 2.0)
    link = discretize_link(b, 6, origin=[0.2, -0.1, 0.0], orientation=rotation([0, 0, 1], 0.4))
    sys = assemble_system([link])
    centre = np.mean([e.center for e in link.elements], axis=0)
    for k in range(6):
        v = np.zeros(6)
        v[k] = 1.0
        q = np.concatenate([lever(e.center - centre) @ v for e in link.elements])
        assert np.linalg.norm(sys.K @ q) <= 1e-8 * np.linalg.norm(sys.K)


def test_free_link_has_six_rigid_modes(ds):
    sys = assemble_system([discretize_link(leg1_beam(ds), 20)])
    w = generalized_eigs(sys.K, sys.M).eigenvalues
    assert np.count_nonzero(w <= 1e-9 * w[6]) == 6


def test_revolute_spring():
    assert_allclose(revolute_spring(np.eye(6)), np.diag([1, 1, 1, 1, 1, 0.0]))


def test_rjoint_releases_relative_rotation():
    b = BeamParams(1e6, 1e3, 2e3, 5e2, 1.0, 2.0)
    R = rotation([0, 0, 1], 0.3)
    link = discretize_link(b, 5, orientation=R)
    sys = assemble_system([link], [RJoint(0, 2)])
    p = link.springs[2].position
    q = np.zeros(30)
    for k in (3, 4):
        q[6 * k:6 * k + 6] = lever(link.elements[k].center - p) @ [0, 0, 0, 0, 0, 1.0]
    assert abs(q @ sys.K @ q) <= 1e-12 * np.abs(sys.K).max()


def test_pencil_scaling(ds):
    sys = cantilever(leg1_beam(ds), 20)
    f = np.array([m.frequency for m in natural_frequencies(sys, 5)])
    for c in (4.0, 9.0):
        scaled = type(sys)(sys.M, c * sys.K, sys.dof_map, sys.components)
        g = np.array([m.frequency for m in natural_frequencies(scaled, 5)])
        assert_allclose(g, np.sqrt(c) * f, rtol=1e-9)


def test_point_mass_adds_translational_mass():
    e = RigidElement(1.0, np.eye(3), np.zeros(3))
    sys = assemble_system([single_body(e)], [PointMass(0, 0, 4.0)])
    assert_allclose(np.diag(sys.M), [5, 5, 5, 1, 1, 1.0])


def test_topology_errors():
    e = RigidElement(1.0, np.eye(3), np.zeros(3))
    with pytest.raises(InconsistentTopology):
        assemble_system([single_body(e)], [Clamp(0, 3)])
    with pytest.raises(NoDynamicDOF):
        assemble_system([single_body(e)], [Clamp(0, 0)])


def test_classification():
    comp = np.tile(np.arange(6), 2)
    z = np.zeros(12)
    z[2] = 1.0
    x = np.zeros(12)
    x[0] = 1.0
    mixed = (x + z) / np.sqrt(2)
    assert classify_mode(z, comp) is ModeClass.OUT_OF_PLANE_BENDING
    assert classify_mode(x, comp) is ModeClass.IN_PLANE
    assert classify_mode(mixed, comp) is ModeClass.OTHER


def test_robot_assembly(ds):
    sys = robot.robot_system(ds, 0.4975)
    assert_allclose(sys.K, sys.K.T, rtol=0, atol=1e-9 * np.abs(sys.K).max())
    assert_allclose(sys.M, sys.M.T)
    modes = robot.refined_modes(ds, 0.4975, n=sys.n_dof)
    assert all(m.frequency > 0 for m in modes)
    assert modes[0].classification is ModeClass.OUT_OF_PLANE_BENDING
    assert modes[1].classification is ModeClass.IN_PLANE
    # scratch prototype of the same lumped model (dense scipy.linalg.eigh)
    assert_allclose([modes[0].frequency, modes[1].frequency],
                    [108.80876286, 164.02205333], rtol=1e-8)
