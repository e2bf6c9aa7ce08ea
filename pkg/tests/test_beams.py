import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from biglide.beams import BeamParams, beam_end_compliance, fit_equivalent_beam, scale_geometry
from biglide.errors import InvalidAlpha, NonPositiveCompliance
from biglide.mechanism import workspace_bounds


def element_stiffness_12(EA, EIy, EIz, GJ, L):
    """Textbook two-node 3D Euler-Bernoulli frame element (local axes)."""
    k = np.zeros((12, 12))
    a, t = EA / L, GJ / L
    for i, j, v in ((0, 0, a), (0, 6, -a), (6, 6, a), (3, 3, t), (3, 9, -t), (9, 9, t)):
        k[i, j] = k[j, i] = v
    # bending in x-y: v (1, 7), theta_z (5, 11)
    z = EIz / L**3 * np.array([[12, 6 * L, -12, 6 * L], [6 * L, 4 * L * L, -6 * L, 2 * L * L],
                               [-12, -6 * L, 12, -6 * L], [6 * L, 2 * L * L, -6 * L, 4 * L * L]])
    # bending in x-z: w (2, 8), theta_y (4, 10)
    y = EIy / L**3 * np.array([[12, -6 * L, -12, -6 * L], [-6 * L, 4 * L * L, 6 * L, 2 * L * L],
                               [-12, 6 * L, 12, 6 * L], [-6 * L, 2 * L * L, 6 * L, 4 * L * L]])
    for idx, blk in (([1, 5, 7, 11], z), ([2, 4, 8, 10], y)):
        k[np.ix_(idx, idx)] = blk
    return k


def test_matches_beam_element_oracle():
    for p in ((1.0, 1.0, 1.0, 1.0, 1.0), (2.86e9, 3.1e6, 6.4e6, 4.9e6, 0.85)):
        b = BeamParams(EA=p[0], EIy=p[1], EIz=p[2], GJ=p[3], L=p[4])
        k = element_stiffness_12(b.EA, b.EIy, b.EIz, b.GJ, b.L)
        oracle = np.linalg.inv(k[6:, 6:])
        c = beam_end_compliance(b)
        assert np.abs(c - oracle).max() <= 1e-10 * np.abs(oracle).max()


def test_axial_limit_and_cubic_law():
    b = BeamParams(EA=1.0, EIy=1e12, EIz=1e12, GJ=1e12, L=1.0)
    c = beam_end_compliance(b)
    assert c[0, 0] == 1.0 and np.abs(c).sum() - 1.0 < 1e-11
    b2 = BeamParams(3.0, 2.0, 5.0, 7.0, 0.4)
    assert_allclose(beam_end_compliance(b2.with_length(0.8))[1, 1], 8 * beam_end_compliance(b2)[1, 1])


def test_fit_dataset_values(ds):
    assert_allclose(fit_equivalent_beam(ds.compliance("leg2"), 0.775).EA, 0.775 / 2.71e-10)
    assert_allclose(fit_equivalent_beam(ds.compliance("leg2"), 0.775).EA, 2.86e9, rtol=2e-3)
    assert_allclose(fit_equivalent_beam(ds.compliance("leg1"), 0.85).EIy, 6.42e6, rtol=1e-3)
    b = fit_equivalent_beam(ds.compliance("leg1"), 0.85, 69.705)
    assert_allclose(b.mass, 69.705)


def test_fit_rejects_nonpositive():
    c = np.eye(6)
    c[3, 3] = 0.0
    with pytest.raises(NonPositiveCompliance):
        fit_equivalent_beam(c, 1.0)


def test_scale_geometry(geom):
    g, m = scale_geometry(geom, (69.705, 49.366), 1.0)
    assert g == geom and m == (69.705, 49.366)
    g, m = scale_geometry(geom, (69.705, 49.366), 1.2)
    assert_allclose([g.L1, g.L2, g.a], [1.02, 0.93, 1.245])
    assert_allclose(workspace_bounds(g)[2], 0.705, rtol=1e-14)
    assert_allclose(m, (1.2 * 69.705, 1.2 * 49.366))
    lim = 0.705 / 1.625
    assert scale_geometry(geom, (), lim * (1 + 1e-9))[0].a > 0
    for a in (lim, 0.3, 0.0, -1.0):
        with pytest.raises(InvalidAlpha):
            scale_geometry(geom, (), a)


positive = st.floats(1e-3, 1e3)


@settings(max_examples=50, deadline=None)
@given(positive, positive, positive, positive, st.floats(0.1, 3.0))
def test_fit_round_trip_and_pd(EA, EIy, EIz, GJ, L):
    b = BeamParams(EA, EIy, EIz, GJ, L)
    c = beam_end_compliance(b)
    assert np.linalg.eigvalsh(c).min() > 0
    f = fit_equivalent_beam(c, L)
    assert_allclose([f.EA, f.EIy, f.EIz, f.GJ], [EA, EIy, EIz, GJ], rtol=1e-12)
    assert_allclose(np.diag(beam_end_compliance(f))[:4], np.diag(c)[:4], rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.44, 3.0))
def test_constant_stroke(alpha):
    from biglide.dataset import IFW
    g, _ = scale_geometry(IFW.geometry(), (), alpha)
    assert_allclose(workspace_bounds(g)[2], 0.705, rtol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.5, 2.0))
def test_compliance_length_scaling(alpha):
    b = BeamParams(3.0, 2.0, 5.0, 7.0, 0.8)
    c0, c = beam_end_compliance(b), beam_end_compliance(b.with_length(alpha * b.L))
    assert_allclose(c[1, 1], alpha**3 * c0[1, 1], rtol=1e-12)
    assert_allclose([c[0, 0], c[3, 3]], [alpha * c0[0, 0], alpha * c0[3, 3]], rtol=1e-12)
