import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from c3a.errors import DegenerateGeometryError, DomainError
from c3a.geometry import (ConfigPoint, MomentumPoint, Region, RegionParams, channel_coords, channel_matrix,
                          far_pair_signs, from_particles, hyperradius, region_classify, rho, to_particles)

vec = arrays(float, 3, elements=st.floats(-1e3, 1e3))


def test_particle_definitions_give_stated_relations():
    # x2 and x3 written out from the particle coordinates by hand
    x1, y1 = np.array([0.3, -1.2, 2.0]), np.array([1.1, 0.4, -0.7])
    z1, z2, z3 = to_particles(x1, y1)
    np.testing.assert_allclose(z1 + z2 + z3, 0, atol=1e-15)
    np.testing.assert_allclose((z3 - z2) / np.sqrt(2), x1, atol=1e-15)
    np.testing.assert_allclose(np.sqrt(1.5) * z1, y1, atol=1e-15)
    x2, _ = channel_coords(x1, y1, 2)
    x3, _ = channel_coords(x1, y1, 3)
    np.testing.assert_allclose(x2, (z1 - z3) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(x3, (z2 - z1) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(x2, -x1 / 2 + np.sqrt(3) / 2 * y1, atol=1e-15)
    np.testing.assert_allclose(x3, -x1 / 2 - np.sqrt(3) / 2 * y1, atol=1e-15)


def test_channel_one_is_identity():
    np.testing.assert_array_equal(channel_matrix(1), np.eye(2))


@pytest.mark.parametrize("j", [1, 2, 3])
def test_far_pair_signs_match_channel_maps(j):
    signs = dict(far_pair_signs(j))
    x, y = np.array([0.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0])
    m = channel_matrix(j)
    x1, y1 = m[0, 0] * x + m[1, 0] * y, m[0, 1] * x + m[1, 1] * y
    for k, c in signs.items():
        xk, _ = channel_coords(x1, y1, k)
        np.testing.assert_allclose(xk, c * np.sqrt(3) / 2 * y, atol=1e-15)
    assert sorted(signs.values()) == [-1, 1]


def test_far_pair_signs_cyclic_convention():
    assert far_pair_signs(1) == ((2, 1), (3, -1))


def test_bad_channel_index():
    with pytest.raises(DomainError):
        channel_matrix(4)


@settings(max_examples=200, deadline=None)
@given(vec, vec, vec, vec, st.sampled_from([1, 2, 3]))
def test_pairing_and_norm_invariance(x1, y1, k1, p1, j):
    xj, yj = channel_coords(x1, y1, j)
    kj, pj = channel_coords(k1, p1, j)
    scale = 1.0 + np.linalg.norm(np.r_[x1, y1]) * np.linalg.norm(np.r_[k1, p1])
    assert abs(xj @ kj + yj @ pj - (x1 @ k1 + y1 @ p1)) <= 1e-12 * scale
    assert abs(hyperradius(xj, yj) - hyperradius(x1, y1)) <= 1e-12 * (1 + hyperradius(x1, y1))


@settings(max_examples=200, deadline=None)
@given(vec, vec, st.sampled_from([1, 2, 3]))
def test_particle_round_trip(x1, y1, j):
    xj, yj = channel_coords(x1, y1, j)
    xp, yp = from_particles(*to_particles(x1, y1), j=j)
    tol = 1e-12 * (1 + np.abs(np.r_[x1, y1]).max())
    assert np.abs(xp - xj).max() <= tol and np.abs(yp - yj).max() <= tol


def test_config_and_momentum_points():
    c = ConfigPoint([3.0, 0, 0], [0, 4.0, 0])
    assert c.z == pytest.approx(5.0)
    q = MomentumPoint([1.0, 0, 0], [0, 2.0, 0])
    assert q.energy == pytest.approx(5.0)
    assert q.k_mag(1) == pytest.approx(1.0)
    # energy is channel independent
    assert sum(np.sum(v**2) for v in q.channel(2)) == pytest.approx(5.0)


def test_check_generic_rejects_vanishing_pair_momentum():
    # k2 = -k1/2 + (sqrt3/2) p1 vanishes here
    q = MomentumPoint([1.0, 0, 0], [1 / np.sqrt(3), 0, 0])
    with pytest.raises(DegenerateGeometryError):
        q.check_generic(0.05)


def test_rho_and_regions():
    assert rho(0.5, 100.0) == -np.inf
    assert rho(10.0, 100.0) == pytest.approx(0.5)
    rp = RegionParams(0.55, 0.9)
    y = np.array([0.0, 0.0, 1000.0])
    assert region_classify(ConfigPoint([1.0, 0, 0], y), 1, rp) is Region.INNER
    assert region_classify(ConfigPoint([1000**0.7, 0, 0], y), 1, rp) is Region.OVERLAP
    assert region_classify(ConfigPoint([1000**0.95, 0, 0], y), 1, rp) is Region.OUTER
    with pytest.raises(DegenerateGeometryError):
        region_classify(ConfigPoint([1.0, 0, 0], [0, 0, 0.5]), 1, rp)


@pytest.mark.parametrize("mu,nu", [(0.5, 0.9), (0.8, 0.7), (0.6, 1.0)])
def test_region_params_validation(mu, nu):
    with pytest.raises(DomainError):
        RegionParams(mu, nu)
