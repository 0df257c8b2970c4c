import numpy as np
import pytest

from c3a.errors import DomainError
from c3a.quad import QuadratureSpec, angular_distance, cap_integrate, make_bump, orthonormal_frame, sphere_integrate


def test_sphere_area_and_second_moment():
    assert sphere_integrate(lambda x: np.ones(x.shape[:-1])).value == pytest.approx(4 * np.pi, rel=1e-13)
    assert sphere_integrate(lambda x: x[..., 2] ** 2).value == pytest.approx(4 * np.pi / 3, rel=1e-13)


def test_oscillatory_plane_wave_average():
    lam = 200.0
    e = np.array([1.0, 2.0, -2.0]) / 3.0
    res = sphere_integrate(lambda x: np.exp(1j * lam * x @ e), QuadratureSpec(32, 4096, 1e-10))
    assert res.converged
    assert abs(res.value - 4 * np.pi * np.sin(lam) / lam) <= 1e-9


def test_cap_area():
    w = 0.7
    res = cap_integrate(lambda x: np.ones(x.shape[:-1]), np.array([0.0, 1.0, 0.0]), w)
    assert res.value == pytest.approx(2 * np.pi * (1 - np.cos(w)), rel=1e-12)


def test_testfn_integration_matches_full_sphere():
    tf = make_bump([0, 0, 1.0], 0.6) + make_bump([1.0, 0, 0], 0.4, 2.0)
    f = lambda x: np.exp(1j * 3 * x[..., 1]) * (1 + x[..., 0])
    caps = sphere_integrate(f, QuadratureSpec(32, 4096, 1e-11), testfn=tf).value
    full = sphere_integrate(lambda x: f(x) * tf(x), QuadratureSpec(64, 4096, 1e-11)).value
    assert abs(caps - full) <= 1e-9 * abs(full)


def test_bump_shapes():
    b = make_bump([0, 0, 1.0], 0.5)
    assert b(np.array([0, 0, 1.0])) == pytest.approx(1.0)
    assert b(np.array([1.0, 0, 0])) == 0.0
    flat = make_bump([0, 0, 1.0], 0.5, plateau=0.5)
    tilt = np.array([np.sin(0.2), 0, np.cos(0.2)])
    assert flat(tilt) == 1.0
    edge = np.array([np.sin(0.49), 0, np.cos(0.49)])
    assert 0.0 <= flat(edge) < 1e-6


def test_bump_validation():
    with pytest.raises(DomainError):
        make_bump([0, 0, 1.0], 2.0)
    with pytest.raises(DomainError):
        make_bump([0, 0, 1.0], 0.5, plateau=1.0)
    with pytest.raises(DomainError):
        make_bump([0, 0, 1.0], 0.5) + make_bump([0.1, 0, 1.0], 0.5)


def test_frame_and_distance():
    c = np.array([0.2, -0.5, 0.9])
    c /= np.linalg.norm(c)
    e1, e2 = orthonormal_frame(c)
    np.testing.assert_allclose([e1 @ c, e2 @ c, e1 @ e2], 0, atol=1e-15)
    assert angular_distance(np.array([1.0, 0, 0]), np.array([0, 1.0, 0])) == pytest.approx(np.pi / 2)
