import numpy as np
import pytest

from c3a.errors import InsufficientSpanError, SingularityProximityError
from c3a.geometry import ConfigPoint, MomentumPoint
from c3a.residual import (CSV_COLUMNS, RaySpec, Sample, discrepancy, envelope, fit_decay, laplacian3_fd,
                          laplacian6_fd, ray_scan, samples_to_csv)

Q = MomentumPoint([0.3, -0.2, 0.5], [0.4, 0.1, -0.3])


def plane(x1, y1):
    return np.exp(1j * (x1 @ Q.k1 + y1 @ Q.p1))


CFG = ConfigPoint([1.0, 2.0, -0.5], [0.3, 0.7, 1.1])


@pytest.mark.parametrize("order", [2, 4, 6])
def test_laplacian_of_plane_wave(order):
    lap = laplacian6_fd(plane, CFG, 0.05, order)
    exact = -Q.energy * plane(CFG.x1, CFG.y1)
    assert abs(lap - exact) < {2: 1e-4, 4: 1e-7, 6: 1e-9}[order]


@pytest.mark.parametrize("order,rate", [(2, 4), (4, 16)])
def test_convergence_rate(order, rate):
    f = lambda x, y: np.exp(np.sum(x * y, axis=-1) / 5)
    exact = laplacian6_fd(f, CFG, 1e-2, 6)
    e1 = abs(laplacian6_fd(f, CFG, 0.2, order) - exact)
    e2 = abs(laplacian6_fd(f, CFG, 0.1, order) - exact)
    assert e1 / e2 == pytest.approx(rate, rel=0.15)


def test_laplacian3_of_quadratic():
    x = np.array([[1.0, 2.0, 3.0], [0.5, -1.0, 2.0]])
    lap, val = laplacian3_fd(lambda p: np.sum(p**2, axis=-1), x, 0.1)
    np.testing.assert_allclose(lap, 6.0, rtol=1e-12)
    np.testing.assert_allclose(val, np.sum(x**2, axis=1))


def test_discrepancy_of_free_wave_vanishes():
    Qv = discrepancy(plane, CFG, Q, 0.0, 0.02)
    assert abs(Qv) < 1e-8


def test_discrepancy_guards_singularity():
    cfg = ConfigPoint([0.01, 0, 0], [1.0, 0, 0])
    with pytest.raises(SingularityProximityError):
        discrepancy(plane, cfg, Q, 1.0, 0.01)


def test_fit_recovers_power_law_through_oscillation():
    z = np.geomspace(100, 3200, 41)
    values = 3.0 * z**-1.7 * (1 + 0.5 * np.cos(2 * z))
    fit = fit_decay(z=z, values=values)
    assert fit.gamma == pytest.approx(1.7, abs=0.1)
    assert fit.n_envelope <= fit.n_points


def test_fit_exact_power_law():
    z = np.geomspace(10, 1000, 9)
    fit = fit_decay(z=z, values=2.0 * z**-2, use_envelope=False)
    assert fit.gamma == pytest.approx(2.0, abs=1e-12)
    assert fit.C == pytest.approx(2.0, rel=1e-10)


def test_fit_span_requirements():
    with pytest.raises(InsufficientSpanError):
        fit_decay(z=[100, 120, 140, 160], values=[1, 1, 1, 1])
    with pytest.raises(InsufficientSpanError):
        fit_decay(z=[100, 1000, 3000], values=[1, 1, 1])


def test_envelope_keeps_maxima():
    z = np.geomspace(1, 1000, 30)
    v = np.where(np.arange(30) % 2 == 0, 1.0, 0.1)
    idx = envelope(z, v)
    assert np.all(v[idx] == 1.0)


def test_ray_scan_and_csv():
    ray = RaySpec([1.0, 0, 0], [0, 1.0, 0], 0.7, RaySpec.ladder(100, 400, 2), "r")
    samples = ray_scan(plane, ray, Q, 0.0)
    assert len(samples) == 5 and not any(s.error for s in samples)
    text = samples_to_csv(samples)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert len(text.splitlines()) == 6


def test_ray_scan_records_point_failures():
    ray = RaySpec([1.0, 0, 0], [0, 1.0, 0], 1e-6, (100.0,), "hug")
    s = ray_scan(plane, ray, Q, 1.0, h_rule=lambda mx: 0.1)
    assert s[0].error.startswith("SingularityProximityError") and np.isnan(s[0].relQ)
    assert isinstance(s[0], Sample)
