import numpy as np
import pytest

from c3a.errors import DegenerateGeometryError, DomainError
from c3a.geometry import MomentumPoint
from c3a.weakform3 import weakform3_terms

Q = MomentumPoint([-0.66, -0.59, 0.08], [0.5, -0.46, 0.57])


def test_zero_coupling_phases():
    t = weakform3_terms(Q, 0.0, 50.0)
    assert t.eta_sum == 0.0
    assert t.incoming_phase == pytest.approx(np.exp(-1j * t.qz))
    assert t.outgoing_phase == pytest.approx(np.exp(1j * t.qz))


def test_prefactor_modulus_at_unit_ratio():
    z = 4 * np.pi / Q.q
    assert abs(weakform3_terms(Q, 1.0, z).prefactor) == pytest.approx(0.5, rel=1e-14)


def test_eta_sum_for_equal_pair_momenta():
    # three pair momenta of unit length at 120 degrees
    k1 = np.array([1.0, 0.0, 0.0])
    p1 = np.array([0.0, 1.0, 0.0])
    q = MomentumPoint(k1, p1)
    assert [q.k_mag(j) for j in (1, 2, 3)] == pytest.approx([1.0, 1.0, 1.0])
    assert weakform3_terms(q, 1.0, 10.0).eta_sum == pytest.approx(1.5)


def test_unit_phases_and_scaling():
    zs = np.geomspace(10, 1e4, 7)
    terms = [weakform3_terms(Q, 1.0, z) for z in zs]
    for t in terms:
        assert abs(t.incoming_phase) == pytest.approx(1.0, abs=1e-15)
        assert t.outgoing_phase == pytest.approx(np.conj(t.incoming_phase), abs=1e-15)
    slope = np.polyfit(np.log(zs), np.log([abs(t.prefactor) for t in terms]), 1)[0]
    assert slope == pytest.approx(-2.5, abs=1e-12)
    assert np.angle(terms[0].prefactor) == pytest.approx(np.angle(np.exp(1.25j * np.pi)))


def test_predict_combines_terms():
    t = weakform3_terms(Q, 1.0, 100.0)
    assert t.predict(2.0, 0.5) == pytest.approx(t.prefactor * (2.0 * t.incoming_phase - 0.5 * t.outgoing_phase))


def test_errors():
    with pytest.raises(DomainError):
        weakform3_terms(Q, 1.0, 0.0)
    with pytest.raises(DegenerateGeometryError):
        weakform3_terms(MomentumPoint([1.0, 0, 0], [1 / np.sqrt(3), 0, 0]), 1.0, 10.0)
