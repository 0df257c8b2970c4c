import time

import mpmath
import numpy as np
import pytest

from c3a.errors import BandLimitError, DegenerateGeometryError, DomainError
from c3a.quad import make_bump, orthonormal_frame
from c3a.residual import twobody_residual
from c3a.twobody import (CoulombParams, PartialWaveOp, SphereFunction, coulomb_norm, effective_alpha, g_apply,
                         psi_c, psi_m, s_c_kummer, sm_apply, weak_check_2body)


def test_psi_c_matches_closed_form():
    cp = CoulombParams(1.0, [0.3, -0.4, 1.1])
    x = np.array([2.0, 1.0, -3.0])
    eta = cp.eta
    s = cp.kmag * np.linalg.norm(x) - x @ cp.k
    ref = (mpmath.gamma(1 + 1j * eta) * mpmath.exp(-mpmath.pi * eta / 2) / (2 * mpmath.pi) ** 1.5
           * mpmath.exp(1j * (x @ cp.k)) * mpmath.hyp1f1(-1j * eta, 1, 1j * s))
    assert abs(psi_c(x, cp) - complex(ref)) <= 1e-12 * abs(complex(ref))


def test_coulomb_norm_modulus():
    eta = 0.8
    expected = (2 * np.pi) ** -3 * 2 * np.pi * eta / np.expm1(2 * np.pi * eta)
    assert abs(coulomb_norm(eta)) ** 2 == pytest.approx(expected, rel=1e-13)


def test_zero_coupling_gives_plane_wave():
    cp = CoulombParams(0.0, [1.0, 2.0, 0.5])
    x = np.array([[1.0, 0.0, 3.0], [-2.0, 5.0, 1.0]])
    np.testing.assert_allclose(psi_c(x, cp), (2 * np.pi) ** -1.5 * np.exp(1j * x @ cp.k), rtol=1e-15)


def test_pde_residual_at_reference_point():
    cp = CoulombParams(1.0, [1.0, 0.0, 0.0])
    assert twobody_residual(cp, np.array([1.3, 0.7, -0.4]), h=1e-3) <= 1e-6


def test_screen_solution_uses_effective_coupling():
    p = np.array([0.4, 0.2, -0.1])
    y = np.array([[3.0, -1.0, 2.0], [10.0, 4.0, -7.0]])
    np.testing.assert_allclose(psi_m(y, p, 1.0), psi_c(y, CoulombParams(effective_alpha(1.0), p)))
    assert np.all(twobody_residual(CoulombParams(effective_alpha(1.0), p), y) <= 1e-6)


def test_kernel_vanishes_without_coupling_and_is_singular_forward():
    xh = np.array([0.0, 1.0, 0.0])
    assert s_c_kummer(xh, CoulombParams(0.0, [0, 0, 1.0])) == 0
    with pytest.raises(DegenerateGeometryError):
        s_c_kummer(np.array([0.0, 0.0, 1.0]), CoulombParams(1.0, [0, 0, 2.0]))


def _testfn(khat, plateau=0.0):
    e1, _ = orthonormal_frame(khat)
    side = np.cos(1.9) * khat + np.sin(1.9) * e1
    return (make_bump(-khat, 0.5, plateau=plateau, name="back")
            + make_bump(side, 0.5, 0.7, plateau=plateau, name="side"))


def test_weak_law_without_coupling_is_sharp():
    # plane wave: only the incoming delta term survives and a flat-topped
    # bump removes the curvature correction
    cp = CoulombParams(0.0, [0.0, 0.0, 1.0])
    t0 = time.perf_counter()
    wc = weak_check_2body(cp, 800.0, _testfn(cp.khat, plateau=0.5))
    assert wc.converged and wc.relerr < 1e-3
    assert time.perf_counter() - t0 < 30


def test_weak_law_error_shrinks():
    cp = CoulombParams(1.0, [0.0, 0.0, 1.0])
    errs = [weak_check_2body(cp, kr, _testfn(cp.khat)).relerr for kr in (200.0, 800.0)]
    assert errs[1] < errs[0] and errs[1] < 0.05


def test_weak_law_preconditions():
    cp = CoulombParams(1.0, [0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        weak_check_2body(cp, 10.0, _testfn(cp.khat))
    with pytest.raises(DomainError):
        weak_check_2body(cp, 800.0, make_bump(cp.khat, 0.3))


def test_partial_wave_operator_is_unitary_and_inverted_by_g():
    pw = PartialWaveOp(0.9, lmax=30)
    np.testing.assert_allclose(np.abs(pw.eigenvalues), 1.0, atol=1e-15)
    f = SphereFunction.from_callable(lambda x: x[..., 0] * x[..., 2] ** 2 + 0.5j * x[..., 1], 30)
    back = g_apply(sm_apply(f, pw), pw)
    assert np.abs(back.coeffs - f.coeffs).max() <= 1e-12
    assert sm_apply(f, pw).l2_norm() == pytest.approx(f.l2_norm(), rel=1e-13)


def test_sphere_function_round_trip():
    f = lambda x: np.exp(x[..., 2]) * (1 + x[..., 0])
    sf = SphereFunction.from_callable(f, 40)
    pts = np.array([[0.6, 0.0, 0.8], [0.0, -1.0, 0.0]])
    np.testing.assert_allclose(sf(pts), f(pts), atol=1e-12)


def test_band_limit_violation_is_detected():
    with pytest.raises(BandLimitError):
        SphereFunction.from_callable(lambda x: np.exp(30 * x[..., 2]), 10)


def test_momentum_constructor_uses_effective_coupling():
    pw = PartialWaveOp.for_momentum(1.0, 0.5)
    assert pw.eta_m == pytest.approx(4 / np.sqrt(3) / 1.0)


def test_kernel_selection():
    cp = CoulombParams(1.0, [0.0, 0.0, 1.0])
    # the closed-form kernel is reported only; it need not satisfy the law
    wc = weak_check_2body(cp, 400.0, _testfn(cp.khat), kernel="closed_form")
    assert np.isfinite(wc.relerr)
    with pytest.raises(DomainError):
        weak_check_2body(cp, 400.0, _testfn(cp.khat), kernel="other")
