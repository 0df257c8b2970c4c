"""
Two-body Coulomb scattering: exact plane-wave-type solutions, the Coulomb
scattering kernel on the sphere, the partial-wave form of the scattering
operator and its inverse, and a quadrature check of the weak large-distance
law.

The exact solution of ``-Lap psi + alpha/|x| psi = k^2 psi`` used throughout is

    psi_c(x, k) = N_c exp(i<x,k>) Phi(-i eta, 1, i(k|x| - <x,k>)),
    N_c = (2 pi)^{-3/2} Gamma(1 + i eta) exp(-pi eta / 2),   eta = alpha / (2k).
"""

from __future__ import annotations

import dataclasses
import functools
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma, sph_harm_y

from .errors import BandLimitError, DegenerateGeometryError, DomainError
from .quad import QuadratureSpec, sphere_integrate, unit
from .specfun import DEFAULT_REGIME, kummer_phi

__all__ = [
    "CoulombParams",
    "coulomb_norm",
    "distortion",
    "psi_c",
    "psi_m",
    "effective_alpha",
    "s_c_kernel",
    "s_c_kummer",
    "weak_check_2body",
    "WeakCheck",
    "PartialWaveOp",
    "SphereFunction",
    "sm_apply",
    "g_apply",
]

TWO_PI_32 = (2.0 * np.pi) ** 1.5


@dataclass(frozen=True, eq=False)
class CoulombParams:
    """Coupling ``alpha`` and wave vector ``k`` of one Coulomb pair."""

    alpha: float
    k: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "k", np.asarray(self.k, dtype=float))
        if self.alpha < 0:
            raise DomainError("alpha must be nonnegative")
        if not np.linalg.norm(self.k) > 0:
            raise DegenerateGeometryError("wave vector must be nonzero")

    @property
    def kmag(self):
        return float(np.linalg.norm(self.k))

    @property
    def khat(self):
        return self.k / self.kmag

    @property
    def eta(self):
        return self.alpha / (2.0 * self.kmag)


def coulomb_norm(eta):
    """``N_c = (2 pi)^{-3/2} Gamma(1 + i eta) e^{-pi eta/2}``."""
    return np.exp(loggamma(1 + 1j * eta) - 0.5 * np.pi * eta) / TWO_PI_32


def effective_alpha(alpha):
    """On-screen coupling ``4 alpha / sqrt(3)`` of the two far pairs."""
    return 4.0 * alpha / np.sqrt(3.0)


def distortion(x, k, alpha, regime=DEFAULT_REGIME):
    """Coulomb distortion factor ``D(x, k) = Phi(-i eta, 1, i(k|x| - <x,k>))``.

    ``x`` may carry leading axes; ``k`` is a single 3-vector.
    """
    x = np.asarray(x, dtype=float)
    k = np.asarray(k, dtype=float)
    kmag = np.linalg.norm(k)
    eta = alpha / (2.0 * kmag)
    xmag = np.sqrt(np.sum(x * x, axis=-1))
    s = kmag * xmag - x @ k
    # cancellation can leave tiny negatives in the forward direction
    s = np.maximum(s, 0.0)
    return kummer_phi(eta, s, regime)


def psi_c(x, cp, regime=DEFAULT_REGIME):
    """Exact Coulomb scattering solution ``psi_c(x, k)`` (vectorised over ``x``)."""
    x = np.asarray(x, dtype=float)
    return coulomb_norm(cp.eta) * np.exp(1j * (x @ cp.k)) * distortion(x, cp.k, cp.alpha, regime)


def psi_m(y, p, alpha, regime=DEFAULT_REGIME):
    """Scattering solution for the effective potential ``4 alpha / (sqrt(3) |y|)``."""
    return psi_c(y, CoulombParams(effective_alpha(alpha), p), regime)


# ---------------------------------------------------------------------------
# Scattering kernels on the sphere
# ---------------------------------------------------------------------------


def _forward_distance(xhat, khat):
    d = np.linalg.norm(unit(xhat) - khat, axis=-1)
    if np.any(d == 0.0):
        raise DegenerateGeometryError("scattering kernel is singular in the forward direction")
    return d


def s_c_kernel(xhat, cp):
    """Coulomb scattering kernel in the closed form quoted with the weak law::

        (1/2pi) Gamma(1+i eta) 2^{1+i eta} e^{pi eta/2} / |xhat - khat|^{2+2i eta}

    Kept for reference; it does not vanish as ``eta -> 0`` and is not the
    kernel :func:`weak_check_2body` verifies by default (see
    :func:`s_c_kummer`).
    """
    eta = cp.eta
    d = _forward_distance(xhat, cp.khat)
    return (
        np.exp(loggamma(1 + 1j * eta) + 0.5 * np.pi * eta + (1 + 1j * eta) * np.log(2.0))
        / (2.0 * np.pi)
        * d**-2.0
        * np.exp(-2j * eta * np.log(d))
    )


def s_c_kummer(xhat, cp):
    """Outgoing Coulomb kernel implied by the large-argument form of ``psi_c``::

        (1/2pi) [Gamma(1+i eta) / Gamma(-i eta)] k^{-i eta} 2^{1+i eta} / |xhat - khat|^{2+2i eta}

    This pairs with the unit-amplitude wave ``(2 pi)^{3/2} psi_c`` and the
    incoming phase ``exp(-ikr + i eta ln(2kr))``.  Vanishes as ``eta -> 0``.
    """
    eta = cp.eta
    d = _forward_distance(xhat, cp.khat)
    # Gamma(1+i eta)/Gamma(-i eta) = -i eta Gamma(1+i eta)/Gamma(1-i eta)
    ratio = -1j * eta * np.exp(loggamma(1 + 1j * eta) - loggamma(1 - 1j * eta))
    return (
        ratio
        * np.exp(-1j * eta * np.log(cp.kmag) + (1 + 1j * eta) * np.log(2.0))
        / (2.0 * np.pi)
        * d**-2.0
        * np.exp(-2j * eta * np.log(d))
    )


@dataclass
class WeakCheck:
    radius: float
    lhs: complex
    rhs: complex
    relerr: float
    lhs_error: float
    converged: bool


def weak_check_2body(cp, r, testfn, spec=QuadratureSpec(base_order=32, rel_tol=1e-8),
                     kernel="kummer", forward_margin=0.05, min_kr=50.0):
    """Compare ``int psi f`` over the sphere of radius ``r`` with the weak law.

    The left side integrates the unit-amplitude wave ``(2 pi)^{3/2} psi_c``.
    The right side is::

        (2 pi i / kr) [ f(-khat) e^{-ikr + i eta ln r} c_in
                        - e^{ikr - i eta ln r} int S(xhat) f(xhat) dxhat ]

    with ``S = s_c_kummer`` and ``c_in = (2k)^{i eta}`` for ``kernel="kummer"``,
    or ``S = s_c_kernel`` and ``c_in = 1`` for ``kernel="closed_form"`` (reporting
    only).

    Raises
    ------
    DomainError
        ``k r < min_kr``, or ``testfn`` reaches within ``forward_margin`` of
        the forward direction (where the kernel is not integrable).
    """
    kr = cp.kmag * r
    if kr < min_kr:
        raise DomainError(f"weak check needs k r >= {min_kr}, got {kr}")
    if testfn.min_distance_to(cp.khat) < forward_margin:
        raise DomainError("test function must vanish near the forward direction")
    eta = cp.eta
    if kernel == "kummer":
        kern, c_in = s_c_kummer, np.exp(1j * eta * np.log(2.0 * cp.kmag))
    elif kernel == "closed_form":
        kern, c_in = s_c_kernel, 1.0
    else:
        raise DomainError(f"unknown kernel {kernel!r}")

    # caps without a stationary point integrate to nearly zero; measure their
    # convergence against the size of the leading term instead
    amp = max(abs(b.amplitude) for b in testfn.bumps)
    spec = dataclasses.replace(spec, abs_tol=max(spec.abs_tol, spec.rel_tol * 2.0 * np.pi * amp / kr))
    lhs = sphere_integrate(lambda xh: TWO_PI_32 * psi_c(r * xh, cp), spec, testfn=testfn)
    s_int = sphere_integrate(lambda xh: kern(xh, cp), spec, testfn=testfn)
    pref = 2j * np.pi / kr
    rhs = pref * (
        testfn(-cp.khat) * np.exp(-1j * kr + 1j * eta * np.log(r)) * c_in
        - np.exp(1j * kr - 1j * eta * np.log(r)) * s_int.value
    )
    rel = abs(lhs.value - rhs) / abs(rhs) if rhs != 0 else abs(lhs.value)
    return WeakCheck(r, lhs.value, complex(rhs), float(rel), lhs.est_error,
                     lhs.converged and s_int.converged)


# ---------------------------------------------------------------------------
# Partial-wave scattering operator on the sphere
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=8)
def _sht_tables(lmax):
    """Gauss-Legendre grid and ``Y_lm(theta, 0)`` for ``0 <= m <= l <= lmax``."""
    n_theta = lmax + 1
    n_phi = 2 * lmax + 2
    t, w = np.polynomial.legendre.leggauss(n_theta)
    theta = np.arccos(t)
    ls, ms = np.meshgrid(np.arange(lmax + 1), np.arange(lmax + 1), indexing="ij")
    mask = ms <= ls
    # table[m, l, i]; zero where m > l
    table = np.zeros((lmax + 1, lmax + 1, n_theta))
    vals = sph_harm_y(ls[mask][:, None], ms[mask][:, None], theta[None, :], 0.0).real
    table[ms[mask], ls[mask], :] = vals
    return theta, w, n_phi, table


def _grid_points(lmax):
    theta, _, n_phi, _ = _sht_tables(lmax)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    st = np.sin(theta)[:, None]
    return np.stack(
        [st * np.cos(phi)[None, :], st * np.sin(phi)[None, :],
         np.cos(theta)[:, None] * np.ones_like(phi)[None, :]], axis=-1
    )


class SphereFunction:
    """Band-limited function on the sphere stored as ``a_lm`` coefficients.

    ``coeffs[l, m]`` holds ``a_{l,m}`` for ``m >= 0`` and ``coeffs[l, -|m|]``
    (negative index, numpy wrap-around) for ``m < 0``; shape
    ``(lmax+1, 2 lmax+1)``.
    """

    def __init__(self, coeffs, lmax):
        self.coeffs = np.asarray(coeffs, dtype=complex)
        self.lmax = lmax

    @classmethod
    def from_callable(cls, f, lmax, tail_tol=1e-12, tail_width=None):
        """Project ``f`` onto degrees ``<= lmax`` and check the band limit.

        Raises
        ------
        BandLimitError
            If the relative energy in the top ``tail_width`` degrees exceeds
            ``tail_tol**2``.
        """
        theta, w, n_phi, table = _sht_tables(lmax)
        values = np.asarray(f(_grid_points(lmax)), dtype=complex)
        g = np.fft.fft(values, axis=1) * (2.0 * np.pi / n_phi)
        coeffs = np.zeros((lmax + 1, 2 * lmax + 1), dtype=complex)
        for m in range(lmax + 1):
            pw = table[m] * w[None, :]
            coeffs[:, m] = pw @ g[:, m]
            if m:
                # Y_{l,-m}(theta, 0) = (-1)^m Y_{l,m}(theta, 0)
                coeffs[:, -m] = (-1) ** m * (pw @ g[:, -m])
        out = cls(coeffs, lmax)
        width = tail_width or max(2, lmax // 10)
        energy = out.degree_energy()
        total = energy.sum()
        if total > 0 and energy[-width:].sum() > tail_tol**2 * total:
            raise BandLimitError(
                f"function not band-limited to l <= {lmax}: tail energy fraction "
                f"{energy[-width:].sum() / total:.2e}"
            )
        return out

    def degree_energy(self):
        return np.sum(np.abs(self.coeffs) ** 2, axis=1)

    def l2_norm(self):
        return float(np.sqrt(self.degree_energy().sum()))

    def scaled_by_degree(self, factors):
        return SphereFunction(self.coeffs * np.asarray(factors)[:, None], self.lmax)

    def grid_values(self):
        """Values on the Gauss-Legendre x uniform grid (``n_theta x n_phi``)."""
        theta, _, n_phi, table = _sht_tables(self.lmax)
        g = np.zeros((theta.size, n_phi), dtype=complex)
        for m in range(self.lmax + 1):
            g[:, m] = self.coeffs[:, m] @ table[m]
            if m:
                g[:, -m] = (-1) ** m * (self.coeffs[:, -m] @ table[m])
        return np.fft.ifft(g, axis=1) * n_phi

    def grid_points(self):
        return _grid_points(self.lmax)

    def __call__(self, xhat, chunk=512):
        xhat = unit(xhat)
        shape = xhat.shape[:-1]
        pts = xhat.reshape(-1, 3)
        out = np.empty(pts.shape[0], dtype=complex)
        ls = np.arange(self.lmax + 1)
        for start in range(0, pts.shape[0], chunk):
            p = pts[start:start + chunk]
            theta = np.arccos(np.clip(p[:, 2], -1, 1))
            phi = np.arctan2(p[:, 1], p[:, 0])
            acc = np.zeros(p.shape[0], dtype=complex)
            for m in range(self.lmax + 1):
                lsm = ls[m:]
                ylm = sph_harm_y(lsm[:, None], m, theta[None, :], 0.0).real
                acc += (self.coeffs[m:, m] @ ylm) * np.exp(1j * m * phi)
                if m:
                    acc += (-1) ** m * (self.coeffs[m:, -m] @ ylm) * np.exp(-1j * m * phi)
            out[start:start + chunk] = acc
        return out.reshape(shape)


@dataclass(frozen=True)
class PartialWaveOp:
    """Coulomb scattering operator ``S_m`` diagonal in spherical harmonics.

    Eigenvalue on degree ``l`` is ``Gamma(l+1+i eta)/Gamma(l+1-i eta)``.
    """

    eta_m: float
    lmax: int = 120

    @property
    def eigenvalues(self):
        l = np.arange(self.lmax + 1)
        return np.exp(2j * loggamma(l + 1 + 1j * self.eta_m).imag)

    @classmethod
    def for_momentum(cls, alpha, p, lmax=120):
        """Operator for the effective coupling at momentum magnitude ``p``."""
        return cls(effective_alpha(alpha) / (2.0 * p), lmax)


def _as_sphere_function(f, lmax):
    if isinstance(f, SphereFunction):
        if f.lmax != lmax:
            raise BandLimitError(f"function has lmax={f.lmax}, operator lmax={lmax}")
        return f
    return SphereFunction.from_callable(f, lmax)


def sm_apply(f, pw):
    """Apply ``S_m`` to a band-limited function (callable or :class:`SphereFunction`)."""
    return _as_sphere_function(f, pw.lmax).scaled_by_degree(pw.eigenvalues)


def g_apply(f, pw):
    """Apply ``G = S_m^{-1}``: eigenvalues ``Gamma(l+1-i eta)/Gamma(l+1+i eta)``."""
    return _as_sphere_function(f, pw.lmax).scaled_by_degree(np.conj(pw.eigenvalues))
