"""
Complex special functions behind every Coulomb wave in the package.

Two functions are needed:

* ``log_gamma`` -- principal branch of log Gamma on the complex plane.
* ``kummer_phi`` -- the confluent hypergeometric function
  ``Phi(-i*eta, 1, i*s)`` for real ``s >= 0``.  This is the Coulomb
  distortion factor ``D(x, k) = Phi(-i eta, 1, i(kx - <x,k>))``.

Regimes for ``kummer_phi``
--------------------------
Small ``s`` uses the Maclaurin series.  Its terms grow to roughly
``e**s / s`` before the series converges, so a double-precision sum loses
about ``s / ln 10`` digits.  The series is therefore accumulated in exact
fixed-point integer arithmetic with enough guard bits to absorb the
cancellation, and rounded to double only at the end.

Large ``s`` uses the two-branch large-argument expansion

    Phi ~ e^{pi eta/2} / Gamma(1+i eta) * s^{i eta} * sum_n (-i eta)_n^2 / (n! (-is)^n)
        + e^{is} (is)^{-1-i eta} / Gamma(-i eta) * sum_n (1+i eta)_n^2 / (n! (is)^n)

truncated at its smallest term.  A point is only handed to the expansion
when the truncation error is below double-precision round-off, otherwise
it falls back to the series.  Both paths therefore agree to ~1e-15 and the
result is smooth enough to be differentiated by finite differences.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import loggamma

from .errors import DomainError, NonConvergenceError, PoleError

__all__ = [
    "KummerRegime",
    "DEFAULT_REGIME",
    "log_gamma",
    "kummer_phi",
    "kummer_phi_series",
    "kummer_phi_asymptotic",
    "kummer_phi_leading",
    "check_regime_overlap",
]

# Asymptotic values are accepted only when the truncation error is below this.
_ASYMPTOTIC_REL_TOL = 2.0**-53
# Below this argument plain complex128 summation loses < 1 bit.
_DOUBLE_SERIES_MAX_S = 0.5


@dataclass(frozen=True)
class KummerRegime:
    """Switching parameters for :func:`kummer_phi`.

    Parameters
    ----------
    series_radius : float
        ``R0``; the series is always trusted up to here.
    asymptotic_threshold : float
        ``R1``; the large-argument expansion is never used below here.
    max_terms : int
        Cap on the number of Maclaurin terms.
    eta_max : float
        Largest admissible ``|eta|``.
    """

    series_radius: float = 30.0
    asymptotic_threshold: float = 25.0
    max_terms: int = 4000
    eta_max: float = 50.0

    def __post_init__(self):
        if not self.series_radius > 0:
            raise DomainError("series_radius must be positive")
        if not 0 < self.asymptotic_threshold < self.series_radius:
            raise DomainError(
                "need 0 < asymptotic_threshold < series_radius "
                f"(got R1={self.asymptotic_threshold}, R0={self.series_radius})"
            )
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")


DEFAULT_REGIME = KummerRegime()


def log_gamma(z):
    """Principal branch of ``log Gamma(z)`` for complex ``z``.

    Raises
    ------
    PoleError
        If any ``z`` is a nonpositive integer.
    """
    z = np.asarray(z, dtype=complex)
    poles = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(poles):
        raise PoleError(f"log_gamma has a pole at {z[poles].ravel()[0]}")
    out = loggamma(z)
    return out[()] if out.ndim == 0 else out


def _rgamma_minus_i_eta(eta):
    """``1 / Gamma(-i eta)``, finite at ``eta = 0``."""
    return -1j * eta * np.exp(-loggamma(1 - 1j * eta))


# ---------------------------------------------------------------------------
# Maclaurin series in fixed-point integer arithmetic
# ---------------------------------------------------------------------------


def _peak_term_bits(eta, s, max_terms):
    """log2 of the largest Maclaurin term magnitude, and terms to convergence."""
    n = np.arange(max_terms, dtype=float)
    ratio = np.log2(np.hypot(n, eta)) + math.log2(s) - 2.0 * np.log2(n + 1.0)
    logs = np.cumsum(ratio)
    peak = max(0.0, float(logs.max()))
    # converged once terms sit 64 bits below max(1, peak) past the hump
    done = np.nonzero((n + 1 > s) & (logs < min(peak, 0.0) - 64.0))[0]
    return peak, (int(done[0]) + 2 if done.size else None)


def _series_scalar(eta, s, max_terms):
    if s == 0.0 or eta == 0.0:
        return 1.0 + 0.0j
    if s <= _DOUBLE_SERIES_MAX_S:
        term = 1.0 + 0.0j
        total = term
        for n in range(max_terms):
            term *= (n - 1j * eta) * (1j * s) / (n + 1) ** 2
            total += term
            if abs(term) < 1e-17 * abs(total):
                return total
        raise NonConvergenceError(
            f"Kummer series did not converge in {max_terms} terms (s={s})"
        )

    peak, needed = _peak_term_bits(eta, s, max_terms)
    if needed is None:
        raise NonConvergenceError(
            f"Kummer series needs more than {max_terms} terms (eta={eta}, s={s})"
        )
    prec = int(math.ceil(peak)) + 80 + int(math.log2(needed + 1))
    one = 1 << prec
    # multiplier (eta*s + i*n*s) in fixed point, exact up to one final rounding
    a_re = round(Fraction(eta) * Fraction(s) * one)
    a_s = round(Fraction(s) * one)
    tr, ti = one, 0
    sr, si = one, 0
    for n in range(max_terms):
        mr, mi = a_re, n * a_s
        nr = (tr * mr - ti * mi) >> prec
        ni = (tr * mi + ti * mr) >> prec
        d = (n + 1) * (n + 1)
        tr, ti = nr // d, ni // d
        sr += tr
        si += ti
        if n + 1 > s:
            bound = (abs(sr) + abs(si)) >> 66
            if abs(tr) + abs(ti) <= bound:
                shift = prec - 60
                return complex(
                    math.ldexp(float(sr >> shift), -60),
                    math.ldexp(float(si >> shift), -60),
                )
    raise NonConvergenceError(
        f"Kummer series did not converge in {max_terms} terms (eta={eta}, s={s})"
    )


def kummer_phi_series(eta, s, max_terms=DEFAULT_REGIME.max_terms):
    """``Phi(-i eta, 1, i s)`` from the Maclaurin series.

    Accurate to double precision for any ``s`` the term budget allows;
    cost grows roughly linearly with ``s``.
    """
    eta = float(eta)
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0):
        raise DomainError("kummer_phi requires s >= 0")
    out = np.empty(s_arr.shape, dtype=complex)
    flat = out.reshape(-1)
    for i, si in enumerate(s_arr.reshape(-1)):
        flat[i] = _series_scalar(eta, float(si), max_terms)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Large-argument expansion
# ---------------------------------------------------------------------------


def kummer_phi_asymptotic(eta, s, return_error=False, max_order=200):
    """Large-``s`` expansion of ``Phi(-i eta, 1, i s)``.

    Each branch is truncated just before its smallest term.  With
    ``return_error=True`` also returns the absolute truncation estimate
    (modulus of the first omitted terms, prefactors included).
    """
    eta = float(eta)
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0):
        raise DomainError("asymptotic expansion requires s > 0")
    logs = np.log(s)
    pre1 = np.exp(0.5 * np.pi * eta - loggamma(1 + 1j * eta) + 1j * eta * logs)
    pre2 = _rgamma_minus_i_eta(eta) * np.exp(
        1j * s + (-1.0 - 1j * eta) * (logs + 0.5j * np.pi)
    )

    def branch(step):
        term = np.ones(s.shape, dtype=complex)
        total = term.copy()
        err = np.zeros(s.shape)
        active = np.ones(s.shape, dtype=bool)
        for n in range(max_order):
            nxt = term * step(n)
            grow = np.abs(nxt) >= np.abs(term)
            small = np.abs(nxt) < 1e-18 * np.abs(total)
            stop = active & (grow | small)
            err[stop] = np.abs(nxt[stop])
            active &= ~stop
            if not active.any():
                break
            total[active] += nxt[active]
            term = np.where(active, nxt, term)
        err[active] = np.abs(term[active])
        return total, err

    a = -1j * eta
    s1, e1 = branch(lambda n: (a + n) ** 2 / ((n + 1) * (-1j * s)))
    s2, e2 = branch(lambda n: (1 - a + n) ** 2 / ((n + 1) * (1j * s)))
    value = pre1 * s1 + pre2 * s2
    if return_error:
        error = np.abs(pre1) * e1 + np.abs(pre2) * e2
        if value.ndim == 0:
            return value[()], float(error)
        return value, error
    return value[()] if value.ndim == 0 else value


def kummer_phi_leading(eta, s, s_min=10.0):
    """Non-oscillatory leading branch ``e^{pi eta/2} s^{i eta} / Gamma(1 + i eta)``."""
    s = np.asarray(s, dtype=float)
    if np.any(s < s_min):
        raise DomainError(f"kummer_phi_leading requires s >= {s_min}")
    out = np.exp(0.5 * np.pi * eta - loggamma(1 + 1j * eta) + 1j * eta * np.log(s))
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------


def kummer_phi(eta, s, regime=DEFAULT_REGIME):
    """``Phi(-i eta, 1, i s)`` for real ``eta`` and ``s >= 0`` (vectorised in ``s``).

    Parameters
    ----------
    eta : float
        Sommerfeld parameter; ``|eta| <= regime.eta_max``.
    s : float or array_like
        Nonnegative real argument.
    regime : KummerRegime

    Raises
    ------
    DomainError
        ``s < 0`` or ``|eta|`` too large.
    NonConvergenceError
        The series needs more than ``regime.max_terms`` terms.
    """
    eta = float(eta)
    if abs(eta) > regime.eta_max:
        raise DomainError(f"|eta|={abs(eta)} exceeds eta_max={regime.eta_max}")
    s = np.asarray(s, dtype=float)
    if np.any(s < 0) or not np.all(np.isfinite(s)):
        raise DomainError("kummer_phi requires finite s >= 0")
    if eta == 0.0:
        out = np.ones(s.shape, dtype=complex)
        return out[()] if out.ndim == 0 else out

    flat_s = s.reshape(-1)
    out = np.empty(flat_s.shape, dtype=complex)
    use_asym = flat_s >= regime.asymptotic_threshold
    if use_asym.any():
        idx = np.flatnonzero(use_asym)
        val, err = kummer_phi_asymptotic(eta, flat_s[idx], return_error=True)
        ok = err <= _ASYMPTOTIC_REL_TOL * np.abs(val)
        out[idx[ok]] = val[ok]
        use_asym[idx[~ok]] = False
    rest = np.flatnonzero(~use_asym)
    if rest.size:
        out[rest] = kummer_phi_series(eta, flat_s[rest], regime.max_terms)
    out = out.reshape(s.shape)
    return out[()] if out.ndim == 0 else out


@functools.lru_cache(maxsize=32)
def check_regime_overlap(regime=DEFAULT_REGIME, etas=(0.1, 0.5, 2.0), n_points=6):
    """Largest relative series/asymptotic mismatch over the overlap band.

    The band is ``[R1, R0]``.  Cached per regime so callers can run it as a
    startup check cheaply.
    """
    worst = 0.0
    band = np.linspace(regime.asymptotic_threshold, regime.series_radius, n_points)
    for eta in etas:
        ser = kummer_phi_series(eta, band, regime.max_terms)
        asy = kummer_phi_asymptotic(eta, band)
        worst = max(worst, float(np.max(np.abs(ser - asy) / np.abs(ser))))
    return worst
