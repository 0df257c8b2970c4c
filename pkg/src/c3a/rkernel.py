"""
Components of the spectral kernel ``R`` that represents the near-screen
solution as a superposition of separated products ``psi_c(x) psi_m(y)``.

Only the scalar and vector coefficients are computed; the distributional
kernel itself is never integrated.  With ``c_m`` the far-pair signs of
:func:`c3a.geometry.far_pair_signs`,

    a = omega - 2 alpha / (sqrt3 p),       b = omega + 2 alpha / (sqrt3 p)
    B0_in  = (2 pi)^-3 prod_m [ (sqrt3/2)(1 + c_m <p,k_m>) k_m ]^(i eta_m)
    B0_out = (2 pi)^-3 prod_m [ (sqrt3/2)(1 - c_m <p,k_m>) k_m ]^(i eta_m)
    Omega_in  = (1/sqrt3) sum_m eta_m (k_m + c_m p) / (1 + c_m <p,k_m>)
    Omega_out = (1/sqrt3) sum_m eta_m (k_m - c_m p) / (1 - c_m <p,k_m>)
    A_in  = -(k / (pi i)) Gamma(1 - i a) exp( pi a / 2) B0_in
    A_out =  (k / (pi i)) Gamma(1 - i b) exp(-pi b / 2) B0_out
    B_in  = (p / k^2) k - Omega_in / (a k),   B_out = (p / k^2) k - Omega_out / (b k)

(hats on all direction vectors).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import loggamma

from .errors import DegenerateGeometryError, DomainError
from .geometry import far_pair_signs

__all__ = [
    "RComponents",
    "r_components",
    "r_components_from_directions",
    "orthogonality_report",
    "DEFAULT_ANGLE_FLOOR",
    "DEFAULT_AB_FLOOR",
]

SQRT3 = np.sqrt(3.0)
DEFAULT_ANGLE_FLOOR = 0.05
DEFAULT_AB_FLOOR = 1e-8


@dataclass(frozen=True, eq=False)
class RComponents:
    """Kernel coefficients for one screen.  ``eta_m`` is the Sommerfeld
    parameter of the effective potential ``4 alpha / (sqrt3 y)``."""

    j: int
    a: float
    b: float
    omega: float
    eta_m: float
    A_in: complex
    A_out: complex
    B_in: np.ndarray
    B_out: np.ndarray
    Omega_in: np.ndarray
    Omega_out: np.ndarray
    B0_in: complex
    B0_out: complex
    k: float
    p: float
    khat: np.ndarray
    phat: np.ndarray

    def to_dict(self):
        out = {}
        for key, val in asdict(self).items():
            if isinstance(val, np.ndarray):
                out[key] = [float(v) for v in val]
            elif isinstance(val, complex):
                out[key] = {"re": val.real, "im": val.imag}
            else:
                out[key] = val
        return out


def _gamma(z):
    return np.exp(loggamma(z))


def r_components_from_directions(k, p, khat, phat, far_khats, far_signs, far_etas, far_kmags,
                                 alpha, j=1, angle_floor=DEFAULT_ANGLE_FLOOR, ab_floor=DEFAULT_AB_FLOOR):
    """Kernel coefficients from magnitudes and unit vectors.

    The far-pair data are held as given, so ``phat -> -phat`` can be applied
    on its own.

    Raises
    ------
    DegenerateGeometryError
        A factor ``1 +- <p, k_m>`` falls below ``angle_floor``.
    DomainError
        ``|a|`` or ``|b|`` is below ``ab_floor``.
    """
    khat = np.asarray(khat, float)
    phat = np.asarray(phat, float)
    omega = float(sum(far_etas))
    eta_m = 2.0 * alpha / (SQRT3 * p)
    a = omega - eta_m
    b = omega + eta_m
    log_in = 0j
    log_out = 0j
    om_in = np.zeros(3)
    om_out = np.zeros(3)
    for kh, c, eta, km in zip(far_khats, far_signs, far_etas, far_kmags):
        kh = np.asarray(kh, float)
        cos = float(phat @ kh)
        f_in, f_out = 1.0 + c * cos, 1.0 - c * cos
        if min(f_in, f_out) < angle_floor:
            raise DegenerateGeometryError(
                f"degenerate angle: 1 +- <p, k_m> = {min(f_in, f_out):.3g} below floor {angle_floor}"
            )
        log_in += 1j * eta * np.log(0.5 * SQRT3 * f_in * km)
        log_out += 1j * eta * np.log(0.5 * SQRT3 * f_out * km)
        om_in += eta * (kh + c * phat) / f_in
        om_out += eta * (kh - c * phat) / f_out
    om_in /= SQRT3
    om_out /= SQRT3
    if min(abs(a), abs(b)) < ab_floor:
        raise DomainError(f"a = {a:.3g} or b = {b:.3g} is below {ab_floor:g}; the kernel vectors divide by both")
    b0_in = (2.0 * np.pi) ** -3 * np.exp(log_in)
    b0_out = (2.0 * np.pi) ** -3 * np.exp(log_out)
    a_in = -(k / (np.pi * 1j)) * _gamma(1.0 - 1j * a) * np.exp(0.5 * np.pi * a) * b0_in
    a_out = (k / (np.pi * 1j)) * _gamma(1.0 - 1j * b) * np.exp(-0.5 * np.pi * b) * b0_out
    base = (p / k**2) * khat
    return RComponents(
        j=j, a=float(a), b=float(b), omega=omega, eta_m=float(eta_m),
        A_in=complex(a_in), A_out=complex(a_out),
        B_in=base - om_in / (a * k), B_out=base - om_out / (b * k),
        Omega_in=om_in, Omega_out=om_out,
        B0_in=complex(b0_in), B0_out=complex(b0_out),
        k=float(k), p=float(p), khat=khat, phat=phat,
    )


def r_components(q, alpha, j=1, angle_floor=DEFAULT_ANGLE_FLOOR, ab_floor=DEFAULT_AB_FLOOR):
    """Kernel coefficients for screen ``j`` at momentum ``q``.

    Raises
    ------
    DegenerateGeometryError
        ``k_j``, ``p_j`` or a far-pair ``k_m`` vanishes, or an angle factor
        is below ``angle_floor``.
    DomainError
        ``|a|`` or ``|b|`` below ``ab_floor`` (in particular for ``alpha -> 0``).
    """
    kj, pj = q.channel(j)
    k = float(np.linalg.norm(kj))
    p = float(np.linalg.norm(pj))
    if k == 0.0 or p == 0.0:
        raise DegenerateGeometryError(f"|k_{j}| and |p_{j}| must be positive")
    khats, signs, etas, kmags = [], [], [], []
    for m, c in far_pair_signs(j):
        km, _ = q.channel(m)
        kmag = float(np.linalg.norm(km))
        if kmag == 0.0:
            raise DegenerateGeometryError(f"k_{m} vanishes")
        khats.append(km / kmag)
        signs.append(c)
        etas.append(alpha / (2.0 * kmag))
        kmags.append(kmag)
    return r_components_from_directions(k, p, kj / k, pj / p, khats, signs, etas, kmags,
                                        alpha, j, angle_floor, ab_floor)


def orthogonality_report(rc, khat=None, tol=1e-12):
    """How far ``B_in`` and ``B_out`` are from being orthogonal to ``khat``.

    ``<B_in, khat> = 0`` is equivalent to ``<Omega_in, khat> = a p / k`` and
    likewise for ``B_out`` with ``b``.  The incoming identity holds for every
    admissible ``q``; the outgoing sum instead satisfies
    ``<Omega_out, khat> = -b p / k``, so ``B_out`` as defined is not
    orthogonal.  All residuals are reported; when a dot product exceeds
    ``tol`` the ``khat``-orthogonal projections are returned as well.
    """
    khat = rc.khat if khat is None else np.asarray(khat, float)
    dot_in = float(rc.B_in @ khat)
    dot_out = float(rc.B_out @ khat)
    projected = max(abs(dot_in), abs(dot_out)) > tol
    report = {
        "dot_in": dot_in,
        "dot_out": dot_out,
        "projected": bool(projected),
        "omega_in_identity_residual": float(rc.Omega_in @ khat - rc.a * rc.p / rc.k),
        "omega_out_identity_residual": float(rc.Omega_out @ khat - rc.b * rc.p / rc.k),
        # the outgoing sum satisfies the identity with p -> -p instead
        "omega_out_reflected_residual": float(rc.Omega_out @ khat + rc.b * rc.p / rc.k),
    }
    if projected:
        report["B_in_projected"] = [float(v) for v in rc.B_in - dot_in * khat]
        report["B_out_projected"] = [float(v) for v in rc.B_out - dot_out * khat]
    return report
