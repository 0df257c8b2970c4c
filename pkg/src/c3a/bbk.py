"""
Product-of-Coulomb-distortions (BBK) approximant for three charged particles,
its near-screen factorisation, and the weak large-``y`` expansion of the
far-pair factor.

    Psi_BBK(z, q) = N0 exp(i<z,q>) D(x1,k1) D(x2,k2) D(x3,k3),  N0 = prod_j N_c^(j)

Near screen ``j`` this factorises as ``psi_c(x_j, k_j) * Psi_1`` with
``Psi_1 = N0^(far) exp(i<y_j,p_j>) D(x_m,k_m) D(x_n,k_n)`` for the two far
pairs ``m, n``.

Fields and phase origins
------------------------
Every field here has a method ``reduced(base_x, base_y, dx, dy)`` returning
``Psi(base + d) * exp(-i<base, q>)``.  The large plane-wave phase of the base
point is dropped *before* it is formed, so finite-difference stencils at
hyperradius ~1e3 do not inherit its rounding error.  Relative quantities such
as ``|Q| / |Psi|`` are unaffected by the common factor.

Sign convention for far pairs
-----------------------------
With the channel maps of :mod:`c3a.geometry`, a far pair ``m`` of screen
``j`` satisfies ``x_m = -x_j/2 + c_m (sqrt(3)/2) y_j`` with ``c_m = +-1``.
The coefficients below are written with ``c_m`` explicit:

    Z_m^- = (sqrt3/2)(1 + c_m <p,k_m>),      Z_m^+ = (sqrt3/2)(1 - c_m <p,k_m>)
    V_m^- = <xhat, k_m + c_m p>,             V_m^+ = <xhat, k_m - c_m p>

(unit vectors throughout).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError
from .geometry import CHANNELS, channel_coords, channel_matrix, far_pair_signs
from .quad import QuadratureSpec, sphere_integrate
from .specfun import DEFAULT_REGIME
from .twobody import CoulombParams, WeakCheck, coulomb_norm, distortion, psi_c

__all__ = [
    "BBKContext",
    "BBKField",
    "Psi1Field",
    "bbk_eval",
    "psi1_eval",
    "Psi1WeakCoeffs",
    "psi1_weak_coeffs",
    "psi1_weak_predict",
    "weak_coeffs_from_directions",
    "weak_check_psi1",
]

SQRT3_2 = np.sqrt(3.0) / 2.0
TWO_PI_M3 = (2.0 * np.pi) ** -3


class BBKContext:
    """Per-channel momenta, Sommerfeld parameters and normalisations for ``q``."""

    def __init__(self, q, alpha, regime=DEFAULT_REGIME):
        self.q = q
        self.alpha = float(alpha)
        self.regime = regime
        self.k = {}
        self.p = {}
        self.eta = {}
        self.norm = {}
        for j in CHANNELS:
            kj, pj = q.channel(j)
            kmag = float(np.linalg.norm(kj))
            if kmag == 0.0:
                raise DegenerateGeometryError(f"k_{j} vanishes")
            self.k[j], self.p[j] = kj, pj
            self.eta[j] = self.alpha / (2.0 * kmag)
            self.norm[j] = coulomb_norm(self.eta[j])
        self.N0 = self.norm[1] * self.norm[2] * self.norm[3]

    @property
    def energy(self):
        return self.q.energy

    def far_norm(self, j):
        """``N0`` with the screen-``j`` factor removed."""
        m, n = (c for c in CHANNELS if c != j)
        return self.norm[m] * self.norm[n]

    def D(self, j, xj):
        return distortion(xj, self.k[j], self.alpha, self.regime)

    def plane_phase(self, x1, y1):
        return x1 @ self.q.k1 + y1 @ self.q.p1


def _split(base_x, base_y, dx, dy):
    """Channel coordinates of ``base + d`` for all three channels."""
    coords = {}
    for j in CHANNELS:
        bx, by = channel_coords(base_x, base_y, j)
        ox, oy = channel_coords(dx, dy, j)
        coords[j] = (bx + ox, by + oy)
    return coords


class BBKField:
    """``Psi_BBK`` as an evaluatable field (see module notes on ``reduced``)."""

    name = "bbk"

    def __init__(self, ctx):
        self.ctx = ctx

    def __call__(self, x1, y1):
        x1 = np.asarray(x1, float)
        y1 = np.asarray(y1, float)
        return self.reduced(np.zeros(3), np.zeros(3), x1, y1)

    def reduced(self, base_x, base_y, dx, dy):
        ctx = self.ctx
        coords = _split(base_x, base_y, np.asarray(dx, float), np.asarray(dy, float))
        out = ctx.N0 * np.exp(1j * ctx.plane_phase(np.asarray(dx, float), np.asarray(dy, float)))
        for j in CHANNELS:
            out = out * ctx.D(j, coords[j][0])
        return out


class Psi1Field:
    """Far-pair factor ``Psi_1`` for screen ``j``."""

    def __init__(self, ctx, j=1):
        self.ctx = ctx
        self.j = j
        self.name = f"psi1_{j}"

    def __call__(self, x1, y1):
        return self.reduced(np.zeros(3), np.zeros(3), x1, y1)

    def reduced(self, base_x, base_y, dx, dy):
        ctx, j = self.ctx, self.j
        dx = np.asarray(dx, float)
        dy = np.asarray(dy, float)
        coords = _split(base_x, base_y, dx, dy)
        # exp(i<y_j,p_j>) relative to the base: the base part of <x_j,k_j>+<y_j,p_j>
        # is dropped with the plane-wave phase, so restore the x_j part explicitly
        bxj, _ = channel_coords(base_x, base_y, j)
        oxj, oyj = channel_coords(dx, dy, j)
        phase = oyj @ ctx.p[j] - bxj @ ctx.k[j]
        out = ctx.far_norm(j) * np.exp(1j * phase)
        for m in CHANNELS:
            if m != j:
                out = out * ctx.D(m, coords[m][0])
        return out


def bbk_eval(cfg, ctx):
    """``Psi_BBK`` at a :class:`~c3a.geometry.ConfigPoint` (or arrays via :class:`BBKField`)."""
    return BBKField(ctx)(cfg.x1, cfg.y1)


def psi1_eval(cfg, ctx, j=1):
    """Far-pair factor ``Psi_1`` so that ``Psi_BBK = psi_c(x_j, k_j) Psi_1``."""
    return Psi1Field(ctx, j)(cfg.x1, cfg.y1)


def screen_psi_c(cfg, ctx, j=1):
    xj, _ = cfg.channel(j)
    return psi_c(xj, CoulombParams(ctx.alpha, ctx.k[j]), ctx.regime)


# ---------------------------------------------------------------------------
# Weak expansion of Psi_1 for y -> infinity
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Psi1WeakCoeffs:
    """Coefficients of the weak large-``y`` expansion of ``Psi_1``.

    Tuples are ordered as ``pairs``; ``v_minus`` / ``v_plus`` hold the vectors
    whose projection on ``xhat`` gives ``V^-`` / ``V^+``.
    """

    j: int
    pairs: tuple
    signs: tuple
    etas: tuple
    kmags: tuple
    Z_minus: tuple
    Z_plus: tuple
    v_minus: tuple
    v_plus: tuple
    omega: float
    B0: complex
    phat: np.ndarray

    def V_minus(self, xhat):
        return tuple(float(np.dot(xhat, v)) for v in self.v_minus)

    def V_plus(self, xhat):
        return tuple(float(np.dot(xhat, v)) for v in self.v_plus)


def weak_coeffs_from_directions(phat, khats, signs, etas, kmags, j=1, pairs=(2, 3)):
    """Build :class:`Psi1WeakCoeffs` from unit vectors (no momentum bookkeeping).

    Exposed so the ``phat -> -phat`` exchange symmetry can be checked with the
    far-pair momenta held fixed.
    """
    phat = np.asarray(phat, float)
    zm, zp, vm, vp = [], [], [], []
    for kh, c in zip(khats, signs):
        cos = float(np.dot(phat, kh))
        zm.append(SQRT3_2 * (1.0 + c * cos))
        zp.append(SQRT3_2 * (1.0 - c * cos))
        vm.append(np.asarray(kh) + c * phat)
        vp.append(np.asarray(kh) - c * phat)
    omega = float(sum(etas))
    b0 = -TWO_PI_M3 * np.exp(1j * sum(e * np.log(k) for e, k in zip(etas, kmags)))
    return Psi1WeakCoeffs(j, tuple(pairs), tuple(signs), tuple(etas), tuple(kmags),
                          tuple(zm), tuple(zp), tuple(vm), tuple(vp), omega, complex(b0), phat)


def psi1_weak_coeffs(q, alpha, j=1):
    """Coefficients ``Z^+-, V^+-, omega, B0`` for screen ``j``.

    Raises
    ------
    DegenerateGeometryError
        If ``p_j`` or a far-pair ``k_m`` vanishes.
    """
    _, pj = q.channel(j)
    pmag = np.linalg.norm(pj)
    if pmag == 0.0:
        raise DegenerateGeometryError(f"p_{j} vanishes")
    pairs, signs, khats, etas, kmags = [], [], [], [], []
    for m, c in far_pair_signs(j):
        km, _ = q.channel(m)
        kmag = float(np.linalg.norm(km))
        if kmag == 0.0:
            raise DegenerateGeometryError(f"k_{m} vanishes")
        pairs.append(m)
        signs.append(c)
        khats.append(km / kmag)
        etas.append(alpha / (2.0 * kmag))
        kmags.append(kmag)
    return weak_coeffs_from_directions(pj / pmag, khats, signs, etas, kmags, j, pairs)


def psi1_weak_predict(xj, ymag, q, alpha, testfn, j=1, z_floor=0.05, min_yp=50.0):
    """Leading weak asymptotics of ``int Psi_1(x_j, ymag * yhat) f(yhat) dyhat``.

    Parameters
    ----------
    xj : array_like
        Pair separation ``x_j`` (held fixed).
    ymag : float
        ``|y_j|``.
    testfn : callable
        Test function on the sphere, evaluated at ``-+phat``.

    Raises
    ------
    DegenerateGeometryError
        Any ``Z`` at or below ``z_floor``, or ``ymag * p < min_yp``.
    """
    co = psi1_weak_coeffs(q, alpha, j)
    if min(co.Z_minus + co.Z_plus) <= z_floor:
        raise DegenerateGeometryError(
            f"degenerate geometry: min Z = {min(co.Z_minus + co.Z_plus):.3g} <= {z_floor}"
        )
    pmag = q.p_mag(j)
    yp = ymag * pmag
    if yp < min_yp:
        raise DegenerateGeometryError(f"weak prediction needs y p >= {min_yp}, got {yp}")
    xj = np.asarray(xj, float)
    xmag = float(np.linalg.norm(xj))
    xhat = xj / xmag if xmag > 0 else np.zeros(3)
    ratio = 0.5 * xmag / ymag

    def log_factor(zs, vs):
        return sum(e * np.log(z + ratio * v) for e, z, v in zip(co.etas, zs, vs))

    ph = co.phat
    pref = 2.0 * np.pi / (1j * yp) * co.B0 * np.exp(1j * co.omega * np.log(ymag))
    incoming = testfn(-ph) * np.exp(-1j * yp + 1j * log_factor(co.Z_minus, co.V_minus(xhat)))
    outgoing = testfn(ph) * np.exp(1j * yp + 1j * log_factor(co.Z_plus, co.V_plus(xhat)))
    return complex(pref * (incoming - outgoing))


def weak_check_psi1(q, alpha, x, yp, testfn, j=1,
                    spec=QuadratureSpec(base_order=32, max_order=4096, rel_tol=1e-8), ctx=None):
    """Quadrature of ``Psi_1(x, |y| yhat)`` against ``testfn`` versus
    :func:`psi1_weak_predict` at ``|y| = yp / |p_j|``.

    Returns a :class:`~c3a.twobody.WeakCheck` whose ``radius`` is ``yp``.
    """
    ctx = ctx or BBKContext(q, alpha)
    ymag = yp / q.p_mag(j)
    rhs = psi1_weak_predict(x, ymag, q, alpha, testfn, j)
    field = Psi1Field(ctx, j)
    # x is given in channel j; express the sample points in channel-1 coordinates
    m = channel_matrix(j)
    x = np.asarray(x, float)

    def integrand(yh):
        yj = ymag * yh
        return field(m[0, 0] * x + m[1, 0] * yj, m[0, 1] * x + m[1, 1] * yj)

    amp = max(abs(b.amplitude) for b in testfn.bumps)
    scale = 2.0 * np.pi * amp * (2.0 * np.pi) ** -3 / yp
    spec = dataclasses.replace(spec, abs_tol=max(spec.abs_tol, spec.rel_tol * scale))
    lhs = sphere_integrate(integrand, spec, testfn=testfn)
    rel = abs(lhs.value - rhs) / abs(rhs)
    return WeakCheck(float(yp), complex(lhs.value), complex(rhs), float(rel), lhs.est_error, lhs.converged)
