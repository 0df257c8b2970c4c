"""
Global asymptotic field: near-screen separated solutions blended with the
BBK approximant through a partition of unity in ``rho = ln x_j / ln y_j``.

    Psi_as = sum_j zeta0_j chi_j + (1 - sum_j zeta0_j) Psi_BBK

``chi_j`` is realised by a *frozen far-pair* surrogate: the BBK tail with the
far-pair separations replaced by their on-screen values,

    chi_j = psi_c(x_j, k_j) N0^(far) exp(i<y_j,p_j>) D(x_m^0, k_m) D(x_n^0, k_n),
    x_m^0 = c_m (sqrt(3)/2) y_j.

The x_j equation is then solved exactly by ``psi_c``, the surrogate equals
``Psi_BBK`` on the screen, and the far-pair potentials at ``x_j = 0`` sum to
``4 alpha / (sqrt(3) y)``.  It is a surrogate for the spectral integral, not
that integral itself; ``CHI_MODEL`` labels outputs that depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bbk import BBKContext, BBKField, _split
from .errors import DomainError, MultiScreenOverlapError
from .geometry import (CHANNELS, ConfigPoint, RegionParams, channel_coords, channel_matrix,
                       region_classify, rho)
from .quad import unit

__all__ = [
    "CHI_MODEL",
    "PartitionSpec",
    "zeta0",
    "ChiField",
    "PsiAsField",
    "chi_eval",
    "psi_as",
    "MatchRow",
    "match_scan",
    "forward_clearance",
]

CHI_MODEL = "frozen-far-pair surrogate"


@dataclass(frozen=True)
class PartitionSpec:
    """Blend window ``mu < rho < nu`` and the smoothing profile."""

    mu: float = 0.55
    nu: float = 0.9
    profile: str = "quintic"

    def __post_init__(self):
        RegionParams(self.mu, self.nu)  # validates 1/2 < mu < nu < 1
        if self.profile != "quintic":
            raise DomainError(f"unknown partition profile {self.profile!r}")

    @classmethod
    def from_region(cls, rp):
        return cls(rp.mu, rp.nu)


def zeta0(r, ps=PartitionSpec()):
    """Near-screen weight: 1 for ``rho <= mu``, 0 for ``rho >= nu``, C^2 quintic between."""
    r = np.asarray(r, dtype=float)
    s = np.clip((r - ps.mu) / (ps.nu - ps.mu), 0.0, 1.0)
    out = 1.0 - s**3 * (10.0 - 15.0 * s + 6.0 * s * s)
    return out[()] if out.ndim == 0 else out


def _far_pair_offsets(j):
    """``[(m, coefficient of y_j in x_m)]`` for the far pairs of screen ``j``."""
    mj = channel_matrix(j)
    out = []
    for m in CHANNELS:
        if m != j:
            rel = channel_matrix(m) @ mj.T
            out.append((m, rel[0, 1]))
    return out


class ChiField:
    """Frozen-far-pair surrogate ``chi_j`` as an evaluatable field."""

    def __init__(self, ctx, j=1):
        self.ctx = ctx
        self.j = j
        self.name = f"chi_{j}"
        self._far = _far_pair_offsets(j)

    def __call__(self, x1, y1):
        return self.reduced(np.zeros(3), np.zeros(3), x1, y1)

    def reduced(self, base_x, base_y, dx, dy):
        # same plane-wave phase and x_j factor as BBKField, so the two agree
        # to rounding on the screen
        ctx, j = self.ctx, self.j
        dx = np.asarray(dx, float)
        dy = np.asarray(dy, float)
        bx, by = channel_coords(base_x, base_y, j)
        ox, oy = channel_coords(dx, dy, j)
        yj = by + oy
        out = ctx.N0 * np.exp(1j * ctx.plane_phase(dx, dy)) * ctx.D(j, bx + ox)
        for m, coef in self._far:
            out = out * ctx.D(m, coef * yj)
        return out


def forward_clearance(ctx, j, yhat):
    """``min_m (1 - <xhat_m^0, khat_m>)`` over the far pairs of screen ``j``.

    ``xhat_m^0`` is the on-screen direction of pair ``m`` for ``y_j`` along
    ``yhat``.  Near zero, a far-pair distortion is evaluated close to its
    forward direction, where it is not yet in its large-distance form and the
    frozen surrogate is not a leading-order match.
    """
    yhat = unit(yhat)
    vals = []
    for m, coef in _far_pair_offsets(j):
        kh = ctx.k[m] / np.linalg.norm(ctx.k[m])
        vals.append(1.0 - float(np.sign(coef) * yhat @ kh))
    return min(vals)


def chi_eval(cfg, q, alpha, j=1, ctx=None):
    """``chi_j`` at a configuration point.

    Raises
    ------
    DomainError
        If ``|y_j| <= 1``.
    """
    ctx = ctx or BBKContext(q, alpha)
    _, yj = cfg.channel(j)
    if np.linalg.norm(yj) <= 1.0:
        raise DomainError(f"chi_eval needs |y_{j}| > 1")
    return complex(ChiField(ctx, j)(cfg.x1, cfg.y1))


class PsiAsField:
    """Blended field ``Psi_as``.

    Parameters
    ----------
    ctx : BBKContext
    ps : PartitionSpec
    min_z : float
        Smallest hyperradius accepted.
    """

    name = "psias"

    def __init__(self, ctx, ps=PartitionSpec(), min_z=10.0):
        self.ctx = ctx
        self.ps = ps
        self.min_z = min_z
        self.bbk = BBKField(ctx)
        self.chi = {j: ChiField(ctx, j) for j in CHANNELS}

    def weights(self, base_x, base_y, dx, dy):
        coords = _split(base_x, base_y, np.asarray(dx, float), np.asarray(dy, float))
        w = {}
        for j in CHANNELS:
            xm = np.linalg.norm(coords[j][0], axis=-1)
            ym = np.linalg.norm(coords[j][1], axis=-1)
            w[j] = np.where(ym > 1.0, zeta0(rho(xm, np.maximum(ym, 1.0 + 1e-12)), self.ps), 0.0)
        return w

    def __call__(self, x1, y1):
        return self.reduced(np.zeros(3), np.zeros(3), x1, y1)

    def reduced(self, base_x, base_y, dx, dy):
        dx = np.asarray(dx, float)
        dy = np.asarray(dy, float)
        bx = np.asarray(base_x, float)
        by = np.asarray(base_y, float)
        z = np.sqrt(np.sum((bx + dx) ** 2, axis=-1) + np.sum((by + dy) ** 2, axis=-1))
        if np.any(z < self.min_z):
            raise DomainError(f"psi_as needs hyperradius >= {self.min_z}")
        w = self.weights(bx, by, dx, dy)
        active = sum((w[j] > 0).astype(int) for j in CHANNELS)
        if np.any(active > 1):
            raise MultiScreenOverlapError(
                "two near-screen weights active at once; increase the hyperradius or narrow mu, nu"
            )
        wsum = w[1] + w[2] + w[3]
        out = np.zeros(np.broadcast_shapes(dx.shape, dy.shape)[:-1], dtype=complex)
        need_bbk = wsum < 1.0
        if np.any(need_bbk):
            out = out + np.where(need_bbk, (1.0 - wsum), 0.0) * self.bbk.reduced(bx, by, dx, dy)
        for j in CHANNELS:
            if np.any(w[j] > 0):
                out = out + w[j] * self.chi[j].reduced(bx, by, dx, dy)
        return out


def psi_as(cfg, q, alpha, ps=PartitionSpec(), ctx=None, min_z=10.0):
    """``Psi_as`` at a configuration point."""
    ctx = ctx or BBKContext(q, alpha)
    return complex(PsiAsField(ctx, ps, min_z)(cfg.x1, cfg.y1))


@dataclass
class MatchRow:
    y: float
    x: float
    relative_diff: float
    region: str


def match_scan(ctx, j, sigma, y_values, xhat, yhat, rp=RegionParams()):
    """``|chi_j - Psi_BBK| / |Psi_BBK|`` along ``x_j = y_j^sigma``.

    ``sigma = None`` samples the screen itself (``x_j = 0``).  Rows whose point
    falls outside the overlap band are labelled with their region.
    """
    xhat = unit(xhat)
    yhat = unit(yhat)
    m = channel_matrix(j)
    chi = ChiField(ctx, j)
    bbk = BBKField(ctx)
    rows = []
    for y in y_values:
        x = 0.0 if sigma is None else float(y) ** sigma
        xj, yj = x * xhat, float(y) * yhat
        x1 = m[0, 0] * xj + m[1, 0] * yj
        y1 = m[0, 1] * xj + m[1, 1] * yj
        cfg = ConfigPoint(x1, y1)
        b = complex(bbk(x1, y1))
        c = complex(chi(x1, y1))
        region = region_classify(cfg, j, rp)
        rows.append(MatchRow(float(y), x, abs(c - b) / abs(b), region.name.lower()))
    return rows
