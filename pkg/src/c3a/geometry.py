"""
Jacobi-coordinate algebra on the centre-of-mass configuration space.

A configuration ``z`` of three equal-mass particles with ``z1 + z2 + z3 = 0``
is stored in channel-1 Jacobi coordinates ``(x1, y1)``::

    x1 = (z3 - z2) / sqrt(2),  x2 = (z1 - z3) / sqrt(2),  x3 = (z2 - z1) / sqrt(2)
    y_j = sqrt(3/2) * z_j

The maps ``(x1, y1) -> (x_j, y_j)`` are rotations of R^6 (by +-120 degrees
in each Cartesian component).  They are derived here mechanically from the
particle-coordinate definitions above, so in this convention

    x2 = -x1/2 + (sqrt(3)/2) y1,   x3 = -x1/2 - (sqrt(3)/2) y1.

Momenta ``(k_j, p_j)`` transform with the same matrices, which keeps the
pairing ``<x_j,k_j> + <y_j,p_j>`` channel independent.

All functions accept arrays with a trailing axis of length 3 and broadcast
over leading axes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, DomainError

__all__ = [
    "ConfigPoint",
    "MomentumPoint",
    "RegionParams",
    "Region",
    "CHANNELS",
    "to_particles",
    "from_particles",
    "channel_coords",
    "channel_momenta",
    "channel_matrix",
    "far_pair_signs",
    "hyperradius",
    "rho",
    "region_classify",
]

CHANNELS = (1, 2, 3)
SQRT3_2 = np.sqrt(3.0) / 2.0


@dataclass(frozen=True, eq=False)
class ConfigPoint:
    """Point of the configuration space in channel-1 Jacobi coordinates."""

    x1: np.ndarray
    y1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x1", np.asarray(self.x1, dtype=float))
        object.__setattr__(self, "y1", np.asarray(self.y1, dtype=float))

    def channel(self, j):
        return channel_coords(self.x1, self.y1, j)

    @property
    def z(self):
        return hyperradius(self.x1, self.y1)

    def particles(self):
        return to_particles(self.x1, self.y1)


@dataclass(frozen=True, eq=False)
class MomentumPoint:
    """Dual point ``q = (k1, p1)``; ``E = |k1|^2 + |p1|^2``."""

    k1: np.ndarray
    p1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "k1", np.asarray(self.k1, dtype=float))
        object.__setattr__(self, "p1", np.asarray(self.p1, dtype=float))

    def channel(self, j):
        return channel_momenta(self.k1, self.p1, j)

    @property
    def energy(self):
        return float(self.k1 @ self.k1 + self.p1 @ self.p1)

    @property
    def q(self):
        return float(np.sqrt(self.energy))

    def k_mag(self, j):
        return float(np.linalg.norm(self.channel(j)[0]))

    def p_mag(self, j):
        return float(np.linalg.norm(self.channel(j)[1]))

    def check_generic(self, epsilon):
        """Raise unless every pair momentum satisfies ``|k_j| >= epsilon``."""
        for j in CHANNELS:
            if self.k_mag(j) < epsilon:
                raise DegenerateGeometryError(
                    f"|k_{j}| = {self.k_mag(j):.3g} below genericity floor {epsilon}"
                )


class Region(enum.Enum):
    INNER = "inner"
    OVERLAP = "overlap"
    OUTER = "outer"


@dataclass(frozen=True)
class RegionParams:
    """Exponents of the matching domains ``x < y**nu`` and ``x > y**mu``."""

    mu: float = 0.55
    nu: float = 0.9

    def __post_init__(self):
        if not 0.5 < self.mu < self.nu < 1.0:
            raise DomainError(f"need 1/2 < mu < nu < 1, got mu={self.mu}, nu={self.nu}")


def to_particles(x1, y1):
    """Particle positions ``(z1, z2, z3)`` with ``z1 + z2 + z3 = 0``."""
    x1 = np.asarray(x1, dtype=float)
    y1 = np.asarray(y1, dtype=float)
    z1 = np.sqrt(2.0 / 3.0) * y1
    z2 = 0.5 * (-z1 - np.sqrt(2.0) * x1)
    z3 = 0.5 * (-z1 + np.sqrt(2.0) * x1)
    return z1, z2, z3


def from_particles(z1, z2, z3, j=1):
    """Jacobi pair ``(x_j, y_j)`` straight from the particle definitions."""
    z = (np.asarray(z1, float), np.asarray(z2, float), np.asarray(z3, float))
    a, b, c = (j - 1) % 3, j % 3, (j + 1) % 3
    # x_j = (z_{j+2} - z_{j+1}) / sqrt(2), cyclic
    x = (z[c] - z[b]) / np.sqrt(2.0)
    y = np.sqrt(1.5) * z[a]
    return x, y


def _derive_matrices():
    mats = {}
    for j in CHANNELS:
        m = np.empty((2, 2))
        for col, (xs, ys) in enumerate(((1.0, 0.0), (0.0, 1.0))):
            xj, yj = from_particles(*to_particles(np.array(xs), np.array(ys)), j=j)
            m[0, col], m[1, col] = xj, yj
        # snap rounding noise onto the exact entries 0, +-1/2, +-sqrt(3)/2, +-1
        exact = np.array([0.0, 0.5, SQRT3_2, 1.0])
        nearest = exact[np.argmin(np.abs(np.abs(m)[..., None] - exact), axis=-1)]
        if np.abs(np.abs(m) - nearest).max() > 1e-12:
            raise AssertionError("unexpected channel structure")
        mats[j] = np.sign(m) * nearest
    return mats


_MATRICES = _derive_matrices()


def channel_matrix(j):
    """2x2 block ``M`` with ``(x_j, y_j) = M @ (x1, y1)`` componentwise."""
    if j not in _MATRICES:
        raise DomainError(f"channel index must be 1, 2 or 3, got {j!r}")
    return _MATRICES[j].copy()


def channel_coords(x1, y1, j):
    """Return ``(x_j, y_j)`` for a configuration given in channel 1."""
    m = channel_matrix(j)
    x1 = np.asarray(x1, dtype=float)
    y1 = np.asarray(y1, dtype=float)
    return m[0, 0] * x1 + m[0, 1] * y1, m[1, 0] * x1 + m[1, 1] * y1


def channel_momenta(k1, p1, j):
    """Return ``(k_j, p_j)``; same orthogonal map as :func:`channel_coords`."""
    return channel_coords(k1, p1, j)


def far_pair_signs(j):
    """For screen ``j``, the two other pairs with the sign of their ``y_j`` term.

    Returns ``((m, c_m), (n, c_n))`` where ``x_m = -x_j/2 + c_m (sqrt(3)/2) y_j``
    and ``c_m = +-1``.  In the convention of this module the pair ``j+1``
    carries ``+1`` and ``j+2`` carries ``-1`` (cyclically).
    """
    out = []
    mj_inv = channel_matrix(j).T  # orthogonal
    for m in CHANNELS:
        if m == j:
            continue
        # (x_m, y_m) as a function of (x_j, y_j)
        rel = channel_matrix(m) @ mj_inv
        if not np.isclose(rel[0, 0], -0.5):
            raise AssertionError("unexpected channel structure")
        out.append((m, int(np.sign(rel[0, 1]))))
    return tuple(out)


def hyperradius(x1, y1):
    """``z = sqrt(|x1|^2 + |y1|^2)``."""
    x1 = np.asarray(x1, dtype=float)
    y1 = np.asarray(y1, dtype=float)
    return np.sqrt(np.sum(x1 * x1, axis=-1) + np.sum(y1 * y1, axis=-1))


def rho(x_mag, y_mag):
    """``ln x / ln y`` (``-inf`` for ``x <= 1``, where it is clipped)."""
    x_mag = np.asarray(x_mag, dtype=float)
    y_mag = np.asarray(y_mag, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(x_mag > 1.0, np.log(np.maximum(x_mag, 1.0)) / np.log(y_mag), -np.inf)
    return out[()] if out.ndim == 0 else out


def region_classify(cfg, j, rp=RegionParams()):
    """Classify ``cfg`` relative to screen ``j``: inner, overlap or outer.

    Inner iff ``x_j <= y_j**mu``, outer iff ``x_j >= y_j**nu``.

    Raises
    ------
    DegenerateGeometryError
        If ``|y_j| <= 1`` (the log-ratio comparison is meaningless there).
    """
    xj, yj = cfg.channel(j)
    x = float(np.linalg.norm(xj))
    y = float(np.linalg.norm(yj))
    if y <= 1.0:
        raise DegenerateGeometryError(f"region_classify needs |y_{j}| > 1, got {y}")
    r = rho(x, y)
    if r <= rp.mu:
        return Region.INNER
    if r >= rp.nu:
        return Region.OUTER
    return Region.OVERLAP
