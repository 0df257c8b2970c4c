"""
Finite-difference discrepancy ``Q[Psi] = -Lap_z Psi + V Psi - E Psi`` on the
six-dimensional reduced configuration space, ray scans, and decay fits.

A *field* is either a plain callable ``f(x1, y1)`` (arrays of shape
``(..., 3)``) or an object that also provides
``reduced(base_x, base_y, dx, dy)``; the latter is preferred because it lets
the field drop the large plane-wave phase of the stencil centre exactly (see
:mod:`c3a.bbk`).
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import C3AError, InsufficientSpanError, SingularityProximityError
from .geometry import CHANNELS, channel_coords, hyperradius
from .quad import unit

__all__ = [
    "RaySpec",
    "Sample",
    "DecayFit",
    "laplacian6_fd",
    "laplacian3_fd",
    "twobody_residual",
    "discrepancy",
    "coulomb_potential",
    "default_h_rule",
    "ray_scan",
    "fit_decay",
    "envelope",
    "samples_to_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("z", "absQ", "absPsi", "relQ", "zrelQ", "min_x", "h")

_STENCILS = {
    2: (np.array([-1.0, 0.0, 1.0]), np.array([1.0, -2.0, 1.0])),
    4: (np.array([-2.0, -1.0, 0.0, 1.0, 2.0]), np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0),
    6: (np.arange(-3.0, 4.0), np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0),
}


def _stencil_offsets(order):
    """Offsets (n, 6) and weights (n,) of the summed second differences."""
    try:
        nodes, w = _STENCILS[order]
    except KeyError:
        raise ValueError(f"order must be one of {sorted(_STENCILS)}") from None
    centre_w = 6 * w[nodes == 0][0]
    offs, weights = [np.zeros(6)], [centre_w]
    for axis in range(6):
        for t, c in zip(nodes, w):
            if t == 0:
                continue
            o = np.zeros(6)
            o[axis] = t
            offs.append(o)
            weights.append(c)
    return np.array(offs), np.array(weights)


def _evaluate(field, x1, y1, dx, dy):
    if hasattr(field, "reduced"):
        return np.asarray(field.reduced(x1, y1, dx, dy))
    return np.asarray(field(x1 + dx, y1 + dy))


def laplacian6_fd(field, cfg, h, order=4, return_value=False):
    """Central-difference ``Lap_x + Lap_y`` of ``field`` at ``cfg``.

    With ``return_value=True`` also returns the field value at the centre
    (same phase reference as the Laplacian).
    """
    if not h > 0:
        raise ValueError("h must be positive")
    offs, w = _stencil_offsets(order)
    offs = offs * h
    vals = _evaluate(field, cfg.x1, cfg.y1, offs[:, :3], offs[:, 3:])
    lap = complex(np.dot(w, vals) / (h * h))
    if return_value:
        return lap, complex(vals[0])
    return lap


def laplacian3_fd(f, x, h, order=4):
    """Central-difference Laplacian of a vectorised 3D function at points ``x`` (shape ``(..., 3)``)."""
    if not h > 0:
        raise ValueError("h must be positive")
    try:
        nodes, w = _STENCILS[order]
    except KeyError:
        raise ValueError(f"order must be one of {sorted(_STENCILS)}") from None
    x = np.asarray(x, dtype=float)
    offs, weights = [np.zeros(3)], [3 * w[nodes == 0][0]]
    for axis in range(3):
        for t, c in zip(nodes, w):
            if t != 0:
                o = np.zeros(3)
                o[axis] = t * h
                offs.append(o)
                weights.append(c)
    vals = np.asarray(f(x[..., None, :] + np.array(offs)))
    return vals @ np.array(weights) / (h * h), vals[..., 0]


def twobody_residual(cp, x, h=1e-3, order=4):
    """Relative residual ``|(-Lap + alpha/|x| - k^2) psi_c| / |psi_c|`` at points ``x``.

    ``cp`` is a :class:`~c3a.twobody.CoulombParams`; pass the effective
    coupling to test the screen solution ``psi_m``.
    """
    from .twobody import psi_c

    x = np.asarray(x, dtype=float)
    lap, val = laplacian3_fd(lambda pts: psi_c(pts, cp), x, h, order)
    r = np.linalg.norm(x, axis=-1)
    res = -lap + (cp.alpha / r - cp.kmag**2) * val
    return np.abs(res) / np.abs(val)


def coulomb_potential(cfg, alpha, channels=CHANNELS):
    """``sum_j alpha / |x_j|`` over the requested channels."""
    total = 0.0
    for j in channels:
        xj, _ = cfg.channel(j)
        total += alpha / float(np.linalg.norm(xj))
    return total


def min_pair_distance(cfg):
    return min(float(np.linalg.norm(cfg.channel(j)[0])) for j in CHANNELS)


def discrepancy(field, cfg, q, alpha, h, order=4, channels=CHANNELS, return_value=False):
    """``-Lap Psi + V Psi - E Psi`` with ``V = sum alpha/|x_j|`` and ``E = q^2``.

    ``channels`` restricts the potential (diagnostic mode, e.g. ``(1,)`` for a
    separated product that only sees ``v(x1)``).

    Raises
    ------
    SingularityProximityError
        If some ``|x_j| < 10 h`` for ``j`` in ``channels``.
    """
    dmin = min(float(np.linalg.norm(cfg.channel(j)[0])) for j in channels)
    if dmin == 0.0 or dmin < 10.0 * h:
        raise SingularityProximityError(f"min |x_j| = {dmin:.3g} < 10 h = {10 * h:.3g}")
    lap, val = laplacian6_fd(field, cfg, h, order, return_value=True)
    V = coulomb_potential(cfg, alpha, channels)
    Q = -lap + (V - q.energy) * val
    if return_value:
        return Q, val
    return Q


def default_h_rule(min_x, h_max=0.02, frac=0.02):
    """Step ``min(h_max, frac * min_j |x_j|)``."""
    return min(h_max, frac * min_x)


@dataclass(frozen=True, eq=False)
class RaySpec:
    """Ray ``x1 = z sin(theta) xhat``, ``y1 = z cos(theta) yhat`` over ``radii``."""

    xhat: np.ndarray
    yhat: np.ndarray
    theta: float
    radii: tuple
    name: str = "ray"

    def __post_init__(self):
        object.__setattr__(self, "xhat", unit(self.xhat))
        object.__setattr__(self, "yhat", unit(self.yhat))
        r = tuple(float(v) for v in self.radii)
        if any(b <= a for a, b in zip(r, r[1:])):
            raise ValueError("ray radii must be strictly increasing")
        object.__setattr__(self, "radii", r)

    def point(self, z):
        from .geometry import ConfigPoint

        return ConfigPoint(z * np.sin(self.theta) * self.xhat, z * np.cos(self.theta) * self.yhat)

    @staticmethod
    def ladder(z0, z1, per_octave=4):
        n = int(round(np.log2(z1 / z0) * per_octave))
        return tuple(z0 * 2.0 ** (np.arange(n + 1) / per_octave))


@dataclass
class Sample:
    z: float
    absQ: float
    absPsi: float
    relQ: float
    zrelQ: float
    min_x: float
    h: float
    error: str = ""


def ray_scan(field, ray, q, alpha, h_rule=default_h_rule, order=4, channels=CHANNELS):
    """Discrepancy records along ``ray``.

    Per-point failures are recorded in ``Sample.error`` (with NaN values) and
    the scan continues.
    """
    out = []
    for z in ray.radii:
        cfg = ray.point(z)
        mx = min_pair_distance(cfg)
        h = float(h_rule(mx))
        try:
            Q, val = discrepancy(field, cfg, q, alpha, h, order, channels, return_value=True)
        except C3AError as exc:
            out.append(Sample(z, np.nan, np.nan, np.nan, np.nan, mx, h, f"{type(exc).__name__}: {exc}"))
            continue
        aq, ap = abs(Q), abs(val)
        rel = aq / ap
        out.append(Sample(z, aq, ap, rel, z * rel, mx, h))
    return out


def samples_to_csv(samples):
    """CSV text with the fixed column order ``z,absQ,absPsi,relQ,zrelQ,min_x,h``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s in sorted(samples, key=lambda s: s.z):
        w.writerow([repr(float(getattr(s, c))) for c in CSV_COLUMNS])
    return buf.getvalue()


@dataclass
class DecayFit:
    """``relQ ~ C z^-gamma`` fitted on the upper envelope."""

    C: float
    gamma: float
    rms_log_residual: float
    n_points: int
    n_envelope: int = 0

    def to_dict(self):
        return asdict(self)


def envelope(z, v, window_decades=0.5):
    """Indices of window maxima: for each sample, the largest value within
    ``+-window/2`` decades of it.  The union is the upper envelope."""
    z = np.asarray(z, float)
    v = np.asarray(v, float)
    lz = np.log10(z)
    keep = set()
    for i in range(z.size):
        win = np.nonzero(np.abs(lz - lz[i]) <= 0.5 * window_decades + 1e-12)[0]
        keep.add(int(win[np.argmax(v[win])]))
    return np.array(sorted(keep))


def fit_decay(samples=None, z=None, values=None, use_envelope=True, window_decades=0.5,
              min_points=4, min_span_decades=1.0):
    """Least squares of ``log relQ`` against ``log z``.

    Pass either ``samples`` (records from :func:`ray_scan`) or arrays ``z`` and
    ``values``.

    Raises
    ------
    InsufficientSpanError
        Fewer than ``min_points`` finite samples or a span under
        ``min_span_decades``.
    """
    if samples is not None:
        z = np.array([s.z for s in samples], float)
        values = np.array([s.relQ for s in samples], float)
    z = np.asarray(z, float)
    values = np.asarray(values, float)
    ok = np.isfinite(values) & (values > 0)
    z, values = z[ok], values[ok]
    if z.size < min_points:
        raise InsufficientSpanError(f"need >= {min_points} valid samples, got {z.size}")
    if np.log10(z.max() / z.min()) < min_span_decades - 1e-9:
        raise InsufficientSpanError(
            f"samples span {np.log10(z.max() / z.min()):.2f} decades, need {min_span_decades}"
        )
    idx = envelope(z, values, window_decades) if use_envelope else np.arange(z.size)
    if idx.size < 2:
        raise InsufficientSpanError("envelope has fewer than two points")
    lz, lv = np.log(z[idx]), np.log(values[idx])
    slope, intercept = np.polyfit(lz, lv, 1)
    resid = lv - (slope * lz + intercept)
    return DecayFit(float(np.exp(intercept)), float(-slope),
                    float(np.sqrt(np.mean(resid**2))), int(z.size), int(idx.size))
