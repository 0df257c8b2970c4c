"""
Adaptive product quadrature on the unit sphere, and smooth test functions.

Integrands are callables ``f(xhat)`` taking unit vectors of shape ``(..., 3)``
and returning values of shape ``(...)``.  The rule is Gauss-Legendre in
``cos(theta)`` times the uniform (trapezoid) rule in ``phi``; the order is
doubled until two successive levels agree.

Test functions are sums of compactly supported C-infinity bumps.  When an
integrand is weighted by such a function the integral is taken cap by cap
in polar coordinates about each bump centre, which keeps oscillatory
integrands with a stationary point at the centre cheap to resolve.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "TestFn",
    "make_bump",
    "sphere_integrate",
    "cap_integrate",
    "unit",
    "orthonormal_frame",
    "angular_distance",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Order schedule and tolerance for :func:`sphere_integrate`.

    ``base_order`` Gauss-Legendre nodes in ``cos(theta)`` (twice as many in
    ``phi``), doubled up to ``max_order``.
    """

    base_order: int = 16
    max_order: int = 2048
    rel_tol: float = 1e-10
    abs_tol: float = 0.0

    def __post_init__(self):
        if self.base_order < 2 or self.max_order < self.base_order:
            raise DomainError("need 2 <= base_order <= max_order")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")


@dataclass
class QuadResult:
    value: complex
    est_error: float
    order_used: int
    converged: bool = True


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def orthonormal_frame(center):
    """Two unit vectors completing ``center`` to a right-handed frame."""
    c = unit(center)
    trial = np.array([1.0, 0.0, 0.0]) if abs(c[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = unit(trial - (trial @ c) * c)
    e2 = np.cross(c, e1)
    return e1, e2


def angular_distance(a, b):
    a, b = unit(a), unit(b)
    return np.arccos(np.clip(np.sum(a * b, axis=-1), -1.0, 1.0))


@functools.lru_cache(maxsize=64)
def _gauss_legendre(n):
    return np.polynomial.legendre.leggauss(n)


def _polar_grid(center, cos_min, n):
    """Nodes and weights covering the cap ``<xhat, center> >= cos_min``."""
    t, w = _gauss_legendre(n)
    u = 0.5 * (1.0 - cos_min) * t + 0.5 * (1.0 + cos_min)
    wu = 0.5 * (1.0 - cos_min) * w
    n_phi = 2 * n
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - u * u))
    c = unit(center)
    e1, e2 = orthonormal_frame(c)
    pts = (
        u[:, None, None] * c
        + (sin_t[:, None] * np.cos(phi)[None, :])[..., None] * e1
        + (sin_t[:, None] * np.sin(phi)[None, :])[..., None] * e2
    )
    weights = wu[:, None] * np.full(n_phi, 2.0 * np.pi / n_phi)[None, :]
    return pts, weights


def _adaptive(rule, spec):
    n = spec.base_order
    prev = rule(n)
    while True:
        n2 = 2 * n
        if n2 > spec.max_order:
            return QuadResult(prev, float("inf"), n, converged=False)
        cur = rule(n2)
        err = abs(cur - prev)
        if err <= spec.rel_tol * abs(cur) + spec.abs_tol:
            return QuadResult(cur, err, n2, converged=True)
        prev, n = cur, n2


def cap_integrate(f, center, width, spec=QuadratureSpec(), strict=False):
    """Integrate ``f`` over the spherical cap of angular radius ``width``."""
    cos_min = np.cos(width)

    def rule(n):
        pts, w = _polar_grid(center, cos_min, n)
        return complex(np.sum(w * f(pts)))

    res = _adaptive(rule, spec)
    if strict and not res.converged:
        raise QuadratureError(f"cap quadrature did not converge by order {spec.max_order}")
    return res


def sphere_integrate(f, spec=QuadratureSpec(), testfn=None, strict=False):
    """Integrate ``f`` over the unit sphere.

    Parameters
    ----------
    f : callable
        ``f(xhat) -> values``.
    spec : QuadratureSpec
    testfn : TestFn, optional
        If given, integrates ``f * testfn`` cap by cap over its support.
    strict : bool
        Raise :class:`QuadratureError` instead of returning an unconverged
        result.

    Returns
    -------
    QuadResult
        ``est_error`` is the change between the last two levels.
    """
    if testfn is not None:
        total, err, order, ok = 0j, 0.0, 0, True
        for b in testfn.bumps:
            r = cap_integrate(lambda x, b=b: f(x) * b.amplitude * b.profile(x), b.center, b.width, spec)
            total += r.value
            err += r.est_error
            order = max(order, r.order_used)
            ok &= r.converged
        if strict and not ok:
            raise QuadratureError(f"quadrature did not converge by order {spec.max_order}")
        return QuadResult(total, err, order, ok)

    def rule(n):
        pts, w = _polar_grid(np.array([0.0, 0.0, 1.0]), -1.0, n)
        return complex(np.sum(w * f(pts)))

    res = _adaptive(rule, spec)
    if strict and not res.converged:
        raise QuadratureError(f"quadrature did not converge by order {spec.max_order}")
    return res


@dataclass(frozen=True, eq=False)
class _Bump:
    center: np.ndarray
    width: float
    amplitude: float = 1.0
    plateau: float = 0.0

    def profile(self, xhat):
        d = angular_distance(xhat, self.center)
        t = d / self.width
        out = np.zeros(np.shape(t))
        inside = t < 1.0
        if self.plateau == 0.0:
            out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
            return out
        # C-infinity step psi(1-u) / (psi(1-u) + psi(u)), psi(u) = exp(-1/u)
        u = np.clip((t[inside] - self.plateau) / (1.0 - self.plateau), 0.0, 1.0)
        with np.errstate(divide="ignore", over="ignore"):
            a = np.where(u < 1.0, np.exp(-1.0 / np.maximum(1.0 - u, 1e-300)), 0.0)
            b = np.where(u > 0.0, np.exp(-1.0 / np.maximum(u, 1e-300)), 0.0)
        out[inside] = a / (a + b)
        return out


@dataclass(frozen=True, eq=False)
class TestFn:
    """Sum of C-infinity bumps on the sphere with disjoint supports."""

    __test__ = False  # keep pytest from collecting this class

    bumps: tuple = field(default_factory=tuple)
    name: str = "testfn"

    def __call__(self, xhat):
        xhat = np.asarray(xhat, dtype=float)
        out = np.zeros(xhat.shape[:-1])
        for b in self.bumps:
            out = out + b.amplitude * b.profile(xhat)
        return out

    def __add__(self, other):
        combined = TestFn(self.bumps + other.bumps, f"{self.name}+{other.name}")
        combined._check_disjoint()
        return combined

    def scaled(self, factor):
        return TestFn(tuple(_Bump(b.center, b.width, b.amplitude * factor, b.plateau) for b in self.bumps),
                      self.name)

    def _check_disjoint(self):
        for i, a in enumerate(self.bumps):
            for b in self.bumps[i + 1:]:
                if angular_distance(a.center, b.center) < a.width + b.width:
                    raise DomainError("test-function bumps must have disjoint supports")

    def min_distance_to(self, direction):
        """Smallest angular distance from ``direction`` to the support."""
        return min(float(angular_distance(b.center, direction)) - b.width for b in self.bumps)


def make_bump(center, width, amplitude=1.0, name="bump", plateau=0.0):
    """C-infinity bump ``exp(1 - 1/(1 - (d/width)^2))`` for angular distance ``d < width``.

    With ``plateau > 0`` the bump is flat (equal to 1) for
    ``d <= plateau * width`` and falls off over the remaining annulus.  A flat
    centre removes the curvature corrections of stationary-phase integrals.
    """
    if not 0.0 < width < np.pi / 2:
        raise DomainError("bump width must lie in (0, pi/2)")
    if not 0.0 <= plateau < 1.0:
        raise DomainError("plateau fraction must lie in [0, 1)")
    return TestFn((_Bump(unit(center), float(width), float(amplitude), float(plateau)),), name)
