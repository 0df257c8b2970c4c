"""
Scenario configuration: one JSON document describing the momenta, coupling,
numerical parameters and sampling plans used by the command-line runner.

Every field has a default; :func:`load_config` validates everything the
downstream modules would otherwise reject later, and
:meth:`ScenarioConfig.to_dict` gives the fully resolved document written next
to the outputs.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .errors import C3AError, DomainError
from .geometry import MomentumPoint, RegionParams
from .quad import QuadratureSpec, make_bump, unit
from .specfun import KummerRegime

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "FDConfig",
    "LadderConfig",
    "WeakTwoBodyConfig",
    "WeakPsi1Config",
    "MatchConfig",
    "RKernelConfig",
    "load_config",
    "config_from_dict",
    "bumps_to_testfn",
]


class ConfigError(C3AError, ValueError):
    """Invalid scenario configuration."""


def _vec(v, name):
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise ConfigError(f"{name} must be a finite 3-vector")
    return [float(x) for x in arr]


@dataclass
class FDConfig:
    order: int = 4
    h_max: float = 0.02
    h_frac: float = 0.02

    def validate(self):
        if self.order not in (2, 4, 6):
            raise ConfigError("fd.order must be 2, 4 or 6")
        if not (self.h_max > 0 and self.h_frac > 0):
            raise ConfigError("fd.h_max and fd.h_frac must be positive")

    def h_rule(self, min_x):
        return min(self.h_max, self.h_frac * min_x)


@dataclass
class LadderConfig:
    z0: float = 100.0
    z1: float = 3200.0
    per_octave: int = 8

    def validate(self):
        if not (0 < self.z0 <= self.z1) or self.per_octave < 1:
            raise ConfigError("ladder needs 0 < z0 <= z1 and per_octave >= 1")
        radii = self.radii()
        if len(radii) < 4 or np.log10(radii[-1] / radii[0]) < 1.0 - 1e-9:
            raise ConfigError(
                f"ladder has {len(radii)} radii spanning {np.log10(radii[-1] / radii[0]):.2f} decades; "
                "decay fits need >= 4 radii over >= 1 decade"
            )

    def radii(self):
        n = int(round(np.log2(self.z1 / self.z0) * self.per_octave))
        return tuple(float(v) for v in self.z0 * 2.0 ** (np.arange(n + 1) / self.per_octave))


@dataclass
class WeakTwoBodyConfig:
    k: list | None = None  # defaults to the channel-1 pair momentum
    radii_kr: list = field(default_factory=lambda: [100.0, 200.0, 400.0, 800.0])
    bumps: list | None = None
    threshold: float = 0.05
    kernel: str = "kummer"

    def validate(self):
        if self.k is not None:
            self.k = _vec(self.k, "weak_twobody.k")
        if len(self.radii_kr) < 1 or min(self.radii_kr) < 50.0:
            raise ConfigError("weak_twobody.radii_kr must be nonempty with k r >= 50")
        if self.kernel not in ("kummer", "closed_form"):
            raise ConfigError("weak_twobody.kernel must be 'kummer' or 'closed_form'")


@dataclass
class WeakPsi1Config:
    x: list = field(default_factory=lambda: [2.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0])  # |x| = 2
    yp: list = field(default_factory=lambda: [150.0, 300.0, 600.0, 1200.0])
    bumps: list | None = None
    threshold: float = 0.10
    channel: int = 1

    def validate(self):
        self.x = _vec(self.x, "weak_psi1.x")
        if len(self.yp) < 1 or min(self.yp) < 50.0:
            raise ConfigError("weak_psi1.yp must be nonempty with y p >= 50")
        if self.channel not in (1, 2, 3):
            raise ConfigError("weak_psi1.channel must be 1, 2 or 3")


@dataclass
class MatchConfig:
    sigmas: list = field(default_factory=lambda: [0.6, 0.7, 0.8])
    y0: float = 100.0
    y1: float = 3200.0
    per_octave: int = 4
    xhat: list | None = None
    yhat: list | None = None
    seed: int = 7

    def validate(self):
        for s in self.sigmas:
            if not 0.0 <= s < 1.0:
                raise ConfigError("match.sigmas must lie in [0, 1)")
        if not (1.0 < self.y0 < self.y1):
            raise ConfigError("match needs 1 < y0 < y1")
        if self.xhat is not None:
            self.xhat = _vec(self.xhat, "match.xhat")
        if self.yhat is not None:
            self.yhat = _vec(self.yhat, "match.yhat")

    def y_values(self):
        n = int(round(np.log2(self.y1 / self.y0) * self.per_octave))
        return tuple(float(v) for v in self.y0 * 2.0 ** (np.arange(n + 1) / self.per_octave))


@dataclass
class RKernelConfig:
    n_random: int = 100
    seed: int = 11
    angle_floor: float = 0.05


@dataclass
class ScenarioConfig:
    """Resolved scenario.  ``rays`` entries are dicts with ``name``, ``xhat``,
    ``yhat`` and ``theta``; when empty, rays are generated from ``seed``."""

    alpha: float = 1.0
    k1: list = field(default_factory=lambda: [-0.66, -0.59, 0.08])
    p1: list = field(default_factory=lambda: [0.5, -0.46, 0.57])
    partition: dict = field(default_factory=lambda: {"mu": 0.55, "nu": 0.9})
    fd: FDConfig = field(default_factory=FDConfig)
    quad: dict = field(default_factory=lambda: {"base_order": 32, "max_order": 4096, "tol": 1e-8})
    specfun: dict = field(default_factory=lambda: {"series_radius": 30.0, "asymptotic_threshold": 25.0,
                                                   "max_terms": 4000})
    ladder: LadderConfig = field(default_factory=LadderConfig)
    rays: list = field(default_factory=list)
    n_rays: int = 6
    seed: int = 1
    epsilon: float = 0.05
    gamma_threshold: float = 1.1
    weak_twobody: WeakTwoBodyConfig = field(default_factory=WeakTwoBodyConfig)
    weak_psi1: WeakPsi1Config = field(default_factory=WeakPsi1Config)
    match: MatchConfig = field(default_factory=MatchConfig)
    rkernel: RKernelConfig = field(default_factory=RKernelConfig)
    output_dir: str = "c3a_out"

    # derived objects -----------------------------------------------------
    @property
    def q(self):
        return MomentumPoint(self.k1, self.p1)

    @property
    def region(self):
        return RegionParams(self.partition["mu"], self.partition["nu"])

    @property
    def regime(self):
        return KummerRegime(float(self.specfun["series_radius"]), float(self.specfun["asymptotic_threshold"]),
                            int(self.specfun["max_terms"]))

    @property
    def quad_spec(self):
        return QuadratureSpec(int(self.quad["base_order"]), int(self.quad["max_order"]), float(self.quad["tol"]))

    def to_dict(self):
        return asdict(self)

    def validate(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ConfigError("alpha must be positive")
        self.k1 = _vec(self.k1, "k1")
        self.p1 = _vec(self.p1, "p1")
        q = self.q
        if not q.energy > 0:
            raise ConfigError("energy E = |k1|^2 + |p1|^2 must be positive")
        try:
            q.check_generic(self.epsilon)
            self.region
            self.regime
            self.quad_spec
        except (C3AError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc
        if q.p_mag(1) == 0:
            raise ConfigError("p1 must be nonzero")
        for sub in (self.fd, self.ladder, self.weak_twobody, self.weak_psi1, self.match):
            sub.validate()
        for i, r in enumerate(self.rays):
            if not {"xhat", "yhat", "theta"} <= set(r):
                raise ConfigError("each ray needs xhat, yhat and theta")
            r.setdefault("name", f"ray{i}")
            r["xhat"] = _vec(r["xhat"], "ray.xhat")
            r["yhat"] = _vec(r["yhat"], "ray.yhat")
        for bl in (self.weak_twobody.bumps, self.weak_psi1.bumps):
            if bl is not None:
                try:
                    bumps_to_testfn(bl)
                except (C3AError, KeyError, TypeError, ValueError) as exc:
                    raise ConfigError(f"invalid bump list: {exc}") from exc
        return self


_NESTED = {
    "fd": FDConfig,
    "ladder": LadderConfig,
    "weak_twobody": WeakTwoBodyConfig,
    "weak_psi1": WeakPsi1Config,
    "match": MatchConfig,
    "rkernel": RKernelConfig,
}
_MERGED_DICTS = ("partition", "quad", "specfun")


def config_from_dict(doc):
    """Build and validate a :class:`ScenarioConfig` from a parsed JSON object."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    cfg = ScenarioConfig()
    for key, val in doc.items():
        if key in _NESTED:
            cls = _NESTED[key]
            sub_known = {f.name for f in fields(cls)}
            if not isinstance(val, dict) or set(val) - sub_known:
                raise ConfigError(f"{key}: unknown or malformed keys")
            setattr(cfg, key, cls(**val))
        elif key in _MERGED_DICTS:
            base = dict(getattr(cfg, key))
            if not isinstance(val, dict) or set(val) - set(base):
                raise ConfigError(f"{key}: unknown or malformed keys")
            base.update(val)
            setattr(cfg, key, base)
        else:
            setattr(cfg, key, val)
    try:
        return cfg.validate()
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path):
    """Read a JSON file; ``None`` gives the defaults."""
    if path is None:
        return ScenarioConfig().validate()
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    return config_from_dict(doc)


def bumps_to_testfn(bumps):
    """Test function from ``[{"center", "width", "amplitude"?, "plateau"?}, ...]``."""
    tf = None
    for i, b in enumerate(bumps):
        one = make_bump(unit(b["center"]), float(b["width"]), float(b.get("amplitude", 1.0)),
                        name=b.get("name", f"bump{i}"), plateau=float(b.get("plateau", 0.0)))
        tf = one if tf is None else tf + one
    if tf is None:
        raise DomainError("need at least one bump")
    return tf
