"""
Command-line scenario runner.

    c3a <subcommand> --config <path> [--field F] [--target T] [--channel j] [--out DIR]

Subcommands: ``verify-specfun``, ``residual-scan``, ``weak-check``,
``match-check``, ``rkernel``.  Each writes its CSV/JSON outputs, the resolved
configuration and a gnuplot script into the output directory.

Exit codes: 0 pass, 2 configuration error, 3 check failure, 4 geometry
failure, 5 quadrature failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .assembly import CHI_MODEL, ChiField, PartitionSpec, PsiAsField, forward_clearance, match_scan
from .bbk import BBKContext, BBKField, psi1_weak_coeffs, weak_check_psi1
from .errors import (C3AError, DegenerateGeometryError, DomainError, InsufficientSpanError,
                     NonConvergenceError, SingularityProximityError)
from .geometry import CHANNELS, MomentumPoint, channel_matrix, rho
from .quad import make_bump, orthonormal_frame, unit
from .residual import RaySpec, discrepancy, fit_decay, min_pair_distance, ray_scan, samples_to_csv
from .rkernel import orthogonality_report, r_components
from .scenario import ConfigError, bumps_to_testfn, load_config
from .specfun import check_regime_overlap, kummer_phi, kummer_phi_asymptotic, kummer_phi_series, log_gamma
from .twobody import CoulombParams, weak_check_2body

__all__ = ["main", "EXIT_OK", "EXIT_CONFIG", "EXIT_CHECK", "EXIT_GEOMETRY", "EXIT_QUADRATURE"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CHECK = 3
EXIT_GEOMETRY = 4
EXIT_QUADRATURE = 5

SCREEN_SIN_THETAS = (0.003, 0.01, 0.03, 0.1, 0.2)


class CommandFailure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _threads():
    raw = os.environ.get("C3A_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"C3A_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ConfigError("C3A_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _map(fn, items):
    """Ordered parallel map capped by ``C3A_THREADS``."""
    items = list(items)
    n = min(_threads(), max(1, len(items)))
    if n == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _write(out, name, text):
    with open(os.path.join(out, name), "w", newline="") as fh:
        fh.write(text)


def _write_json(out, name, obj):
    _write(out, name, json.dumps(_to_jsonable(obj), indent=2, sort_keys=True) + "\n")


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# ray construction
# ---------------------------------------------------------------------------


def ray_in_channel(j, xhat, yhat, theta, radii, name):
    """Ray with ``x_j = z sin(theta) xhat``, ``y_j = z cos(theta) yhat`` as a channel-1 :class:`RaySpec`."""
    m = channel_matrix(j)
    a = np.sin(theta) * unit(xhat)
    b = np.cos(theta) * unit(yhat)
    x_part = m[0, 0] * a + m[1, 0] * b
    y_part = m[0, 1] * a + m[1, 1] * b
    nx, ny = np.linalg.norm(x_part), np.linalg.norm(y_part)
    return RaySpec(x_part / nx, y_part / ny, float(np.arctan2(nx, ny)), radii, name)


def _rhos(ray, z):
    cfg = ray.point(z)
    out = {}
    for j in CHANNELS:
        xj, yj = cfg.channel(j)
        out[j] = float(rho(np.linalg.norm(xj), np.linalg.norm(yj)))
    return out


def generic_rays(cfg, ctx):
    """Seeded rays along which every ``rho_j >= nu`` over the whole ladder."""
    rng = np.random.default_rng(cfg.seed)
    radii = cfg.ladder.radii()
    nu = cfg.region.nu
    rays = []
    for _ in range(10000):
        if len(rays) == cfg.n_rays:
            break
        xh, yh = unit(rng.normal(size=3)), unit(rng.normal(size=3))
        theta = float(rng.uniform(0.3, 1.2))
        ray = RaySpec(xh, yh, theta, radii, f"g{len(rays)}")
        if all(min(_rhos(ray, z).values()) >= nu for z in (radii[0], radii[-1])):
            rays.append(ray)
    return rays


def screen_rays(cfg, ctx, j):
    """Seeded rays hugging screen ``j`` (``x_j = z sin(theta)``): the small
    angles stay in the near-screen region, the larger ones cross the blend band."""
    rng = np.random.default_rng(cfg.seed)
    radii = cfg.ladder.radii()
    nu = cfg.region.nu
    rays = []
    for st in SCREEN_SIN_THETAS:
        for _ in range(10000):
            xh, yh = unit(rng.normal(size=3)), unit(rng.normal(size=3))
            if forward_clearance(ctx, j, yh) < cfg.epsilon:
                continue
            ray = ray_in_channel(j, xh, yh, float(np.arcsin(st)), radii, f"s{j}_{st:g}")
            others = [min(r for c, r in _rhos(ray, z).items() if c != j) for z in (radii[0], radii[-1])]
            if min(others) >= nu:
                rays.append(ray)
                break
    return rays


def configured_rays(cfg):
    radii = cfg.ladder.radii()
    return [RaySpec(r["xhat"], r["yhat"], float(r["theta"]), radii, str(r["name"])) for r in cfg.rays]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _ode_residual(eta, s, regime, h=1e-2):
    """Relative residual of ``zeta Phi'' + (1 - zeta) Phi' + i eta Phi`` at ``zeta = i s``."""
    pts = s + h * np.arange(-2, 3)
    v = kummer_phi(eta, pts, regime)
    d1 = (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h)
    d2 = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h)
    zeta = 1j * s
    # d/dzeta = -i d/ds
    p1, p2 = -1j * d1, -d2
    res = zeta * p2 + (1 - zeta) * p1 + 1j * eta * v[2]
    scale = abs(zeta * p2) + abs((1 - zeta) * p1) + abs(eta * v[2])
    return float(abs(res) / scale)


def cmd_verify_specfun(cfg, out):
    regime = cfg.regime
    checks = []

    def run(name, fn, tol):
        try:
            value = float(fn())
            checks.append({"name": name, "value": value, "tol": tol, "status": "pass" if value <= tol else "fail"})
        except NonConvergenceError as exc:
            checks.append({"name": name, "status": "nonconvergence", "message": str(exc)})
        except C3AError as exc:
            checks.append({"name": name, "status": "error", "message": f"{type(exc).__name__}: {exc}"})

    run("regime_overlap_max_relative_mismatch", lambda: check_regime_overlap.__wrapped__(regime), 1e-6)
    run("series_at_overlap_point_eta0.5_s27.5",
        lambda: abs(kummer_phi_series(0.5, 27.5, regime.max_terms) - kummer_phi_asymptotic(0.5, 27.5))
        / abs(kummer_phi_series(0.5, 27.5, regime.max_terms)), 1e-6)
    run("phi_at_s0_minus_1", lambda: abs(kummer_phi(0.7, 0.0, regime) - 1.0), 0.0)
    run("phi_eta0_minus_1", lambda: float(np.max(np.abs(kummer_phi(0.0, np.linspace(0, 60, 7), regime) - 1))), 0.0)
    run("kummer_ode_max_relative_residual",
        lambda: max(_ode_residual(eta, s, regime) for eta in (0.1, 0.5, 2.0) for s in (0.7, 5.0, 20.0, 27.5, 45.0)),
        1e-6)
    run("log_gamma_recurrence",
        lambda: abs(np.exp(log_gamma(2 + 0.5j)) - (1 + 0.5j) * np.exp(log_gamma(1 + 0.5j))), 1e-12)
    run("gamma_modulus_identity_y0.7",
        lambda: abs(abs(np.exp(log_gamma(1 + 0.7j))) ** 2 - np.pi * 0.7 / np.sinh(np.pi * 0.7)), 1e-13)
    ok = all(c["status"] == "pass" for c in checks)
    _write_json(out, "specfun_report.json", {"regime": {"series_radius": regime.series_radius,
                                                        "asymptotic_threshold": regime.asymptotic_threshold,
                                                        "max_terms": regime.max_terms},
                                             "checks": checks, "pass": ok})
    return EXIT_OK if ok else EXIT_CHECK


def _field_for(name, ctx, cfg, j):
    if name == "bbk":
        return BBKField(ctx)
    if name == "psias":
        return PsiAsField(ctx, PartitionSpec(cfg.region.mu, cfg.region.nu), min_z=10.0)
    if name == "chi":
        return ChiField(ctx, j)
    raise ConfigError(f"unknown field {name!r}")


def _h_halving_change(field, ray, samples, cfg, q):
    worst = 0.0
    for s in samples:
        if s.error:
            continue
        Q2 = discrepancy(field, ray.point(s.z), q, cfg.alpha, 0.5 * s.h, cfg.fd.order)
        worst = max(worst, abs(abs(Q2) - s.absQ) / s.absQ)
    return worst


def cmd_residual_scan(cfg, out, field_name="bbk", j=1):
    q = cfg.q
    ctx = BBKContext(q, cfg.alpha, cfg.regime)
    field = _field_for(field_name, ctx, cfg, j)
    if cfg.rays:
        rays = configured_rays(cfg)
    elif field_name == "bbk":
        rays = generic_rays(cfg, ctx)
    else:
        rays = screen_rays(cfg, ctx, j)
    if not rays:
        raise CommandFailure(EXIT_GEOMETRY, "no admissible rays could be constructed")

    def scan(ray):
        samples = ray_scan(field, ray, q, cfg.alpha, cfg.fd.h_rule, cfg.fd.order)
        return ray, samples, _h_halving_change(field, ray, samples, cfg, q)

    results = _map(scan, rays)
    fits = {}
    all_aborted = True
    ok = True
    for ray, samples, hchange in results:
        _write(out, f"scan_{field_name}_{ray.name}.csv", samples_to_csv(samples))
        errors = [s.error for s in samples if s.error]
        if len(errors) < len(samples):
            all_aborted = False
        rho_start, rho_end = _rhos(ray, ray.radii[0]), _rhos(ray, ray.radii[-1])
        entry = {"n_errors": len(errors), "errors": errors[:5], "h_halving_max_change": hchange,
                 "rho_start": rho_start, "rho_end": rho_end,
                 "theta": ray.theta, "xhat": ray.xhat, "yhat": ray.yhat}
        try:
            fit = fit_decay(samples)
            entry.update(gamma=fit.gamma, C=fit.C, rms=fit.rms_log_residual,
                         n_points=fit.n_points, n_envelope=fit.n_envelope,
                         pass_=bool(fit.gamma >= cfg.gamma_threshold))
            ok &= fit.gamma >= cfg.gamma_threshold
        except InsufficientSpanError as exc:
            entry.update(gamma=None, error=str(exc), pass_=False)
            ok = False
        entry["pass"] = entry.pop("pass_")
        fits[ray.name] = entry
    meta = {"field": field_name, "channel": j, "gamma_threshold": cfg.gamma_threshold, "fd_order": cfg.fd.order}
    if field_name in ("psias", "chi"):
        meta["chi_model"] = CHI_MODEL
    _write_json(out, "fits.json", {"meta": meta, "rays": fits})
    _write(out, f"plot_scan_{field_name}.gp", _scan_plot(field_name, [r.name for r, _, _ in results]))
    if all_aborted:
        raise CommandFailure(EXIT_GEOMETRY, "every sample on every ray was rejected")
    return EXIT_OK if ok else EXIT_CHECK


def _scan_plot(field_name, names):
    lines = [
        "set logscale xy",
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set xlabel 'z'",
        "set ylabel '|Q| / |Psi|'",
        f"set title 'relative discrepancy of {field_name}'",
    ]
    parts = [f"'scan_{field_name}_{n}.csv' using 1:4 with linespoints title '{n}'" for n in names]
    lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"


def _default_twobody_testfn(khat):
    e1, _ = orthonormal_frame(khat)
    side = np.cos(1.9) * khat + np.sin(1.9) * e1
    return make_bump(-khat, 0.5, name="backward") + make_bump(side, 0.5, 0.7, name="side")


def _default_psi1_testfn(phat):
    return make_bump(-phat, 0.4, name="incoming") + make_bump(phat, 0.4, 0.6, name="outgoing")


def cmd_weak_check(cfg, out, target="twobody"):
    q = cfg.q
    rows = []
    if target == "twobody":
        wc = cfg.weak_twobody
        k = np.asarray(wc.k if wc.k is not None else cfg.k1, float)
        cp = CoulombParams(cfg.alpha, k)
        tf = bumps_to_testfn(wc.bumps) if wc.bumps else _default_twobody_testfn(cp.khat)
        try:
            checks = _map(lambda kr: weak_check_2body(cp, kr / cp.kmag, tf, cfg.quad_spec, kernel=wc.kernel),
                          wc.radii_kr)
        except DomainError as exc:
            raise CommandFailure(EXIT_CONFIG, str(exc)) from exc
        ladder = list(wc.radii_kr)
        threshold = wc.threshold
    elif target == "psi1":
        wc = cfg.weak_psi1
        try:
            co = psi1_weak_coeffs(q, cfg.alpha, wc.channel)
            tf = bumps_to_testfn(wc.bumps) if wc.bumps else _default_psi1_testfn(co.phat)
            ctx = BBKContext(q, cfg.alpha, cfg.regime)
            checks = _map(lambda yp: weak_check_psi1(q, cfg.alpha, wc.x, yp, tf, wc.channel, cfg.quad_spec, ctx),
                          wc.yp)
        except DegenerateGeometryError as exc:
            raise CommandFailure(EXIT_CONFIG, f"precondition: {exc}") from exc
        ladder = list(wc.yp)
        threshold = wc.threshold
    else:
        raise ConfigError(f"unknown weak-check target {target!r}")

    for c in checks:
        rows.append([c.radius, c.lhs.real, c.lhs.imag, c.rhs.real, c.rhs.imag, c.relerr])
    _write(out, f"weak_{target}.csv",
           _csv_text(["radius", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "relerr"], rows))
    summary = {"target": target, "threshold": threshold, "final_relerr": checks[-1].relerr,
               "ladder": ladder, "converged": [c.converged for c in checks]}
    if len(checks) >= 2:
        lz = np.log([float(v) for v in ladder])
        slope = np.polyfit(lz, np.log([c.relerr for c in checks]), 1)[0]
        summary["relerr_decay_exponent"] = float(-slope)
        summary["non_monotone_steps"] = int(sum(b.relerr > a.relerr for a, b in zip(checks, checks[1:])))
    _write_json(out, f"weak_{target}.json", summary)
    _write(out, f"plot_weak_{target}.gp",
           "set logscale xy\nset datafile separator ','\nset key autotitle columnhead\n"
           f"set xlabel 'radius'\nset ylabel 'relerr'\nplot 'weak_{target}.csv' using 1:6 with linespoints\n")
    if not all(c.converged for c in checks):
        raise CommandFailure(EXIT_QUADRATURE, "spherical quadrature did not converge")
    return EXIT_OK if checks[-1].relerr <= threshold else EXIT_CHECK


def _match_directions(cfg, ctx, j):
    mc = cfg.match
    if mc.xhat is not None and mc.yhat is not None:
        return unit(mc.xhat), unit(mc.yhat)
    rng = np.random.default_rng(mc.seed)
    for _ in range(10000):
        xh, yh = unit(rng.normal(size=3)), unit(rng.normal(size=3))
        if forward_clearance(ctx, j, yh) >= max(cfg.epsilon, 0.05):
            return xh, yh
    raise CommandFailure(EXIT_GEOMETRY, "no direction clears the far-pair forward cones")


def cmd_match_check(cfg, out, j=1):
    ctx = BBKContext(cfg.q, cfg.alpha, cfg.regime)
    xh, yh = _match_directions(cfg, ctx, j)
    ys = cfg.match.y_values()
    rp = cfg.region
    rows, fits = [], {}
    screen = match_scan(ctx, j, None, ys, xh, yh, rp)
    for r in screen:
        rows.append([r.y, r.x, r.relative_diff, "screen", r.region])
    screen_max = max(r.relative_diff for r in screen)
    ok = screen_max <= 1e-13
    for sigma in cfg.match.sigmas:
        path = match_scan(ctx, j, sigma, ys, xh, yh, rp)
        for r in path:
            rows.append([r.y, r.x, r.relative_diff, repr(float(sigma)), r.region])
        inside = [r for r in path if r.region == "overlap"]
        entry = {"n_rows": len(path), "n_overlap": len(inside)}
        if len(inside) < len(path):
            entry["flag"] = "out-of-region rows excluded from the fit"
        try:
            fit = fit_decay(z=[r.y for r in inside], values=[r.relative_diff for r in inside])
            entry.update(exponent=fit.gamma, C=fit.C, rms=fit.rms_log_residual, pass_=bool(fit.gamma > 0))
            ok &= fit.gamma > 0
        except InsufficientSpanError as exc:
            entry.update(exponent=None, note=f"not gated: {exc}", pass_=None)
        entry["pass"] = entry.pop("pass_")
        fits[repr(float(sigma))] = entry
    _write(out, f"match_{j}.csv", _csv_text(["y", "x", "relative_diff", "sigma", "region"], rows))
    _write_json(out, f"match_{j}.json", {"channel": j, "chi_model": CHI_MODEL, "xhat": xh, "yhat": yh,
                                         "forward_clearance": forward_clearance(ctx, j, yh),
                                         "screen_max_relative_diff": screen_max, "paths": fits, "pass": ok})
    _write(out, f"plot_match_{j}.gp",
           "set logscale xy\nset datafile separator ','\nset key autotitle columnhead\n"
           f"set xlabel 'y'\nset ylabel '|chi - BBK| / |BBK|'\nplot 'match_{j}.csv' using 1:3 with points\n")
    return EXIT_OK if ok else EXIT_CHECK


def _b0_crosscheck(q, alpha, j, rc):
    co = psi1_weak_coeffs(q, alpha, j)
    exp_in = -co.B0 * np.prod([z ** (1j * e) for z, e in zip(co.Z_minus, co.etas)])
    exp_out = -co.B0 * np.prod([z ** (1j * e) for z, e in zip(co.Z_plus, co.etas)])
    err = max(abs(rc.B0_in - exp_in), abs(rc.B0_out - exp_out)) / (2 * np.pi) ** -3
    return {"max_relative_error": float(err), "flag": "pass" if err <= 1e-12 else "fail"}


def cmd_rkernel(cfg, out):
    q = cfg.q
    channels = {}
    for j in CHANNELS:
        try:
            rc = r_components(q, cfg.alpha, j, cfg.rkernel.angle_floor)
        except DegenerateGeometryError as exc:
            channels[str(j)] = {"degenerate": f"degenerate angle: {exc}"}
            continue
        except DomainError as exc:
            channels[str(j)] = {"degenerate": f"a or b vanishes ({exc}); the kernel vectors divide by a and b"}
            continue
        entry = rc.to_dict()
        entry["a_plus_b_minus_2omega"] = rc.a + rc.b - 2 * rc.omega
        entry["b_minus_a_minus_2eta_m"] = rc.b - rc.a - 2 * rc.eta_m
        entry["B0_crosscheck"] = _b0_crosscheck(q, cfg.alpha, j, rc)
        entry["orthogonality"] = orthogonality_report(rc)
        channels[str(j)] = entry

    rng = np.random.default_rng(cfg.rkernel.seed)
    scan, skipped = [], 0
    max_draws = 50 * cfg.rkernel.n_random
    while len(scan) < cfg.rkernel.n_random and len(scan) + skipped < max_draws:
        qq = MomentumPoint(rng.normal(size=3), rng.normal(size=3))
        try:
            rc = r_components(qq, cfg.alpha, 1, cfg.rkernel.angle_floor)
        except C3AError:
            skipped += 1
            continue
        rep = orthogonality_report(rc)
        rep["k1"], rep["p1"] = qq.k1, qq.p1
        scan.append(rep)
    summary = {"n": len(scan), "skipped_degenerate": skipped}
    for key in ("dot_in", "dot_out", "omega_in_identity_residual", "omega_out_identity_residual",
                "omega_out_reflected_residual"):
        summary[f"max_abs_{key}"] = max((abs(r[key]) for r in scan), default=None)
    _write_json(out, "rkernel.json", {"alpha": cfg.alpha, "channels": channels,
                                      "random_scan": {"summary": summary, "reports": scan}})
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="c3a", description="Three-body Coulomb asymptotics verification runner.")
    p.add_argument("--version", action="version", version=f"c3a {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON scenario file (defaults apply when omitted)")
        sp.add_argument("--out", help="output directory (overrides output_dir)")

    common(sub.add_parser("verify-specfun", help="special-function consistency suite"))
    sp = sub.add_parser("residual-scan", help="discrepancy decay along rays")
    common(sp)
    sp.add_argument("--field", choices=("bbk", "psias", "chi"), default="bbk")
    sp.add_argument("--channel", type=int, choices=CHANNELS, default=1)
    sp = sub.add_parser("weak-check", help="quadrature versus weak asymptotics")
    common(sp)
    sp.add_argument("--target", choices=("twobody", "psi1"), default="twobody")
    sp = sub.add_parser("match-check", help="near-screen surrogate versus BBK in the overlap band")
    common(sp)
    sp.add_argument("--channel", type=int, choices=CHANNELS, default=1)
    common(sub.add_parser("rkernel", help="kernel component report"))
    return p


def run(args):
    cfg = load_config(args.config)
    out = args.out or cfg.output_dir
    cfg.output_dir = out
    _threads()
    os.makedirs(out, exist_ok=True)
    _write_json(out, "resolved_config.json", cfg.to_dict())
    if args.command == "verify-specfun":
        return cmd_verify_specfun(cfg, out)
    if args.command == "residual-scan":
        return cmd_residual_scan(cfg, out, args.field, args.channel)
    if args.command == "weak-check":
        return cmd_weak_check(cfg, out, args.target)
    if args.command == "match-check":
        return cmd_match_check(cfg, out, args.channel)
    if args.command == "rkernel":
        return cmd_rkernel(cfg, out)
    raise ConfigError(f"unknown command {args.command!r}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ConfigError as exc:
        print(f"c3a: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CommandFailure as exc:
        print(f"c3a: {exc}", file=sys.stderr)
        return exc.code
    except NonConvergenceError as exc:
        print(f"c3a: quadrature or series failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except (DegenerateGeometryError, SingularityProximityError) as exc:
        print(f"c3a: geometry failure: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
