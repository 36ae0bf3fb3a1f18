"""Numerical verification suites and machine-readable reports.

Every check walks a deterministic grid, tracks the worst offender, and
returns one ``VerificationReport`` per residual channel, so a report is
reproducible from its own JSON alone.  ``run_suite`` executes a config
(the default battery covers every shipped family) and serializes all
reports in a stable order.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .curves import (Curve, curvature_at, curve_invariants, fd_step, frenet_frame,
                     log_curvature_second_derivative, planarity_residual,
                     pseudo_null_frame)
from .errors import CausalityError, ConfigError, DomainError, PlanarCurveError, RegularityError
from .lorentz import Causality, MVec3, det3, euclidean_sq, inner
from .named_curves import make_named_curve
from .families import build_family, default_grid
from .surface import GridSpec, TranslationSurface, mean_curvature_oracle

# Planarity threshold shared by the propagation check (pass band) and its
# 10x hysteresis band (fail band).
PLANAR_RESIDUAL_TOL = 1e-6


@dataclass
class VerificationReport:
    check: str
    family: str
    params: dict
    grid: dict
    max_residual: float
    tolerance: float
    passed: bool
    worst: dict = field(default_factory=lambda: {"s": None, "t": None, "value": None})
    skipped_degenerate: int = 0
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "family": self.family,
            "params": _plain(self.params),
            "grid": _plain(self.grid),
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
            "worst": _plain(self.worst),
            "skipped_degenerate": int(self.skipped_degenerate),
            "notes": self.notes,
        }


def _plain(value):
    """Recursively coerce numpy scalars so json.dumps accepts the payload."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _curve_grid_dict(lo: float, hi: float, n: int) -> dict:
    return {"s0": lo, "s1": hi, "t0": None, "t1": None, "ns": n, "nt": None}


class _Worst:
    def __init__(self):
        self.value = 0.0
        self.s = None
        self.t = None

    def offer(self, value: float, s: float, t: float | None = None) -> None:
        if value >= self.value:
            self.value = value
            self.s = s
            self.t = t

    def as_dict(self) -> dict:
        return {"s": self.s, "t": self.t, "value": self.value}


# --------------------------------------------------------------------------
# surface checks


def check_H_zero(surface: TranslationSurface, grid: GridSpec, tol: float,
                 oracle_tol: float | None = None) -> list[VerificationReport]:
    """Zero-mean-curvature check through both residual channels.

    Returns two reports: the closed-form normalized residual over the full
    grid, and the finite-difference oracle |H| over the spacelike regular
    points (others are skipped and counted, never raised).
    """
    if oracle_tol is None:
        oracle_tol = 10.0 * tol
    closed, oracle = _Worst(), _Worst()
    skipped = 0
    evaluated = 0
    for s in grid.svalues():
        for t in grid.tvalues():
            smp = surface.sample(s, t)
            closed.offer(smp.H_residual, s, t)
            if smp.causal is Causality.SPACELIKE and smp.regular:
                try:
                    h_val = abs(mean_curvature_oracle(surface, s, t))
                except (CausalityError, RegularityError, DomainError):
                    skipped += 1
                    continue
                evaluated += 1
                oracle.offer(h_val, s, t)
            else:
                skipped += 1
    fam = surface.family or "custom"
    base = dict(family=fam, params=_json_params(surface.params), grid=grid.to_dict())
    return [
        VerificationReport(check="h_zero_closed_form", max_residual=closed.value,
                           tolerance=tol, passed=closed.value <= tol,
                           worst=closed.as_dict(), skipped_degenerate=0, **base),
        VerificationReport(check="h_zero_fd_oracle", max_residual=oracle.value,
                           tolerance=oracle_tol, passed=oracle.value <= oracle_tol,
                           worst=oracle.as_dict(), skipped_degenerate=skipped,
                           notes=f"oracle evaluated at {evaluated} spacelike regular points",
                           **base),
    ]


def check_planarity_propagation(surface: TranslationSurface, grid: GridSpec,
                                tol: float = PLANAR_RESIDUAL_TOL) -> VerificationReport:
    """One planar generator forces the other planar.

    Fails only when one generator's residual is below tol while the other
    exceeds 10*tol; the band avoids flapping at the tolerance boundary.
    Surfaces with two non-planar generators pass vacuously.
    """
    ra = planarity_residual(surface.alpha, grid.svalues())
    rb = planarity_residual(surface.beta, grid.tvalues())
    violated = (ra <= tol and rb > 10 * tol) or (rb <= tol and ra > 10 * tol)
    worst = {"s": None, "t": None, "value": max(ra, rb)}
    return VerificationReport(
        check="planarity_propagation", family=surface.family or "custom",
        params=_json_params(surface.params), grid=grid.to_dict(),
        max_residual=max(ra, rb), tolerance=tol, passed=not violated, worst=worst,
        notes=f"alpha residual {ra:.3e}, beta residual {rb:.3e}")


def check_generator_translation(surface: TranslationSurface, samples: Sequence[float],
                                tol: float = 1e-10) -> VerificationReport:
    """For sum-of-one-curve surfaces, beta - alpha is a constant vector."""
    diffs = [ (surface.beta.eval(u, 0) - surface.alpha.eval(u, 0)) for u in samples ]
    worst = _Worst()
    base = diffs[0]
    for u, dvec in zip(samples, diffs):
        dev = math.sqrt(euclidean_sq(dvec - base))
        worst.offer(dev, u)
    return VerificationReport(
        check="generator_translation", family=surface.family or "custom",
        params=_json_params(surface.params),
        grid=_curve_grid_dict(float(samples[0]), float(samples[-1]), len(samples)),
        max_residual=worst.value, tolerance=tol, passed=worst.value <= tol,
        worst=worst.as_dict())


# --------------------------------------------------------------------------
# curve checks


def check_conserved_quantities(curve: Curve, samples: Sequence[float],
                    tol: float) -> list[VerificationReport]:
    """Constancy of kappa^2 tau and Sigma/tau + tau along a non-planar generator.

    Spread (max - min) of each quantity is compared against tol*(1+|mean|).
    Raises PlanarCurveError when tau vanishes on the grid.
    """
    kt, st = [], []
    for s in samples:
        fr = frenet_frame(curve, s)
        if abs(fr.tau) <= 1e-7:
            raise PlanarCurveError(f"{curve.name}: tau~0 at s={s}; conserved quantities need a non-planar curve")
        inv = curve_invariants(curve, s)
        kt.append(fr.kappa ** 2 * fr.tau)
        st.append(inv.Sigma / fr.tau + fr.tau)
    reports = []
    for name, vals in (("conserved_kappa2_tau", kt), ("conserved_sigma_tau", st)):
        arr = np.asarray(vals)
        spread = float(arr.max() - arr.min())
        mean = float(arr.mean())
        eff_tol = tol * (1.0 + abs(mean))
        worst = _Worst()
        for s, v in zip(samples, arr):
            worst.offer(abs(v - mean), s)
        reports.append(VerificationReport(
            check=name, family=curve.name, params=_json_params(curve.params),
            grid=_curve_grid_dict(float(samples[0]), float(samples[-1]), len(samples)),
            max_residual=spread, tolerance=eff_tol, passed=spread <= eff_tol,
            worst=worst.as_dict(), notes=f"mean {mean:.12g}"))
    return reports


def check_curvature_ode(curve: Curve, epsilon: int, samples: Sequence[float],
             tol: float) -> VerificationReport:
    """Residual of (kappa'/kappa)' + eps*kappa^2 = 0 on a planar Frenet curve."""
    pr = planarity_residual(curve, samples)
    if pr > PLANAR_RESIDUAL_TOL:
        raise PlanarCurveError(
            f"{curve.name}: planarity residual {pr:.3e} too large; the curvature "
            "equation applies to planar curves only")
    worst = _Worst()
    for s in samples:
        kappa = curvature_at(curve, s)
        resid = abs(log_curvature_second_derivative(curve, s) + epsilon * kappa * kappa)
        worst.offer(resid, s)
    return VerificationReport(
        check="curvature_ode", family=curve.name,
        params={**_json_params(curve.params), "epsilon": epsilon},
        grid=_curve_grid_dict(float(samples[0]), float(samples[-1]), len(samples)),
        max_residual=worst.value, tolerance=tol, passed=worst.value <= tol,
        worst=worst.as_dict())


def _fd_field(frames: Sequence, attr: str, idx: int, h: float) -> MVec3:
    """5-point first derivative of a frame field from frames at s-2h..s+2h."""
    def at(j: int) -> MVec3:
        return getattr(frames[idx + j], attr)
    return (at(-2) - at(2) + 8.0 * (at(1) - at(-1))) * (1.0 / (12.0 * h))


def check_frame(curve: Curve, kind: str, samples: Sequence[float],
                tol: float, algebra_tol: float = 1e-8) -> list[VerificationReport]:
    """Frame system residuals plus the algebraic frame identities.

    kind 'frenet': residuals of t' = kappa n, n' = -eps kappa t + tau b,
    b' = tau n, with frame-field derivatives by finite differences; the
    algebra block checks <t,t>=1, <n,n>=eps, <b,b>=-eps and orthogonality.

    kind 'pseudo_null': residuals of t' = n, n' = kappa n, b' = -t - kappa b;
    the algebra block checks the null pairings and det3(t,n,b) = 1 (the
    determinant is -1 for the reversed traversal orientation, which the
    named constructors avoid).
    """
    if kind not in ("frenet", "pseudo_null"):
        raise ConfigError(f"frame kind must be 'frenet' or 'pseudo_null', got {kind!r}")
    make = frenet_frame if kind == "frenet" else pseudo_null_frame
    ode_worst, alg_worst = _Worst(), _Worst()
    for s in samples:
        h = fd_step(s)
        frames = [make(curve, s + j * h) for j in (-2, -1, 0, 1, 2)]
        fr = frames[2]
        dt = _fd_field(frames, "t", 2, h)
        dn = _fd_field(frames, "n", 2, h)
        db = _fd_field(frames, "b", 2, h)
        if kind == "frenet":
            r1 = dt - fr.n * fr.kappa
            r2 = dn - (fr.t * (-fr.epsilon * fr.kappa) + fr.b * fr.tau)
            r3 = db - fr.n * fr.tau
            alg = [inner(fr.t, fr.t) - 1.0, inner(fr.n, fr.n) - fr.epsilon,
                   inner(fr.b, fr.b) + fr.epsilon, inner(fr.t, fr.n),
                   inner(fr.t, fr.b), inner(fr.n, fr.b)]
        else:
            r1 = dt - fr.n
            r2 = dn - fr.n * fr.kappa
            r3 = db + fr.t + fr.b * fr.kappa
            alg = [inner(fr.t, fr.t) - 1.0, inner(fr.n, fr.n), inner(fr.b, fr.b),
                   inner(fr.t, fr.n), inner(fr.t, fr.b), inner(fr.n, fr.b) - 1.0,
                   det3(fr.t, fr.n, fr.b) - 1.0]
        resid = max(math.sqrt(euclidean_sq(v)) for v in (r1, r2, r3))
        ode_worst.offer(resid, s)
        alg_worst.offer(max(abs(a) for a in alg), s)
    base = dict(family=curve.name, params=_json_params(curve.params),
                grid=_curve_grid_dict(float(samples[0]), float(samples[-1]), len(samples)))
    return [
        VerificationReport(check=f"frame_ode_{kind}", max_residual=ode_worst.value,
                           tolerance=tol, passed=ode_worst.value <= tol,
                           worst=ode_worst.as_dict(), **base),
        VerificationReport(check=f"frame_algebra_{kind}", max_residual=alg_worst.value,
                           tolerance=algebra_tol, passed=alg_worst.value <= algebra_tol,
                           worst=alg_worst.as_dict(), **base),
    ]


# --------------------------------------------------------------------------
# suites


def _json_params(params: dict | None) -> dict:
    out = {}
    for key, value in (params or {}).items():
        if isinstance(value, (tuple, list)):
            out[key] = list(value)
        else:
            out[key] = value
    return out


# Analytic families verify at 1e-6; ODE-built generators carry the
# integrator error and verify at 1e-5.
_FAMILY_TOL = {"t31": 1e-5, "t32a": 1e-5, "t32b": 1e-5}

DEFAULT_SUITE = {
    "surfaces": [
        {"family": "para1", "c": 1.0, "theta": 0.5},
        {"family": "para2", "c": 1.0, "theta": 0.5},
        {"family": "para3", "c": 1.0, "theta": 0.5},
        {"family": "scherk_graph_z", "c": 1.0},
        {"family": "scherk_graph_y", "c": 1.0},
        {"family": "t31", "k": 1.0, "m": 1.0, "theta": 0.5, "a": 0.0},
        {"family": "t32a", "m": 1.0, "b1": 0.5, "a": 0.0},
        {"family": "t32b", "k": 1.0, "m": 1.0, "theta": 0.5, "a": 0.0},
        {"family": "t34", "k": 1.0, "b": 0.0, "w2": 1.0, "w3": -1.0},
        {"family": "t34", "k": 1.0, "b": 1.0, "w2": 0.0, "w3": 1.0},
        {"family": "helix_sum", "type": "I", "r": 2.0, "h": 1.0,
         "checks": ["h_zero", "planarity", "translation"]},
        {"family": "helix_sum", "type": "II", "r": 1.0, "h": 1.0,
         "checks": ["h_zero", "planarity", "translation"]},
        {"family": "helix_sum", "type": "III", "r": 1.0, "h": 2.0,
         "checks": ["h_zero", "planarity", "translation"]},
        {"family": "pn_sum", "kappa": 0.0, "checks": ["h_zero", "planarity", "translation"]},
        {"family": "pn_sum", "kappa": 1.0, "checks": ["h_zero", "planarity", "translation"]},
    ],
    "curves": [
        {"curve": "logcos", "c": 1.0, "lo": -1.0, "hi": 1.0,
         "checks": ["frame", "curvature_ode"], "epsilon": 1},
        {"curve": "logcosh", "c": 1.0, "lo": -1.2, "hi": 1.2,
         "checks": ["frame", "curvature_ode"], "epsilon": -1},
        {"curve": "logsinh", "c": 1.0, "lo": 0.3, "hi": 2.0,
         "checks": ["frame", "curvature_ode"], "epsilon": -1},
        {"curve": "logparabola", "lo": 0.3, "hi": 2.0,
         "checks": ["frame", "curvature_ode"], "epsilon": -1},
        {"curve": "helix1", "r": 2.0, "h": 1.0, "lo": -2.0, "hi": 2.0,
         "checks": ["frame", "conserved"]},
        {"curve": "helix2", "r": 1.0, "h": 1.0, "lo": -2.0, "hi": 2.0,
         "checks": ["frame", "conserved"]},
        {"curve": "helix3", "r": 1.0, "h": 2.0, "lo": -2.0, "hi": 2.0,
         "checks": ["frame", "conserved"]},
        {"curve": "pn_parabola", "lo": -2.0, "hi": 2.0, "checks": ["frame"]},
        {"curve": "pn_exponential", "k": 1.0, "lo": -1.5, "hi": 1.5, "checks": ["frame"]},
    ],
}

_SURFACE_CHECKS = ("h_zero", "planarity", "translation")
_CURVE_CHECKS = ("frame", "curvature_ode", "conserved")
_SURFACE_KEYS = {"family", "checks", "ns", "nt", "s0", "s1", "t0", "t1", "tol",
                 "margin", "box"}
_CURVE_KEYS = {"curve", "checks", "n", "lo", "hi", "tol", "epsilon"}
_FAMILY_PARAM_KEYS = {"c", "theta", "k", "m", "a", "b1", "b", "w2", "w3", "r", "h",
                      "f0", "x0", "type", "kappa", "c_alpha", "c_beta"}
_CURVE_PARAM_KEYS = {"c", "r", "h", "k", "v", "b"}


@dataclass
class SuiteResult:
    reports: list[VerificationReport]
    passed: bool

    def to_json(self) -> str:
        payload = {
            "pass": self.passed,
            "report_count": len(self.reports),
            "reports": [r.to_dict() for r in self.reports],
        }
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _surface_entry_reports(entry: dict, where: str) -> list[VerificationReport]:
    unknown = set(entry) - _SURFACE_KEYS - _FAMILY_PARAM_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    if "family" not in entry:
        raise ConfigError(f"{where}: missing required key 'family'")
    checks = entry.get("checks", ["h_zero", "planarity"])
    bad = [c for c in checks if c not in _SURFACE_CHECKS]
    if bad:
        raise ConfigError(f"{where}.checks: unknown checks {bad}; known: {_SURFACE_CHECKS}")
    params = {k: entry[k] for k in entry if k in _FAMILY_PARAM_KEYS}
    surface = build_family(entry["family"], **params)
    ns, nt = int(entry.get("ns", 40)), int(entry.get("nt", 40))
    if all(k in entry for k in ("s0", "s1", "t0", "t1")):
        grid = GridSpec(entry["s0"], entry["s1"], entry["t0"], entry["t1"], ns, nt)
    else:
        grid = default_grid(surface, ns=ns, nt=nt,
                            margin=float(entry.get("margin", 0.0)),
                            box=float(entry.get("box", 1.0)))
    tol = float(entry.get("tol", _FAMILY_TOL.get(entry["family"], 1e-6)))
    reports = []
    for check in checks:
        if check == "h_zero":
            reports.extend(check_H_zero(surface, grid, tol))
        elif check == "planarity":
            reports.append(check_planarity_propagation(surface, grid))
        elif check == "translation":
            reports.append(check_generator_translation(surface, grid.svalues()))
    return reports


def _curve_entry_reports(entry: dict, where: str) -> list[VerificationReport]:
    unknown = set(entry) - _CURVE_KEYS - _CURVE_PARAM_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    if "curve" not in entry:
        raise ConfigError(f"{where}: missing required key 'curve'")
    checks = entry.get("checks", ["frame"])
    bad = [c for c in checks if c not in _CURVE_CHECKS]
    if bad:
        raise ConfigError(f"{where}.checks: unknown checks {bad}; known: {_CURVE_CHECKS}")
    params = {k: entry[k] for k in entry if k in _CURVE_PARAM_KEYS}
    curve = make_named_curve(entry["curve"], **params)
    lo = float(entry.get("lo", -1.0))
    hi = float(entry.get("hi", 1.0))
    n = int(entry.get("n", 40))
    samples = np.linspace(lo, hi, n)
    reports = []
    for check in checks:
        if check == "frame":
            kind = "pseudo_null" if entry["curve"].startswith("pn_") else "frenet"
            reports.extend(check_frame(curve, kind, samples,
                                       tol=float(entry.get("tol", 1e-5))))
        elif check == "curvature_ode":
            if "epsilon" not in entry:
                raise ConfigError(f"{where}: curvature_ode check needs key 'epsilon'")
            reports.append(check_curvature_ode(curve, int(entry["epsilon"]), samples,
                                    tol=float(entry.get("tol", 1e-5))))
        elif check == "conserved":
            reports.extend(check_conserved_quantities(curve, samples,
                                           tol=float(entry.get("tol", 1e-5))))
    return reports


def run_suite(config: dict | None = None) -> SuiteResult:
    """Run the configured checks in order; None runs the default battery.

    Config schema: {"surfaces": [entry...], "curves": [entry...]} where a
    surface entry holds family id, family parameters, optional grid keys
    (ns, nt, s0..t1, margin, box), tol, and a checks list out of
    {h_zero, planarity, translation}; a curve entry holds curve id,
    parameters, lo/hi/n, tol, epsilon, and checks out of
    {frame, curvature_ode, conserved}.
    """
    if config is None:
        config = DEFAULT_SUITE
    if not isinstance(config, dict):
        raise ConfigError(f"config root must be a table, got {type(config).__name__}")
    unknown = set(config) - {"surfaces", "curves"}
    if unknown:
        raise ConfigError(f"config: unknown top-level keys {sorted(unknown)}")
    reports: list[VerificationReport] = []
    for i, entry in enumerate(config.get("surfaces", [])):
        if not isinstance(entry, dict):
            raise ConfigError(f"surfaces[{i}]: must be a table")
        reports.extend(_surface_entry_reports(entry, f"surfaces[{i}]"))
    for i, entry in enumerate(config.get("curves", [])):
        if not isinstance(entry, dict):
            raise ConfigError(f"curves[{i}]: must be a table")
        reports.extend(_curve_entry_reports(entry, f"curves[{i}]"))
    return SuiteResult(reports=reports, passed=all(r.passed for r in reports))
