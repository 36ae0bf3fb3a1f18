"""Deterministic writers: OBJ meshes, CSV sample tables, ODE node tables.

CSV floats use the shortest round-trip representation (`repr`); OBJ uses 9
significant digits.  No timestamps or environment data are written, so
identical inputs produce byte-identical files.
"""
from __future__ import annotations

from typing import IO, Sequence

from .curves import Curve, acceleration_causality, frenet_frame, planarity_residual, pseudo_null_frame
from .errors import DegenerateCurveError
from .lorentz import Causality
from .ode import OdeSolution
from .surface import GridSpec, TranslationSurface


def _f(x: float) -> str:
    return repr(float(x))


def _f9(x: float) -> str:
    return f"{x:.9g}"


def write_surface_obj(surface: TranslationSurface, grid: GridSpec, fh: IO[str]) -> dict:
    """Vertices in row-major grid order, quads split into two triangles.

    Degenerate grid vertices are still emitted (the geometry exists); the
    CSV twin carries the degeneracy flags.  Returns summary statistics.
    """
    fh.write("# minksurf translation surface mesh\n")
    fh.write(f"# family: {surface.family or 'custom'}\n")
    params = " ".join(f"{k}={v}" for k, v in sorted(surface.params.items()))
    fh.write(f"# params: {params}\n")
    g = grid.to_dict()
    fh.write("# grid: " + " ".join(f"{k}={g[k]}" for k in ("s0", "s1", "t0", "t1", "ns", "nt")) + "\n")
    rows = surface.samples(grid)
    stats = _summarize(rows)
    for row in rows:
        for smp in row:
            p = smp.point
            fh.write(f"v {_f9(p.x)} {_f9(p.y)} {_f9(p.z)}\n")
    nt = grid.nt
    for i in range(grid.ns - 1):
        for j in range(nt - 1):
            a = i * nt + j + 1
            b = (i + 1) * nt + j + 1
            c = (i + 1) * nt + j + 2
            d = i * nt + j + 2
            fh.write(f"f {a} {b} {c}\n")
            fh.write(f"f {a} {c} {d}\n")
    return stats


SURFACE_CSV_COLUMNS = ("s", "t", "x", "y", "z", "E", "F", "G", "H_residual",
                       "causal", "regular")


def write_surface_csv(surface: TranslationSurface, grid: GridSpec, fh: IO[str]) -> dict:
    fh.write(",".join(SURFACE_CSV_COLUMNS) + "\n")
    rows = surface.samples(grid)
    for row in rows:
        for smp in row:
            p = smp.point
            fh.write(",".join([
                _f(smp.s), _f(smp.t), _f(p.x), _f(p.y), _f(p.z),
                _f(smp.E), _f(smp.F), _f(smp.G), _f(smp.H_residual),
                smp.causal.value, "true" if smp.regular else "false",
            ]) + "\n")
    return _summarize(rows)


def _summarize(rows) -> dict:
    counts = {c.value: 0 for c in Causality}
    degenerate = 0
    max_resid = 0.0
    for row in rows:
        for smp in row:
            counts[smp.causal.value] += 1
            if not smp.regular:
                degenerate += 1
            max_resid = max(max_resid, smp.H_residual)
    counts["degenerate"] = degenerate
    counts["max_H_residual"] = max_resid
    return counts


CURVE_CSV_COLUMNS = ("s", "x", "y", "z", "kappa", "tau", "epsilon_or_PN",
                     "planarity_residual")


def write_curve_csv(curve: Curve, samples: Sequence[float], fh: IO[str]) -> None:
    """Per-sample curve data; frame columns are blank where no frame exists."""
    fh.write(",".join(CURVE_CSV_COLUMNS) + "\n")
    for s in samples:
        p = curve.eval(s, 0)
        kappa = tau = ""
        eps = ""
        try:
            cls = acceleration_causality(curve, s)
            if cls is Causality.LIGHTLIKE:
                fr = pseudo_null_frame(curve, s)
                kappa, tau, eps = _f(fr.kappa), "", "PN"
            else:
                fr = frenet_frame(curve, s)
                kappa, tau, eps = _f(fr.kappa), _f(fr.tau), str(fr.epsilon)
        except DegenerateCurveError:
            pass
        resid = planarity_residual(curve, [s])
        fh.write(",".join([_f(s), _f(p.x), _f(p.y), _f(p.z),
                           kappa, tau, eps, _f(resid)]) + "\n")


ODE_CSV_COLUMNS = ("x", "f", "f_prime")


def write_ode_csv(solution: OdeSolution, fh: IO[str]) -> None:
    fh.write(",".join(ODE_CSV_COLUMNS) + "\n")
    for x, fval, d in zip(solution.xs, solution.fs, solution.dfs):
        fh.write(f"{_f(x)},{_f(fval)},{_f(d)}\n")
