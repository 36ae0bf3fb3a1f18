"""Fixed-step RK4 integration of the scalar first-order ODEs behind the
pseudo-null surface families, with a half-step Richardson error estimate
and pole-aware domain truncation.

All three right-hand sides have the shape f'(x) = sign * outer(cx*x + cf*f + c0)
with outer either tan or tanh, so one class covers them and also supplies
the partial derivatives needed for closed-form second and third derivatives
of the graph curves (x, f(x), 0) and (x, 0, f(x)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import BPoly, CubicHermiteSpline

from .curves import Curve
from .errors import DomainError, ParameterError
from .lorentz import MVec3

# Integration stops once |f'| exceeds this cap (tan poles).
BLOWUP_CAP = 1e6
# ... or once the tan argument comes within this distance of pi/2 + pi*Z.
POLE_MARGIN = 1e-3
# Default RK4 step as a fraction of the requested domain width.
STEP_FRACTION = 1e-3


@dataclass(frozen=True)
class AffineArgRhs:
    """f'(x) = sign * outer(cx*x + cf*f + c0), outer in {tan, tanh}."""

    outer: str
    sign: float
    cx: float
    cf: float
    c0: float

    def __post_init__(self):
        if self.outer not in ("tan", "tanh"):
            raise ParameterError(f"unknown rhs outer function {self.outer!r}")

    def _arg(self, x: float, f: float) -> float:
        return self.cx * x + self.cf * f + self.c0

    def __call__(self, x: float, f: float) -> float:
        u = self._arg(x, f)
        return self.sign * (math.tan(u) if self.outer == "tan" else math.tanh(u))

    def _du(self, x: float, f: float) -> tuple[float, float]:
        """(d/du outer, d2/du2 outer) times sign at the current argument."""
        u = self._arg(x, f)
        if self.outer == "tan":
            t = math.tan(u)
            d1 = 1.0 + t * t
            d2 = 2.0 * t * d1
        else:
            t = math.tanh(u)
            d1 = 1.0 - t * t
            d2 = -2.0 * t * d1
        return self.sign * d1, self.sign * d2

    def dx(self, x: float, f: float) -> float:
        return self._du(x, f)[0] * self.cx

    def df(self, x: float, f: float) -> float:
        return self._du(x, f)[0] * self.cf

    def second_partials(self, x: float, f: float) -> tuple[float, float, float]:
        """(r_xx, r_xf, r_ff)."""
        _, d2 = self._du(x, f)
        return d2 * self.cx * self.cx, d2 * self.cx * self.cf, d2 * self.cf * self.cf

    @property
    def has_poles(self) -> bool:
        return self.outer == "tan"

    def pole_distance(self, x: float, f: float) -> float:
        """Distance of the argument to the nearest pole (inf for tanh)."""
        if not self.has_poles:
            return math.inf
        u = self._arg(x, f)
        d = math.fmod(abs(u - math.pi / 2), math.pi)
        return min(d, math.pi - d)

    def branch_index(self, x: float, f: float) -> int:
        """Index n of the tan branch ((n-1/2)pi, (n+1/2)pi) containing the argument."""
        return math.floor(self._arg(x, f) / math.pi + 0.5)


@dataclass
class OdeSolution:
    """RK4 node values plus a C^2 dense interpolant and error metadata.

    The interpolant is a piecewise quintic matching (f, f', f'') at every
    node, with f' and f'' taken from the right-hand side; a merely C^1
    interpolant would leave curvature kinks at the nodes that downstream
    finite-difference probes of the surface would see.
    """

    xs: np.ndarray
    fs: np.ndarray
    dfs: np.ndarray
    rhs: AffineArgRhs
    max_step_error: float
    stop_lo: str = "domain"
    stop_hi: str = "domain"
    interp: BPoly = field(init=False, repr=False)

    def __post_init__(self):
        d2 = np.array([self.rhs.dx(x, f) + self.rhs.df(x, f) * d
                       for x, f, d in zip(self.xs, self.fs, self.dfs)])
        self.interp = BPoly.from_derivatives(
            self.xs, np.column_stack([self.fs, self.dfs, d2]))

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.xs[0]), float(self.xs[-1])

    @property
    def truncated(self) -> bool:
        return self.stop_lo != "domain" or self.stop_hi != "domain"

    def f(self, x: float) -> float:
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise DomainError(f"x={x} outside integrated domain ({lo}, {hi})")
        return float(self.interp(x))

    def fprime(self, x: float) -> float:
        return self.rhs(x, self.f(x))


def _rk4_march(rhs: AffineArgRhs, x0: float, f0: float, x_end: float, step: float,
               blowup_cap: float) -> tuple[list, list, list, str]:
    xs, fs, dfs = [x0], [f0], [rhs(x0, f0)]
    n = max(1, int(round(abs(x_end - x0) / step)))
    h = (x_end - x0) / n
    x, f = x0, f0
    branch = rhs.branch_index(x0, f0) if rhs.has_poles else 0
    reason = "domain"
    for _ in range(n):
        k1 = rhs(x, f)
        k2 = rhs(x + h / 2, f + h * k1 / 2)
        k3 = rhs(x + h / 2, f + h * k2 / 2)
        k4 = rhs(x + h, f + h * k3)
        f_next = f + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
        x_next = x + h
        if not all(math.isfinite(v) for v in (k1, k2, k3, k4, f_next)):
            reason = "pole"
            break
        d_next = rhs(x_next, f_next)
        if max(abs(k1), abs(k2), abs(k3), abs(k4), abs(d_next)) > blowup_cap:
            reason = "pole"
            break
        if rhs.has_poles:
            # A fixed step can jump clean over a pole spike onto the next tan
            # branch; the solution there no longer continues this one.
            if rhs.pole_distance(x_next, f_next) < POLE_MARGIN or \
                    rhs.branch_index(x_next, f_next) != branch:
                reason = "pole"
                break
        x, f = x_next, f_next
        xs.append(x)
        fs.append(f)
        dfs.append(d_next)
    return xs, fs, dfs, reason


def solve_scalar_ode(rhs: AffineArgRhs, x0: float, f0: float,
                     domain: tuple[float, float], step: float | None = None,
                     blowup_cap: float = BLOWUP_CAP) -> OdeSolution:
    """Integrate f' = rhs(x, f) over `domain` from f(x0) = f0.

    Fixed-step RK4 run at the requested step and at half that step; the
    half-step run is kept and the disagreement (scaled by 1/15, the RK4
    Richardson factor) is reported as `max_step_error`.  Integration stops
    early, with the stop reason recorded, when the derivative exceeds
    `blowup_cap` (tan poles); the usable surface domain is then truncated
    rather than erroring.
    """
    lo, hi = domain
    if not (lo < x0 < hi) and not (lo <= x0 <= hi):
        raise ParameterError(f"x0={x0} outside requested domain {domain}")
    if not math.isfinite(rhs(x0, f0)) or abs(rhs(x0, f0)) > blowup_cap:
        raise ParameterError(f"initial point (x0={x0}, f0={f0}) sits on a pole of the rhs")
    if step is None:
        step = STEP_FRACTION * (hi - lo)
    if step <= 0:
        raise ParameterError(f"step must be positive, got {step}")

    runs = {}
    for tag, h in (("coarse", step), ("fine", step / 2)):
        xs_hi, fs_hi, dfs_hi, reason_hi = _rk4_march(rhs, x0, f0, hi, h, blowup_cap)
        xs_lo, fs_lo, dfs_lo, reason_lo = _rk4_march(rhs, x0, f0, lo, h, blowup_cap)
        xs = xs_lo[::-1] + xs_hi[1:]
        fs = fs_lo[::-1] + fs_hi[1:]
        dfs = dfs_lo[::-1] + dfs_hi[1:]
        runs[tag] = (np.array(xs), np.array(fs), np.array(dfs), reason_lo, reason_hi)

    cx, cf, cd, rlo, rhi = runs["fine"]
    xs_c, fs_c = runs["coarse"][0], runs["coarse"][1]
    # Compare on the common node range of both runs.
    lo_common = max(xs_c[0], cx[0])
    hi_common = min(xs_c[-1], cx[-1])
    mask = (xs_c >= lo_common) & (xs_c <= hi_common)
    err = 0.0
    if mask.any():
        fine_interp = CubicHermiteSpline(cx, cf, cd)
        err = float(np.max(np.abs(fs_c[mask] - fine_interp(xs_c[mask]))) / 15.0)
    return OdeSolution(xs=cx, fs=cf, dfs=cd, rhs=rhs, max_step_error=err,
                       stop_lo=rlo, stop_hi=rhi)


class PlanarGraphCurve(Curve):
    """Graph curve (x, f(x), 0) or (x, 0, f(x)) built from an ODE solution.

    Derivatives use the chain rule on the right-hand side, so orders 1-3
    are smooth functions of the interpolated f and never touch finite
    differences.
    """

    def __init__(self, solution: OdeSolution, plane: str, name: str = "ode_graph",
                 params: dict | None = None):
        super().__init__()
        if plane not in ("xy", "xz"):
            raise ParameterError(f"plane must be 'xy' or 'xz', got {plane!r}")
        self._sol = solution
        self._plane = plane
        self.domain = solution.domain
        self.analytic_derivatives = True
        self.name = name
        self.params = dict(params or {})

    def _embed(self, x: float, g: float) -> MVec3:
        if self._plane == "xy":
            return MVec3(x, g, 0.0)
        return MVec3(x, 0.0, g)

    def _eval_analytic(self, x: float, order: int) -> MVec3:
        f = self._sol.f(x)
        if order == 0:
            return self._embed(x, f)
        rhs = self._sol.rhs
        fp = rhs(x, f)
        if order == 1:
            v = self._embed(x, fp)
            return MVec3(1.0, v.y, v.z)
        rx, rf = rhs.dx(x, f), rhs.df(x, f)
        fpp = rx + rf * fp
        if order == 2:
            v = self._embed(x, fpp)
            return MVec3(0.0, v.y, v.z)
        rxx, rxf, rff = rhs.second_partials(x, f)
        fppp = rxx + 2 * rxf * fp + rff * fp * fp + rf * fpp
        v = self._embed(x, fppp)
        return MVec3(0.0, v.y, v.z)
