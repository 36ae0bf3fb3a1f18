"""Curve evaluators and the differential geometry of spacelike curves in L^3.

A curve exposes derivatives up to order 3 on an open interval.  Analytic
evaluators carry closed-form derivatives; callable-backed evaluators fall
back to central finite differences (5-point stencils for orders 1-2 and a
7-point stencil for order 3, step 1e-4 * max(1, |s|)).

Two moving frames are provided, split by the causal character of the
acceleration of a unit-speed curve:

* spacelike or timelike acceleration: the orthonormal frame (t, n, b) with
  t' = kappa n, n' = -eps kappa t + tau b, b' = tau n, where eps = <n, n>;
* lightlike acceleration ("pseudo-null" curve): the null frame with
  t' = n, n' = kappa n, b' = -t - kappa b, where b is the unique lightlike
  vector orthogonal to t with <n, b> = 1.

For the null frame, det3(t, n, b) is +1 or -1 depending on the traversal
direction of the curve; both orientations occur in practice, so the frame
is built from the three conditions above (never from the determinant) and
the determinant is reported by the tests where it matters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import (CausalityError, DegenerateCurveError, DomainError,
                     ParameterError, PlanarCurveError, WrongFrameError)
from .lorentz import (Causality, MVec3, causality, cross, det3, euclidean_sq,
                      inner, DEFAULT_CAUSALITY_TOL)

# Finite-difference step coefficient: h = FD_STEP_COEFF * max(1, |s|).
FD_STEP_COEFF = 1e-4
# Below this curvature a curve is treated as locally straight and frames are refused.
FRAME_EPS = 1e-8
# |tau| below this counts as planar for the invariants that divide by tau.
PLANAR_TAU_EPS = 1e-7


def fd_step(s: float) -> float:
    return FD_STEP_COEFF * max(1.0, abs(s))


# Stencil half-widths by derivative order (orders 1-2 use 5 points, order 3 uses 7).
_STENCIL_REACH = {0: 0, 1: 2, 2: 2, 3: 3}


class Curve:
    """Base curve evaluator over an open interval.

    Subclasses must set `domain`, `analytic_derivatives` and implement
    `_eval_analytic(s, order)` or `_position(s)`.
    """

    domain: tuple[float, float] = (-math.inf, math.inf)
    analytic_derivatives: bool = False
    name: str = "curve"
    params: dict

    def __init__(self):
        self.params = {}

    def contains(self, s: float, margin: float = 0.0) -> bool:
        lo, hi = self.domain
        return lo + margin < s < hi - margin

    def _require_inside(self, s: float, order: int) -> None:
        margin = _STENCIL_REACH[order] * fd_step(s) if not self.analytic_derivatives else 0.0
        if not self.contains(s, margin):
            raise DomainError(
                f"{self.name}: s={s} outside open domain {self.domain}"
                + (f" with stencil margin {margin:.3g}" if margin else ""))

    def eval(self, s: float, order: int = 0) -> MVec3:
        if order not in (0, 1, 2, 3):
            raise ParameterError(f"derivative order must be in 0..3, got {order}")
        self._require_inside(s, order)
        if self.analytic_derivatives:
            return self._eval_analytic(s, order)
        if order == 0:
            return self._position(s)
        return _fd_derivative(self._position, s, order)

    def __call__(self, s: float) -> MVec3:
        return self.eval(s, 0)

    def _eval_analytic(self, s: float, order: int) -> MVec3:  # pragma: no cover - abstract
        raise NotImplementedError

    def _position(self, s: float) -> MVec3:  # pragma: no cover - abstract
        raise NotImplementedError


class AnalyticCurve(Curve):
    """Curve given by closed-form position and derivative callables.

    `funcs` holds four callables s -> (x, y, z), one per derivative order.
    """

    def __init__(self, funcs: Sequence[Callable[[float], tuple]],
                 domain: tuple[float, float] = (-math.inf, math.inf),
                 name: str = "analytic", params: dict | None = None):
        super().__init__()
        if len(funcs) != 4:
            raise ParameterError("AnalyticCurve needs exactly 4 derivative callables")
        self._funcs = tuple(funcs)
        self.domain = domain
        self.analytic_derivatives = True
        self.name = name
        self.params = dict(params or {})

    def _eval_analytic(self, s: float, order: int) -> MVec3:
        x, y, z = self._funcs[order](s)
        return MVec3(float(x), float(y), float(z))


class CallableCurve(Curve):
    """Curve backed by a position callable only; derivatives by finite differences."""

    def __init__(self, position: Callable[[float], tuple],
                 domain: tuple[float, float], name: str = "callable",
                 params: dict | None = None):
        super().__init__()
        self._pos = position
        self.domain = domain
        self.analytic_derivatives = False
        self.name = name
        self.params = dict(params or {})

    def _position(self, s: float) -> MVec3:
        x, y, z = self._pos(s)
        return MVec3(float(x), float(y), float(z))


def _fd_derivative(pos: Callable[[float], MVec3], s: float, order: int) -> MVec3:
    h = fd_step(s)
    if order in (1, 2):
        pm2, pm1 = pos(s - 2 * h), pos(s - h)
        pp1, pp2 = pos(s + h), pos(s + 2 * h)
        if order == 1:
            return (pm2 - pp2 + 8.0 * (pp1 - pm1)) * (1.0 / (12.0 * h))
        p0 = pos(s)
        return (16.0 * (pp1 + pm1) - (pp2 + pm2) - 30.0 * p0) * (1.0 / (12.0 * h * h))
    # order 3, accuracy O(h^4)
    pm3, pm2, pm1 = pos(s - 3 * h), pos(s - 2 * h), pos(s - h)
    pp1, pp2, pp3 = pos(s + h), pos(s + 2 * h), pos(s + 3 * h)
    num = pm3 - pp3 + 8.0 * (pp2 - pm2) + 13.0 * (pm1 - pp1)
    return num * (1.0 / (8.0 * h ** 3))


def derivative(curve: Curve, s: float, order: int) -> MVec3:
    """Derivative of the curve at s; analytic when available, FD otherwise."""
    if order not in (1, 2, 3):
        raise ParameterError(f"derivative order must be in 1..3, got {order}")
    return curve.eval(s, order)


# --------------------------------------------------------------------------
# arc-length reparametrization


class ArcLengthCurve(Curve):
    """Unit-speed reparametrization gamma(u) = alpha(x(u)) of a spacelike curve.

    x(u) inverts the arc-length integral u = integral of |alpha'| from s0;
    derivatives of gamma come from the chain rule applied to alpha's
    derivatives, so the output is as smooth as the input.
    """

    def __init__(self, base: Curve, s0: float, tol: float):
        super().__init__()
        if not base.contains(s0):
            raise DomainError(f"s0={s0} outside base domain {base.domain}")
        self._base = base
        self._s0 = float(s0)
        self._tol = float(tol)
        self.analytic_derivatives = True
        self.name = f"arclength({base.name})"
        self.params = dict(base.params)
        self._quad_eps = min(1e-10, 0.1 * tol)
        # Known (x, u) bracket pairs, grown on demand toward the base domain ends.
        self._lo_pair = [s0, 0.0]
        self._hi_pair = [s0, 0.0]
        self.domain = (-math.inf, math.inf)  # trimmed lazily at base-domain ends

    def _speed(self, x: float) -> float:
        d1 = self._base.eval(x, 1)
        q = inner(d1, d1)
        if q <= 0.0 or causality(d1) is not Causality.SPACELIKE:
            raise CausalityError(
                f"{self._base.name}: tangent not spacelike at s={x} (<a',a'>={q:.3g})")
        return math.sqrt(q)

    def _arclen(self, a: float, b: float) -> float:
        if a == b:
            return 0.0
        val, _ = quad(self._speed, a, b, epsabs=self._quad_eps, epsrel=self._quad_eps, limit=200)
        return val

    def _grow(self, pair: list, direction: int, target_u: float) -> None:
        lo, hi = self._base.domain
        while (pair[1] < target_u if direction > 0 else pair[1] > target_u):
            x = pair[0]
            step = max(0.25, abs(x - self._s0)) * 1.0
            nxt = x + direction * step
            if direction > 0 and nxt >= hi:
                nxt = hi - min(1e-9 * max(1.0, abs(hi)), 0.25 * (hi - x)) if math.isfinite(hi) else nxt
                if nxt <= x:
                    raise DomainError(
                        f"arc length {target_u} beyond reparametrized domain (base domain {self._base.domain})")
            if direction < 0 and nxt <= lo:
                nxt = lo + min(1e-9 * max(1.0, abs(lo)), 0.25 * (x - lo)) if math.isfinite(lo) else nxt
                if nxt >= x:
                    raise DomainError(
                        f"arc length {target_u} beyond reparametrized domain (base domain {self._base.domain})")
            pair[1] += self._arclen(pair[0], nxt)
            pair[0] = nxt

    def _param(self, u: float) -> float:
        """Solve arclen(s0, x) = u for x."""
        if u == 0.0:
            return self._s0
        pair = self._hi_pair if u > 0 else self._lo_pair
        self._grow(pair, 1 if u > 0 else -1, u)
        a, b = (self._s0, pair[0]) if u > 0 else (pair[0], self._s0)
        return brentq(lambda x: self._arclen(self._s0, x) - u, a, b,
                      xtol=1e-13, rtol=4 * np.finfo(float).eps)

    def _eval_analytic(self, u: float, order: int) -> MVec3:
        x = self._param(u)
        if order == 0:
            return self._base.eval(x, 0)
        d1 = self._base.eval(x, 1)
        v = math.sqrt(inner(d1, d1))
        if order == 1:
            return d1 * (1.0 / v)
        d2 = self._base.eval(x, 2)
        vp = inner(d1, d2) / v
        if order == 2:
            return d2 * (1.0 / v ** 2) - d1 * (vp / v ** 3)
        d3 = self._base.eval(x, 3)
        vpp = (inner(d2, d2) + inner(d1, d3) - vp * vp) / v
        # gamma''' = a''' p^3 + 3 a'' p p' + a' p''  with p = dx/du = 1/v
        p = 1.0 / v
        pp = -vp / v ** 3
        ppp = (3.0 * vp * vp - v * vpp) / v ** 5
        return d3 * p ** 3 + d2 * (3.0 * p * pp) + d1 * ppp


def arc_length_reparam(curve: Curve, s0: float = 0.0, tol: float = 1e-9) -> Curve:
    """Unit-speed reparametrization anchored at gamma(0) = curve(s0).

    Raises CausalityError if the curve fails to be spacelike somewhere on
    the portion actually sampled.
    """
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    return ArcLengthCurve(curve, s0, tol)


# --------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class FrenetFrame:
    t: MVec3
    n: MVec3
    b: MVec3
    kappa: float
    tau: float
    epsilon: int


@dataclass(frozen=True)
class PseudoNullFrame:
    t: MVec3
    n: MVec3
    b: MVec3
    kappa: float


def _check_unit_speed(curve: Curve, s: float, d1: MVec3, tol: float = 1e-6) -> None:
    q = inner(d1, d1)
    if q <= 0.0 or abs(math.sqrt(q) - 1.0) > tol:
        raise CausalityError(
            f"{curve.name}: not unit-speed spacelike at s={s} (<a',a'>={q:.6g})")


def acceleration_causality(curve: Curve, s: float,
                           tol: float = DEFAULT_CAUSALITY_TOL) -> Causality:
    """Causal character of the acceleration of a unit-speed curve.

    Raises DegenerateCurveError when the acceleration vanishes (straight
    line), which carries no frame.
    """
    d1 = curve.eval(s, 1)
    _check_unit_speed(curve, s, d1)
    d2 = curve.eval(s, 2)
    if euclidean_sq(d2) <= FRAME_EPS ** 2:
        raise DegenerateCurveError(f"{curve.name}: acceleration vanishes at s={s} (straight line)")
    return causality(d2, tol)


def frenet_frame(curve: Curve, s: float, tol: float = DEFAULT_CAUSALITY_TOL) -> FrenetFrame:
    """Orthonormal frame of a unit-speed curve with non-lightlike acceleration.

    kappa = |a''| > 0, n = a''/kappa, b = t x n, eps = sign<n, n>; the
    torsion is tau = -eps * det3(a', a'', a''') / kappa^2, which is the
    unique value satisfying the frame system (pinned by the ODE-residual
    tests).
    """
    d1 = curve.eval(s, 1)
    _check_unit_speed(curve, s, d1)
    d2 = curve.eval(s, 2)
    cls = causality(d2, tol)
    if cls is Causality.LIGHTLIKE:
        if euclidean_sq(d2) <= FRAME_EPS ** 2:
            raise DegenerateCurveError(f"{curve.name}: curvature below {FRAME_EPS} at s={s}")
        raise WrongFrameError(
            f"{curve.name}: acceleration is lightlike at s={s}; use pseudo_null_frame")
    q = inner(d2, d2)
    kappa = math.sqrt(abs(q))
    if kappa <= FRAME_EPS:
        raise DegenerateCurveError(f"{curve.name}: curvature below {FRAME_EPS} at s={s}")
    eps = 1 if q > 0.0 else -1
    n = d2 * (1.0 / kappa)
    b = cross(d1, n)
    d3 = curve.eval(s, 3)
    tau = -eps * det3(d1, d2, d3) / (kappa * kappa)
    return FrenetFrame(t=d1, n=n, b=b, kappa=kappa, tau=tau, epsilon=eps)


def pseudo_null_frame(curve: Curve, s: float,
                      tol: float = DEFAULT_CAUSALITY_TOL) -> PseudoNullFrame:
    """Null frame of a unit-speed curve with lightlike acceleration.

    b is the unique lightlike vector with <b, t> = 0 and <n, b> = 1,
    obtained from the rank-2 linear system plus the null correction along
    n; kappa = <n', b>.
    """
    d1 = curve.eval(s, 1)
    _check_unit_speed(curve, s, d1)
    n = curve.eval(s, 2)
    if euclidean_sq(n) <= FRAME_EPS ** 2:
        raise DegenerateCurveError(f"{curve.name}: acceleration vanishes at s={s}")
    if causality(n, tol) is not Causality.LIGHTLIKE:
        raise WrongFrameError(
            f"{curve.name}: acceleration not lightlike at s={s} "
            f"(<a'',a''>={inner(n, n):.3g}); use frenet_frame")
    # <b, t> = 0, <b, n> = 1 as a Euclidean 2x3 system via the metric flip.
    mat = np.array([[d1.x, d1.y, -d1.z], [n.x, n.y, -n.z]])
    rhs = np.array([0.0, 1.0])
    sol, _, rank, _ = np.linalg.lstsq(mat, rhs, rcond=None)
    if rank < 2:
        raise WrongFrameError(f"{curve.name}: singular null-frame system at s={s}")
    b0 = MVec3(*sol)
    # b0 + mu*n stays a solution; mu kills <b, b>.
    mu = -0.5 * inner(b0, b0)
    b = b0 + n * mu
    d3 = curve.eval(s, 3)
    kappa = inner(d3, b)
    return PseudoNullFrame(t=d1, n=n, b=b, kappa=kappa)


# --------------------------------------------------------------------------
# scalar invariants along a curve


@dataclass(frozen=True)
class CurveInvariants:
    R: float
    Sigma: float


def curvature_at(curve: Curve, s: float) -> float:
    """|<a'', a''>|^(1/2): the curvature of a unit-speed Frenet-type curve."""
    d2 = curve.eval(s, 2)
    return math.sqrt(abs(inner(d2, d2)))


_kappa_at = curvature_at


def _tau_at(curve: Curve, s: float) -> float:
    return frenet_frame(curve, s).tau


def _fd1(f: Callable[[float], float], s: float) -> float:
    h = fd_step(s)
    return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h)


def _fd2(f: Callable[[float], float], s: float) -> float:
    h = fd_step(s)
    return (-f(s - 2 * h) + 16 * f(s - h) - 30 * f(s) + 16 * f(s + h) - f(s + 2 * h)) / (12 * h * h)


def curve_invariants(curve: Curve, s: float) -> CurveInvariants:
    """R = kappa'/kappa + tau'/tau and Sigma = (kappa'/kappa)' + kappa^2 + tau^2.

    The primed quantities come from the same 5-point stencil applied to the
    frame outputs.  Requires a non-planar Frenet-type point (tau != 0).
    """
    fr = frenet_frame(curve, s)
    if abs(fr.tau) <= PLANAR_TAU_EPS:
        raise PlanarCurveError(f"{curve.name}: tau~0 at s={s}; R is undefined on planar curves")
    kp = _fd1(lambda u: _kappa_at(curve, u), s)
    tp = _fd1(lambda u: _tau_at(curve, u), s)
    logk_pp = _fd2(lambda u: math.log(_kappa_at(curve, u)), s)
    R = kp / fr.kappa + tp / fr.tau
    Sigma = logk_pp + fr.kappa ** 2 + fr.tau ** 2
    return CurveInvariants(R=R, Sigma=Sigma)


def log_curvature_second_derivative(curve: Curve, s: float) -> float:
    """(kappa'/kappa)'(s) by finite differences of the frame curvature."""
    return _fd2(lambda u: math.log(_kappa_at(curve, u)), s)


def planarity_residual(curve: Curve, samples: Sequence[float]) -> float:
    """max over samples of |det3(a', a'', a''')| / (|a'| |a''| |a'''|)_euclid.

    0/0 is guarded to 0, so straight lines report 0.
    """
    worst = 0.0
    for s in samples:
        d1, d2, d3 = curve.eval(s, 1), curve.eval(s, 2), curve.eval(s, 3)
        denom = math.sqrt(euclidean_sq(d1) * euclidean_sq(d2) * euclidean_sq(d3))
        if denom == 0.0:
            continue
        worst = max(worst, abs(det3(d1, d2, d3)) / denom)
    return worst


def planarity_residual_at(curve: Curve, s: float) -> float:
    return planarity_residual(curve, [s])
