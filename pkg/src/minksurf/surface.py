"""Translation surfaces X(s,t) = alpha(s) + beta(t) and their pointwise data.

The zero-mean-curvature condition is monitored through two independent
channels:

* ``SurfaceSample.H_residual`` evaluates the closed-form numerator
  G*det(Xs,Xt,Xss) - 2F*det(Xs,Xt,Xst) + E*det(Xs,Xt,Xtt) using the
  generators' own derivatives (the mixed term vanishes identically for
  translation surfaces), normalized by max(1, |EG-F^2|^(3/2)) so values are
  comparable across families;
* ``mean_curvature_oracle`` recomputes H = -trace(shape operator)/2 from
  nothing but finite differences of the raw position map, with one
  Richardson extrapolation.  It never looks at the analytic derivatives,
  which keeps the two channels independent.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .curves import Curve
from .errors import CausalityError, DomainError, ParameterError, PreconditionError, RegularityError
from .lorentz import (Causality, MVec3, cross, det3, euclidean_sq, inner,
                      DEFAULT_CAUSALITY_TOL)

# Relative threshold on |Xs x Xt| below which a point counts as degenerate.
REGULARITY_EPS = 1e-12
# FD step coefficient for the mean-curvature oracle: h = coeff * max(1, |s|+|t|).
# 2e-4 balances truncation against double-precision rounding in the
# second-difference stencils once the Richardson step is applied.
ORACLE_STEP_COEFF = 2e-4
# The oracle divides by EG - F^2, so its output is pure noise once the point
# sits too close to the lightlike locus; below this relative bound it refuses.
ORACLE_BOUNDARY_BAND = 1e-2
# Unit-speed slack accepted by the principal-curvature summand formula.
UNIT_SPEED_TOL = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """Uniform closed sampling grid inside the open surface domains."""

    s0: float
    s1: float
    t0: float
    t1: float
    ns: int = 50
    nt: int = 50

    def __post_init__(self):
        if not (self.s0 < self.s1 and self.t0 < self.t1):
            raise ParameterError(f"empty grid ranges ({self.s0},{self.s1})x({self.t0},{self.t1})")
        if self.ns < 2 or self.nt < 2:
            raise ParameterError(f"grid needs ns, nt >= 2, got {self.ns}x{self.nt}")

    def svalues(self) -> np.ndarray:
        return np.linspace(self.s0, self.s1, self.ns)

    def tvalues(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.nt)

    def to_dict(self) -> dict:
        return {"s0": self.s0, "s1": self.s1, "t0": self.t0, "t1": self.t1,
                "ns": self.ns, "nt": self.nt}


@dataclass(frozen=True)
class SurfaceSample:
    s: float
    t: float
    point: MVec3
    Xs: MVec3
    Xt: MVec3
    E: float
    F: float
    G: float
    H_numerator: float
    H_residual: float
    kappa1: float | None
    kappa2: float | None
    causal: Causality
    regular: bool


@dataclass
class TranslationSurface:
    """Sum surface of two generating curves, immutable once built."""

    alpha: Curve
    beta: Curve
    s_domain: tuple[float, float] | None = None
    t_domain: tuple[float, float] | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.s_domain is None:
            self.s_domain = self.alpha.domain
        if self.t_domain is None:
            self.t_domain = self.beta.domain
        a, b = self.alpha.domain, self.beta.domain
        if not (a[0] <= self.s_domain[0] and self.s_domain[1] <= a[1]):
            raise ParameterError(f"s_domain {self.s_domain} not inside alpha domain {a}")
        if not (b[0] <= self.t_domain[0] and self.t_domain[1] <= b[1]):
            raise ParameterError(f"t_domain {self.t_domain} not inside beta domain {b}")

    def _check_inside(self, s: float, t: float) -> None:
        if not (self.s_domain[0] < s < self.s_domain[1]):
            raise DomainError(f"s={s} outside surface s-domain {self.s_domain}")
        if not (self.t_domain[0] < t < self.t_domain[1]):
            raise DomainError(f"t={t} outside surface t-domain {self.t_domain}")

    def point(self, s: float, t: float) -> MVec3:
        self._check_inside(s, t)
        return self.alpha.eval(s, 0) + self.beta.eval(t, 0)

    def sample(self, s: float, t: float,
               causal_tol: float = DEFAULT_CAUSALITY_TOL) -> SurfaceSample:
        """All first/second-form data at (s, t); degeneracy is reported, not raised."""
        self._check_inside(s, t)
        Xs = self.alpha.eval(s, 1)
        Xt = self.beta.eval(t, 1)
        Xss = self.alpha.eval(s, 2)
        Xtt = self.beta.eval(t, 2)
        E, F, G = inner(Xs, Xs), inner(Xs, Xt), inner(Xt, Xt)
        # X_st == 0 for every translation surface, so the -2F term drops.
        num = G * det3(Xs, Xt, Xss) + E * det3(Xs, Xt, Xtt)
        d = E * G - F * F
        residual = abs(num) / max(1.0, abs(d) ** 1.5)

        c = cross(Xs, Xt)
        scale = euclidean_sq(Xs) * euclidean_sq(Xt)
        regular = euclidean_sq(c) > (REGULARITY_EPS ** 2) * max(scale, 1.0)

        band = causal_tol * max(scale, 1.0)
        if abs(d) <= band or not regular:
            cls = Causality.LIGHTLIKE
        elif d > 0.0 and E > 0.0:
            cls = Causality.SPACELIKE
        elif d < 0.0:
            cls = Causality.TIMELIKE
        else:
            cls = Causality.LIGHTLIKE

        k1 = k2 = None
        if E > 0.0 and G > 0.0 and \
                abs(math.sqrt(E) - 1.0) <= UNIT_SPEED_TOL and \
                abs(math.sqrt(G) - 1.0) <= UNIT_SPEED_TOL:
            k1 = det3(Xs, Xt, Xss)
            k2 = det3(Xs, Xt, Xtt)

        return SurfaceSample(s=s, t=t, point=self.alpha.eval(s, 0) + self.beta.eval(t, 0),
                             Xs=Xs, Xt=Xt, E=E, F=F, G=G, H_numerator=num,
                             H_residual=residual, kappa1=k1, kappa2=k2,
                             causal=cls, regular=regular)

    def samples(self, grid: GridSpec) -> list[list[SurfaceSample]]:
        """Row-major grid evaluation; MINK_THREADS > 1 splits rows over a thread pool."""
        sv, tv = grid.svalues(), grid.tvalues()

        def row(i: int) -> list[SurfaceSample]:
            return [self.sample(sv[i], t) for t in tv]

        workers = _thread_count()
        if workers <= 1 or grid.ns < 4:
            return [row(i) for i in range(grid.ns)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, range(grid.ns)))


def _thread_count() -> int:
    raw = os.environ.get("MINK_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"MINK_THREADS must be an integer, got {raw!r}") from None
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def principal_summands(surface: TranslationSurface, s: float, t: float) -> tuple[float, float]:
    """(det3(a', b', a''), det3(a', b', b'')) for unit-speed generators.

    Their sum is the unnormalized H numerator, and each is a principal
    curvature of the surface when the point is spacelike.  Raises
    PreconditionError unless both generators are unit-speed at (s, t),
    since the formula is only claimed for arc-length parametrizations.
    """
    surface._check_inside(s, t)
    Xs, Xt = surface.alpha.eval(s, 1), surface.beta.eval(t, 1)
    for tag, v in (("alpha", Xs), ("beta", Xt)):
        q = inner(v, v)
        if q <= 0.0 or abs(math.sqrt(q) - 1.0) > UNIT_SPEED_TOL:
            raise PreconditionError(
                f"principal summands need unit-speed generators; {tag} has <v,v>={q:.6g}")
    return (det3(Xs, Xt, surface.alpha.eval(s, 2)),
            det3(Xs, Xt, surface.beta.eval(t, 2)))


def _oracle_once(surface: TranslationSurface, s: float, t: float, h: float):
    """Second-order FD fundamental forms from the raw position map."""
    X = surface.point
    p0 = X(s, t)
    pss, pms = X(s + h, t), X(s - h, t)
    pst, pms_t = X(s, t + h), X(s, t - h)
    ppp, ppm = X(s + h, t + h), X(s + h, t - h)
    pmp, pmm = X(s - h, t + h), X(s - h, t - h)
    Xs = (pss - pms) * (1.0 / (2 * h))
    Xt = (pst - pms_t) * (1.0 / (2 * h))
    Xss = (pss - p0 * 2.0 + pms) * (1.0 / (h * h))
    Xtt = (pst - p0 * 2.0 + pms_t) * (1.0 / (h * h))
    Xst = (ppp - ppm - pmp + pmm) * (1.0 / (4 * h * h))
    E, F, G = inner(Xs, Xs), inner(Xs, Xt), inner(Xt, Xt)
    return Xs, Xt, Xss, Xst, Xtt, E, F, G


def _oracle_h(surface, s, t, h):
    Xs, Xt, Xss, Xst, Xtt, E, F, G = _oracle_once(surface, s, t, h)
    c = cross(Xs, Xt)
    q = inner(c, c)
    scale = max(euclidean_sq(Xs) * euclidean_sq(Xt), 1.0)
    if euclidean_sq(c) <= (REGULARITY_EPS ** 2) * scale:
        raise RegularityError(f"degenerate point (s={s}, t={t}): Xs x Xt ~ 0")
    d = E * G - F * F
    if q >= 0.0 or d <= 0.0 or E <= 0.0:
        raise CausalityError(
            f"mean-curvature oracle needs a spacelike point; at (s={s}, t={t}) EG-F^2={d:.3g}")
    if d <= ORACLE_BOUNDARY_BAND * scale:
        raise CausalityError(
            f"point (s={s}, t={t}) too close to the lightlike locus for a reliable "
            f"finite-difference estimate (EG-F^2 = {d:.3g} vs scale {scale:.3g})")
    N = c * (1.0 / math.sqrt(-q))
    L, M, Nc = inner(N, Xss), inner(N, Xst), inner(N, Xtt)
    return -(G * L - 2 * F * M + E * Nc) / (2 * d)


def mean_curvature_oracle(surface: TranslationSurface, s: float, t: float,
                          h: float | None = None) -> float:
    """Mean curvature from raw-position finite differences only.

    H = -trace(S)/2 with S = I^{-1} II and unit timelike normal
    N = Xs x Xt / |Xs x Xt|.  Uses central differences at steps h and h/2
    with one Richardson extrapolation.  Raises CausalityError off the
    spacelike region and RegularityError at degenerate points.
    """
    surface._check_inside(s, t)
    if h is None:
        h = ORACLE_STEP_COEFF * max(1.0, abs(s) + abs(t))
    if h <= 0:
        raise ParameterError(f"oracle step must be positive, got {h}")
    lo, hi = surface.s_domain
    if not (lo < s - h and s + h < hi):
        raise DomainError(f"oracle stencil at s={s} leaves s-domain {surface.s_domain}")
    lo, hi = surface.t_domain
    if not (lo < t - h and t + h < hi):
        raise DomainError(f"oracle stencil at t={t} leaves t-domain {surface.t_domain}")
    coarse = _oracle_h(surface, s, t, h)
    fine = _oracle_h(surface, s, t, h / 2)
    return (4.0 * fine - coarse) / 3.0


@dataclass
class CausalMap:
    """Grid of causal classes, with degeneracy flags and summary counts."""

    grid: GridSpec
    classes: list[list[Causality]]
    regular: list[list[bool]]
    counts: dict

    @property
    def degenerate_count(self) -> int:
        return self.counts["degenerate"]


def causal_map(surface: TranslationSurface, grid: GridSpec) -> CausalMap:
    rows = surface.samples(grid)
    classes = [[smp.causal for smp in row] for row in rows]
    regular = [[smp.regular for smp in row] for row in rows]
    counts = {c.value: 0 for c in Causality}
    counts["degenerate"] = 0
    for row in rows:
        for smp in row:
            counts[smp.causal.value] += 1
            if not smp.regular:
                counts["degenerate"] += 1
    return CausalMap(grid=grid, classes=classes, regular=regular, counts=counts)
