"""Catalog of named generating curves, all parametrized by arc length.

Families and their parameter constraints:

* ``logcos(c)``     unit-speed form of the graph (x, log(cos cx)/c, 0); spacelike
                    normal, curvature c/cosh(cs), domain all of R.
* ``logcosh(c)``    unit-speed form of the graph (x, 0, log(cosh cx)/c); timelike
                    normal, curvature c/cos(cs), |cs| < pi/2.
* ``logsinh(c)``    curve (log(sinh cs), 0, log(coth(cs/2)))/c; timelike normal,
                    curvature c/sinh(cs), s > 0.
* ``logparabola``   ((s^2/2 + log s)/2, 0, (s^2/2 - log s)/2); timelike normal,
                    curvature 1/s, s > 0.
* ``helix1(r,h)``   (r cos, r sin, h phi), phi = s/sqrt(r^2-h^2), needs r^2 > h^2 > 0.
* ``helix2(r,h)``   (h phi, r sinh, r cosh), phi = s/sqrt(h^2+r^2), needs r, h != 0.
* ``helix3(r,h)``   (h phi, r cosh, r sinh), phi = s/sqrt(h^2-r^2), needs h^2 > r^2 > 0.
* ``pn_parabola(v,b)``      (s^2/2) v + s b with lightlike v, unit spacelike b
                            orthogonal to v; lightlike normal, frame curvature 0.
* ``pn_exponential(k,v,b)`` e^{ks} v - (s/k) b with lightlike v, spacelike b,
                            <v,b> = 0, <b,b> = k^2; frame curvature k.

Default vectors for the pseudo-null families are chosen so that the
traversal orientation gives det3(t, n, b) = +1 for the null frame.
"""
from __future__ import annotations

import math

from .curves import AnalyticCurve, Curve
from .errors import ParameterError
from .lorentz import Causality, MVec3, causality, inner

# Domains around singular parameter values are shrunk by this margin.
SINGULARITY_MARGIN = 1e-3


def _logcos(c: float) -> Curve:
    if not c > 0:
        raise ParameterError(f"logcos requires c > 0, got c={c}")

    def f0(s):
        u = c * s
        return (math.atan(math.sinh(u)) / c, -math.log(math.cosh(u)) / c, 0.0)

    def f1(s):
        u = c * s
        sech = 1.0 / math.cosh(u)
        return (sech, -math.tanh(u), 0.0)

    def f2(s):
        u = c * s
        sech, th = 1.0 / math.cosh(u), math.tanh(u)
        return (-c * sech * th, -c * sech * sech, 0.0)

    def f3(s):
        u = c * s
        sech, th = 1.0 / math.cosh(u), math.tanh(u)
        return (c * c * sech * (th * th - sech * sech), 2 * c * c * sech * sech * th, 0.0)

    return AnalyticCurve((f0, f1, f2, f3), name="logcos", params={"c": c})


def _logcosh(c: float) -> Curve:
    if not c > 0:
        raise ParameterError(f"logcosh requires c > 0, got c={c}")
    half = math.pi / (2 * c)

    def f0(s):
        u = c * s
        return (math.atanh(math.sin(u)) / c, 0.0, -math.log(math.cos(u)) / c)

    def f1(s):
        u = c * s
        sec = 1.0 / math.cos(u)
        return (sec, 0.0, math.tan(u))

    def f2(s):
        u = c * s
        sec, ta = 1.0 / math.cos(u), math.tan(u)
        return (c * sec * ta, 0.0, c * sec * sec)

    def f3(s):
        u = c * s
        sec, ta = 1.0 / math.cos(u), math.tan(u)
        return (c * c * sec * (ta * ta + sec * sec), 0.0, 2 * c * c * sec * sec * ta)

    return AnalyticCurve((f0, f1, f2, f3),
                         domain=(-half + SINGULARITY_MARGIN, half - SINGULARITY_MARGIN),
                         name="logcosh", params={"c": c})


def _logsinh(c: float) -> Curve:
    if not c > 0:
        raise ParameterError(f"logsinh requires c > 0, got c={c}")

    def f0(s):
        u = c * s
        return (math.log(math.sinh(u)) / c, 0.0, math.log(1.0 / math.tanh(u / 2)) / c)

    def f1(s):
        u = c * s
        return (1.0 / math.tanh(u), 0.0, -1.0 / math.sinh(u))

    def f2(s):
        u = c * s
        csch, coth = 1.0 / math.sinh(u), 1.0 / math.tanh(u)
        return (-c * csch * csch, 0.0, c * csch * coth)

    def f3(s):
        u = c * s
        csch, coth = 1.0 / math.sinh(u), 1.0 / math.tanh(u)
        return (2 * c * c * csch * csch * coth, 0.0, -c * c * csch * (coth * coth + csch * csch))

    return AnalyticCurve((f0, f1, f2, f3), domain=(SINGULARITY_MARGIN, math.inf),
                         name="logsinh", params={"c": c})


def _logparabola() -> Curve:
    def f0(s):
        return (0.5 * (s * s / 2 + math.log(s)), 0.0, 0.5 * (s * s / 2 - math.log(s)))

    def f1(s):
        return (0.5 * (s + 1.0 / s), 0.0, 0.5 * (s - 1.0 / s))

    def f2(s):
        return (0.5 * (1.0 - 1.0 / s ** 2), 0.0, 0.5 * (1.0 + 1.0 / s ** 2))

    def f3(s):
        return (1.0 / s ** 3, 0.0, -1.0 / s ** 3)

    return AnalyticCurve((f0, f1, f2, f3), domain=(SINGULARITY_MARGIN, math.inf),
                         name="logparabola", params={})


def _helix(kind: int, r: float, h: float) -> Curve:
    if kind == 1:
        if not (r * r > h * h > 0):
            raise ParameterError(f"helix1 requires r**2 > h**2 > 0, got r={r}, h={h}")
        w = 1.0 / math.sqrt(r * r - h * h)

        def f(s, order):
            p = w * s
            cw, sw = math.cos(p), math.sin(p)
            if order == 0:
                return (r * cw, r * sw, h * p)
            if order == 1:
                return (-r * w * sw, r * w * cw, h * w)
            if order == 2:
                return (-r * w * w * cw, -r * w * w * sw, 0.0)
            return (r * w ** 3 * sw, -r * w ** 3 * cw, 0.0)
    elif kind == 2:
        if r == 0 or h == 0:
            raise ParameterError(f"helix2 requires r != 0 and h != 0, got r={r}, h={h}")
        w = 1.0 / math.sqrt(h * h + r * r)

        def f(s, order):
            p = w * s
            ch, sh = math.cosh(p), math.sinh(p)
            if order == 0:
                return (h * p, r * sh, r * ch)
            if order == 1:
                return (h * w, r * w * ch, r * w * sh)
            if order == 2:
                return (0.0, r * w * w * sh, r * w * w * ch)
            return (0.0, r * w ** 3 * ch, r * w ** 3 * sh)
    elif kind == 3:
        if not (h * h > r * r > 0):
            raise ParameterError(f"helix3 requires h**2 > r**2 > 0, got r={r}, h={h}")
        w = 1.0 / math.sqrt(h * h - r * r)

        def f(s, order):
            p = w * s
            ch, sh = math.cosh(p), math.sinh(p)
            if order == 0:
                return (h * p, r * ch, r * sh)
            if order == 1:
                return (h * w, r * w * sh, r * w * ch)
            if order == 2:
                return (0.0, r * w * w * ch, r * w * w * sh)
            return (0.0, r * w ** 3 * sh, r * w ** 3 * ch)
    else:  # pragma: no cover
        raise ParameterError(f"unknown helix kind {kind}")

    funcs = tuple((lambda order: (lambda s: f(s, order)))(o) for o in (0, 1, 2, 3))
    return AnalyticCurve(funcs, name=f"helix{kind}", params={"r": r, "h": h})


def _check_pn_vectors(v: MVec3, b: MVec3, bnorm_sq: float, family: str) -> None:
    if causality(v) is not Causality.LIGHTLIKE or v == MVec3(0.0, 0.0, 0.0):
        raise ParameterError(f"{family} requires lightlike v != 0, got <v,v>={inner(v, v):.3g}")
    scale = max(1.0, abs(bnorm_sq))
    if abs(inner(b, b) - bnorm_sq) > 1e-9 * scale:
        raise ParameterError(
            f"{family} requires <b,b> == {bnorm_sq:.6g}, got {inner(b, b):.6g}")
    if abs(inner(v, b)) > 1e-9 * scale:
        raise ParameterError(f"{family} requires <v,b> == 0, got {inner(v, b):.3g}")


def _pn_parabola(v=(0.0, 1.0, 1.0), b=(-1.0, 0.0, 0.0)) -> Curve:
    vv, bb = MVec3(*v), MVec3(*b)
    _check_pn_vectors(vv, bb, 1.0, "pn_parabola")

    def f0(s):
        p = vv * (s * s / 2) + bb * s
        return p.as_tuple()

    def f1(s):
        return (vv * s + bb).as_tuple()

    def f2(s):
        return vv.as_tuple()

    def f3(s):
        return (0.0, 0.0, 0.0)

    return AnalyticCurve((f0, f1, f2, f3), name="pn_parabola",
                         params={"v": tuple(v), "b": tuple(b)})


def _pn_exponential(k=1.0, v=(0.0, 1.0, 1.0), b=None) -> Curve:
    if k == 0:
        raise ParameterError("pn_exponential requires k != 0 (use pn_parabola for k == 0)")
    if b is None:
        b = (k, 0.0, 0.0)
    vv, bb = MVec3(*v), MVec3(*b)
    _check_pn_vectors(vv, bb, k * k, "pn_exponential")

    def f(s, order):
        e = math.exp(k * s) * k ** order
        p = vv * e
        if order == 0:
            p = p - bb * (s / k)
        elif order == 1:
            p = p - bb * (1.0 / k)
        return p.as_tuple()

    funcs = tuple((lambda order: (lambda s: f(s, order)))(o) for o in (0, 1, 2, 3))
    return AnalyticCurve(funcs, name="pn_exponential",
                         params={"k": k, "v": tuple(v), "b": tuple(b)})


_BUILDERS = {
    "logcos": _logcos,
    "logcosh": _logcosh,
    "logsinh": _logsinh,
    "logparabola": _logparabola,
    "helix1": lambda r, h: _helix(1, r, h),
    "helix2": lambda r, h: _helix(2, r, h),
    "helix3": lambda r, h: _helix(3, r, h),
    "pn_parabola": _pn_parabola,
    "pn_exponential": _pn_exponential,
}

NAMED_CURVES = tuple(sorted(_BUILDERS))


def make_named_curve(name: str, **params) -> Curve:
    """Build a named curve; parameter constraints raise ParameterError by name."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ParameterError(
            f"unknown curve family {name!r}; known: {', '.join(NAMED_CURVES)}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise ParameterError(f"{name}: {exc}") from None
