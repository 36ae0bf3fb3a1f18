import math

import numpy as np
import pytest

from minksurf import (AnalyticCurve, CallableCurve, Causality, CausalityError,
                      DegenerateCurveError, DomainError, MVec3, PlanarCurveError,
                      WrongFrameError, acceleration_causality, arc_length_reparam,
                      curve_invariants, derivative, det3, euclidean_sq, frenet_frame,
                      inner, make_named_curve, planarity_residual, pseudo_null_frame)
from minksurf.curves import fd_step


def line_curve():
    return CallableCurve(lambda s: (s, 0.0, 0.0), domain=(-10, 10), name="line")


def test_fd_derivative_line():
    d = derivative(line_curve(), 0.2, 1)
    assert abs(d.x - 1.0) < 1e-10 and abs(d.y) < 1e-12 and abs(d.z) < 1e-12


def test_fd_derivative_parabola_second_order_exact():
    c = CallableCurve(lambda s: (s * s, 0.0, 0.0), domain=(-10, 10))
    d = derivative(c, 1.0, 2)
    # polynomial of degree 2: central differences are exact up to rounding
    assert abs(d.x - 2.0) < 1e-6
    assert abs(d.y) < 1e-12


def test_fd_third_derivative_cubic():
    c = CallableCurve(lambda s: (s ** 3, 0.0, 0.0), domain=(-10, 10))
    d = derivative(c, 0.5, 3)
    assert abs(d.x - 6.0) < 1e-4


def test_fd_requires_stencil_margin():
    c = CallableCurve(lambda s: (s, 0.0, 0.0), domain=(0.0, 1.0))
    h = fd_step(1e-9)
    with pytest.raises(DomainError):
        derivative(c, h, 1)  # within 2h of the domain edge


def test_helix_tangent_unit_spacelike_fd_vs_analytic():
    helix = make_named_curve("helix1", r=2.0, h=1.0)
    fd_version = CallableCurve(lambda s: helix.eval(s, 0).as_tuple(), domain=(-5, 5))
    for s in (0.0, 0.7, -1.3):
        d_an = helix.eval(s, 1)
        d_fd = fd_version.eval(s, 1)
        assert abs(inner(d_an, d_an) - 1.0) < 1e-12
        assert math.sqrt(euclidean_sq(d_an - d_fd)) < 1e-9


# --------------------------------------------------------------------------
# arc length


def test_arc_length_constant_speed_two():
    c = CallableCurve(lambda s: (2 * s, 0.0, 0.0), domain=(-10, 10))
    gamma = arc_length_reparam(c, s0=0.0, tol=1e-10)
    p = gamma.eval(1.0, 0)
    assert abs(p.x - 1.0) < 1e-9 and abs(p.y) < 1e-12
    d = gamma.eval(0.5, 1)
    assert abs(inner(d, d) - 1.0) < 1e-10


def test_arc_length_of_logcos_graph_matches_named_curve():
    # graph (x, log(cos x), 0) reparametrized by arc length equals logcos(c=1)
    graph = AnalyticCurve(
        (lambda x: (x, math.log(math.cos(x)), 0.0),
         lambda x: (1.0, -math.tan(x), 0.0),
         lambda x: (0.0, -1.0 / math.cos(x) ** 2, 0.0),
         lambda x: (0.0, -2.0 * math.tan(x) / math.cos(x) ** 2, 0.0)),
        domain=(-math.pi / 2 + 1e-6, math.pi / 2 - 1e-6), name="logcos_graph")
    gamma = arc_length_reparam(graph, s0=0.0, tol=1e-10)
    named = make_named_curve("logcos", c=1.0)
    for s in np.linspace(-1.2, 1.2, 9):
        p, q = gamma.eval(s, 0), named.eval(s, 0)
        assert math.sqrt(euclidean_sq(p - q)) < 1e-6
        d = gamma.eval(s, 1)
        assert abs(inner(d, d) - 1.0) < 1e-10


def test_arc_length_identity_on_unit_speed_input():
    named = make_named_curve("logcos", c=1.0)
    gamma = arc_length_reparam(named, s0=0.0, tol=1e-10)
    for s in (-0.9, 0.0, 1.1):
        assert math.sqrt(euclidean_sq(gamma.eval(s, 0) - named.eval(s, 0))) < 1e-9


def test_arc_length_rejects_non_spacelike():
    c = CallableCurve(lambda s: (s, 0.0, 2 * s), domain=(-5, 5))  # timelike tangent
    gamma = arc_length_reparam(c, s0=0.0)
    with pytest.raises(CausalityError):
        gamma.eval(0.5, 0)


# --------------------------------------------------------------------------
# acceleration causality


@pytest.mark.parametrize("name,params,expected", [
    ("logcos", {"c": 1.0}, Causality.SPACELIKE),
    ("logcosh", {"c": 1.0}, Causality.TIMELIKE),
    ("logsinh", {"c": 1.0}, Causality.TIMELIKE),
    ("logparabola", {}, Causality.TIMELIKE),
    ("pn_parabola", {}, Causality.LIGHTLIKE),
    ("pn_exponential", {"k": 1.0}, Causality.LIGHTLIKE),
])
def test_acceleration_causality_named(name, params, expected):
    curve = make_named_curve(name, **params)
    lo, hi = curve.domain
    samples = np.linspace(max(lo, 0.2), min(hi, 1.4), 7)
    for s in samples:
        assert acceleration_causality(curve, s) is expected


def test_acceleration_causality_straight_line_degenerate():
    c = AnalyticCurve((lambda s: (s, 0.0, 0.0), lambda s: (1.0, 0.0, 0.0),
                       lambda s: (0.0, 0.0, 0.0), lambda s: (0.0, 0.0, 0.0)),
                      name="line")
    with pytest.raises(DegenerateCurveError):
        acceleration_causality(c, 0.3)


# --------------------------------------------------------------------------
# Frenet frames


def test_frenet_curvatures_match_closed_forms():
    cases = [
        ("logcos", {"c": 1.0}, lambda s: 1.0 / math.cosh(s), +1),
        ("logcos", {"c": 2.0}, lambda s: 2.0 / math.cosh(2 * s), +1),
        ("logcosh", {"c": 1.0}, lambda s: 1.0 / math.cos(s), -1),
        ("logsinh", {"c": 1.0}, lambda s: 1.0 / math.sinh(s), -1),
        ("logparabola", {}, lambda s: 1.0 / s, -1),
    ]
    for name, params, kappa_fn, eps in cases:
        curve = make_named_curve(name, **params)
        lo, hi = curve.domain
        for s in np.linspace(max(lo + 0.05, 0.3), min(hi - 0.05, 1.2), 9):
            fr = frenet_frame(curve, s)
            assert fr.epsilon == eps, name
            assert abs(fr.kappa - kappa_fn(s)) < 1e-5, name


def test_frenet_frame_algebra():
    curve = make_named_curve("helix3", r=1.0, h=2.0)
    for s in (-1.0, 0.2, 2.5):
        fr = frenet_frame(curve, s)
        assert abs(inner(fr.t, fr.t) - 1) < 1e-8
        assert abs(inner(fr.n, fr.n) - fr.epsilon) < 1e-8
        assert abs(inner(fr.b, fr.b) + fr.epsilon) < 1e-8
        for a, b in ((fr.t, fr.n), (fr.t, fr.b), (fr.n, fr.b)):
            assert abs(inner(a, b)) < 1e-8


def test_helix_frames_constant_over_grid():
    curve = make_named_curve("helix2", r=1.0, h=1.0)
    frames = [frenet_frame(curve, s) for s in np.linspace(-2, 2, 100)]
    kappas = [f.kappa for f in frames]
    taus = [f.tau for f in frames]
    assert max(kappas) - min(kappas) < 1e-6
    assert max(taus) - min(taus) < 1e-6
    # closed forms for this helix: kappa = r/(h^2+r^2), tau = -h/(h^2+r^2)
    assert abs(kappas[0] - 0.5) < 1e-12
    assert abs(taus[0] + 0.5) < 1e-12


def test_frenet_frame_rejects_pseudo_null():
    with pytest.raises(WrongFrameError):
        frenet_frame(make_named_curve("pn_parabola"), 0.5)


def test_frenet_tau_sign_pinned_by_frame_ode():
    # residual of the full frame system with FD field derivatives; flipping
    # the tau sign breaks it by O(|tau|)
    curve = make_named_curve("helix1", r=2.0, h=1.0)
    s = 0.4
    h = fd_step(s)
    frames = [frenet_frame(curve, s + j * h) for j in (-2, -1, 0, 1, 2)]
    fr = frames[2]

    def dfield(attr):
        vals = [getattr(f, attr) for f in frames]
        return (vals[0] - vals[4] + 8.0 * (vals[3] - vals[1])) * (1.0 / (12 * h))

    rn = dfield("n") - (fr.t * (-fr.epsilon * fr.kappa) + fr.b * fr.tau)
    rb = dfield("b") - fr.n * fr.tau
    assert math.sqrt(euclidean_sq(rn)) < 1e-5
    assert math.sqrt(euclidean_sq(rb)) < 1e-5
    rb_flipped = dfield("b") - fr.n * (-fr.tau)
    assert math.sqrt(euclidean_sq(rb_flipped)) > 0.1


# --------------------------------------------------------------------------
# pseudo-null frames


def test_pseudo_null_frame_parabola():
    curve = make_named_curve("pn_parabola", v=(0.0, 1.0, 1.0), b=(1.0, 0.0, 0.0))
    for s in (-1.0, 0.3, 2.0):
        fr = pseudo_null_frame(curve, s)
        assert math.sqrt(euclidean_sq(fr.n - MVec3(0.0, 1.0, 1.0))) < 1e-12
        assert abs(fr.kappa) < 1e-10


def test_pseudo_null_frame_exponential_recovers_k():
    for k in (1.0, 2.0, -0.5):
        curve = make_named_curve("pn_exponential", k=k)
        for s in (-0.5, 0.0, 0.8):
            fr = pseudo_null_frame(curve, s)
            assert abs(fr.kappa - k) < 1e-6


def test_pseudo_null_frame_algebra_and_orientation():
    # default constructors are oriented so det3(t, n, b) = +1
    for name, params in (("pn_parabola", {}), ("pn_exponential", {"k": 1.0})):
        curve = make_named_curve(name, **params)
        for s in (-0.7, 0.4):
            fr = pseudo_null_frame(curve, s)
            assert abs(inner(fr.t, fr.t) - 1) < 1e-8
            assert abs(inner(fr.n, fr.n)) < 1e-8
            assert abs(inner(fr.b, fr.b)) < 1e-8
            assert abs(inner(fr.t, fr.n)) < 1e-8
            assert abs(inner(fr.t, fr.b)) < 1e-8
            assert abs(inner(fr.n, fr.b) - 1) < 1e-8
            assert abs(det3(fr.t, fr.n, fr.b) - 1.0) < 1e-8
    # the reversed traversal gives det = -1 while all other identities hold
    rev = make_named_curve("pn_parabola", v=(0.0, 1.0, 1.0), b=(1.0, 0.0, 0.0))
    fr = pseudo_null_frame(rev, 0.5)
    assert abs(det3(fr.t, fr.n, fr.b) + 1.0) < 1e-8
    assert abs(inner(fr.n, fr.b) - 1) < 1e-8


def test_pseudo_null_frame_rejects_frenet_curve():
    with pytest.raises(WrongFrameError):
        pseudo_null_frame(make_named_curve("logcos", c=1.0), 0.2)


# --------------------------------------------------------------------------
# invariants and planarity


def test_curve_invariants_circular_helix():
    curve = make_named_curve("helix1", r=2.0, h=1.0)
    fr = frenet_frame(curve, 0.3)
    inv = curve_invariants(curve, 0.3)
    assert abs(inv.R) < 1e-8
    assert abs(inv.Sigma - (fr.kappa ** 2 + fr.tau ** 2)) < 1e-7


def test_curve_invariants_conserved_combination():
    curve = make_named_curve("helix1", r=2.0, h=1.0)
    vals = []
    for s in np.linspace(-1.5, 1.5, 60):
        fr = frenet_frame(curve, s)
        inv = curve_invariants(curve, s)
        vals.append(inv.Sigma / fr.tau + fr.tau)
    assert max(vals) - min(vals) < 1e-5


def test_curve_invariants_planar_error():
    with pytest.raises(PlanarCurveError):
        curve_invariants(make_named_curve("logcos", c=1.0), 0.4)


def test_planarity_residual_cases():
    samples = np.linspace(0.3, 1.2, 7)
    assert planarity_residual(make_named_curve("logcosh", c=1.0), samples) < 1e-6
    helix = make_named_curve("helix1", r=2.0, h=1.0)
    assert planarity_residual(helix, np.linspace(-1, 1, 7)) > 1e-3
    line = CallableCurve(lambda s: (s, 0.0, 0.0), domain=(-5, 5))
    assert planarity_residual(line, np.linspace(-1, 1, 5)) == 0.0
