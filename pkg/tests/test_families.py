import math

import numpy as np
import pytest

from minksurf import (Causality, GridSpec, ParameterError, build_control,
                      build_family, build_helix_sum, build_pseudo_null_sum,
                      build_scherk_graph, build_scherk_type, build_t31, build_t32,
                      build_t34, causal_map, default_grid, inner,
                      mean_curvature_oracle, planarity_residual)
from minksurf.families import FAMILY_IDS, SCHERK_FEASIBILITY, SCHERK_TABLE


def max_closed_residual(surface, grid):
    return max(surface.sample(s, t).H_residual
               for s in grid.svalues() for t in grid.tvalues())


def max_numerator(surface, grid):
    return max(abs(surface.sample(s, t).H_numerator)
               for s in grid.svalues() for t in grid.tvalues())


def max_oracle(surface, grid):
    from minksurf import CausalityError, DomainError, RegularityError
    worst = 0.0
    for s in grid.svalues():
        for t in grid.tvalues():
            smp = surface.sample(s, t)
            if smp.causal is Causality.SPACELIKE and smp.regular:
                try:
                    worst = max(worst, abs(mean_curvature_oracle(surface, s, t)))
                except (CausalityError, RegularityError, DomainError):
                    continue
    return worst


# --------------------------------------------------------------------------
# Scherk type


@pytest.mark.parametrize("variant", ["para1", "para2", "para3"])
@pytest.mark.parametrize("theta", [0.0, 0.7])
def test_scherk_closed_form_residual(variant, theta):
    surf = build_scherk_type(variant, 1.0, theta)
    grid = default_grid(surf, ns=20, nt=20, margin=0.02)
    assert max_closed_residual(surf, grid) <= 1e-6


def test_scherk_oracle_spot():
    surf = build_scherk_type("para3", 1.0, 1.0)
    grid = default_grid(surf, ns=10, nt=10, margin=0.05)
    assert max_oracle(surf, grid) <= 1e-5


def test_scherk_generators_planar():
    for variant in ("para1", "para2", "para3"):
        surf = build_scherk_type(variant, 1.0, 0.5)
        grid = default_grid(surf, ns=10, nt=10, margin=0.02)
        assert planarity_residual(surf.alpha, grid.svalues()) < 1e-6
        assert planarity_residual(surf.beta, grid.tvalues()) < 1e-6


def test_scherk_requires_positive_c():
    with pytest.raises(ParameterError) as err:
        build_scherk_type("para1", -1.0, 0.0)
    assert "c > 0" in str(err.value)


def test_para1_theta_zero_is_plane_z0():
    surf = build_scherk_type("para1", 1.0, 0.0)
    grid = default_grid(surf, ns=15, nt=15)
    for s in grid.svalues():
        for t in grid.tvalues():
            assert abs(surf.point(s, t).z) <= 1e-12


def test_para2_theta_zero_matches_graph():
    surf = build_scherk_type("para2", 1.0, 0.0)
    grid = default_grid(surf, ns=12, nt=12)
    for s in grid.svalues():
        for t in grid.tvalues():
            p = surf.point(s, t)
            zg = math.log(math.cosh(p.x)) - math.log(math.cosh(p.y))
            assert abs(p.z - zg) <= 1e-8


def test_para3_theta_zero_matches_graph():
    surf = build_scherk_type("para3", 2.0, 0.0)
    grid = default_grid(surf, ns=12, nt=12, margin=0.05)
    for s in grid.svalues():
        for t in grid.tvalues():
            p = surf.point(s, t)
            yg = (math.log(math.sinh(2 * p.z)) - math.log(math.cos(2 * p.x))) / 2
            assert abs(p.y - yg) <= 1e-8


def test_scherk_graphs_are_maximal():
    for axis, fam in (("z", "scherk_graph_z"), ("y", "scherk_graph_y")):
        surf = build_scherk_graph(axis, 1.0)
        assert surf.family == fam
        grid = default_grid(surf, ns=15, nt=15, margin=0.02)
        assert max_closed_residual(surf, grid) <= 1e-6


def test_scherk_table_combinations():
    assert set(SCHERK_TABLE) == {"para1", "para2", "para3"}
    feasible = {pair for pair, fam in SCHERK_FEASIBILITY.items() if fam is not None}
    assert feasible == {("sech", "sech"), ("sec", "sec"), ("csch", "sech")}
    # ten unordered combinations of the four planar generator classes
    assert len(SCHERK_FEASIBILITY) == 10
    assert sum(1 for fam in SCHERK_FEASIBILITY.values() if fam is None) == 7


# --------------------------------------------------------------------------
# pseudo-null families


@pytest.mark.parametrize("theta", [0.0, 0.5])
def test_t31_residual_and_lightlike_beta(theta):
    surf = build_t31(k=1.0, m=1.0, theta=theta, a=0.0)
    grid = default_grid(surf, ns=20, nt=20, margin=0.02)
    assert max_closed_residual(surf, grid) <= 1e-5
    for t in grid.tvalues():
        dd = surf.beta.eval(t, 2)
        q = inner(dd, dd)
        scale = max(1.0, dd.x ** 2 + dd.y ** 2 + dd.z ** 2)
        assert abs(q) <= 1e-9 * scale
    assert planarity_residual(surf.alpha, grid.svalues()) < 1e-6
    assert planarity_residual(surf.beta, grid.tvalues()) < 1e-6


def test_t31_beta_unit_spacelike():
    surf = build_t31(k=1.0, m=1.0, theta=0.5)
    for t in np.linspace(-1.0, 1.0, 9):
        d = surf.beta.eval(t, 1)
        assert abs(inner(d, d) - 1.0) < 1e-12


def test_t31_pole_truncation_recorded():
    surf = build_t31(k=1.0, m=1.0, theta=0.0, a=0.0, f0=0.5, x_domain=(-2.0, 1.0))
    assert surf.notes and "truncated" in surf.notes[0]
    assert surf.s_domain[0] > -0.8  # analytic pole at log(sin 0.5) ~ -0.735
    grid = default_grid(surf, ns=12, nt=12, margin=0.02)
    assert max_closed_residual(surf, grid) <= 1e-5


@pytest.mark.parametrize("case,kwargs", [
    ("a", dict(m=1.0, b1=0.0)),
    ("a", dict(m=1.0, b1=0.5)),
    ("b", dict(k=1.0, m=1.0, theta=0.0)),
    ("b", dict(k=1.0, m=1.0, theta=0.5)),
])
def test_t32_residual_and_lightlike_beta(case, kwargs):
    surf = build_t32(case, a=0.0, **kwargs)
    grid = default_grid(surf, ns=20, nt=20, margin=0.02)
    assert max_closed_residual(surf, grid) <= 1e-5
    for t in grid.tvalues():
        dd = surf.beta.eval(t, 2)
        assert abs(inner(dd, dd)) <= 1e-9 * max(1.0, dd.x ** 2 + dd.y ** 2 + dd.z ** 2)


def test_t32a_beta_examples():
    surf = build_t32("a", m=1.0, b1=0.0)
    d = surf.beta.eval(0.0, 1)
    assert d.as_tuple() == (0.0, 1.0, 0.0)
    assert inner(d, d) == 1.0
    dd = surf.beta.eval(0.7, 2)
    assert dd.as_tuple() == (1.0, 0.0, 1.0)


def test_t32b_displayed_ode_sign_is_not_maximal():
    # with the tanh sign flipped to the displayed form the surface fails H=0;
    # regression-pins the corrected sign choice
    import minksurf.families as fam
    from minksurf.ode import AffineArgRhs, solve_scalar_ode, PlanarGraphCurve
    from minksurf import TranslationSurface
    k = m = 1.0
    theta = 0.5
    ch, sh = math.cosh(theta), math.sinh(theta)
    bad_rhs = AffineArgRhs(outer="tanh", sign=-1.0, cx=-k * sh, cf=k * ch, c0=0.0)
    sol = solve_scalar_ode(bad_rhs, 0.0, 0.3, (-1.0, 1.0))
    alpha = PlanarGraphCurve(sol, plane="xz")
    beta = build_t32("b", k=k, m=m, theta=theta).beta
    bad = TranslationSurface(alpha, beta)
    grid = GridSpec(-0.8, 0.8, -0.8, 0.8, 8, 8)
    assert max_numerator(bad, grid) > 1e-2


def test_t34_examples_closed_form_points():
    surf = build_t34(k=1.0, b=0.0, w2=1.0, w3=-1.0)
    for s, t in ((0.2, -0.3), (0.0, 0.0), (-0.7, 0.5)):
        p = surf.point(s, t)
        assert abs(p.x - (-s + t)) < 1e-14
        assert abs(p.y - (math.exp(s) + math.exp(t))) < 1e-14
        assert abs(p.z - (math.exp(s) - math.exp(t))) < 1e-14
    surf2 = build_t34(k=1.0, b=1.0, w2=0.0, w3=1.0)
    p = surf2.point(0.2, -0.3)
    # second worked example with the linear terms carrying opposite signs in
    # s and t (the sign the zero-mean-curvature condition actually forces)
    assert abs(p.x - (math.exp(-0.3) - 0.2 - 0.3)) < 1e-14
    assert abs(p.y - (math.exp(0.2) - 0.2 - 0.3)) < 1e-14
    assert abs(p.z - (math.exp(0.2) + math.exp(-0.3) - 0.2 - 0.3)) < 1e-14


@pytest.mark.parametrize("kwargs", [
    dict(b=0.0, w2=1.0, w3=-1.0),
    dict(b=1.0, w2=0.0, w3=1.0),
    dict(b=2.0, w2=-0.3, w3=0.5),
])
def test_t34_numerator_zero(kwargs):
    if "b" in kwargs and kwargs["b"] == 2.0:
        # pick w2, w3 satisfying the closure constraint for b=2:
        # b^2 (w2 - w3) + w2 + w3 = 0  =>  w2 = w3 (b^2 - 1)/(b^2 + 1)
        b = 2.0
        w3 = 1.0
        w2 = w3 * (b * b - 1) / (b * b + 1)
        kwargs = dict(b=b, w2=w2, w3=w3)
    surf = build_t34(k=1.0, **kwargs)
    grid = GridSpec(-1.0, 1.0, -1.0, 1.0, 20, 20)
    assert max_numerator(surf, grid) <= 1e-8


def test_t34_generators_unit_and_lightlike():
    surf = build_t34(k=1.0, b=1.0, w2=0.0, w3=1.0)
    for u in np.linspace(-1, 1, 7):
        for curve in (surf.alpha, surf.beta):
            d = curve.eval(u, 1)
            assert abs(inner(d, d) - 1.0) < 1e-12
            dd = curve.eval(u, 2)
            assert abs(inner(dd, dd)) < 1e-12


def test_t34_constraint_violation_named():
    with pytest.raises(ParameterError) as err:
        build_t34(k=1.0, b=0.0, w2=1.0, w3=-0.5)
    assert "b**2*(w2 - w3) + w2 + w3" in str(err.value)
    with pytest.raises(ParameterError) as err:
        build_t34(k=1.0, b=0.0, w2=1.0, w3=1.0)
    assert "w2 - w3 != 0" in str(err.value)


def test_pn_sums_numerator_zero():
    for kwargs in (dict(kappa=0.0), dict(kappa=1.0)):
        surf = build_pseudo_null_sum(**kwargs)
        grid = GridSpec(-1.0, 1.0, -1.0, 1.0, 15, 15)
        assert max_numerator(surf, grid) <= 1e-8
        # diagonal is degenerate, never an error
        smp = surf.sample(0.5, 0.5)
        assert not smp.regular


# --------------------------------------------------------------------------
# helix sums


@pytest.mark.parametrize("helix_type,r,h", [
    ("I", 2.0, 1.0), ("II", 1.0, 1.0), ("II", 1.0, 2.0), ("III", 1.0, 2.0)])
def test_helix_sum_numerator_zero(helix_type, r, h):
    surf = build_helix_sum(helix_type, r, h)
    grid = GridSpec(-2.0, 2.0, -2.0, 2.0, 20, 20)
    assert max_numerator(surf, grid) <= 1e-8


def test_helix_sum_translation_identity():
    surf = build_helix_sum("I", 2.0, 1.0)
    diffs = [surf.beta.eval(u, 0) - surf.alpha.eval(u, 0) for u in np.linspace(-2, 2, 25)]
    base = diffs[0]
    for d in diffs:
        assert math.sqrt(sum((a - b) ** 2 for a, b in zip(d.as_tuple(), base.as_tuple()))) < 1e-10


def test_helix2_sum_timelike_off_diagonal_any_h():
    # the induced metric of a type II sum satisfies EG - F^2 = 1 - F^2 with
    # F >= 1 and equality only on the diagonal, for every h; the "mixed"
    # causal pattern belongs to the type III placement (see the type III test)
    for h in (1.0, 2.0):
        surf = build_helix_sum("II", 1.0, h)
        grid = GridSpec(-4.0, 4.0, -4.0, 4.0, 21, 21)
        cmap = causal_map(surf, grid)
        assert cmap.counts["spacelike"] == 0
        assert cmap.counts["timelike"] == 21 * 21 - cmap.counts["degenerate"]


def test_helix3_sum_mixed_causal_map():
    surf = build_helix_sum("III", 1.0, 2.0)
    grid = GridSpec(-4.0, 4.0, -4.0, 4.0, 21, 21)
    cmap = causal_map(surf, grid)
    assert cmap.counts["spacelike"] > 0
    assert cmap.counts["timelike"] > 0


def test_helix_sum_validation():
    with pytest.raises(ParameterError):
        build_helix_sum("IV", 1.0, 1.0)
    with pytest.raises(ParameterError) as err:
        build_helix_sum("I", 1.0, 2.0)
    assert "r**2 > h**2 > 0" in str(err.value)


# --------------------------------------------------------------------------
# control surface and dispatch


def test_control_surface_fails_both_channels():
    surf = build_control()
    grid = default_grid(surf, ns=15, nt=15, margin=0.05)
    closed = max_closed_residual(surf, grid)
    assert closed > 1e-3
    assert max_oracle(surf, grid) > 1e-3


def test_build_family_dispatch_and_unknown():
    for fam in FAMILY_IDS:
        surf = build_family(fam)
        assert surf.family == fam
    with pytest.raises(ParameterError):
        build_family("nosuch")
    with pytest.raises(ParameterError):
        build_family("para1", nonsense=3.0)
