from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from crosm import BlockParams, ComplexProjective, MetricError, Sphere, build_model, metric_from_blocks
from crosm.geometry import (
    constant_curvature_check,
    curvature,
    curvature_symmetry_check,
    d_of_1form,
    levi_civita,
    metric_connection_check,
    metric_from_gram,
    ricci,
    sectional,
    sphere_closed_form_check,
    sphere_curvature_closed_form,
    sphere_ricci_check,
    sphere_ricci_eigenvalues,
    sphere_scalar,
    xi_sectional_constant,
    xi_sectional_values,
)

S2 = build_model(Sphere(2))
S3 = build_model(Sphere(3))
CP1 = build_model(ComplexProjective(1))
CP2 = build_model(ComplexProjective(2))

positive = st.fractions(min_value=F(1, 8), max_value=4, max_denominator=12).filter(lambda x: x > 0)


def test_round_metric_n2_ricci_and_scalar():
    g = metric_from_blocks(S2, BlockParams(1, 1, 1))
    data = ricci(g)
    for i in range(3):
        for j in range(3):
            assert data.Q[i][j] == (F(1, 2) if i == j else 0)
    assert data.scalar == F(3, 2)


def test_round_metric_n2_sectional_is_quarter():
    g = metric_from_blocks(S2, BlockParams(1, 1, 1))
    for a, b in combinations(S2.labels, 2):
        assert sectional(g, S2.unit(a), S2.unit(b)) == F(1, 4)


def test_curvature_sign_gives_positive_sphere():
    g = metric_from_blocks(S3, BlockParams(1, 1, 1))
    assert sectional(g, S3.unit("X"), S3.unit("nu1")) > 0
    assert curvature(g).by_label("X", "nu1", "X", "nu1") == F(1, 4)


def test_mu_mu_component_equals_a_eps():
    g = metric_from_blocks(S3, BlockParams(F(2, 3), F(5, 2), F(1, 7)))
    assert curvature(g).by_label("mu1", "mu2", "mu1", "mu2") == F(5, 2)
    cf = sphere_curvature_closed_form(g.params, ("mu1", "mu2", "mu1", "mu2"), 3)
    assert cf.listed and cf.value == F(5, 2)


def test_unlisted_component_is_zero_by_closed_form():
    cf = sphere_curvature_closed_form(BlockParams(1, 2, 3), ("X", "mu1", "mu2", "nu1"), 3)
    assert not cf.listed and cf.value == 0
    assert cf.verdict == "zero by closed form"


def test_ricci_closed_form_first_eigenvalue():
    a0, ae, be, n = F(3), F(1, 2), F(2), 4
    rho0, _, _ = sphere_ricci_eigenvalues(BlockParams(a0, ae, be), n)
    assert rho0 == (n - 1) * (a0 ** 2 - (ae - be) ** 2) / (2 * a0 * ae * be)
    assert sphere_scalar(BlockParams(1, 1, 1), 2) == F(3, 2)


@settings(max_examples=15, deadline=None)
@given(positive, positive, positive, st.sampled_from([2, 3, 4]))
def test_sphere_closed_forms_match_brute_force(a0, ae, be, n):
    g = metric_from_blocks(build_model(Sphere(n)), BlockParams(a0, ae, be))
    assert curvature_symmetry_check(curvature(g)).passed
    assert sphere_closed_form_check(g).passed
    assert sphere_ricci_check(g).passed


@settings(max_examples=8, deadline=None)
@given(positive, positive, positive, positive, positive)
def test_cpn_curvature_symmetries(a0, ae, be, ah, bh):
    g = metric_from_blocks(CP2, BlockParams(a0, ae, be, ah, bh))
    assert curvature_symmetry_check(curvature(g)).passed
    assert metric_connection_check(levi_civita(g)).passed


def test_xi_sectional_constant_branches():
    assert xi_sectional_constant(BlockParams(3, 2, 2)) == F(3, 16)
    assert xi_sectional_constant(BlockParams(5, 2, 3)) == F(1, 5)
    assert xi_sectional_constant(BlockParams(1, 2, 3)) is None


@pytest.mark.parametrize("blocks,c", [((3, 2, 2), F(3, 16)), ((5, 2, 3), F(1, 5))])
def test_xi_sectional_values_are_constant(blocks, c):
    g = metric_from_blocks(S3, BlockParams(*blocks))
    assert set(xi_sectional_values(g)) == {c}


def test_constant_curvature_only_for_proportional_s2():
    rep = constant_curvature_check(metric_from_blocks(S2, BlockParams(3, 3, 3)))
    assert rep.passed and rep.details["c"] == F(1, 12)
    assert not constant_curvature_check(metric_from_blocks(S2, BlockParams(1, 1, 2))).passed
    assert not constant_curvature_check(metric_from_blocks(S3, BlockParams(1, 1, 1))).passed


def test_d_eta_bracket_value_on_cpn():
    k1, k2, k3 = F(2), F(-1, 3), F(5, 7)
    g = metric_from_blocks(CP2, BlockParams(1, 1, 1, 1, 1))
    eta = CP2.vec({"X": k1, "mu": k2, "nu": k3})
    d = d_of_1form(g, eta)
    assert d[CP2.index("X")][CP2.index("mu")] == k3 / 2
    assert all(d[i][i] == 0 for i in range(CP2.dim))


def test_sectional_rejects_dependent_vectors():
    g = metric_from_blocks(S2, BlockParams(1, 1, 1))
    with pytest.raises(ValueError):
        sectional(g, S2.unit("X"), tuple(2 * x for x in S2.unit("X")))


def test_metric_errors():
    with pytest.raises(MetricError):
        metric_from_blocks(S2, BlockParams(1, -1, 1))
    with pytest.raises(MetricError):
        metric_from_blocks(S2, BlockParams(1, 1, 1, a_0eps=F(1, 2)))
    with pytest.raises(MetricError):
        metric_from_blocks(CP2, BlockParams(1, 1, 1))
    with pytest.raises(MetricError) as err:
        metric_from_blocks(CP1, BlockParams(1, 1, 1, 1, 1, a_0eps=2))
    assert err.value.minor == 2
    gram = [[F(int(i == j)) for j in range(3)] for i in range(3)]
    gram[0][1] = F(1, 3)
    with pytest.raises(MetricError):
        metric_from_gram(S2, gram)


def test_float_mode_agrees_with_exact():
    ge = metric_from_blocks(S3, BlockParams(F(1, 2), 2, 3))
    gf = metric_from_blocks(S3, BlockParams(0.5, 2.0, 3.0), mode="float")
    assert not gf.exact
    assert ricci(gf).scalar == pytest.approx(float(ricci(ge).scalar), abs=1e-9)
    assert sphere_closed_form_check(gf).passed
