import math
from fractions import Fraction as F

import pytest

from crosm import (
    ComplexProjective,
    RealProjective,
    Sphere,
    build_model,
    build_structure,
    contact_check,
    einstein_check,
    kcontact_check,
    sasakian_check,
)
from crosm import families as fam
from crosm.families import CpnFamilyParams, SphereFamilyParams
from crosm.geometry import ricci

S3 = build_model(Sphere(3))
S4 = build_model(Sphere(4))
CP1 = build_model(ComplexProjective(1))
CP2 = build_model(ComplexProjective(2))
ANGLE = ("3/5", "4/5")


def blocks(metric):
    p = metric.params
    return (p.a0, p.a_eps, p.b_eps, p.a_half, p.b_half, p.a_0eps, p.b_0eps, p.c_eps)


def classify(inst):
    s = build_structure(*inst)
    c = contact_check(s)
    if not c.passed:
        return c.passed, None, None
    return True, kcontact_check(s).passed, sasakian_check(s).passed


def test_unit_angle_forms():
    assert fam.unit_angle("3/5,4/5") == (F(3, 5), F(4, 5))
    assert fam.unit_angle((F(-4, 5), F(3, 5))) == (F(-4, 5), F(3, 5))
    c, s = fam.unit_angle(math.pi / 3)
    assert c == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fam.unit_angle((F(1, 2), F(1, 2)))


def test_gc_blocks_and_sasaki_coincidence():
    inst = fam.sphere_contact_family(S3, SphereFamilyParams(1, F(1, 2)))
    assert blocks(inst.metric)[:3] == (1, 1, F(1, 4))
    assert inst.metric.gram == fam.sasaki_induced_metric(S3, F(1, 2)).gram
    assert inst.xi == S3.unit("X")


def test_gc_with_half_blocks_on_cpn():
    inst = fam.sphere_contact_family(CP2, SphereFamilyParams(2, 3, 5))
    # (k^2, k/(2q), kq/2, k/(4qh), kqh/4)
    assert blocks(inst.metric)[:5] == (4, F(1, 3), 3, F(1, 10), F(5, 2))


def test_family_params_validation():
    with pytest.raises(ValueError):
        SphereFamilyParams(0, 1)
    with pytest.raises(ValueError):
        CpnFamilyParams("BII", angle_theta=None)
    with pytest.raises(ValueError):
        CpnFamilyParams("BI", angle_theta=("0", "1"))
    with pytest.raises(ValueError):
        CpnFamilyParams("BI", q_eps=2, angle_theta=ANGLE)
    with pytest.raises(ValueError):
        CpnFamilyParams("C", angle_theta=ANGLE, angle_phi=("-3/5", "4/5"))
    with pytest.raises(ValueError):
        CpnFamilyParams("D")


def test_type_ai_non_orthogonal_coefficients():
    inst = fam.cpn_family(CP2, CpnFamilyParams("AI", 1, 1, 1, alpha=1))
    a0, ae, be, ah, bh, a0e, b0e, ce = blocks(inst.metric)
    assert (a0, ae, be, ce, ah, bh) == (1, F(1, 2), F(5, 2), 1, F(1, 4), F(1, 4))
    assert classify(inst)[0]


def test_type_aiii_forces_half_blocks():
    inst = fam.cpn_family(CP2, CpnFamilyParams("AIII", F(2, 3), 3, 7))
    p = inst.metric.params
    assert p.a_half == p.b_half == F(1, 6)


@pytest.mark.parametrize("params", [
    CpnFamilyParams("AI", F(1, 2), 2, 3, alpha=F(-1, 3)),
    CpnFamilyParams("AII", 1, F(1, 2), 1, alpha=2),
    CpnFamilyParams("AIII", 3, 1, 1, alpha=F(1, 4)),
    CpnFamilyParams("BI", 1, F(1, 2), 4, alpha=1, angle_theta=ANGLE),
    CpnFamilyParams("BII", F(1, 2), 2, 1, alpha=F(1, 2), angle_theta=("5/13", "12/13")),
    CpnFamilyParams("BIII", 2, 1, 1, alpha=-1, angle_theta=ANGLE),
    CpnFamilyParams("C", 1, 1, 1, angle_theta=ANGLE, angle_phi=("4/5", "3/5")),
])
def test_cpn_family_is_contact(params):
    assert classify(fam.cpn_family(CP2, params))[0]


def test_type_c_both_roots_verified():
    p = CpnFamilyParams("C", 2, F(1, 2), 1, alpha=F(1, 3), angle_theta=ANGLE, angle_phi=("12/13", "5/13"))
    roots, _ = fam.type_c_roots(p)
    assert len(roots) == 2
    insts = fam.type_c_instances(CP2, p)
    assert len(insts) == 2
    for inst in insts:
        assert "beta_positive_root" in inst.caveats
        assert classify(inst)[0]


def test_type_c_boundary_is_a_double_root():
    # theta=(3/5,4/5), phi=(4/5,3/5), q=1, alpha=0: varrho = (34/25)^2, boundary at kappa = 12/25 * 34/25
    p = CpnFamilyParams("C", F(408, 625), 1, 1, 0, ANGLE, ("4/5", "3/5"))
    roots, rho = fam.type_c_roots(p)
    assert rho == F(34, 25) ** 2
    assert roots == [F(17, 6)]
    (inst,) = fam.type_c_instances(CP2, p)
    assert "type_c_double_root" in inst.caveats
    assert classify(inst)[0]


def test_type_c_infeasible():
    p = CpnFamilyParams("C", F(1, 100), 5, 1, alpha=3, angle_theta=ANGLE, angle_phi=("4/5", "3/5"))
    with pytest.raises(fam.InfeasibleParameters):
        fam.cpn_family(CP2, p)


def test_table2_rows_match_catalog_values():
    r = fam.table2_row(CP2, "BIII", kappa=F(1, 3), theta=ANGLE)
    assert blocks(r.instance.metric)[:3] == (F(1, 4), F(1, 9), F(1, 9))
    assert r.kcontact_condition is False
    c = fam.table2_row(CP2, "C", theta=ANGLE, phi=("4/5", "3/5"))
    assert blocks(c.instance.metric)[:5] == (F(1, 4),) * 3 + (F(1, 8),) * 2
    assert c.kcontact_condition is True
    with pytest.raises(ValueError):
        fam.table2_row(CP2, "BII", kappa=1)


@pytest.mark.parametrize("model", [CP1, CP2])
def test_table2_kcontact_characterised(model):
    for row in fam.table2_catalog(model):
        contact, kc, sas = classify(row.instance)
        assert contact
        assert kc is row.kcontact_condition, (row.family_type, row.instance.params)
        assert sas is kc


def test_table2_csv_header():
    rows = fam.table2_csv_rows(fam.table2_catalog(CP1)[:2])
    assert tuple(rows[0][: len(fam.TABLE2_COLUMNS)]) == fam.TABLE2_COLUMNS


def test_sasaki_induced_metric_blocks():
    assert fam.sasaki_induced_metric(S3, 1).gram == tuple(
        tuple(F(int(i == j)) for j in range(5)) for i in range(5))
    p = fam.sasaki_induced_metric(CP2, 2).params
    assert (p.a0, p.a_eps, p.b_eps, p.a_half, p.b_half) == (1, 1, 4, 1, 1)
    with pytest.raises(ValueError):
        fam.sasaki_induced_metric(S3, 0)


@pytest.mark.parametrize("model", [S3, build_model(RealProjective(3)), CP2])
def test_sasaki_metric_contact_only_at_half(model):
    for r, expected in ((F(1, 2), True), (1, False), (2, False)):
        g = fam.sasaki_induced_metric(model, r)
        s = build_structure(g, fam.standard_xi(g))
        assert contact_check(s).passed is expected


def test_scaled_sasaki_kcontact():
    for r in (F(1, 4), F(1, 2), 1, 2):
        for model, want in ((S3, r == 1), (CP2, False), (CP1, r == 1)):
            g = fam.sasaki_induced_metric(model, r, scale=F(1, 4) / F(r) ** 2)
            s = build_structure(g, fam.standard_xi(g))
            assert contact_check(s).passed
            assert kcontact_check(s).passed is want


def test_sasakian_einstein_cpn():
    for model in (CP1, CP2):
        g = fam.sasakian_einstein_cpn(model)
        rep = einstein_check(g, sasakian=True)
        n = model.kind.n
        assert rep.passed and rep.details["lambda"] == 2 * (2 * n - 1)


@pytest.mark.parametrize("i,probe", [(1, "mu"), (3, "X")])
def test_kappa_family_einstein_only_at_half(i, probe):
    n = CP2.kind.n
    j = CP2.index(probe)
    for kappa in (F(1, 3), F(1, 2), 2):
        inst = fam.kappa_family(CP2, i, kappa)
        rep = einstein_check(inst.metric)
        assert rep.passed is (kappa == F(1, 2))
        if kappa != F(1, 2):
            assert ricci(inst.metric).Ric[j][j] == n - kappa


def test_einstein_solver_values():
    sol = fam.einstein_solve_sphere(S4, 1)
    assert sol.a_eps == sol.b_eps == F(2, 3)
    assert sol.lam == F(27, 8)
    assert sol.rejected == sol.sampled == 200
    assert fam.einstein_solve_sphere(build_model(Sphere(2)), 3).a_eps == 3
    assert fam.einstein_case_analysis(4, 1)["branch_trace"]["positive_solutions"] == []


def test_contact_einstein_sphere():
    n = 4
    inst = fam.sphere_contact_family(S4, SphereFamilyParams(F(n - 1, n), 1))
    contact, kc, sas = classify(inst)
    assert contact and kc and sas
    rep = einstein_check(inst.metric)
    assert rep.passed and rep.details["lambda"] == 2 * (n - 1)


def test_isomorphism_L_between_AI_and_AII():
    for kappa, q, qh in ((1, 1, 1), (F(2, 3), F(1, 2), 3)):
        src = fam.infinitesimal_model(*fam.cpn_family(CP2, CpnFamilyParams("AI", kappa, q, qh)))
        dst = fam.infinitesimal_model(*fam.cpn_family(CP2, CpnFamilyParams("AII", kappa, q, qh)))
        assert fam.model_isomorphism_check(fam.isomorphism_L(CP2), src, dst).passed


def test_identity_isomorphism():
    im = fam.infinitesimal_model(*fam.kappa_family(CP2, 1, F(1, 2)))
    eye = [[F(int(i == j)) for j in range(CP2.dim)] for i in range(CP2.dim)]
    assert fam.model_isomorphism_check(eye, im, im).passed


def test_swap_candidates_fail():
    kappa = F(1, 2)
    src = fam.infinitesimal_model(*fam.kappa_family(CP2, 1, kappa))
    dst = fam.infinitesimal_model(*fam.kappa_family(CP2, 3, kappa))
    cands = fam.swap_candidates(CP2)
    assert len(cands) == 256
    for _, L in cands:
        assert not fam.model_isomorphism_check(L, src, dst, stop_early=True).passed
