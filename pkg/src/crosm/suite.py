"""Verification suites shared by the command line and the acceptance tests.

Every suite returns a list of CheckReports in a fixed order.
"""
from __future__ import annotations

from fractions import Fraction

from . import families as fam
from .algebra import invariance_check, jacobi_check
from .contact import (
    build_structure,
    cone_check,
    contact_check,
    einstein_check,
    kcontact_check,
    sasakian_check,
    three_sasakian_check,
)
from .geometry import (
    BlockParams,
    metric_from_blocks,
    metric_report,
    ricci,
    sphere_closed_form_check,
    sphere_ricci_check,
)
from .models import RankOneModel, build_model, verify_bracket_tables
from .report import CheckReport, combine

F = Fraction
HALF = F(1, 2)


def _named(rep: CheckReport, name: str) -> CheckReport:
    return CheckReport(name, rep.passed, rep.residual, rep.witness, rep.caveats, rep.details)


def _flag(name, ok, caveats=(), details=None, witness=()):
    return CheckReport(name, bool(ok), F(0) if ok else F(1), () if ok else tuple(witness),
                       tuple(caveats), details or {})


def classify(metric, xi) -> dict:
    """contact, kcontact, sasakian and cone reports for (xi, g)."""
    s = build_structure(metric, xi)
    out = {"contact": contact_check(s)}
    out["kcontact"] = kcontact_check(s)
    out["sasakian"] = sasakian_check(s)
    out["cone"] = cone_check(s)
    return out


def expected_multiplicities(model: RankOneModel):
    n = model.kind.n
    return (1, 2 * n - 2) if model.kind.family == "cpn" else (n - 1, 0)


def algebra_reports(model: RankOneModel) -> list:
    alg = model.algebra
    m_eps, m_half = model.m_eps.dim, model.m_half.dim
    exp = expected_multiplicities(model)
    return [
        _named(jacobi_check(alg), f"jacobi[{alg.name}]"),
        _named(invariance_check(alg), f"ad_invariance[{alg.name}]"),
        _flag("multiplicities", (m_eps, m_half) == exp,
              details={"m_eps": m_eps, "m_half": m_half, "expected": list(exp)}),
        verify_bracket_tables(model),
    ]


def _tag(p):
    return ",".join(f"{k}={v}" for k, v in p)


# --- spheres and RP^n -----------------------------------------------------------

SPHERE_GRID = [(k, q) for k in (F(1, 3), HALF, 1, 2) for q in (F(1, 3), HALF, 1, 2, 3)]


def gc_grid_reports(model: RankOneModel, grid=SPHERE_GRID) -> list:
    """Contact everywhere; K-contact, Sasakian and cone as predicted."""
    out = []
    for k, q in grid:
        inst = fam.sphere_contact_family(model, fam.SphereFamilyParams(k, q))
        c = classify(*inst)
        on_line = q == 1
        ok = (c["contact"].passed and c["kcontact"].passed == on_line
              and c["sasakian"].passed == on_line and c["cone"].passed == c["contact"].passed)
        out.append(_flag(f"gc[kappa={k},q={q}]", ok, model.caveats,
                         {k2: v.verdict for k2, v in c.items()}))
    return out


def sphere_closed_form_reports(model: RankOneModel, metrics) -> list:
    out = []
    for p in metrics:
        g = metric_from_blocks(model, BlockParams(*p), mode="exact")
        out.append(_named(sphere_closed_form_check(g), f"curvature_closed_form[{_tag(zip(('a0','a_eps','b_eps'), p))}]"))
        out.append(_named(sphere_ricci_check(g), f"ricci_closed_form[{_tag(zip(('a0','a_eps','b_eps'), p))}]"))
    return out


def einstein_solver_reports(model: RankOneModel, a0=1) -> list:
    n = model.kind.n
    sol = fam.einstein_solve_sphere(model, a0)
    expect = F(n, 2 * (n - 1)) * F(a0)
    lam_ok = sol.lam == fam.einstein_lambda_sphere(n, a0)
    ca = sol.case_analysis
    unique = ca["branch_equal"]["einstein"] and not ca["branch_trace"]["positive_solutions"]
    return [_flag(f"einstein_solver[a0={a0}]",
                  sol.a_eps == sol.b_eps == expect and lam_ok and unique and sol.rejected == sol.sampled,
                  details={"a_eps": sol.a_eps, "lambda": sol.lam, "rejected": sol.rejected,
                           "sampled": sol.sampled})]


def contact_einstein_reports(model: RankOneModel) -> list:
    n = model.kind.n
    k = F(n - 1, n)
    inst = fam.sphere_contact_family(model, fam.SphereFamilyParams(k, 1))
    c = classify(*inst)
    e = einstein_check(inst.metric, sasakian=True)
    ok = c["contact"].passed and c["sasakian"].passed and e.passed and e.details["lambda"] == 2 * (n - 1)
    return [_flag(f"contact_einstein[kappa={k}]", ok, model.caveats,
                  {"lambda": e.details["lambda"], "sasakian": c["sasakian"].verdict})]


def sasaki_metric_reports(model: RankOneModel) -> list:
    out = []
    sphere_like = model.kind.family != "cpn"
    for r in (F(1, 4), HALF, 1, 2):
        g = fam.sasaki_induced_metric(model, r)
        s = build_structure(g, fam.standard_xi(g)) if r == HALF else None
        if s is not None:
            ok = contact_check(s).passed
        else:
            xi = fam.standard_xi(g)
            try:
                ok = not contact_check(build_structure(g, xi)).passed
            except ValueError:
                ok = True
        out.append(_flag(f"sasaki_metric_contact_iff_half[r={r}]", ok, model.caveats))
        gs = fam.sasaki_induced_metric(model, r, scale=1 / (4 * r * r))
        c = classify(gs, fam.standard_xi(gs))
        # CP^1 has no half blocks and behaves like S^2
        want_k = r == 1 and (sphere_like or model.kind.n == 1)
        out.append(_flag(f"scaled_sasaki_metric[r={r}]",
                         c["contact"].passed and c["kcontact"].passed == want_k, model.caveats,
                         {k2: v.verdict for k2, v in c.items()}))
    return out


def non_contact_witness(model: RankOneModel) -> list:
    """Unit metric with xi = X: contact fails and the cone reports Phi - deta != 0."""
    g = metric_from_blocks(model, BlockParams(1, 1, 1, *((1, 1) if model.m_half.dim else ())),
                           mode="exact")
    s = build_structure(g, model.unit("X"))
    c = contact_check(s)
    co = cone_check(s)
    ok = not c.passed and not co.passed and co.witness[:1] == ("Phi-deta",)
    return [_flag("cone_non_contact_witness", ok, model.caveats,
                  {"cone_witness": list(co.witness), "cone_residual": co.residual})]


def sphere_suite(model: RankOneModel) -> list:
    out = algebra_reports(model)
    out += gc_grid_reports(model, [(k, q) for k in (HALF, 1) for q in (HALF, 1, 2)])
    out += sphere_closed_form_reports(model, [(1, 1, 1), (1, 2, 3), (F(3, 2), F(1, 3), F(5, 7))])
    out += einstein_solver_reports(model)
    out += contact_einstein_reports(model)
    out += sasaki_metric_reports(model)
    out += non_contact_witness(model)
    return out


# --- CP^n -------------------------------------------------------------------------

def table2_reports(model: RankOneModel, grid=None) -> list:
    out = []
    for row in fam.table2_catalog(model, grid):
        c = classify(row.metric, row.xi)
        ok = (c["contact"].passed and c["kcontact"].passed == row.kcontact_condition
              and (not c["kcontact"].passed or c["sasakian"].passed)
              and c["cone"].passed == c["contact"].passed)
        p = row.instance.params
        tag = ",".join(f"{k}={v}" for k, v in p.items() if k != "type" and not isinstance(v, tuple))
        for key in ("theta", "phi"):
            if key in p:
                tag += f",{key}=({p[key][0]},{p[key][1]})"
        out.append(_flag(f"table2[{row.family_type};{tag}]", ok, model.caveats,
                         {"condition": row.kcontact_condition, **{k2: v.verdict for k2, v in c.items()}}))
    return out


FAMILY_SAMPLES = [
    fam.CpnFamilyParams("AI", kappa=F(2, 3), q_eps=HALF, q_half=3, alpha=1),
    fam.CpnFamilyParams("AII", kappa=F(2, 3), q_eps=HALF, q_half=3, alpha=F(-1, 2)),
    fam.CpnFamilyParams("AIII", kappa=F(2, 3), q_eps=2, alpha=F(1, 3)),
    fam.CpnFamilyParams("BI", kappa=F(2, 3), q_eps=1, q_half=2, alpha=F(1, 3), angle_theta=("3/5", "4/5")),
    fam.CpnFamilyParams("BII", kappa=F(2, 3), q_eps=2, alpha=F(1, 3), angle_theta=("3/5", "4/5")),
    fam.CpnFamilyParams("BIII", kappa=F(2, 3), q_eps=HALF, alpha=F(1, 3), angle_theta=("3/5", "-4/5")),
    fam.CpnFamilyParams("C", kappa=3, q_eps=HALF, alpha=F(1, 3), angle_theta=("3/5", "4/5"),
                        angle_phi=("12/13", "5/13"), root=0),
    fam.CpnFamilyParams("C", kappa=3, q_eps=HALF, alpha=F(1, 3), angle_theta=("3/5", "4/5"),
                        angle_phi=("12/13", "5/13"), root=1),
]


_THETAS = (("3/5", "4/5"), ("-5/13", "12/13"))
_PHIS = (("4/5", "3/5"), ("12/13", "-5/13"))


def family_grid(model: RankOneModel | None = None):
    """Admissible parameter points per type, at least 20 each; alpha != 0 included.

    Type C points whose quadratic has no positive root are dropped, and so are
    float instances flagged ill_conditioned on ``model`` when one is given.
    """
    P = fam.CpnFamilyParams
    grid = {}
    for t in ("AI", "AII", "AIII"):
        grid[t] = [P(t, kappa=k, q_eps=q, q_half=qh, alpha=a)
                   for k in (F(1, 3), 1, 2) for q in (HALF, 2) for qh, a in ((1, 0), (3, 1), (HALF, F(-1, 2)))
                   ][:18] + [P(t, kappa=HALF, q_eps=1, q_half=1, alpha=a) for a in (0, 1, F(2, 5))]
    for t in ("BI", "BII", "BIII"):
        grid[t] = [P(t, kappa=k, q_eps=q, q_half=qh, alpha=a, angle_theta=th)
                   for k in (F(1, 3), HALF, 2) for th in _THETAS for q, qh in ((HALF, 1), (1, 3))
                   for a in (0, F(1, 3))]
    grid["C"] = []
    for k in (1, 3):
        for th in _THETAS:
            for ph in _PHIS:
                for q in (HALF, 1):
                    for a in (0, F(1, 3)):
                        base = P("C", kappa=k, q_eps=q, alpha=a, angle_theta=th, angle_phi=ph)
                        try:
                            roots, _ = fam.type_c_roots(base)
                        except fam.InfeasibleParameters:
                            continue
                        for r in range(len(roots)):
                            grid["C"].append(P("C", kappa=k, q_eps=q, alpha=a, angle_theta=th,
                                               angle_phi=ph, root=r))
    if model is not None:
        grid = {t: [p for p in ps if "ill_conditioned" not in fam.cpn_family(model, p).caveats]
                for t, ps in grid.items()}
    return grid


def family_reports(model: RankOneModel, samples=FAMILY_SAMPLES) -> list:
    out = []
    for p in samples:
        inst = fam.cpn_family(model, p)
        c = classify(*inst)
        ok = c["contact"].passed and c["cone"].passed
        tag = f"{p.family_type};kappa={p.kappa},q_eps={p.q_eps},alpha={p.alpha}"
        if p.family_type == "C":
            tag += f",root={p.root}"
        out.append(_flag(f"family[{tag}]", ok, model.caveats + inst.caveats,
                         {"mode": "exact" if inst.metric.exact else "float",
                          **{k2: v.verdict for k2, v in c.items()}}))
    return out


def kappa_family_reports(model: RankOneModel, kappas=(F(1, 3), HALF, 1)) -> list:
    """g_i^kappa are Sasakian; Einstein only at kappa = 1/2 with Ric(xi-dual block) = n - kappa."""
    n = model.kind.n
    out = []
    probe = {1: "mu", 2: "X", 3: "X"}
    for i in (1, 2, 3):
        for k in kappas:
            metric, xi = fam.kappa_family(model, i, k)
            c = classify(metric, xi)
            e = einstein_check(metric, sasakian=c["sasakian"].passed)
            j = model.index(probe[i])
            ric = ricci(metric).Ric[j][j]
            ok = c["sasakian"].passed and c["kcontact"].passed and e.passed == (k == HALF)
            if k != HALF:
                ok = ok and ric == n - k
            else:
                ok = ok and e.details["lambda"] == 2 * (2 * n - 1)
            out.append(_flag(f"g{i}[kappa={k}]", ok, model.caveats,
                             {"einstein": e.verdict, f"ric_{probe[i]}": ric}))
    return out


def three_sasakian_reports(model: RankOneModel) -> list:
    n = model.kind.n
    g, x1, x2, x3 = fam.three_sasakian_metric(model)
    r = three_sasakian_check(g, x1, x2, x3)
    e = einstein_check(g, sasakian=True)
    bad = three_sasakian_check(g, x1, x3, x2)
    return [
        r,
        _flag("sasakian_einstein_constant", e.passed and e.details["lambda"] == 2 * (2 * n - 1),
              model.caveats, {"lambda": e.details["lambda"]}),
        _flag("three_sasakian_orientation_flip_fails", not bad.passed, model.caveats),
    ]


def isomorphism_reports(model: RankOneModel, grid=((1, 1, 1), (F(2, 3), HALF, 3), (2, 3, F(1, 5)))) -> list:
    out = []
    L = fam.isomorphism_L(model)
    for k, q, qh in grid:
        a = fam.cpn_family(model, fam.CpnFamilyParams("AI", kappa=k, q_eps=q, q_half=qh))
        b = fam.cpn_family(model, fam.CpnFamilyParams("AII", kappa=k, q_eps=q, q_half=qh))
        rep = fam.model_isomorphism_check(L, fam.infinitesimal_model(*a), fam.infinitesimal_model(*b))
        out.append(_named(rep, f"isomorphism_AI_AII[kappa={k},q_eps={q},q_half={qh}]"))
    if model.kind.n >= 2:
        out.append(swap_report(model, HALF))
    return out


def swap_report(model: RankOneModel, kappa) -> CheckReport:
    src = fam.infinitesimal_model(*fam.kappa_family(model, 1, kappa))
    dst = fam.infinitesimal_model(*fam.kappa_family(model, 3, kappa))
    cands = fam.swap_candidates(model)
    failed = {}
    passing = []
    for desc, L in cands:
        r = fam.model_isomorphism_check(L, src, dst, stop_early=True)
        if r.passed:
            passing.append(desc)
        else:
            key = r.details["failed"][0]
            failed[key] = failed.get(key, 0) + 1
    return _flag(f"no_swap_isomorphism[kappa={kappa}]", not passing, model.caveats,
                 {"candidates": len(cands), "failed_by": failed})


def cpn_suite(model: RankOneModel) -> list:
    out = algebra_reports(model)
    out += table2_reports(model)
    out += family_reports(model)
    out += kappa_family_reports(model)
    out += three_sasakian_reports(model)
    out += isomorphism_reports(model)
    out += sasaki_metric_reports(model)
    out += non_contact_witness(model)
    return out


def full_suite(model: RankOneModel) -> list:
    if model.kind.family == "cpn":
        return cpn_suite(model)
    return sphere_suite(model)


def overall(reports, name="full_suite") -> CheckReport:
    return combine(name, reports)


__all__ = [
    "classify", "full_suite", "overall", "algebra_reports", "gc_grid_reports", "table2_reports",
    "family_reports", "family_grid", "kappa_family_reports", "three_sasakian_reports", "isomorphism_reports",
    "swap_report", "einstein_solver_reports", "contact_einstein_reports",
    "sasaki_metric_reports", "non_contact_witness", "sphere_closed_form_reports",
    "build_model", "metric_report",
]
