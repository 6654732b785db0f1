"""Acceptance criteria 1-14, one test and one printed PASS/FAIL line each."""
import json
import random
import subprocess
import sys
import time
from fractions import Fraction as F
from functools import lru_cache

from crosm import (
    BlockParams,
    ComplexProjective,
    RealProjective,
    Sphere,
    build_model,
    build_structure,
    contact_check,
    einstein_check,
    kcontact_check,
    metric_from_blocks,
    three_sasakian_check,
)
from crosm import families as fam
from crosm import suite
from crosm.algebra import invariance_check, jacobi_check
from crosm.geometry import (
    constant_curvature_check,
    ricci,
    sphere_closed_form_check,
    sphere_ricci_check,
    xi_sectional_constant,
    xi_sectional_values,
)
from crosm.lie_tables import so_algebra, su_algebra
from crosm.models import verify_bracket_tables

SUITE_START = time.perf_counter()
HALF = F(1, 2)
CPN = {n: build_model(ComplexProjective(n)) for n in (1, 2, 3)}
SPHERES = [build_model(Sphere(n)) for n in (2, 3, 4)] + [build_model(RealProjective(3))]


def _failed(reports):
    return [r.name for r in reports if not r.passed]


@lru_cache(maxsize=None)
def _family_grid_reports(n):
    model = CPN[n]
    grid = suite.family_grid(model)
    assert all(len(v) >= 20 for v in grid.values())
    return tuple(r for ps in grid.values() for r in suite.family_reports(model, ps))


def test_criterion_01_algebra_validity(criterion):
    c = criterion(1, "Jacobi and ad-invariance for so(3..7), su(2..5)")
    t0 = time.perf_counter()
    algs = [so_algebra(n + 1) for n in range(2, 7)] + [su_algebra(n + 1) for n in range(1, 5)]
    ok = all(jacobi_check(a).passed and invariance_check(a).passed for a in algs)
    secs = time.perf_counter() - t0
    c.done(ok and secs < 5, f"{len(algs)} algebras in {secs:.2f}s, limit 5s")


def test_criterion_02_multiplicities(criterion):
    c = criterion(2, "root multiplicities (m_eps, m_half)")
    got = {f"S^{n}": build_model(Sphere(n)).multiplicities for n in range(2, 7)}
    got.update({f"CP^{n}": build_model(ComplexProjective(n)).multiplicities for n in range(1, 5)})
    want = {f"S^{n}": (n - 1, 0) for n in range(2, 7)}
    want.update({f"CP^{n}": (1, 2 * n - 2) for n in range(1, 5)})
    c.done(got == want, ", ".join(f"{k}={v}" for k, v in got.items()))


def test_criterion_03_bracket_tables(criterion):
    c = criterion(3, "bracket-table identities and root inclusions")
    models = [build_model(Sphere(n)) for n in (2, 3, 4, 5)] + [build_model(RealProjective(3))]
    models += list(CPN.values())
    bad = [repr(m) for m in models if not verify_bracket_tables(m).passed]
    c.done(not bad, f"{len(models)} models" + (f", failing {bad}" if bad else ""))


def _random_blocks(rng):
    return tuple(F(rng.randint(1, 40), rng.randint(1, 12)) for _ in range(3))


def test_criterion_04_closed_forms(criterion):
    c = criterion(4, "closed-form curvature, Ricci and scalar vs brute force")
    rng = random.Random(2024)
    t0 = time.perf_counter()
    bad = []
    for model in SPHERES:
        for _ in range(100):
            g = metric_from_blocks(model, BlockParams(*_random_blocks(rng)))
            for rep in (sphere_closed_form_check(g), sphere_ricci_check(g)):
                if not (rep.passed and rep.residual == 0):
                    bad.append((repr(model), g.params.as_dict()))
    secs = time.perf_counter() - t0
    c.done(not bad and secs < 30, f"4 models x 100 metrics in {secs:.1f}s, limit 30s")


def test_criterion_05_sphere_family(criterion):
    c = criterion(5, "gc family: contact on grid, K-contact and Sasakian iff q_eps = 1")
    assert len(suite.SPHERE_GRID) >= 20
    reps = [r for m in SPHERES for r in suite.gc_grid_reports(m)]
    c.done(not _failed(reps), f"{len(suite.SPHERE_GRID)}-point grid on {len(SPHERES)} models")


def test_criterion_06_cpn_families(criterion):
    c = criterion(6, "seven CP^n families contact, catalog K-contact conditions exact")
    bad, count = [], 0
    for n, model in CPN.items():
        reps = list(_family_grid_reports(n)) + suite.table2_reports(model)
        count += len(reps)
        bad += [(repr(model), name) for name in _failed(reps)]
    nonorth = [p for p in suite.family_grid()["AI"] if p.alpha != 0]
    c.done(not bad and nonorth, f"{count} instances over n=1,2,3" + (f", failing {bad[:3]}" if bad else ""))


def test_criterion_07_three_sasakian(criterion):
    c = criterion(7, "orthogonal 3-Sasakian metric with (2X, 2nu, 2mu)")
    ok = []
    for model in CPN.values():
        g, x1, x2, x3 = fam.three_sasakian_metric(model)
        p = g.params
        shape = (p.a0, p.a_eps, p.b_eps) == (F(1, 4),) * 3 and (
            model.kind.n == 1 or (p.a_half, p.b_half) == (F(1, 8),) * 2)
        triple = (x1, x2, x3) == tuple(tuple(2 * v for v in model.unit(s)) for s in ("X", "nu", "mu"))
        ok.append(shape and triple and g.exact and three_sasakian_check(g, x1, x2, x3).passed)
    c.done(all(ok), "n=1,2,3 exact")


def test_criterion_08_sasakian_einstein(criterion):
    c = criterion(8, "Sasakian-Einstein constant 2(2n-1); g_1, g_3 off kappa=1/2 not Einstein")
    ok, notes = True, []
    for n, model in CPN.items():
        e = einstein_check(fam.sasakian_einstein_cpn(model), sasakian=True)
        ok &= e.passed and e.details["lambda"] == 2 * (2 * n - 1)
        notes.append(f"n={n} lambda={e.details['lambda']}")
        for i, probe in ((1, "mu"), (3, "X")):
            for kappa in (F(1, 3), 2):
                inst = fam.kappa_family(model, i, kappa)
                j = model.index(probe)
                ok &= not einstein_check(inst.metric).passed
                ok &= ricci(inst.metric).Ric[j][j] == n - kappa
    c.done(ok, "; ".join(notes))


def test_criterion_09_einstein_solver(criterion):
    c = criterion(9, "sphere Einstein solver, contact-Einstein metric, 200 rejections")
    reps = []
    for n in (2, 3, 4, 5):
        model = build_model(Sphere(n))
        reps += suite.einstein_solver_reports(model) + suite.contact_einstein_reports(model)
    sol = fam.einstein_solve_sphere(build_model(Sphere(4)), 1)
    ok = not _failed(reps) and sol.a_eps == F(2, 3) and sol.rejected == 200
    c.done(ok, f"n=2..5; S^4 a0=1 gives a_eps={sol.a_eps}, lambda={sol.lam}")


def test_criterion_10_sasaki_metrics(criterion):
    c = criterion(10, "Sasaki metric contact iff r=1/2; scaled metric K-contact only at r=1")
    models = SPHERES[1:] + list(CPN.values())
    reps = [r for m in models for r in suite.sasaki_metric_reports(m)]
    kc_cpn = {}
    for n, model in CPN.items():
        g = fam.sasaki_induced_metric(model, 1, scale=F(1, 4))
        s = build_structure(g, fam.standard_xi(g))
        contact_check(s)
        kc_cpn[n] = kcontact_check(s).passed
    ok = not _failed(reps) and not kc_cpn[2] and not kc_cpn[3]
    c.done(ok, "CP^1 (m_half = 0) is K-contact at r=1 like S^2; CP^2, CP^3 never")


def test_criterion_11_sectional(criterion):
    c = criterion(11, "xi-sectional constants and constant-curvature detection")
    ok = True
    s3 = build_model(Sphere(3))
    for blocks, want in (((3, 2, 2), F(3, 16)), ((F(5, 2), 1, F(3, 2)), F(2, 5))):
        g = metric_from_blocks(s3, BlockParams(*blocks))
        ok &= xi_sectional_constant(g.params) == want and set(xi_sectional_values(g)) == {want}
    s2 = build_model(Sphere(2))
    for alpha in (1, F(3, 2), 4):
        rep = constant_curvature_check(metric_from_blocks(s2, BlockParams(alpha, alpha, alpha)))
        ok &= rep.passed and rep.details["c"] == 1 / (4 * F(alpha))
    ok &= not constant_curvature_check(metric_from_blocks(s2, BlockParams(1, 2, 1))).passed
    for n in (3, 4):
        ok &= not constant_curvature_check(metric_from_blocks(build_model(Sphere(n)), BlockParams(1, 1, 1))).passed
    c.done(ok)


def test_criterion_12_cone(criterion):
    c = criterion(12, "cone almost Kaehler iff contact; non-contact witness")
    agree, total = True, 0
    for model in SPHERES:
        for k, q in suite.SPHERE_GRID:
            r = suite.classify(*fam.sphere_contact_family(model, fam.SphereFamilyParams(k, q)))
            agree &= r["cone"].passed == r["contact"].passed
            total += 1
    for n, model in CPN.items():
        for rep in _family_grid_reports(n):
            agree &= rep.details["cone"] == rep.details["contact"]
            total += 1
        for rep in suite.table2_reports(model):
            agree &= rep.details["cone"] == rep.details["contact"]
            total += 1
    wit = [r for m in SPHERES + list(CPN.values()) for r in suite.non_contact_witness(m)]
    g = metric_from_blocks(SPHERES[1], BlockParams(1, 1, 1))
    non = suite.classify(g, SPHERES[1].unit("X"))
    agree &= non["cone"].passed == non["contact"].passed == False  # noqa: E712
    c.done(agree and not _failed(wit), f"{total} grid points; witness residual {non['cone'].residual}")


def test_criterion_13_isomorphism(criterion):
    c = criterion(13, "L maps Type AI to AII; no a <-> k_eps swap for n >= 2")
    reps = [r for m in CPN.values() for r in suite.isomorphism_reports(m)]
    swaps = [r for r in reps if r.name.startswith("no_swap")]
    c.done(not _failed(reps) and len(swaps) == 2,
           "swap failures by condition: " + "; ".join(str(r.details["failed_by"]) for r in swaps))


def test_criterion_14_determinism_and_runtime(criterion):
    c = criterion(14, "full-suite reports byte-identical; total runtime < 3 min")
    same = True
    for space, n in (("sphere", 3), ("rp", 3), ("cpn", 1), ("cpn", 2)):
        cmd = [sys.executable, "-m", "crosm", "full-suite", "--space", space, "--n", str(n)]
        a = subprocess.run(cmd, capture_output=True, check=False)
        b = subprocess.run(cmd, capture_output=True, check=False)
        same &= a.returncode == 0 and a.stdout == b.stdout and json.loads(a.stdout)["result"] == "pass"
    elapsed = time.perf_counter() - SUITE_START
    c.done(same and elapsed < 180, f"acceptance module ran {elapsed:.0f}s, limit 180s")
