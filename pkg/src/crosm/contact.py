"""Almost contact structures (xi, eta, phi, Phi) on mbar and their checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg, scalars
from .geometry import (
    InvariantMetric,
    d_of_1form,
    d_of_2form,
    killing_check,
    levi_civita,
    nabla_endomorphism,
    nabla_vector,
    ricci,
)
from .models import is_invariant
from .report import CheckReport, ConsistencyError, OrderingError, combine, residual_report

CONTACT = "contact"


@dataclass(frozen=True, eq=False)
class AlmostContactStructure:
    """xi, eta = g(xi, .), dη, phi with g(u, phi v) = dη(u, v), and Phi = g(., phi .)."""

    metric: InvariantMetric
    xi: tuple
    eta: tuple
    d_eta: tuple
    phi: tuple
    Phi: tuple
    _state: dict = field(default_factory=dict, repr=False)

    @property
    def tol(self):
        return self.metric.tol

    @property
    def labels(self):
        return self.metric.model.labels

    def apply_phi(self, v):
        return tuple(linalg.matvec([list(r) for r in self.phi], list(v)))

    def to_json(self) -> dict:
        return {"xi": [scalars.to_json(x) for x in self.xi],
                "phi": [[scalars.to_json(x) for x in r] for r in self.phi]}


def build_structure(metric: InvariantMetric, xi) -> AlmostContactStructure:
    xi = metric.vector(xi)
    if len(xi) != metric.dim:
        raise ValueError("characteristic field has wrong length")
    if not is_invariant(metric.model, xi, metric.tol):
        raise ValueError("characteristic field is not Ad(h)-invariant")
    if not metric.is_zero(metric.inner(xi, xi) - 1):
        raise ValueError("characteristic field not unit")
    eta = metric.lower(xi)
    D = d_of_1form(metric, eta)
    phi = linalg.matmul([list(r) for r in metric.ginv], [list(r) for r in D])
    phi = tuple(map(tuple, phi))
    Phi = tuple(map(tuple, linalg.matmul([list(r) for r in metric.gram], [list(r) for r in phi])))
    return AlmostContactStructure(metric, xi, eta, D, phi, Phi)


def _id(n, exact):
    return linalg.identity(n, exact)


def contact_check(s: AlmostContactStructure) -> CheckReport:
    """phi^2 = -I + eta (x) xi and g(phi u, phi v) = g(u,v) - eta(u) eta(v); dη = Phi by construction."""
    m = s.metric
    n = m.dim
    lab = s.labels
    phi = [list(r) for r in s.phi]
    P2 = linalg.matmul(phi, phi)
    I = _id(n, m.exact)
    G = m.gram
    gp = linalg.matmul(linalg.matmul(linalg.transpose(phi), [list(r) for r in G]), phi)

    def gen():
        for r, c in product(range(n), repeat=2):
            yield ("phi^2", lab[r], lab[c]), P2[r][c] - (-I[r][c] + s.xi[r] * s.eta[c])
        for u, v in product(range(n), repeat=2):
            yield ("g(phi,phi)", lab[u], lab[v]), gp[u][v] - (G[u][v] - s.eta[u] * s.eta[v])
        for u, v in product(range(n), repeat=2):
            yield ("Phi-deta", lab[u], lab[v]), s.Phi[u][v] - s.d_eta[u][v]

    rep = residual_report("contact", gen(), m.tol, m.model.caveats)
    s._state[CONTACT] = rep.passed
    return rep


def _require_contact(s, name):
    if CONTACT not in s._state:
        raise OrderingError(f"{name} requires contact_check to run first")
    if not s._state[CONTACT]:
        return CheckReport(name, False, Fraction(0) if s.tol is None else 0.0,
                           ("contact_check failed",), s.metric.model.caveats)
    return None


def kcontact_check(s: AlmostContactStructure) -> CheckReport:
    """xi is Killing; when it is, nabla_u xi = -phi u must hold as well."""
    early = _require_contact(s, "kcontact")
    if early is not None:
        return early
    m = s.metric
    rep = killing_check(m, s.xi)
    conn = levi_civita(m)
    N = nabla_vector(conn, s.xi)
    n = m.dim
    lab = s.labels
    cons = residual_report(
        "nabla_xi=-phi",
        (((lab[r], lab[u]), N[r][u] + s.phi[r][u]) for r in range(n) for u in range(n)), m.tol)
    if rep.passed and not cons.passed:
        raise ConsistencyError(f"xi is Killing but nabla xi != -phi at {cons.witness}")
    return CheckReport("kcontact", rep.passed, rep.residual, rep.witness, rep.caveats,
                       {"nabla_xi_equals_minus_phi": cons.passed})


def nijenhuis(s: AlmostContactStructure) -> tuple:
    """N(u,v) = phi^2[u,v] + [phi u, phi v] - phi[phi u, v] - phi[u, phi v] + 2 dη(u,v) xi
    on basis pairs, with mbar-projected brackets."""
    m = s.metric
    n = m.dim
    phi = [list(r) for r in s.phi]
    P2 = linalg.matmul(phi, phi)
    cols = [tuple(phi[r][c] for r in range(n)) for c in range(n)]
    br = m.bracket
    unit = lambda i: tuple(1 if k == i else 0 for k in range(n))
    out = []
    for u in range(n):
        row = []
        for v in range(n):
            eu, ev = unit(u), unit(v)
            t = linalg.matvec(P2, list(br(eu, ev)))
            t = [a + b for a, b in zip(t, br(cols[u], cols[v]))]
            t = [a - b for a, b in zip(t, linalg.matvec(phi, list(br(cols[u], ev))))]
            t = [a - b for a, b in zip(t, linalg.matvec(phi, list(br(eu, cols[v]))))]
            t = [a + 2 * s.d_eta[u][v] * x for a, x in zip(t, s.xi)]
            row.append(tuple(t))
        out.append(tuple(row))
    return tuple(out)


def sasakian_check(s: AlmostContactStructure) -> CheckReport:
    """Normality (N == 0) with (nabla_u phi) v = g(u,v) xi - eta(v) u as co-oracle."""
    early = _require_contact(s, "sasakian")
    if early is not None:
        return early
    m = s.metric
    n = m.dim
    lab = s.labels
    N = nijenhuis(s)
    nrep = residual_report(
        "nijenhuis",
        (((lab[u], lab[v], lab[k]), N[u][v][k]) for u in range(n) for v in range(n) for k in range(n)),
        m.tol, m.model.caveats)
    D = nabla_endomorphism(levi_civita(m), s.phi)
    G = m.gram

    def gen():
        for u, v in product(range(n), repeat=2):
            for k in range(n):
                exp = G[u][v] * s.xi[k] - s.eta[v] * (1 if k == u else 0)
                yield (lab[u], lab[v], lab[k]), D[u][v][k] - exp

    crep = residual_report("nabla_phi", gen(), m.tol)
    if nrep.passed != crep.passed:
        raise ConsistencyError(
            f"normality ({nrep.verdict}) and the nabla phi characterization ({crep.verdict}) disagree")
    return CheckReport("sasakian", nrep.passed, nrep.residual, nrep.witness, nrep.caveats,
                       {"nabla_phi_residual": crep.residual})


def three_sasakian_check(metric: InvariantMetric, xi1, xi2, xi3) -> CheckReport:
    xis = [metric.vector(x) for x in (xi1, xi2, xi3)]
    n = metric.dim
    items = []
    for i in range(3):
        for j in range(3):
            items.append((("g", i + 1, j + 1), metric.inner(xis[i], xis[j]) - (1 if i == j else 0)))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        b = metric.bracket(xis[i], xis[j])
        r = max(abs(x - 2 * y) for x, y in zip(b, xis[k]))
        items.append((("bracket", i + 1, j + 1), r))
    reports = [residual_report("3sasakian_frame", items, metric.tol)]
    for i, xi in enumerate(xis):
        try:
            s = build_structure(metric, xi)
        except ValueError as exc:
            reports.append(CheckReport(f"sasakian[xi{i + 1}]", False, Fraction(1), (str(exc),)))
            continue
        c = contact_check(s)
        reports.append(CheckReport(f"contact[xi{i + 1}]", c.passed, c.residual, c.witness))
        sa = sasakian_check(s)
        reports.append(CheckReport(f"sasakian[xi{i + 1}]", sa.passed, sa.residual, sa.witness))
    del n
    return combine("three_sasakian", reports, metric.model.caveats)


def einstein_check(metric: InvariantMetric, sasakian: bool = False) -> CheckReport:
    """Q = lambda I; lambda is reported in details.  With ``sasakian`` set, a
    passing metric must have lambda = dim(mbar) - 1."""
    data = ricci(metric)
    Q = data.Q
    n = metric.dim
    lab = metric.model.labels
    lam = Q[0][0]
    rep = residual_report(
        "einstein",
        (((lab[i], lab[j]), Q[i][j] - (lam if i == j else 0)) for i in range(n) for j in range(n)),
        metric.tol, metric.model.caveats)
    if rep.passed and sasakian and not metric.is_zero(lam - (n - 1)):
        raise ConsistencyError(f"Sasakian-Einstein constant {lam} differs from {n - 1}")
    details = {"lambda": lam if rep.passed else None, "ricci_diagonal": [Q[i][i] for i in range(n)]}
    return CheckReport(rep.name, rep.passed, rep.residual, rep.witness, rep.caveats, details)


# --- metric cone ----------------------------------------------------------------

def _compatible_phi(s: AlmostContactStructure):
    """phi_c = phi (-phi^2 restricted to xi-perp)^(-1/2), the compatible almost
    contact structure with the same (xi, eta, g).

    Returns (phi_c, tol); exact when -phi^2 is a perfect rational square times
    the projection onto xi-perp, float otherwise.  None when dη is degenerate
    on xi-perp.
    """
    m = s.metric
    n = m.dim
    phi = [list(r) for r in s.phi]
    P2 = linalg.matmul(phi, phi)
    proj = [[(1 if r == c else 0) - s.xi[r] * s.eta[c] for c in range(n)] for r in range(n)]
    S = [[-x for x in row] for row in P2]
    if m.exact:
        c = S[1][1] if n > 1 else Fraction(0)
        if all(S[r][k] == c * proj[r][k] for r in range(n) for k in range(n)) and c > 0:
            root = scalars.exact_sqrt(c)
            if root is not None:
                return [[x / root for x in row] for row in phi], None
    import numpy as np

    G = np.array([[float(x) for x in r] for r in m.gram])
    L = np.linalg.cholesky(G)
    A = np.array([[float(x) for x in r] for r in phi])
    Ao = L.T @ A @ np.linalg.inv(L.T)  # skew in an orthonormal frame
    So = -Ao @ Ao
    w, V = np.linalg.eigh((So + So.T) / 2)
    xo = L.T @ np.array([float(x) for x in s.xi])
    tol = m.tol if m.tol is not None else scalars.DEFAULT_TOL
    inv_sqrt = np.zeros_like(So)
    for k in range(n):
        v = V[:, k]
        if abs(v @ xo) > 0.5:
            continue  # the xi direction
        if w[k] <= tol:
            return None, tol
        inv_sqrt += np.outer(v, v) / np.sqrt(w[k])
    Pc = Ao @ inv_sqrt
    back = np.linalg.inv(L.T) @ Pc @ L.T
    return back.tolist(), tol


def cone_check(s: AlmostContactStructure) -> CheckReport:
    """Almost Kähler test of the cone at r = 1 with gbar = g + dr^2 and
    J(u, l d/dr) = (phi_c u - l xi, eta(u) d/dr); dF = 0 is evaluated as
    Phi_c = dη and dPhi_c = 0."""
    m = s.metric
    n = m.dim
    lab = tuple(s.labels) + ("d/dr",)
    phic, tol = _compatible_phi(s)
    if phic is None:
        return CheckReport("cone", False, 0.0 if tol is not None else Fraction(0),
                           ("deta_degenerate_on_xi_perp",), m.model.caveats)
    exact = tol is None
    cv = lambda x: scalars.convert(x, exact)
    N = n + 1
    J = [[cv(0)] * N for _ in range(N)]
    for r in range(n):
        for c in range(n):
            J[r][c] = cv(phic[r][c])
        J[r][n] = cv(-s.xi[r])
    for c in range(n):
        J[n][c] = cv(s.eta[c])
    gb = [[cv(0)] * N for _ in range(N)]
    for r in range(n):
        for c in range(n):
            gb[r][c] = cv(m.gram[r][c])
    gb[n][n] = cv(1)
    J2 = linalg.matmul(J, J)
    gJ = linalg.matmul(linalg.matmul(linalg.transpose(J), gb), J)
    Phic = linalg.matmul([[cv(x) for x in r] for r in m.gram], [r[:n] for r in J[:n]])
    if exact:
        dPhi = d_of_2form(m, Phic)
    else:
        from .geometry import metric_from_gram

        mf = metric_from_gram(m.model, [[float(x) for x in r] for r in m.gram], mode="float", tol=tol)
        dPhi = d_of_2form(mf, Phic)
    deta = [[cv(x) for x in r] for r in s.d_eta]

    def gen():
        for r, c in product(range(N), repeat=2):
            yield ("J^2", lab[r], lab[c]), J2[r][c] + (1 if r == c else 0)
        for r, c in product(range(N), repeat=2):
            yield ("gbar(J,J)", lab[r], lab[c]), gJ[r][c] - gb[r][c]
        for r, c in product(range(n), repeat=2):
            yield ("Phi-deta", lab[r], lab[c]), Phic[r][c] - deta[r][c]
        for u, v, w in product(range(n), repeat=3):
            yield ("dPhi", lab[u], lab[v], lab[w]), dPhi[u][v][w]

    return residual_report("cone", gen(), tol, m.model.caveats)


def cone_J(s: AlmostContactStructure, u, lam):
    """J(u, lam d/dr) at r = 1 as (vector, d/dr coefficient), using phi_c."""
    phic, tol = _compatible_phi(s)
    if phic is None:
        raise ValueError("dη is degenerate on xi-perp")
    v = linalg.matvec(phic, list(u))
    return tuple(a - lam * x for a, x in zip(v, s.xi)), linalg.dot(s.eta, list(u))
