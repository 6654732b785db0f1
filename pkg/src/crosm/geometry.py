"""Invariant metrics on G/H and the Riemannian pipeline at the origin.

Vectors are coordinate tuples over the ordered basis of mbar.  A metric is
exact when its tolerance is None (all entries Fractions) and float otherwise.
Curvature follows R(U,V) = nabla_[U,V] - [nabla_U, nabla_V], so the round
metrics have positive sectional curvature.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from . import kernels, linalg, scalars
from .models import BLOCKS, RankOneModel, is_invariant
from .report import CheckReport, ConsistencyError, combine, residual_report


class MetricError(ValueError):
    """Invalid invariant metric input."""

    def __init__(self, message, minor=None):
        super().__init__(message)
        self.minor = minor


@dataclass(frozen=True)
class BlockParams:
    """Block coefficients of an invariant metric.

    Diagonal blocks a0 (on a), a_eps, b_eps (on m_eps, k_eps), a_half, b_half
    (on m_half, k_half); for CP^n the cross terms a_0eps = g(X, mu),
    b_0eps = g(X, nu) and c_eps = g(mu, nu).
    """

    a0: object
    a_eps: object
    b_eps: object
    a_half: object = None
    b_half: object = None
    a_0eps: object = 0
    b_0eps: object = 0
    c_eps: object = 0

    def converted(self, exact: bool) -> "BlockParams":
        conv = lambda x: None if x is None else scalars.convert(x, exact)
        return BlockParams(*(conv(getattr(self, f)) for f in self.__dataclass_fields__))

    @property
    def has_float(self) -> bool:
        return any(isinstance(getattr(self, f), float) for f in self.__dataclass_fields__)

    @property
    def is_orthogonal(self) -> bool:
        return self.a_0eps == 0 and self.b_0eps == 0 and self.c_eps == 0

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.__dataclass_fields__ if getattr(self, f) is not None}


def _zero(exact):
    return Fraction(0) if exact else 0.0


@dataclass(frozen=True, eq=False)
class InvariantMetric:
    model: RankOneModel
    gram: tuple
    params: BlockParams | None = None
    tol: float | None = None

    @property
    def exact(self) -> bool:
        return self.tol is None

    @property
    def dim(self) -> int:
        return self.model.dim

    @cached_property
    def ginv(self):
        return tuple(map(tuple, linalg.inverse([list(r) for r in self.gram], self.tol)))

    @cached_property
    def tables(self):
        """(C, H, adh) in this metric's scalar type."""
        t = self.model.tables
        if self.exact:
            return t.C, t.H, t.adh
        f = lambda x: float(x)
        C = [[[f(x) for x in v] for v in row] for row in t.C]
        H = [[[f(x) for x in v] for v in row] for row in t.H]
        adh = [[[f(x) for x in r] for r in m] for m in t.adh]
        return C, H, adh

    def vector(self, v):
        return tuple(scalars.convert(x, self.exact) for x in v)

    def inner(self, u, v):
        return linalg.bilinear(self.gram, list(u), list(v))

    def lower(self, v):
        """Covector g(v, .)."""
        return tuple(linalg.matvec([list(r) for r in self.gram], list(v)))

    def raise_(self, w):
        return tuple(linalg.matvec([list(r) for r in self.ginv], list(w)))

    def bracket(self, u, v):
        C = self.tables[0]
        n = self.dim
        out = [_zero(self.exact)] * n
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        for k, c in enumerate(C[i][j]):
                            if c:
                                out[k] += ab * c
        return tuple(out)

    def is_zero(self, x) -> bool:
        return scalars.is_zero(x, self.tol)

    def to_json(self) -> dict:
        out = {"gram": [[scalars.to_json(x) for x in r] for r in self.gram],
               "mode": "exact" if self.exact else "float"}
        if self.params is not None:
            out["blocks"] = {k: scalars.to_json(v) for k, v in self.params.as_dict().items()}
        return out


def _resolve_mode(values, mode, tol):
    if mode is None:
        mode = "float" if any(isinstance(x, float) for x in values) else scalars.default_mode()
    return scalars.tol_for(mode, tol)


def metric_from_blocks(model: RankOneModel, params: BlockParams, mode=None, tol=None) -> InvariantMetric:
    """Gram matrix on mbar from block coefficients, validated eagerly."""
    vals = [getattr(params, f) for f in params.__dataclass_fields__]
    t = _resolve_mode([v for v in vals if v is not None], mode, tol)
    exact = t is None
    try:
        p = params.converted(exact)
    except (TypeError, ValueError) as exc:
        raise MetricError(f"invalid block parameter: {exc}") from None
    s = model.block_slices
    has_half = len(s["m_half"]) > 0
    if has_half and (p.a_half is None or p.b_half is None):
        raise MetricError("a_half and b_half are required for this model")
    if model.kind.family != "cpn" and not p.is_orthogonal:
        raise MetricError("cross terms a_0eps, b_0eps, c_eps exist only for CP^n")
    diag = {"a": p.a0, "m_eps": p.a_eps, "k_eps": p.b_eps, "m_half": p.a_half, "k_half": p.b_half}
    for name in BLOCKS:
        if len(s[name]) and not diag[name] > 0:
            raise MetricError(f"block coefficient for {name} must be positive, got {diag[name]}")
    n = model.dim
    z = _zero(exact)
    G = [[z] * n for _ in range(n)]
    for name in BLOCKS:
        for i in s[name]:
            G[i][i] = diag[name]
    if model.kind.family == "cpn":
        X, MU, NU = 0, 1, 2
        G[X][MU] = G[MU][X] = p.a_0eps
        G[X][NU] = G[NU][X] = p.b_0eps
        G[MU][NU] = G[NU][MU] = p.c_eps
    return metric_from_gram(model, G, tol=t, params=p, _mode_resolved=True)


def metric_from_gram(model: RankOneModel, gram, mode=None, tol=None, params=None,
                     _mode_resolved=False) -> InvariantMetric:
    """Validate a Gram matrix on mbar: symmetric, positive definite, block shaped, ad(h)-invariant."""
    n = model.dim
    if len(gram) != n or any(len(r) != n for r in gram):
        raise MetricError(f"Gram matrix must be {n}x{n}")
    if not _mode_resolved:
        tol = _resolve_mode([x for r in gram for x in r], mode, tol)
    exact = tol is None
    G = tuple(tuple(scalars.convert(x, exact) for x in r) for r in gram)
    if not linalg.is_symmetric(G, tol):
        raise MetricError("Gram matrix is not symmetric")
    bad = linalg.positive_definite_failure(G, tol)
    if bad is not None:
        raise MetricError(f"Gram matrix is not positive definite: leading minor {bad} fails", minor=bad)
    nbar = set(model.nbar_indices) if model.kind.family == "cpn" else set()
    for i in range(n):
        for j in range(n):
            if model.block_of(i) != model.block_of(j) and not (i in nbar and j in nbar):
                if not scalars.is_zero(G[i][j], tol):
                    raise MetricError(
                        f"off-diagonal block entry ({model.labels[i]}, {model.labels[j]}) must vanish")
    metric = InvariantMetric(model, G, params, tol)
    rep = invariance_report(metric)
    if not rep.passed:
        raise MetricError(f"metric is not Ad(h)-invariant: witness {rep.witness}")
    return metric


def invariance_report(metric: InvariantMetric) -> CheckReport:
    """g([w,u],v) + g(u,[w,v]) = 0 for every h-basis w and basis pair (u, v)."""
    _, _, adh = metric.tables
    G = metric.gram
    n = metric.dim
    model = metric.model

    def gen():
        for w, A in enumerate(adh):
            for u in range(n):
                for v in range(u, n):
                    r = sum((A[k][u] * G[k][v] + G[u][k] * A[k][v] for k in range(n)), _zero(metric.exact))
                    yield (model.h_labels[w], model.labels[u], model.labels[v]), r

    return residual_report("ad_h_invariance", gen(), metric.tol, model.caveats)


# --- Levi-Civita connection ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConnectionMap:
    """alpha[u][v] = alpha(e_u, e_v) as a coordinate vector; U likewise."""

    metric: InvariantMetric
    U: tuple
    alpha: tuple

    def apply(self, u, v):
        """alpha(u, v) for coordinate vectors."""
        return _bilinear3(self.alpha, u, v, self.metric.exact)

    def apply_U(self, u, v):
        return _bilinear3(self.U, u, v, self.metric.exact)


def _bilinear3(T, u, v, exact):
    n = len(T)
    out = [_zero(exact)] * n
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    ab = a * b
                    for k, c in enumerate(T[i][j]):
                        if c:
                            out[k] += ab * c
    return tuple(out)


def _connection(metric: InvariantMetric):
    cache = metric.__dict__.setdefault("_conn", {})
    if "c" not in cache:
        C, _, _ = metric.tables
        half = Fraction(1, 2) if metric.exact else 0.5
        U, alpha = kernels.connection([list(map(list, r)) for r in C] if metric.exact else C,
                                      [list(r) for r in metric.gram], [list(r) for r in metric.ginv], half)
        freeze = lambda T: tuple(tuple(tuple(v) for v in row) for row in T)
        cache["c"] = ConnectionMap(metric, freeze(U), freeze(alpha))
    return cache["c"]


def u_map(metric: InvariantMetric) -> tuple:
    """U[u][v] solving 2 g(U(u,v), w) = g([w,u],v) + g([w,v],u).

    When block parameters are present the result is cross-checked against the
    closed-form tables; a mismatch raises ConsistencyError.
    """
    conn = _connection(metric)
    if metric.params is not None and metric.params.is_orthogonal:
        rep = u_closed_form_check(metric)
        if not rep.passed:
            raise ConsistencyError(f"U differs from its closed form at {rep.witness}")
    return conn.U


def u_closed_form(metric: InvariantMetric) -> dict:
    """Nonzero closed-form components {(i, j): vector} of U for orthogonal block metrics."""
    model, p = metric.model, metric.params
    n = model.dim
    ex = metric.exact
    a0, ae, be = p.a0, p.a_eps, p.b_eps
    out = {}

    def put(i, j, k, c):
        v = [_zero(ex)] * n
        v[k] = c
        out[(i, j)] = tuple(v)
        out[(j, i)] = tuple(v)

    s = model.block_slices
    mu, nu = list(s["m_eps"]), list(s["k_eps"])
    for j in range(len(mu)):
        put(0, mu[j], nu[j], (a0 - ae) / (2 * be))
        put(0, nu[j], mu[j], (be - a0) / (2 * ae))
        put(mu[j], nu[j], 0, (ae - be) / (2 * a0))
    if model.kind.family == "cpn" and len(s["m_half"]):
        ah, bh = p.a_half, p.b_half
        MU, NU = 1, 2
        hidx = {ja: q for q, ja in enumerate(model.half_index)}
        mi = lambda j, a: s["m_half"][hidx[(j, a % 2)]]
        ni = lambda j, a: s["k_half"][hidx[(j, a % 2)]]
        for j, a in model.half_index:
            sg = (-1) ** a
            put(0, mi(j, a), ni(j, a), (a0 - ah) / (4 * bh))
            put(0, ni(j, a), mi(j, a), (bh - a0) / (4 * ah))
            put(MU, mi(j, a), ni(j, a + 1), sg * (ah - ae) / (4 * bh))
            put(MU, ni(j, a), mi(j, a + 1), sg * (bh - ae) / (4 * ah))
            put(NU, mi(j, a), mi(j, a + 1), sg * (be - ah) / (4 * ah))
            put(NU, ni(j, a), ni(j, a + 1), sg * (bh - be) / (4 * bh))
            put(mi(j, a), ni(j, a), 0, (ah - bh) / (4 * a0))
        for j in range(1, model.kind.n):
            c = -(ah - bh) / (4 * ae)
            put(mi(j, 0), ni(j, 1), MU, c)
            put(mi(j, 1), ni(j, 0), MU, -c)
    return out


def u_closed_form_check(metric: InvariantMetric) -> CheckReport:
    """Brute-force U against the closed-form tables (all other components zero)."""
    U = _connection(metric).U
    cf = u_closed_form(metric)
    n = metric.dim
    labels = metric.model.labels
    zero = (_zero(metric.exact),) * n

    def gen():
        for i in range(n):
            for j in range(n):
                exp = cf.get((i, j), zero)
                yield (labels[i], labels[j]), max(abs(a - b) for a, b in zip(U[i][j], exp))

    return residual_report("U_closed_form", gen(), metric.tol)


def levi_civita(metric: InvariantMetric) -> ConnectionMap:
    """alpha = 1/2 [,]_mbar + U; the metric property is verified."""
    conn = _connection(metric)
    if "_conn_ok" not in metric.__dict__:
        rep = metric_connection_check(conn)
        if not rep.passed:
            raise ConsistencyError(f"connection is not metric at {rep.witness}")
        metric.__dict__["_conn_ok"] = True
    return conn


def metric_connection_check(conn: ConnectionMap) -> CheckReport:
    metric = conn.metric
    G = metric.gram
    n = metric.dim
    labels = metric.model.labels

    def gen():
        for u in range(n):
            for v in range(n):
                for w in range(v, n):
                    r = (linalg.dot(conn.alpha[u][v], G[w]) + linalg.dot(G[v], conn.alpha[u][w]))
                    yield (labels[u], labels[v], labels[w]), r

    return residual_report("metric_connection", gen(), metric.tol)


def killing_check(metric: InvariantMetric, v) -> CheckReport:
    """v (invariant) is Killing iff g(U(u,w), v) = 0 for all basis pairs."""
    v = metric.vector(v)
    if len(v) != metric.dim:
        raise ValueError("vector has wrong length")
    if not is_invariant(metric.model, v, metric.tol):
        raise ValueError("vector is not Ad(h)-invariant")
    U = u_map(metric)
    lv = metric.lower(v)
    n = metric.dim
    labels = metric.model.labels

    def gen():
        for i in range(n):
            for j in range(i, n):
                yield (labels[i], labels[j]), linalg.dot(U[i][j], lv)

    return residual_report("killing", gen(), metric.tol, metric.model.caveats)


# --- curvature ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """R4[a][b][c][d] = g(R(e_a,e_b)e_c, e_d) with R(U,V) = nabla_[U,V] - [nabla_U, nabla_V]."""

    metric: InvariantMetric
    R4: tuple
    Rop: tuple
    convention: str = "R(U,V)=nabla_[U,V]-[nabla_U,nabla_V]"

    def component(self, u, v, w, z):
        n = self.metric.dim
        tot = _zero(self.metric.exact)
        for a, b, c, d in product(range(n), repeat=4):
            x = self.R4[a][b][c][d]
            if x and u[a] and v[b] and w[c] and z[d]:
                tot += u[a] * v[b] * w[c] * z[d] * x
        return tot

    def by_label(self, a, b, c, d):
        ix = self.metric.model.index
        return self.R4[ix(a)][ix(b)][ix(c)][ix(d)]


def curvature(metric: InvariantMetric) -> CurvatureTensor:
    cache = metric.__dict__.setdefault("_curv", {})
    if "R" in cache:
        return cache["R"]
    conn = levi_civita(metric)
    C, H, adh = metric.tables
    alpha = [[list(v) for v in row] for row in conn.alpha]
    Rop = kernels.curvature_ops(C, H, adh, alpha)
    R4 = kernels.lower(Rop, [list(r) for r in metric.gram])
    freeze4 = lambda T: tuple(tuple(tuple(tuple(r) for r in m) for m in row) for row in T)
    R = CurvatureTensor(metric, freeze4(R4), freeze4(Rop))
    rep = curvature_symmetry_check(R)
    if not rep.passed:
        raise ConsistencyError(f"curvature symmetries fail at {rep.witness}")
    cache["R"] = R
    return R


def curvature_symmetry_check(R: CurvatureTensor) -> CheckReport:
    """Both antisymmetries, pair symmetry and the first Bianchi identity."""
    T = R.R4
    n = R.metric.dim
    lab = R.metric.model.labels

    def gen():
        for a, b, c, d in product(range(n), repeat=4):
            w = (lab[a], lab[b], lab[c], lab[d])
            x = T[a][b][c][d]
            yield w + ("antisym12",), x + T[b][a][c][d]
            yield w + ("antisym34",), x + T[a][b][d][c]
            yield w + ("pair",), x - T[c][d][a][b]
            yield w + ("bianchi",), x + T[b][c][a][d] + T[c][a][b][d]

    return residual_report("curvature_symmetries", gen(), R.metric.tol)


@dataclass(frozen=True, eq=False)
class RicciData:
    Ric: tuple
    Q: tuple
    scalar: object


def ricci(metric: InvariantMetric) -> RicciData:
    cache = metric.__dict__.setdefault("_ric", {})
    if "r" in cache:
        return cache["r"]
    R = curvature(metric)
    Ric = kernels.ricci([[list(map(list, m)) for m in row] for row in R.Rop])
    Ric = tuple(map(tuple, Ric))
    if not linalg.is_symmetric(Ric, metric.tol):
        raise ConsistencyError("Ricci tensor is not symmetric")
    Q = tuple(map(tuple, linalg.matmul([list(r) for r in metric.ginv], [list(r) for r in Ric])))
    s = sum((Q[i][i] for i in range(metric.dim)), _zero(metric.exact))
    cache["r"] = RicciData(Ric, Q, s)
    return cache["r"]


def sectional(metric: InvariantMetric, u, v):
    u, v = metric.vector(u), metric.vector(v)
    den = metric.inner(u, u) * metric.inner(v, v) - metric.inner(u, v) ** 2
    if metric.is_zero(den):
        raise ValueError("u and v are linearly dependent")
    return curvature(metric).component(u, v, u, v) / den


def constant_curvature_check(metric: InvariantMetric) -> CheckReport:
    """R4 = c (g(u,w)g(v,z) - g(u,z)g(v,w)) for a single c; c is reported in details."""
    R = curvature(metric).R4
    G = metric.gram
    n = metric.dim
    lab = metric.model.labels
    c = sectional(metric, metric.model.unit(lab[0]), metric.model.unit(lab[1]))

    def gen():
        for a, b, cc, d in product(range(n), repeat=4):
            exp = c * (G[a][cc] * G[b][d] - G[a][d] * G[b][cc])
            yield (lab[a], lab[b], lab[cc], lab[d]), R[a][b][cc][d] - exp

    rep = residual_report("constant_curvature", gen(), metric.tol)
    return CheckReport(rep.name, rep.passed, rep.residual, rep.witness, rep.caveats, {"c": c})


# --- sphere closed forms ------------------------------------------------------

def _sphere_params(params: BlockParams, exact=True):
    p = params.converted(exact)
    return p.a0, p.a_eps, p.b_eps


def sphere_closed_form_tensor(params: BlockParams, n: int, exact=True) -> dict:
    """Nonzero closed-form curvature components, closed under the symmetries of R.

    Keys are label 4-tuples.  Components defined twice must agree.
    """
    a0, ae, be = _sphere_params(params, exact)
    m = n - 1
    mu = [f"mu{j}" for j in range(1, m + 1)]
    nu = [f"nu{j}" for j in range(1, m + 1)]
    listed = {}
    d = lambda x, y: 1 if x == y else 0
    for j in range(m):
        listed[("X", mu[j], "X", mu[j])] = (2 * be * (a0 + ae - be) + (a0 - ae) ** 2 - be ** 2) / (4 * be)
        listed[("X", nu[j], "X", nu[j])] = (2 * ae * (a0 - ae + be) + (a0 - be) ** 2 - ae ** 2) / (4 * ae)
        for k in range(m):
            if k != j:
                listed[(mu[j], mu[k], mu[j], mu[k])] = ae
                listed[(nu[j], nu[k], nu[j], nu[k])] = be
                listed[(mu[j], mu[k], nu[j], nu[k])] = (4 * a0 * be - (a0 - ae + be) ** 2) / (4 * a0)
                listed[(mu[j], nu[k], mu[k], nu[j])] = -(a0 ** 2 - (ae - be) ** 2) / (4 * a0)
            for l in range(m):
                listed[(mu[j], nu[j], mu[k], nu[l])] = -(
                    2 * a0 * (a0 - ae - be) * d(k, l) + (a0 ** 2 - (ae - be) ** 2) * d(j, k) * d(j, l)) / (4 * a0)
    full = {}
    for (a, b, c, e), val in listed.items():
        for key, sg in (((a, b, c, e), 1), ((b, a, c, e), -1), ((a, b, e, c), -1), ((b, a, e, c), 1),
                        ((c, e, a, b), 1), ((e, c, a, b), -1), ((c, e, b, a), -1), ((e, c, b, a), 1)):
            v = sg * val
            if key in full and full[key] != v:
                raise ConsistencyError(f"closed form assigns two values to {key}")
            full[key] = v
    return {k: v for k, v in full.items() if v != 0}


@dataclass(frozen=True)
class ClosedFormValue:
    value: object
    listed: bool

    @property
    def verdict(self) -> str:
        return "listed" if self.listed else "zero by closed form"


def sphere_curvature_closed_form(params: BlockParams, labels, n: int, exact=True) -> ClosedFormValue:
    """Closed-form component R(labels) of the sphere metric (a0, a_eps, b_eps)."""
    t = sphere_closed_form_tensor(params, n, exact)
    key = tuple(labels)
    if key in t:
        return ClosedFormValue(t[key], True)
    return ClosedFormValue(_zero(exact), False)


def sphere_closed_form_check(metric: InvariantMetric) -> CheckReport:
    """Every component of the brute-force R4 equals the closed form."""
    model = metric.model
    if not model.kind.is_sphere_like:
        raise ValueError("closed form applies to S^n and RP^n only")
    t = sphere_closed_form_tensor(metric.params, model.kind.n, metric.exact)
    R = curvature(metric).R4
    lab = model.labels
    n = metric.dim
    z = _zero(metric.exact)

    def gen():
        for a, b, c, d in product(range(n), repeat=4):
            key = (lab[a], lab[b], lab[c], lab[d])
            yield key, R[a][b][c][d] - t.get(key, z)

    return residual_report("sphere_curvature_closed_form", gen(), metric.tol, model.caveats)


def sphere_ricci_eigenvalues(params: BlockParams, n: int, exact=True):
    """(rho_0, rho_eps, varrho_eps) on a, m_eps, k_eps."""
    a0, ae, be = _sphere_params(params, exact)
    den = 2 * a0 * ae * be
    rho0 = (n - 1) * (a0 ** 2 - (ae - be) ** 2) / den
    rhoe = (2 * (n - 1) * a0 * be + ae ** 2 - be ** 2 - a0 ** 2) / den
    vrhoe = (2 * (n - 1) * a0 * ae - ae ** 2 + be ** 2 - a0 ** 2) / den
    return rho0, rhoe, vrhoe


def sphere_scalar(params: BlockParams, n: int, exact=True):
    a0, ae, be = _sphere_params(params, exact)
    return (n - 1) * (2 * (n - 1) * a0 * (ae + be) - (ae - be) ** 2 - a0 ** 2) / (2 * a0 * ae * be)


def sphere_ricci_check(metric: InvariantMetric) -> CheckReport:
    """Q is diagonal with the closed-form eigenvalues; the scalar curvature matches."""
    model = metric.model
    n = model.kind.n
    rho = sphere_ricci_eigenvalues(metric.params, n, metric.exact)
    s_cf = sphere_scalar(metric.params, n, metric.exact)
    data = ricci(metric)
    sl = model.block_slices
    ev = {}
    for name, r in zip(("a", "m_eps", "k_eps"), rho):
        for i in sl[name]:
            ev[i] = r
    N = metric.dim

    def gen():
        for i in range(N):
            for j in range(N):
                exp = ev[i] if i == j else 0
                yield ("Q", model.labels[i], model.labels[j]), data.Q[i][j] - exp
        yield ("scalar",), data.scalar - s_cf

    return residual_report("sphere_ricci_closed_form", gen(), metric.tol, model.caveats)


def xi_sectional_constant(params: BlockParams, exact=True):
    """c = a0/(4 a_eps^2) when a_eps = b_eps, c = 1/(a_eps + b_eps) when a0 = a_eps + b_eps, else None."""
    a0, ae, be = _sphere_params(params, exact)
    if ae == be:
        return a0 / (4 * ae ** 2)
    if a0 == ae + be:
        return 1 / (ae + be)
    return None


def xi_sectional_values(metric: InvariantMetric) -> tuple:
    """K(X, e) for every basis vector e other than X."""
    X = metric.model.unit("X")
    return tuple(sectional(metric, X, metric.model.unit(l)) for l in metric.model.labels[1:])


# --- derivatives of invariant tensors -----------------------------------------

def nabla_vector(conn: ConnectionMap, xi) -> tuple:
    """Matrix (columns u) of u -> nabla_u xi = alpha(u, xi)."""
    n = conn.metric.dim
    cols = [conn.apply(conn.metric.model.unit(conn.metric.model.labels[u]), xi) for u in range(n)]
    return tuple(map(tuple, linalg.transpose([list(c) for c in cols])))


def nabla_endomorphism(conn: ConnectionMap, phi) -> tuple:
    """D[u][v] = (nabla_u phi) v = alpha(u, phi v) - phi alpha(u, v)."""
    n = conn.metric.dim
    A = conn.alpha
    out = []
    for u in range(n):
        row = []
        for v in range(n):
            phiv = [phi[r][v] for r in range(n)]
            t1 = _bilinear3(A, _unit(n, u, conn.metric.exact), phiv, conn.metric.exact)
            t2 = linalg.matvec([list(r) for r in phi], list(A[u][v]))
            row.append(tuple(x - y for x, y in zip(t1, t2)))
        out.append(tuple(row))
    return tuple(out)


def _unit(n, i, exact):
    v = [_zero(exact)] * n
    v[i] = Fraction(1) if exact else 1.0
    return v


def d_of_1form(metric: InvariantMetric, eta) -> tuple:
    """dη(u,v), computed as 1/2((∇_u η)v - (∇_v η)u) and as -1/2 η([u,v]_mbar).

    The two must agree exactly (or within tolerance); otherwise ConsistencyError.
    """
    conn = levi_civita(metric)
    n = metric.dim
    C, _, _ = metric.tables
    half = Fraction(1, 2) if metric.exact else 0.5
    eta = metric.vector(eta)
    d1 = [[None] * n for _ in range(n)]
    d2 = [[None] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            nu_v = -linalg.dot(eta, conn.alpha[u][v])
            nv_u = -linalg.dot(eta, conn.alpha[v][u])
            d1[u][v] = half * (nu_v - nv_u)
            d2[u][v] = -half * linalg.dot(eta, C[u][v])
            if not metric.is_zero(d1[u][v] - d2[u][v]):
                raise ConsistencyError(
                    f"d eta disagrees at ({metric.model.labels[u]}, {metric.model.labels[v]})")
    return tuple(map(tuple, d2))


def d_of_2form(metric: InvariantMetric, Phi) -> tuple:
    """3 dΦ(u,v,w) = cyclic sum of (∇_u Φ)(v,w), with (∇_u Φ)(v,w) = -Φ(α(u,v),w) - Φ(v,α(u,w))."""
    conn = levi_civita(metric)
    n = metric.dim
    A = conn.alpha
    z = _zero(metric.exact)
    third = Fraction(1, 3) if metric.exact else 1.0 / 3.0
    P = [list(r) for r in Phi]
    # L[u][v][w] = Φ(α(u,v), w), Rt[u][w][v] = Φ(v, α(u,w))
    L = [[[z] * n for _ in range(n)] for _ in range(n)]
    Rt = [[[z] * n for _ in range(n)] for _ in range(n)]
    for u in range(n):
        for v in range(n):
            row, rt = L[u][v], Rt[u][v]
            for k, a in enumerate(A[u][v]):
                if a:
                    Pk = P[k]
                    for w in range(n):
                        if Pk[w]:
                            row[w] += a * Pk[w]
                    for w in range(n):
                        if P[w][k]:
                            rt[w] += a * P[w][k]

    def nab(u, v, w):
        return -L[u][v][w] - Rt[u][w][v]

    return tuple(tuple(tuple(third * (nab(u, v, w) + nab(v, w, u) + nab(w, u, v))
                             for w in range(n)) for v in range(n)) for u in range(n))


def metric_report(metric: InvariantMetric) -> CheckReport:
    """Validity of a metric as a report (it is validated at construction)."""
    return combine("metric_valid", [invariance_report(metric)])
