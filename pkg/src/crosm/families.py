"""Metric families with contact structures, the Einstein solver, the orthogonal catalog and
infinitesimal-model isomorphisms."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg, scalars
from .contact import build_structure, einstein_check
from .geometry import (
    BlockParams,
    InvariantMetric,
    metric_from_blocks,
    sphere_ricci_eigenvalues,
)
from .models import RankOneModel
from .report import CheckReport, residual_report

HALF = Fraction(1, 2)
CPN_TYPES = ("AI", "AII", "AIII", "BI", "BII", "BIII", "C")


class InfeasibleParameters(ValueError):
    """No metric exists for the requested family parameters."""


class _NeedFloat(Exception):
    pass


# --- parameter records ----------------------------------------------------------

def unit_angle(value):
    """(cos, sin) from an exact pair "c,s" / (c, s) or a float angle in radians."""
    if isinstance(value, str):
        value = value.strip()
        if "," in value:
            value = tuple(part.strip() for part in value.split(","))
        else:
            value = float(value)
    if isinstance(value, (tuple, list)):
        if len(value) != 2:
            raise ValueError("angle pair must have two entries")
        c, s = (scalars.parse_scalar(v) if isinstance(v, str) else v for v in value)
        if isinstance(c, float) or isinstance(s, float):
            c, s = float(c), float(s)
            if abs(c * c + s * s - 1) > 1e-9:
                raise ValueError("angle pair is not on the unit circle")
        else:
            c, s = Fraction(c), Fraction(s)
            if c * c + s * s != 1:
                raise ValueError("angle pair is not on the unit circle")
        return c, s
    t = float(value)
    return math.cos(t), math.sin(t)


@dataclass(frozen=True)
class SphereFamilyParams:
    kappa: object = 1
    q_eps: object = 1
    q_half: object = 1
    sign: int = 1

    def __post_init__(self):
        for name in ("kappa", "q_eps", "q_half"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class CpnFamilyParams:
    family_type: str
    kappa: object = 1
    q_eps: object = 1
    q_half: object = 1
    alpha: object = 0
    angle_theta: object = None
    angle_phi: object = None
    sign: int = 1
    root: int = 0

    def __post_init__(self):
        if self.family_type not in CPN_TYPES:
            raise ValueError(f"unknown family type {self.family_type!r}")
        for name in ("kappa", "q_eps", "q_half"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.root not in (0, 1):
            raise ValueError("root must be 0 or 1")
        t = self.family_type
        if t[0] in "BC":
            if self.angle_theta is None:
                raise ValueError(f"type {t} needs theta")
            c, s = self.theta
            if _near_zero(c) or _near_zero(s):
                raise ValueError("theta must avoid multiples of pi/2")
        if t == "C":
            if self.angle_phi is None:
                raise ValueError("type C needs phi")
            c, s = self.phi
            if not c > 0 or _near_zero(c) or _near_zero(s):
                raise ValueError("phi must lie in ]-pi/2, pi/2[ without 0")
        if t == "BI":
            s = self.theta[1]
            if not self.q_eps * s * s < 1:
                raise ValueError("type BI needs q_eps < 1/sin^2(theta)")

    @property
    def theta(self):
        return unit_angle(self.angle_theta)

    @property
    def phi(self):
        return unit_angle(self.angle_phi)

    def as_dict(self):
        out = {"type": self.family_type, "kappa": self.kappa, "q_eps": self.q_eps,
               "q_half": self.q_half, "alpha": self.alpha}
        if self.angle_theta is not None:
            out["theta"] = self.theta
        if self.angle_phi is not None:
            out["phi"] = self.phi
        if self.family_type == "C":
            out["root"] = self.root
        return out


def _near_zero(x):
    return x == 0 or (isinstance(x, float) and abs(x) < 1e-12)


@dataclass(frozen=True, eq=False)
class FamilyInstance:
    """A metric with its characteristic field.  Unpacks as (metric, xi)."""

    family: str
    metric: InvariantMetric
    xi: tuple
    params: dict
    caveats: tuple = ()
    notes: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.metric, self.xi))


# --- numerics helpers ------------------------------------------------------------

def _num(x, exact):
    if exact:
        if isinstance(x, float):
            raise _NeedFloat
        return Fraction(x)
    return float(x)


def _sqrt(x, exact):
    if exact:
        r = scalars.exact_sqrt(x)
        if r is None:
            raise _NeedFloat
        return r
    if x < 0:
        if x > -1e-12:
            return 0.0
        raise ValueError("negative radicand")
    return math.sqrt(x)


def _sgn(x):
    return 1 if x > 0 else -1


def _both_modes(fn):
    """Run ``fn(exact)`` exactly; fall back to floats on irrational values."""
    try:
        return fn(True)
    except _NeedFloat:
        return fn(False)


def _assemble(model, family, blocks, xi_coords, params, caveats=(), notes=None, exact=True,
              tol=None):
    mode = "exact" if exact else "float"
    metric = metric_from_blocks(model, BlockParams(**blocks), mode=mode, tol=tol)
    xi = model.vec({k: v for k, v in xi_coords.items() if v != 0}) if xi_coords else None
    xi = metric.vector(xi)
    caveats = tuple(caveats)
    if not exact and gram_condition(metric) > ILL_CONDITIONED:
        caveats += ("ill_conditioned",)
    return FamilyInstance(family, metric, xi, params, caveats, dict(notes or {}))


# float residuals of order cond(G) * 1e-16 reach the default tolerance 1e-9 near here
ILL_CONDITIONED = 1e6


def gram_condition(metric: InvariantMetric) -> float:
    """2-norm condition number of the Gram matrix."""
    return float(np.linalg.cond(np.array(metric.gram, dtype=float)))


# --- generic sphere family -------------------------------------------------------------

def sphere_contact_family(model: RankOneModel, params: SphereFamilyParams, tol=None):
    """Blocks (k^2, k/(2q), k q/2, k/(4 q_half), k q_half/4) with xi = +-X/k."""

    def build(exact):
        k, q, qh = (_num(getattr(params, f), exact) for f in ("kappa", "q_eps", "q_half"))
        blocks = dict(a0=k * k, a_eps=k / (2 * q), b_eps=k * q / 2)
        if model.kind.family == "cpn" and model.kind.n > 1:
            blocks.update(a_half=k / (4 * qh), b_half=k * qh / 4)
        return _assemble(model, "gc", blocks, {"X": params.sign / k},
                         {"kappa": k, "q_eps": q, "q_half": qh, "sign": params.sign},
                         exact=exact, tol=tol)

    return _both_modes(build)


# --- CP^n families ----------------------------------------------------------------

def _type_a(p, exact, which):
    k, q, qh, al = (_num(v, exact) for v in (p.kappa, p.q_eps, p.q_half, p.alpha))
    big = q / (2 * k) * (4 * al * al + k * k)
    half_a, half_b = (k / 4, k / 4) if which == "AIII" else (k / (4 * qh), k * qh / 4)
    if which == "AI":
        b = dict(a0=k * k, a_eps=k / (2 * q), b_eps=big, c_eps=al)
        xi = {"X": p.sign / k}
    elif which == "AII":
        b = dict(a0=k / (2 * q), a_eps=k * k, b_eps=big, b_0eps=al)
        xi = {"mu": p.sign / k}
    else:
        b = dict(a0=k / (2 * q), a_eps=big, b_eps=k * k, a_0eps=al)
        xi = {"nu": p.sign / k}
    b.update(a_half=half_a, b_half=half_b)
    return b, xi, []


def _type_bi(p, exact):
    k, q, qh, al = (_num(v, exact) for v in (p.kappa, p.q_eps, p.q_half, p.alpha))
    c, s = (_num(v, exact) for v in p.theta)
    ec = _sgn(c)
    rho = _sqrt(q * (1 - q * s * s), exact)
    sq = _sqrt(q, exact)
    b = dict(
        a0=k * k * rho * rho / (c * c),
        a_eps=k * k / (c * c) * (c * c + (1 - q) ** 2 * s * s),
        b_eps=q * q * (k ** 4 * al * al * rho * rho + s * s * c * c) / (4 * rho * rho * s * s),
        a_0eps=-ec * k * k * rho / (c * c) * (1 - q) * s,
        b_0eps=ec * al * k ** 3 * q * rho / (2 * c),
        c_eps=-al * k ** 3 * rho * rho / (2 * s * c),
        a_half=k * sq / (4 * qh),
        b_half=k * sq * qh / 4,
    )
    xi = {"X": ec * rho / (q * k), "mu": s / k}
    return b, xi, []


def _type_bii(p, exact):
    k, q, al = (_num(v, exact) for v in (p.kappa, p.q_eps, p.alpha))
    c, s = (_num(v, exact) for v in p.theta)
    t = s / c
    rho = q * q * c * c + 4 * (al * al * k * k + 1) * s * s
    sr = _sqrt(rho, exact)
    b = dict(
        a0=4 * k * k * q * q / rho ** 2,
        a_eps=(rho ** 2 + 16 * al * al * q * q * k ** 4 * t * t) / (q * q * rho ** 2),
        b_eps=k * k * (1 + (4 - rho) ** 2 / rho ** 2 * t * t + al * al / (q * q)),
        a_0eps=8 * al * k ** 3 * q / rho ** 2 * t,
        b_0eps=2 * k * k * q * (4 - rho) / rho ** 2 * t,
        c_eps=k * al / (q * q * rho ** 2) * (4 * k * k * q * q * (4 - rho) * t * t - rho ** 2),
        a_half=k * sr / (2 * rho),
        b_half=k * sr / (2 * rho),
    )
    xi = {"X": q / (2 * k) * c, "mu": s * al, "nu": s / k}
    return b, xi, ["beta_positive_root"]


def _type_biii(p, exact):
    k, q, al = (_num(v, exact) for v in (p.kappa, p.q_eps, p.alpha))
    c, s = (_num(v, exact) for v in p.theta)
    t = s / c
    rho = c * c + q * q * s * s
    sr = _sqrt(rho, exact)
    b = dict(
        a0=q * q / 4,
        a_eps=k * k * q * q / rho ** 2 * (1 + al * al * rho ** 2 * t * t),
        b_eps=k * k / rho ** 2 * (rho ** 2 * al * al + rho ** 2 + (1 - q * q) ** 2 * s * s * c * c),
        a_0eps=-al * k * q * q / 2 * t,
        b_0eps=al * k * q / 2,
        c_eps=-q * k * k / rho ** 2 * (al * al * rho ** 2 * t + (1 - q * q) * s * c),
        a_half=k * q * sr / (4 * rho),
        b_half=k * q * sr / (4 * rho),
    )
    xi = {"mu": c / (k * q), "nu": s / k}
    return b, xi, []


def type_c_roots(p: CpnFamilyParams, exact=True):
    """Positive roots delta of (q cos(theta) cos(phi))^2 d^2 - 2 k q d + varrho = 0.

    Exact when the discriminant is a rational square, floats otherwise.
    """
    if exact:
        try:
            return _type_c_roots(p, True)
        except _NeedFloat:
            pass
    return _type_c_roots(p, False)


def _type_c_roots(p, exact):
    k, q, al = (_num(v, exact) for v in (p.kappa, p.q_eps, p.alpha))
    ct, st = (_num(v, exact) for v in p.theta)
    cp, sp = (_num(v, exact) for v in p.phi)
    l1 = ct * cp
    rho = cp * cp * (st - q * al * ct) ** 2 + 4 * q * q * sp * sp
    A = (q * l1) ** 2
    disc = k * k * q * q - A * rho
    if disc < 0 and not (not exact and disc > -1e-12):
        raise InfeasibleParameters(
            "type C needs varrho cos^2(theta) cos^2(phi) <= kappa^2")
    if disc <= 0:
        return ([k * q / A] if k * q / A > 0 else []), rho
    r = _sqrt(disc, exact)
    roots = [(k * q + r) / A, (k * q - r) / A]
    return [d for d in roots if d > 0], rho


def type_c_discriminant_zero(p: CpnFamilyParams) -> bool:
    """True on the admissibility boundary, where the two roots coincide."""
    exact = not any(isinstance(v, float) for v in (p.kappa, p.q_eps, p.alpha) + p.theta + p.phi)
    k, q, al = (_num(v, exact) for v in (p.kappa, p.q_eps, p.alpha))
    ct, st = (_num(v, exact) for v in p.theta)
    cp, sp = (_num(v, exact) for v in p.phi)
    rho = cp * cp * (st - q * al * ct) ** 2 + 4 * q * q * sp * sp
    disc = k * k * q * q - (q * ct * cp) ** 2 * rho
    return disc == 0 if exact else abs(disc) <= 1e-12


def _type_c(p, exact):
    k, q, al = (_num(v, exact) for v in (p.kappa, p.q_eps, p.alpha))
    ct, st = (_num(v, exact) for v in p.theta)
    cp, sp = (_num(v, exact) for v in p.phi)
    roots, rho = _type_c_roots(p, exact)
    if not roots:
        raise InfeasibleParameters("type C quadratic has no positive root")
    d = roots[min(p.root, len(roots) - 1)]
    l1, l2, l3 = ct * cp, st * cp, sp
    kb = 2 * k * q  # kappa^2 beta with beta = 2 q / kappa
    cot = cp / sp
    g1 = cot / kb * ((1 - kb * d) * st - q * al * ct)
    g2 = cot / (kb * q) * (q * al * st + (kb * d - q * q * (al * al + d * d)) * ct)
    h = _sqrt((q * q * d * d * l1 * l1 + rho) / (16 * d * d), exact)
    b = dict(
        a0=q * q,
        a_eps=(1 + al * al * q * q) / (d * d),
        b_eps=k * k / (d * d) * (g1 * g1 + q * q * g2 * g2 + d * d),
        a_0eps=-al * q * q / d,
        b_0eps=k * q * q * g2 / d,
        c_eps=-k / (d * d) * (g1 + al * q * q * g2),
        a_half=h,
        b_half=h,
    )
    xi = {"X": l1 / q + al * l2 + (al * g1 - g2) * l3 / d,
          "mu": d * l2 + g1 * l3,
          "nu": l3 / k}
    notes = {"delta": d, "roots": list(roots), "gamma1": g1, "gamma2": g2, "varrho": rho}
    caveats = ["beta_positive_root"]
    if len(type_c_roots(p)[0]) == 1 and type_c_discriminant_zero(p):
        caveats.append("type_c_double_root")
    return b, xi, caveats, notes


def cpn_family(model: RankOneModel, params: CpnFamilyParams, tol=None) -> FamilyInstance:
    """Metric and characteristic field of the given CP^n family type."""
    if model.kind.family != "cpn":
        raise ValueError("CP^n families need a ComplexProjective model")
    t = params.family_type

    def build(exact):
        notes = {}
        if t in ("AI", "AII", "AIII"):
            b, xi, cav = _type_a(params, exact, t)
        elif t == "BI":
            b, xi, cav = _type_bi(params, exact)
        elif t == "BII":
            b, xi, cav = _type_bii(params, exact)
        elif t == "BIII":
            b, xi, cav = _type_biii(params, exact)
        else:
            b, xi, cav, notes = _type_c(params, exact)
        if model.kind.n == 1:
            b["a_half"] = b["b_half"] = None
        return _assemble(model, t, b, xi, params.as_dict(), cav, notes, exact=exact, tol=tol)

    return _both_modes(build)


def type_c_instances(model: RankOneModel, params: CpnFamilyParams, tol=None) -> list:
    """Every positive root of the type C quadratic, one instance each."""
    roots, _ = type_c_roots(params)
    if not roots:
        raise InfeasibleParameters("type C quadratic has no positive root")
    out = []
    for i in range(len(roots)):
        p = CpnFamilyParams(**{**params.__dict__, "root": i})
        out.append(cpn_family(model, p, tol=tol))
    return out


# --- orthogonal catalog----------------------------------------------------------------

TABLE2_COLUMNS = ("type", "xi", "a0", "a_eps", "b_eps", "a_half", "b_half", "kcontact")


@dataclass(frozen=True, eq=False)
class Table2Row:
    family_type: str
    instance: FamilyInstance
    kcontact_condition: bool
    condition_text: str

    @property
    def metric(self):
        return self.instance.metric

    @property
    def xi(self):
        return self.instance.xi


_CONDITIONS = {
    "AI": ("q_eps = q_half = 1", lambda p: p.q_eps == 1 and p.q_half == 1),
    "AII": ("q_eps = q_half = 1", lambda p: p.q_eps == 1 and p.q_half == 1),
    "AIII": ("q_eps = 1", lambda p: p.q_eps == 1),
    "BI": ("kappa = 1/2, q_half = 1", lambda p: p.kappa == HALF and p.q_half == 1),
    "BII": ("kappa = 1/2", lambda p: p.kappa == HALF),
    "BIII": ("kappa = 1/2", lambda p: p.kappa == HALF),
    "C": ("always", lambda p: True),
}


def table2_row(model: RankOneModel, family_type: str, kappa=1, q_eps=1, q_half=1,
               theta=None, phi=None, sign=1) -> Table2Row:
    """Orthogonal contact metric of the catalog with its listed xi."""
    k, q, qh = Fraction(kappa), Fraction(q_eps), Fraction(q_half)
    ct, st = unit_angle(theta) if theta is not None else (None, None)
    t = family_type
    if t in ("BI", "BII", "BIII", "C") and theta is None:
        raise ValueError(f"type {t} needs theta")
    if t == "C" and phi is None:
        raise ValueError("type C needs phi")
    if t == "AI":
        b = (k * k, k / (2 * q), k * q / 2, k / (4 * qh), k * qh / 4)
        xi = {"X": sign / k}
    elif t == "AII":
        b = (k / (2 * q), k * k, k * q / 2, k / (4 * qh), k * qh / 4)
        xi = {"mu": sign / k}
    elif t == "AIII":
        b = (k / (2 * q), k * q / 2, k * k, k / 4, k / 4)
        xi = {"nu": sign / k}
    elif t == "BI":
        b = (k * k, k * k, Fraction(1, 4), k / (4 * qh), k * qh / 4)
        xi = {"X": ct / k, "mu": st / k}
    elif t == "BII":
        b = (k * k, Fraction(1, 4), k * k, k / 4, k / 4)
        xi = {"X": ct / k, "nu": st / k}
    elif t == "BIII":
        b = (Fraction(1, 4), k * k, k * k, k / 4, k / 4)
        xi = {"mu": ct / k, "nu": st / k}
    elif t == "C":
        cp, sp = unit_angle(phi)
        b = (Fraction(1, 4),) * 3 + (Fraction(1, 8),) * 2
        xi = {"X": 2 * ct * cp, "mu": 2 * st * cp, "nu": 2 * sp}
    else:
        raise ValueError(f"unknown family type {t!r}")
    if model.kind.n == 1:
        b = b[:3] + (None, None)
    exact = not any(isinstance(v, float) for v in xi.values())
    blocks = dict(zip(("a0", "a_eps", "b_eps", "a_half", "b_half"), b))
    params = {"type": t, "kappa": k, "q_eps": q, "q_half": qh}
    if theta is not None:
        params["theta"] = (ct, st)
    if phi is not None:
        params["phi"] = unit_angle(phi)
    inst = _assemble(model, t, blocks, xi, params, exact=exact)
    text, pred = _CONDITIONS[t]
    if model.kind.n == 1 and "q_half" in text:
        # m_half = 0: the q_half clause is vacuous
        text = text.replace(", q_half = 1", "").replace("q_eps = q_half = 1", "q_eps = 1")
        qh = Fraction(1)
    rec = _Rec(k, q, qh)
    return Table2Row(t, inst, pred(rec), text)


@dataclass(frozen=True)
class _Rec:
    kappa: object
    q_eps: object
    q_half: object


DEFAULT_TABLE2_GRID = {
    "AI": [dict(kappa=k, q_eps=q, q_half=qh) for k in (HALF, 1) for q in (HALF, 1) for qh in (1, 2)],
    "AII": [dict(kappa=k, q_eps=q, q_half=qh) for k in (HALF, 1) for q in (HALF, 1) for qh in (1, 2)],
    "AIII": [dict(kappa=k, q_eps=q) for k in (HALF, 1) for q in (HALF, 1, 2)],
    "BI": [dict(kappa=k, q_half=qh, theta=th) for k in (HALF, 1) for qh in (1, 3)
           for th in (("3/5", "4/5"), ("-4/5", "3/5"))],
    "BII": [dict(kappa=k, theta=th) for k in (Fraction(1, 3), HALF, 2)
            for th in (("3/5", "4/5"), ("5/13", "-12/13"))],
    "BIII": [dict(kappa=k, theta=th) for k in (Fraction(1, 3), HALF, 2)
             for th in (("3/5", "4/5"), ("-5/13", "12/13"))],
    "C": [dict(theta=th, phi=ph) for th in (("3/5", "4/5"), ("-8/17", "15/17"))
          for ph in (("4/5", "3/5"), ("12/13", "-5/13"))],
}


def table2_catalog(model: RankOneModel, grid=None) -> list:
    """Catalog rows over a parameter grid, in type order."""
    if model.kind.family != "cpn":
        raise ValueError("the orthogonal catalog needs a ComplexProjective model")
    grid = grid or DEFAULT_TABLE2_GRID
    rows = []
    for t in CPN_TYPES:
        for point in grid.get(t, ()):
            rows.append(table2_row(model, t, **point))
    return rows


def table2_csv_rows(rows, verdicts=None) -> list:
    """Rows of strings in catalog column order, followed by parameters and verdicts."""
    out = [list(TABLE2_COLUMNS) + ["kappa", "q_eps", "q_half", "theta", "phi"]
           + (["contact", "kcontact_check"] if verdicts is not None else [])]
    for i, row in enumerate(rows):
        m = row.metric
        labels = m.model.labels
        xi = " + ".join(f"{scalars.fmt(c)}*{labels[j]}" for j, c in enumerate(row.xi) if c != 0)
        p = m.params
        p2 = row.instance.params
        ang = lambda key: "" if key not in p2 else "(" + ",".join(scalars.fmt(x) for x in p2[key]) + ")"
        line = [row.family_type, xi, scalars.fmt(p.a0), scalars.fmt(p.a_eps), scalars.fmt(p.b_eps),
                "" if p.a_half is None else scalars.fmt(p.a_half),
                "" if p.b_half is None else scalars.fmt(p.b_half),
                row.condition_text,
                scalars.fmt(p2["kappa"]), scalars.fmt(p2["q_eps"]), scalars.fmt(p2["q_half"]),
                ang("theta"), ang("phi")]
        if verdicts is not None:
            line += list(verdicts[i])
        out.append(line)
    return out


# --- Sasaki metric and 3-Sasakian / Einstein metrics -----------------------------

def sasaki_induced_metric(model: RankOneModel, r, scale=1, mode=None, tol=None) -> InvariantMetric:
    """scale * (1, 1, r^2) on spheres and RP^n; scale * (1, 1, r^2, 1, r^2/4) on CP^n."""
    if not r > 0:
        raise ValueError("radius must be positive")
    exact = not isinstance(r, float) and not isinstance(scale, float)
    r = scalars.convert(r, exact)
    sc = scalars.convert(scale, exact)
    if model.kind.family == "cpn":
        half = (sc, sc * r * r / 4) if model.kind.n > 1 else (None, None)
        p = BlockParams(sc, sc, sc * r * r, *half)
    else:
        p = BlockParams(sc, sc, sc * r * r)
    return metric_from_blocks(model, p, mode=mode or ("exact" if exact else "float"), tol=tol)


def standard_xi(metric: InvariantMetric) -> tuple:
    """X / |X|, the normalized standard field; float when |X| is irrational."""
    X = metric.model.unit("X")
    n2 = metric.inner(X, X)
    try:
        nrm = scalars.sqrt(n2)
    except scalars.Irrational:
        nrm = math.sqrt(n2)
    return tuple(x / nrm for x in metric.vector(X))


def three_sasakian_metric(model: RankOneModel):
    """(metric, xi1, xi2, xi3) with metric 1/4 on nbar, 1/8 on the half blocks and
    the triple (2X, 2nu, 2mu)."""
    if model.kind.family != "cpn":
        raise ValueError("3-Sasakian metric needs a ComplexProjective model")
    q, e = Fraction(1, 4), Fraction(1, 8)
    half = (e, e) if model.kind.n > 1 else (None, None)
    g = metric_from_blocks(model, BlockParams(q, q, q, *half), mode="exact")
    return g, model.vec({"X": 2}), model.vec({"nu": 2}), model.vec({"mu": 2})


def sasakian_einstein_cpn(model: RankOneModel) -> InvariantMetric:
    return three_sasakian_metric(model)[0]


def kappa_family(model: RankOneModel, i: int, kappa):
    """(metric, xi) of the orthogonal K-contact families g_i^kappa, i = 1, 2, 3."""
    if i not in (1, 2, 3):
        raise ValueError("family index must be 1, 2 or 3")
    t = ("AI", "AII", "AIII")[i - 1]
    return cpn_family(model, CpnFamilyParams(t, kappa=kappa))


@dataclass(frozen=True, eq=False)
class EinsteinSolution:
    metric: InvariantMetric
    a_eps: object
    b_eps: object
    lam: object
    case_analysis: dict
    rejected: int
    sampled: int


def einstein_case_analysis(n: int, a0) -> dict:
    """Both branches of rho_eps = varrho_eps, solved in closed form.

    rho_eps - varrho_eps vanishes iff a_eps = b_eps or a0 = (a_eps + b_eps)/(n-1).
    First branch: rho_0 = rho_eps is linear in t = a_eps = b_eps.  Second branch:
    with s = a_eps + b_eps, d = a_eps - b_eps it reduces to
    (n-1) d^2 = a0^2 (n - (n-1)^2), which has no solution with positive blocks.
    """
    a0 = Fraction(a0)
    t = Fraction(n, 2 * (n - 1)) * a0
    rho = sphere_ricci_eigenvalues(BlockParams(a0, t, t), n)
    coeff = n - (n - 1) ** 2
    second = []
    if coeff > 0:
        d = scalars.exact_sqrt(a0 * a0 * coeff / (n - 1))
        s = (n - 1) * a0
        if d is not None:
            for dd in (d, -d):
                ae, be = (s + dd) / 2, (s - dd) / 2
                second.append((ae, be, ae > 0 and be > 0))
    return {
        "branch_equal": {"a_eps": t, "b_eps": t, "ricci_eigenvalues": rho, "einstein": rho[0] == rho[1] == rho[2]},
        "branch_trace": {"coefficient": coeff, "solutions": second,
                         "positive_solutions": [x for x in second if x[2]]},
    }


def _is_einstein_closed(n, a0, ae, be):
    r0, r1, r2 = sphere_ricci_eigenvalues(BlockParams(a0, ae, be), n)
    return r0 == r1 == r2


def einstein_solve_sphere(model: RankOneModel, a0, samples: int = 200, seed: int = 0) -> EinsteinSolution:
    """The invariant Einstein metric with a_eps = b_eps = n a0 / (2(n-1))."""
    if model.kind.family not in ("sphere", "rp"):
        raise ValueError("Einstein solver needs a sphere or RP^n model")
    a0 = Fraction(a0)
    if not a0 > 0:
        raise ValueError("a0 must be positive")
    n = model.kind.n
    t = Fraction(n, 2 * (n - 1)) * a0
    metric = metric_from_blocks(model, BlockParams(a0, t, t), mode="exact")
    rep = einstein_check(metric)
    analysis = einstein_case_analysis(n, a0)
    rng = random.Random(seed)
    rejected = 0
    for _ in range(samples):
        while True:
            ae = Fraction(rng.randint(1, 400), rng.randint(1, 40))
            be = Fraction(rng.randint(1, 400), rng.randint(1, 40))
            if not (ae == t and be == t):
                break
        if not _is_einstein_closed(n, a0, ae, be):
            rejected += 1
    return EinsteinSolution(metric, t, t, rep.details["lambda"], analysis, rejected, samples)


def einstein_lambda_sphere(n: int, a0):
    return Fraction(2 * (n - 1) ** 3, n * n) / Fraction(a0)


# --- infinitesimal models -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InfinitesimalModel:
    """(mbar, T = -[,]_mbar, R = ad of [,]_h on mbar, g, xi, phi) at the origin."""

    model: RankOneModel
    gram: tuple
    xi: tuple
    phi: tuple
    exact: bool
    tol: object

    @property
    def dim(self):
        return self.model.dim

    def bracket(self, u, v):
        return self.model.bracket(u, v)

    def curvature_op(self, u, v):
        """Matrix of ad([u, v]_h) on mbar."""
        tabs = self.model.tables
        n = self.dim
        hv = self.model.bracket_h(u, v)
        M = [[Fraction(0)] * n for _ in range(n)]
        for w, c in enumerate(hv):
            if c:
                A = tabs.adh[w]
                for r in range(n):
                    for k in range(n):
                        if A[r][k]:
                            M[r][k] += c * A[r][k]
        return M


def infinitesimal_model(metric: InvariantMetric, xi) -> InfinitesimalModel:
    s = build_structure(metric, xi)
    return InfinitesimalModel(metric.model, metric.gram, s.xi, s.phi, metric.exact, metric.tol)


def model_isomorphism_check(L, src: InfinitesimalModel, dst: InfinitesimalModel,
                            stop_early: bool = False) -> CheckReport:
    """Isometry, L[u,v] = [Lu,Lv], L ad_[u,v]_h = ad_[Lu,Lv]_h L, L xi = xi', L phi = phi' L.

    With ``stop_early`` the first violated pair ends the check, so the residual
    is that pair's deviation rather than the maximum.
    """
    n = src.dim
    if len(L) != n or any(len(r) != n for r in L) or dst.dim != n:
        raise ValueError("L must be square on mbar")
    tol = src.tol if src.tol is not None else dst.tol
    labels = src.model.labels
    cols = [tuple(L[r][c] for r in range(n)) for c in range(n)]
    e = lambda i: tuple(1 if k == i else 0 for k in range(n))
    LT = linalg.transpose(L)
    gL = linalg.matmul(linalg.matmul(LT, [list(r) for r in dst.gram]), L)

    def iso():
        for u in range(n):
            for v in range(n):
                yield (labels[u], labels[v]), gL[u][v] - src.gram[u][v]

    def torsion():
        for u in range(n):
            for v in range(u + 1, n):
                lhs = linalg.matvec(L, list(src.bracket(e(u), e(v))))
                rhs = dst.bracket(cols[u], cols[v])
                yield (labels[u], labels[v]), max(abs(a - b) for a, b in zip(lhs, rhs))

    def curv():
        for u in range(n):
            for v in range(u + 1, n):
                lhs = linalg.matmul(L, src.curvature_op(e(u), e(v)))
                rhs = linalg.matmul(dst.curvature_op(cols[u], cols[v]), L)
                yield (labels[u], labels[v]), max(abs(a - b) for ra, rb in zip(lhs, rhs)
                                                  for a, b in zip(ra, rb))

    def structure():
        Lxi = linalg.matvec(L, list(src.xi))
        yield ("xi",), max(abs(a - b) for a, b in zip(Lxi, dst.xi))
        lp = linalg.matmul(L, [list(r) for r in src.phi])
        pl = linalg.matmul([list(r) for r in dst.phi], L)
        yield ("phi",), max(abs(a - b) for ra, rb in zip(lp, pl) for a, b in zip(ra, rb))

    def until_fail(items):
        for key, r in items:
            yield key, r
            if not scalars.is_zero(r, tol):
                return

    reports = []
    for name, gen in (("isometry", iso), ("torsion", torsion), ("curvature", curv),
                      ("structure", structure)):
        rep = residual_report(name, until_fail(gen()) if stop_early else gen(), tol)
        reports.append(rep)
        if stop_early and not rep.passed:
            break
    failed = [r for r in reports if not r.passed]
    if failed:
        w = failed[0]
        out = CheckReport("isomorphism", False, w.residual, (w.name,) + tuple(w.witness or ()),
                          src.model.caveats, {"failed": [r.name for r in failed]})
    else:
        z = Fraction(0) if tol is None else 0.0
        res = max((r.residual for r in reports), default=z)
        out = CheckReport("isomorphism", True, res, (), src.model.caveats, {"failed": []})
    return out


def _perm_matrix(model, images):
    """Matrix of the linear map sending unit(label) to sum c*unit(label') for images[label]."""
    n = model.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for src, targets in images.items():
        c = model.index(src)
        for lab, coef in targets:
            M[model.index(lab)][c] += coef
    return M


def _half_labels(model, kind, j, a):
    return f"{kind}{j}.{a % 2}"


def isomorphism_L(model: RankOneModel):
    """LX = mu, L mu = -X, L nu = nu, L mu^{j,a} = (-1)^a mu^{j,a+1}, L nu^{j,a} = nu^{j,a}."""
    images = {"X": [("mu", 1)], "mu": [("X", -1)], "nu": [("nu", 1)]}
    for (j, a) in model.half_index:
        images[_half_labels(model, "mu", j, a)] = [(_half_labels(model, "mu", j, a + 1), (-1) ** a)]
        images[_half_labels(model, "nu", j, a)] = [(_half_labels(model, "nu", j, a), 1)]
    return _perm_matrix(model, images)


def swap_candidates(model: RankOneModel):
    """Signed block maps with L(a) = k_eps: nbar permutations sending X to nu with
    all signs, half blocks kept or exchanged, with an optional shift a -> a+1 and
    signs per superscript."""
    out = []
    for rest in (("X", "mu"), ("mu", "X")):
        for sx, s1, s2 in itertools.product((1, -1), repeat=3):
            nb = {"X": [("nu", sx)], "mu": [(rest[0], s1)], "nu": [(rest[1], s2)]}
            for exchange, shift in itertools.product((False, True), (0, 1)):
                for sm0, sm1 in itertools.product((1, -1), repeat=2):
                    images = dict(nb)
                    for (j, a) in model.half_index:
                        sgn = sm0 if a == 0 else sm1
                        tm, tn = ("nu", "mu") if exchange else ("mu", "nu")
                        images[_half_labels(model, "mu", j, a)] = [(_half_labels(model, tm, j, a + shift), sgn)]
                        images[_half_labels(model, "nu", j, a)] = [(_half_labels(model, tn, j, a + shift), 1)]
                    desc = {"nbar": (rest, sx, s1, s2), "exchange": exchange, "shift": shift,
                            "signs": (sm0, sm1)}
                    out.append((desc, _perm_matrix(model, images)))
    return out
