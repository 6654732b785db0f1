"""Command line front-end.

    crosm verify --space cpn --n 2 --type AI --kappa 1 --qeps 1 --qhalf 1 --alpha 0
    crosm einstein --space sphere --n 4 --a0 1
    crosm full-suite --space cpn --n 1

Exit codes: 0 when every required check passes, 2 when a check fails (the
report is still written), 1 on input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import families as fam
from . import scalars, suite
from .contact import build_structure, cone_check, contact_check, einstein_check
from .geometry import BlockParams, MetricError, metric_from_blocks
from .models import SpaceKind, build_model

try:  # Python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

SCHEMA = 1
TASKS = ("verify", "catalog", "einstein", "cone", "isomorphism", "full-suite")
FORMATS = ("json", "csv", "text")
REQUIRABLE = ("contact", "kcontact", "sasakian", "cone", "einstein")

# config key -> (section, flag dest)
FAMILY_KEYS = {"type": "type", "kappa": "kappa", "q_eps": "qeps", "q_half": "qhalf",
               "alpha": "alpha", "theta": "theta", "phi": "phi", "r": "r", "sign": "sign",
               "root": "root", "xi": "xi"}
METRIC_KEYS = {"a0": "a0", "a_eps": "aeps", "b_eps": "beps", "a_half": "ahalf",
               "b_half": "bhalf", "a_0eps": "a0eps", "b_0eps": "b0eps", "c_eps": "ceps"}
SPACE_KEYS = {"family": "space", "n": "n"}
RUN_KEYS = {"task": "task", "mode": "mode", "tol": "tol", "out": "out", "format": "format",
            "require": "require"}
SECTIONS = {"space": SPACE_KEYS, "family": FAMILY_KEYS, "metric": METRIC_KEYS, "run": RUN_KEYS}


class InputError(ValueError):
    """Malformed configuration; the message names the offending key."""


@dataclass
class RunConfig:
    space: SpaceKind
    task: str
    mode: str = "exact"
    tolerance: float | None = None
    params: dict = field(default_factory=dict)
    blocks: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str = "json"
    require: tuple = ("contact",)


# --- parsing ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crosm", description=__doc__.splitlines()[0])
    p.add_argument("task", nargs="?", choices=TASKS)
    p.add_argument("--config", help="TOML file with [space], [family] or [metric], [run]")
    p.add_argument("--space", help="sphere, rp or cpn")
    p.add_argument("--n", help="dimension parameter of the base space")
    p.add_argument("--type", help="AI, AII, AIII, BI, BII, BIII, C, gc, sasaki or sasaki-scaled")
    for flag in ("kappa", "qeps", "qhalf", "alpha", "theta", "phi", "r", "sign", "root", "xi"):
        p.add_argument(f"--{flag}")
    for flag in METRIC_KEYS.values():
        p.add_argument(f"--{flag}")
    p.add_argument("--mode", help="exact or float (default from CROSM_MODE)")
    p.add_argument("--tol", help="tolerance in float mode")
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--format", help="json, csv or text")
    p.add_argument("--require", action="append",
                   help="checks that must pass for exit code 0 (repeatable)")
    return p


def _load_config(path):
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise InputError(f"config: cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"config: invalid TOML: {exc}") from exc
    merged = {}
    for section, body in data.items():
        if section not in SECTIONS:
            raise InputError(f"config: unknown section [{section}]")
        if not isinstance(body, dict):
            raise InputError(f"config: [{section}] must be a table")
        keys = SECTIONS[section]
        for key, value in body.items():
            if key not in keys:
                raise InputError(f"config: unknown key {section}.{key}")
            merged[keys[key]] = (f"{section}.{key}", value)
    return merged


def resolve(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = {}
    if args.config:
        values.update(_load_config(args.config))
    for dest, v in vars(args).items():
        if dest == "config" or v is None:
            continue
        values[dest] = (f"--{dest}", v)

    def get(dest, default=None):
        return values.get(dest, (dest, default))

    key, task = get("task")
    if task is None:
        raise InputError("task: missing (one of " + ", ".join(TASKS) + ")")
    if task not in TASKS:
        raise InputError(f"{key}: unknown task {task!r}")
    key, space = get("space")
    if space is None:
        raise InputError("space: missing")
    nkey, n = get("n")
    if n is None:
        raise InputError("n: missing")
    try:
        kind = SpaceKind(str(space), int(n))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{key}/{nkey}: {exc}") from exc

    key, mode = get("mode")
    try:
        mode = (mode or scalars.default_mode()).lower()
        if mode not in scalars.MODES:
            raise ValueError(f"unknown mode {mode!r}")
    except ValueError as exc:
        raise InputError(f"{key}: {exc}") from exc
    tkey, tol = get("tol")
    try:
        tol = scalars.tol_for(mode, None if tol is None else float(tol))
    except ValueError as exc:
        raise InputError(f"{tkey}: {exc}") from exc

    key, fmt = get("format", "json")
    if fmt not in FORMATS:
        raise InputError(f"{key}: unknown format {fmt!r}")
    key, req = get("require")
    if req is None:
        req = ("contact",)
    elif isinstance(req, str):
        req = (req,)
    for r in req:
        if r not in REQUIRABLE:
            raise InputError(f"{key}: unknown check {r!r}")

    params, blocks = {}, {}
    for dest in list(FAMILY_KEYS.values()):
        if dest in values:
            params[dest] = values[dest]
    for dest in METRIC_KEYS.values():
        if dest in values:
            blocks[dest] = values[dest]
    return RunConfig(kind, task, mode, tol, params, blocks, get("out")[1], fmt, tuple(req))


def _scalar(cfg, dest, default=None, positive=False):
    key, v = cfg.params.get(dest, cfg.blocks.get(dest, (dest, default)))
    if v is None:
        return None
    try:
        x = scalars.parse_scalar(v, cfg.mode)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{key}: not a number: {v!r}") from exc
    if positive and not x > 0:
        raise InputError(f"{key}: must be positive")
    return x


def _angle(cfg, dest):
    key, v = cfg.params.get(dest, (dest, None))
    if v is None:
        return None
    try:
        c, s = fam.unit_angle(v if not isinstance(v, list) else tuple(str(x) for x in v))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{key}: {exc}") from exc
    if cfg.mode == "float":
        c, s = float(c), float(s)
    return (c, s)


def _int(cfg, dest, default):
    key, v = cfg.params.get(dest, (dest, default))
    try:
        return int(v)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{key}: not an integer: {v!r}") from exc


# --- building the (metric, xi) pair ------------------------------------------------

def _explicit_xi(cfg, model, metric):
    key, v = cfg.params.get("xi", ("xi", None))
    if v is None:
        return fam.standard_xi(metric)
    coeffs = {}
    try:
        for part in str(v).split(","):
            lab, val = part.split("=")
            coeffs[lab.strip()] = scalars.parse_scalar(val.strip(), cfg.mode)
        return metric.vector(model.vec(coeffs))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{key}: expected label=value pairs, got {v!r}") from exc


def build_pair(cfg: RunConfig, model):
    """(metric, xi, provenance) for verify/cone tasks."""
    key, ftype = cfg.params.get("type", ("type", None))
    if cfg.blocks:
        names = {v: k for k, v in METRIC_KEYS.items()}
        vals = {names[d]: _scalar(cfg, d) for d in cfg.blocks}
        for need in ("a0", "a_eps", "b_eps"):
            if need not in vals:
                raise InputError(f"{need}: missing metric block")
        if model.m_half.dim:
            for need in ("a_half", "b_half"):
                if need not in vals:
                    raise InputError(f"{need}: missing metric block")
        metric = metric_from_blocks(model, BlockParams(**vals), mode=cfg.mode, tol=cfg.tolerance)
        return metric, _explicit_xi(cfg, model, metric), {"source": "explicit blocks"}
    if ftype is None:
        ftype = "gc" if model.kind.family != "cpn" else "AI"
    if ftype in ("sasaki", "sasaki-scaled"):
        r = _scalar(cfg, "r", positive=True)
        if r is None:
            raise InputError("r: missing for the Sasaki metric")
        scale = 1 / (4 * r * r) if ftype == "sasaki-scaled" else 1
        metric = fam.sasaki_induced_metric(model, r, scale=scale, mode=cfg.mode, tol=cfg.tolerance)
        return metric, fam.standard_xi(metric), {"source": f"{ftype} metric", "r": r}
    kappa = _scalar(cfg, "kappa", 1, positive=True)
    qeps = _scalar(cfg, "qeps", 1, positive=True)
    qhalf = _scalar(cfg, "qhalf", 1, positive=True)
    sign = _int(cfg, "sign", 1)
    if ftype == "gc":
        try:
            inst = fam.sphere_contact_family(
                model, fam.SphereFamilyParams(kappa, qeps, qhalf, sign), tol=cfg.tolerance)
        except ValueError as exc:
            raise InputError(f"family: {exc}") from exc
        return inst.metric, inst.xi, {"source": "family gc", **inst.params}
    if ftype not in fam.CPN_TYPES:
        raise InputError(f"{key}: unknown family type {ftype!r}")
    if model.kind.family != "cpn":
        raise InputError(f"{key}: type {ftype} needs --space cpn")
    try:
        p = fam.CpnFamilyParams(ftype, kappa, qeps, qhalf, _scalar(cfg, "alpha", 0),
                                _angle(cfg, "theta"), _angle(cfg, "phi"), sign, _int(cfg, "root", 0))
        inst = fam.cpn_family(model, p, tol=cfg.tolerance)
    except fam.InfeasibleParameters as exc:
        raise InputError(f"family: infeasible parameters: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"family: {exc}") from exc
    prov = {"source": f"family {ftype}", **{k: v for k, v in p.as_dict().items() if k != "type"}}
    if inst.notes:
        prov.update({k: v for k, v in inst.notes.items() if k in ("delta", "roots")})
    if inst.caveats:
        prov["caveats"] = list(inst.caveats)
    if not inst.metric.exact and cfg.mode == "exact":
        prov["mode_switch"] = "irrational coefficient, float mode"
    return inst.metric, inst.xi, prov


# --- tasks -----------------------------------------------------------------------------

def _task_verify(cfg, model):
    metric, xi, prov = build_pair(cfg, model)
    c = suite.classify(metric, xi)
    e = einstein_check(metric)
    reports = [c["contact"], c["kcontact"], c["sasakian"], c["cone"], e]
    by = {"contact": c["contact"], "kcontact": c["kcontact"], "sasakian": c["sasakian"],
          "cone": c["cone"], "einstein": e}
    ok = all(by[r].passed for r in cfg.require)
    classification = [k for k in ("contact", "kcontact", "sasakian") if by[k].passed]
    extra = {"metric": metric.to_json(), "xi": list(xi),
             "classification": classification, "required": list(cfg.require), "provenance": prov}
    return reports, ok, extra


def _task_cone(cfg, model):
    metric, xi, prov = build_pair(cfg, model)
    s = build_structure(metric, xi)
    c = contact_check(s)
    co = cone_check(s)
    return [c, co], co.passed, {"provenance": prov, "equivalence_holds": c.passed == co.passed}


def _task_einstein(cfg, model):
    if model.kind.family == "cpn":
        if cfg.blocks:
            metric, _, prov = build_pair(cfg, model)
        else:
            metric, prov = fam.sasakian_einstein_cpn(model), {"source": "3-Sasakian metric"}
        e = einstein_check(metric)
        return [e], e.passed, {"provenance": prov, "lambda": e.details["lambda"]}
    a0 = _scalar(cfg, "a0", 1, positive=True)
    if isinstance(a0, float):
        a0 = Fraction(a0).limit_denominator(10 ** 12)
    sol = fam.einstein_solve_sphere(model, a0)
    rep = suite.einstein_solver_reports(model, a0)[0]
    e = einstein_check(sol.metric)
    extra = {"a0": a0, "a_eps": sol.a_eps, "b_eps": sol.b_eps, "lambda": sol.lam,
             "uniqueness": {"rejected_random_metrics": sol.rejected, "sampled": sol.sampled,
                            "trace_branch_positive_solutions":
                                len(sol.case_analysis["branch_trace"]["positive_solutions"])},
             "provenance": {"closed_form": "a_eps = b_eps = n a0 / (2(n-1))",
                            "check": "Ricci contraction of the curvature pipeline"}}
    return [e, rep], e.passed and rep.passed, extra


def _task_catalog(cfg, model):
    if model.kind.family != "cpn":
        raise InputError("space: catalog needs cpn")
    rows = fam.table2_catalog(model)
    reports, verdicts = [], []
    for row, rep in zip(rows, suite.table2_reports(model)):
        reports.append(rep)
        verdicts.append((rep.details["contact"], rep.details["kcontact"]))
    table = fam.table2_csv_rows(rows, verdicts)
    return reports, all(r.passed for r in reports), {"table": table}


def _task_isomorphism(cfg, model):
    if model.kind.family != "cpn":
        raise InputError("space: isomorphism needs cpn")
    grid = None
    if any(d in cfg.params for d in ("kappa", "qeps", "qhalf")):
        grid = ((_scalar(cfg, "kappa", 1, True), _scalar(cfg, "qeps", 1, True),
                 _scalar(cfg, "qhalf", 1, True)),)
    reports = suite.isomorphism_reports(model, grid) if grid else suite.isomorphism_reports(model)
    return reports, all(r.passed for r in reports), {}


def _task_full(cfg, model):
    reports = suite.full_suite(model)
    return reports, all(r.passed for r in reports), {}


TASK_FUNCS = {"verify": _task_verify, "cone": _task_cone, "einstein": _task_einstein,
              "catalog": _task_catalog, "isomorphism": _task_isomorphism, "full-suite": _task_full}


# --- rendering ---------------------------------------------------------------------

def _plain(v):
    if isinstance(v, (Fraction, float)):
        return scalars.to_json(v)
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


def render(cfg, model, reports, ok, extra) -> str:
    if cfg.fmt == "json":
        doc = {"schema": SCHEMA, "task": cfg.task, "space": str(model.kind), "mode": cfg.mode,
               "model": model.summary(), "result": "pass" if ok else "fail",
               "checks": [r.to_json() for r in reports]}
        doc.update({k: _plain(v) for k, v in extra.items() if k != "table"})
        if "table" in extra:
            doc["table"] = extra["table"]
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if "table" in extra:
            w.writerows(extra["table"])
        else:
            w.writerow(["name", "verdict", "residual", "witness", "caveats"])
            for r in reports:
                w.writerow([r.name, r.verdict, scalars.fmt(r.residual), " ".join(map(str, r.witness)),
                            " ".join(r.caveats)])
        return buf.getvalue()
    lines = [f"crosm {cfg.task} on {model.kind} ({cfg.mode})"]
    lines += [r.to_text() for r in reports]
    for k, v in extra.items():
        if k == "table":
            lines += [" | ".join(row) for row in v]
        elif k not in ("metric",):
            lines.append(f"{k}: {_text(v)}")
    lines.append(f"result: {'pass' if ok else 'fail'}")
    return "\n".join(lines) + "\n"


def _text(v):
    if isinstance(v, (Fraction, float)):
        return scalars.fmt(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text(x)}" for k, x in v.items()) + "}"
    return str(v)


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    model = build_model(cfg.space)
    try:
        reports, ok, extra = TASK_FUNCS[cfg.task](cfg, model)
    except MetricError as exc:
        raise InputError(f"metric: {exc}") from exc
    text = render(cfg, model, reports, ok, extra)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0 if ok else 2


def main(argv=None) -> int:
    try:
        cfg = resolve(argv)
        return run(cfg)
    except InputError as exc:
        print(f"crosm: input error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse errors
        return 1 if exc.code else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
