"""Command-line front end.

Every subcommand builds an algebra from ``--q``/``--f`` (or a config file),
runs one computation and prints either a short text report or, with
``--json``, a JSON document carrying ``schema_version``.

Exit codes: 0 success, 2 usage or hypothesis error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Sequence

from . import autos, centerlab, invtheory, potential
from .errors import BqError, UsageError, VerificationError
from .pbw import (DEFAULT_DEGREE_CAP, AlgebraSpec, Element, associativity_fuzz,
                  confluence_fuzz, parse_element)
from .scalars import QQ, QQ_q, Scalar, cyclotomic_field

SCHEMA_VERSION = "1"

CONFIG_KEYS = {"q", "f", "field", "json", "max_deg", "order", "seed", "degree_cap"}
DEFAULT_MAX_DEG = 6
DEFAULT_OZONE_DEG = 4
HARD_MAX_DEG = 24
HARD_MAX_ORDER = 40


class Failed(Exception):
    """A report was produced but some check in it failed (exit 3)."""

    def __init__(self, report: dict, message: str):
        super().__init__(message)
        self.report = report


# --- configuration ---------------------------------------------------------------------


@dataclass
class RunConfig:
    q: str = "generic"
    f: str = "0,0,1"
    field: str | None = None
    json: bool = False
    max_deg: int | None = None
    order: int = invtheory.DEFAULT_ORDER
    seed: int = 0
    degree_cap: int = DEFAULT_DEGREE_CAP
    algebra: AlgebraSpec | None = dc_field(default=None, repr=False)

    def deg(self, default: int) -> int:
        return default if self.max_deg is None else self.max_deg


def read_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config line {n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"--config line {n}: unknown key {key!r}")
        out[key] = value
    return out


def _as_int(name: str, text, lo: int, hi: int) -> int:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise UsageError(f"--{name.replace('_', '-')}: expected an integer, got {text!r}") from None
    if not lo <= value <= hi:
        raise UsageError(f"--{name.replace('_', '-')}: {value} outside [{lo}, {hi}]")
    return value


def _as_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    if str(text).lower() in ("1", "true", "yes", "on"):
        return True
    if str(text).lower() in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"json: expected a boolean, got {text!r}")


def _parse_field(text: str):
    if text in ("generic", "Q(q)"):
        return QQ_q
    if text in ("rational", "Q"):
        return QQ
    if text.startswith("zeta:"):
        n = _as_int("field", text[5:], 2, 512)
        return cyclotomic_field(n)
    raise UsageError(f"--field: expected generic, rational or zeta:n, got {text!r}")


def build_algebra(q_text: str, f_text: str, field_text: str | None = None,
                  degree_cap: int = DEFAULT_DEGREE_CAP) -> AlgebraSpec:
    """Interpret ``--q``, ``--f`` and the optional ``--field``."""
    q_text = q_text.strip()
    if q_text.startswith("zeta:"):
        n = _as_int("q", q_text[5:], 1, 512)
        if field_text is None:
            F = cyclotomic_field(n) if n >= 2 else QQ
            q = F.gen() if n >= 2 else F.one
        else:
            F = _parse_field(field_text)
            m = getattr(F, "n", None)
            if m is None or m % n:
                raise UsageError(f"--q zeta:{n} needs --field zeta:m with {n} | m")
            q = F.gen() ** (m // n)
    elif q_text == "generic":
        if field_text not in (None, "generic", "Q(q)"):
            raise UsageError("--q generic lives in the field Q(q)")
        F = QQ_q
        q = F.gen()
    else:
        F = _parse_field(field_text) if field_text is not None else QQ
        q = F.parse(q_text)
    if not q:
        raise UsageError("--q: q must be nonzero")
    coeffs = [F.parse(c) for c in f_text.split(",")] if f_text.strip() else []
    return AlgebraSpec(F, q, coeffs, degree_cap)


def parse_config(args: argparse.Namespace) -> RunConfig:
    """Merge built-in defaults, the config file and flags (flags win)."""
    values: dict[str, Any] = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None and flag is not False:
            values[key] = flag
    cfg = RunConfig()
    if "q" in values:
        cfg.q = str(values["q"])
    if "f" in values:
        cfg.f = str(values["f"])
    if "field" in values:
        cfg.field = str(values["field"])
    if "json" in values:
        cfg.json = _as_bool(values["json"])
    if "max_deg" in values:
        cfg.max_deg = _as_int("max_deg", values["max_deg"], 0, HARD_MAX_DEG)
    if "order" in values:
        cfg.order = _as_int("order", values["order"], 1, HARD_MAX_ORDER)
    if "seed" in values:
        cfg.seed = _as_int("seed", values["seed"], 0, 2 ** 63)
    if "degree_cap" in values:
        cfg.degree_cap = _as_int("degree_cap", values["degree_cap"], 1, 256)
    cfg.algebra = build_algebra(cfg.q, cfg.f, cfg.field, cfg.degree_cap)
    return cfg


# --- helpers ------------------------------------------------------------------------------


def algebra_json(alg: AlgebraSpec) -> dict:
    return {"field": str(alg.field), "q": str(alg.q), "f": alg.f_string(),
            "ord_q": _num(alg.ord_q), "graded": alg.graded}


def _num(x):
    return "infinity" if x == math.inf else x


def _scalar(alg: AlgebraSpec, text) -> Scalar:
    if isinstance(text, Scalar):
        return text
    return alg.field.parse(str(text))


def _element(alg: AlgebraSpec, text: str | None) -> Element | None:
    if text is None or not str(text).strip():
        return None
    return parse_element(alg, str(text))


def automorphism_from_json(alg: AlgebraSpec, data: dict) -> autos.Automorphism:
    """``{a, xi, h, tau}`` or ``{images: [u, v, w]}``."""
    if not isinstance(data, dict):
        raise UsageError("automorphism JSON must be an object")
    unknown = set(data) - {"a", "xi", "h", "tau", "images"}
    if unknown:
        raise UsageError(f"automorphism JSON: unknown keys {sorted(unknown)}")
    if "images" in data:
        imgs = data["images"]
        if not isinstance(imgs, list) or len(imgs) != 3:
            raise UsageError("images must list three element strings (u, v, w)")
        return autos.make_explicit(alg, [parse_element(alg, str(s)) for s in imgs])
    tau = _as_bool(data.get("tau", False))
    if "a" not in data and "xi" not in data and tau and alg.d is None:
        return autos.make_tau(alg)
    a = _scalar(alg, data.get("a", "1"))
    xi = _scalar(alg, data.get("xi", "1"))
    return autos.make_phi(alg, a, xi, _element(alg, data.get("h")), tau)


def _load_json_arg(text: str, flag: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc.msg})") from None


def _phi_from_args(alg: AlgebraSpec, args, flag: str = "phi") -> autos.Automorphism:
    text = getattr(args, flag, None)
    if text:
        return automorphism_from_json(alg, _load_json_arg(text, f"--{flag}"))
    data = {"a": args.a or "1", "xi": args.xi or "1", "tau": bool(args.tau)}
    if args.h:
        data["h"] = args.h
    return automorphism_from_json(alg, data)


def _group_from_args(alg: AlgebraSpec, args) -> invtheory.GroupSpec:
    if not args.gen:
        raise UsageError("give at least one --gen automorphism")
    gens = [automorphism_from_json(alg, _load_json_arg(g, "--gen")) for g in args.gen]
    return invtheory.generate_group(gens)


def _elements(xs: Sequence[Element]) -> list[str]:
    return [str(x) for x in xs]


# --- subcommands -----------------------------------------------------------------------------


def cmd_mul(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    x, y = parse_element(alg, args.x), parse_element(alg, args.y)
    prod = x * y
    return {"x": str(x), "y": str(y), "product": str(prod), "terms": prod.to_json()}


def identity_sweep(alg: AlgebraSpec, kmax: int, names: Sequence[str] | None = None) -> dict:
    results, skipped = [], []
    for name in names or centerlab.IDENTITY_NAMES:
        if not centerlab.identity_applicable(alg, name):
            skipped.append({"name": name, "reason": "hypothesis not met"})
            continue
        for k in range(1, kmax + 1):
            results.append(centerlab.closed_identity(alg, name, k).to_json())
    failing = [r for r in results if not r["passed"]]
    return {"results": results, "skipped": skipped, "passed": not failing,
            "first_failure": {"name": failing[0]["name"], "k": failing[0]["k"]} if failing else None}


def cmd_identities(cfg: RunConfig, args) -> dict:
    names = [args.name] if args.name else None
    report = identity_sweep(cfg.algebra, cfg.deg(6), names)
    if not report["passed"]:
        ff = report["first_failure"]
        raise Failed(report, f"identity {ff['name']} fails at k = {ff['k']}")
    return report


def cmd_omega(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    om = centerlab.omega(alg, verify=True)
    return {"omega": str(om), "central": True}


def cmd_center(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    K = cfg.deg(DEFAULT_MAX_DEG)
    basis = centerlab.center_basis(alg, K)
    return {"max_deg": K, "dimension": len(basis), "basis": _elements(basis)}


def cmd_normal(cfg: RunConfig, args) -> dict:
    x = parse_element(cfg.algebra, args.elem)
    return {"element": str(x), **centerlab.is_normal(x).to_json()}


def cmd_modules1d(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    roots = [_scalar(alg, r) for r in args.roots.split(",")] if args.roots else []
    pts = centerlab.one_dim_modules(alg, roots)
    out = {"modules": [{**p.to_json(), "verified": centerlab.verify_family(alg, p)} for p in pts]}
    if alg.is_monomial and alg.d is not None and alg.d >= 1:
        w = centerlab.witness_monomial_case(alg, _scalar(alg, args.eta))
        out["monomial_witness"] = {"point": w["point"].to_json(),
                                   "residuals": [str(r) for r in w["residuals"]], "valid": w["valid"]}
    if not all(m["verified"] for m in out["modules"]):
        raise Failed(out, "a returned module violates the relations")
    return out


def cmd_iso(cfg: RunConfig, args) -> dict:
    alpha = _scalar(cfg.algebra, args.alpha) if args.alpha is not None else None
    return centerlab.iso_map(cfg.algebra, args.kind, alpha).to_json()


def cmd_potential(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    if args.action == "show":
        pot = potential.superpotential(alg)
        return {"potential": str(pot), "orbit_form": str(potential.superpotential(alg, expanded=False)),
                "pieces": potential.piece_report(pot)}
    derivs = {b: str(x) for b, x in potential.relations_check(alg).items()}
    match = potential.derivatives_match_relations(alg)
    out = {"derivative_normal_forms": derivs, "matches_relations": match,
           "ok": all(v == "0" for v in derivs.values()) and all(match.values())}
    if not out["ok"]:
        raise Failed(out, "cyclic derivatives do not reproduce the relations")
    return out


def cmd_resolution(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    if args.d is not None:
        d = _as_int("d", args.d, 2, 16)
        alg = AlgebraSpec(alg.field, alg.q, [0] * d + [1], alg.degree_cap)
    M = potential.resolution_matrix(alg)
    out = {"d": alg.d, **M.to_json(), **potential.verify_complex(alg)}
    if not out["ok"]:
        raise Failed(out, "resolution matrix products are nonzero")
    return out


def cmd_auto(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    action = args.action
    if action == "make":
        phi = _phi_from_args(alg, args)
        return phi.to_json()
    if action == "check":
        if not args.images:
            raise UsageError("auto check needs --images 'U;V;W'")
        parts = args.images.split(";")
        if len(parts) != 3:
            raise UsageError("--images needs three ';'-separated elements")
        imgs = [parse_element(alg, p) for p in parts]
        res = centerlab.relation_residuals(alg, imgs)
        det = centerlab.linear_part_det(imgs)
        out = {"images": _elements(imgs), "residuals": _elements(res), "linear_det": str(det),
               "valid": all(r.is_zero() for r in res) and bool(det)}
        if not out["valid"]:
            raise Failed(out, "images do not define an automorphism")
        return out
    if action == "compose":
        phi = _phi_from_args(alg, args)
        if not args.psi:
            raise UsageError("auto compose needs --psi")
        psi = automorphism_from_json(alg, _load_json_arg(args.psi, "--psi"))
        comp = autos.compose(phi, psi)
        out = {"phi": phi.describe(), "psi": psi.describe(), "composite": comp.to_json()}
        if phi.parametric and psi.parametric and not phi.tau and not psi.tau:
            out["h_without_scalar"] = str(autos.printed_h3(phi, psi))
        return out
    if action == "diag":
        phi = _phi_from_args(alg, args)
        obs = autos.obstructed(phi)
        if obs:
            return {"phi": phi.describe(), "obstructed": [list(bc) for bc in obs]}
        return {"phi": phi.describe(), **autos.diagonalize(phi).to_json()}
    if action == "order":
        phi = _phi_from_args(alg, args)
        return {"phi": phi.describe(), "order": _num(autos.order(phi))}
    if action == "classify":
        rep = autos.solve_graded_autos(alg, include_affine=args.affine)
        out = rep.to_json()
        if not rep.certified:
            raise Failed(out, "a classification step failed its certificate")
        return out
    if action == "ozone":
        return cmd_ozone(cfg, args)
    raise UsageError(f"unknown auto action {action!r}")


def cmd_ozone(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    K = cfg.deg(DEFAULT_OZONE_DEG)
    cands = autos.finite_order_candidates(alg)
    return autos.ozone_filter(cands, K).to_json()


def cmd_trace(cfg: RunConfig, args) -> dict:
    phi = _phi_from_args(cfg.algebra, args)
    return {"phi": phi.describe(), **invtheory.trace_series(phi, cfg.order).to_json()}


def cmd_molien(cfg: RunConfig, args) -> dict:
    H = _group_from_args(cfg.algebra, args)
    mol = invtheory.molien(H, cfg.order)
    dims = invtheory.fixed_dims(H, cfg.order)
    out = {"group_size": len(H), "elements": [g.describe() for g in H.elements],
           "molien": mol.to_json(), "fixed_dims": dims, "agree": mol == dims}
    if not out["agree"]:
        raise Failed(out, "Molien series disagrees with fixed-space dimensions")
    return out


def cmd_reflections(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    if args.phi or args.a or args.xi or args.h or args.tau:
        phis = [_phi_from_args(alg, args)]
    else:
        phis = [p for p in autos.finite_order_candidates(alg) if not p.is_identity()]
    rows = []
    for phi in phis:
        try:
            rep = invtheory.reflection_report(phi, cfg.order).to_json()
        except BqError as exc:
            rep = {"is_reflection": None, "error": str(exc)}
        rows.append({"phi": phi.describe(), **rep})
    return {"order": cfg.order, "maps": rows,
            "reflections": [r["phi"] for r in rows if r.get("is_reflection")]}


def cmd_hdet(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    phi = _phi_from_args(alg, args)
    route = args.route
    if route == "laurent":
        value, how = invtheory.hdet_any(phi, cfg.order)
    elif route == "potential":
        value, how = invtheory.hdet_potential(phi), "potential"
    else:
        value, how = invtheory.hdet_koszul(invtheory.koszul_dual_d2(alg), phi), "koszul"
    return {"phi": phi.describe(), "route": how, "hdet": str(value)}


def cmd_group_report(cfg: RunConfig, args) -> dict:
    H = _group_from_args(cfg.algebra, args)
    rep = invtheory.group_report(H, cfg.order)
    return {"elements": [g.describe() for g in H.elements], **rep.to_json()}


def cmd_koszul(cfg: RunConfig, args) -> dict:
    alg = cfg.algebra
    D = invtheory.koszul_dual_d2(alg)
    out = {"dims": D.dims(), "basis": ["".join(w) or "1" for n in sorted(D.basis) for w in D.basis[n]],
           "listed_basis_independent": D.printed_basis_ok()}
    if args.phi or args.a or args.xi:
        phi = _phi_from_args(alg, args)
        K = cfg.order
        tr = D.trace(phi, K)
        prod = invtheory.trace_series(phi, K) * tr.substitute_neg()
        out["phi"] = phi.describe()
        out["dual_trace"] = tr.to_json()
        out["product_is_one"] = prod == [1] + [0] * K
    if not out["listed_basis_independent"] or out.get("product_is_one") is False:
        raise Failed(out, "Koszul dual check failed")
    return out


def cmd_check_all(cfg: RunConfig, args) -> dict:
    """Kernel fuzz, identity sweep, potential, resolution and central elements."""
    alg = cfg.algebra
    rng = random.Random(cfg.seed)
    checks: list[dict] = []

    def record(name: str, fn: Callable[[], tuple[bool, Any]]):
        try:
            ok, detail = fn()
            checks.append({"check": name, "status": "pass" if ok else "fail", "detail": detail})
        except UsageError as exc:
            checks.append({"check": name, "status": "skipped", "detail": str(exc)})

    def fuzz():
        a = confluence_fuzz(alg, rng, words=100, max_len=6)
        b = associativity_fuzz(alg, rng, triples=40, max_degree=3)
        return not a["failures"] and not b["failures"], {"confluence": a, "associativity": b}

    def idents():
        rep = identity_sweep(alg, cfg.deg(6))
        return rep["passed"], {"first_failure": rep["first_failure"], "count": len(rep["results"])}

    def pot():
        derivs = potential.relations_check(alg)
        return all(x.is_zero() for x in derivs.values()), {b: str(x) for b, x in derivs.items()}

    def res():
        r = potential.verify_complex(alg)
        return r["ok"], {"row_ok": r["row_ok"], "column_ok": r["column_ok"]}

    def om():
        return True, str(centerlab.omega(alg, verify=True))

    def inner():
        r = centerlab.check_inner(alg)
        return all(x.is_zero() for x in r), _elements(r)

    def special():
        found = {}
        for case in centerlab.SPECIAL_CASES:
            try:
                found.update({k: str(v) for k, v in centerlab.special_central(alg, case).items()})
            except UsageError:
                continue
        return True, found

    def hilbert():
        rep = invtheory.hilbert_report(alg, 12)
        return rep["identity_trace_agrees"] and rep["weight_form_agrees"], rep

    record("kernel_fuzz", fuzz)
    record("identities", idents)
    record("potential", pot)
    record("resolution", res)
    record("omega", om)
    record("inner_derivation", inner)
    record("special_central", special)
    record("hilbert", hilbert)
    out = {"seed": cfg.seed, "checks": checks, "passed": all(c["status"] != "fail" for c in checks)}
    if not out["passed"]:
        first = next(c for c in checks if c["status"] == "fail")
        raise Failed(out, f"check {first['check']} failed: {json.dumps(first['detail'], default=str)}")
    return out


COMMANDS: dict[str, Callable[[RunConfig, argparse.Namespace], dict]] = {
    "mul": cmd_mul, "identities": cmd_identities, "omega": cmd_omega, "center": cmd_center,
    "normal": cmd_normal, "modules1d": cmd_modules1d, "iso": cmd_iso, "potential": cmd_potential,
    "resolution": cmd_resolution, "auto": cmd_auto, "ozone": cmd_ozone, "trace": cmd_trace,
    "molien": cmd_molien, "reflections": cmd_reflections, "hdet": cmd_hdet,
    "group-report": cmd_group_report, "koszul": cmd_koszul, "check-all": cmd_check_all,
}


# --- argument parsing ------------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", help="generic | zeta:n | a rational such as -1 or 2 (default generic)")
    p.add_argument("--f", help="coefficients c0,c1,...,cd of f (default 0,0,1)")
    p.add_argument("--field", help="override the field: generic | rational | zeta:n")
    p.add_argument("--json", action="store_true", default=None, help="emit JSON")
    p.add_argument("--max-deg", dest="max_deg", help="degree bound for searches and sweeps")
    p.add_argument("--order", help=f"series truncation order (default {invtheory.DEFAULT_ORDER})")
    p.add_argument("--seed", help="seed for randomized checks (default 0)")
    p.add_argument("--degree-cap", dest="degree_cap", help="refuse products above this degree")
    p.add_argument("--config", help="flat key = value file; flags override it")


def _phi_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--phi", help='automorphism JSON, e.g. {"a": "-1", "xi": "1", "h": "", "tau": false}')
    p.add_argument("--a")
    p.add_argument("--xi")
    p.add_argument("--h")
    p.add_argument("--tau", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bqcalc", description="Exact computations in B_q(f).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _common(p)
        return p

    p = add("mul", "multiply two elements")
    p.add_argument("x")
    p.add_argument("y")
    p = add("identities", "compare closed commutation formulas with the kernel")
    p.add_argument("--name", choices=centerlab.IDENTITY_NAMES)
    add("omega", "the central element Omega")
    add("center", "basis of the center up to --max-deg")
    p = add("normal", "test whether an element is normal")
    p.add_argument("--elem", required=True)
    p = add("modules1d", "one-dimensional modules")
    p.add_argument("--roots", help="comma-separated nonzero roots of f")
    p.add_argument("--eta", default="1", help="parameter for the monomial-case witness")
    p = add("iso", "isomorphisms between members of the family")
    p.add_argument("--kind", required=True, choices=("swap_qinv", "rescale_monic", "shift_q1"))
    p.add_argument("--alpha")
    p = add("potential", "superpotential")
    p.add_argument("action", choices=("show", "check"))
    p = add("resolution", "resolution matrix products")
    p.add_argument("--d", help="use f = t^d")
    p = add("auto", "graded automorphisms")
    p.add_argument("action", choices=("make", "check", "compose", "diag", "order", "classify", "ozone"))
    _phi_flags(p)
    p.add_argument("--psi", help="second automorphism (JSON) for compose")
    p.add_argument("--images", help="'U;V;W' images for check")
    p.add_argument("--affine", action="store_true", help="classify with affine terms allowed")
    add("ozone", "finite-order candidates fixing the center")
    p = add("trace", "trace series of an automorphism")
    _phi_flags(p)
    for name, help_ in (("molien", "Molien series of a generated group"),
                        ("group-report", "hdet and reflection report for a generated group")):
        p = add(name, help_)
        p.add_argument("--gen", action="append", help="generator JSON (repeatable)")
    p = add("reflections", "reflection test for one map or all finite-order candidates")
    _phi_flags(p)
    p = add("hdet", "homological determinant")
    _phi_flags(p)
    p.add_argument("--route", choices=("laurent", "potential", "koszul"), default="laurent")
    p = add("koszul", "quadratic dual for f = t^2")
    _phi_flags(p)
    add("check-all", "kernel fuzz, identity sweep and structural checks")
    return parser


def _render_text(command: str, report: dict) -> str:
    lines = []

    def walk(prefix: str, value) -> None:
        if isinstance(value, dict):
            for k, v in value.items():
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{prefix}{k}:")
                    walk(prefix + "  ", v)
                else:
                    lines.append(f"{prefix}{k}: {_short(v)}")
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (dict, list)):
                    lines.append(f"{prefix}-")
                    walk(prefix + "  ", item)
                else:
                    lines.append(f"{prefix}- {_short(item)}")

    walk("", report)
    return "\n".join(lines)


def _short(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def _emit(cfg_json: bool, command: str, report: dict, stream) -> None:
    if cfg_json:
        stream.write(json.dumps(report, indent=2, default=str) + "\n")
    else:
        stream.write(_render_text(command, report) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    want_json = bool(args.json)
    header: dict = {"schema_version": SCHEMA_VERSION, "command": args.command}
    try:
        cfg = parse_config(args)
        want_json = cfg.json
        header["algebra"] = algebra_json(cfg.algebra)
        body = COMMANDS[args.command](cfg, args)
        _emit(want_json, args.command, {**header, **body, "status": "ok"}, sys.stdout)
        return 0
    except Failed as exc:
        _emit(want_json, args.command, {**header, **exc.report, "status": "verification_failed",
                                        "error": str(exc)}, sys.stdout)
        print(f"bqcalc: verification failed: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        _error(want_json, args.command, "verification_failed", exc)
        return 3
    except UsageError as exc:
        _error(want_json, args.command, "usage_error", exc)
        return 2


def _error(want_json: bool, command: str, status: str, exc: Exception) -> None:
    if want_json:
        sys.stdout.write(json.dumps({"schema_version": SCHEMA_VERSION, "command": command, "status": status,
                                     "error_type": type(exc).__name__, "error": str(exc)}, indent=2) + "\n")
    print(f"bqcalc: {type(exc).__name__}: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
