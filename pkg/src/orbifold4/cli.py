"""Command-line front end.

Subcommands: `group classify|invariants`, `singularity resolve`,
`orbifold resolve`, `verify tameness|gluing|blowup`.  Every command supports
`--json` (deterministic payload: sorted keys, 17-significant-digit floats)
and `--quiet`.  Exit codes: 0 success, 2 invalid input, 3 unsupported math,
4 failed certificate.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cyclotomic import CyclotomicScalar
from .unitary import UMat2, NotUnitaryError
from .groups import (UnitaryGroup, Unsupported, NotFiniteWithinBound, builtin_group,
                     classify_element, generate_group, induced_cyclic_data,
                     stratum_class)
from .invariants import NotReflectionGroup, fundamental_invariants, molien
from .isotropy import (BUILTIN_SPECS, OrbifoldSpec, builtin_product, delta_set,
                       load_spec, spec_to_json, validate_spec)
from .resolution import (Incomplete, euler_char_resolution, exceptional_betti,
                         hj_resolve, resolution_betti)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3
EXIT_FAILED_CERT = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        self.code = code
        super().__init__(message)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return json.dumps(str(value))


def emit(report: dict, args) -> None:
    if getattr(args, "quiet", False):
        return
    if getattr(args, "json", False):
        print(_fmt(report))
        return
    for check in report.get("checks", []):
        print(f"[{check['status']}] {check['name']}")
    for key, val in sorted(report.get("results", {}).items()):
        print(f"{key}: {val}")


def _load_group(args) -> UnitaryGroup:
    if getattr(args, "builtin", None):
        try:
            return builtin_group(args.builtin)
        except KeyError as exc:
            raise CliError(str(exc), EXIT_INVALID)
    if getattr(args, "file", None):
        try:
            with open(args.file) as fh:
                obj = json.load(fh)
            gens = [UMat2.from_json(g) for g in obj["generators"]]
            return generate_group(gens, max_order=obj.get("max_order", 512))
        except (OSError, KeyError, ValueError, NotUnitaryError) as exc:
            raise CliError(f"invalid group file: {exc}", EXIT_INVALID)
        except NotFiniteWithinBound as exc:
            raise CliError(str(exc), EXIT_INVALID)
    raise CliError("need --builtin or --file", EXIT_INVALID)


def cmd_group_classify(args) -> dict:
    G = _load_group(args)
    kinds = {}
    for g in G:
        kinds[classify_element(g).kind] = kinds.get(classify_element(g).kind, 0) + 1
    results = {
        "order": G.order,
        "stratum": stratum_class(G),
        "reflection_subgroup_order": len(G.gamma_star),
        "quotient_order": G.gamma_prime.order,
        "element_kinds": kinds,
    }
    try:
        data = induced_cyclic_data(G)
        results["induced_cyclic"] = {"m": data.m, "q": data.q}
    except Unsupported as exc:
        results["induced_cyclic"] = {"unsupported": exc.reason}
    return {
        "command": "group classify",
        "results": results,
        "checks": [{"name": "group finite and closed", "status": "pass"}],
        "exit_status": EXIT_OK,
    }


def cmd_group_invariants(args) -> dict:
    G = _load_group(args)
    series = molien(G, args.degree)
    results = {"order": G.order, "molien": series.coefficients}
    checks = [{"name": f"molien prefix through degree {args.degree}", "status": "pass"}]
    try:
        basis = fundamental_invariants(G)
        results["invariants"] = {
            "f": _poly_str(basis.f), "g": _poly_str(basis.g),
            "degrees": list(basis.degrees),
        }
        ok = basis.degrees[0] * basis.degrees[1] == G.order
        checks.append({
            "name": "degree product equals group order",
            "status": "pass" if ok else "fail",
        })
    except NotReflectionGroup as exc:
        results["invariants"] = {"unsupported": str(exc)}
    return {
        "command": "group invariants",
        "results": results,
        "checks": checks,
        "exit_status": EXIT_OK,
    }


def _poly_str(p) -> str:
    bits = []
    for (a, b), c in sorted(p.terms.items(), reverse=True):
        mono = ("z^%d" % a if a else "") + ("w^%d" % b if b else "") or "1"
        cv = c.rational_value() if c.is_rational() else None
        coeff = "" if cv == 1 else (str(cv) + "*" if cv is not None else "(...)" )
        bits.append(coeff + mono)
    return " + ".join(bits) or "0"


def cmd_singularity_resolve(args) -> dict:
    try:
        chain = hj_resolve(args.m, args.q)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INVALID)
    return {
        "command": "singularity resolve",
        "results": {
            "m": chain.m, "q": chain.q,
            "chain": chain.coeffs,
            "curve_count": chain.curve_count,
            "intersection_matrix": chain.intersection_matrix(),
        },
        "checks": [
            {"name": "continued fraction round trip", "status": "pass"},
            {"name": "intersection matrix negative definite",
             "status": "pass" if chain.is_negative_definite() else "fail"},
        ],
        "exit_status": EXIT_OK,
    }


def _load_spec(args) -> OrbifoldSpec:
    if getattr(args, "example", None):
        name = args.example.replace("-", "_")
        if name == "product":
            m2 = [args.m2] if args.m2 else []
            return builtin_product([args.m] if args.m else [],
                                   m2, symmetric=args.symmetric)
        if name in BUILTIN_SPECS:
            return BUILTIN_SPECS[name]()
        raise CliError(f"unknown example {args.example!r}", EXIT_INVALID)
    if getattr(args, "spec", None):
        try:
            return load_spec(args.spec)
        except (OSError, KeyError, ValueError) as exc:
            raise CliError(f"invalid spec file: {exc}", EXIT_INVALID)
    raise CliError("need --example or --spec", EXIT_INVALID)


def cmd_orbifold_resolve(args) -> dict:
    spec = _load_spec(args)
    report = validate_spec(spec)
    if not report.valid:
        raise CliError(
            "spec invalid: " + "; ".join(report.structural_errors + report.semantic_errors),
            EXIT_INVALID,
        )
    try:
        profile = resolution_betti(spec)
    except Unsupported as exc:
        raise CliError(f"unsupported: {exc.reason}", EXIT_UNSUPPORTED)
    chi = euler_char_resolution(spec)
    results = {
        "delta": list(delta_set(spec).labels),
        "contributing_points": [
            {"label": lbl, "exceptional_betti": list(eb)}
            for lbl, eb in profile.contributing_points
        ],
        "betti": list(profile.betti),
        "provenance": list(profile.provenance),
        "euler_characteristic": (
            {"incomplete": chi.reason} if isinstance(chi, Incomplete) else chi
        ),
    }
    return {
        "command": "orbifold resolve",
        "results": results,
        "checks": [{"name": "spec validation", "status": "pass"}],
        "exit_status": EXIT_OK,
    }


def cmd_verify_tameness(args) -> dict:
    import numpy as np
    from .sympverify import (LocalModel, eval_omega_a, standard_acs, tameness_min)

    if args.model == "degenerate-fixture":
        rank2 = np.zeros((4, 4))
        rank2[0, 1], rank2[1, 0] = 1.0, -1.0
        pts = np.random.default_rng(args.seed).uniform(-0.3, 0.3, (200, 4))
        cert = tameness_min(
            lambda q: np.broadcast_to(rank2, np.asarray(q).shape[:-1] + (4, 4)),
            standard_acs, pts, region="degenerate fixture", grid="200 random samples",
        )
    elif args.model == "flat":
        model = LocalModel(m=args.m, a=args.a, delta0=1.0, delta2=args.delta2)
        ax = np.linspace(-model.delta2, model.delta2, args.grid)
        pts = np.stack(np.meshgrid(ax, ax, ax, ax, indexing="ij"), axis=-1).reshape(-1, 4)
        cert = tameness_min(
            lambda q: eval_omega_a(model, q, resolved=args.resolved),
            standard_acs, pts,
            region=f"cube side 2*{model.delta2}",
            grid=f"{args.grid}^4",
        )
    else:
        try:
            with open(args.model) as fh:
                obj = json.load(fh)
            model = LocalModel(**obj)
        except (OSError, TypeError, ValueError) as exc:
            raise CliError(f"invalid model: {exc}", EXIT_INVALID)
        ax = np.linspace(-model.delta2, model.delta2, args.grid)
        pts = np.stack(np.meshgrid(ax, ax, ax, ax, indexing="ij"), axis=-1).reshape(-1, 4)
        cert = tameness_min(
            lambda q: eval_omega_a(model, q, resolved=args.resolved),
            standard_acs, pts,
            region=f"cube side 2*{model.delta2}", grid=f"{args.grid}^4",
        )
    report = {
        "command": "verify tameness",
        "results": {"certificate": cert.to_json(),
                    "tolerance": 1e-9},
        "checks": [{"name": "tameness certificate",
                    "status": "pass" if cert.tame else "fail",
                    "min_quotient": cert.min_quotient}],
        "exit_status": EXIT_OK if cert.tame else EXIT_FAILED_CERT,
    }
    return report


def cmd_verify_gluing(args) -> dict:
    from .sympverify.fixtures import pipeline_problem
    from .sympverify.forms import PreconditionFailure, glue_forms

    if args.problem:
        try:
            with open(args.problem) as fh:
                obj = json.load(fh)
        except (OSError, ValueError) as exc:
            raise CliError(f"invalid problem file: {exc}", EXIT_INVALID)
    else:
        obj = {}
    params = {
        "m": obj.get("m", args.m), "a": obj.get("a", args.a),
        "eps1": obj.get("eps1", args.eps1),
        "eps2": obj.get("eps2", args.eps2),
        "eps3": obj.get("eps3", args.eps3),
    }
    try:
        problem = pipeline_problem(**params)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INVALID)
    try:
        delta, _, cert = glue_forms(problem, grid_n=args.grid)
    except PreconditionFailure as exc:
        raise CliError(f"precondition failed: {exc}", EXIT_FAILED_CERT)
    return {
        "command": "verify gluing",
        "results": {
            "problem": problem.description,
            "delta": delta,
            "certificate": cert.to_json(),
            "grid": f"{args.grid}^4",
        },
        "checks": [{"name": "glued form tame on full ball",
                    "status": "pass" if cert.tame else "fail",
                    "min_quotient": cert.min_quotient}],
        "exit_status": EXIT_OK if cert.tame else EXIT_FAILED_CERT,
    }


def cmd_verify_blowup(args) -> dict:
    from .sympverify.blowup import ChartOverlapError, blowup_model_check

    try:
        rep = blowup_model_check(args.m, args.lam, grid_n=args.grid)
    except ChartOverlapError as exc:
        raise CliError(str(exc), EXIT_FAILED_CERT)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INVALID)
    return {
        "command": "verify blowup",
        "results": {
            "certificate": rep.certificate.to_json(),
            "closedness_residual": rep.closedness_residual,
            "overlap_max_diff": rep.overlap_max_diff,
            "exceptional_area": rep.area,
            "exceptional_area_expected": rep.area_expected,
        },
        "checks": [{"name": "blow-up model certificate",
                    "status": "pass" if rep.ok else "fail"}],
        "exit_status": EXIT_OK if rep.ok else EXIT_FAILED_CERT,
    }


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a deterministic JSON report")
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=0, help="0 = all cores (advisory)")
    return common


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbifold4")
    common = _common_flags()
    sub = ap.add_subparsers(dest="topic", required=True)

    grp = sub.add_parser("group").add_subparsers(dest="action", required=True)
    for action, fn in (("classify", cmd_group_classify), ("invariants", cmd_group_invariants)):
        p = grp.add_parser(action, parents=[common])
        p.add_argument("--builtin")
        p.add_argument("--file")
        if action == "invariants":
            p.add_argument("--degree", type=int, default=8)
        p.set_defaults(func=fn)

    sing = sub.add_parser("singularity").add_subparsers(dest="action", required=True)
    p = sing.add_parser("resolve", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_singularity_resolve)

    orb = sub.add_parser("orbifold").add_subparsers(dest="action", required=True)
    p = orb.add_parser("resolve", parents=[common])
    p.add_argument("--example")
    p.add_argument("--spec")
    p.add_argument("--m", type=int)
    p.add_argument("--m2", type=int)
    p.add_argument("--symmetric", action="store_true")
    p.set_defaults(func=cmd_orbifold_resolve)

    ver = sub.add_parser("verify").add_subparsers(dest="action", required=True)
    p = ver.add_parser("tameness", parents=[common])
    p.add_argument("--model", required=True, help="'flat', 'degenerate-fixture', or a JSON file")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--a", type=float, default=0.1)
    p.add_argument("--delta2", type=float, default=0.25)
    p.add_argument("--grid", type=int, default=12)
    p.add_argument("--resolved", action="store_true")
    p.set_defaults(func=cmd_verify_tameness)
    p = ver.add_parser("gluing", parents=[common])
    p.add_argument("--problem")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--a", type=float, default=0.1)
    p.add_argument("--eps1", type=float, default=0.5)
    p.add_argument("--eps2", type=float, default=0.8)
    p.add_argument("--eps3", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=15)
    p.set_defaults(func=cmd_verify_gluing)
    p = ver.add_parser("blowup", parents=[common])
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--lam", type=float, default=0.1)
    p.add_argument("--grid", type=int, default=12)
    p.set_defaults(func=cmd_verify_blowup)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except Unsupported as exc:
        print(f"unsupported: {exc.reason}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    emit(report, args)
    return report.get("exit_status", EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
