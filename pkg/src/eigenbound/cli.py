"""Command-line front end: JSON problem files in, tables and CSV out.

Problem file layout::

    {
      "operator": {"family": "laplacian", "n": 2},        # or p_laplacian
      "domain":   {"shape": "box", "sides": [1, 1]},      #   (p, n), pucci
      "options":  {"k_max": 64, "tol": 1e-8,              #   (gamma, Gamma,
                   "oracle": false, "grid_h": 0.0078125,  #   n), infinity_
                   "emit_profile": "profile.csv",         #   laplacian,
                   "emit_field": "field.csv"}             #   gradient_limit
    }

Exactly one of "domain" / "inradius_only" must be present; "inradius_only"
takes a bare positive number R (plus optional "convex", default true) for
domains, bounded or not, known only through their inradius.  All numbers are
plain JSON decimals.  Exit codes: 0 success, 2 validation error, 3 numeric
failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import bounds, geometry, oracle, radial
from .bounds import InradiusOnly
from .exceptions import NumericError
from .radial import OperatorSpec


class ProblemError(ValueError):
    """Validation failure, carrying a JSON-pointer-ish location."""

    def __init__(self, pointer, message):
        super().__init__(f"{pointer}: {message}")


def _require_number(obj, pointer, minimum=None, strict=True):
    if not isinstance(obj, (int, float)) or isinstance(obj, bool) or not math.isfinite(obj):
        raise ProblemError(pointer, "expected a finite number")
    v = float(obj)
    if minimum is not None and (v <= minimum if strict else v < minimum):
        op = ">" if strict else ">="
        raise ProblemError(pointer, f"expected a number {op} {minimum}")
    return v


def _require_int(obj, pointer, minimum=1):
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ProblemError(pointer, "expected an integer")
    if obj < minimum:
        raise ProblemError(pointer, f"expected an integer >= {minimum}")
    return obj


def parse_operator(obj) -> OperatorSpec:
    if not isinstance(obj, dict):
        raise ProblemError("/operator", "expected an object")
    family = obj.get("family")
    if family == "laplacian":
        return OperatorSpec.laplacian(_require_int(obj.get("n", 2), "/operator/n"))
    if family == "p_laplacian":
        return OperatorSpec.p_laplacian(
            _require_number(obj.get("p"), "/operator/p", minimum=1.0),
            _require_int(obj.get("n", 2), "/operator/n"))
    if family == "infinity_laplacian":
        return OperatorSpec.infinity_laplacian()
    if family == "pucci":
        g = _require_number(obj.get("gamma"), "/operator/gamma", minimum=0.0)
        G = _require_number(obj.get("Gamma"), "/operator/Gamma", minimum=0.0)
        if g > G:
            raise ProblemError("/operator/gamma", "requires gamma <= Gamma")
        return OperatorSpec.pucci(g, G, _require_int(obj.get("n", 2), "/operator/n"))
    if family == "gradient_limit":
        return OperatorSpec.gradient_limit()
    raise ProblemError("/operator/family",
                       f"unknown family {family!r}; expected one of laplacian, "
                       "p_laplacian, infinity_laplacian, pucci, gradient_limit")


def parse_domain(obj):
    if not isinstance(obj, dict):
        raise ProblemError("/domain", "expected an object")
    shape = obj.get("shape")
    p = "/domain"
    try:
        if shape == "ball":
            return geometry.Ball(_require_number(obj.get("radius"), p + "/radius", 0.0),
                                 n=_require_int(obj.get("n", 2), p + "/n"))
        if shape == "box":
            sides = obj.get("sides")
            if not isinstance(sides, list) or not sides:
                raise ProblemError(p + "/sides", "expected a non-empty array")
            return geometry.Box(tuple(
                _require_number(s, f"{p}/sides/{i}", 0.0) for i, s in enumerate(sides)))
        if shape == "stadium":
            return geometry.Stadium(_require_number(obj.get("length"), p + "/length", 0.0),
                                    _require_number(obj.get("radius"), p + "/radius", 0.0))
        if shape == "polygon":
            verts = obj.get("vertices")
            if not isinstance(verts, list) or len(verts) < 3:
                raise ProblemError(p + "/vertices", "expected an array of >= 3 [x, y] pairs")
            return geometry.Polygon(verts)
        if shape == "l_shape":
            return geometry.LShape(_require_number(obj.get("leg"), p + "/leg", 0.0),
                                   _require_number(obj.get("width"), p + "/width", 0.0))
        if shape == "u_shape":
            return geometry.UShape(
                _require_number(obj.get("outer"), p + "/outer", 0.0),
                _require_number(obj.get("slot_width"), p + "/slot_width", 0.0),
                _require_number(obj.get("slot_depth"), p + "/slot_depth", 0.0))
        if shape == "cylinder":
            return geometry.Cylinder(_require_number(obj.get("radius"), p + "/radius", 0.0),
                                     _require_number(obj.get("height"), p + "/height", 0.0))
    except ValueError as exc:
        if isinstance(exc, ProblemError):
            raise
        raise ProblemError(p, str(exc)) from exc
    raise ProblemError(p + "/shape", f"unknown shape {shape!r}")


def parse_problem(doc: dict):
    """(operator, domain, options) from a problem-file dict."""
    if not isinstance(doc, dict):
        raise ProblemError("", "problem file must be a JSON object")
    unknown = set(doc) - {"operator", "domain", "inradius_only", "convex", "options"}
    if unknown:
        raise ProblemError(f"/{sorted(unknown)[0]}", "unknown key")
    if "operator" not in doc:
        raise ProblemError("/operator", "missing")
    op = parse_operator(doc["operator"])
    has_domain = "domain" in doc
    has_r = "inradius_only" in doc
    if has_domain == has_r:
        raise ProblemError("/domain",
                           "exactly one of 'domain' and 'inradius_only' is required")
    if has_domain:
        domain = parse_domain(doc["domain"])
    else:
        r = _require_number(doc["inradius_only"], "/inradius_only", 0.0)
        convex = doc.get("convex", True)
        if not isinstance(convex, bool):
            raise ProblemError("/convex", "expected a boolean")
        domain = InradiusOnly(r, convex=convex)
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ProblemError("/options", "expected an object")
    known = {"k_max", "tol", "oracle", "grid_h", "emit_profile", "emit_field"}
    for key in options:
        if key not in known:
            raise ProblemError(f"/options/{key}", "unknown option")
    if "k_max" in options:
        _require_int(options["k_max"], "/options/k_max")
    if "tol" in options:
        _require_number(options["tol"], "/options/tol", 0.0)
    if "grid_h" in options:
        _require_number(options["grid_h"], "/options/grid_h", 0.0)
    if "oracle" in options and not isinstance(options["oracle"], bool):
        raise ProblemError("/options/oracle", "expected a boolean")
    return op, domain, options


def _fmt(x) -> str:
    if x is None:
        return "-"
    return f"{x:.12g}"


def _emit_profile_csv(path: str, report: bounds.BoundReport, op: OperatorSpec,
                      points: int = 257):
    prof = report.certificate.profile
    lo, hi = prof.r_lo, prof.r_hi
    width = hi - lo
    rs = np.linspace(lo + 1e-9 * width, hi - 1e-9 * width, points)
    phi, dphi, _ = radial.evaluate(prof, rs)
    res = radial.residual(op, prof, report.certificate.lam, rs)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("r,phi,dphi,residual\n")
        for row in zip(rs, phi, dphi, res):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _emit_field_csv(path: str, grid: oracle.GridEigenResult):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("x,y,value\n")
        for row in grid.field_rows():
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _print_table(report: bounds.BoundReport, op: OperatorSpec, grid, out):
    rows = [
        ("operator", op.label()),
        ("R", _fmt(report.R)),
    ]
    if report.resolution:
        rows.append(("R resolution h", _fmt(report.resolution)))
    if report.delta_used is not None:
        rows.append(("delta", _fmt(report.delta_used)))
        rows.append(("R_delta", _fmt(report.r_delta_used)))
    if report.zero_gap is not None:
        zg = report.zero_gap
        rows.append(("zero gap", f"x={zg.x:.9g} y={zg.y:.9g} k={zg.k} family={zg.family}"))
    rows.append(("lower", _fmt(report.lower)))
    rows.append(("lower method", report.lower_method))
    rows.append(("upper", _fmt(report.upper)))
    rows.append(("upper method", report.upper_method or "-"))
    if report.rfk is not None:
        rows.append(("volume bound (RFK)", _fmt(report.rfk)))
    if grid is not None:
        rows.append(("oracle lambda_h", _fmt(grid.lambda_h)))
        rows.append(("oracle h", _fmt(grid.h)))
    cert = report.certificate.report
    rows.append(("certificate residual", _fmt(cert.max_residual)))
    rows.append(("certificate min slope", _fmt(cert.min_slope)))
    rows.append(("certificate verified", str(cert.verified).lower()))
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}", file=out)
    print("note: eigenvalues scale as 1/length^2 (1/length for gradient_limit)",
          file=out)


def _run_p_scan(op, domain, spec: str, quiet: bool, out) -> int:
    try:
        p_list = [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        print("error: --p-scan expects a comma-separated list of numbers",
              file=sys.stderr)
        return 2
    if not p_list:
        print("error: --p-scan list is empty", file=sys.stderr)
        return 2
    n = op.n if op.n is not None else 2
    if isinstance(domain, InradiusOnly):
        r = domain.inradius
    else:
        r = geometry.inradius(domain)
    target = (math.pi / (2.0 * r)) ** 2
    rows = bounds.p_limit_scan(n, r, p_list)
    if not quiet:
        print(f"{'p':>12} {'lower':>18} {'upper':>18} {'(pi/2R)^2':>18} "
              f"{'gap_lower':>12} {'gap_upper':>12}", file=out)
    for row in rows:
        if row.skipped:
            print(f"warning: {row.note}", file=out)
            continue
        if not quiet:
            print(f"{row.p:>12g} {row.lower:>18.12g} {row.upper:>18.12g} "
                  f"{target:>18.12g} {abs(row.lower - target):>12.3e} "
                  f"{abs(row.upper - target):>12.3e}", file=out)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="eigenbound",
        description="Certified principal-eigenvalue bounds from inradius "
                    "geometry and radial Bessel barriers.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="process a JSON problem file")
    run.add_argument("problem", help="path to the problem JSON file")
    run.add_argument("--json", dest="json_out", metavar="OUT",
                     help="write the machine-readable report to OUT")
    run.add_argument("--profile-csv", metavar="OUT",
                     help="write the certificate profile (r, phi, dphi, residual)")
    run.add_argument("--field-csv", metavar="OUT",
                     help="write the oracle eigenvector field (x, y, value)")
    run.add_argument("--k-max", type=int, metavar="N",
                     help="zero-pair scan depth (default 64)")
    run.add_argument("--tol", type=float, metavar="X",
                     help="certificate verification tolerance (default 1e-8)")
    run.add_argument("--oracle", action="store_true", default=None,
                     help="also run the finite-difference eigensolver")
    run.add_argument("--grid-h", type=float, metavar="H",
                     help="oracle grid spacing (default 1/128)")
    run.add_argument("--p-scan", metavar="P1,P2,...",
                     help="run the p -> infinity convergence scan instead")
    run.add_argument("--quiet", action="store_true",
                     help="suppress the human-readable table")
    args = parser.parse_args(argv)

    try:
        with open(args.problem, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read problem file: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: problem file is not valid JSON: {exc}", file=sys.stderr)
        return 2

    try:
        op, domain, options = parse_problem(doc)
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out = sys.stdout
    if args.p_scan is not None:
        return _run_p_scan(op, domain, args.p_scan, args.quiet, out)

    k_max = args.k_max if args.k_max is not None else options.get("k_max", bounds.DEFAULT_K_MAX)
    tol = args.tol if args.tol is not None else options.get("tol", bounds.DEFAULT_TOL)
    want_oracle = args.oracle if args.oracle is not None else options.get("oracle", False)
    grid_h = args.grid_h if args.grid_h is not None else options.get("grid_h", 1.0 / 128.0)
    emit_profile = args.profile_csv or options.get("emit_profile")
    emit_field = args.field_csv or options.get("emit_field")

    if k_max < 1:
        print("error: /options/k_max: expected an integer >= 1", file=sys.stderr)
        return 2
    if want_oracle:
        if isinstance(domain, InradiusOnly):
            print("error: the oracle needs a full 2D domain, not inradius_only",
                  file=sys.stderr)
            return 2
        if not (op.family == radial.LAPLACIAN and op.n == 2):
            print("error: the finite-difference oracle supports the "
                  "laplacian with n = 2 only", file=sys.stderr)
            return 2
        if geometry.dimension(domain) != 2:
            print("error: the finite-difference oracle is 2D only", file=sys.stderr)
            return 2

    try:
        report = bounds.full_report(op, domain, k_max=k_max, tol=tol)
        grid = None
        if want_oracle:
            grid = oracle.fd_laplacian_lambda1(domain, grid_h,
                                               want_eigenvector=bool(emit_field))
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3

    if not args.quiet:
        _print_table(report, op, grid, out)
    if args.json_out:
        payload = report.to_dict()
        if grid is not None:
            payload["oracle"] = {"lambda_h": grid.lambda_h, "h": grid.h,
                                 "iterations": grid.iterations}
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if emit_profile:
        _emit_profile_csv(emit_profile, report, op)
    if emit_field:
        if grid is None:
            print("error: --field-csv requires --oracle", file=sys.stderr)
            return 2
        _emit_field_csv(emit_field, grid)
    return 0


if __name__ == "__main__":
    sys.exit(main())
