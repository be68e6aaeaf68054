"""Command-line surface: JSON documents in, a single JSON report out.

Input documents carry either a support set (rational exponent vectors) or
polynomial terms with parameter-dependent coefficients.  Reports echo the
command, digest the inputs, and serialize every rational as an exact "p/q"
string.  Field order is fixed so identical invocations produce identical
bytes.

Exit codes: 0 success, 2 input error, 3 mathematical precondition failure,
4 budget exceeded.
"""

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .apex import mu_constant_test
from .degenerate import b1d_detector, monomial_arc, valuative_falsifier
from .families import family
from .fans import is_regular_cone, newton_fan, regularize_fan, simplicialize
from .geometry import GeometryError
from .groebner import DEFAULT_BUDGET, BudgetExceeded
from .milnor import milnor_number, nondegeneracy_check
from .newton_number import newton_number_series, volume_vector
from .polyhedra import (SupportError, added_vertices, convenience_report,
                        lower_region, newton_polyhedron, support_set)
from .resolution import simultaneous_resolution

SCHEMA_VERSION = 1


class InputError(ValueError):
    """Malformed document or flags; maps to exit code 2."""


@dataclass(frozen=True)
class InputDocument:
    schema_version: int
    variables: tuple
    parameters: tuple
    support: object   # SupportSet, or None for term documents
    family: object    # DeformationFamily, or None for support documents


def _rational(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"{where}: rationals must be integers or 'p/q' "
                         f"strings, not {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"{where}: cannot parse rational {value!r}: {e}")
    raise InputError(f"{where}: expected a rational, got {type(value).__name__}")


def _int_vector(value, length, where):
    if not isinstance(value, list) or len(value) != length:
        raise InputError(f"{where}: expected a list of {length} integers")
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InputError(f"{where}: exponents must be integers >= 0")
        out.append(v)
    return tuple(out)


def _names(value, key):
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise InputError(f"'{key}' must be a list of names")
    return tuple(value)


def parse_input(obj):
    """Validate a raw JSON object into an InputDocument."""
    if not isinstance(obj, dict):
        raise InputError("input document must be an object")
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"schema_version must be {SCHEMA_VERSION}")
    variables = _names(obj.get("variables"), "variables")
    if not variables:
        raise InputError("'variables' must be nonempty")
    parameters = _names(obj.get("parameters", []), "parameters")
    n, m = len(variables), len(parameters)
    has_support = "support" in obj
    has_terms = "terms" in obj
    if has_support == has_terms:
        raise InputError("document needs exactly one of 'support' or 'terms'")

    if has_support:
        raw = obj["support"]
        if not isinstance(raw, list):
            raise InputError("'support' must be a list of vectors")
        points, seen = [], set()
        for k, vec in enumerate(raw):
            if not isinstance(vec, list) or len(vec) != n:
                raise InputError(f"support[{k}]: expected {n} coordinates")
            p = tuple(_rational(c, f"support[{k}]") for c in vec)
            if p in seen:
                raise InputError(f"support[{k}]: duplicate point {vec}")
            seen.add(p)
            points.append(p)
        try:
            s = support_set(n, points)
        except SupportError as e:
            raise InputError(str(e))
        return InputDocument(SCHEMA_VERSION, variables, parameters, s, None)

    raw = obj["terms"]
    if not isinstance(raw, list):
        raise InputError("'terms' must be a list")
    terms, seen = [], set()
    for k, rec in enumerate(raw):
        if not isinstance(rec, dict):
            raise InputError(f"terms[{k}]: expected an object")
        exp = _int_vector(rec.get("exponent"), n, f"terms[{k}].exponent")
        if exp in seen:
            raise InputError(f"terms[{k}]: duplicate exponent {list(exp)}")
        seen.add(exp)
        coeff = rec.get("coefficient")
        if not isinstance(coeff, list) or not coeff:
            raise InputError(f"terms[{k}].coefficient: expected a nonempty "
                             "list of {{s_exponent, value}} records")
        entries, seen_s = [], set()
        for j, ent in enumerate(coeff):
            where = f"terms[{k}].coefficient[{j}]"
            if not isinstance(ent, dict):
                raise InputError(f"{where}: expected an object")
            s_exp = _int_vector(ent.get("s_exponent"), m, f"{where}.s_exponent")
            if s_exp in seen_s:
                raise InputError(f"{where}: duplicate s_exponent")
            seen_s.add(s_exp)
            entries.append((s_exp, _rational(ent.get("value"), f"{where}.value")))
        terms.append((exp, tuple(entries)))
    try:
        fam = family(n, m, terms)
    except (SupportError, ValueError) as e:
        raise InputError(str(e))
    return InputDocument(SCHEMA_VERSION, variables, parameters, None, fam)


def input_to_json(doc):
    """Serialize an InputDocument back to its JSON object form."""
    out = {"schema_version": doc.schema_version,
           "variables": list(doc.variables),
           "parameters": list(doc.parameters)}
    if doc.support is not None:
        out["support"] = [[_fmt(c) for c in p] for p in doc.support.points]
    else:
        out["terms"] = [
            {"exponent": list(exp),
             "coefficient": [{"s_exponent": list(s), "value": _fmt(c)}
                             for s, c in coeff]}
            for exp, coeff in doc.family.terms]
    return out


def _fmt(x):
    return str(Fraction(x))


def _jsonable(x):
    """Recursive report serialization: Fractions become 'p/q' strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if x is None or isinstance(x, (bool, int, str)):
        return x
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _load_json(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}")
    return obj, hashlib.sha256(data).hexdigest()


def _load_input(path):
    obj, digest = _load_json(path)
    doc = parse_input(obj)
    return doc, {"path": path, "sha256": digest}


def _support_of(doc, command):
    """The support set a combinatorial command should operate on."""
    if doc.support is not None:
        return doc.support
    fam = doc.family
    try:
        if fam.n_params == 0:
            return fam.base().support()
        return fam.generic_support()
    except SupportError as e:
        raise InputError(f"{command}: {e}")


def _polynomial_of(doc, command):
    if doc.family is None or doc.parameters:
        raise InputError(f"{command} needs a 'terms' document without "
                         "parameters; coefficients matter here")
    return doc.family.base()


def _family_of(doc, command):
    if doc.family is None:
        raise InputError(f"{command} needs a 'terms' document")
    return doc.family


# --- report assembly --------------------------------------------------------

def _report(command, arguments, inputs, results, warnings):
    return {"schema_version": SCHEMA_VERSION,
            "command": command,
            "arguments": arguments,
            "inputs": inputs,
            "results": results,
            "warnings": list(warnings)}


def _render(doc, indent=0, out=None):
    """Plain-text rendering of a report tree for --pretty."""
    top = out is None
    if top:
        out = []
    pad = "  " * indent
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _render(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_render_leaf(v)}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                _render(v, indent + 1, out)
            else:
                out.append(f"{pad}- {_render_leaf(v)}")
    else:
        out.append(f"{pad}{_render_leaf(doc)}")
    if top:
        return "\n".join(out) + "\n"


def _render_leaf(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def _emit(doc, pretty):
    if pretty:
        sys.stdout.write(_render(doc))
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    for w in doc.get("warnings", ()):
        print(f"warning: {w}", file=sys.stderr)


def _convenience_json(report):
    return {"axis_convenient": report.axis_convenient,
            "missing_axes": list(report.missing_axes),
            "vertex_condition": {str(i): report.vertex_condition[i]
                                 for i in sorted(report.vertex_condition)},
            "convenient": report.convenient}


def _polytope_json(support):
    np_ = newton_polyhedron(support)
    return {"vertices": _jsonable(np_.vertices)}


def _cone_matrices(fan):
    return [_jsonable(c.rays) for c in fan.maximal]


# --- commands ---------------------------------------------------------------

def _cmd_nu(args):
    doc, digest = _load_input(args.file)
    s = _support_of(doc, "nu")
    conv = convenience_report(s)
    warnings = []
    results = {"convenience": _convenience_json(conv)}
    if conv.axis_convenient:
        vv = volume_vector(lower_region(s))
        results["mode"] = "exact"
        results["nu"] = _fmt(vv.newton_number())
        results["volume_vector"] = _jsonable(vv.V)
    elif args.series:
        series = newton_number_series(s, missing_axis_cap=args.cap)
        results["mode"] = "series"
        results["nu"] = _fmt(series.value)
        results["stabilized"] = series.stabilized
        results["tried_multiples"] = list(series.tried_m)
        results["augmented_axes"] = list(series.augmented_axes)
        if not series.stabilized:
            warnings.append("series did not stabilize: the value is only a "
                            "lower bound and the Newton number may be infinite")
    else:
        raise GeometryError(
            f"support has no point on axis {conv.missing_axes[0]}; exact "
            "Newton numbers need every axis covered (use --series)")
    if args.emit_polytope:
        results["polytope"] = _polytope_json(s)
    arguments = {"file": args.file, "series": args.series, "cap": args.cap}
    return _report("nu", arguments, [digest], results, warnings)


def _certificate_json(cert):
    return {"alpha": _jsonable(cert.alpha),
            "axes": list(cert.axes),
            "i": cert.i,
            "beta": _jsonable(cert.beta),
            "good": cert.good,
            "good_pairs": [{"i": i, "beta": _jsonable(b)}
                           for i, b in cert.good_pairs]}


def _cmd_mu_test(args):
    base_doc, base_digest = _load_input(args.base)
    def_doc, def_digest = _load_input(args.deformed)
    s = _support_of(base_doc, "mu-test")
    s_prime = _support_of(def_doc, "mu-test")
    res = mu_constant_test(s, s_prime)
    results = {
        "verdict": res.verdict,
        "nu_base": _fmt(res.nu_s),
        "nu_deformed": _fmt(res.nu_s_prime),
        "added_vertices": [_jsonable(a)
                           for a in added_vertices(s, s_prime)],
        "certificates": [_certificate_json(c) for c in res.certificates],
    }
    if args.emit_polytope:
        results["polytope"] = {"base": _polytope_json(s),
                               "deformed": _polytope_json(s_prime)}
    arguments = {"base": args.base, "deformed": args.deformed}
    return _report("mu-test", arguments, [base_digest, def_digest],
                   results, res.warnings)


def _cmd_resolve(args):
    doc, digest = _load_input(args.file)
    fam = _family_of(doc, "resolve")
    res = simultaneous_resolution(fam, skip_smoothness=args.skip_smoothness,
                                  budget=args.budget)
    charts = []
    for chart, tt, cert in zip(res.charts, res.transforms, res.certificates):
        charts.append({
            "generators": _jsonable(chart.generators),
            "m": _jsonable(tt.monomial_exponents),
            "dual_vertex": _jsonable(cert.dual_vertex),
            "status": cert.status,
            "witness": {k: _jsonable(v) for k, v in cert.witness},
        })
    results = {
        "nu": _fmt(res.report.nu),
        "added_vertices": _jsonable(res.report.verd),
        "fan": {"maximal_cones": _cone_matrices(res.fan)},
        "charts": charts,
        "counts": {k: v for k, v in res.report.status_counts},
        "nondegeneracy": res.report.nondegeneracy,
    }
    if args.emit_polytope:
        results["polytope"] = _polytope_json(fam.base().support())
    arguments = {"file": args.file, "skip_smoothness": args.skip_smoothness,
                 "budget": args.budget}
    return _report("resolve", arguments, [digest], results, res.report.warnings)


def _cmd_fan(args):
    doc, digest = _load_input(args.file)
    s = _support_of(doc, "fan")
    fan = newton_fan(s)
    results = {"ambient_dim": fan.ambient_dim,
               "maximal_cones": _cone_matrices(fan),
               "simplicial": [c.is_simplicial for c in fan.maximal],
               "regular": [c.is_simplicial and is_regular_cone(c)
                           for c in fan.maximal]}
    if args.emit_polytope:
        results["polytope"] = _polytope_json(s)
    return _report("fan", {"file": args.file}, [digest], results, [])


def _cmd_regularize(args):
    doc, digest = _load_input(args.file)
    s = _support_of(doc, "regularize")
    fan = regularize_fan(simplicialize(newton_fan(s)))
    results = {"ambient_dim": fan.ambient_dim,
               "maximal_cones": _cone_matrices(fan),
               "count": len(fan.maximal),
               "all_unimodular": all(is_regular_cone(c) for c in fan.maximal)}
    if args.emit_polytope:
        results["polytope"] = _polytope_json(s)
    return _report("regularize", {"file": args.file}, [digest], results, [])


def _cmd_milnor(args):
    doc, digest = _load_input(args.file)
    f = _polynomial_of(doc, "milnor")
    mu = milnor_number(f, budget=args.budget)
    results = {"mu": str(mu)}
    arguments = {"file": args.file, "budget": args.budget}
    return _report("milnor", arguments, [digest], results, [])


def _cmd_nondeg(args):
    doc, digest = _load_input(args.file)
    f = _polynomial_of(doc, "nondeg")
    rep = nondegeneracy_check(f, budget=args.budget)
    faces = [{"points": _jsonable(fc.points), "dim": fc.dim,
              "status": fc.status, "detail": fc.detail}
             for fc in rep.faces]
    results = {"verdict": rep.verdict, "faces": faces}
    warnings = [f"face {list(fc.points)} unchecked: {fc.detail}"
                for fc in rep.faces if fc.status == "unchecked"]
    arguments = {"file": args.file, "budget": args.budget}
    return _report("nondeg", arguments, [digest], results, warnings)


def _parse_arcs(obj, n, m):
    if not isinstance(obj, list):
        raise InputError("arcs file must be a JSON list of arc records")
    arcs = []
    for k, rec in enumerate(obj):
        if not isinstance(rec, dict):
            raise InputError(f"arcs[{k}]: expected an object")
        xo = rec.get("x_orders")
        so = rec.get("s_orders", [])
        if not isinstance(xo, list) or not isinstance(so, list):
            raise InputError(f"arcs[{k}]: x_orders/s_orders must be lists")
        where = f"arcs[{k}]"
        if len(xo) != n or len(so) != m:
            raise InputError(f"{where}: expected {n} x-orders and {m} s-orders")
        xc = rec.get("x_coeffs")
        sc = rec.get("s_coeffs")
        try:
            arcs.append(monomial_arc(
                xo, so,
                None if xc is None else [_rational(c, where) for c in xc],
                None if sc is None else [_rational(c, where) for c in sc]))
        except (SupportError, TypeError, ValueError) as e:
            raise InputError(f"{where}: {e}")
    return arcs


def _arc_json(arc):
    return {"x_orders": list(arc.x_orders), "s_orders": list(arc.s_orders),
            "x_coeffs": _jsonable(arc.x_coeffs),
            "s_coeffs": _jsonable(arc.s_coeffs)}


def _cmd_valuative(args):
    doc, digest = _load_input(args.file)
    fam = _family_of(doc, "valuative")
    arcs_obj, arcs_digest = _load_json(args.arcs)
    arcs = _parse_arcs(arcs_obj, fam.n_vars, fam.n_params)
    rep = valuative_falsifier(fam, arcs)
    out_arcs, warnings = [], []
    for k, v in enumerate(rep.arcs):
        rows = [{"parameter": r.parameter,
                 "lhs_order": r.lhs_order,
                 "lhs_vanishes": r.lhs_vanishes,
                 "rhs_order": r.rhs_order,
                 "rhs_exact": r.rhs_exact,
                 "verdict": r.verdict} for r in v.rows]
        out_arcs.append({"arc": _arc_json(v.arc), "verdict": v.verdict,
                         "comparisons": rows})
        if v.verdict == "indeterminate":
            warnings.append(f"arc {k} is indeterminate: leading forms cancel")
    results = {"falsified": rep.falsified, "disclaimer": rep.disclaimer,
               "arcs": out_arcs}
    arguments = {"file": args.file, "arcs": args.arcs}
    return _report("valuative", arguments,
                   [digest, {"path": args.arcs, "sha256": arcs_digest}],
                   results, warnings)


def _cmd_b1d(args):
    doc, digest = _load_input(args.file)
    fam = _family_of(doc, "b1d")
    try:
        j_axes = tuple(int(a) for a in args.axes.split(","))
    except ValueError:
        raise InputError(f"--axes: expected comma-separated integers, got "
                         f"{args.axes!r}")
    res = b1d_detector(fam, j_axes)
    results = {"j_axes": sorted(set(j_axes)), "found": res.found,
               "i": res.i, "beta": _jsonable(res.beta)}
    warnings = []
    if res.found:
        results["restriction"] = None
    else:
        sub = res.restriction
        results["restriction"] = input_to_json(InputDocument(
            SCHEMA_VERSION, doc.variables, doc.parameters, None, sub))
        warnings.append("no pattern point: deciding the restricted family "
                        "is as hard as the original problem; rerun the "
                        "testers on the emitted restriction")
    arguments = {"file": args.file, "axes": args.axes}
    return _report("b1d", arguments, [digest], results, warnings)


# --- entry point ------------------------------------------------------------

def _build_parser():
    top = argparse.ArgumentParser(
        prog="newtonmu",
        description="Newton polyhedra, Newton numbers, and mu-constancy "
                    "tools with exact rational arithmetic.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, polytope=True):
        p.add_argument("--pretty", action="store_true",
                       help="human-readable rendering instead of JSON")
        if polytope:
            p.add_argument("--emit-polytope", action="store_true",
                           help="include Newton polyhedron vertex lists")

    p = sub.add_parser("nu", help="Newton number of a support set")
    p.add_argument("file")
    p.add_argument("--series", action="store_true",
                   help="allow supports with empty axes via the sup procedure")
    p.add_argument("--cap", type=int, default=64,
                   help="largest axis multiple the sup procedure tries")
    common(p)
    p.set_defaults(run=_cmd_nu)

    p = sub.add_parser("mu-test", help="decide Newton number equality for a "
                                       "nested pair by the apex criterion")
    p.add_argument("base")
    p.add_argument("deformed")
    common(p)
    p.set_defaults(run=_cmd_mu_test)

    p = sub.add_parser("resolve", help="simultaneous monomial resolution "
                                       "charts for a deformation family")
    p.add_argument("file")
    p.add_argument("--skip-smoothness", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(p)
    p.set_defaults(run=_cmd_resolve)

    p = sub.add_parser("fan", help="dual Newton fan of a support set")
    p.add_argument("file")
    common(p)
    p.set_defaults(run=_cmd_fan)

    p = sub.add_parser("regularize", help="unimodular subdivision of the "
                                          "Newton fan")
    p.add_argument("file")
    common(p)
    p.set_defaults(run=_cmd_regularize)

    p = sub.add_parser("milnor", help="Milnor number at the origin")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(p, polytope=False)
    p.set_defaults(run=_cmd_milnor)

    p = sub.add_parser("nondeg", help="face-by-face nondegeneracy check")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(p, polytope=False)
    p.set_defaults(run=_cmd_nondeg)

    p = sub.add_parser("valuative", help="arc-based falsifier for the "
                                         "mu-constancy order inequality")
    p.add_argument("file")
    p.add_argument("--arcs", required=True,
                   help="JSON list of monomial arc records")
    common(p, polytope=False)
    p.set_defaults(run=_cmd_valuative)

    p = sub.add_parser("b1d", help="scan for a Kronecker-pattern support "
                                   "point outside the J-axes")
    p.add_argument("file")
    p.add_argument("--axes", required=True,
                   help="comma-separated 1-based axes of J")
    common(p, polytope=False)
    p.set_defaults(run=_cmd_b1d)
    return top


_EXIT_CODES = ((InputError, 2), (SupportError, 3), (GeometryError, 3),
               (BudgetExceeded, 4))


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.run(args)
    except tuple(e for e, _ in _EXIT_CODES) as exc:
        code = next(c for e, c in _EXIT_CODES if isinstance(exc, e))
        kind = {2: "input", 3: "precondition", 4: "budget"}[code]
        print(f"error: {exc}", file=sys.stderr)
        _emit(_report(args.command, {}, [],
                      {"error": {"type": kind, "message": str(exc)}}, []),
              args.pretty)
        return code
    _emit(doc, args.pretty)
    return 0


if __name__ == "__main__":
    sys.exit(main())
