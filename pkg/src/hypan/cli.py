"""``hyp``: batch command line over the library.

Every response is a JSON object. Failures carry ``{"error": {"kind", "message", ...}}``
and exit nonzero: 2 for usage errors (bad flags, unparsable numbers or
expressions, unreadable files), 1 for errors raised while computing.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import clifford, contour, corpus, expr, roots, suite, wavephys
from .diffcalc import RectGrid, cr_check, derivative, partials
from .errors import HypError, SuiteFailure, UsageError
from .hypercore import HNumber, format_hnumber, parse_hnumber

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


@dataclass
class CliRequest:
    command: str
    params: dict = field(default_factory=dict)


@dataclass
class CliResponse:
    payload: dict
    exit_code: int = EXIT_OK


@contextmanager
def _reading(what):
    """Report failures while reading an input as usage errors."""
    try:
        yield
    except UsageError:
        raise
    except HypError as exc:
        err = UsageError(f"{what}: {exc}", exc.pos)
        err.cause = exc
        err.input = what
        raise err from exc


def _usage_json(exc):
    cause = getattr(exc, "cause", None)
    if cause is None:
        return exc.to_json()
    # keep the underlying kind (e.g. SyntaxError with its expected tokens)
    out = cause.to_json()
    out["input"] = exc.input
    return out


def _need(params, key, flag):
    value = params.get(key)
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _hnum(text, what):
    with _reading(what):
        return parse_hnumber(text)


def _field(src, var="z"):
    with _reading("expression"):
        return expr.field_from_expr(src, var)


def _floats(text, n, what):
    try:
        vals = [float(v) for v in str(text).split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma-separated numbers, got {text!r}")
    return vals


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_eval(p):
    src = _need(p, "expr", "-e/--expr")
    if p.get("t") is not None:
        with _reading("expression"):
            ast = expr.parse(src, var="t")
        t = _floats(p["t"], 1, "-t")[0]
        return {"expr": src, "t": t, "value": float(expr.evaluate(ast, t, mode="real"))}
    with _reading("expression"):
        ast = expr.parse(src)
    z = _hnum(p["z"], "-z") if p.get("z") is not None else None
    if z is None and _uses_var(ast):
        raise UsageError("the expression depends on z; pass -z")
    value = expr.evaluate(ast, z)
    out = {"expr": src, "value": value.to_json(), "text": format_hnumber(value)}
    if z is not None:
        out["z"] = z.to_json()
    return out


def _uses_var(node):
    if isinstance(node, expr.Var):
        return True
    return any(_uses_var(getattr(node, a)) for a in ("operand", "left", "right", "base", "arg")
               if hasattr(node, a))


def _cmd_diff(p):
    f = _field(_need(p, "expr", "-e/--expr"))
    z = _hnum(_need(p, "z", "-z"), "-z")
    d = derivative(f, z, tol=p.get("tol") or 1e-6)
    parts = partials(f, (z.re, z.im))
    return {
        "z": z.to_json(),
        "derivative": d.value.to_json(),
        "along_i": d.along_i.to_json(),
        "differentiable": d.agrees,
        "partials": {k: float(v) for k, v in parts.values.items()},
    }


def _cmd_cr_check(p):
    f = _field(_need(p, "expr", "-e/--expr"))
    if p.get("grid"):
        x0, x1, y0, y1, n = _floats(p["grid"], 5, "--grid")
        with _reading("--grid"):
            grid = RectGrid(x0, x1, y0, y1, int(n), int(n))
    else:
        grid = corpus.ANALYSIS_GRID
    reports = cr_check(f, grid, tol=p.get("tol") or 1e-6)
    return {
        "satisfied": all(r.satisfied for r in reports),
        "nodes": len(reports),
        "failed": sum(not r.satisfied for r in reports),
        "reports": [r.to_json() for r in reports],
    }


def _combined_terms(spec, src_override):
    src = src_override or spec.get("expr")
    if not src:
        raise UsageError("combined spec needs an expr field or -e")
    f = _field(src)
    terms = []
    with _reading("combined spec"):
        for term in spec.get("terms", []):
            terms.append((f, corpus.load_curve(term["curve"]), float(term.get("sign", 1))))
        prefactor = None
        if spec.get("prefactor") is not None:
            prefactor = expr.evaluate(expr.parse(str(spec["prefactor"])), None)
    if not terms:
        raise UsageError("combined spec needs a nonempty terms list")
    return src, terms, prefactor


def _cmd_integrate(p):
    mode = p.get("mode") or "plain"
    curve_ref = _need(p, "curve", "--curve")
    if mode == "combined":
        with _reading("--curve"):
            spec = corpus.load_json(curve_ref)
        src, terms, prefactor = _combined_terms(spec, p.get("expr"))
        kw = {"tol": p["tol"]} if p.get("tol") else {}
        res = contour.integrate_combined(terms, prefactor=prefactor, **kw)
        return {"mode": mode, "expr": src, **res.to_json()}
    f = _field(_need(p, "expr", "-e/--expr"))
    with _reading("--curve"):
        c = corpus.load_curve(curve_ref)
    kw = {"tol": p["tol"]} if p.get("tol") else {}
    if mode == "plain":
        if not c.finite:
            raise UsageError("plain mode needs a finite curve; use --mode improper")
        res = contour.integrate(f, c, **kw)
    elif mode == "pv":
        res = contour.integrate_pv(f, c, **kw)
    elif mode == "improper":
        res = contour.integrate_improper(f, c, **kw)
    else:
        raise UsageError(f"unknown mode {mode!r}")
    return {"mode": mode, **res.to_json()}


def _cmd_roots(p):
    if p.get("sqrt") is not None:
        z = _hnum(p["sqrt"], "--sqrt")
        if p.get("branch") is not None:
            return {"z": z.to_json(), "branch": p["branch"],
                    "root": roots.sqrt_branch(z, p["branch"]).to_json()}
        rs = roots.sqrt_all(z)
        return {"z": z.to_json(), "count": len(rs), **rs.to_json()}
    if p.get("quadratic") is not None:
        parts = str(p["quadratic"]).split(",")
        if len(parts) != 3:
            raise UsageError("--quadratic needs three comma-separated coefficients a,b,c")
        coeffs = tuple(_hnum(s, "--quadratic") for s in parts)
        rs = roots.quadratic_solve(*coeffs)
        return {"coefficients": [c.to_json() for c in coeffs], "count": len(rs),
                "max_residual": max((roots.residual(coeffs, z) for z in rs), default=0.0),
                **rs.to_json()}
    raise UsageError("roots needs --sqrt or --quadratic")


def _mv_json(A):
    return {"text": clifford.format_multivector(A),
            "coeffs": {A.sig.blade_name(m): float(c) for m, c in enumerate(A.coeffs) if c != 0.0}}


def _cmd_clifford(p):
    with _reading("--signature"):
        sig = clifford.parse_signature(p.get("signature") or "hyp")
    action = _need(p, "action", "action")
    operands = list(p.get("operands") or [])
    arity = {"product": 2, "grade": 1, "reversion": 1, "table": 0}
    if action not in arity:
        raise UsageError(f"unknown clifford action {action!r}")
    if len(operands) != arity[action]:
        raise UsageError(f"{action} takes {arity[action]} operand(s), got {len(operands)}")
    with _reading("multivector"):
        mvs = [clifford.parse_multivector(sig, s) for s in operands]
    out = {"signature": str(sig)}
    if action == "product":
        out["result"] = _mv_json(mvs[0] * mvs[1])
    elif action == "grade":
        r = p.get("grade")
        if r is None:
            raise UsageError("grade needs --grade")
        out["result"] = _mv_json(clifford.grade(mvs[0], r))
    elif action == "reversion":
        out["result"] = _mv_json(clifford.reversion(mvs[0]))
    else:
        idx, sign = sig.tables()
        names = [sig.blade_name(m) for m in range(sig.dim)]
        out["blades"] = names
        out["table"] = [[("-" if sign[i, j] < 0 else "") + names[idx[i, j]] for j in range(sig.dim)]
                        for i in range(sig.dim)]
    return out


def _cmd_wave(p):
    with _reading("--g"):
        g = expr.real_function(_need(p, "g", "--g"), var="s")
    with _reading("--h"):
        h = expr.real_function(_need(p, "h", "--h"), var="s")
    axis = p.get("axis") or "y"
    x, y = _floats(_need(p, "at", "--at"), 2, "--at")
    with _reading("--axis"):
        data = wavephys.AxisData(axis, g, h)
    literal = bool(p.get("paper_literal"))
    value = wavephys.dalembert_eval(data, (x, y), paper_literal=literal)
    return {"axis": axis, "at": [x, y], "value": value, "paper_literal": literal}


def _cmd_paper_suite(p):
    results = suite.run_suite(threads=int(p.get("threads") or 1))
    n_pass = sum(r.passed for r in results)
    out = {"checks": [r.to_json() for r in results], "passed": n_pass, "total": len(results),
           "_table": suite.format_table(results)}
    if n_pass != len(results):
        failed = [r.name for r in results if not r.passed]
        out["error"] = SuiteFailure(f"{len(failed)} of {len(results)} checks failed: "
                                    + ", ".join(failed)).to_json()
    return out


COMMANDS = {
    "eval": _cmd_eval,
    "diff": _cmd_diff,
    "cr-check": _cmd_cr_check,
    "integrate": _cmd_integrate,
    "roots": _cmd_roots,
    "clifford": _cmd_clifford,
    "wave": _cmd_wave,
    "paper-suite": _cmd_paper_suite,
}


def _clean(obj):
    """Make a payload strict JSON: non-finite floats become strings."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else ("nan" if math.isnan(x) else ("inf" if x > 0 else "-inf"))
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def run(request: CliRequest) -> CliResponse:
    """Execute one command; never raises for library errors."""
    handler = COMMANDS.get(request.command)
    try:
        if handler is None:
            raise UsageError(f"unknown command {request.command!r}")
        payload = handler(request.params)
    except UsageError as exc:
        return CliResponse({"error": _usage_json(exc)}, EXIT_USAGE)
    except HypError as exc:
        return CliResponse({"error": exc.to_json()}, EXIT_COMPUTE)
    payload = _clean(payload)
    return CliResponse(payload, EXIT_COMPUTE if "error" in payload else EXIT_OK)


# ---------------------------------------------------------------------------
# argument parsing and output
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    fmt = _Parser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="output", action="store_const", const="json",
                   help="print JSON (default)")
    g.add_argument("--text", dest="output", action="store_const", const="text",
                   help="print a readable summary")

    parser = _Parser(prog="hyp", description="Computations on the hyperbolic (split-complex) plane.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, parents=[fmt], help=help_)

    a = add("eval", "evaluate an expression")
    a.add_argument("-e", "--expr")
    a.add_argument("-z", help="point such as 1+2i")
    a.add_argument("-t", help="evaluate a real expression in t at this value instead")

    a = add("diff", "derivative and partials at a point")
    a.add_argument("-e", "--expr")
    a.add_argument("-z")
    a.add_argument("--tol", type=float)

    a = add("cr-check", "hyperbolic Cauchy-Riemann check on a grid")
    a.add_argument("-e", "--expr")
    a.add_argument("--grid", help="x0,x1,y0,y1,n (default: [1,2]x[-0.5,0.5], 11 nodes per side)")
    a.add_argument("--tol", type=float)

    a = add("integrate", "contour integral along a curve file")
    a.add_argument("-e", "--expr")
    a.add_argument("--curve", help="curve JSON (a path or a bundled fixture name)")
    a.add_argument("--mode", choices=["plain", "pv", "improper", "combined"], default="plain")
    a.add_argument("--tol", type=float)

    a = add("roots", "square roots and quadratic equations")
    a.add_argument("--sqrt")
    a.add_argument("--branch", type=int, choices=[1, 2, 3, 4])
    a.add_argument("--quadratic", help="coefficients a,b,c of a z^2 + b z + c")

    a = add("clifford", "multivector products, grades, reversion and Cayley tables")
    a.add_argument("action", choices=["product", "grade", "reversion", "table"])
    a.add_argument("operands", nargs="*")
    a.add_argument("--signature", default="hyp", help="p,q or hyp (default)")
    a.add_argument("--grade", type=int)

    a = add("wave", "d'Alembert reconstruction from axis data")
    a.add_argument("--g", help="value along the axis, an expression in s")
    a.add_argument("--h", help="normal rate along the axis, an expression in s")
    a.add_argument("--axis", choices=["x", "y"], default="y")
    a.add_argument("--at", help="x,y")
    a.add_argument("--paper-literal", action="store_true",
                   help="omit the 1/2 in front of the rate integral")

    a = add("paper-suite", "run every reproduction check")
    a.add_argument("--threads", type=int, default=1)
    return parser


def _text(payload):
    if "_table" in payload:
        out = payload["_table"]
        if "error" in payload:
            out += f"\nerror: {payload['error']['message']}"
        return out
    if "error" in payload:
        return f"error ({payload['error']['kind']}): {payload['error']['message']}"
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict) and set(v) == {"re", "im"}:
            v = format_hnumber(HNumber(v["re"], v["im"]))
        elif isinstance(v, list) and v and isinstance(v[0], dict) and set(v[0]) == {"re", "im"}:
            v = ", ".join(format_hnumber(HNumber(w["re"], w["im"])) for w in v)
        elif isinstance(v, (dict, list)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        resp = CliResponse({"error": exc.to_json()}, EXIT_USAGE)
        output = "json"
    else:
        params = {k: v for k, v in vars(ns).items() if k not in ("command", "output")}
        resp = run(CliRequest(ns.command, params))
        output = ns.output or "json"
    if output == "text":
        print(_text(resp.payload))
    else:
        print(json.dumps({k: v for k, v in resp.payload.items() if not k.startswith("_")}))
    return resp.exit_code


if __name__ == "__main__":
    sys.exit(main())
