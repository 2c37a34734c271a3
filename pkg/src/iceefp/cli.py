"""Command-line front end.

Every subcommand prints either a short text answer (default), a JSON document
``{"config", "results", "version"}`` or a CSV table with a fixed column order.
Exact rationals are written as "p/q" strings.  Exit status is 0 on success,
1 on invalid input and 2 when an internal cross-check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .boundary import ICE, WeightParams, h_fn, verify_ice_identities, verify_sum_rules
from .conjecture import efp_conjecture, verify_omega_relations
from .efp_exact import (
    ENUM_CAP,
    EfpQuery,
    InvariantViolation,
    asm_count,
    efp_enumerate,
    efp_mir_direct,
    enumerate_count,
    ik_decomposition,
)
from .numerics.asymptotics import arctic_samples
from .numerics.fredholm import fredholm_det_E, tw2
from .numerics.tw_study import tw_convergence_study

OUTPUT_DIR_ENV = "ICEEFP_OUTPUT_DIR"
FLOAT_TOL = 1e-7


class ValidationError(ValueError):
    """Bad command-line input; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _pq(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _dec(x, digits: int) -> str:
    # repr-free formatting keeps output locale independent
    return format(float(x), f".{digits}g")


def _require(cond: bool, message: str):
    if not cond:
        raise ValidationError(message)


# ---------------------------------------------------------------------------
# subcommands; each returns (results, text, csv_rows)


def cmd_asm(a):
    _require(a.N >= 1, "N must be >= 1")
    res = {"N": a.N, "A_N": asm_count(a.N)}
    if a.crosscheck:
        _require(a.N <= ENUM_CAP, f"enumeration cap is N <= {ENUM_CAP}")
        res["enumeration"] = enumerate_count(a.N)
        if res["enumeration"] != res["A_N"]:
            raise InvariantViolation(f"product formula {res['A_N']} != enumeration {res['enumeration']}")
    return res, str(res["A_N"]), [["N", "A_N"], [a.N, res["A_N"]]]


def _weights(a) -> WeightParams:
    if a.general is None:
        return ICE
    delta, t = a.general
    _require(t != 0, "t must be nonzero")
    return WeightParams(delta, t)


def cmd_h(a):
    _require(a.N >= 1, "N must be >= 1")
    w = _weights(a)
    coeffs = h_fn(a.N, w).coefficients
    res = {"N": a.N, "delta": _pq(w.delta), "t": _pq(w.t), "coefficients": [_pq(c) for c in coeffs]}
    rows = [["k", "coefficient", "decimal"]] + [[k, _pq(c), _dec(c, a.digits)] for k, c in enumerate(coeffs)]
    return res, " ".join(_pq(c) for c in coeffs), rows


def _efp_methods(q: EfpQuery, method: str, crosscheck: bool) -> dict:
    methods = {}
    r_ok = q.r == q.N - q.s and q.s >= 1
    wanted = ["enum", "mir", "det"] if crosscheck else [method]
    for m in wanted:
        if m == "enum":
            if q.N > ENUM_CAP:
                _require(crosscheck, f"enumeration cap is N <= {ENUM_CAP}")
                continue
            methods["enum"] = efp_enumerate(q)
        elif m == "mir":
            methods["mir"] = efp_mir_direct(q)
        elif m == "det":
            if not r_ok:
                _require(crosscheck, "method det needs r = N - s and s >= 1")
                continue
            methods["det"] = efp_conjecture(q.N, q.s)
    return methods


def cmd_efp(a):
    try:
        q = EfpQuery(a.N, a.r, a.s)
    except ValueError as exc:
        raise ValidationError(str(exc))
    methods = _efp_methods(q, a.method, a.crosscheck)
    value = methods[a.method] if a.method in methods else next(iter(methods.values()))
    res = {"N": q.N, "r": q.r, "s": q.s, "value": _pq(value), "decimal": _dec(value, a.digits),
           "methods": {k: _pq(v) for k, v in methods.items()}}
    if a.crosscheck:
        if len(set(methods.values())) > 1:
            raise InvariantViolation(f"exact methods disagree: {res['methods']}")
        if q.r == q.N - q.s and q.s >= 1:
            fl = fredholm_det_E(q.N, q.s)
            res["fredholm"] = _dec(fl, a.digits)
            if abs(fl - float(value)) > FLOAT_TOL:
                raise InvariantViolation(f"Fredholm determinant {fl} differs from {value}")
    rows = [["N", "r", "s", "method", "value", "decimal"]] + [
        [q.N, q.r, q.s, k, _pq(v), _dec(v, a.digits)] for k, v in methods.items()
    ]
    return res, f"{_pq(value)} {_dec(value, a.digits)}", rows


def _report_output(reports):
    lines, rows = [], [["report", "check", "pass", "lhs", "rhs"]]
    for rep in reports:
        lines.extend(rep.lines())
        for k, (lhs, rhs) in rep.checks.items():
            rows.append([rep.title, k, int(rep.passed(k)), str(lhs), str(rhs)])
    failed = [f"{rep.title}: {k}" for rep in reports for k in rep.failures()]
    return {"reports": [rep.as_dict() for rep in reports], "ok": not failed}, "\n".join(lines), rows, failed


def cmd_identities(a):
    _require(a.N >= 4, "identities need N >= 4")
    w = _weights(a)
    reports = [verify_sum_rules(a.N, w)]
    if w == ICE:
        reports.append(verify_ice_identities(a.N))
    res, text, rows, failed = _report_output(reports)
    if failed:
        raise InvariantViolation("failed: " + "; ".join(failed))
    return res, text, rows


def cmd_ik(a):
    _require(1 <= a.s < a.N, "need 1 <= s < N")
    dec = ik_decomposition(a.N, a.s)
    res = {"N": a.N, "s": a.s, "I": [_pq(v) for v in dec.values], "total": _pq(dec.total)}
    if a.crosscheck:
        ref = efp_mir_direct(EfpQuery(a.N, a.N - a.s, a.s))
        res["efp"] = _pq(ref)
        if ref != dec.total:
            raise InvariantViolation(f"sum of I_k {dec.total} != EFP {ref}")
    rows = [["k", "I_k", "decimal"]] + [[k, _pq(v), _dec(v, a.digits)] for k, v in enumerate(dec.values)]
    return res, " ".join(res["I"]), rows


def cmd_omega(a):
    _require(1 <= a.s < a.N, "need 1 <= s < N")
    res, text, rows, failed = _report_output([verify_omega_relations(a.N, a.s)])
    if failed:
        raise InvariantViolation("failed: " + "; ".join(failed))
    return res, text, rows


def cmd_tw2(a):
    _require(a.grid >= 20, "grid needs at least 20 nodes")
    out = tw2(a.sigma, a.grid, check=True)
    res = {"sigma": a.sigma, "F2": out.value, "grid": a.grid, **out.meta}
    return res, format(out.value, ".6f"), [["sigma", "F2"], [a.sigma, _dec(out.value, a.digits)]]


def _study_cell(args):
    N, sigma, grid = args
    return tw_convergence_study([N], [sigma], grid)[0]


def cmd_converge(a):
    _require(all(N >= 4 for N in a.Ns), "every N must be >= 4")
    _require(a.workers >= 1, "workers must be >= 1")
    cells = [(N, sigma, a.grid) for sigma in a.sigmas for N in a.Ns]
    if a.workers == 1:
        study = [_study_cell(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=a.workers) as pool:
            study = list(pool.map(_study_cell, cells))
    cols = ["N", "sigma", "s", "F", "F2", "error"]
    rows = [cols] + [[r.N, r.sigma, r.s] + [_dec(getattr(r, c), a.digits) for c in cols[3:]] for r in study]
    res = {"rows": [r.as_dict() for r in study]}
    text = "\n".join(",".join(str(x) for x in row) for row in rows)
    return res, text, rows


def cmd_arctic(a):
    _require(a.samples >= 2, "need at least two samples")
    pts = arctic_samples(a.samples)
    rows = [["x", "y"]] + [[_dec(x, a.digits), _dec(y, a.digits)] for x, y in pts]
    res = {"points": [[x, y] for x, y in pts]}
    return res, "\n".join(",".join(map(str, r)) for r in rows), rows


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="iceefp", description="Exact and asymptotic emptiness formation probability tools.")
    p.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--digits", type=int, default=12, help="significant digits for decimals")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("asm", parents=[common], help="number of alternating sign matrices")
    s.add_argument("N", type=int)
    s.add_argument("--crosscheck", action="store_true", help="compare with transfer-matrix enumeration")
    s.set_defaults(func=cmd_asm)

    s = sub.add_parser("h", parents=[common], help="coefficients of the boundary function h_N")
    s.add_argument("N", type=int)
    s.add_argument("--general", nargs=2, type=_fraction, metavar=("DELTA", "T"))
    s.set_defaults(func=cmd_h)

    s = sub.add_parser("efp", parents=[common], help="exact emptiness formation probability")
    s.add_argument("N", type=int)
    s.add_argument("r", type=int)
    s.add_argument("s", type=int)
    s.add_argument("--method", choices=["enum", "mir", "det"], default="mir")
    s.add_argument("--crosscheck", action="store_true", help="run all applicable methods and compare")
    s.set_defaults(func=cmd_efp)

    s = sub.add_parser("identities", parents=[common], help="sum rules and ice-point identities")
    s.add_argument("N", type=int)
    s.add_argument("--general", nargs=2, type=_fraction, metavar=("DELTA", "T"))
    s.set_defaults(func=cmd_identities)

    s = sub.add_parser("ik", parents=[common], help="split of the EFP by residues at 0 and 1")
    s.add_argument("N", type=int)
    s.add_argument("s", type=int)
    s.add_argument("--crosscheck", action="store_true")
    s.set_defaults(func=cmd_ik)

    s = sub.add_parser("omega", parents=[common], help="anti-diagonal conjugation relations")
    s.add_argument("N", type=int)
    s.add_argument("s", type=int)
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("tw2", parents=[common], help="GUE Tracy-Widom distribution F2")
    s.add_argument("sigma", type=float)
    s.add_argument("--grid", type=int, default=60)
    s.set_defaults(func=cmd_tw2)

    s = sub.add_parser("converge", parents=[common], help="finite-N EFP against F2")
    s.add_argument("--Ns", type=int, nargs="+", required=True)
    s.add_argument("--sigmas", type=float, nargs="+", required=True)
    s.add_argument("--grid", type=int, default=60)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("arctic", parents=[common], help="points on the arctic curve")
    s.add_argument("--samples", type=int, default=11)
    s.set_defaults(func=cmd_arctic)
    return p


def _config(a) -> dict:
    skip = {"func", "output", "format"}
    out = {}
    for k, v in sorted(vars(a).items()):
        if k in skip:
            continue
        if isinstance(v, Fraction):
            v = _pq(v)
        elif isinstance(v, list):
            v = [_pq(x) if isinstance(x, Fraction) else x for x in v]
        out[k] = v
    return out


def _render(a, results, text, rows) -> str:
    if a.format == "json":
        return json.dumps({"config": _config(a), "results": results, "version": __version__},
                          indent=2, sort_keys=True, default=str) + "\n"
    if a.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"# iceefp {__version__} {json.dumps(_config(a), sort_keys=True, default=str)}"])
        writer.writerows(rows)
        return buf.getvalue()
    return text + "\n"


def _output_path(path: str) -> str:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def main(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
        _require(a.digits >= 1, "digits must be >= 1")
        results, text, rows = a.func(a)
        out = _render(a, results, text, rows)
        if a.output:
            with open(_output_path(a.output), "w", encoding="utf-8", newline="") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
        return 0
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, ValueError) as exc:
        print(f"error: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
