"""Command-line front end: job dispatch, reports and the gap report.

Usage::

    gapdim tanaka --preset free235 --seed 0
    gapdim killing --preset lemma1 --args 3 --d 2 --seed 0
    gapdim batch --input jobs.json --format machine --seed 0
    gapdim gap-report --seed 0
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from . import __version__
from . import distributions as dg
from . import integrals as gi
from . import lie
from . import symbols as js
from . import tanaka as tk
from .exact import ExpressionError, parse_rational
from .jobs import (
    COMMANDS,
    SCHEMA,
    JobError,
    JobSpec,
    _call_preset,
    build_distribution,
    build_fields,
    build_gnla,
    build_liealg,
    build_metric,
    build_symbol,
    job_from_dict,
)
from .symbols import NotFiniteType

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2

DEFAULT_KIND = {
    "symbol": "symbol",
    "tanaka": "gnla",
    "flag": "monge",
    "polysym": "monge",
    "killing": "metric",
    "liealg": "liealg",
    "symcheck": "symcheck",
}


# ----------------------------------------------------------------------
# JSON normal form


def to_json(value):
    """Exact values as strings, tuples as lists, dict keys as strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    return str(value)


def dumps(report) -> str:
    return json.dumps(to_json(report), sort_keys=True, indent=2) + "\n"


# ----------------------------------------------------------------------
# symcheck pairs (distribution, fields)


def _w7_pair(m=3):
    return dg.monge_distribution(dg.power(m, 2)), dg.w7_fields(m)


def _submax26_pair(eps=1):
    return dg.monge_distribution(dg.submax26(eps)), dg.submax26_fields(eps)


def _submax_pair(n, eps=1):
    e = Fraction(eps)
    return dg.monge_distribution(dg.perturbed(n, n - 1, e * e)), dg.submax_fields(n, e)


SYMCHECK_PRESETS = {"w7": _w7_pair, "submax26": _submax26_pair, "submax": _submax_pair}


def _symcheck_inputs(inp, params):
    if "preset" in inp:
        return _call_preset(SYMCHECK_PRESETS, inp, params)
    if "distribution" not in inp or "symmetries" not in inp:
        raise JobError("symcheck input needs a preset or both 'distribution' and 'symmetries'")
    return build_distribution(inp["distribution"], params), build_fields(inp["symmetries"], params)


# ----------------------------------------------------------------------
# commands; each returns (value, details, provenance)


def _seed(job: JobSpec) -> int:
    return int(job.options.get("seed", 0))


def _cmd_symbol(job, params):
    obj, g0_dim = build_symbol(job.input, params)
    cap = job.options.get("cap", 10)
    if isinstance(obj, list):
        dims, status = obj, "given"
        bound = js.dimension_bound(dims, g0_dim) if g0_dim is not None else None
    else:
        seq = obj if isinstance(obj, js.SymbolSequence) else js.prolongation_sequence(obj, cap)
        dims, status = seq.dims, seq.status
        bound = js.dimension_bound(seq, g0_dim) if (g0_dim is not None and seq.terminated) else None
    details = {"dims": dims, "status": status, "g0_dim": g0_dim, "bound": bound}
    return (bound if bound is not None else dims), details, {"cap": cap}


def _tanaka_input(job, params):
    if job.input["kind"] in ("monge", "distribution"):
        delta = build_distribution(job.input, params)
        return dg.symbol_at_point(delta, seed=_seed(job))
    return build_gnla(job.input, params)


def _cmd_tanaka(job, params):
    m = _tanaka_input(job, params)
    cap = job.options.get("cap", tk.DEFAULT_CAP)
    g0 = tk.co_matrices(len(m.by_degree[-1])) if job.options.get("g0") == "co" else None
    t = tk.tanaka_prolongation(m, g0=g0, cap=cap)
    details = {
        "negative_dims": t.negative_dims,
        "nonneg_dims": t.nonneg_dims,
        "dims": t.dims,
        "status": t.status,
        "total_dim": t.total_dim if t.status == "terminated" else None,
    }
    value = t.total_dim if t.status == "terminated" else "possibly infinite type"
    return value, details, {"cap": cap, "g0": job.options.get("g0", "full")}


def _cmd_flag(job, params):
    delta = build_distribution(job.input, params)
    gv = dg.derived_flag(delta, seed=_seed(job))
    return gv.dims, {"growth_vector": gv.dims, "saturated": gv.saturated}, {"point": gv.point, "seed": _seed(job)}


def _cmd_polysym(job, params):
    delta = build_distribution(job.input, params)
    cap = job.options.get("degree_cap", job.options.get("cap", 4))
    res = dg.polynomial_symmetries(delta, degree_cap=cap, seed=_seed(job))
    details = {"dimension": res.dimension, "basis": [str(v) for v in res.basis]}
    return res.dimension, details, {"degree_cap": cap, "seed": _seed(job)}


def _cmd_killing(job, params):
    g = build_metric(job.input, params)
    d = job.options.get("d", 1)
    extra = job.options.get("extra_orders", gi.DEFAULT_EXTRA_ORDERS)
    rep = gi.integral_dimension_report(g, d, extra_orders=extra, seed=_seed(job))
    details = {
        "dimension": rep.dimension,
        "history": [{"order": L, "free_jets": D, "top_symbol_dim": s} for L, D, s in rep.history],
        "hamiltonian": str(gi.geodesic_hamiltonian(g)),
    }
    return rep.dimension, details, {"point": list(rep.point), "seed": _seed(job), "d": d, "extra_orders": extra}


def _cmd_symcheck(job, params):
    delta, fields = _symcheck_inputs(job.input, params)
    forms = dg.annihilator(delta)
    flags = [dg.is_symmetry(V, delta, forms) for V in fields]
    details: Dict[str, Any] = {"is_symmetry": flags, "count": len(fields)}
    try:
        L = dg.structure_constants(fields)
        details.update(closed=True, dim=L.dim, derived_series=lie.derived_series(L),
                       jacobi=lie.jacobi_check(L).passed)
    except lie.NotClosed as exc:
        details.update(closed=False, reason=str(exc))
    return all(flags), details, {}


def _cmd_liealg(job, params):
    L = build_liealg(job.input, params)
    details: Dict[str, Any] = {
        "dim": L.dim,
        "parameters": list(L.parameters()),
        "jacobi": lie.jacobi_check(L).passed,
        "derived_series": lie.derived_series(L),
        "lower_central_series": lie.lower_central_series(L),
        "center": lie.center(L),
    }
    for k in job.options.get("cohomology", []):
        details[f"H{k}"] = lie.chevalley_eilenberg(L, k)
    return L.dim, details, {}


def _cmd_gap_report(job, params):
    rep = gap_report(job.options.get("n_min", 2), job.options.get("n_max", 5), seed=_seed(job))
    return rep["all_match"], rep, {"seed": _seed(job)}


DISPATCH = {
    "symbol": _cmd_symbol,
    "tanaka": _cmd_tanaka,
    "flag": _cmd_flag,
    "polysym": _cmd_polysym,
    "killing": _cmd_killing,
    "symcheck": _cmd_symcheck,
    "liealg": _cmd_liealg,
    "gap-report": _cmd_gap_report,
}


def _same(expect, value) -> bool:
    a, b = to_json(expect), to_json(value)
    if isinstance(a, str) and not isinstance(b, str):
        try:
            return parse_rational(a) == parse_rational(b)
        except (ExpressionError, TypeError):
            return False
    return a == b


def run(job: JobSpec) -> Dict[str, Any]:
    """Execute one job; the report carries an 'exit' field (0, 1 or 2)."""
    if job.command == "batch":
        return _run_batch(job)
    report: Dict[str, Any] = {"command": job.command, "input": job.input, "options": job.options}
    start = time.perf_counter()
    try:
        value, details, provenance = DISPATCH[job.command](job, job.params())
    except (JobError, ExpressionError, ValueError, KeyError, NotFiniteType, ArithmeticError, RuntimeError) as exc:
        report.update(error=f"{type(exc).__name__}: {exc}", exit=EXIT_ERROR)
        return report
    report.update(value=value, result=details, provenance=provenance)
    report["elapsed_s"] = round(time.perf_counter() - start, 3)
    status = EXIT_OK
    if job.command == "gap-report" and not value:
        status = EXIT_MISMATCH
    if job.expect is not None:
        ok = _same(job.expect, value)
        report["expect"] = {"expected": job.expect, "match": ok}
        if not ok:
            status = EXIT_MISMATCH
    report["exit"] = status
    return report


def _run_batch(job: JobSpec) -> Dict[str, Any]:
    reports = [run(j) for j in job.jobs]
    codes = [r["exit"] for r in reports]
    status = EXIT_ERROR if EXIT_ERROR in codes else (EXIT_MISMATCH if EXIT_MISMATCH in codes else EXIT_OK)
    return {"command": "batch", "jobs": reports, "exit": status}


# ----------------------------------------------------------------------
# gap report


def _row(structure, n, quantity, reference, computed, method, kind="max"):
    return {
        "structure": structure,
        "n": n,
        "quantity": quantity,
        "kind": kind,
        "reference": reference,
        "computed": computed,
        "method": method,
        "match": reference == computed,
    }


def _chain_total(space, g0_dim):
    return js.dimension_bound(js.prolongation_sequence(space, cap=6), g0_dim)


def _realized(fields, delta):
    """dim of the span of verified symmetries closing into a Lie algebra, else -1."""
    forms = dg.annihilator(delta)
    if not all(dg.is_symmetry(V, delta, forms) for V in fields):
        return -1
    try:
        L = dg.structure_constants(fields)
    except lie.NotClosed:
        return -1
    return L.dim if lie.jacobi_check(L).passed else -1


def _tanaka_total(eq, seed):
    m = dg.symbol_at_point(dg.monge_distribution(eq), seed=seed)
    return tk.tanaka_prolongation(m).total_dim


def gap_report(n_min: int = 2, n_max: int = 5, seed: int = 0) -> Dict[str, Any]:
    """Closed-form maxima and sub-maxima against engine-computed values."""
    if not 2 <= n_min <= n_max:
        raise ValueError("need 2 <= n_min <= n_max")
    rows = []
    for n in range(n_min, n_max + 1):
        rows.append(_row("Riemannian", n, "Killing fields", n * (n + 1) // 2,
                         _chain_total(js.so(n), n), "symbol chain so(n)"))
        if n in (3, 5):
            # R x S^(n-1): so(n) plus the translation along the line factor
            rows.append(_row("Riemannian", n, "Killing fields", n * (n - 1) // 2 + 1,
                             gi.integral_dimension(gi.revolution(n, "1"), 1, seed=seed),
                             "integrals of R x S^(n-1)", kind="sub-max realized"))
        rows.append(_row("affine connection", n, "affine fields", n + n * n,
                         js.dimension_bound(js.affine_sequence(n), n), "given symbol sequence"))
        if n >= 3:
            rows.append(_row("conformal", n, "conformal fields", (n + 1) * (n + 2) // 2,
                             _chain_total(js.co(n), n), "symbol chain co(n)"))
        rows.append(_row("projective", n, "projective fields", n * n + 2 * n,
                         js.dimension_bound([n * n, n, 0], n), "given symbol sequence"))
        N = n + 1
        rows.append(_row("Killing 2-tensors", n, "quadratic integrals", N * N * (N * N - 1) // 12,
                         _chain_total(js.killing_symbol(n, 2), js.killing_fibre_dim(n, 2)),
                         "symbol chain Killing d=2"))
        rows.append(_row("Killing 2-tensors", n, "quadratic integrals", N * N * (N * N - 1) // 12,
                         gi.integral_dimension(gi.flat(n), 2, seed=seed), "integrals of the flat metric"))
        rows.append(_row("Killing 2-tensors", n, "quadratic integrals",
                         n * (n + 1) // 2 + n * n * (n * n - 1) // 12,
                         gi.integral_dimension(gi.lemma1(n), 2, seed=seed),
                         "integrals of x1 * Euclidean", kind="sub-max realized"))
    # Monge equations y' = F(x, y, z, ..., z^(n)) on R^(n+3)
    rows.append(_row("Monge (2,3,5)", 2, "symmetries", 14,
                     _tanaka_total(dg.hilbert_cartan(), seed), "Tanaka of the symbol"))
    rows.append(_row("Monge (2,3,5)", 2, "symmetries", 7,
                     _realized(dg.w7_fields(3), dg.monge_distribution(dg.power(3, 2))),
                     "W1..W7 on y' = (z'')^3", kind="sub-max realized"))
    rows.append(_row("Monge (2,3,5,6)", 3, "symmetries", 11,
                     _tanaka_total(dg.power(2, 3), seed), "Tanaka of the symbol"))
    rows.append(_row("Monge (2,3,5,6)", 3, "symmetries", 9,
                     _realized(dg.submax26_fields(1), dg.monge_distribution(dg.submax26(1))),
                     "W1..W9 on y' = (z''')^2 + (z'')^2", kind="sub-max realized"))
    for n in (3, 4):
        rows.append(_row(f"Monge R^{n + 3}", n, "symmetries", 2 * n + 5,
                         _tanaka_total(dg.power(2, n), seed), "Tanaka of the symbol"))
        rows.append(_row(f"Monge R^{n + 3}", n, "symmetries", 2 * n + 3,
                         _realized(dg.submax_fields(n), dg.monge_distribution(dg.perturbed(n, n - 1, 1))),
                         "shift symmetries", kind="sub-max realized"))
    return {"rows": rows, "all_match": all(r["match"] for r in rows), "n_range": [n_min, n_max]}


# ----------------------------------------------------------------------
# rendering


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(to_json(c)) for c in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]
    line = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return "\n".join([line(headers), line(["-" * w for w in widths])] + [line(r) for r in cells])


def render_text(report: Dict[str, Any]) -> str:
    if report.get("command") == "batch":
        return "\n\n".join(f"[job {i}]\n" + render_text(r) for i, r in enumerate(report["jobs"])) + "\n"
    if "error" in report:
        return f"command  {report['command']}\nerror    {report['error']}\n"
    out = []
    if report["command"] == "gap-report":
        rows = report["result"]["rows"]
        keys = ["structure", "n", "kind", "reference", "computed", "match", "method"]
        out.append(_table(keys, [[r[k] for k in keys] for r in rows]))
        out.append("")
        pairs = [("command", report["command"]), ("all_match", report["value"])]
    else:
        pairs = [("command", report["command"]), ("value", report["value"])]
        pairs += sorted(report["result"].items())
    pairs += sorted(report.get("provenance", {}).items())
    if "expect" in report:
        pairs.append(("expect", report["expect"]))
    pairs.append(("exit", report["exit"]))
    out.append(_table(["field", "value"], [[k, json.dumps(to_json(v), sort_keys=True)] for k, v in pairs]))
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# argument handling


def _parse_expect(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _build_job(args) -> JobSpec:
    if args.input:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise JobError(f"{args.input}: malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}") from None
        if "command" not in data:
            data = {"command": args.command, "input": data} if args.command != "batch" else {"command": "batch", "jobs": data}
        elif data["command"] != args.command:
            raise JobError(f"file holds a {data['command']!r} job but command {args.command!r} was given")
        job = job_from_dict(data)
    else:
        data: Dict[str, Any] = {"command": args.command}
        if args.preset:
            inp: Dict[str, Any] = {"kind": args.kind or DEFAULT_KIND.get(args.command, "symbol"), "preset": args.preset}
            if args.args:
                inp["args"] = [a.strip() for a in args.args.split(",")]
            data["input"] = inp
        job = job_from_dict(data)
    opts = job.options
    for name in ("seed", "cap", "extra_orders", "d", "degree_cap", "n_min", "n_max"):
        value = getattr(args, name)
        if value is not None:
            opts[name] = value
    if args.g0:
        opts["g0"] = args.g0
    if args.cohomology:
        opts["cohomology"] = [int(k) for k in args.cohomology.split(",")]
    for item in args.param or []:
        if "=" not in item:
            raise JobError(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        opts.setdefault("params", {})[k.strip()] = v.strip()
    if args.expect is not None:
        job.expect = _parse_expect(args.expect)
    # revalidate options after the flag overrides
    return job_from_dict(_spec_dict(job))


def _spec_dict(job: JobSpec) -> Dict[str, Any]:
    out: Dict[str, Any] = {"command": job.command}
    if job.input:
        out["input"] = job.input
    if job.options:
        out["options"] = job.options
    if job.expect is not None:
        out["expect"] = job.expect
    if job.jobs:
        out["jobs"] = [_spec_dict(j) for j in job.jobs]
    return out


def _seeded(job: JobSpec) -> bool:
    if job.command == "batch":
        return all(_seeded(j) for j in job.jobs)
    return "seed" in job.options


def _propagate_seed(job: JobSpec, seed: Optional[int]):
    if seed is None:
        return
    job.options.setdefault("seed", seed)
    for j in job.jobs:
        _propagate_seed(j, seed)


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gapdim", description="Exact dimension bounds for symmetry and integral problems.")
    p.add_argument("--version", action="version", version=f"gapdim {__version__}")
    p.add_argument("--print-schema", action="store_true", help="print the JSON job schema and exit")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--input", help="JSON job or input file ('-' for stdin)")
    p.add_argument("--preset", help="preset name for the command's default input kind")
    p.add_argument("--args", help="comma separated preset arguments")
    p.add_argument("--kind", help="input kind for --preset")
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--extra-orders", dest="extra_orders", type=int)
    p.add_argument("--d", type=int, help="degree of the integrals (killing)")
    p.add_argument("--degree-cap", dest="degree_cap", type=int)
    p.add_argument("--n-min", dest="n_min", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--g0", choices=["full", "co"])
    p.add_argument("--cohomology", help="comma separated degrees k for H^k(L, L)")
    p.add_argument("--param", action="append", help="name=value (repeatable)")
    p.add_argument("--expect", help="expected value (JSON or plain text)")
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.print_schema:
        sys.stdout.write(json.dumps(SCHEMA, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    if not args.command:
        parser.error("a command is required")
    try:
        job = _build_job(args)
        if args.command == "batch" or args.command == "gap-report":
            _propagate_seed(job, args.seed)
        if args.format == "machine" and not _seeded(job):
            raise JobError("machine format needs an explicit seed (--seed N or options.seed)")
    except (JobError, ExpressionError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"gapdim: {exc}\n")
        return EXIT_ERROR
    report = run(job)
    if args.format == "machine":
        # wall-clock times would break byte-identical reports
        _strip_timing(report)
        text = dumps(report)
    else:
        text = render_text(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        sys.stderr.write(f"gapdim: {report['error']}\n")
    return report["exit"]


def _strip_timing(report):
    report.pop("elapsed_s", None)
    for r in report.get("jobs", []):
        _strip_timing(r)


if __name__ == "__main__":
    sys.exit(main())
