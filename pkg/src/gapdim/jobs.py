"""Job specifications: JSON schema, parsing and construction of inputs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

import jsonschema

from . import distributions as dg
from . import integrals as gi
from . import lie
from . import symbols as js
from . import tanaka as tk
from .exact import ExpressionError, Polynomial, parse_expr, parse_rational

COMMANDS = ["symbol", "tanaka", "flag", "symcheck", "polysym", "killing", "liealg", "gap-report", "batch"]
KINDS = ["metric", "distribution", "monge", "gnla", "symbol", "liealg", "fields", "symcheck"]

_scalar = {"type": ["string", "integer"]}
_expr_or_terms = {
    "oneOf": [
        {"type": ["string", "integer"]},
        {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [_scalar, {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    ]
}

SCHEMA: Dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "gapdim job",
    "$defs": {
        "value": _expr_or_terms,
        "input": {
            "type": "object",
            "properties": {
                "kind": {"enum": KINDS},
                "preset": {"type": "string"},
                "args": {"type": "array", "items": _scalar},
                # metric
                "matrix": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/value"}}},
                # distribution / fields
                "variables": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "generators": {"type": "array", "items": {"type": "object", "additionalProperties": {"$ref": "#/$defs/value"}}},
                "fields": {"type": "array", "items": {"type": "object", "additionalProperties": {"$ref": "#/$defs/value"}}},
                # monge
                "n": {"type": "integer", "minimum": 1},
                "F": {"$ref": "#/$defs/value"},
                # gnla / liealg
                "names": {"type": "array", "items": {"type": "string"}},
                "degrees": {"type": "array", "items": {"type": "integer", "maximum": -1}},
                "brackets": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "string"}, {"type": "string"},
                                        {"type": "object", "additionalProperties": _scalar}],
                        "minItems": 3,
                        "maxItems": 3,
                    },
                },
                # symbol
                "w": {"type": "integer", "minimum": 1},
                "k": {"type": "integer", "minimum": 1},
                "basis": {"type": "array", "items": {"type": "array", "items": _scalar}},
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "g0_dim": {"type": "integer", "minimum": 0},
                # symcheck
                "distribution": {"$ref": "#/$defs/input"},
                "symmetries": {"$ref": "#/$defs/input"},
            },
            "required": ["kind"],
            "additionalProperties": False,
        },
        "options": {
            "type": "object",
            "properties": {
                "d": {"type": "integer", "minimum": 1},
                "cap": {"type": "integer", "minimum": 1},
                "degree_cap": {"type": "integer", "minimum": 0},
                "seed": {"type": "integer"},
                "extra_orders": {"type": "integer", "minimum": 0},
                "params": {"type": "object", "additionalProperties": _scalar},
                "n_min": {"type": "integer", "minimum": 2},
                "n_max": {"type": "integer", "minimum": 2},
                "cohomology": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "g0": {"type": "string", "enum": ["full", "co"]},
            },
            "additionalProperties": False,
        },
        "job": {
            "type": "object",
            "properties": {
                "command": {"enum": COMMANDS},
                "input": {"$ref": "#/$defs/input"},
                "options": {"$ref": "#/$defs/options"},
                "expect": {},
                "jobs": {"type": "array", "items": {"$ref": "#/$defs/job"}},
            },
            "required": ["command"],
            "additionalProperties": False,
        },
    },
    "$ref": "#/$defs/job",
}


class JobError(ValueError):
    """Invalid job specification (schema or semantic)."""


@dataclass
class JobSpec:
    command: str
    input: Dict[str, Any] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)
    expect: Any = None
    jobs: List["JobSpec"] = field(default_factory=list)

    def params(self) -> Dict[str, Fraction]:
        return {k: parse_rational(v) for k, v in self.options.get("params", {}).items()}


def _location(text: str, err: json.JSONDecodeError) -> str:
    return f"line {err.lineno}, column {err.colno}: {err.msg}"


def parse_input(text: str) -> JobSpec:
    """Parse and validate a JSON job; unknown fields are rejected."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise JobError(f"malformed JSON at {_location(text, err)}") from None
    return job_from_dict(data)


def job_from_dict(data: Mapping) -> JobSpec:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise JobError(f"schema violation at {where}: {e.message}")
    return _to_spec(data)


def _to_spec(data: Mapping) -> JobSpec:
    spec = JobSpec(
        data["command"],
        dict(data.get("input", {})),
        dict(data.get("options", {})),
        data.get("expect"),
        [_to_spec(j) for j in data.get("jobs", [])],
    )
    if spec.command == "batch":
        if not spec.jobs:
            raise JobError("batch needs a nonempty 'jobs' list")
    elif spec.command != "gap-report" and not spec.input:
        raise JobError(f"command {spec.command!r} needs an 'input' object")
    return spec


# ----------------------------------------------------------------------
# values


def parse_value(value, variables=(), params: Mapping | None = None):
    """Expression string, integer, or term list [[coeff, {var: exp}], ...]."""
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_expr(value, variables, params or {})
    out = Polynomial.constant(0, variables)
    for coeff, exps in value:
        unknown = [v for v in exps if v not in variables]
        if unknown:
            raise ExpressionError(f"term uses unknown variables {unknown}", str(value))
        e = tuple(exps.get(v, 0) for v in variables)
        out = out + Polynomial.monomial(variables, e, parse_rational(coeff))
    return out


def _args(inp: Mapping, params: Mapping) -> list:
    out = []
    for a in inp.get("args", []):
        if isinstance(a, str) and a in params:
            out.append(params[a])
        elif isinstance(a, str) and a.lstrip("-").replace("/", "", 1).isdigit():
            out.append(parse_rational(a))
        else:
            out.append(a)
    return [int(a) if isinstance(a, Fraction) and a.denominator == 1 else a for a in out]


def _need(inp, *keys):
    missing = [k for k in keys if k not in inp]
    if missing:
        raise JobError(f"{inp.get('kind')} input needs {missing}")


def _call_preset(table, inp, params):
    name = inp["preset"]
    if name not in table:
        raise JobError(f"unknown {inp['kind']} preset {name!r}; known: {sorted(table)}")
    try:
        return table[name](*_args(inp, params))
    except TypeError as exc:
        raise JobError(f"bad arguments for preset {name!r}: {exc}") from None


def build_metric(inp, params) -> gi.Metric:
    if "preset" in inp:
        return _call_preset(gi.PRESETS, inp, params)
    _need(inp, "matrix")
    n = len(inp["matrix"])
    X = gi.coordinates(n)
    return gi.Metric([[parse_value(c, X, params) for c in row] for row in inp["matrix"]], "inline")


def build_monge(inp, params) -> dg.MongeEquation:
    if "preset" in inp:
        return _call_preset(dg.MONGE_PRESETS, inp, params)
    _need(inp, "n", "F")
    n = inp["n"]
    return dg.MongeEquation(n, parse_value(inp["F"], dg.monge_variables(n), params), "inline")


def build_distribution(inp, params) -> dg.Distribution:
    if inp["kind"] == "monge":
        return dg.monge_distribution(build_monge(inp, params))
    if "preset" in inp:
        return dg.monge_distribution(_call_preset(dg.MONGE_PRESETS, inp, params))
    _need(inp, "variables", "generators")
    X = tuple(inp["variables"])
    gens = [dg.VectorField(X, {k: parse_value(v, X, params) for k, v in g.items()}) for g in inp["generators"]]
    return dg.Distribution(gens, X)


def build_fields(inp, params) -> List[dg.VectorField]:
    if "preset" in inp:
        return _call_preset(dg.FIELD_PRESETS, inp, params)
    _need(inp, "variables", "fields")
    X = tuple(inp["variables"])
    return [dg.VectorField(X, {k: parse_value(v, X, params) for k, v in f.items()}) for f in inp["fields"]]


def _bracket_table(inp, params):
    return {(a, b): {k: parse_value(v, (), params) for k, v in vec.items()} for a, b, vec in inp.get("brackets", [])}


def build_gnla(inp, params) -> tk.GradedNilpotentAlgebra:
    if "preset" in inp:
        return _call_preset(tk.PRESETS, inp, params)
    _need(inp, "names", "degrees")
    return tk.GradedNilpotentAlgebra(inp["names"], inp["degrees"], _bracket_table(inp, params))


def build_liealg(inp, params) -> lie.LieAlgebraPresentation:
    if "preset" in inp:
        L = _call_preset(lie.PRESETS, inp, params)
    else:
        _need(inp, "names")
        L = lie.LieAlgebraPresentation(inp["names"], _bracket_table(inp, params))
    used = {p: v for p, v in params.items() if p in L.parameters()}
    return L.specialize(used) if used else L


def build_symbol(inp, params):
    """A SymbolSpace, or a (dims, g0_dim) pair for a sequence given as input."""
    if "dims" in inp:
        _need(inp, "g0_dim")
        return list(inp["dims"]), inp["g0_dim"]
    if "preset" in inp:
        if inp["preset"] == "affine":
            n = int(_args(inp, params)[0])
            return js.affine_sequence(n), n
        space = _call_preset(js.PRESETS, inp, params)
        return space, js.preset_g0_dim(inp["preset"], *_args(inp, params))
    _need(inp, "n", "w", "k", "basis")
    basis = [[parse_rational(c) for c in v] for v in inp["basis"]]
    return js.SymbolSpace(inp["n"], inp["w"], inp["k"], basis=basis, name="inline"), inp.get("g0_dim")
