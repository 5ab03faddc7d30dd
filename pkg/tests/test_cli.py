import json

import pytest

from gapdim import cli, distributions as dg, integrals as gi, lie, symbols as js, tanaka as tk
from gapdim.exact import ExpFunction, Polynomial
from gapdim.jobs import JobError, job_from_dict, parse_input, parse_value


def job(command, **kw):
    return job_from_dict({"command": command, **kw})


def test_parse_value_forms():
    assert parse_value("1/3") == parse_value(["1/3"][0])
    p = parse_value("x1^2*x2 - 3/2", ["x1", "x2"])
    assert isinstance(p, Polynomial) and len(p.terms) == 2
    assert parse_value([["1", {"x1": 2, "x2": 1}], ["-3/2", {}]], ["x1", "x2"]) == p
    e = parse_value("exp(-e*x)*z2", ["x", "z2"], {"e": 1})
    assert isinstance(e, ExpFunction) and len(e.terms) == 1


def test_schema_rejects_unknown_fields():
    with pytest.raises(JobError, match="schema"):
        parse_input('{"command": "tanaka", "input": {"kind": "gnla", "preset": "free235"}, "colour": 1}')
    with pytest.raises(JobError, match="schema"):
        parse_input('{"command": "tanaka", "input": {"kind": "gnla", "flavour": "x"}}')
    with pytest.raises(JobError, match="schema"):
        parse_input('{"command": "frobnicate"}')


def test_malformed_json_has_location():
    with pytest.raises(JobError, match="line 2, column"):
        parse_input('{"command": "tanaka",\n "input": }')


def test_run_examples():
    r = cli.run(job("tanaka", input={"kind": "gnla", "preset": "free235"}))
    assert r["value"] == 14 and r["exit"] == 0
    r = cli.run(job("killing", input={"kind": "metric", "preset": "lemma1", "args": [3]}, options={"d": 2}))
    assert r["value"] == 12
    r = cli.run(job("flag", input={"kind": "monge", "preset": "hilbert_cartan"}))
    assert r["value"] == [2, 3, 5]


def test_expected_value_mismatch_exit_2():
    r = cli.run(job("tanaka", input={"kind": "gnla", "preset": "free235"}, expect=15))
    assert r["exit"] == 2 and not r["expect"]["match"]
    r = cli.run(job("tanaka", input={"kind": "gnla", "preset": "free235"}, expect="14"))
    assert r["exit"] == 0


def test_errors_exit_1():
    r = cli.run(job("tanaka", input={"kind": "gnla", "preset": "nope"}))
    assert r["exit"] == 1 and "unknown" in r["error"]
    r = cli.run(job("killing", input={"kind": "metric", "matrix": [[1, 1], [1, 1]]}))
    assert r["exit"] == 1 and "DegenerateMetric" in r["error"]


def test_inline_inputs():
    r = cli.run(job("tanaka", input={
        "kind": "gnla", "names": ["a", "b", "c", "d", "e"], "degrees": [-1, -1, -2, -3, -3],
        "brackets": [["a", "b", {"c": 1}], ["a", "c", {"d": 1}], ["b", "c", {"e": 1}]],
    }))
    assert r["value"] == 14
    r = cli.run(job("killing", input={"kind": "metric", "matrix": [["x1", 0], [0, "x1"]]}, options={"d": 2}))
    assert r["value"] == 4
    r = cli.run(job("flag", input={"kind": "monge", "n": 2, "F": [["1", {"z2": 2}]]}))
    assert r["value"] == [2, 3, 5]
    r = cli.run(job("symbol", input={"kind": "symbol", "dims": [9, 3, 0], "g0_dim": 3}))
    assert r["value"] == 15
    r = cli.run(job("liealg", input={"kind": "liealg", "names": ["h", "e", "f"],
                                     "brackets": [["h", "e", {"e": 2}], ["h", "f", {"f": -2}], ["e", "f", {"h": 1}]]},
                    options={"cohomology": [1, 2]}))
    assert r["result"]["H2"] == 0 and r["result"]["H1"] == 0


def test_symcheck_inline_with_parameter():
    r = cli.run(job("symcheck", input={
        "kind": "symcheck",
        "distribution": {"kind": "monge", "preset": "submax26", "args": ["e"]},
        "symmetries": {"kind": "fields", "variables": ["x", "y", "z", "z1", "z2", "z3"],
                       "fields": [{"y": "2*e^3*z2*exp(-e*x)", "z": "-exp(-e*x)", "z1": "e*exp(-e*x)",
                                   "z2": "-e^2*exp(-e*x)", "z3": "e^3*exp(-e*x)"}]},
    }, options={"params": {"e": "2"}}))
    assert r["exit"] == 0 and r["value"] is True


def test_symcheck_presets():
    r = cli.run(job("symcheck", input={"kind": "symcheck", "preset": "w7", "args": [3]}))
    assert r["value"] is True and r["result"]["derived_series"] == [7, 5, 1, 0]
    r = cli.run(job("symcheck", input={"kind": "symcheck", "preset": "submax26"}))
    assert r["value"] is True and r["result"]["dim"] == 9


def test_liealg_parameter_specialisation():
    r = cli.run(job("liealg", input={"kind": "liealg", "preset": "w7"}, options={"params": {"m": "3"},
                                                                                "cohomology": [0]}))
    assert r["result"]["parameters"] == [] and r["result"]["derived_series"] == [7, 5, 1, 0]


def test_polysym_command():
    r = cli.run(job("polysym", input={"kind": "monge", "preset": "power", "args": [3]}, options={"degree_cap": 5}))
    assert r["value"] == 7


def test_batch_order_and_status():
    b = job("batch", jobs=[
        {"command": "tanaka", "input": {"kind": "gnla", "preset": "free235"}, "expect": 14},
        {"command": "symbol", "input": {"kind": "symbol", "preset": "so", "args": [3]}, "expect": 6},
        {"command": "tanaka", "input": {"kind": "gnla", "preset": "theorem6"}, "expect": 12},
    ])
    r = cli.run(b)
    assert [j["exit"] for j in r["jobs"]] == [0, 0, 2] and r["exit"] == 2


def test_gap_report_rows():
    rep = cli.gap_report(2, 5)
    assert rep["all_match"]
    rows = {(r["structure"], r["n"], r["kind"], r["method"]): r for r in rep["rows"]}
    assert rows[("Riemannian", 4, "max", "symbol chain so(n)")]["computed"] == 10
    assert rows[("Killing 2-tensors", 2, "max", "symbol chain Killing d=2")]["computed"] == 6
    monge = [r for r in rep["rows"] if r["n"] == 3 and r["structure"].startswith("Monge")]
    assert {r["reference"] for r in monge} == {11, 9}
    assert not any(r["structure"] == "conformal" and r["n"] == 2 for r in rep["rows"])


def test_main_exit_codes(capsys):
    assert cli.main(["tanaka", "--preset", "free235", "--seed", "0", "--expect", "14"]) == 0
    assert cli.main(["tanaka", "--preset", "free235", "--seed", "0", "--expect", "13"]) == 2
    assert cli.main(["tanaka", "--preset", "nope", "--seed", "0"]) == 1
    capsys.readouterr()


def test_machine_mode_requires_seed(capsys):
    assert cli.main(["tanaka", "--preset", "free235", "--format", "machine"]) == 1
    assert "seed" in capsys.readouterr().err


def test_machine_output_is_deterministic(tmp_path, capsys):
    spec = {"command": "killing", "input": {"kind": "metric", "preset": "lemma2", "args": [3]}, "options": {"d": 2}}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(spec))
    outs = []
    for _ in range(2):
        assert cli.main(["killing", "--input", str(path), "--seed", "5", "--format", "machine"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["value"] == 10 and data["provenance"]["seed"] == 5


def test_text_and_machine_agree(capsys):
    cli.main(["flag", "--preset", "hilbert_cartan", "--seed", "1", "--format", "machine"])
    machine = json.loads(capsys.readouterr().out)
    cli.main(["flag", "--preset", "hilbert_cartan", "--seed", "1"])
    text = capsys.readouterr().out
    assert json.dumps(machine["value"]) in text


def test_input_file_bare_input_object(tmp_path, capsys):
    path = tmp_path / "in.json"
    path.write_text(json.dumps({"kind": "gnla", "preset": "heisenberg", "args": [3]}))
    assert cli.main(["tanaka", "--input", str(path), "--cap", "3", "--seed", "0"]) == 0
    assert "possibly infinite type" in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": ')
    assert cli.main(["tanaka", "--input", str(bad), "--seed", "0"]) == 1
    assert "line 1" in capsys.readouterr().err


def test_print_schema(capsys):
    assert cli.main(["--print-schema"]) == 0
    assert "gapdim job" in capsys.readouterr().out


def test_every_preset_resolves():
    for name, f in tk.PRESETS.items():
        m = f(5) if name in ("heisenberg", "abelian") else f()
        assert tk.validate_gnla(m).valid
    for name, f in lie.PRESETS.items():
        L = f(5) if name in ("heisenberg", "abelian") else f()
        assert lie.jacobi_check(L).passed
    for name, f in gi.PRESETS.items():
        g = f(3, "x1") if name == "revolution" else f(3)
        assert g.n == 3
    assert js.preset("killing", 3, 2).dim == 8
    for name in dg.MONGE_PRESETS:
        args = {"power": (3,), "perturbed": (3, 1, 2), "hilbert_cartan": (), "submax26": (1,)}[name]
        assert dg.monge_preset(name, *args).n >= 2
    for name, f in cli.SYMCHECK_PRESETS.items():
        delta, fields = f(3) if name in ("w7", "submax") else f()
        assert all(dg.is_symmetry(V, delta) for V in fields)
