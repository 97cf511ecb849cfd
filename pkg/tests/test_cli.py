import json
import os
import shutil
import subprocess
import sys

import jsonschema
import pytest

from sfb.cli import main

REALIZE_SCHEMA = {
    "type": "object",
    "required": ["realizable", "input"],
    "properties": {
        "realizable": {"type": "boolean"},
        "decomposition": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["multiplicity", "power"],
                "properties": {
                    "multiplicity": {"type": "integer"},
                    "power": {"type": "integer", "minimum": 0},
                },
            },
        },
        "witness": {"type": "object", "required": ["degree"]},
        "input": {
            "type": "object",
            "required": ["points"],
            "properties": {
                "points": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["weight", "rho", "rho_star"],
                    },
                }
            },
        },
    },
}

BASIS_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["i", "j", "x", "m", "degree"],
        "properties": {
            "i": {"type": "integer", "minimum": 0},
            "j": {"type": "integer", "minimum": 0},
            "x": {"type": ["string", "null"]},
            "m": {"type": "array", "items": {"type": "string"}},
            "degree": {"type": "integer"},
        },
    },
}

CERTIFY_SCHEMA = {
    "type": "object",
    "required": ["variant", "order", "truncation", "degree_bound", "degrees", "ok"],
    "properties": {
        "ok": {"type": "boolean"},
        "degrees": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "count", "leads_distinct", "unit_leads"],
            },
        },
    },
}


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_lambda_text(capsys):
    code, doc = run_cli(capsys, "lambda", "G_r(G_s(e_r))")
    assert code == 0
    assert doc == "e_r^-1 + e_s^-1"


def test_lambda_json(capsys):
    code, doc = run_cli(capsys, "lambda", "Z(2,r)", "--json")
    assert code == 0
    assert {"a": -2, "b": 0, "xs": [], "coeff": "1"} in doc
    assert {"a": 0, "b": 0, "xs": [[1, "r"]], "coeff": "1"} in doc


def test_lambda_convention_flag(capsys):
    code, doc = run_cli(capsys, "--z-convention", "mixed", "lambda", "Z(2,r)")
    assert code == 0
    assert doc == "e_s^-2 + X(1,r)"


def test_normalize(capsys):
    code, doc = run_cli(capsys, "normalize", "G_r(1)")
    assert code == 0 and doc == "0"
    code, doc = run_cli(
        capsys, "normalize", "G_r(G_s(e_r))^2 + sigma(3*g1)*Z(2,s)"
    )
    assert code == 0
    assert doc == "3*g1*Z(2,s) + G_r(G_s(G_s(e_r))) + G_r(G_r(G_s(e_r)))"


def test_normalize_json(capsys):
    code, doc = run_cli(capsys, "normalize", "Z(1,s)", "--json")
    assert code == 0
    assert doc == [{"i": 1, "j": 1, "x": "e_r", "m": [], "coeff": "1"}]


def test_geometric_exit_codes(capsys):
    code, doc = run_cli(capsys, "geometric", "Z(3,s)")
    assert code == 0 and doc == {"geometric": True}
    code, doc = run_cli(capsys, "geometric", "e_r")
    assert code == 1
    assert doc["geometric"] is False
    assert doc["certificate"]["a"] == 1
    code, doc = run_cli(
        capsys, "geometric", "G_s(G_s(Z(2,r)))*e_s^2"
    )
    assert code == 1
    assert doc["geometric"] == "unknown"
    assert doc["detail"]["pending"] == ["A(1;Z(2,r))"]


def test_realize_accept(capsys):
    data = json.dumps(
        {"points": [
            {"weight": 1, "rho": 1, "rho_star": 0},
            {"weight": 1, "rho": 0, "rho_star": 1},
        ]}
    )
    code, doc = run_cli(capsys, "realize", data)
    assert code == 0
    jsonschema.validate(doc, REALIZE_SCHEMA)
    assert doc["realizable"] is True
    assert doc["decomposition"] == [{"multiplicity": 1, "power": 1}]


def test_realize_reject(capsys):
    data = json.dumps({"points": [{"weight": 1, "rho": 1, "rho_star": 1}]})
    code, doc = run_cli(capsys, "realize", data)
    assert code == 1
    jsonschema.validate(doc, REALIZE_SCHEMA)
    assert doc["realizable"] is False
    assert doc["witness"]["degree"] == 2


def test_realize_from_file(capsys, tmp_path):
    path = tmp_path / "data.json"
    path.write_text(json.dumps({"points": [{"weight": 2, "rho": 0, "rho_star": 0}]}))
    code, doc = run_cli(capsys, "realize", str(path))
    assert code == 0
    assert doc["decomposition"] == [{"multiplicity": 2, "power": 0}]


def test_cobordant(capsys):
    code, doc = run_cli(capsys, "cobordant", "P(1,r)", "P(1,s)")
    assert code == 0 and doc == {"cobordant": True}
    code, doc = run_cli(capsys, "cobordant", "P(1,r)", "pt")
    assert code == 1 and doc["cobordant"] is False
    code, doc = run_cli(
        capsys, "cobordant", "gamma(gammas(P(2,r)))", "gammas(gamma(P(2,r)))"
    )
    assert code == 1 and doc["cobordant"] == "unknown"


def test_basis_output(capsys):
    code, doc = run_cli(
        capsys, "basis", "--degree", "4", "--variant", "omega", "--truncation", "6"
    )
    assert code == 0
    jsonschema.validate(doc, BASIS_SCHEMA)
    counts = {}
    for entry in doc:
        counts[entry["degree"]] = counts.get(entry["degree"], 0) + 1
    assert counts == {0: 1, 2: 1, 4: 4}


def test_certify_output(capsys):
    code, doc = run_cli(
        capsys, "certify", "--degree", "8", "--variant", "omega", "--truncation", "6"
    )
    assert code == 0
    jsonschema.validate(doc, CERTIFY_SCHEMA)
    assert doc["ok"] is True
    code, doc = run_cli(
        capsys, "certify", "--degree", "6", "--variant", "omega",
        "--truncation", "6", "--inject-duplicate"
    )
    assert code == 1
    assert doc["ok"] is False


def test_verify_small_sample(capsys):
    code, doc = run_cli(capsys, "verify", "--samples", "10", "--seed", "3")
    assert code == 0
    assert doc["ok"] is True
    assert doc["terms"]["reorder_literal"]["witness_x_es_nonzero"] is True
    assert doc["manifolds"]["checks"]["exchange"] == 20


def test_subst_on_lambda(capsys):
    code, doc = run_cli(
        capsys, "subst", '{"A(1;P)": "2*g1^2"}',
        "G_s(G_s(G_s(G_s(e_r))))"
    )
    assert code == 0
    assert doc == "e_s^-3 + g1*e_s^-2 + 3*g1^2*e_s^-1 + e_r*e_s^-4"


def test_subst_on_normalize(capsys):
    code, doc = run_cli(
        capsys, "subst", '{"A(1;P)": "2*g1^2"}',
        "G_s(G_s(e_r))^2", "--on", "normalize"
    )
    assert code == 0
    assert "A(1;P)" not in doc
    assert "-3*g1^2*G_s(e_r)" in doc


def test_parse_errors_exit_2(capsys):
    for argv in (
        ["lambda", "Z(0,r)"],
        ["normalize", "G_r("],
        ["cobordant", "P(1,q)", "pt"],
        ["realize", "{not json"],
        ["realize", '{"points": [{"weight": 1, "rho": -1, "rho_star": 0}]}'],
        ["subst", '{"g1": "g2"}', "e_r"],
        ["subst", '{"A(1;P)": "g1"}', "e_r"],
        ["lambda", "e_r e_s"],
    ):
        code = main(argv)
        capsys.readouterr()
        assert code == 2, argv


def test_console_script_and_budget_abort():
    exe = shutil.which("sfb")
    assert exe is not None
    out = subprocess.run(
        [exe, "lambda", "e_r"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout) == "e_r"
    env = dict(os.environ, SFB_STEP_BUDGET="1")
    out = subprocess.run(
        [sys.executable, "-m", "sfb.cli", "normalize", "G_r(G_s(e_r))^4"],
        capture_output=True, text=True, env=env,
    )
    assert out.returncode == 3
    assert "budget" in out.stderr.lower()
