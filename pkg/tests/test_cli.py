import json
import subprocess
import sys

import jsonschema
import pytest

from hurwitz.cli import main, parse_compact, UsageError
from conftest import datum

TORUS_EXC = "(T,S,3,6,(4,2),(3,3),(3,3))"
TRIVIAL = "(S,S,2,2,(2),(2))"

NULLABLE_STR = {"type": ["string", "null"]}
WITNESS = {
    "type": "object",
    "required": ["degree", "perms"],
    "properties": {
        "degree": {"type": "integer"},
        "perms": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 1}}},
    },
}
SCHEMAS = {
    "check": {
        "type": "object",
        "required": ["datum", "compatible", "conditions"],
        "properties": {
            "compatible": {"type": "boolean"},
            "conditions": {
                "type": "array",
                "minItems": 5,
                "maxItems": 5,
                "items": {"type": "object", "required": ["number", "passed", "statement"]},
            },
        },
    },
    "decide": {
        "type": "object",
        "required": ["datum", "decision"],
        "properties": {
            "decision": {"enum": ["realizable", "unrealizable", "exceptional", "outside_scope", "undecided", "unsupported", "incompatible"]},
            "method": {"enum": ["oracle", "classifier"]},
            "witness": WITNESS,
        },
    },
    "classify": {
        "type": "object",
        "required": ["decision", "rule", "family"],
        "properties": {
            "decision": {"enum": ["realizable", "exceptional", "outside_scope"]},
            "rule": NULLABLE_STR,
            "family": {"type": ["integer", "null"]},
        },
    },
    "sweep": {
        "type": "object",
        "required": ["dmax", "family", "rows", "summary"],
        "properties": {
            "rows": {
                "type": "array",
                "items": {"type": "object", "required": ["datum", "classifier", "oracle", "agrees"]},
            },
            "summary": {"type": "object", "required": ["data", "disagreements", "undecided", "exceptional"]},
        },
    },
    "graphs": {
        "type": "object",
        "required": ["kind", "genus", "graphs"],
        "properties": {
            "graphs": {
                "type": "array",
                "items": {"type": "object", "required": ["p", "f", "genus"]},
            }
        },
    },
    "count": {"type": "object", "required": ["kind", "count"], "properties": {"count": {"type": "integer"}}},
    "dessins": {
        "type": "object",
        "required": ["kind", "count", "dessins"],
        "properties": {
            "dessins": {
                "type": "array",
                "items": {"type": "object", "required": ["edge_pairing", "rotation", "colors"]},
            }
        },
    },
    "construct": {
        "type": "object",
        "required": ["diagram", "script", "witness"],
        "properties": {
            "diagram": {
                "type": "object",
                "required": ["n", "d", "chords"],
                "properties": {
                    "chords": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "prefixItems": [{"type": "integer"}, {"type": "integer"}, {"enum": ["black", "white"]}],
                        },
                    }
                },
            },
            "script": {"type": "array", "items": {"type": "object", "required": ["step", "partitions"]}},
            "witness": WITNESS,
        },
    },
    "verify": {"type": "object", "required": ["datum", "valid"], "properties": {"valid": {"type": "boolean"}}},
    "error": {"type": "object", "required": ["error"]},
}


def run(capsys, *argv, schema=None):
    code = main(list(argv))
    out = capsys.readouterr().out
    if "--json" in argv:
        payload = json.loads(out)
        if schema:
            jsonschema.validate(payload, SCHEMAS[schema])
        return code, payload
    return code, out


def test_parse_compact():
    assert parse_compact(TORUS_EXC) == datum(1, (4, 2), (3, 3), (3, 3))
    assert parse_compact("(2T,S,3,6,(4,2),(6),(6))").cover.genus == 2
    with pytest.raises(UsageError):
        parse_compact("(Q,S,1,2,(2))")
    with pytest.raises(UsageError):
        parse_compact("(S,S,3,2,(2),(2))")


def test_check(capsys, tmp_path):
    code, out = run(capsys, "check", TORUS_EXC, "--json", schema="check")
    assert code == 0 and all(c["passed"] for c in out["conditions"])
    code, out = run(capsys, "check", "(S,S,0,2)", "--json", schema="check")
    assert code == 1 and not out["conditions"][0]["passed"]
    code, _ = run(capsys, "check", "(S,S,2,2,(2),(1,1,1))")
    assert code == 2
    code, _ = run(capsys, "check", "{not json")
    assert code == 2
    path = tmp_path / "datum.json"
    path.write_text(json.dumps(datum(1, (4, 2), (3, 3), (3, 3)).to_json()))
    code, _ = run(capsys, "check", str(path))
    assert code == 0


def test_decide(capsys):
    code, out = run(capsys, "decide", TORUS_EXC, "--json", schema="decide")
    assert code == 1 and out["decision"] == "exceptional" and out["rule"] == "thm_1_2"
    code, text = run(capsys, "decide", TORUS_EXC)
    assert "exceptional (thm_1_2)" in text
    code, out = run(capsys, "decide", "--method", "oracle", TRIVIAL, "--json", schema="decide")
    assert code == 0 and out["witness"] == {"degree": 2, "perms": [[2, 1], [2, 1]]}
    # no closed-form rule: auto falls back to the oracle
    code, out = run(capsys, "decide", "(S,S,4,3,(2,1),(2,1),(2,1),(2,1))", "--method", "oracle", "--json", schema="decide")
    assert code == 0 and out["method"] == "oracle"
    code, out = run(capsys, "decide", "(S,S,3,6,(3,3),(3,3),(2,2,1,1))", "--json", schema="decide")
    assert out["method"] == "oracle" and code in (0, 1)
    code, out = run(capsys, "decide", "(S,S,3,2,(2),(2),(2))", "--json", schema="decide")
    assert code == 1 and out["decision"] == "incompatible"


def test_decide_budget(capsys, monkeypatch):
    heavy = "(S,S,3,8,(6,2),(2,2,2,2),(2,2,2,2))"
    code, out = run(capsys, "decide", "--method", "oracle", "--budget", "10", heavy, "--json", schema="decide")
    assert code == 3 and out["decision"] == "undecided"
    monkeypatch.setenv("HURWITZ_BUDGET", "10")
    code, _ = run(capsys, "decide", "--method", "oracle", heavy)
    assert code == 3


def test_classify(capsys):
    code, out = run(capsys, "classify", "(2T,S,3,6,(4,2),(6),(6))", "--json", schema="classify")
    assert code == 0 and out["rule"] == "thm_1_4"
    code, out = run(capsys, "classify", "(S,S,3,6,(3,3),(3,3),(2,2,1,1))", "--json", schema="classify")
    assert code == 3 and out["decision"] == "outside_scope"


def test_sweep(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out = run(
        capsys, "sweep", "--dmax", "6", "--genus-min", "1", "--genus-max", "1", "--output", str(report), "--json", schema="sweep"
    )
    assert code == 0
    assert sum(r["oracle"] == "unrealizable" for r in out["rows"]) == 1
    assert json.loads(report.read_text()) == out
    code, out = run(capsys, "sweep", "--dmax", "7", "--parity", "odd", "--json", schema="sweep")
    assert code == 0 and not any(r["oracle"] == "unrealizable" for r in out["rows"])
    code, _ = run(capsys, "sweep", "--dmax", "8", "--dmin", "8", "--budget", "3")
    assert code == 3


def test_sweep_deterministic_across_workers(capsys):
    _, a = run(capsys, "sweep", "--dmax", "7", "--family", "all", "--genus-max", "1", "--json")
    _, b = run(capsys, "sweep", "--dmax", "7", "--family", "all", "--genus-max", "1", "--workers", "4", "--json")
    assert a == b


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--kind", "graphs", "--genus", "1", "--count-only")
    assert code == 0 and out.strip() == "2"
    code, out = run(capsys, "enumerate", "--kind", "graphs", "--genus", "2", "--count-only", "--json", schema="count")
    assert out["count"] == 23
    code, out = run(capsys, "enumerate", "--kind", "graphs", "--genus", "1", "--json", schema="graphs")
    assert [g["p"] for g in out["graphs"]] == [3, 4]
    code, out = run(capsys, "enumerate", "--kind", "dessins", "--datum", TORUS_EXC, "--count-only", "--json", schema="count")
    assert code == 0 and out["count"] == 0
    code, out = run(capsys, "enumerate", "--kind", "dessins", "--datum", "(T,S,3,6,(3,3),(3,3),(3,3))", "--json", schema="dessins")
    assert out["count"] == len(out["dessins"]) > 0
    code, out = run(capsys, "enumerate", "--kind", "dessins", "--datum", "(S,S,3,3,(3),(3),(1,1,1))", "--dot")
    assert out.startswith("graph dessin0 {")
    code, _ = run(capsys, "enumerate", "--kind", "dessins", "--datum", TRIVIAL)
    assert code == 2
    code, _ = run(capsys, "enumerate", "--kind", "graphs")
    assert code == 2
    code, out = run(capsys, "enumerate", "--kind", "dessins", "--json", schema="error")
    assert code == 2


def test_construct_and_verify(capsys, tmp_path):
    x = "(S,S,3,7,(5,2),(3,2,2),(2,2,2,1))"
    code, out = run(capsys, "construct", x, "--json", schema="construct")
    assert code == 0
    for key in ("diagram", "witness"):
        path = tmp_path / f"{key}.json"
        path.write_text(json.dumps(out[key]))
        code, res = run(capsys, "verify-witness", x, str(path), "--json", schema="verify")
        assert code == 0 and res["valid"]
    code, res = run(capsys, "verify-witness", "(S,S,3,7,(5,2),(2,2,2,1),(3,2,2))", str(tmp_path / "witness.json"), "--json")
    assert code == 1 and not res["valid"]
    code, _ = run(capsys, "construct", "(S,S,3,6,(4,2),(3,3),(4,1,1))")
    assert code == 2


def test_verify_dessin_witness(capsys):
    from hurwitz.dessins import enumerate_dessins

    x = datum(1, (3, 3), (3, 3), (3, 3))
    dz = next(enumerate_dessins(x))
    code, res = run(capsys, "verify-witness", "(T,S,3,6,(3,3),(3,3),(3,3))", json.dumps(dz.to_json()), "--json")
    assert code == 0 and res["valid"]
    code, _ = run(capsys, "verify-witness", TRIVIAL, '{"degree": 2}')
    assert code == 2


def test_usage_errors(capsys):
    assert main(["bogus"]) == 2
    assert main([]) == 2
    assert main(["decide", TRIVIAL, "--method", "nope"]) == 2
    capsys.readouterr()


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "hurwitz.cli", "classify", TORUS_EXC, "--json"], capture_output=True, text=True
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["rule"] == "thm_1_2"
