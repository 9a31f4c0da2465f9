from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from fgfc import cli
from fgfc.errors import FGFCError

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("FGFC_UPDATE_GOLDEN") == "1"

SCHEMA = json.loads(resources.files("fgfc").joinpath("schema/result.schema.json").read_text())

PRESETS = [
    ("opex_2_1", ["--ideal", "preset:opex(2,1)"]),
    ("opex_2_2", ["--ideal", "preset:opex(2,2)"]),
    ("opex_3_3", ["--ideal", "preset:opex(3,3)"]),
    ("opex_2_2_fp3", ["--ring", "Val(rank=2, base=Fp(3))", "--ideal", "preset:opex(2,2)"]),
    ("glued_2_2", ["--ideal", "preset:glued(2,2)"]),
    ("glued_3_3", ["--ideal", "preset:glued(3,3)"]),
    ("glued_sweep_3", ["--ideal", "preset:glued(3,3)", "--limit", "3"]),
    ("opex_sweep_3", ["--ideal", "preset:opex(3,1)", "--limit", "3", "--verify"]),
]


def run(capsys, argv) -> tuple[int, str]:
    status = cli.main(argv)
    return status, capsys.readouterr().out


def check_golden(name: str, text: str) -> None:
    path = GOLDEN / name
    if UPDATE:
        path.write_text(text)
    assert path.exists(), f"missing golden file {name}; run with FGFC_UPDATE_GOLDEN=1"
    assert text == path.read_text()


@pytest.mark.parametrize("name,argv", PRESETS, ids=[p[0] for p in PRESETS])
def test_preset_golden_text(capsys, name, argv):
    status, out = run(capsys, argv)
    assert status == 0
    check_golden(f"{name}.txt", out)


@pytest.mark.parametrize("name,argv", PRESETS, ids=[p[0] for p in PRESETS])
def test_preset_golden_json(capsys, name, argv):
    status, out = run(capsys, argv + ["--format", "json"])
    assert status == 0
    jsonschema.validate(json.loads(out), SCHEMA)
    check_golden(f"{name}.json", out)


@pytest.mark.parametrize("argv", [
    ["--ring", "Z", "--ideal", "6", "--format", "json", "--trace"],
    ["--ring", "Fp(5)", "--ideal", "x*y; x^2 - y", "--vars", "x,y", "--verify", "--format", "json"],
    ["--ring", "Q", "--ideal", "x^2 - 2; x^3 - 2*x", "--verify", "--format", "json"],
    ["--ring", "Z", "--ideal", "x +", "--format", "json"],
    ["--ring", "Val(rank=2, base=Q)", "--ideal", "a2", "--format", "json"],
    ["--verify", "--trials", "5", "--ring", "Q", "--format", "json"],
])
def test_json_outputs_validate(capsys, argv):
    _, out = run(capsys, argv)
    jsonschema.validate(json.loads(out), SCHEMA)


def test_verify_verdicts(capsys):
    status, out = run(capsys, ["--ring", "Fp(5)", "--ideal", "x*y; x^2 - y", "--vars", "x,y",
                               "--verify", "--format", "json"])
    assert status == 0
    assert json.loads(out)["verified"]["verdict"] == "agree"
    status, out = run(capsys, ["--ring", "Z", "--ideal", "6*x", "--verify", "--format", "json"])
    assert status == 0
    assert json.loads(out)["verified"]["verdict"] == "unavailable"


def test_trace_is_included(capsys):
    _, out = run(capsys, ["--ring", "Z", "--ideal", "2*x^2 + x", "--trace", "--format", "json"])
    kinds = set()

    def walk(node):
        kinds.add(node["kind"])
        for c in node["children"]:
            walk(c)
    walk(json.loads(out)["trace"])
    assert {"root", "quotient", "localize", "monic"} <= kinds
    _, out = run(capsys, ["--ring", "Z", "--ideal", "2*x^2 + x", "--trace"])
    assert "quotient" in out


def test_unit_ideal_prints_nothing(capsys):
    assert run(capsys, ["--ring", "Z", "--ideal", "1"]) == (0, "")


def test_corpus_mode(capsys):
    status, out = run(capsys, ["--verify", "--trials", "20", "--seed", "3", "--jobs", "2"])
    assert status == 0 and "20/20 agree" in out


# -- exit statuses ----------------------------------------------------------

@pytest.mark.parametrize("argv,code", [
    (["--ring", "Z", "--ideal", "6"], 0),
    (["--ring", "Z"], 2),
    (["--ring", "Z", "--ideal", "x", "--limit", "2"], 2),
    (["--ring", "Fp(4)", "--ideal", "x"], 3),
    (["--ring", "Z", "--ideal", "x + q"], 3),
    (["--ring", "Z", "--ideal", "(x"], 3),
    (["--ideal", "preset:opex(2,3)"], 4),
    (["--ideal", "preset:glued(2,1)", "--limit", "3"], 4),
    (["--ring", "Val(rank=2, base=Q)", "--ideal", "a2*x"], 4),
])
def test_exit_status_table(capsys, argv, code):
    assert cli.main(argv) == code


def test_bad_flag_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--format", "yaml", "--ideal", "x"])
    assert info.value.code == 2


def test_disagreement_exit_status(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify", lambda result: cli._verdict("stub", False))
    assert cli.main(["--ring", "Q", "--ideal", "x", "--verify"]) == 5


def test_internal_error_exit_status(capsys, monkeypatch):
    def boom(*a, **k):
        raise FGFCError("synthetic failure")
    monkeypatch.setattr(cli, "min_primes_multi", boom)
    assert cli.main(["--ring", "Q", "--ideal", "x", "--format", "json"]) == 1
    err = json.loads(capsys.readouterr().out)
    jsonschema.validate(err, SCHEMA)
    assert err["error"]["kind"] == "internal"


def test_parse_error_json_has_position(capsys):
    status, out = run(capsys, ["--ring", "Z", "--ideal", "x;\n x +* 1", "--format", "json"])
    assert status == 3
    err = json.loads(out)["error"]
    assert (err["line"], err["column"]) == (2, 5)
    assert "integer" in err["expected"]
