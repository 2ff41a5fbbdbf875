import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from adic.cli import main, run_script

ROOT = Path(__file__).parent.parent
SCRIPTS = ROOT / "scripts"
CORPUS = sorted((Path(__file__).parent / "corpus").glob("*.adic"))
SCHEMA = json.loads(resources.files("adic").joinpath("report.schema.json").read_text())


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, [json.loads(line) for line in out.out.splitlines() if line.strip()], out.err


def _strip_timing(reports):
    return [{k: v for k, v in r.items() if k != "timing"} for r in reports]


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_reports_validate_against_schema(path):
    for report in run_script(path.read_text(), kmax=2, depth=2):
        jsonschema.validate(report, SCHEMA)


def test_fail_reports_need_witnesses():
    bad = {"schema": "adic-report/1", "command": "x;", "line": 1, "inputs_digest": "0" * 64, "check": "x",
           "verdict": "fail", "summary": "", "witnesses": [], "bounds": {}, "details": {}, "timing": {"seconds": 0}}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, SCHEMA)


def test_runs_are_deterministic(capsys):
    path = str(SCRIPTS / "towers.adic")
    _, first, _ = _run(capsys, "run", path, "--kmax", "2")
    _, second, _ = _run(capsys, "run", path, "--kmax", "2")
    assert _strip_timing(first) == _strip_timing(second)
    text = [json.dumps(r, sort_keys=True) for r in _strip_timing(first)]
    assert text == [json.dumps(r, sort_keys=True) for r in _strip_timing(second)]


def test_koszul_regular_example(capsys):
    code, reports, _ = _run(capsys, "run", str(SCRIPTS / "koszul_regular.adic"), "--kmax", "4")
    assert code == 0
    wpr = next(r for r in reports if r["check"] == "wpr")
    assert wpr["verdict"] == "pass" and wpr["summary"] == "pro-zero up to 4"


def test_nonflat_example_fails_with_tor_witness(capsys):
    code, reports, _ = _run(capsys, "run", str(SCRIPTS / "nonflat_quotient.adic"), "--strict")
    assert code == 1
    (r,) = reports
    assert r["verdict"] == "fail"
    tor = [w for w in r["witnesses"] if w["kind"] == "tor-class" and w["data"]["tor_index"] == 1]
    assert tor


def test_empty_script(capsys):
    code, reports, err = _run(capsys, "run", str(SCRIPTS / "empty.adic"), "--summary")
    assert code == 0 and reports == [] and err == ""


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.adic"
    p.write_text("ring A = QQ[x];\nideal a = <x,")
    code, reports, err = _run(capsys, "run", str(p))
    assert code == 2 and reports == []
    payload = json.loads(err)
    assert payload["error"]["kind"] == "syntax" and payload["error"]["line"] == 2


def test_usage_errors(capsys, tmp_path):
    assert main(["run", str(tmp_path / "missing.adic")]) == 2
    assert main(["run", str(SCRIPTS / "empty.adic"), "--kmax", "0"]) == 2
    assert main(["bogus"]) == 2
    capsys.readouterr()


def test_strict_only_changes_exit_code(capsys):
    path = str(SCRIPTS / "obstructed_lift.adic")
    lenient, a, _ = _run(capsys, "run", path)
    strict, b, _ = _run(capsys, "run", path, "--strict")
    assert (lenient, strict) == (0, 1)
    assert _strip_timing(a) == _strip_timing(b)


def test_digest_depends_on_flags(capsys):
    path = str(SCRIPTS / "koszul_regular.adic")
    _, a, _ = _run(capsys, "run", path, "--kmax", "2")
    _, b, _ = _run(capsys, "run", path, "--kmax", "3")
    assert a[0]["inputs_digest"] != b[0]["inputs_digest"]


def test_summary_goes_to_stderr(capsys):
    _, reports, err = _run(capsys, "run", str(SCRIPTS / "tor_residue_field.adic"), "--summary")
    assert err.startswith("| line | command | verdict | summary |")
    assert len(err.strip().splitlines()) == len(reports) + 2


def test_engine_errors_become_reports(tmp_path, capsys):
    p = tmp_path / "lift.adic"
    p.write_text("ring A = QQ[x];\nideal a = <x>;\nmodule M = coker rows 1 [];\ntower T = induced M levels 1;\nlift T level 5;\n")
    code, (r,), _ = _run(capsys, "run", str(p), "--strict")
    assert code == 1
    assert r["verdict"] == "undetermined" and "outside" in r["error"]
    jsonschema.validate(r, SCHEMA)


def test_property_subcommand(capsys):
    code, reports, _ = _run(capsys, "property", "--seed", "7", "--count", "40", "--strict")
    assert code == 0
    assert [r["check"] for r in reports] == ["ring-axioms", "groebner-soundness", "parse-roundtrip"]
    assert all(r["verdict"] == "pass" for r in reports)
    for r in reports:
        jsonschema.validate(r, SCHEMA)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "adic.cli", "run", str(SCRIPTS / "empty.adic")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == ""
