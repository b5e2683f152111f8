import io
import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from ospzhu.cli import canonical, run, strip_meta

DOCUMENTED = [
    ["kac-table", "2", "4"],
    ["kac-table", "3", "5"],
    ["zhu-image", "3", "5"],
    ["zhu-image", "2", "4", "--sector", "r"],
    ["classify", "2", "4"],
    ["spectrum", "3", "5", "1", "2"],
    ["jack", "2,1", "-3", "3"],
    ["jack", "2,2", "1/2"],
    ["correlator", "2", "0", "--sector", "ns-"],
    ["correlator", "1", "1", "--sector", "r"],
    ["verify", "--suite", "svimage", "3", "5", "--sector", "ns"],
    ["verify", "--suite", "jack", "--max-n", "2"],
    ["verify", "--suite", "correlator", "--max-n", "2"],
]


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_kac_table_example():
    code, out, _ = call(["kac-table", "2", "4", "--json"])
    assert code == 0
    d = json.loads(out)
    assert d["ns_table"][0]["i"] == 1 and d["ns_table"][0]["j"] == 2 and d["ns_table"][0]["s"] == "0"


def test_verify_example():
    code, out, _ = call(["verify", "--suite", "svimage", "3", "5", "--sector", "ns"])
    assert code == 0
    assert "1/1 checks passed" in out


def test_not_admissible_example():
    code, out, err = call(["kac-table", "2", "6"])
    assert code == 2 and out == ""
    assert err.strip() == "NotAdmissible: gcd(u,(u-v)/2) != 1"


@pytest.mark.parametrize("argv,name", [
    (["kac-table", "3", "x"], "InvalidInput"),
    (["kac-table", "3", "5", "--bogus"], "InvalidInput"),
    (["spectrum", "3", "5", "7", "1"], "OutOfRange"),
    (["zhu-image", "3", "5", "--sector", "q"], "SectorMismatch"),
    (["jack", "1,2", "2"], "InvalidInput"),
    (["jack", "1,1", "-3", "3"], "NotAdmissible"),
    (["correlator", "1", "0", "--sector", "xx"], "SectorMismatch"),
    (["verify", "--suite", "svimage", "2", "6"], "NotAdmissible"),
    (["verify", "--suite", "nope"], "InvalidInput"),
    ([], "InvalidInput"),
])
def test_invalid_inputs_exit_2(argv, name):
    code, out, err = call(argv)
    assert code == 2 and out == ""
    assert err.startswith(name + ": ") and err.count("\n") == 1


def test_verification_failure_exit_1(monkeypatch):
    from ospzhu import cli, suites

    def failing(**_):
        return {"suite": "jack", "checks": [{"name": "x", "passed": False, "detail": ""}], "passed": False}

    monkeypatch.setitem(cli.SUITES, "jack", failing)
    monkeypatch.setitem(suites.SUITES, "jack", failing)
    code, out, _ = call(["verify", "--suite", "jack", "--json"])
    assert code == 1
    assert json.loads(out)["passed"] is False


@pytest.mark.parametrize("argv", DOCUMENTED)
def test_json_roundtrip_and_determinism(argv):
    code1, out1, _ = call(argv + ["--json"])
    code2, out2, _ = call(argv + ["--json"])
    assert code1 == code2 == 0
    doc = json.loads(out1)
    assert canonical(doc) + "\n" == out1
    assert canonical(strip_meta(doc)) == canonical(strip_meta(json.loads(out2)))
    _assert_no_floats(doc)


def _assert_no_floats(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            _assert_no_floats(v)
    elif isinstance(obj, list):
        for v in obj:
            _assert_no_floats(v)
    else:
        assert not isinstance(obj, float)


@given(st.integers(2, 12), st.integers(1, 12))
def test_kac_table_any_pair(u, v):
    code, out, err = call(["kac-table", str(u), str(v), "--json"])
    assert code in (0, 2)
    if code == 0:
        assert canonical(json.loads(out)) + "\n" == out
    else:
        assert err.startswith("NotAdmissible: ")


def test_out_path(tmp_path):
    target = tmp_path / "t.json"
    code, out, _ = call(["spectrum", "2", "4", "1", "1", "--json", "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["q"] == "-15/32"


def test_human_output():
    code, out, _ = call(["kac-table", "2", "4"])
    assert code == 0
    assert "NS table" in out and "-15/32" in out


def _subprocess(args, env_extra=None):
    env = dict(os.environ)
    env.update(env_extra or {})
    return subprocess.run([sys.executable, "-m", "ospzhu", *args], capture_output=True, text=True, env=env)


def test_byte_identical_across_processes(tmp_path):
    args = ["verify", "--suite", "svimage", "4", "6", "--json"]
    a = _subprocess(args, {"PYTHONHASHSEED": "1"})
    b = _subprocess(args, {"PYTHONHASHSEED": "2", "MINMOD_CACHE_DIR": str(tmp_path)})
    c = _subprocess(args, {"PYTHONHASHSEED": "3", "MINMOD_CACHE_DIR": str(tmp_path)})
    assert a.returncode == b.returncode == c.returncode == 0
    payloads = [canonical(strip_meta(json.loads(p.stdout))) for p in (a, b, c)]
    assert payloads[0] == payloads[1] == payloads[2]
    assert any(tmp_path.iterdir())
    for args in (["classify", "3", "5", "--json"], ["correlator", "2", "1", "--json"]):
        x = _subprocess(args, {"PYTHONHASHSEED": "4"})
        y = _subprocess(args, {"PYTHONHASHSEED": "5"})
        assert x.stdout == y.stdout and x.returncode == 0


def test_subprocess_exit_code_2():
    p = _subprocess(["kac-table", "2", "6"])
    assert p.returncode == 2
    assert p.stderr.strip() == "NotAdmissible: gcd(u,(u-v)/2) != 1"
