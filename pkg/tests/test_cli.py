import json
import subprocess
import sys

import pytest

from coverforge import reports
from coverforge.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("argv, code", [
    (["cover", "SD16xC2", "--family", "8", "--minimal", "--co-minimal"], 0),
    (["cover", "A5", "--members", "C3,EA(2,2),C5"], 0),
    (["cover", "C8", "--members", "EA(2,2)"], 1),
    (["cover", "C12", "--members", "C2,C3", "--minimal"], 1),
    (["cover", "S3", "--members", "C2,C3", "--minimum"], 0),
    (["cover", "NOPE(3)", "--members", "C2"], 2),
    (["cover", "C6"], 2),
    (["cover", "C6", "--members", "C2", "--authority", "/nonexistent.txt"], 2),
    (["scan", "--members", "C2,C3"], 2),
    (["scan", "--mode", "witness", "--max-order", "20"], 2),
    (["abelian", "f"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    capsys.readouterr()


def test_cover_json(capsys):
    code, out = run(["cover", "SD16xC2", "--family", "8", "--minimal", "--co-minimal", "--json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["result"] is True and d["order"] == 32
    assert d["checks"] == {"cover": True, "minimal": True, "co_minimal": True}
    assert len(d["verdict"]["witnesses"]) == 5


def test_abelian_commands(capsys):
    assert run(["abelian", "f", "3"], capsys) == (0, "5\n")
    assert run(["abelian", "A", "30"], capsys) == (0, "30\n")
    assert run(["abelian", "cover", "--p", "2", "--partitions", "2;1,1"], capsys) == (0, "2,1\n")
    code, out = run(["abelian", "cover", "--p", "3", "--partitions", "3;2,1;1,1,1", "--json"], capsys)
    assert json.loads(out) == {"p": 3, "partition": [3, 1, 1], "order": 3 ** 5}


def test_scan_modes(capsys):
    code, out = run(["scan", "--members", "C2,C3", "--max-order", "48", "--json"], capsys)
    d = json.loads(out)
    assert code == 0 and sorted(g["label"] for g in d["groups"]) == ["A4", "C6", "S3"]
    code, out = run(["scan", "--mode", "witness", "--n", "6", "--max-order", "48", "--json"], capsys)
    assert sorted(g["label"] for g in json.loads(out)["groups"]) == ["A4", "C6", "S3"]
    code, out = run(["scan", "--mode", "census", "--family", "8", "--order", "32", "--json"], capsys)
    d = json.loads(out)
    assert (d["groups"], d["covers"], d["minimal"], d["strongly_minimal"]) == (51, 2, 2, 2)


def test_info(capsys):
    code, out = run(["info", "A5", "--json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["order"] == 60 and d["is_perfect"] is True


def _json_block(text):
    return json.loads(text[text.index("\n\n{") + 2:])


@pytest.mark.parametrize("rid, extra", [
    ("census-8covers", []), ("fermat", ["--r", "3"]), ("fermat", ["--r", "5"]), ("order60", []),
    ("inf8", []), ("p2covers", []), ("27covers", []), ("witnesses", []), ("psl2-13", []),
    ("certificates", []), ("abelian", []), ("minimum", []),
])
def test_reports_match_golden(rid, extra, tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["report", rid, *extra, "--out", str(out)]) == 0
    data = _json_block(out.read_text())
    r = int(extra[1]) if extra else None
    expected = reports.load_expectations()[reports.expectation_key(rid, r)]
    assert reports.matches(expected, data)


def test_report_disagreement_exits_1(tmp_path, capsys):
    exp = tmp_path / "exp.json"
    exp.write_text(json.dumps({"abelian": {"A30": 31}}))
    assert main(["report", "abelian", "--expectations", str(exp)]) == 1
    exp.write_text("{}")
    assert main(["report", "abelian", "--expectations", str(exp)]) == 0


def test_matches_semantics():
    assert reports.matches({"a": 1}, {"a": 1, "b": 2})
    assert not reports.matches({"a": {"b": 1}}, {"a": {"b": 2}})
    assert not reports.matches({"a": 1}, {})


def test_jobs_do_not_change_output(capsys):
    outs = []
    for jobs in ("1", "2"):
        assert main(["report", "fermat", "--r", "3", "--jobs", jobs]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    scans = []
    for jobs in ("1", "3"):
        main(["scan", "--members", "C2,C5", "--max-order", "80", "--jobs", jobs])
        scans.append(capsys.readouterr().out)
    assert scans[0] == scans[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coverforge", "abelian", "f", "10"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "27\n"
    proc = subprocess.run([sys.executable, "-m", "coverforge", "cover", "C8", "--members", "EA(2,2)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1
