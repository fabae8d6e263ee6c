import json
import subprocess
import sys

import pytest

from hopfgauge import hopfjson
from hopfgauge.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def lifted(tmp_path, capsys):
    path = tmp_path / "lifted.json"
    assert run(capsys, "example", "lifted_quantum_line", "-o", path)[0] == 0
    return path


@pytest.mark.parametrize("args", [
    ["sweedler"], ["sweedler", "--p", "3"], ["taft", "--n", "3"], ["taft", "--n", "2", "--p", "0"],
    ["group_algebra", "--group", "S3"], ["group_algebra", "--group", "C4", "--p", "5"],
    ["lifted_quantum_line"], ["lifted_quantum_line", "--N", "6", "--n", "3", "--q", "2", "--p", "7"],
    ["radford_biproduct"],
])
def test_examples_write_and_check(tmp_path, capsys, args):
    path = tmp_path / "x.json"
    assert run(capsys, "example", *args, "-o", path)[0] == 0
    code, out, _ = run(capsys, "check", path)
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("args,message", [
    (["example", "group_algebra", "--group", "D5", "-o", "x.json"], "unknown group"),
    (["example", "sweedler", "--p", "6", "-o", "x.json"], "not prime"),
    (["example", "taft", "--n", "4", "--p", "7", "-o", "x.json"], "primitive root"),
    (["example", "sweedler", "--n", "3", "-o", "x.json"], "unused parameters"),
    (["check", "/nonexistent/file.json"], "cannot read"),
])
def test_input_errors_exit_2(tmp_path, capsys, monkeypatch, args, message):
    monkeypatch.chdir(tmp_path)
    code, _, err = run(capsys, *args)
    assert code == 2 and message in err


def test_argument_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "check", "x.json", "--kind", "monoid")[0] == 2


def test_truncated_input(tmp_path, capsys, lifted):
    bad = tmp_path / "bad.json"
    bad.write_text(lifted.read_text()[:500])
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "parse error at line" in err


def test_tampered_structure_exits_1_with_named_axiom(tmp_path, capsys, lifted):
    data = json.loads(lifted.read_text())
    row = data["objects"]["A"]["mult"][1]
    row[0] = "1" if row[0] == "0" else "0"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", bad, "--kind", "hopf")
    assert code == 1
    assert "FAIL  associativity" in out or "FAIL  left unit" in out


def test_integral(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(capsys, "example", "group_algebra", "--group", "C3", "-o", path)
    code, out, _ = run(capsys, "integral", path)
    assert code == 0 and out.strip() == "lambda(1) = 1"
    run(capsys, "example", "sweedler", "-o", path)
    code, _, err = run(capsys, "integral", path)
    assert code == 2 and "--object" in err
    code, out, _ = run(capsys, "integral", path, "--object", "H")  # the group part KC2
    assert code == 0 and "lambda(1) = 1" in out
    code, out, _ = run(capsys, "integral", path, "--object", "A")  # H4 is not cosemisimple
    assert code == 1 and "no ad-invariant integral" in out


def test_decompose_then_bosonize(tmp_path, capsys, lifted):
    dec, bos = tmp_path / "dec.json", tmp_path / "bos.json"
    code, out, _ = run(capsys, "decompose", lifted, "-o", dec)
    assert code == 0 and "== extraction: pass" in out
    code, out, _ = run(capsys, "check", dec, "--kind", "cocycle")
    assert code == 0
    code, out, _ = run(capsys, "bosonize", dec, "-o", bos)
    assert code == 0 and "against input A: omega multiplicative" in out
    assert run(capsys, "check", bos)[0] == 0


def test_gauge_twist_bosonize(tmp_path, capsys, lifted):
    g, q, b, az = (tmp_path / n for n in ("g.json", "q.json", "b.json", "az.json"))
    code, out, _ = run(capsys, "gauge", lifted, "-o", g)
    assert code == 0 and "v(" in out and "zeta(" in out
    assert run(capsys, "check", g, "--kind", "gauge")[0] == 0
    code, out, _ = run(capsys, "twist", g, "--gauge", g, "-o", q)
    assert code == 0 and "== R^v: pass" in out
    code, out, _ = run(capsys, "bosonize", q, "-o", b)
    assert code == 0 and "coradical: wedge filtration exhausts Q # H" in out
    code, out, _ = run(capsys, "twist", lifted, "--gauge", g, "-o", az)
    assert code == 0 and "== A^gauge: pass" in out
    assert run(capsys, "check", az)[0] == 0


def test_pipeline_outputs_are_deterministic(tmp_path, capsys, lifted):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    code, out1, _ = run(capsys, "pipeline", lifted, "--report", r1, "--no-timings")
    code2, out2, _ = run(capsys, "pipeline", lifted, "--report", r2, "--no-timings")
    assert code == code2 == 0
    assert out1 == out2 and r1.read_bytes() == r2.read_bytes()
    lines = out1.strip().splitlines()
    assert lines[0].split("\t")[:2] == ["stage", "status"]
    assert all(line.split("\t")[1] == "pass" for line in lines[1:])
    report = json.loads(r1.read_text())
    assert report["verdict"] == "pass"
    assert "seconds" not in report["stages"][0]
    assert [s["name"] for s in report["stages"]][-1] == "compare"


def test_pipeline_timings_and_figures(tmp_path, capsys, lifted):
    figs = tmp_path / "figs"
    code, out, err = run(capsys, "pipeline", lifted, "--timings", "--figures", figs)
    assert code == 0
    assert out.splitlines()[0].split("\t") == ["stage", "status", "seconds", "note"]
    written = sorted(p.name for p in figs.iterdir())
    assert written == ["gauge.png", "stages.png"]
    assert all((figs / n).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n" for n in written)
    assert "figure\t" in err


def test_pipeline_on_invalid_datum_exits_1(tmp_path, capsys, lifted):
    data = json.loads(lifted.read_text())
    data["maps"]["sigma"]["matrix"][0][0] = "0"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "pipeline", bad, "--keep-going")
    assert code == 1
    assert "extract\tfail" in out and "skipped" in out


def test_console_entry_point(tmp_path):
    path = tmp_path / "s.json"
    proc = subprocess.run([sys.executable, "-m", "hopfgauge.cli", "example", "sweedler", "-o", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "hopfgauge.cli", "pipeline", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "compare\tpass" in proc.stdout
    assert hopfjson.load(path).field.kind == "rational"
