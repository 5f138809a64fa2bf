import csv
import io
import json
import os
import subprocess
import sys

import pytest

from syncbound.cli import main
from syncbound.corpus import cerny, dump, load

C3_TEXT = "3 2\n1 1\n2 1\n0 2\n"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def c3_file(tmp_path):
    p = tmp_path / "c3.dfa"
    p.write_text(C3_TEXT)
    return str(p)


def test_rt_text(c3_file):
    assert run("rt", c3_file) == (0, "rt=4 word=baab\n")


def test_rt_json_stable(c3_file):
    code, first = run("rt", c3_file, "--json", "--no-timing")
    assert code == 0
    _, second = run("rt", c3_file, "--json", "--no-timing")
    assert first == second
    env = json.loads(first)
    assert list(env) == sorted(env)
    assert env["command"] == "rt" and env["payload"]["rt"] == 4
    assert env["payload"]["word"] == {"text": "baab", "letters": [1, 0, 0, 1], "length": 4}
    assert env["input_digest"].startswith("sha256:")
    assert "timing_s" not in env
    _, timed = run("rt", c3_file, "--json")
    assert "timing_s" in json.loads(timed)


def test_spectrum(c3_file):
    code, text = run("spectrum", c3_file)
    assert code == 0
    assert "lambda=0 1 4" in text and "delta=1 3 inf" in text and "rho=2" in text
    _, js = run("spectrum", c3_file, "--json", "--no-timing")
    payload = json.loads(js)["payload"]
    assert payload["delta"] == [1, 3, "inf"] and payload["s"] == {"1": 1}


def test_synth(c3_file):
    code, text = run("synth", c3_file, "--from-empty")
    assert code == 0 and "word=baab length=4" in text and "VIOLATION" not in text
    _, js = run("synth", c3_file, "--json", "--no-timing")
    payload = json.loads(js)["payload"]
    assert payload["all_ok"] and payload["final_word"]["text"] == "baab"


def test_certify(c3_file):
    code, js = run("certify", c3_file, "--exact", "--json", "--no-timing")
    assert code == 0
    payload = json.loads(js)["payload"]
    assert payload["rt_exact"] == 4 and payload["cerny_bound"] == 4
    assert payload["corollary6_value"] == "495/16"
    assert payload["ok"] and all(payload["flags"].values())
    _, js = run("certify", c3_file, "--json", "--no-timing")
    assert json.loads(js)["payload"]["rt_exact"] is None


def test_not_synchronizing_exit(tmp_path, capsys):
    p = tmp_path / "perm.dfa"
    p.write_text("3 1\n1\n2\n0\n")
    code, _ = run("synth", str(p))
    assert code == 3
    assert "not synchronizing" in capsys.readouterr().err


def test_parse_error_exit(tmp_path, capsys):
    p = tmp_path / "bad.dfa"
    p.write_text("3 2\n1 5\n2 1\n0 2\n")
    assert run("rt", str(p))[0] == 2
    assert "state index 5 out of range at line 2" in capsys.readouterr().err


def test_usage_errors(capsys, tmp_path):
    assert run("frobnicate")[0] == 1
    assert run("rt")[0] == 1
    assert run("rt", str(tmp_path / "missing.dfa"))[0] == 1
    assert run("opt", "--n-list", "a,b")[0] == 1


def test_budget_exit(tmp_path):
    p = tmp_path / "c8.dfa"
    dump(cerny(8), p)
    assert run("rt", str(p), "--budget", "5")[0] == 4


def test_gen(tmp_path):
    out = tmp_path / "corpus"
    code, text = run("gen", "--kind", "random", "--n", "6", "--m", "2", "--seed", "11",
                     "--count", "3", "--sync-only", "--out", str(out))
    assert code == 0
    files = text.split()
    assert len(files) == 3 and all(os.path.exists(f) for f in files)
    assert all(load(f).n == 6 for f in files)
    code, text = run("gen", "--kind", "cerny", "--n", "5", "--out", str(out))
    assert code == 0 and load(text.strip()) == cerny(5)
    assert run("gen", "--kind", "cerny", "--n", "1", "--out", str(out))[0] == 1


def test_opt_json():
    code, js = run("opt", "--n-list", "1032", "--json", "--no-timing")
    assert code == 0
    payload = json.loads(js)["payload"]
    row = payload["rows"][0]
    assert row["n"] == 1032
    assert row["lp_ratio"] == pytest.approx(0.0098, abs=1e-4)
    assert payload["coefficient"] == pytest.approx(0.1654, abs=5e-4)
    assert payload["limit_coefficient"] == "8257/49923"
    assert payload["psi_check"]["beta_over_n"] == pytest.approx(25 / 129, rel=0.01)


def test_opt_csv_and_text():
    code, text = run("opt", "--n-list", "100,120", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["n"] for r in rows] == ["100", "120", "coefficient"]
    code, text = run("opt", "--n-list", "100")
    assert code == 0 and "coefficient 7/48 + 2*ratio" in text


def test_module_entry_point(c3_file):
    res = subprocess.run([sys.executable, "-m", "syncbound", "rt", c3_file], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "rt=4 word=baab\n"
