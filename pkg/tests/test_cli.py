import csv
import io
import json
import subprocess
import sys

import pytest

from nasens.cli import main
from nasens.schemas import validate


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_nset_tent():
    code, text = run("nset", "--system", "tent", "--region", "0.3,0.4", "--delta", "1/2", "--horizon", "10")
    doc = json.loads(text)
    assert code == 0 and doc["members"] == list(range(3, 11))
    validate(doc, "nset")


def test_nset_identity_is_empty():
    code, text = run("nset", "--system", "identity", "--region", "0.1,0.2", "--delta", "1/2", "--horizon", "5")
    assert code == 0 and json.loads(text)["members"] == []


@pytest.mark.parametrize("region", ["0.3", "0.4,0.3", "a,b", "0.3,0.4,0.5"])
def test_malformed_region(region, capsys):
    code, _ = run("nset", "--system", "tent", "--region", region, "--delta", "1/2")
    assert code == 2 and "error" in capsys.readouterr().err


def test_delta_units(capsys):
    assert run("nset", "--system", "ex3.2", "--region", "0,1/8", "--delta", "1/4turn", "--horizon", "12")[0] == 0
    assert run("nset", "--system", "ex3.2", "--region", "0,1/8", "--delta", "1/4", "--horizon", "12")[0] == 2
    assert run("nset", "--system", "tent", "--region", "0,1/8", "--delta", "1/4turn")[0] == 2
    assert run("nset", "--system", "tent", "--region", "0,1/8", "--delta", "0.5")[0] == 0
    assert run("nset", "--system", "tent", "--region", "0,1/8", "--delta", "-1")[0] == 2


def test_circle_nset_members():
    code, text = run("nset", "--system", "ex3.2", "--region", "0,1/8", "--delta", "1/4turn", "--horizon", "12")
    assert json.loads(text)["members"] == [5, 7, 9, 11]


def test_certify_exit_codes():
    code, text = run("certify", "--system", "ex3.2", "--property", "n-sensitive", "--n", "2",
                     "--delta", "1/8turn", "--horizon", "24")
    assert code == 1
    doc = json.loads(text)
    validate(doc, "certificate")
    assert doc["verdict"] == "refuted-at-horizon" and doc["failure"]["statement"]
    code, text = run("certify", "--system", "tent", "--property", "vector-multi", "--vector", "1,2",
                     "--delta", "2/5", "--horizon", "32")
    assert code == 0 and json.loads(text)["verdict"] == "witnessed"
    assert run("certify", "--system", "tent", "--property", "vector-multi", "--delta", "2/5")[0] == 2
    assert run("certify", "--system", "tent", "--property", "n-sensitive", "--delta", "2/5")[0] == 2
    assert run("certify", "--system", "tent", "--property", "sensitive")[0] == 2


def test_certify_variants():
    base = ["certify", "--system", "tent", "--horizon", "16"]
    assert run(*base, "--property", "sensitive", "--delta", "1/4")[0] == 0
    assert run(*base, "--property", "multi", "--r", "2", "--delta", "1/4")[0] == 0
    assert run(*base, "--property", "strong-multi", "--family", "1;2,3", "--delta", "1/4")[0] == 0
    assert run(*base, "--property", "cofinite", "--tail", "4", "--delta", "1/4")[0] == 0
    assert run(*base, "--property", "cofinite", "--tail", "40", "--delta", "1/4")[0] == 2
    assert run(*base, "--property", "vector-multi", "--vector", "1,2", "--region", "0.3,0.4",
               "--region", "0.1,0.2", "--delta", "1/2")[0] == 0
    assert run(*base, "--property", "vector-multi", "--vector", "1,2", "--region", "0.3,0.4",
               "--delta", "1/2")[0] == 2
    assert run(*base, "--property", "sensitive", "--delta", "1/4", "--resolution", "11")[0] == 2
    code, text = run(*base, "--property", "sensitive", "--sweep")
    assert code == 0 and json.loads(text)["delta"] == "1/2"
    code, _ = run("certify", "--system", "ex4.3", "--property", "sensitive", "--within", "0,1/2",
                  "--delta", "1/8", "--horizon", "64")
    assert code == 1


def test_csv_and_text_output():
    code, text = run("nset", "--system", "tent", "--region", "0.3,0.4", "--delta", "1/2",
                     "--horizon", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "u", "v", "distance"] and [r[0] for r in rows[1:]] == ["3", "4", "5"]
    code, text = run("certify", "--system", "tent", "--property", "sensitive", "--delta", "1/4",
                     "--horizon", "8", "--format", "csv")
    assert next(csv.reader(io.StringIO(text)))[:2] == ["property", "verdict"]
    code, text = run("certify", "--system", "tent", "--property", "sensitive", "--delta", "1/4",
                     "--horizon", "8", "--format", "text")
    assert "witnessed" in text


def test_system_sources(tmp_path):
    doc = {"kind": "periodic", "space": {"type": "interval", "lo": "0", "hi": "1"},
           "maps": [{"points": [["0", "0"], ["1/2", "1"], ["1", "0"]]}]}
    path = tmp_path / "tent.json"
    path.write_text(json.dumps(doc))
    code, text = run("nset", "--system-file", str(path), "--region", "0.3,0.4", "--delta", "1/2", "--horizon", "10")
    assert code == 0 and json.loads(text)["members"] == list(range(3, 11))
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("nset", "--system-file", str(bad), "--region", "0.3,0.4", "--delta", "1/2")[0] == 2
    assert run("nset", "--system", "nope", "--region", "0.3,0.4", "--delta", "1/2")[0] == 2
    code, _ = run("nset", "--system", "random-pl", "--seed", "4", "--param", "period=2",
                  "--region", "0.3,0.4", "--delta", "1/8", "--horizon", "6")
    assert code == 0


def test_product_regions():
    doc = {"kind": "product", "factors": [{"kind": "formula", "name": "tent"},
                                          {"kind": "formula", "name": "identity"}]}
    import tempfile, os
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(doc, fh)
    try:
        code, text = run("nset", "--system-file", fh.name, "--region", "0.3,0.4;0.1,0.2",
                         "--delta", "1/4", "--horizon", "6")
    finally:
        os.unlink(fh.name)
    assert code == 0 and json.loads(text)["members"]


def test_reproduce(tmp_path, capsys):
    code, text = run("reproduce-paper", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["total"] >= 10 and doc["passed"] == doc["total"]
    bad = tmp_path / "claims.json"
    bad.write_text('{"claims": [{"id": 1}]}')
    assert run("reproduce-paper", "--claims", str(bad))[0] == 2
    bad.write_text("not json")
    assert run("reproduce", "--claims", str(bad))[0] == 2


def test_list():
    code, text = run("list")
    assert code == 0 and "tent" in text and "ex3.2" in text


def test_console_module_runs():
    proc = subprocess.run([sys.executable, "-m", "nasens.cli", "nset", "--system", "tent", "--region",
                           "0.3,0.4", "--delta", "1/2", "--horizon", "4", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "members: [3, 4]" in proc.stdout
