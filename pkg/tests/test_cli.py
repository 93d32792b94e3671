import csv
import io
import json

import pytest

from corrupt import perturbed_table
from mixparity.cli import main
from mixparity.hecke import PCanTable, kl_table
from mixparity.ring import LaurentPoly

v = LaurentPoly.gen()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_table(path, table):
    path.write_text(json.dumps(table.to_json()))
    return str(path)


def relabel(label, char):
    t = kl_table(label)
    return PCanTable(t.system, char, dict(t.entries))


def test_tilting_table_json(capsys):
    code, out, _ = run(capsys, "tables", "--kind", "tilting", "--type", "A2")
    assert code == 0
    data = json.loads(out)
    assert data["cartan_type"] == "A2" and data["characteristic"] == 0
    assert data["kind"] == "tilting" and len(data["entries"]) == 6
    last = data["entries"][-1]
    assert last["w"] == [1, 2, 1]
    assert {tuple(t["y"]): t["coeffs"] for t in last["expansion"]}[()] == {"3": 1}


def test_simple_table_csv(capsys):
    code, out, _ = run(capsys, "tables", "--kind", "simple", "--type", "A1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["simple\\y", "e", "1"], ["e", "1*v^0", "0"], ["1", "-1*v^-1", "1*v^0"]]


def test_output_file(tmp_path, capsys):
    out = tmp_path / "sub" / "proj.json"
    code, text, _ = run(capsys, "tables", "--kind", "projective", "--type", "B2", "--out", str(out))
    assert code == 0 and text == ""
    assert json.loads(out.read_text())["kind"] == "projective"


@pytest.mark.parametrize("suite", ["calibration", "identities", "perversity"])
def test_check_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "check", "--suite", suite, "--type", "B2")
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert all(c["passed"] for c in report["checks"])


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "--type", "A1")
    assert code == 0
    data = json.loads(out)
    assert data["total"] == {"0": 2, "1": 2, "2": 1}
    code, out, _ = run(capsys, "hilbert", "--type", "A2", "--elements", "e;1;1,2")
    assert json.loads(out)["elements"] == [[], [1], [1, 2]]


def test_finite_characteristic_tables(tmp_path, capsys):
    pc = write_table(tmp_path / "b3.json", relabel("B3", 2))
    pd = write_table(tmp_path / "c3.json", relabel("C3", 2))
    code, out, _ = run(capsys, "tables", "--kind", "simple", "--type", "B3", "--char", "2",
                       "--pcan", pc, "--pcan-dual", pd, "--format", "csv")
    assert code == 0
    assert len(out.splitlines()) == 49


def test_perversity_failure_exit_code(tmp_path, capsys):
    bad = perturbed_table("A2", (1, 2), (1,), v + v**-1)
    pc = write_table(tmp_path / "a2.json", bad)
    pd = write_table(tmp_path / "a2d.json", relabel("A2", 2))
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "check", "--suite", "perversity", "--type", "A2", "--char", "2",
                     "--pcan", pc, "--pcan-dual", pd, "--out", str(out))
    assert code == 1
    report = json.loads(out.read_text())
    failed = [c for c in report["checks"] if not c["passed"]]
    assert len(failed) == 1 and "w=[1, 2]" in failed[0]["name"]
    assert failed[0]["detail"] == "u=[1] n=1 mult=1"


@pytest.mark.parametrize("argv", [
    ["tables", "--kind", "tilting", "--type", "A2", "--char", "2"],
    ["tables", "--kind", "tilting", "--type", "Q7"],
    ["tables", "--kind", "tilting", "--type", "A2", "--char", "2",
     "--pcan", "/nonexistent/a.json", "--pcan-dual", "/nonexistent/b.json"],
    ["hilbert", "--type", "A2", "--elements", "1,1"],
    ["hilbert", "--type", "A2", "--elements", "3"],
])
def test_config_errors(tmp_path, capsys, argv):
    out = tmp_path / "x.json"
    code, text, err = run(capsys, *argv, "--out", str(out))
    assert code == 2 and err.startswith("error:")
    assert not out.exists()


def test_mismatched_tables_are_data_errors(tmp_path, capsys):
    pc = write_table(tmp_path / "b2.json", relabel("B2", 2))
    wrong = write_table(tmp_path / "a2.json", relabel("A2", 2))
    code, _, err = run(capsys, "tables", "--kind", "tilting", "--type", "B2", "--char", "2",
                       "--pcan", pc, "--pcan-dual", wrong)
    assert code == 2 and "A2" in err
    char3 = write_table(tmp_path / "c3.json", relabel("B2", 3))
    code, _, _ = run(capsys, "tables", "--kind", "tilting", "--type", "B2", "--char", "2",
                     "--pcan", pc, "--pcan-dual", char3)
    assert code == 2


def test_validate(tmp_path, capsys):
    good = write_table(tmp_path / "good.json", kl_table("A2"))
    code, out, _ = run(capsys, "validate", good)
    assert code == 0 and json.loads(out)["valid"]
    bad = perturbed_table("A2", (1, 2), (1,), -1)
    path = write_table(tmp_path / "bad.json", bad)
    code, out, _ = run(capsys, "validate", path)
    data = json.loads(out)
    assert code == 1 and not data["valid"]
    assert data["check"] == "KL-expansion nonnegativity" and data["w"] == [1, 2]
    (tmp_path / "junk.json").write_text("[")
    code, _, _ = run(capsys, "validate", str(tmp_path / "junk.json"))
    assert code == 2


def test_cache_determinism_and_recovery(tmp_path, capsys, caplog):
    cache = tmp_path / "cache"
    argv = ["tables", "--kind", "parity", "--type", "B3", "--cache", str(cache)]
    code, cold, _ = run(capsys, *argv)
    assert code == 0
    files = sorted(p.name for p in cache.iterdir())
    assert files == ["kl_B3.json", "kl_C3.json"]
    code, warm, _ = run(capsys, *argv)
    assert warm == cold
    assert run(capsys, "tables", "--kind", "parity", "--type", "B3")[1] == cold

    path = cache / "kl_B3.json"
    data = json.loads(path.read_text())
    key = next(k for k in data["entries"] if k.endswith("1,2,1,3,2,1"))
    data["entries"][key][0]["coeffs"] = {"1": 99}
    path.write_text(json.dumps(data))
    with caplog.at_level("WARNING"):
        code, again, _ = run(capsys, *argv)
    assert again == cold
    assert "checksum mismatch" in caplog.text
    repaired = json.loads(path.read_text())
    assert repaired["entries"][key][0]["coeffs"] != {"1": 99}

    path.write_text("not json at all")
    assert run(capsys, *argv)[1] == cold
    assert json.loads(path.read_text())["format"] == "kl-cache/1"
