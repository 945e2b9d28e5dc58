import json

import pytest

from h4matroid.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_census_text(capsys):
    code, out = run(capsys, "census")
    assert code == 0
    assert "Π15: 60" in out.out
    assert "bases: 398475" in out.out


def test_census_csv_and_json(capsys):
    code, out = run(capsys, "census", "--format", "csv")
    assert code == 0
    rows = out.out.splitlines()
    assert rows[0] == "table,flat,column,value,expected"
    assert "counts,pi15,count,60,60" in rows
    code, out = run(capsys, "census", "--format", "json")
    doc = json.loads(out.out)
    assert doc["flat_counts"]["pi6"] == 300 and doc["matches"]


def test_census_figures(capsys, tmp_path):
    code, _ = run(capsys, "census", "--figures", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["census_counts.svg", "incidence.svg"]
    first = (tmp_path / "incidence.svg").read_bytes()
    run(capsys, "census", "--figures", str(tmp_path))
    assert (tmp_path / "incidence.svg").read_bytes() == first


@pytest.mark.parametrize(
    "what, key, size",
    [("roots", "roots", 60), ("orthoframes", "orthoframes", 75)],
)
def test_exports(capsys, what, key, size):
    code, out = run(capsys, "export", what)
    doc = json.loads(out.out)
    assert code == 0
    assert len(doc[key]) == size
    assert doc["manifest"]["version"] == "0.1.0"
    assert doc["manifest"]["summary"]["failed"] == 0


def test_export_roots_uses_exact_strings(capsys):
    _, out = run(capsys, "export", "roots")
    doc = json.loads(out.out)
    assert doc["roots"][12] == {"id": 12, "coords": ["0+0*t", "0+1*t", "1+1*t", "1+0*t"]}


def test_export_flats(capsys, tmp_path):
    path = tmp_path / "flats.json"
    assert main(["export", "flats", "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert len(doc["lines"]) == 722 and len(doc["planes"]) == 1320 and len(doc["orthoframes"]) == 75


def test_aut_export(capsys, tmp_path):
    path = tmp_path / "generators.json"
    code, out = run(capsys, "aut", "--export", str(path))
    assert code == 0
    assert "automorphism group order: 14400" in out.out
    doc = json.loads(path.read_text())
    assert doc["order"] == 14_400
    assert doc["coset_witness"]["frame_parity"] == "odd"
    assert all(sorted(g) == list(range(60)) for g in doc["generators"])


def test_stab_and_primitivity(capsys):
    code, out = run(capsys, "stab", "0")
    assert code == 0 and "order: 240" in out.out
    code, out = run(capsys, "primitivity", "--format", "json")
    assert code == 0 and json.loads(out.out)["primitive"]


def test_orthoframes_and_bases(capsys):
    code, out = run(capsys, "orthoframes", "--format", "csv")
    assert code == 0 and len(out.out.splitlines()) == 76
    code, out = run(capsys, "bases")
    assert code == 0 and "398475" in out.out


def test_project(capsys, tmp_path):
    path = tmp_path / "h4.svg"
    assert main(["project", "--lines", "3", "--lines", "5", "--plane", "0", "--out", str(path)]) == 0
    svg = path.read_text()
    assert svg.count('class="line3"') == 200 and svg.count('class="line5"') == 72


@pytest.mark.parametrize(
    "argv",
    [["stab", "60"], ["stab", "x"], ["project", "--plane", "99"], ["verify-all", "--only", "nope"],
     ["project", "--matrix", "1+0*t"], ["census", "--tamper", "zz"]],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_argparse_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_tampered_verification_fails(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify-all", "--tamper", "5:2", "--only", "ground_set", "line_census", "--out", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    assert any(c["status"] == "fail" for c in doc["claims"])
