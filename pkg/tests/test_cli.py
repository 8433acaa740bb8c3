import io
import json

import pytest

from binpoly import catalog
from binpoly.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json", "-")
    return code, json.loads(text), text


@pytest.mark.parametrize("tag", ["T", "O", "I", "S3", "Q8"])
def test_group(tag):
    code, data, _ = run_json("group", "--group", tag)
    assert code == 0
    assert data["overall"] == "pass"


def test_group_dump():
    code, data, _ = run_json("group", "--group", "T", "--dump")
    assert code == 0
    assert len(data["data"]["group"]["elements"]) == 24


def test_text_output_and_json_file(tmp_path):
    path = tmp_path / "o.json"
    code, text = run("polytope", "--group", "O", "--json", str(path))
    assert code == 0
    assert "overall: pass" in text
    data = json.loads(path.read_text())
    assert data["data"]["polytopes"]["O"]["f_vector"] == [48, 336, 576, 288]


def test_polytope_full_oracle_is_deterministic():
    a = run_json("polytope", "--group", "O", "--oracle", "full")
    b = run_json("polytope", "--group", "O", "--oracle", "full")
    assert a[0] == 0
    assert a[2] == b[2]
    names = [c["name"] for c in a[1]["checks"]]
    assert "O: brute-force oracle agrees" in names


@pytest.mark.parametrize("label", ["KO", "KI", "KT", "KO_TZ", "KT_MIN"])
def test_complex_verify(label):
    code, data, _ = run_json("complex", "--label", label, "--verify")
    assert code == 0, data


def test_complex_verify_ks3_reports_sign_mismatch():
    code, data, _ = run_json("complex", "--label", "KS3", "--verify")
    assert code == 1
    failed = [c for c in data["checks"] if c["status"] == "fail"]
    assert [c["name"] for c in failed] == ["KS3: pushforward of KO equals the printed matrices"]
    assert {d["degree"] for d in failed[0]["details"]} == {1}


def test_complex_emit_and_read_back(tmp_path):
    path = tmp_path / "ko.json"
    code, _ = run("complex", "--label", "KO", "--emit", str(path))
    assert code == 0
    code, data, _ = run_json("complex", "--input", str(path))
    assert code == 0
    assert data["checks"][0]["details"]["ranks"] == [1, 3, 3, 1]


def test_complex_emit_stdout():
    code, text = run("complex", "--label", "KT", "--emit", "-")
    assert code == 0
    assert json.loads(text)["ranks"] == [1, 4, 4, 1]


def test_corrupted_complex_input(tmp_path):
    path = tmp_path / "ko.json"
    run("complex", "--label", "KO", "--emit", str(path))
    data = json.loads(path.read_text())
    # negate one coefficient of d3
    entry = data["boundaries"][2]["entries"][0][0]
    entry[0][0] = -entry[0][0]
    path.write_text(json.dumps(data))
    code, data, _ = run_json("complex", "--input", str(path))
    assert code == 1
    assert "CompositionNonZero" in data["checks"][0]["details"]


def test_homology_targets():
    code, data, _ = run_json("homology", "--target", "sphere", "--group", "O", "--n", "2")
    assert code == 0
    code, data, _ = run_json("homology", "--target", "quotient", "--group", "I")
    assert code == 0
    assert data["data"]["homology"]["degrees"][1] == {"betti": 0, "torsion": []}
    code, data, _ = run_json("homology", "--target", "flag")
    assert code == 0


def test_cohomology():
    code, data, _ = run_json("cohomology", "--group", "T", "--qmax", "8")
    assert code == 0
    assert data["data"]["expected"][8] == "Z/24"


@pytest.mark.parametrize("argv", [
    [],
    ["group"],
    ["group", "--group", "X"],
    ["polytope", "--group", "T", "--oracle", "maybe"],
    ["homology", "--target", "sphere"],
    ["cohomology", "--group", "O", "--qmax", "2"],
    ["complex", "--label", "KO"],
    ["complex", "--label", "KO", "--input", "x.json"],
    ["verify-all", "--bogus"],
])
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_size_limit_is_a_failure_not_a_crash():
    code, _ = run("homology", "--target", "sphere", "--group", "I", "--n", "3")
    assert code == 1


@pytest.fixture(scope="module")
def fast_report():
    return run_json("verify-all", "--fast")


def test_verify_all_fast(fast_report):
    code, data, _ = fast_report
    failed = [c["name"] for c in data["checks"] if c["status"] == "fail"]
    skipped = [c["name"] for c in data["checks"] if c["status"] == "skipped"]
    # the only failing check is the entrywise comparison of the flag complex
    assert failed == ["KS3: pushforward of KO equals the printed matrices"]
    assert code == 1
    assert skipped == ["I: brute-force oracle agrees", "T: sphere homology n=2",
                       "O: sphere homology n=2", "I: sphere homology n=2"]


def test_verify_all_negative_control(monkeypatch, fast_report):
    data = json.loads(json.dumps(catalog._K_DATA["O"]))
    data["d2"][1][1] = "-omega_j"
    monkeypatch.setitem(catalog._K_DATA, "O", data)
    code, report, _ = run_json("verify-all", "--fast")
    assert code == 1
    failed = [c["name"] for c in report["checks"] if c["status"] == "fail"]
    assert "KO: d o d = 0" in failed
    assert len(failed) > len([c for c in fast_report[1]["checks"] if c["status"] == "fail"])


def test_corrupted_catalog_complex_command(monkeypatch):
    data = json.loads(json.dumps(catalog._K_DATA["T"]))
    data["d1"][0][0] = "1 - omega_ij"
    monkeypatch.setitem(catalog._K_DATA, "T", data)
    code, report, _ = run_json("complex", "--label", "KT", "--verify")
    assert code == 1
    assert report["checks"][0]["name"] == "KT: d o d = 0"
    assert report["checks"][0]["status"] == "fail"
