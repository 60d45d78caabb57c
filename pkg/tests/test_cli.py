import json

import pytest

from cjlab import cjmodel
from cjlab.choice import ChoiceFunction
from cjlab.cli import main

from conftest import min_choice_function


@pytest.fixture()
def model_file(tmp_path):
    path = tmp_path / "example11.json"
    path.write_text(cjmodel.build_example_1_1().to_json())
    return str(path)


@pytest.fixture()
def ranked_cf_file(tmp_path):
    cf = min_choice_function(("a", "b"), {"a": 0, "b": 1})
    path = tmp_path / "cf.json"
    path.write_text(cf.to_json())
    return str(path)


def test_check_cj_exit_codes(model_file, capsys):
    assert main(["check-cj", model_file]) == 1          # 5-d fails
    assert main(["check-cj", model_file, "--only", "axioms"]) == 0
    capsys.readouterr()


def test_input_errors(tmp_path, capsys):
    assert main(["check-cj", str(tmp_path / "absent.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["check-cj", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "error:" in err


def test_example_1_1_summary(capsys):
    assert main(["example-1-1"]) == 1
    out = capsys.readouterr().out
    assert "axioms: 15/15 pass; 5-d: FAIL; O(p/p): not valid" in out
    assert main(["example-1-1", "--force-5d"]) == 1
    out = capsys.readouterr().out
    assert "O(p/p): valid" in out


def test_example_1_1_json(capsys):
    main(["example-1-1", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "example-1-1"
    checks = {v["check"]: v["pass"] for v in data["verdicts"]}
    assert checks["frame:5-d"] is False
    assert checks["axiom:15"] is True
    assert checks["O(p/p):valid"] is False
    # deterministic apart from the timing field
    main(["example-1-1", "--json"])
    data2 = json.loads(capsys.readouterr().out)
    data.pop("timing_s"), data2.pop("timing_s")
    assert data == data2


def test_props_command(ranked_cf_file, capsys):
    assert main(["props", ranked_cf_file, "--only", "sub,pr,eq,empty"]) == 0
    capsys.readouterr()
    assert main(["props", ranked_cf_file, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert any(v["check"] == "prop:sub" for v in data["verdicts"])


def test_rules_command(tmp_path, capsys):
    lang_worlds = ("00", "10", "01", "11")
    cf = min_choice_function(lang_worlds,
                             {"00": 0, "10": 0, "01": 1, "11": 1})
    path = tmp_path / "rel.json"
    path.write_text(cf.to_json())
    assert main(["rules", str(path), "--atoms", "p,q",
                 "--only", "RatM,AND,PR"]) == 0
    capsys.readouterr()
    bad = ChoiceFunction(("x", "y"), {})
    path2 = tmp_path / "bad.json"
    path2.write_text(bad.to_json())
    assert main(["rules", str(path2), "--atoms", "p,q"]) == 2
    capsys.readouterr()


def test_interdep_command(capsys):
    assert main(["interdep", "--row", "10", "--cap", "2"]) == 0
    out = capsys.readouterr().out
    assert "verified to cap" in out
    assert main(["interdep", "--row", "9", "--cap", "2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "no witness" in data["verdicts"][0]["check"]
    assert main(["interdep", "--row", "99"]) == 2
    capsys.readouterr()


def test_correspond_command(ranked_cf_file, capsys):
    assert main(["correspond", ranked_cf_file]) == 0
    capsys.readouterr()


def test_represent_roundtrip(tmp_path, ranked_cf_file, capsys):
    out = tmp_path / "structure.json"
    assert main(["represent", "--in", ranked_cf_file, "--out", str(out),
                 "--verify"]) == 0
    capsys.readouterr()
    from cjlab.prefstruct import PrefStructure, mu
    s = PrefStructure.from_json(out.read_text())
    assert mu(s, {"a", "b"}) == {"a"}
    # precondition failure: exit 1 with the witness
    bad = ChoiceFunction(("a", "b"),
                         {frozenset({"a", "b"}): frozenset({"a"}),
                          frozenset({"a"}): frozenset({"a"}),
                          frozenset({"b"}): frozenset(),
                          frozenset(): frozenset()})
    path = tmp_path / "badcf.json"
    path.write_text(bad.to_json())
    assert main(["represent", "--in", str(path), "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["verdicts"][0]["pass"] is False


def test_normalize_command(tmp_path, capsys):
    from cjlab.prefstruct import PrefStructure
    s = PrefStructure(("a", "b"), [("a", 0), ("b", 0), ("b", 1)],
                      [(("a", 0), ("b", 0)), (("a", 0), ("b", 1))])
    path = tmp_path / "s.json"
    path.write_text(s.to_json())
    out = tmp_path / "out.json"
    assert main(["normalize", "--in", str(path), "--out", str(out)]) == 0
    capsys.readouterr()
    t = PrefStructure.from_json(out.read_text())
    assert len(t.copies_of("b")) == 1


def test_translate_command(capsys):
    assert main(["translate", "--mode", "cond", "--alpha", "p",
                 "--beta", "q"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "[](p & ~<m> p -> q)"
    assert main(["translate", "--mode", "minimal", "--alpha", "p"]) == 0
    assert capsys.readouterr().out.strip() == "p & ~<m> p"
    assert main(["translate", "--mode", "ratm", "--phi", "p", "--psi", "q",
                 "--psiprime", "r", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdicts"][0]["check"] == "translated"


def test_agree_command(tmp_path, capsys):
    from cjlab import modal
    worlds, val = modal.attach_distinct_valuation(2)
    acc = [(a, b) for a in worlds for b in worlds]
    m = modal.BiModalModel(worlds, "w0", val, acc, [("w1", "w0")])
    path = tmp_path / "bi.json"
    path.write_text(m.to_json())
    assert main(["agree", "--model", str(path), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert all(v["pass"] for v in data["verdicts"])


def test_only_validation(model_file, ranked_cf_file, capsys):
    assert main(["check-cj", model_file, "--only", "frames"]) == 2
    assert main(["props", ranked_cf_file, "--only", "nonsense"]) == 2
    assert main(["translate", "--mode", "cond", "--alpha", "p"]) == 2
    err = capsys.readouterr().err
    assert "--beta" in err
