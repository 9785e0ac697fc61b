import json

import pytest

from main import main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_w4n(capsys):
    code, out, _ = _run(capsys, "w4n", "8")
    data = json.loads(out)
    assert code == 0
    assert (data["n"], data["chi"], data["sigma"], data["c1sq"]) == (8, 40, -24, 8)


def test_w4n_out_of_range(capsys):
    code, out, err = _run(capsys, "w4n", "12")
    assert code == 2
    assert out == ""
    assert "OutOfRange" in err


def test_hj_cpq(capsys):
    code, out, _ = _run(capsys, "hj", "cpq", "3", "1")
    data = json.loads(out)
    assert code == 0
    assert data["string"] == [5, 2]
    assert data["lens"] == {"m": 9, "q": 2}


def test_hj_expand_invalid(capsys):
    code, _, err = _run(capsys, "hj", "expand", "4", "2")
    assert code == 2
    assert "InvalidFraction" in err


def test_sing_classify(capsys):
    code, out, _ = _run(capsys, "sing", "classify", "4", "1", "3")
    data = json.loads(out)
    assert code == 0
    assert (data["kind"], data["label"], data["rdp_index"]) == ("rdp_a", "A_3", 3)


def test_sing_resolve(capsys):
    code, out, _ = _run(capsys, "sing", "resolve", "4", "1")
    assert code == 0
    assert json.loads(out)["string"] == [4]


def test_plumb_check(tmp_path, capsys):
    f = tmp_path / "c31.plumb"
    f.write_text("vertex a -5 0\nvertex b -2 0\nedge a b\n", encoding="utf-8")
    code, out, _ = _run(capsys, "plumb", "check", str(f))
    data = json.loads(out)
    assert code == 0
    assert data["negative_definite"]
    assert data["boundary"] == {"m": 9, "q": 2}
    # C_{3,2} is C_{3,1} read backwards
    assert [(x["p"], x["q"]) for x in data["cpq_matches"]] == [(3, 1), (3, 2)]


def test_plumb_missing_file(tmp_path, capsys):
    code, out, _ = _run(capsys, "plumb", "check", str(tmp_path / "absent.plumb"))
    assert code == 2
    assert out == ""


def test_plumb_syntax_error(tmp_path, capsys):
    f = tmp_path / "bad.plumb"
    f.write_text("vertex a -4 0\nloop a\n", encoding="utf-8")
    code, _, err = _run(capsys, "plumb", "check", str(f))
    assert code == 2
    assert "DSLSyntaxError" in err


def test_surface_double_cover(capsys):
    code, out, _ = _run(capsys, "surface", "double-cover", "--e", "4", "--L", "2,8")
    data = json.loads(out)
    assert code == 0
    assert (data["invariants"]["chi"], data["invariants"]["sigma"]) == (48, -32)


def test_surface_p2_cover(capsys):
    code, out, _ = _run(capsys, "surface", "p2-cover", "8")
    data = json.loads(out)
    assert (data["invariants"]["chi"], data["invariants"]["c1sq"]) == (46, 2)


def test_blowdown(capsys):
    argv = ["blowdown", "--chi", "48", "--sigma", "-32"] + ["--config", "2,1"] * 8
    code, out, _ = _run(capsys, *argv)
    data = json.loads(out)
    assert code == 0
    assert (data["result"]["chi"], data["result"]["sigma"]) == (40, -24)


def test_blowdown_bad_pair(capsys):
    code, _, _ = _run(capsys, "blowdown", "--chi", "48", "--sigma", "-32", "--config", "2")
    assert code == 2


def test_quotient_ck_cl(capsys):
    code, out, _ = _run(capsys, "quotient", "demo", "ck-cl", "1", "1")
    data = json.loads(out)
    assert code == 0
    assert data["en"] == 1
    assert (data["invariants"]["chi"], data["invariants"]["sigma"]) == (12, -8)


def test_smooth(capsys):
    code, out, _ = _run(capsys, "smooth", "--d", "1", "--n", "2", "--a", "1", "--t", "1")
    data = json.loads(out)
    assert code == 0
    assert data["central_fibre"] == "1/4(1,1)"
    assert data["fiber_smooth"] and data["action_free"]


def test_smooth_invalid(capsys):
    code, _, err = _run(capsys, "smooth", "--d", "2", "--n", "2", "--a", "1", "--t", "1")
    assert code == 2
    assert "InvalidSpec" in err


def test_quotient_demo_z4(capsys):
    code, out, _ = _run(capsys, "quotient", "demo", "paper-z4")
    data = json.loads(out)
    assert code == 0
    assert [(e["type"], e["multiplicity"]) for e in data["inventory"]] == [("1/4(1,1)", 8), ("1/4(1,3)", 8)]
    assert (data["invariants"]["chi"], data["invariants"]["sigma"], data["invariants"]["c1sq"]) == (48, -32, 0)
    assert data["en"] == 4
    assert (data["blown_down"]["chi"], data["blown_down"]["sigma"]) == (40, -24)


def test_quotient_demo_alias(capsys):
    assert _run(capsys, "quotient", "demo", "z4-e4")[1] == _run(capsys, "quotient", "demo", "paper-z4")[1]


def test_surface_en(capsys):
    code, out, _ = _run(capsys, "surface", "en", "--chi", "48", "--sigma", "-32")
    data = json.loads(out)
    assert code == 0
    assert data["geography"]["en"] == 4
    assert data["invariants"]["chi_h"] == 4


def test_surface_en_inconsistent(capsys):
    code, out, _ = _run(capsys, "surface", "en", "--chi", "3", "--sigma", "-35")
    data = json.loads(out)
    assert code == 0
    assert data["geography"]["en"] is None
    assert data["geography"]["issues"]


def test_verify_is_deterministic(capsys):
    code, first, _ = _run(capsys, "verify-paper")
    assert code == 0
    assert json.loads(first)["passed"]
    code, second, _ = _run(capsys, "verify")
    assert code == 0
    assert first == second


def test_pretty_output(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = _run(capsys, "hj", "expand", "9", "2", "--pretty")
    assert code == 0
    assert "string: [5, 2]" in out


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["w4n"], ["w4n", "eight"], ["hj", "expand", "9", "2", "--json", "--pretty"]])
def test_usage_errors(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == 2


def test_help_exits_cleanly(capsys):
    code, out, _ = _run(capsys, "--help")
    assert code == 0
    assert "verify-paper" in out
