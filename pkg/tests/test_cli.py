import io
import json

import pytest

from syzcurves import cli


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_catalog_json():
    code, text = run("analyze", "--catalog", "C0", "--json")
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == cli.SCHEMA and doc["command"] == "analyze"
    rep = doc["report"]
    assert rep["exponents"] == [5, 5, 6] and rep["tau"] == 59 and rep["nu"] == 2
    assert rep["n_values"] == {"11": 1, "12": 2, "13": 1}
    assert doc["expected"]["matches"] is True
    assert "timing" not in doc


def test_analyze_text_and_timing():
    code, text = run("analyze", "--poly", "x*y*z", "--timing")
    assert code == 0
    assert "  exponents: (1, 1)" in text.splitlines()
    assert "  label: Free(1,1)" in text.splitlines()
    assert "timing:" in text
    assert "timing" not in run("analyze", "--poly", "x*y*z")[1]


def test_smooth_curve():
    code, text = run("analyze", "--poly", "x^4+y^4+z^4", "--json")
    rep = json.loads(text)["report"]
    assert code == 0 and rep["smooth"] is True and rep["tau"] == 0
    assert rep["exponents"] == [3, 3, 3]


def test_output_is_deterministic(monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "11")
    a = run("analyze", "--catalog", "Cb", "--backend", "modular", "--json")
    b = run("analyze", "--catalog", "Cb", "--backend", "modular", "--json")
    assert a == b
    assert json.loads(a[1])["backend"]["seed"] == 11


def test_seed_flag_overrides_env(monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "11")
    _, text = run("analyze", "--catalog", "Cb", "--backend", "modular", "--seed", "3", "--json")
    assert json.loads(text)["backend"]["seed"] == 3


@pytest.mark.parametrize("argv, code", [
    (("analyze", "--poly", "x^3"), 3),
    (("analyze", "--poly", "x^2*y+y^3"), 3),
    (("analyze", "--poly", "x^3+y"), 3),
    (("analyze", "--poly", "x^3+*y"), 2),
    (("analyze", "--catalog", "nope"), 2),
    (("analyze",), 2),
    (("paper-suite",), 2),
    (("paper-suite", "--tier", "medium"), 2),
    (("bogus",), 2),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_eigenscheme_auto_theta():
    code, text = run("eigenscheme", "--catalog", "Cb", "--json")
    doc = json.loads(text)
    assert code == 0
    assert doc["ideal"]["zero_dimensional"] is True
    assert doc["checks"]["classify"]["label"] == "Free(4,5)"


def test_eigenscheme_pencil():
    code, text = run("eigenscheme", "--pencil", "C0", "--members", "0,b", "--json")
    doc = json.loads(text)
    assert code == 0
    assert "Free(9,10)" in json.dumps(doc["checks"])


def test_eigenscheme_single_member_refused():
    assert run("eigenscheme", "--pencil", "C0", "--members", "b", "--line")[0] == 3


def test_eigenscheme_membership():
    code, text = run("eigenscheme", "--poly", "x^2*y+y^2*z+z^2*x", "--theta", "0,0,1",
                     "--check", "membership", "--member", "x*y", "--json")
    assert code == 0
    assert json.loads(text)["checks"]["membership"]["member"] is True


def test_catalog_commands():
    code, text = run("catalog", "list", "--tier", "full")
    assert code == 0 and "C0pp_Cbpp" in text and "C0 " not in text
    code, text = run("catalog", "show", "C0bpp_union_line", "--json")
    assert code == 0 and json.loads(text)["name"] == "C0pp_Cbpp_Lz"
    assert run("catalog", "show")[0] == 2


def test_paper_suite_restricted():
    code, text = run("paper-suite", "--tier", "fast", "--criteria", "2")
    assert code == 0
    lines = text.splitlines()
    assert "criterion 2: pass" in lines
    assert lines[-1] == "3/3 fixtures passed"


def test_paper_suite_json():
    code, text = run("paper-suite", "--tier", "fast", "--criteria", "1", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["criteria"]["1"] is True
    assert [f["name"] for f in doc["fixtures"]] == ["C0", "C1", "Cb"]


def test_pencil_check_aliases():
    a = run("eigenscheme", "--pencil", "C0", "--members", "0,b", "--check", "corE1", "--json")
    b = run("eigenscheme", "--pencil", "C0", "--members", "0,b", "--check", "free-pencil", "--json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["checks"]["free-pencil"]["label"] == "Free(9,10)"
    assert run("eigenscheme", "--catalog", "C0", "--check", "mpog-pencil")[0] == 2
