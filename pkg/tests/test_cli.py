import json

import pytest

import kg2.cli as cli
from kg2.atomic import ScalarInconsistency
from kg2.bundled import data_file
from kg2.cli import RunConfig, main, run
from kg2.atomic import PreconditionError


def path(name):
    return str(data_file(name))


THETA_ID = path("theta_identity.json")
THETA_FLIP = path("theta_flip.json")
THETA_23 = path("theta_m2n3.json")


def _ok(argv):
    code, text, _ = run(argv)
    assert code == 0, text
    return text


def _err(argv, code):
    got, text, _ = run(argv)
    assert got == code, text
    err = json.loads(text)["error"]
    assert err["exit_code"] == code and err["type"] and "message" in err
    return err


def test_normalize_examples():
    assert _ok(["normalize", "e1", "--theta", THETA_ID]) == "e(1) f() d=(1,0)\n"
    assert _ok(["normalize", "f1.e2", "--theta", THETA_FLIP]).startswith("e(1) f(2) ")
    assert _ok(["normalize", "f1.e2", "--theta", THETA_ID]).startswith("e(2) f(1) ")
    js = json.loads(_ok(["normalize", "f1.e2", "--theta", THETA_FLIP, "--format", "json"]))
    assert js["u"] == [1] and js["v"] == [2] and js["degree"] == [1, 1]


def test_normalize_errors():
    _err(["normalize", "e1..x", "--theta", THETA_ID], 2)
    _err(["normalize", "e3", "--theta", THETA_ID], 3)
    _err(["normalize", "e1"], 2)
    _err(["normalize", "e1", "--theta", "/nonexistent.json"], 2)


def test_period():
    js = json.loads(_ok(["period", "--theta", THETA_FLIP]))
    assert js["periodic"] is True and js["period"] == [1, -1]
    js = json.loads(_ok(["period", "--theta", THETA_ID]))
    assert js["periodic"] is False
    js = json.loads(_ok(["period", "--theta", THETA_23]))
    assert js["periodic"] is False and js["checked"] == []


def test_period_cap(monkeypatch):
    monkeypatch.setenv("KG2_CAP", "8")
    _err(["period", "--theta", THETA_ID], 4)


def test_rep_validate_and_dilate():
    js = json.loads(_ok(["rep", "validate", "--rep", path("one_vertex.json")]))
    assert js["ok"] is True
    js = json.loads(_ok(["rep", "dilate", "--rep", path("one_vertex.json"), "--depth", "2"]))
    assert len(js["graph"]["vertices"]) == 8
    dot = _ok(["rep", "dilate", "--rep", path("one_vertex.json"), "--depth", "1", "--format", "dot"])
    assert dot.startswith("digraph") and dot.count("[shape=") == 3


def test_rep_classify():
    js = json.loads(_ok(["rep", "classify", "--rep", path("one_vertex.json"), "--depth", "3"]))
    assert js["tag"] == "Type1"
    _err(["rep", "classify", "--rep", path("empty_core.json")], 2)


def test_rep_wander_one_vertex():
    lines = _ok(["rep", "wander", "--rep", path("one_vertex.json"), "--depth", "3"]).splitlines()
    records = [json.loads(l) for l in lines]
    verdict = records[-1]["verdict"]
    assert verdict["vertex"] == "e2.f2@x" and verdict["inconclusive"] is False
    per_vertex = {r["vertex"]: r for r in records[:-1]}
    assert per_vertex["f2@x"]["status"] == "Violates"


def test_rep_wander_twisted_identity():
    lines = _ok(["rep", "wander", "--rep", path("twisted11.json"), "--depth", "3"]).splitlines()
    verdict = json.loads(lines[-1])["verdict"]
    assert verdict["vertex"] is None and verdict["obstruction"]["rows_equal"] is True


def test_depth_insufficient():
    _err(["rep", "wander", "--rep", path("twisted11.json"), "--depth", "0"], 6)


def test_dilation_inconsistency(monkeypatch):
    def boom(*a, **k):
        raise ScalarInconsistency("square scalars disagree")

    monkeypatch.setattr(cli, "dilate", boom)
    _err(["rep", "dilate", "--rep", path("one_vertex.json")], 5)


def test_fock_commands(tmp_path):
    js = json.loads(_ok(["fock", "example33", "--n", "2", "--L", "3"]))
    assert js["pass"] and all(r["residual"] == 0 for r in js["reports"])
    js = json.loads(_ok(["fock", "verify", "--theta", THETA_FLIP, "--L", "3", "--dump", str(tmp_path)]))
    assert js["pass"] and all(r["residual"] == 0 for r in js["reports"])
    assert sorted(p.name for p in tmp_path.iterdir()) == ["blue1.coo", "blue2.coo", "red1.coo", "red2.coo"]
    js = json.loads(_ok(["fock", "verify", "--rep", path("one_vertex.json"), "--depth", "3"]))
    assert {r["check"] for r in js["reports"]} >= {"cuntz_interior", "commutation_interior", "defect_free", "star_commute"}
    js = json.loads(_ok(["fock", "verify", "--theta", THETA_ID, "--L", "3"]))
    star = [r for r in js["reports"] if r["check"] == "star_commute"][0]
    assert star["asserted"] is False
    js = json.loads(_ok(["fock", "structure", "--rep", path("swap.json"), "--bound", "4", "--depth", "3"]))
    assert js["pass"] and js["reports"][0]["residual_selfadjoint"] <= 1e-10


def test_fock_residual_failure():
    code, text, _ = run(["fock", "structure", "--rep", path("one_vertex.json"), "--depth", "3", "--projection", "e2@x"])
    assert code == 7
    js = json.loads(text)
    assert js["error"]["exit_code"] == 7 and js["reports"][0]["residual_invariance"] > 1e-3


def test_fock_cap(monkeypatch):
    monkeypatch.setenv("KG2_CAP", "10")
    _err(["fock", "verify", "--theta", THETA_ID, "--L", "3"], 4)


def test_bad_command_lines():
    _err(["bogus"], 2)
    _err(["rep", "validate"], 2)
    _err(["rep", "dilate", "--rep", path("one_vertex.json"), "--depth", "-1"], 2)
    _err(["period", "--theta", THETA_ID, "--max-a", "0"], 2)
    _err(["fock", "structure", "--rep", path("swap.json"), "--tol", "0"], 2)


def test_run_config_invariants():
    RunConfig("period")
    for kw in ({"word_bound": 0}, {"max_a": 0}, {"max_b": -1}, {"depth": -1}, {"tolerance": 0.0}):
        with pytest.raises(PreconditionError):
            RunConfig("period", **kw)


@pytest.mark.parametrize(
    "argv",
    [
        ["period", "--theta", THETA_FLIP],
        ["rep", "wander", "--rep", path("one_vertex.json"), "--depth", "3"],
        ["rep", "dilate", "--rep", path("swap.json"), "--depth", "3"],
        ["fock", "structure", "--rep", path("swap.json")],
    ],
)
def test_determinism(argv):
    assert run(argv) == run(argv)


def test_out_and_text(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["period", "--theta", THETA_FLIP, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["periodic"] is True
    assert main(["period", "--theta", THETA_FLIP, "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "periodic: true" in text and "gamma:" in text


def test_console_script_entry_point():
    from importlib.metadata import entry_points

    eps = [e for e in entry_points(group="console_scripts") if e.name == "kg2"]
    assert eps and eps[0].value == "kg2.cli:main"
