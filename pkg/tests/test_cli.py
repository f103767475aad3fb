import json

from iso4d.main import run


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_list_systems_json(capsys):
    assert run(["list", "--json"]) == 0
    entries = _json_out(capsys)
    assert len(entries) == 23
    assert entries[-1]["auxiliary"]
    assert {"id", "family", "pattern", "spectral", "times"} <= set(entries[0])


def test_list_rules_json(capsys):
    assert run(["list", "--rules", "--json"]) == 0
    entries = _json_out(capsys)
    assert len(entries) == 40
    assert sum(1 for e in entries if not e["has_data"]) == 5


def test_spectral_parse_json(capsys):
    assert run(["spectral", "parse", "((22)(2))((31))((1)(1))", "--json"]) == 0
    payload = _json_out(capsys)
    assert payload["m"] == 12
    assert payload["locals"] == [[[6, 4, 2], [4, 2, 4, 1, 1], [2, 2, 2, 3, 1, 1, 1]]]
    assert payload["poincare_ranks"] == [2]


def test_spectral_parse_rejects_bad_string(capsys):
    assert run(["spectral", "parse", "(a)"]) == 2
    assert run(["spectral", "parse", "(11)(11),31,21"]) == 2


def test_unknown_id_is_usage_error(capsys):
    assert run(["show", "Gar:6"]) == 2


def test_unknown_option_is_usage_error(capsys):
    assert run(["list", "--no-such-flag"]) == 2


def test_show_system_json(capsys):
    assert run(["show", "Gar:5", "--json"]) == 0
    payload = _json_out(capsys)
    assert payload["linear_problem"] == "Gar:((((1))))((((1))))"


def test_graph_dot(tmp_path, capsys):
    target = tmp_path / "graphs" / "garnier.dot"
    assert run(["graph", "--family", "Garnier", "--dot", str(target)]) == 0
    text = target.read_text(encoding="utf-8")
    assert text.count("rank=same") >= 2
    assert "->" in text


def test_graph_json(capsys):
    assert run(["graph", "--family", "Matrix", "--json"]) == 0
    assert len(_json_out(capsys)["edges"]) == 10


def test_config_json(capsys):
    assert run(["config", "--json"]) == 0
    payload = _json_out(capsys)
    assert payload["schema_version"]
    assert {"seed", "samples", "rtol", "atol", "min_step"} <= set(payload)


def test_check_greek_json(capsys, tmp_path):
    report_path = tmp_path / "greek.json"
    assert run(["check", "greek", "Gar:5", "--json", "--report", str(report_path)]) == 0
    payload = _json_out(capsys)
    assert [r["check_id"] for r in payload["records"]] == ["greek:Gar:5"]
    assert payload["records"][0]["verdict"] == "PASS"
    assert "wall_time" not in payload["records"][0]
    assert json.loads(report_path.read_text(encoding="utf-8")) == payload


def test_check_unknown_subject(capsys):
    assert run(["check", "greek", "Gar:6"]) == 2


def test_integrate_json(capsys):
    argv = ["integrate", "P:II", "--param", "alpha=0.7", "--init", "0.5,0.2", "--span", "0:0.5", "--json"]
    assert run(argv) == 0
    payload = _json_out(capsys)
    assert payload["reason"] == "completed"
    assert payload["spec"]["params"]["alpha"] == 0.7
