import json

from distfrob.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "F[1]*E[2]", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["element"] == [{"a": 1, "b": 0, "c": 0, "coeff": 2},
                               {"a": 1, "b": 1, "c": 0, "coeff": 2},
                               {"a": 2, "b": 0, "c": 1, "coeff": 1}]


def test_phi_and_fr(capsys):
    assert run(capsys, "phi", "E[1]")[1].strip() == "E[3] + 2*E[3]*H + E[3]*binom(H,2)"
    assert run(capsys, "fr", "E[3]*F[6]")[1].strip() == "E[1]*F[2]"


def test_rho_chart_act(capsys):
    code, out, _ = run(capsys, "rho", "D[0]", "--m", "1", "--format", "json")
    assert json.loads(out)["operator"] == {
        "chart": "t", "level": 1,
        "terms": [{"i": 0, "k": 0, "coeff": 1}, {"i": 1, "k": 1, "coeff": 2},
                  {"i": 2, "k": 2, "coeff": 1}]}
    code, out, _ = run(capsys, "chart", "F[1]", "--m", "0")
    assert out.splitlines() == ["2*t^2*d<1>", "= d<1>", "global: True"]
    assert run(capsys, "act", "E[1]", "4")[1].strip() == "t^3"


def test_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "prop-3.2.1", "--p", "5", "--m", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["failures"] == []
    assert run(capsys, "check", "no-such-suite")[0] == 2
    assert run(capsys, "eval", "H", "--p", "9")[0] == 2
    assert run(capsys, "eval", "E[1] F[1]")[0] == 2
    assert run(capsys, "rho", "E[3]", "--m", "0")[0] == 2


def test_verma_command(capsys):
    code, out, _ = run(capsys, "verma", "--p", "3", "--m", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["equal"]
    assert data["delta_image"] == [[0, 0, 1]] == data["joint_kernel"]


def test_json_is_deterministic(capsys):
    a = run(capsys, "check", "verma-3.3", "--p", "3", "--format", "json")[1]
    b = run(capsys, "check", "verma-3.3", "--p", "3", "--format", "json")[1]
    assert a == b


def test_repl(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("H^3 - H\n:p 5\nE[1]^5\nE[\n"))
    code, out, err = run(capsys, "repl")
    assert out.split() == ["0", "0"]
    assert "line 1, column 3" in err
    assert code == 2
