import json
import os
import subprocess
import sys

from fishburn.cli import main

WORKED = [0, 1, 0, 1, 3, 1, 1, 2]


def run(*args, stdin=None, env=None):
    return subprocess.run(
        [sys.executable, "-m", "fishburn", *args],
        input=stdin, capture_output=True, text=True,
        env={**os.environ, **(env or {})},
    )


def call(capsys, *args):
    code = main(list(args))
    return code, capsys.readouterr().out


def coefficient(data, e):
    return next((int(t["c"]) for t in data["terms"] if t["e"] == e), 0)


def test_series_p(capsys):
    code, out = call(capsys, "series", "p", "--order", "6")
    assert code == 0
    data = json.loads(out)
    assert coefficient(data, [6, 0, 0, 0, 0]) == 217


def test_series_ptz_and_g_oracle(capsys):
    _, out = call(capsys, "series", "ptz", "--order", "6")
    assert coefficient(json.loads(out), [6, 0, 0, 2, 0]) == 84
    _, out = call(capsys, "series", "g-oracle", "--order", "5")
    assert coefficient(json.loads(out), [5, 2, 2, 1, 1]) == 3


def test_series_caps():
    assert run("series", "g-oracle", "--order", "11").returncode == 2
    assert run("series", "h", "--order", "15").returncode == 2
    assert run("series", "g1", "--order", "14").returncode == 0


def test_enumerate(capsys):
    _, out = call(capsys, "enumerate", "restricted", "--n", "3")
    assert json.loads(out)["items"] == [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 1, 2]]
    _, out = call(capsys, "enumerate", "ascent", "--n", "5", "--stats")
    data = json.loads(out)
    assert data["count"] == 53
    assert data["items"][0] == {"sequence": [0, 0, 0, 0, 0],
                                "stats": {"asc": 0, "last": 0, "length": 5, "run": 0, "zeros": 5}}
    _, out = call(capsys, "enumerate", "posets", "--n", "4", "--stats")
    assert json.loads(out)["count"] == 15


def test_map_worked_both_ways():
    poset = run("map", "to-poset", stdin=json.dumps(WORKED))
    assert poset.returncode == 0
    back = run("map", "to-sequence", stdin=poset.stdout)
    assert json.loads(back.stdout) == WORKED


def test_map_trace_lines():
    poset = run("map", "to-poset", stdin=json.dumps(WORKED)).stdout
    res = run("map", "to-sequence", "--trace", stdin=poset)
    lines = [json.loads(line) for line in res.stdout.splitlines()]
    assert lines[-1] == WORKED
    steps = lines[:-1]
    assert [s["level"] for s in steps] == WORKED[::-1]
    assert steps[1]["rule"] == steps[2]["rule"] == "Rem1"


def test_map_errors():
    assert run("map", "to-poset", stdin="[0, 2]").returncode == 2
    assert run("map", "to-poset", stdin="not json").returncode == 2
    two_plus_two = json.dumps({"n": 4, "covers": [[0, 1], [2, 3]]})
    res = run("map", "to-sequence", stdin=two_plus_two)
    assert res.returncode == 2 and "error" in res.stderr


def test_usage_errors_exit_2():
    assert run().returncode == 2
    assert run("verify", "nonsense").returncode == 2
    assert run("verify", "lemma1", "--order", "8").returncode == 2
    assert run("verify", "kernel", "--order", "15").returncode == 2
    assert run("verify", "lemma2", "--order", "11").returncode == 2
    assert run("verify", "catalan", "--m", "2").returncode == 2


def test_verify_catalan(capsys):
    code, out = call(capsys, "verify", "catalan", "--order", "8")
    data = json.loads(out)
    assert code == 0 and data["pass"]
    assert data["reports"][0]["identity"] == "catalan"


def test_verify_filters(capsys):
    _, out = call(capsys, "verify", "psi", "--order", "8", "--m", "2")
    reports = json.loads(out)["reports"]
    assert [r["params"] for r in reports] == [{"m": 2}]
    _, out = call(capsys, "verify", "kernel", "--order", "12", "--r", "2")
    assert json.loads(out)["pass"]


def test_verify_all_is_byte_identical():
    a = run("verify", "all", "--order", "6", env={"FISHBURN_WORKERS": "1"})
    b = run("verify", "all", "--order", "6", env={"FISHBURN_WORKERS": "4"})
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    ids = [r["identity"] for r in json.loads(a.stdout)["reports"]]
    assert ids == sorted(ids)


def test_verify_failure_exits_1(monkeypatch, capsys):
    from fishburn import harness
    from fishburn.report import VerificationReport

    def failing():
        return VerificationReport("catalan", None, {}, False, {"n": 0})

    monkeypatch.setattr(harness, "select_tasks", lambda *a: [("catalan", failing, ())])
    code, out = call(capsys, "verify", "catalan", "--workers", "1")
    assert code == 1 and json.loads(out)["pass"] is False


def test_backends_give_identical_output():
    numba = run("series", "g-oracle", "--order", "6", env={"FISHBURN_DISABLE_NUMBA": "0"})
    numpy = run("series", "g-oracle", "--order", "6", env={"FISHBURN_DISABLE_NUMBA": "1"})
    assert numba.returncode == 0
    assert numba.stdout == numpy.stdout
