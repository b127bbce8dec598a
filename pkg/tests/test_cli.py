import json

import pytest

from scottpersist.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "down": write(tmp_path, "down_11.json", {"kind": "down", "flavor": "closed", "gens": [["1", "1"]]}),
        "open_down": write(tmp_path, "open_down.json", {"kind": "down", "flavor": "open", "gens": [[1, 1]]}),
        "up00": write(tmp_path, "up_00.json", {"kind": "up", "gens": [[0, 0]]}),
        "up12": write(tmp_path, "up_12.json", {"kind": "up", "gens": [[1, 2]]}),
        "stair": write(tmp_path, "stair.json", {
            "outer": {"kind": "up", "flavor": "closed", "gens": [[0, 1], [1, 0]]},
            "inner": {"kind": "up", "flavor": "open", "gens": [[0, 1], [1, 0]]}}),
        "bad": write(tmp_path, "bad.json", {"kind": "sideways", "gens": [[0]]}),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_region_commands(capsys, files):
    code, out = run(capsys, "region", "boundary", "--in", files["down"])
    assert code == 0 and out["outer"]["flavor"] == "closed" and out["inner"]["flavor"] == "open"
    code, out = run(capsys, "region", "meager", "--in", files["stair"])
    assert code == 0 and out["meager"] is True and "certificate" in out
    code, out = run(capsys, "region", "injective", "--in", files["open_down"])
    assert out == {"result": True}


def test_functor_and_module_commands(capsys, files):
    code, out = run(capsys, "functor", "soc", "--in", files["down"])
    assert code == 0 and out["dim"] == 2
    code, out = run(capsys, "module", "eval", "--in", files["down"], "--p", "1,1", "--q", "2,2")
    assert code == 0 and out["shape"] == [0, 1]
    code, out = run(capsys, "module", "sections", "--in", files["down"], "--region", files["up00"])
    assert out["dim"] == 1
    code, out = run(capsys, "functor", "semicont", "--in", files["down"])
    assert out == {"lower": True, "upper": False}


def test_distance_commands(capsys, files):
    code, out = run(capsys, "distance", "--a", files["up00"], "--b", files["up12"], "--v", "1,1")
    assert code == 0 and out == {"d": "2"}
    code, out = run(capsys, "distance", "--op", "distance0", "--in", files["up00"])
    assert out == {"d": "inf"}
    code, out = run(capsys, "distance", "--op", "tr", "--v", "0,0")
    assert out["TR2"] is False
    code, out = run(capsys, "distance", "--op", "certify", "--in", files["down"], "--which", "underline", "--eps", "1")
    assert out["valid"] is True


def test_error_codes(capsys, files):
    with pytest.raises(SystemExit) as exc:
        main(["functor", "nonsense", "--in", files["down"]])
    assert exc.value.code == 2
    assert main(["region", "boundary", "--in", files["bad"]]) == 2
    assert main(["region", "boundary", "--in", "/nonexistent.json"]) == 2
    assert main(["module", "eval", "--in", files["down"], "--p", "2,2", "--q", "1,1"]) == 1
    assert main(["distance", "--op", "distance0", "--in", files["up00"], "--v", "1,0"]) == 1
    capsys.readouterr()


def test_verify_is_deterministic(capsys, tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert main(["verify", "soc-top-connection", "--seed", "7", "--cases", "5", "--out", a]) == 0
    assert main(["verify", "soc-top-connection", "--seed", "7", "--cases", "5", "--out", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()
    report = json.loads(open(a).read())
    assert report["passed"] and report["seed"] == 7 and report["cases"] == 5


def test_prime_field_flag(capsys, files):
    code, out = run(capsys, "--field", "fp:101", "functor", "semicont", "--in", files["open_down"])
    assert code == 0 and out == {"lower": False, "upper": True}


def test_failed_verification_exit_code(capsys, monkeypatch):
    import scottpersist.cli as cli

    def failing(name, seed, cases):
        return {"suite": name, "seed": seed, "cases": cases, "checks": 1, "failures": 1, "passed": False,
                "results": [{"case": 0, "property": "stub", "ok": False, "inputs": {}}]}

    monkeypatch.setattr(cli, "run_suite", failing)
    assert main(["verify", "nakayama", "--cases", "1"]) == 3
    assert json.loads(capsys.readouterr().out)["passed"] is False
