import json
import subprocess
import sys

from dioa.cli import ERROR, FAILED, OK, default_depth, run_command
from dioa.modelio import load_model


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_traces_of_one(capsys):
    code, out, _ = run(capsys, "traces", "basics", "--target", "ONE", "--depth", "1")
    assert code == OK
    assert out.splitlines() == ["{|a}", "{|a} a {|a}"]


def test_traces_json_actions_only(capsys):
    code, out, _ = run(capsys, "traces", "creation_example", "--target", "X", "--depth", "4",
                       "--actions-only", "--json")
    assert code == OK
    assert json.loads(out) == ["ε", "c", "ca", "cad", "cd", "cda"]


def test_inclusion_failure_prints_witness(capsys):
    code, out, _ = run(capsys, "check-inclusion", "creation_example", "--left", "X", "--right", "Y",
                       "--depth", "4", "--actions-only")
    assert code == FAILED
    assert out.strip() == "fail: witness cad"


def test_inclusion_json(capsys):
    code, out, _ = run(capsys, "check-inclusion", "creation_example", "--left", "Y", "--right", "Y",
                       "--depth", "4", "--json")
    assert code == OK
    assert json.loads(out) == {"result": "pass", "witness": None}


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "mobile_phone")
    assert code == OK
    assert "Car: automaton" in out and "phone: bundle" in out


def test_compose_hide_rename_round_trip(capsys, tmp_path):
    target = tmp_path / "one_sink.json"
    assert run(capsys, "compose", "basics", "--autos", "ONE,SINK", "--id", "OS",
               "--out", str(target))[0] == OK
    composed = load_model(target)
    assert composed.target("OS").sig[("u", "v")].outputs == {"a"}
    code, out, _ = run(capsys, "hide", "basics", "--target", "ONE", "--actions", "a")
    assert code == OK and '"internals": ["a"]' in out
    code, out, _ = run(capsys, "rename", "basics", "--target", "ONE", "--map", "a=b", "--id", "ONEB")
    assert code == OK and '"id": "ONEB"' in out and '"outputs": ["b"]' in out


def test_rename_needs_pairs(capsys):
    code, _, err = run(capsys, "rename", "basics", "--target", "ONE", "--map", "a")
    assert code == ERROR and "old=new" in err


def test_ca_generate(capsys):
    code, out, err = run(capsys, "ca", "generate", "creation_example", "--name", "X")
    assert code == OK
    assert out.startswith("automaton X")
    assert "created: c -> {A}" in out
    code, _, err = run(capsys, "ca", "generate", "creation_example", "--name", "A")
    assert code == ERROR and "not a configuration automaton" in err


def test_check_theorem_random(capsys):
    code, out, _ = run(capsys, "check", "theorem", "--id", "substitutivity", "--bundle", "random",
                       "--seed", "7", "--depth", "4", "--json")
    assert code == OK
    assert json.loads(out) == {"theorem": "substitutivity", "result": "pass", "witness": None}


def test_check_theorem_bundles(capsys):
    code, out, _ = run(capsys, "check", "theorem", "--id", "creation-mono", "--bundle", "x-to-y",
                       "--model", "creation_fixture", "--depth", "6")
    assert code == OK and out.startswith("creation-mono: pass")
    code, out, _ = run(capsys, "check", "theorem", "--id", "creation-mono", "--bundle", "x-to-y",
                       "--model", "creation_example", "--depth", "6")
    assert code == OK and out.startswith("creation-mono: vacuous")


def test_usage_errors(capsys):
    assert run(capsys, "check", "theorem", "--id", "projection", "--bundle", "random")[0] == ERROR
    assert run(capsys, "check", "theorem", "--id", "projection", "--bundle", "phone")[0] == ERROR
    assert run(capsys, "traces", "basics", "--target", "ONE", "--depth", "-1")[0] == ERROR
    assert run(capsys, "frobnicate")[0] == ERROR
    assert run(capsys, "--help")[0] == OK


def test_load_errors(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == ERROR and "cannot read" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{\n oops\n}")
    code, _, err = run(capsys, "validate", str(broken))
    assert code == ERROR and "broken.json:2:2" in err


def test_depth_default_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("DIOA_DEPTH_DEFAULT", "0")
    assert default_depth() == 0
    code, out, _ = run(capsys, "traces", "basics", "--target", "ONE")
    assert code == OK and out.splitlines() == ["{|a}"]
    monkeypatch.setenv("DIOA_DEPTH_DEFAULT", "many")
    assert run(capsys, "traces", "basics", "--target", "ONE")[0] == ERROR
    monkeypatch.delenv("DIOA_DEPTH_DEFAULT")
    assert default_depth() == 6


def test_examples_list_and_emit(capsys, tmp_path):
    code, out, _ = run(capsys, "examples", "list")
    assert code == OK and "travel_agent" in out.split()
    code, out, _ = run(capsys, "examples", "emit", "basics")
    assert code == OK and json.loads(out)["dioa_schema"] == 1
    assert run(capsys, "examples", "emit", "--out", str(tmp_path))[0] == OK
    assert (tmp_path / "mobile_phone.dioa.json").is_file()
    assert run(capsys, "examples", "emit")[0] == ERROR


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "dioa", "examples", "list"],
                         capture_output=True, text=True)
    assert out.returncode == OK
    assert out.stdout.split()[0] == "basics"
