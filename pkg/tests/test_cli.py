import json
import subprocess
import sys

import pytest

from heightlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_disc(capsys):
    code, out = run(capsys, "disc", "x^5+x^3+1")
    assert code == 0 and out.strip() == "3233"
    code, out = run(capsys, "disc", "1,0,0,1,0,1", "--json")
    data = json.loads(out)
    assert data == {"schema": "heightlab/1", "input": "1,0,0,1,0,1", "discriminant": "3233"}


def test_sturm_with_negative_bounds(capsys):
    code, out = run(capsys, "sturm", "x^2-2", "-3/2", "0", "--json")
    assert json.loads(out)["count"] == "1"
    code, out = run(capsys, "sturm", "-x^2+2")
    assert out.startswith("2 ")


def test_height_json_schema(capsys):
    code, out = run(capsys, "--json", "height", "x^5+x^3+1")
    data = json.loads(out)
    assert code == 0 and data["schema"] == "heightlab/1"
    assert set(data["bounds"]) == {"C", "garza", "halved", "final"}
    assert data["R"] == "1/5"


def test_mahler_and_circle(capsys):
    code, out = run(capsys, "mahler", "5x^2-6x+5")
    assert out.strip() == "M = 5"
    code, out = run(capsys, "circle", "x^5+x^3+1", "--json")
    data = json.loads(out)
    assert data["on_circle"] is False and "witness" in data


def test_garza(capsys):
    code, out = run(capsys, "garza", "1", "--json")
    g = json.loads(out)["garza"]
    assert g["lo"] <= 0.2406059125298017 <= g["hi"]


def test_group(capsys):
    code, out = run(capsys, "group", "(0 1 2 3 4)", "(0 1 2)", "--simple",
                    "--centralizer", "(0 1)(2 3)", "--fixed-cosets", "(0 1)(2 3)", "(0 1)(2 3)", "--json")
    data = json.loads(out)
    assert data["group"]["order"] == "60"
    assert data["simple"] is True
    assert data["centralizer"]["order"] == "4"
    assert data["fixed_cosets"]["count"] == "2" and data["fixed_cosets"]["index"] == "30"


def test_scenario_commands_exit_codes(capsys):
    assert run(capsys, "paper", "example2", "--p", "3")[0] == 0
    assert run(capsys, "paper", "small-height", "--n", "4")[0] == 0
    assert run(capsys, "paper", "bound", "x^5+x^3+1", "--imaginary")[0] == 0


def test_errors_exit_nonzero(capsys):
    assert main(["paper", "example2", "--p", "4"]) == 2
    assert main(["disc", "x+1"]) == 2
    assert "error" in capsys.readouterr().err


def test_global_flags_before_and_after(capsys):
    a = run(capsys, "--json", "paper", "example2")[1]
    b = run(capsys, "paper", "example2", "--json")[1]
    assert a == b


def test_console_script_module_entry():
    proc = subprocess.run([sys.executable, "-m", "heightlab", "disc", "x^2+1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "-4"
