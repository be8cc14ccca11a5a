import json
import subprocess
import sys

import pytest

from dwdefect import cli
from dwdefect.kitaev import OracleResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _genus_json(n, genus):
    handles = [(f"a{i}", f"b{i}") for i in range(genus)]
    word = []
    for a, b in handles:
        word += [[a, 1], [b, 1], [a, -1], [b, -1]]
    return {"format": 1, "name": f"genus{genus}", "groups": {"G": {"kind": "symmetric", "n": n}},
            "vertices": [{"id": "v", "group": "G"}],
            "edges": [{"id": e, "source": "v", "target": "v", "biset": "G"} for pair in handles for e in pair],
            "faces": [{"id": "f", "word": word, "rep": "flat"}]}


@pytest.mark.parametrize("name, dim", [("torus_z2.json", 4), ("torus_s3.json", 8), ("genus2_z2.json", 16),
                                       ("sphere_s3.json", 1), ("sphere_two_excitations_z2.json", 1),
                                       ("sphere_one_excitation_z2.json", 0), ("wall_torus_z2_s3.json", 6)])
def test_surface_dimensions(capsys, name, dim):
    code, out, _ = run(capsys, "surface", name)
    assert code == 0
    assert out.splitlines()[0] == f"dim Z(Σ) = {dim}"


def test_surface_basis_and_json(capsys):
    code, out, _ = run(capsys, "surface", "torus_s3.json", "--basis")
    assert code == 0 and "basis at" in out
    code, out, _ = run(capsys, "surface", "torus_s3.json", "--json", "--basis")
    record = json.loads(out)
    assert code == 0 and record["dim"] == 8


def test_json_output_is_deterministic(capsys):
    for args in (("surface", "wall_torus_z2_s3.json", "--json", "--basis"),
                 ("cobordism", "solid_torus_flux_z2.json", "--json"),
                 ("oracle", "torus_s3.json", "--json")):
        first = run(capsys, *args)[1]
        assert first == run(capsys, *args)[1]


def test_cobordism_outputs(capsys):
    code, out, _ = run(capsys, "cobordism", "handlebody_double_z2_z3.json")
    assert code == 0 and out.startswith("Z(M) = 6 ")
    code, out, _ = run(capsys, "cobordism", "solid_torus_vacuum_z2.json")
    assert code == 0 and out.splitlines()[1].split() == ["1", "0", "1", "0"]
    code, out, _ = run(capsys, "cobordism", "solid_torus_flux_z2.json")
    assert out.splitlines()[1].split() == ["0", "1", "0", "1"]
    code, out, _ = run(capsys, "cobordism", "cylinder_torus_z2.json")
    rows = [line.split() for line in out.splitlines()[1:]]
    assert rows == [["1" if i == j else "0" for j in range(4)] for i in range(4)]
    code, out, _ = run(capsys, "cobordism", "handlebody_double_z2_z3.json", "--json")
    assert json.loads(out)["consistent"] is True


def test_oracle_output(capsys):
    code, out, _ = run(capsys, "oracle", "torus_s3.json")
    assert code == 0 and out.strip() == "ground space dim = 8 (matches surface: yes)"


def test_oracle_mismatch_exits_with_three(capsys, monkeypatch):
    monkeypatch.setattr(cli, "ground_space_dim", lambda S, budget=None: OracleResult(3, 36, 8, False))
    code, out, _ = run(capsys, "oracle", "torus_s3.json")
    assert code == 3 and "matches surface: no" in out


def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples")
    lines = out.splitlines()
    assert code == 0
    assert lines[-1] == f"{len(lines) - 1}/{len(lines) - 1} examples passed"
    assert all(line.startswith("[PASS]") for line in lines[:-1])


def test_input_errors_exit_with_two(capsys, tmp_path):
    code, _, err = run(capsys, "surface", "malformed_face.json")
    assert code == 2 and "face 'broken'" in err
    code, _, err = run(capsys, "surface", str(tmp_path / "absent.json"))
    assert code == 2 and "no such file" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert run(capsys, "surface", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({**_genus_json(3, 1), "format": 7}))
    assert run(capsys, "surface", str(wrong))[0] == 2
    code, _, err = run(capsys, "oracle", "torus_s3.json", "--budget", "5")
    assert code == 2 and "budget" in err
    code, _, err = run(capsys, "surface", "torus_s3.json", "--tol", "0.5")
    assert code == 2


def test_budget_exhaustion_exits_with_two(capsys, tmp_path):
    big = tmp_path / "genus3_s3.json"
    big.write_text(json.dumps(_genus_json(3, 3)))
    code, _, err = run(capsys, "surface", str(big), "--budget", "10000")
    assert code == 2 and "budget" in err.lower()


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["surface"], ["surface", "x.json", "--bogus"]])
def test_usage_errors_exit_with_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dwdefect", "surface", "torus_z2.json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("dim Z(Σ) = 4")


def test_flags_do_not_leak_into_later_calls(capsys):
    from dwdefect.config import DEFAULT_BUDGET, settings

    run(capsys, "surface", "torus_z2.json", "--budget", "10000", "--tol", "1e-6")
    assert settings.budget == DEFAULT_BUDGET and settings.tol == 1e-9
