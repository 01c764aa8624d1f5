import json

import numpy as np
import pytest

from spinlattice import random_admissible_triple, random_minimal_realization
from spinlattice import serialize
from spinlattice.cli import main
from spinlattice.worked_example import example_triple


@pytest.fixture
def triple_file(tmp_path, rng):
    t = random_admissible_triple(rng, 3, 1)
    path = tmp_path / "triple.json"
    path.write_text(serialize.dumps(serialize.triple_to_obj(t)))
    return str(path)


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.json"
    path.write_text(serialize.dumps(serialize.triple_to_obj(example_triple(2))))
    return str(path)


def test_validate(triple_file, capsys):
    assert main(["validate", triple_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"] == "FG"
    assert out["identity_ok"]


def test_validate_missing_file(capsys):
    assert main(["validate", "/nonexistent/triple.json"]) == 2
    assert "error" in capsys.readouterr().err


def test_validate_bad_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    assert main(["validate", str(path)]) == 2


def test_spins_csv(triple_file, capsys):
    assert main(["spins", triple_file, "--nmax", "3", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,i,j,re,im"
    assert len(lines) == 1 + 3 * 4


def test_spins_json_deterministic(triple_file, capsys):
    assert main(["spins", triple_file, "--nmax", "2"]) == 0
    first = capsys.readouterr().out
    assert main(["spins", triple_file, "--nmax", "2"]) == 0
    assert capsys.readouterr().out == first


def test_fundamental_table(triple_file, capsys):
    assert main(["fundamental", triple_file, "--lambda", "2+0.5i",
                 "--nmax", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["table"]) == 3
    w0 = serialize.matrix_from_obj(out["table"][0]["w"])
    assert np.allclose(w0, np.eye(2))


def test_weyl_grid(triple_file, capsys):
    assert main(["weyl", triple_file, "--lambda-grid", "0,-3,2,4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out) == 4
    assert set(out[0]) == {"lambda", "phi"}


def test_invert_round_trip(tmp_path, rng, capsys):
    r = random_minimal_realization(rng, 3, 1)
    path = tmp_path / "real.json"
    path.write_text(serialize.dumps(serialize.realization_to_obj(r)))
    out_path = tmp_path / "triple.json"
    assert main(["invert", str(path), "-o", str(out_path)]) == 0
    assert main(["validate", str(out_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["class"] == "FG"


def test_evolve_csv(example_file, capsys):
    assert main(["evolve", example_file, "--time-grid", "0,0.4,3",
                 "--nmax", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,n,s1,s2,s3,zc_residual,ihm_residual"
    assert len(lines) == 1 + 3
    first = lines[1].split(",")
    norm = sum(float(x) ** 2 for x in first[2:5])
    assert norm == pytest.approx(1.0, abs=1e-9)
    assert float(first[5]) <= 1e-6 and float(first[6]) <= 1e-6


def test_verify_passes(triple_file, capsys):
    assert main(["verify", triple_file, "--nmax", "12"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert "FAIL" not in out


def test_example_fixture(capsys):
    assert main(["example", "--h", "2"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_bad_tolerance_flag(triple_file):
    assert main(["validate", triple_file, "--tol", "nonsense=1"]) == 2
    assert main(["validate", triple_file, "--tol", "id_tol=-1"]) == 2


def test_bad_lambda_grid(triple_file):
    assert main(["weyl", triple_file, "--lambda-grid", "1,2,3"]) == 2
