# coding: utf-8
""" Tests for the command line script """

import json

import pytest

import orlicz.base
import orlicz.cli
import orlicz.experiments.trivial
from orlicz.sampling import IndexSet

# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Constants
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

QUICK = "--restarts 2 --iters 30"
TRIVIAL = "experiment trivial --alpha 1 --n 16 32 --trials 3 " + QUICK


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Tests
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def test_help():
    """ Help message """
    assert orlicz.cli.main(["--help"]) == 0
    assert orlicz.cli.main("experiment sharpness --help") == 0


def test_debug(capsys):
    """ Check the debug mode """
    assert orlicz.cli.main("hit-prob --delta 1 --N 2 --T 3 --debug") == 0
    assert capsys.readouterr().out == "1.000000\n"


def test_invalid_arguments(capsys):
    """ Complain about invalid arguments """
    for argument in ["a", "something", "norm", "hit-prob --delta x"]:
        assert orlicz.cli.main(argument) == orlicz.base.EXIT_INVALID
        assert "usage" in capsys.readouterr().err


def test_invalid_values():
    """ Invalid option values """
    for argument in [
            "hit-prob --delta 1 --N 2 --T 3 --seed -1",
            "hit-prob --delta 1 --N 2 --T 3 --threads 0",
            "hit-prob --delta 2 --N 2 --T 3",
            "validate-young --family close2:alpha=-1",
            "validate-young --family cubic:p=3",
            "opnorm --family power:p=2 --system fourier:n=8 --subset 0,1",
            "opnorm --family power:p=2 --system hermite:n=8"]:
        assert orlicz.cli.main(argument) == orlicz.base.EXIT_INVALID


def test_hit_prob(capsys):
    """ Exact block hit probability """
    assert orlicz.cli.main("hit-prob --delta 0.1 --N 1 --T 10") == 0
    captured = capsys.readouterr()
    assert captured.out == "0.651322\n"
    # Provenance header on the error output
    header = json.loads(captured.err)
    assert header["command"] == "hit-prob"
    assert header["parameters"]["seed"] == orlicz.base.DEFAULT_SEED
    assert header["parameters"]["N"] == 1


def test_validate_young(capsys):
    """ Validation report as json """
    assert orlicz.cli.main("validate-young --family close2:alpha=1") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["young"] and report["nice"]
    assert report["grid_points"] == 400
    assert orlicz.cli.main(
        "validate-young --family power:p=1 --points 50") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["young"] and not report["nice"]


def test_norm(tmp_path, capsys):
    """ Luxemburg norm of a function file """
    path = tmp_path / "func.csv"
    path.write_text("3,0\n0,4\n0,0\n0,0\n")
    assert orlicz.cli.main(
        "norm --family power:p=2 --func {0}".format(path)) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["atoms"] == 4
    assert result["value"] == pytest.approx(2.5, rel=1e-9)
    assert orlicz.cli.main(
        "norm --family power:p=2 --func {0} --grid 8".format(path)) == 1


def test_opnorm(capsys):
    """ Operator norm of a random subset """
    assert orlicz.cli.main(
        "opnorm --family close2:alpha=1 --system fourier:n=64 "
        "--subset 0.5,3 " + QUICK) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["J_size"] > 0
    assert result["value"] >= 1 - 1e-6
    assert result["l2_top_singular"] == pytest.approx(1)


def test_opnorm_subset_file(tmp_path, capsys):
    """ Index set given as json file, with sphere sampling """
    path = tmp_path / "subset.json"
    path.write_text(IndexSet((1, 5, 9), 64).to_json())
    assert orlicz.cli.main(
        "opnorm --family close2:alpha=1 --system fourier:n=64 "
        "--subset {0} --samples 64 {1}".format(path, QUICK)) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["J_size"] == 3
    assert len(result["argmax_re"]) == 3
    assert result["bruteforce"] >= 1 - 1e-6
    # Index set for another system size
    path.write_text(IndexSet((1, 5, 9), 32).to_json())
    assert orlicz.cli.main(
        "opnorm --family close2:alpha=1 --system fourier:n=64 "
        "--subset {0}".format(path)) == 1


def test_experiment_stdout(capsys):
    """ Records on the standard output, summary on the error output """
    assert orlicz.cli.main(
        "experiment main --n 16 32 --trials 2 --format json " + QUICK) == 0
    captured = capsys.readouterr()
    records = json.loads(captured.out)
    assert len(records) == 4
    assert [record["n"] for record in records] == [16, 16, 32, 32]
    assert '"calibration"' in captured.err
    header, _ = json.JSONDecoder().raw_decode(captured.err)
    assert header["tool"] == "orlicz"
    assert header["parameters"]["experiment"] == "main"


def test_experiment_out(tmp_path):
    """ Output file with sidecars, reproducible bytes """
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    for path, threads in [(first, 1), (second, 2)]:
        assert orlicz.cli.main("{0} --threads {1} --out {2}".format(
            TRIVIAL, threads, path)) == 0
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().splitlines()
    assert lines[0].startswith("experiment,alpha,rho,n,")
    assert len(lines) == 1 + 2 * 4
    summary = json.loads(
        (tmp_path / "first.csv.summary.json").read_text())
    assert summary["violations"] == 0
    provenance = json.loads(
        (tmp_path / "first.csv.provenance.json").read_text())
    assert provenance["tool"] == "orlicz"
    assert provenance["parameters"]["seed"] == orlicz.base.DEFAULT_SEED
    assert provenance["parameters"]["experiment"] == "trivial"


def test_experiment_config(tmp_path):
    """ Defaults taken from the config file """
    config = tmp_path / "config"
    config.write_text("[general]\nseed = 5\n\n[opnorm]\nrestarts = 1\n")
    out = tmp_path / "out.csv"
    assert orlicz.cli.main("{0} --config {1} --out {2}".format(
        TRIVIAL, config, out)) == 0
    provenance = json.loads(
        (tmp_path / "out.csv.provenance.json").read_text())
    assert provenance["config"]["seed"] == 5
    assert provenance["parameters"]["seed"] == 5
    # Command line wins over the config
    assert provenance["parameters"]["restarts"] == 2
    missing = tmp_path / "missing"
    assert orlicz.cli.main("{0} --config {1}".format(
        TRIVIAL, missing)) == orlicz.base.EXIT_INVALID


def test_experiment_violation(monkeypatch, tmp_path):
    """ Exceeding the proved ceiling fails the run """
    monkeypatch.setattr(
        orlicz.experiments.trivial, "trivial_ceiling",
        lambda alpha, n, c=1.0: 0.5)
    assert orlicz.cli.main("{0} --out {1}".format(
        TRIVIAL, tmp_path / "out.csv")) == orlicz.base.EXIT_ACCEPTANCE
