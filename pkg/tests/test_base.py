# coding: utf-8

import pytest

import orlicz.base
from orlicz.base import Config, ConfigError, ConfigFileError

# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Config
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~


def test_Config():
    from orlicz.base import Config
    assert Config


def test_Config_defaults():
    Config.reset()
    config = Config()
    assert config.seed == orlicz.base.DEFAULT_SEED
    assert config.threads == 1
    assert config.rel_tol == 1e-10
    assert config.restarts == 8
    assert config.iters == 500
    assert config.tol == 1e-8
    assert config.p1 == 4.0
    assert config.grid == 0


def test_Config_values():
    config = Config("[general]\nseed = 7\nthreads = 4\n[opnorm]\nrestarts = 2\n")
    assert config.seed == 7
    assert config.threads == 4
    assert config.restarts == 2
    # Missing options fall back to defaults
    assert config.iters == orlicz.base.ITERATIONS
    Config.reset()


def test_Config_example():
    config = Config(Config.example())
    assert config.as_dict() == dict(
        seed=20240601, threads=1, rel_tol=1e-10, restarts=8, iters=500,
        tol=1e-8, p1=4.0, grid=0)
    Config.reset()


def test_Config_invalid():
    config = Config("[general]\nseed = abc\n")
    with pytest.raises(ConfigError):
        config.seed
    config = Config("[general]\nseed = -1\n")
    with pytest.raises(ConfigError):
        config.seed
    Config.reset()


def test_Config_missing_file(tmp_path):
    with pytest.raises(ConfigFileError):
        Config(path=str(tmp_path / "missing"))
    Config.reset()


def test_Config_file(tmp_path):
    path = tmp_path / "config"
    path.write_text("[luxemburg]\nrel_tol = 1e-12\n")
    assert Config(path=str(path)).rel_tol == 1e-12
    # Reused until reset
    assert Config().rel_tol == 1e-12
    Config.reset()
    assert Config().rel_tol == orlicz.base.REL_TOL


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Exceptions
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def test_exit_codes():
    from orlicz.base import (AcceptanceError, GeneralError, NumericalError,
                             OptionError)
    assert GeneralError.exit_code == 1
    assert OptionError("x").exit_code == 1
    assert ConfigError("x").exit_code == 1
    assert NumericalError("x").exit_code == 2
    assert AcceptanceError("x").exit_code == 3
    assert issubclass(ConfigFileError, ConfigError)
    assert issubclass(NumericalError, GeneralError)
