# coding: utf-8

""" Constants, exceptions and config """

import codecs
import configparser
import io
from configparser import NoOptionError, NoSectionError

from orlicz import utils
from orlicz.utils import log

# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Constants
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

# Default seed, runs are reproducible unless a seed is given
DEFAULT_SEED = 20240601

# Luxemburg solver
REL_TOL = 1e-10
MAX_DOUBLINGS = 200
MAX_BISECTIONS = 200

# Operator norm ascent
RESTARTS = 8
ITERATIONS = 500
TOLERANCE = 1e-8
INITIAL_STEP = 0.5
BACKTRACKING = 0.5

# Systems
P1 = 4.0
MIN_GRID = 1024
MAX_ATOMS = 2 ** 22

# Experiments
MIN_EXPERIMENT_N = 16
MAX_SHARPNESS_N = 10 ** 6

# Exit codes
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_ACCEPTANCE = 3

EXAMPLE_CONFIG = """
[general]
seed = 20240601
threads = 1

[luxemburg]
rel_tol = 1e-10

[opnorm]
restarts = 8
iters = 500
tol = 1e-8

[systems]
p1 = 4
grid = 0
"""


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Exceptions
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

class GeneralError(Exception):
    """ General orlicz error """
    exit_code = EXIT_INVALID


class ConfigError(GeneralError):
    """ Configuration problem """


class ConfigFileError(ConfigError):
    """ Problem with the config file """


class OptionError(GeneralError):
    """ Invalid argument or violated precondition """


class NumericalError(GeneralError):
    """ Numerical failure (bracketing, vanishing derivative) """
    exit_code = EXIT_NUMERICAL


class AcceptanceError(GeneralError):
    """ A proved bound has been violated """
    exit_code = EXIT_ACCEPTANCE


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Config
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

class Config(object):
    """ Optional run config file """

    parser = None

    def __init__(self, config=None, path=None):
        """
        Read the config

        Parse config from given string (config) or file (path). Without
        config and path the previously read config is reused, or an
        empty one is created so that all the defaults apply. There is
        no default location: the file is read only when requested with
        the ``--config`` option.
        """
        # Read the config only once (unless explicitly provided)
        if Config.parser is not None and config is None and path is None:
            return
        Config.parser = configparser.ConfigParser(interpolation=None)
        if config is not None:
            log.info("Inspecting config from string")
            log.debug(utils.pretty(config))
            self.parser.read_file(io.StringIO(config))
            return
        if path is None:
            return
        try:
            log.info("Inspecting config file '{0}'.".format(path))
            with codecs.open(path, "r", "utf8") as config_file:
                self.parser.read_file(config_file)
        except IOError as error:
            log.debug(error)
            Config.parser = None
            raise ConfigFileError(
                "Unable to read the config file '{0}'.".format(path))
        except configparser.Error as error:
            log.debug(error)
            Config.parser = None
            raise ConfigFileError(
                "Invalid config file '{0}'.".format(path))

    @staticmethod
    def reset():
        """ Forget the loaded config, defaults apply again """
        Config.parser = None

    def _get(self, section, option, default, kind):
        """ Fetch a typed value, fall back to default if missing """
        try:
            value = self.parser.get(section, option)
        except (NoOptionError, NoSectionError):
            return default
        try:
            return kind(value)
        except ValueError:
            raise ConfigError(
                "Invalid {0} '{1}' in the [{2}] section.".format(
                    option, value, section))

    @property
    def seed(self):
        """ Base seed of all random streams """
        seed = self._get("general", "seed", DEFAULT_SEED, int)
        if seed < 0 or seed >= 2 ** 64:
            raise ConfigError(
                f"Invalid seed '{seed}', should be a 64-bit unsigned integer.")
        return seed

    @property
    def threads(self):
        """ Maximum number of worker threads """
        return max(1, self._get("general", "threads", 1, int))

    @property
    def rel_tol(self):
        """ Relative tolerance of the Luxemburg solver """
        return self._get("luxemburg", "rel_tol", REL_TOL, float)

    @property
    def restarts(self):
        """ Ascent restarts """
        return self._get("opnorm", "restarts", RESTARTS, int)

    @property
    def iters(self):
        """ Ascent iteration cap """
        return self._get("opnorm", "iters", ITERATIONS, int)

    @property
    def tol(self):
        """ Ascent tolerance """
        return self._get("opnorm", "tol", TOLERANCE, float)

    @property
    def p1(self):
        """ Exponent used for the S statistic of systems """
        return self._get("systems", "p1", P1, float)

    @property
    def grid(self):
        """ Grid size, 0 means automatic """
        return self._get("systems", "grid", 0, int)

    def as_dict(self):
        """ All resolved values (written into provenance) """
        return dict(
            seed=self.seed, threads=self.threads, rel_tol=self.rel_tol,
            restarts=self.restarts, iters=self.iters, tol=self.tol,
            p1=self.p1, grid=self.grid)

    @staticmethod
    def example():
        """ Return config example """
        return EXAMPLE_CONFIG.lstrip()
