# coding: utf-8

"""
Monte Carlo experiments around Orlicz norms of random subsystems

Each experiment lives in its own module and registers itself through
the ``ExperimentPlugin`` metaclass under the module name. Experiments
produce one ``TrialRecord`` per trial plus a summary dictionary. Trial
t always uses the seed ``base_seed + t`` and records are emitted in
trial order, so output files do not depend on the number of threads.
"""

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from orlicz import utils
from orlicz.base import MIN_EXPERIMENT_N, OptionError
from orlicz.sampling import delta_main
from orlicz.stats import median
from orlicz.utils import log

# Fixed column order of the trial csv
COLUMNS = [
    "experiment", "alpha", "rho", "n", "m", "N", "seed", "J_size",
    "size_threshold", "norm_lb", "factor", "ratio", "size_ok", "norm_ok",
    "joint_ok", "extra_json"]

# Calibrated constant is this multiple of the reference median ratio
CALIBRATION_FACTOR = 1.5

# Slack for proved upper bounds
CEILING_SLACK = 1e-6


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Formulas
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def check_n(n):
    """ Experiments need n >= 16 so that ln ln n is positive """
    if int(n) != n or n < MIN_EXPERIMENT_N:
        raise OptionError("Experiments need integer n >= {0}, got {1}.".format(
            MIN_EXPERIMENT_N, n))
    return int(n)


def size_threshold(n, alpha):
    """ Expected subset size n / (e ln^(alpha+1) n) """
    return n * delta_main(n, alpha)


def simplified_factor(n, alpha):
    """ Growth factor ln^(alpha/2)(ln n) """
    return math.log(math.log(n)) ** (alpha / 2)


def full_factor(alpha, n, S=1.0, u0=math.e):
    """ Unsimplified growth factor ln^(alpha/2)(u0 + S^2 ln n) """
    return math.log(u0 + S ** 2 * math.log(n)) ** (alpha / 2)


def trivial_ceiling(alpha, n, c=1.0):
    """ Proved bound max(1, sqrt(c + ln^alpha(n) / 2^alpha)) for the full set """
    return max(1.0, math.sqrt(c + math.log(n) ** alpha / 2 ** alpha))


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Trial Record
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def _number(value):
    """ Csv representation of an optional number """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _plain(value):
    """ Convert numpy scalars for json """
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if hasattr(value, "item"):
        return value.item()
    return value


@dataclass
class TrialRecord:
    """ Outcome of a single trial """
    experiment: str
    n: int
    alpha: float
    seed: int
    rho: float = None
    m: int = None
    N: int = None
    J_size: int = 0
    size_threshold: float = float("nan")
    norm_lb: float = float("nan")
    factor: float = float("nan")
    ratio: float = float("nan")
    size_ok: bool = False
    norm_ok: bool = False
    joint_ok: bool = False
    failed: bool = False
    extra: dict = field(default_factory=dict)

    def fill(self, J_size, size_threshold, norm_lb, factor):
        """ Set the measured values and the derived columns """
        self.J_size = int(J_size)
        self.size_threshold = float(size_threshold)
        self.norm_lb = float(norm_lb)
        self.factor = float(factor)
        self.ratio = self.norm_lb / self.factor
        self.size_ok = self.J_size >= self.size_threshold
        return self

    def fail(self, error):
        """ Mark the trial as failed """
        log.warning("Trial {0} (n={1}, seed={2}) failed: {3}".format(
            self.experiment, self.n, self.seed, error))
        self.failed = True
        self.extra["error"] = str(error)
        self.size_ok = self.norm_ok = self.joint_ok = False
        return self

    def extra_json(self):
        extra = dict(self.extra)
        if self.failed:
            extra["failed"] = True
        return json.dumps(_plain(extra), sort_keys=True)

    def row(self):
        """ Values in the fixed column order """
        return [
            self.experiment, _number(self.alpha), _number(self.rho),
            _number(self.n), _number(self.m), _number(self.N),
            _number(self.seed), _number(self.J_size),
            _number(self.size_threshold), _number(self.norm_lb),
            _number(self.factor), _number(self.ratio),
            _number(self.size_ok), _number(self.norm_ok),
            _number(self.joint_ok), self.extra_json()]

    def as_dict(self):
        result = dict(zip(COLUMNS[:-1], [
            self.experiment, self.alpha, self.rho, self.n, self.m, self.N,
            self.seed, self.J_size, self.size_threshold, self.norm_lb,
            self.factor, self.ratio, self.size_ok, self.norm_ok,
            self.joint_ok]))
        result["extra"] = json.loads(self.extra_json())
        return result


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Output
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def write_csv(records, stream):
    """ Write records as csv in the fixed column order """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    for record in records:
        writer.writerow(record.row())


def write_json(records, stream):
    """ Write records as a json list """
    json.dump(
        [record.as_dict() for record in records], stream,
        indent=2, sort_keys=True, allow_nan=True)
    stream.write("\n")


def summary_json(summary):
    """ Deterministic json text of a summary """
    return json.dumps(_plain(summary), indent=2, sort_keys=True) + "\n"


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Trials
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def run_trials(trial, trials, threads=1):
    """ Run trial(t) for t = 0..trials-1, results in trial order """
    if int(trials) != trials or trials < 1:
        raise OptionError("At least one trial required, got {0}.".format(
            trials))
    if threads <= 1:
        return [trial(number) for number in range(int(trials))]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(trial, range(int(trials))))


def calibrate(records, factor=CALIBRATION_FACTOR):
    """
    Calibrate the unknown constant from the smallest n of each alpha

    The constant is ``factor`` times the median ratio observed at the
    smallest n. Norm and joint flags of all records are updated in
    place. Returns a mapping from alpha to the calibrated constant.
    """
    constants = dict()
    for alpha in sorted(set(record.alpha for record in records)):
        group = [record for record in records if record.alpha == alpha]
        smallest = min(record.n for record in group)
        reference = median([
            record.ratio for record in group
            if record.n == smallest and not record.failed])
        constant = factor * reference
        constants[alpha] = dict(K_hat=constant, reference_n=smallest)
        log.info("Calibrated K = {0!r} for alpha = {1} at n = {2}".format(
            constant, alpha, smallest))
        for record in group:
            if record.failed:
                continue
            record.norm_ok = bool(record.norm_lb <= constant * record.factor)
            record.joint_ok = record.size_ok and record.norm_ok
    return constants


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Experiment
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

class ExperimentPlugin(type):
    """ Register experiments by their module name """
    registry = {}
    ignore = set(["Experiment"])

    def __init__(cls, name, bases, attrs):
        if name in ExperimentPlugin.ignore:
            return
        plugin_name = cls.__module__.split(".")[-1]
        registry = ExperimentPlugin.registry
        if plugin_name in registry:
            log.warning("{0} overriding {1}".format(
                cls.__module__, registry[plugin_name].__module__))
        registry[plugin_name] = cls


class Experiment(object, metaclass=ExperimentPlugin):
    """ Experiment producing trial records and a summary """

    def __init__(self, options, config):
        """ Parsed command line options and the resolved config """
        self.options = options
        self.config = config

    @property
    def name(self):
        """ First line of the doc string """
        return [
            line.strip() for line in self.__doc__.split("\n")
            if line.strip()][0]

    @staticmethod
    def add_arguments(parser):
        """ Add experiment specific options to the parser """

    def run(self):
        """ Return the list of records and the summary dictionary """
        raise NotImplementedError()


def experiments():
    """ All registered experiments """
    utils.load_components("orlicz.experiments")
    return ExperimentPlugin.registry
