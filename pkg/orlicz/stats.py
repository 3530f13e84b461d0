# coding: utf-8

""" Summary statistics over experiment trials """

import math

import numpy as np
from scipy.stats import binom

from orlicz.base import OptionError


class Proportion(object):
    """ Success count out of a number of trials """

    def __init__(self, successes=0, trials=0):
        if not 0 <= successes <= trials:
            raise OptionError("Invalid proportion {0}/{1}.".format(
                successes, trials))
        self.successes = int(successes)
        self.trials = int(trials)

    def add(self, success):
        """ Record one trial """
        self.trials += 1
        self.successes += bool(success)

    def merge(self, other):
        """ Combine with another proportion """
        return Proportion(
            self.successes + other.successes, self.trials + other.trials)

    @property
    def estimate(self):
        """ Empirical frequency, nan without trials """
        if not self.trials:
            return float("nan")
        return self.successes / self.trials

    @property
    def standard_error(self):
        """ Binomial standard error of the estimate """
        if not self.trials:
            return float("nan")
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    def within(self, expected, sigmas=3):
        """ True if expected lies within the given standard errors """
        error = max(self.standard_error, 1.0 / max(self.trials, 1))
        return abs(self.estimate - expected) <= sigmas * error

    def as_dict(self):
        return dict(
            successes=self.successes, trials=self.trials,
            estimate=self.estimate, standard_error=self.standard_error)

    def __str__(self):
        return "{0}/{1}".format(self.successes, self.trials)


def median(values):
    """ Median of the finite values, nan if there are none """
    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    if not values.size:
        return float("nan")
    return float(np.median(values))


def mean(values):
    """ Mean of the finite values, nan if there are none """
    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    if not values.size:
        return float("nan")
    return float(np.mean(values))


def binomial_tail(n, delta, k):
    """ Probability that Binomial(n, delta) is at least k """
    if int(n) != n or n < 0 or not 0 <= delta <= 1:
        raise OptionError("Invalid binomial parameters.")
    if k <= 0:
        return 1.0
    return float(binom.sf(math.ceil(k) - 1, int(n), delta))
