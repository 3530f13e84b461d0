# coding: utf-8

import math

import pytest

from orlicz.base import OptionError
from orlicz.stats import Proportion, binomial_tail, mean, median

# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Proportion
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~


def test_Proportion():
    proportion = Proportion(25, 100)
    assert proportion.estimate == 0.25
    assert proportion.standard_error == pytest.approx(
        math.sqrt(0.25 * 0.75 / 100))
    assert str(proportion) == "25/100"
    assert proportion.as_dict()["trials"] == 100


def test_Proportion_add_merge():
    proportion = Proportion()
    assert math.isnan(proportion.estimate)
    for success in [True, False, True, True]:
        proportion.add(success)
    merged = proportion.merge(Proportion(1, 4))
    assert (merged.successes, merged.trials) == (4, 8)
    assert merged.estimate == 0.5


def test_Proportion_within():
    assert Proportion(50, 100).within(0.6)
    assert not Proportion(50, 100).within(0.8)
    # Degenerate estimates use one over the trials as error floor
    assert Proportion(1000, 1000).within(0.9987)


def test_Proportion_invalid():
    with pytest.raises(OptionError):
        Proportion(3, 2)
    with pytest.raises(OptionError):
        Proportion(-1, 2)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Summaries
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def test_median_mean():
    assert median([3, 1, 2]) == 2
    assert median([1, 2, float("nan"), 3, 4]) == 2.5
    assert math.isnan(median([]))
    assert mean([1, 2, 3]) == 2
    assert math.isnan(mean([float("nan")]))


def test_binomial_tail():
    assert binomial_tail(10, 0.5, 0) == 1
    assert binomial_tail(10, 0.5, 10) == pytest.approx(0.5 ** 10)
    assert binomial_tail(10, 0.5, 5) == pytest.approx(0.623046875)
    assert binomial_tail(10, 0.5, 4.2) == pytest.approx(0.623046875)
    assert binomial_tail(10, 0, 1) == 0
    with pytest.raises(OptionError):
        binomial_tail(10, 1.5, 1)
