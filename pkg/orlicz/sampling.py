# coding: utf-8

"""
Seeded Bernoulli subset selection and subset densities

Generator contract: index i (1-based) of a subset drawn with seed s is
included when the i-th double of the Philox4x64-10 stream keyed by s
(numpy ``Generator(Philox(key=s)).random``) is below delta. Each double
is a function of (s, i) only, so inclusion does not depend on the
order in which indices are visited. Trial t of an experiment uses the
seed ``base_seed + t``.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from orlicz.base import OptionError
from orlicz.utils import log

# Largest accepted seed
MAX_SEED = 2 ** 64

# Independent streams derived from one seed
STREAM_ASCENT = 1
STREAM_SPHERE = 2
STREAM_COEFFICIENTS = 3


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Index Set
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

@dataclass(frozen=True)
class IndexSet:
    """ Sorted distinct indices from 1..n with their provenance """
    indices: tuple
    n: int
    delta: float = 1.0
    seed: int = None

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise OptionError("Indices must be strictly increasing.")
        if indices and (indices[0] < 1 or indices[-1] > self.n):
            raise OptionError(
                "Indices must lie in 1..{0}.".format(self.n))
        object.__setattr__(self, "indices", indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, index):
        return index in set(self.indices)

    def to_json(self):
        """ Serialize as {n, delta, seed, indices} """
        return json.dumps(dict(
            n=self.n, delta=self.delta, seed=self.seed,
            indices=list(self.indices)), sort_keys=True)

    @staticmethod
    def from_json(text):
        """ Load the set from its json form """
        try:
            data = json.loads(text)
            return IndexSet(
                indices=tuple(data["indices"]), n=int(data["n"]),
                delta=float(data.get("delta", 1.0)), seed=data.get("seed"))
        except (ValueError, KeyError, TypeError) as error:
            log.debug(error)
            raise OptionError("Invalid index set json.")


def full_set(n):
    """ All indices 1..n """
    return IndexSet(tuple(range(1, n + 1)), n)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Densities
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def _check_n(n):
    if int(n) != n or n < 3:
        raise OptionError("Density needs an integer n >= 3, got {0}.".format(n))


def delta_main(n, alpha):
    """ Density 1/(e ln^(alpha+1) n) of the main bound, at most 1 """
    _check_n(n)
    if not alpha > 0:
        raise OptionError("Density needs alpha > 0, got {0}.".format(alpha))
    return min(1.0, 1.0 / (math.e * math.log(n) ** (alpha + 1)))


def delta_power(n, rho):
    """ Density ln(n)^(-rho), at most 1 """
    _check_n(n)
    if not rho > 0:
        raise OptionError("Density needs rho > 0, got {0}.".format(rho))
    return min(1.0, math.log(n) ** (-rho))


def delta_kashin(n, rho):
    """ Density ln(n + 3)^(-rho) used by the comparison results """
    _check_n(n)
    if not rho > 0:
        raise OptionError("Density needs rho > 0, got {0}.".format(rho))
    return min(1.0, math.log(n + 3) ** (-rho))


def delta_zygmund(n, p, alpha):
    """ Density n^(2/p - 1) / ln^alpha(n) giving n^(2/p)/ln^alpha(n) indices """
    _check_n(n)
    if not p > 2 or not alpha > 0:
        raise OptionError("Density needs p > 2 and alpha > 0.")
    return min(1.0, n ** (2.0 / p - 1) / math.log(n) ** alpha)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Random Streams
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def _check_seed(seed):
    if int(seed) != seed or not 0 <= seed < MAX_SEED:
        raise OptionError(
            "Seed must be a 64-bit unsigned integer, got {0}.".format(seed))
    return int(seed)


def uniform_stream(seed, n):
    """ The first n doubles of the Philox stream keyed by seed """
    generator = np.random.Generator(np.random.Philox(key=_check_seed(seed)))
    return generator.random(n)


def random_generator(seed, stream):
    """ Independent generator for auxiliary randomness of a trial """
    sequence = np.random.SeedSequence(_check_seed(seed), spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(sequence))


def bernoulli_subset(n, delta, seed):
    """ Include each index of 1..n independently with probability delta """
    if int(n) != n or n < 0:
        raise OptionError("Invalid number of indices '{0}'.".format(n))
    if not 0 <= delta <= 1:
        raise OptionError(
            "Inclusion probability must lie in [0, 1], got {0}.".format(
                delta))
    seed = _check_seed(seed)
    selected = np.flatnonzero(uniform_stream(seed, int(n)) < delta) + 1
    log.debug("Selected {0} of {1} indices (delta={2!r}, seed={3})".format(
        selected.size, n, delta, seed))
    return IndexSet(tuple(selected.tolist()), int(n), float(delta), seed)
