# coding: utf-8

"""
Sharpness construction with contiguous frequency blocks

The frequencies [n], n = N m^m, are split into T = m^m contiguous
blocks of length N. A subset drawn with density ln(n)^(-rho),
rho = m/(2N), contains a whole block with probability at least
1 - 1/e. The normalized block sum is large near the origin, which
forces its Orlicz norm above a level w* that only depends on N and
alpha.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from orlicz.base import (MAX_SHARPNESS_N, REL_TOL, NumericalError,
                         OptionError)
from orlicz.experiments import (Experiment, TrialRecord, run_trials,
                                simplified_factor, size_threshold)
from orlicz.luxemburg import luxemburg_norm
from orlicz.opnorm import AscentOptions, opnorm_ascent
from orlicz.sampling import IndexSet, bernoulli_subset, delta_power
from orlicz.stats import Proportion, mean
from orlicz.systems import FourierSystem, fourier_system
from orlicz.utils import log
from orlicz.young import young_close2

# Grid atoms per block frequency at least
GRID_PER_FREQUENCY = 32


@dataclass(frozen=True)
class SharpnessConfig:
    """ Parameters of the block construction """
    m: int
    N: int
    alpha: float
    M: int = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise OptionError("Sharpness needs integer m >= 2.")
        if int(self.N) != self.N or self.N < 1:
            raise OptionError("Sharpness needs integer N >= 1.")
        if not self.alpha > 0:
            raise OptionError("Sharpness needs alpha > 0.")
        if self.M is None or self.M == 0:
            object.__setattr__(self, "M", GRID_PER_FREQUENCY * self.N)
        if int(self.M) != self.M or self.M < GRID_PER_FREQUENCY * self.N:
            raise OptionError("Grid M = {0} must be at least 32 N = {1}.".format(
                self.M, GRID_PER_FREQUENCY * self.N))
        if self.n > MAX_SHARPNESS_N:
            raise OptionError(
                "Sharpness with n = {0} exceeds the limit {1}.".format(
                    self.n, MAX_SHARPNESS_N))

    @property
    def T(self):
        """ Number of blocks """
        return self.m ** self.m

    @property
    def n(self):
        """ Size of the system """
        return self.N * self.T

    @property
    def rho(self):
        return self.m / (2 * self.N)

    @property
    def delta(self):
        """ Inclusion probability ln(n)^(-rho) """
        return delta_power(self.n, self.rho)

    def block(self, t):
        """ Indices (t-1)N+1 .. tN of block t """
        if not 1 <= t <= self.T:
            raise OptionError("Block {0} out of range 1..{1}.".format(
                t, self.T))
        first = (t - 1) * self.N + 1
        return IndexSet(tuple(range(first, first + self.N)), self.n)

    def as_dict(self):
        return dict(
            m=self.m, N=self.N, alpha=self.alpha, M=self.M, n=self.n,
            T=self.T, rho=self.rho, delta=self.delta)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Construction
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def build_sharpness(m, N, alpha, M=None):
    """
    Create the configuration, the Fourier system of size n and blocks

    The system lives on a grid of max(M, 2n) atoms. Witness norms and
    the interval check use the block systems on the grid of M atoms.
    """
    config = SharpnessConfig(int(m), int(N), float(alpha), M)
    system = fourier_system(config.n, max(config.M, 2 * config.n))
    blocks = [config.block(t) for t in range(1, config.T + 1)]
    log.info("Sharpness with n = {0}, {1} blocks of length {2}".format(
        config.n, config.T, config.N))
    return config, system, blocks


def block_system(config, t):
    """ Fourier characters of block t alone on the grid of M atoms """
    return FourierSystem(np.asarray(config.block(t).indices), config.M)


def _block_sum(system, block):
    indices = getattr(block, "indices", block)
    size = len(indices)
    return system.synthesize(indices, np.full(size, 1 / math.sqrt(size)))


def sharpness_witness_norm(space, spec, system, block, rel_tol=REL_TOL):
    """ Luxemburg norm of the normalized block sum """
    return luxemburg_norm(
        space, spec, _block_sum(system, block), rel_tol).value


def sharpness_interval_check(space, system, block):
    """
    Smallest modulus of the normalized block sum near the origin

    Returns the minimum over atoms x in [0, 1/(8N)] and the threshold
    sqrt(N)/2 it has to reach.
    """
    if space.coordinates is None:
        raise OptionError("Interval check needs atom coordinates.")
    size = len(getattr(block, "indices", block))
    moduli = np.abs(_block_sum(system, block))
    near = space.coordinates <= 1.0 / (8 * size)
    return float(moduli[near].min()), math.sqrt(size) / 2


def sharpness_w_star(N, alpha, u0=math.e):
    """
    Smallest w with w^2 >= ln^alpha(sqrt(N)/(2w)) / 32 or sqrt(N)/(2w) < u0

    Lower bound for the norm of a normalized block sum.
    """
    limit = math.sqrt(N) / (2 * u0)

    def excess(w):
        return math.log(math.sqrt(N) / (2 * w)) ** alpha / 32 - w ** 2

    if excess(limit) <= 0:
        low = limit
        while excess(low) <= 0:
            low /= 2
        return float(bisect(excess, low, limit, xtol=1e-15, rtol=1e-14))
    return limit


def block_hit_probability(delta, N, T):
    """ Probability 1 - (1 - delta^N)^T that some block is fully selected """
    if not 0 <= delta <= 1:
        raise OptionError("Probability delta must lie in [0, 1].")
    single = delta ** N
    if single >= 1:
        return 1.0
    return float(-math.expm1(T * math.log1p(-single)))


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Experiment
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def run_sharpness(m, N, alpha, trials, base_seed, M=None, full_sup=False,
                  options=None, threads=1):
    """
    Draw subsets and look for fully selected blocks

    On a hit the witness norm of the first hit block is the recorded
    lower bound of the supremum. With full_sup the ascent estimate over
    the whole subset is stored as well.
    """
    options = options or AscentOptions()
    config, system, _ = build_sharpness(m, N, alpha, M)
    spec = young_close2(alpha)
    w_star = sharpness_w_star(config.N, alpha, spec.u0)
    threshold = size_threshold(config.n, alpha)
    factor = simplified_factor(config.n, alpha)
    delta = config.delta

    def trial(number):
        seed = base_seed + number
        record = TrialRecord(
            "sharpness", config.n, alpha, seed,
            rho=config.rho, m=config.m, N=config.N)
        J = bernoulli_subset(config.n, delta, seed)
        selected = np.zeros(config.n, dtype=bool)
        selected[np.asarray(J.indices, dtype=int) - 1] = True
        hits = np.flatnonzero(selected.reshape(config.T, config.N).all(axis=1))
        record.extra.update(hit=bool(hits.size), hits=int(hits.size))
        witness = 0.0
        try:
            if hits.size:
                t = int(hits[0]) + 1
                local = block_system(config, t)
                witness = sharpness_witness_norm(
                    local.space, spec, local, range(1, config.N + 1),
                    options.rel_tol)
                record.extra.update(block=t, witness_norm=witness)
            lower = witness
            if full_sup and len(J):
                estimate = opnorm_ascent(
                    system.space, spec, system, J, options, seed)
                record.extra["full_sup"] = estimate.value
                lower = max(lower, estimate.value)
        except NumericalError as error:
            record.J_size = len(J)
            return record.fail(error)
        record.fill(len(J), threshold, lower, factor)
        record.norm_ok = bool(hits.size) and witness >= w_star
        record.joint_ok = record.size_ok and record.norm_ok
        return record

    records = run_trials(trial, trials, threads)
    return records, summarize(records, config, w_star)


def summarize(records, config, w_star):
    """ Hit probability against its exact value and the witness level """
    valid = [r for r in records if not r.failed]
    hits = Proportion(sum(r.extra["hit"] for r in valid), len(valid))
    exact = block_hit_probability(config.delta, config.N, config.T)
    floor = 1 - 1 / math.e
    witnesses = [r.extra["witness_norm"] for r in valid if r.extra["hit"]]
    local = block_system(config, 1)
    minimum, level = sharpness_interval_check(
        local.space, local, range(1, config.N + 1))
    coverage = config.delta ** config.N * config.T
    return dict(
        experiment="sharpness", config=config.as_dict(),
        trials=len(records), failures=len(records) - len(valid),
        coverage=coverage, coverage_at_least_one=coverage >= 1,
        hit=hits.as_dict(), exact_hit_probability=exact,
        hit_within_3se=hits.within(exact),
        floor=floor,
        above_floor=hits.estimate >= floor - 3 * hits.standard_error,
        w_star=w_star, expectation_floor=exact * w_star,
        mean_witness=mean(witnesses),
        min_witness=min(witnesses, default=float("nan")),
        witnesses_above_w_star=all(value >= w_star for value in witnesses),
        interval_minimum=minimum, interval_threshold=level,
        interval_holds=minimum >= level)


class SharpnessExperiment(Experiment):
    """
    Fully selected frequency blocks

    Measures how often a random subset contains a whole block and the
    Orlicz norm of the normalized block sums.
    """

    @staticmethod
    def add_arguments(parser):
        parser.add_argument(
            "--m", type=int, default=4, help="Block exponent m (default: 4)")
        parser.add_argument(
            "--N", type=int, default=2, help="Block length N (default: 2)")
        parser.add_argument(
            "--alpha", type=float, default=1.0,
            help="Exponent alpha of close2 (default: 1)")
        parser.add_argument(
            "--M", type=int, default=0,
            help="Grid of the block systems (default: 32 N)")
        parser.add_argument(
            "--trials", type=int, default=1000,
            help="Number of trials (default: 1000)")
        parser.add_argument(
            "--full-sup", action="store_true",
            help="Estimate the supremum over the whole subset by ascent")

    def run(self):
        options = self.options
        return run_sharpness(
            options.m, options.N, options.alpha, options.trials,
            options.seed, options.M, options.full_sup,
            AscentOptions(
                options.restarts, options.iters, options.tol,
                options.rel_tol),
            threads=options.threads)
