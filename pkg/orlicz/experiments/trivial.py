# coding: utf-8

"""
Norms of full Fourier sums against the proved ceiling

For the full index set [n] every unit coefficient vector satisfies
||sum a_i phi_i|| <= max(1, sqrt(1 + ln^alpha(n) / 2^alpha)). Random
unit vectors and the ascent maximizer are checked against it. A
violation means a solver bug and fails the run.
"""

import numpy as np

from orlicz.base import NumericalError
from orlicz.experiments import (CEILING_SLACK, Experiment, TrialRecord,
                                check_n, run_trials, simplified_factor,
                                size_threshold, trivial_ceiling)
from orlicz.luxemburg import luxemburg_norm
from orlicz.opnorm import AscentOptions, opnorm_ascent
from orlicz.sampling import STREAM_COEFFICIENTS, full_set, random_generator
from orlicz.stats import median
from orlicz.systems import fourier_system
from orlicz.utils import log
from orlicz.young import young_close2


def random_unit(size, seed):
    """ Seeded complex coefficient vector of unit length """
    generator = random_generator(seed, STREAM_COEFFICIENTS)
    a = generator.standard_normal(size) + 1j * generator.standard_normal(size)
    return a / np.linalg.norm(a)


def _record(alpha, n, seed, value, kind):
    """ Record of one checked vector """
    ceiling = trivial_ceiling(alpha, n)
    record = TrialRecord("trivial", n, alpha, seed)
    record.fill(n, size_threshold(n, alpha), value, simplified_factor(n, alpha))
    record.norm_ok = bool(value <= ceiling + CEILING_SLACK)
    record.joint_ok = record.size_ok and record.norm_ok
    record.extra.update(kind=kind, ceiling=ceiling)
    if not record.norm_ok:
        log.error("Norm {0!r} exceeds the ceiling {1!r} (n={2}, alpha={3})"
                  .format(value, ceiling, n, alpha))
    return record


def run_trivial_bound(alpha, n_list, trials, base_seed, options=None,
                      grid=None, threads=1):
    """
    Check random unit vectors and the ascent maximizer on [n]

    Returns one record per random vector followed by one record for
    the ascent maximizer, for every n.
    """
    options = options or AscentOptions()
    spec = young_close2(alpha)
    records = []
    for n in sorted(check_n(n) for n in n_list):
        log.info("Trivial bound: alpha = {0}, n = {1}".format(alpha, n))
        system = fourier_system(n, grid)
        J = full_set(n)

        def trial(number):
            seed = base_seed + number
            try:
                values = system.synthesize(J, random_unit(n, seed))
                value = luxemburg_norm(
                    system.space, spec, values, options.rel_tol).value
            except NumericalError as error:
                return TrialRecord("trivial", n, alpha, seed).fail(error)
            return _record(alpha, n, seed, value, "random")

        records.extend(run_trials(trial, trials, threads))
        try:
            estimate = opnorm_ascent(
                system.space, spec, system, J, options, base_seed)
        except NumericalError as error:
            records.append(
                TrialRecord("trivial", n, alpha, base_seed).fail(error))
            continue
        record = _record(alpha, n, base_seed, estimate.value, "ascent")
        record.extra.update(converged=estimate.converged)
        records.append(record)
    return records, summarize(records)


def summarize(records):
    """ Violation counts and the largest observed norm per n """
    groups = []
    for alpha, n in sorted(set((r.alpha, r.n) for r in records)):
        group = [r for r in records if r.alpha == alpha and r.n == n]
        valid = [r for r in group if not r.failed]
        groups.append(dict(
            alpha=alpha, n=n, ceiling=trivial_ceiling(alpha, n),
            trials=len(group), failures=len(group) - len(valid),
            violations=sum(not r.norm_ok for r in valid),
            max_norm=max([r.norm_lb for r in valid], default=float("nan")),
            median_norm=median([r.norm_lb for r in valid])))
    return dict(
        experiment="trivial", groups=groups,
        violations=sum(group["violations"] for group in groups))


class TrivialExperiment(Experiment):
    """
    Full Fourier sums against the proved ceiling

    Any norm above max(1, sqrt(1 + ln^alpha(n)/2^alpha)) is reported
    as an acceptance violation.
    """

    @staticmethod
    def add_arguments(parser):
        parser.add_argument(
            "--alpha", type=float, nargs="+", default=[0.5, 1.0, 2.0],
            help="Exponents alpha of close2 (default: 0.5 1 2)")
        parser.add_argument(
            "--n", type=int, nargs="+", default=[256, 1024, 4096],
            help="System sizes (default: 256 1024 4096)")
        parser.add_argument(
            "--trials", type=int, default=100,
            help="Random vectors per alpha and n (default: 100)")
        parser.add_argument(
            "--grid", type=int, metavar="M",
            help="Fourier grid size (default: max(4n, 1024))")

    def run(self):
        options = self.options
        ascent = AscentOptions(
            options.restarts, options.iters, options.tol, options.rel_tol)
        records = []
        groups = []
        for alpha in options.alpha:
            partial, summary = run_trivial_bound(
                alpha, options.n, options.trials, options.seed, ascent,
                grid=options.grid, threads=options.threads)
            records.extend(partial)
            groups.extend(summary["groups"])
        return records, dict(
            experiment="trivial", groups=groups,
            violations=sum(group["violations"] for group in groups))
