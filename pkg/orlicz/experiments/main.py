# coding: utf-8

"""
Random subsystems of the Fourier system in the Orlicz space

For each alpha and n a subset J of [n] is drawn with density
1/(e ln^(alpha+1) n) and the operator norm of the Fourier characters
indexed by J is estimated in the Orlicz space of close2(alpha). The
ratio of the estimate to ln^(alpha/2)(ln n) should stay bounded as n
grows.
"""

import math

from orlicz.base import NumericalError
from orlicz.experiments import (Experiment, TrialRecord, calibrate,
                                check_n, full_factor, run_trials,
                                simplified_factor, size_threshold)
from orlicz.luxemburg import luxemburg_norm
from orlicz.opnorm import AscentOptions, opnorm_ascent
from orlicz.sampling import bernoulli_subset, delta_main
from orlicz.stats import Proportion, binomial_tail, median
from orlicz.systems import fourier_system
from orlicz.utils import log
from orlicz.young import parse_family, young_close2


def _trial(experiment, alpha, n, system, spec, options, base_seed,
           compare=None):
    """ Closure computing the record of trial t """
    delta = delta_main(n, alpha)
    threshold = size_threshold(n, alpha)
    factor = simplified_factor(n, alpha)

    def trial(number):
        seed = base_seed + number
        record = TrialRecord(experiment, n, alpha, seed)
        J = bernoulli_subset(n, delta, seed)
        record.extra.update(
            delta=delta, full_factor=full_factor(
                alpha, n, system.S, spec.u0))
        if not len(J):
            return record.fill(0, threshold, 0.0, factor)
        try:
            estimate = opnorm_ascent(
                system.space, spec, system, J, options, seed)
        except NumericalError as error:
            record.J_size = len(J)
            return record.fail(error)
        record.extra.update(
            converged=estimate.converged,
            restarts_used=estimate.restarts_used)
        if compare is not None:
            values = system.synthesize(J, estimate.argmax)
            record.extra["compare_norm"] = luxemburg_norm(
                system.space, compare, values, options.rel_tol).value
        return record.fill(len(J), threshold, estimate.value, factor)

    return trial


def run_main_experiment(alphas, n_list, trials, base_seed, options=None,
                        grid=None, compare=None, threads=1):
    """
    Run the random subsystem experiment

    Returns the records of all trials (calibrated in place) together
    with the summary dictionary.
    """
    options = options or AscentOptions()
    n_list = sorted(check_n(n) for n in n_list)
    records = []
    for alpha in alphas:
        spec = young_close2(alpha)
        for n in n_list:
            log.info("Main experiment: alpha = {0}, n = {1}".format(alpha, n))
            system = fourier_system(n, grid)
            records.extend(run_trials(
                _trial("main", alpha, n, system, spec, options, base_seed,
                       compare),
                trials, threads))
    constants = calibrate(records)
    return records, summarize(records, constants)


def summarize(records, constants):
    """ Empirical probabilities, analytic companions and ratio spread """
    groups = []
    calibration = dict()
    for alpha in sorted(constants):
        medians = []
        for n in sorted(set(r.n for r in records if r.alpha == alpha)):
            group = [r for r in records if r.alpha == alpha and r.n == n]
            valid = [r for r in group if not r.failed]
            size = Proportion(sum(r.size_ok for r in valid), len(valid))
            joint = Proportion(sum(r.joint_ok for r in valid), len(valid))
            delta = delta_main(n, alpha)
            ratio = median([r.ratio for r in valid])
            medians.append(ratio)
            groups.append(dict(
                alpha=alpha, n=n, delta=delta, trials=len(group),
                failures=len(group) - len(valid),
                size_threshold=size_threshold(n, alpha),
                size=size.as_dict(), joint=joint.as_dict(),
                joint_at_least_quarter=joint.estimate >= 0.25,
                median_ratio=ratio,
                analytic_size_probability=binomial_tail(
                    n, delta, math.ceil(size_threshold(n, alpha))),
                factor=simplified_factor(n, alpha),
                full_factor=full_factor(alpha, n)))
        finite = [value for value in medians if value > 0]
        calibration[alpha] = dict(
            constants[alpha],
            max_median_ratio=max(medians) if medians else float("nan"),
            ratio_spread=(max(finite) / min(finite)
                          if finite else float("nan")))
    return dict(experiment="main", groups=groups, calibration=calibration)


class MainExperiment(Experiment):
    """
    Random subsystems of the Fourier system

    Estimates the Orlicz operator norm of randomly selected Fourier
    characters and checks the ln^(alpha/2)(ln n) growth.
    """

    @staticmethod
    def add_arguments(parser):
        parser.add_argument(
            "--alpha", type=float, nargs="+", default=[1.0],
            help="Exponents alpha of close2 (default: 1)")
        parser.add_argument(
            "--n", type=int, nargs="+", default=[256, 1024, 4096, 16384],
            help="System sizes (default: 256 1024 4096 16384)")
        parser.add_argument(
            "--trials", type=int, default=100,
            help="Trials per alpha and n (default: 100)")
        parser.add_argument(
            "--compare", metavar="FAMILY",
            help="Comparison Young family, e.g. kashinG:alpha=1")
        parser.add_argument(
            "--grid", type=int, metavar="M",
            help="Fourier grid size (default: max(4n, 1024))")

    def run(self):
        options = self.options
        compare = parse_family(options.compare) if options.compare else None
        return run_main_experiment(
            options.alpha, options.n, options.trials, options.seed,
            AscentOptions(
                options.restarts, options.iters, options.tol,
                options.rel_tol),
            grid=options.grid, compare=compare, threads=options.threads)
