# coding: utf-8

"""
Command line interface for orlicz

This module takes care of processing command line options, resolving
them against the optional config file and dispatching to the
individual subcommands. Results go to the standard output, preceded by the json provenance
header on the standard error output, or to the file given by
``--out``, in which case provenance and summary are written as json
sidecars next to it.
"""

import argparse
import io
import json
import os
import sys

import numpy as np

import orlicz
from orlicz import utils
from orlicz.base import (EXIT_OK, AcceptanceError, Config, GeneralError,
                         OptionError)
from orlicz.experiments import (experiments, summary_json, write_csv,
                                write_json)
from orlicz.experiments.sharpness import block_hit_probability
from orlicz.luxemburg import luxemburg_norm
from orlicz.opnorm import (AscentOptions, l2_top_singular, opnorm_ascent,
                           opnorm_bruteforce)
from orlicz.sampling import IndexSet, bernoulli_subset, full_set
from orlicz.space import read_func, uniform_grid_space
from orlicz.systems import make_system
from orlicz.utils import log
from orlicz.young import GRID_HIGH, GRID_LOW, parse_family, young_validate

USAGE = """
orlicz <command> [options]

Orlicz norms of random subsystems of bounded orthonormal systems.

Validate Young functions, compute Luxemburg norms and operator norm
estimates and run the random subsystem experiments. Runs are
reproducible: the same arguments and seed give identical output.
""".strip()


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Options
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

class Parser(argparse.ArgumentParser):
    """ Argument parser raising instead of exiting on errors """

    def error(self, message):
        self.print_usage(sys.stderr)
        raise OptionError(message)


class Options(object):
    """ Command line options parser """

    def __init__(self, arguments=None):
        """ Prepare the parser. """
        self._prepare_arguments(arguments)
        self.parser = Parser(
            prog="orlicz", usage=USAGE,
            formatter_class=argparse.RawDescriptionHelpFormatter)
        self.parser.add_argument(
            "--version", action="version",
            version="orlicz {0}".format(orlicz.__version__))

        # Enable debugging output (even before options are parsed)
        if "--debug" in self.arguments:
            log.setLevel(utils.LOG_DEBUG)

        commands = self.parser.add_subparsers(dest="command", metavar="COMMAND")
        commands.required = True

        # Young function validation
        parser = commands.add_parser(
            "validate-young", help="Check the Young function properties")
        self._family(parser)
        parser.add_argument(
            "--points", type=int, default=400,
            help="Number of log spaced grid points (default: %(default)s)")
        self._common(parser)

        # Luxemburg norm
        parser = commands.add_parser(
            "norm", help="Luxemburg norm of a function given as csv")
        self._family(parser)
        parser.add_argument(
            "--func", metavar="CSV", required=True,
            help="Function values, one 're,im' row per atom")
        parser.add_argument(
            "--grid", type=int, metavar="M",
            help="Expected number of atoms of the uniform grid")
        self._common(parser)

        # Operator norm
        parser = commands.add_parser(
            "opnorm", help="Operator norm estimate of a subsystem")
        self._family(parser)
        parser.add_argument(
            "--system", required=True,
            help="System: fourier:n=..,M=.. or walsh:d=.. or file:PATH")
        parser.add_argument(
            "--subset", default="all",
            help="Index set json (file or text), 'delta,seed' or 'all'")
        parser.add_argument(
            "--samples", type=int,
            help="Also run exhaustive sphere sampling (at most 3 indices)")
        self._common(parser)

        # Experiments
        parser = commands.add_parser(
            "experiment", help="Run one of the experiments")
        kinds = parser.add_subparsers(dest="experiment", metavar="EXPERIMENT")
        kinds.required = True
        for name, experiment in sorted(experiments().items()):
            kind = kinds.add_parser(name, help=experiment.__doc__.split(
                "\n")[1].strip())
            experiment.add_arguments(kind)
            kind.add_argument(
                "--format", choices=["csv", "json"], default="csv",
                help="Format of the trial records (default: csv)")
            self._common(kind)

        # Block hit probability
        parser = commands.add_parser(
            "hit-prob", help="Probability that some block is fully selected")
        parser.add_argument("--delta", type=float, required=True)
        parser.add_argument("--N", type=int, required=True)
        parser.add_argument("--T", type=int, required=True)
        self._common(parser)

    @staticmethod
    def _family(parser):
        parser.add_argument(
            "--family", required=True,
            help="Young family, e.g. close2:alpha=1 or power:p=2")

    @staticmethod
    def _common(parser):
        """ Options shared by all commands, defaults come from config """
        group = parser.add_argument_group("Utils")
        group.add_argument(
            "--config", metavar="FILE",
            help="Read defaults from the given config file")
        group.add_argument(
            "--seed", type=int,
            help="Base seed of all random streams (default: 20240601)")
        group.add_argument(
            "--threads", type=int,
            help="Maximum number of worker threads (default: 1)")
        group.add_argument(
            "--rel-tol", type=float,
            help="Relative tolerance of the norm solver (default: 1e-10)")
        group.add_argument(
            "--restarts", type=int, help="Ascent restarts (default: 8)")
        group.add_argument(
            "--iters", type=int, help="Ascent iterations (default: 500)")
        group.add_argument(
            "--tol", type=float, help="Ascent tolerance (default: 1e-8)")
        group.add_argument(
            "--out", metavar="FILE",
            help="Write results to the file (plus a provenance sidecar)")
        group.add_argument(
            "--debug", action="store_true",
            help="Turn on debugging output")

    def _prepare_arguments(self, arguments):
        """ Prepare arguments (both direct and from command line) """
        if arguments is not None:
            if isinstance(arguments, str):
                self.arguments = arguments.split()
            else:
                self.arguments = list(arguments)
        else:
            self.arguments = sys.argv[1:]

    def parse(self):
        """ Parse the options and fill missing values from config """
        opt = self.parser.parse_args(self.arguments)
        Config.reset()
        config = Config(path=opt.config)
        for name in ["seed", "threads", "rel_tol", "restarts", "iters",
                     "tol"]:
            if getattr(opt, name) is None:
                setattr(opt, name, getattr(config, name))
        if getattr(opt, "grid", None) is None and opt.command == "experiment":
            opt.grid = config.grid or None
        opt.p1 = config.p1
        if not 0 <= opt.seed < 2 ** 64:
            raise OptionError("Seed must be a 64-bit unsigned integer.")
        if opt.threads < 1:
            raise OptionError("At least one thread required.")
        opt.config_values = config.as_dict()
        log.debug("Gathered options:")
        log.debug("options = {0}".format(opt))
        return opt


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Commands
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def _json(data):
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _ascent_options(options):
    return AscentOptions(
        options.restarts, options.iters, options.tol, options.rel_tol)


def validate_young_command(options):
    """ Json report of the Young function checks """
    spec = parse_family(options.family)
    grid = np.geomspace(GRID_LOW, GRID_HIGH, options.points)
    return _json(young_validate(spec, grid).as_dict()), None


def norm_command(options):
    """ Json with the Luxemburg norm of the given function """
    spec = parse_family(options.family)
    space = uniform_grid_space(options.grid) if options.grid else None
    f = read_func(options.func, space)
    result = luxemburg_norm(f.space, spec, f, options.rel_tol)
    return _json(dict(
        family=str(spec), atoms=f.space.atom_count, value=result.value,
        modular_at_value=result.modular_at_value,
        iterations=result.iterations)), None


def parse_subset(text, n):
    """ Index set from json (file or text), 'delta,seed' or 'all' """
    if text == "all":
        return full_set(n)
    if os.path.isfile(text):
        with open(text) as subset:
            text = subset.read()
    if text.lstrip().startswith("{"):
        J = IndexSet.from_json(text)
        if J.n != n:
            raise OptionError("Index set is for n = {0}, system has {1}.".format(
                J.n, n))
        return J
    try:
        delta, seed = [item for item in utils.split(text)]
        return bernoulli_subset(n, float(delta), int(seed))
    except ValueError:
        raise OptionError("Invalid subset '{0}'.".format(text))


def opnorm_command(options):
    """ Json with the ascent estimate (and sampling check) """
    spec = parse_family(options.family)
    system = make_system(options.system)
    J = parse_subset(options.subset, system.n)
    if not len(J):
        raise OptionError("Selected index set is empty.")
    estimate = opnorm_ascent(
        system.space, spec, system, J, _ascent_options(options),
        options.seed)
    result = dict(
        family=str(spec), system=options.system, J_size=len(J),
        l2_top_singular=l2_top_singular(system, J)[0])
    result.update(estimate.as_dict())
    if options.samples:
        result["bruteforce"] = opnorm_bruteforce(
            system.space, spec, system, J, options.samples, options.seed,
            options.rel_tol).value
    return _json(result), None


def experiment_command(options):
    """ Trial records in the requested format and the summary """
    experiment = experiments()[options.experiment](options, Config())
    utils.header(experiment.name)
    records, summary = experiment.run()
    output = io.StringIO()
    if options.format == "json":
        write_json(records, output)
    else:
        write_csv(records, output)
    return output.getvalue(), summary


def hit_prob_command(options):
    """ Exact block hit probability """
    return "{0:.6f}\n".format(
        block_hit_probability(options.delta, options.N, options.T)), None


COMMANDS = {
    "validate-young": validate_young_command,
    "norm": norm_command,
    "opnorm": opnorm_command,
    "experiment": experiment_command,
    "hit-prob": hit_prob_command,
    }


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Main
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def provenance(options):
    """ Parameters, seed, version and resolved config of the run """
    ignored = ["config_values", "debug", "out"]
    return dict(
        tool="orlicz", version=orlicz.__version__,
        command=options.command,
        parameters={
            key: value for key, value in sorted(vars(options).items())
            if key not in ignored},
        config=options.config_values)


def emit(options, output, summary):
    """ Write output, provenance and summary, as sidecars of --out files """
    if options.out:
        log.info("Writing results to '{0}'.".format(options.out))
        with open(options.out, "w") as result:
            result.write(output)
        with open(options.out + ".provenance.json", "w") as sidecar:
            sidecar.write(_json(provenance(options)))
        if summary is not None:
            with open(options.out + ".summary.json", "w") as sidecar:
                sidecar.write(summary_json(summary))
    else:
        utils.info(_json(provenance(options)), newline=False)
        sys.stdout.write(output)
        if summary is not None:
            utils.info(summary_json(summary), newline=False)


def main(arguments=None):
    """
    Parse options, run the selected command and report the results

    Takes optional parameter ``arguments`` which can be either command
    line string or list of options. Returns the exit code: 0 on
    success, 1 for invalid arguments, 2 for numerical failures and 3
    when a proved bound is violated.
    """
    try:
        options = Options(arguments).parse()
        output, summary = COMMANDS[options.command](options)
        emit(options, output, summary)
        if summary is not None and summary.get("violations"):
            raise AcceptanceError(
                "Proved ceiling violated {0} times.".format(
                    summary["violations"]))
        return EXIT_OK
    except SystemExit as error:
        return error.code or EXIT_OK
    except GeneralError as error:
        log.error(error)
        return error.exit_code


def run():
    """ Entry point of the orlicz script """
    sys.exit(main())
