# coding: utf-8

"""
Young function families

Each family is a class registered under its tag (``power``, ``close2``,
``ryou`` and ``kashinG``) and each instance is one member of the family
with fixed parameters. Evaluators are vectorized over numpy arrays and
use the natural logarithm throughout. Families are selected on the
command line using strings such as::

    close2:alpha=1.0
    power:p=2
    ryou:p=3,alpha=0.5
    kashinG:alpha=1.0
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from orlicz import utils
from orlicz.base import OptionError
from orlicz.utils import log

# Default validation grid: log-spaced points in [1e-6, 1e8]
GRID_SIZE = 400
GRID_LOW = 1e-6
GRID_HIGH = 1e8

# Validation tolerances
CONVEXITY_TOLERANCE = 1e-9
NICE_AT_ZERO = 1e-3
NICE_AT_INFINITY = 1e3


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Young Spec
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

class YoungFamilyPlugin(type):
    """ Register Young function families by their tag """
    registry = {}
    ignore = set(["YoungSpec"])

    def __init__(cls, name, bases, attrs):
        if name in YoungFamilyPlugin.ignore:
            return
        registry = YoungFamilyPlugin.registry
        if cls.family in registry:
            log.warning("{0} overriding {1}".format(
                cls.__name__, registry[cls.family].__name__))
        registry[cls.family] = cls


class YoungSpec(object, metaclass=YoungFamilyPlugin):
    """
    Young function family instance

    Subclasses implement ``_eval`` and ``_deriv`` on nonnegative numpy
    arrays. Parameters which do not apply to the family are None.
    """

    family = None
    alpha = None
    p = None
    u0 = None
    c = None

    def __call__(self, u):
        return self._eval(np.asarray(u, dtype=float))

    def deriv(self, u):
        """ Derivative (right derivative at the junction) """
        return self._deriv(np.asarray(u, dtype=float))

    def _eval(self, u):
        raise NotImplementedError()

    def _deriv(self, u):
        raise NotImplementedError()

    def parameters(self):
        """ Parameters which apply to the family """
        return {
            key: getattr(self, key) for key in ["alpha", "p", "u0", "c"]
            if getattr(self, key) is not None}

    def __str__(self):
        """ Use the selection string format """
        return "{0}:{1}".format(self.family, ",".join(
            "{0}={1!r}".format(key, value)
            for key, value in self.parameters().items()
            if key in ("alpha", "p")))

    def __repr__(self):
        return "<YoungSpec {0}>".format(self)

    def __eq__(self, other):
        return (isinstance(other, YoungSpec)
                and self.family == other.family
                and self.parameters() == other.parameters())

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.parameters().items()))))


class Power(YoungSpec):
    """ Power function u^p """
    family = "power"

    def __init__(self, p):
        if not p >= 1:
            raise OptionError("Power family needs p >= 1, got {0}.".format(p))
        self.p = float(p)

    def _eval(self, u):
        return u ** self.p

    def _deriv(self, u):
        return self.p * u ** (self.p - 1)


class Close2(YoungSpec):
    """ Quadratic below e, u^2 log^alpha(u) above """
    family = "close2"

    def __init__(self, alpha):
        if not alpha > 0:
            raise OptionError(
                "Family close2 needs alpha > 0, got {0}.".format(alpha))
        self.alpha = float(alpha)
        self.u0 = math.e
        self.c = 1.0

    def _eval(self, u):
        high = u >= self.u0
        logs = np.log(np.where(high, u, self.u0))
        return np.where(high, u ** 2 * logs ** self.alpha, self.c * u ** 2)

    def _deriv(self, u):
        high = u >= self.u0
        logs = np.log(np.where(high, u, self.u0))
        upper = (2 * u * logs ** self.alpha
                 + self.alpha * u * logs ** (self.alpha - 1))
        return np.where(high, upper, 2 * self.c * u)


class Ryou(YoungSpec):
    """ Quadratic below e, u^p log^(alpha p)(u) above """
    family = "ryou"

    def __init__(self, p, alpha):
        if not p > 2:
            raise OptionError("Family ryou needs p > 2, got {0}.".format(p))
        if not alpha > 0:
            raise OptionError(
                "Family ryou needs alpha > 0, got {0}.".format(alpha))
        self.p = float(p)
        self.alpha = float(alpha)
        self.u0 = math.e
        # Continuity at e: c e^2 = e^p
        self.c = math.exp(self.p - 2)

    def _eval(self, u):
        high = u >= self.u0
        logs = np.log(np.where(high, u, self.u0))
        power = self.alpha * self.p
        return np.where(high, u ** self.p * logs ** power, self.c * u ** 2)

    def _deriv(self, u):
        high = u >= self.u0
        logs = np.log(np.where(high, u, self.u0))
        power = self.alpha * self.p
        upper = u ** (self.p - 1) * (
            self.p * logs ** power + power * logs ** (power - 1))
        return np.where(high, upper, 2 * self.c * u)


class KashinG(YoungSpec):
    """ u^2 ln^alpha(e + u) / ln^alpha(e + 1/u) """
    family = "kashinG"

    def __init__(self, alpha):
        if not alpha > 0.5:
            raise OptionError(
                "Family kashinG needs alpha > 1/2, got {0}.".format(alpha))
        self.alpha = float(alpha)

    def _parts(self, u):
        """ Safe u, numerator and denominator logarithms """
        positive = u > 0
        safe = np.where(positive, u, 1.0)
        return positive, safe, np.log(math.e + safe), np.log(math.e + 1 / safe)

    def _eval(self, u):
        positive, safe, top, bottom = self._parts(u)
        value = safe ** 2 * (top / bottom) ** self.alpha
        return np.where(positive, value, 0.0)

    def _deriv(self, u):
        positive, safe, top, bottom = self._parts(u)
        alpha = self.alpha
        ratio = (top / bottom) ** alpha
        value = (2 * safe * ratio
                 + alpha * safe ** 2 * ratio / (top * (math.e + safe))
                 + alpha * ratio / (bottom * (math.e + 1 / safe)))
        return np.where(positive, value, 0.0)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Constructors
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def young_close2(alpha):
    """ Young function of the main bound with u0 = e and c = 1 """
    return Close2(alpha)


def young_power(p):
    """ Power Young function u^p """
    return Power(p)


def young_ryou(p, alpha):
    """ Zygmund type Young function with u0 = e and c = e^(p-2) """
    return Ryou(p, alpha)


def young_kashin(alpha):
    """ Comparison Orlicz function G_alpha """
    return KashinG(alpha)


def parse_family(text):
    """
    Create a YoungSpec from its selection string

    The family tag is separated from comma separated ``key=value``
    parameters by a colon, e.g. ``ryou:p=3,alpha=0.5``.
    """
    family, _, arguments = str(text).partition(":")
    family = family.strip()
    try:
        cls = YoungFamilyPlugin.registry[family]
    except KeyError:
        raise OptionError("Unknown Young family '{0}', use {1}.".format(
            family, utils.listed(
                sorted(YoungFamilyPlugin.registry), quote="'")))
    try:
        params = utils.parameters(arguments)
        return cls(**params)
    except (TypeError, ValueError) as error:
        log.debug(error)
        raise OptionError(
            "Invalid parameters for family '{0}': '{1}'.".format(
                family, arguments))


def _check_argument(u):
    """ Arguments of Young functions must be nonnegative """
    u = np.asarray(u, dtype=float)
    if np.any(np.isnan(u)) or np.any(u < 0):
        raise OptionError("Young functions are defined for u >= 0 only.")
    return u


def young_eval(spec, u):
    """ Evaluate the Young function (scalar in, float out) """
    value = spec(_check_argument(u))
    return float(value) if np.ndim(value) == 0 else value


def young_deriv(spec, u):
    """ Evaluate the derivative, right derivative at the junction """
    value = spec.deriv(_check_argument(u))
    return float(value) if np.ndim(value) == 0 else value


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Validation
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

@dataclass
class ValidationReport:
    """ Numerical witnesses of the Young and nice Young axioms """
    family: str
    zero_at_zero: bool
    increasing: bool
    convex: bool
    nice_at_zero: bool
    nice_at_infinity: bool
    ratio_at_zero: float
    ratio_at_infinity: float
    grid_points: int

    @property
    def young(self):
        """ Young function witnessed on the grid """
        return self.zero_at_zero and self.increasing and self.convex

    @property
    def nice(self):
        """ Nice Young function witnessed on the grid """
        return self.young and self.nice_at_zero and self.nice_at_infinity

    def as_dict(self):
        result = asdict(self)
        result.update(young=self.young, nice=self.nice)
        return result


def default_grid():
    """ Log-spaced validation grid """
    return np.logspace(
        math.log10(GRID_LOW), math.log10(GRID_HIGH), GRID_SIZE)


def _nondecreasing(values):
    """ Differences nonnegative up to a relative rounding tolerance """
    scale = np.maximum(1.0, np.abs(values[1:]))
    return bool(np.all(np.diff(values) >= -CONVEXITY_TOLERANCE * scale))


def young_validate(spec, grid=None):
    """
    Scan the Young function on a grid

    Convexity is witnessed twice: the derivative and the secant slopes
    between consecutive grid points must both be nondecreasing.
    """
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise OptionError("Validation grid must not be empty.")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise OptionError("Validation grid must be positive and increasing.")
    values = young_eval(spec, grid)
    values = np.atleast_1d(values)
    derivatives = np.atleast_1d(young_deriv(spec, grid))
    slopes = np.diff(values) / np.diff(grid) if grid.size > 1 else values
    ratios = values / grid
    report = ValidationReport(
        family=str(spec),
        zero_at_zero=young_eval(spec, 0.0) == 0,
        increasing=bool(np.all(np.diff(values) >= 0)
                        and values[-1] > young_eval(spec, 0.0)),
        convex=_nondecreasing(derivatives) and _nondecreasing(slopes),
        nice_at_zero=bool(ratios[0] < NICE_AT_ZERO),
        nice_at_infinity=bool(ratios[-1] > NICE_AT_INFINITY),
        ratio_at_zero=float(ratios[0]),
        ratio_at_infinity=float(ratios[-1]),
        grid_points=int(grid.size))
    log.debug("Validation of {0}: {1}".format(spec, report))
    return report
