# coding: utf-8

"""
Finite probability spaces and functions on them

A ``ProbSpace`` is a finite set of atoms carrying explicit weights
which sum to one, optionally with the point of [0, 1) each atom
represents. A ``Func`` is a complex valued function on the atoms.
Expectations are weighted sums computed with numpy's pairwise
summation so that grids with a million atoms keep their accuracy.
"""

import numpy as np

from orlicz.base import OptionError
from orlicz.utils import log

# Tolerance for the sum of weights
WEIGHT_TOLERANCE = 1e-12


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Probability Space
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

class ProbSpace(object):
    """ Finite probability space """

    def __init__(self, weights, coordinates=None):
        """ Validate and freeze weights (and optional coordinates) """
        weights = np.array(weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0:
            raise OptionError("At least one atom required.")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise OptionError("Weights must be finite and nonnegative.")
        total = np.sum(weights)
        if abs(total - 1) > WEIGHT_TOLERANCE:
            raise OptionError(
                "Weights sum to {0!r}, expected 1.".format(float(total)))
        weights.flags.writeable = False
        self.weights = weights
        if coordinates is not None:
            coordinates = np.array(coordinates, dtype=float)
            if coordinates.shape != weights.shape:
                raise OptionError(
                    "Expected {0} coordinates, got {1}.".format(
                        weights.size, coordinates.size))
            if np.any(coordinates < 0) or np.any(coordinates >= 1):
                raise OptionError("Coordinates must lie in [0, 1).")
            coordinates.flags.writeable = False
        self.coordinates = coordinates

    @property
    def atom_count(self):
        """ Number of atoms """
        return self.weights.size

    def uniform(self):
        """ True if all atoms carry the same weight """
        return bool(np.all(self.weights == self.weights[0]))

    def __len__(self):
        return self.atom_count

    def __repr__(self):
        return "ProbSpace(atom_count={0})".format(self.atom_count)


class Func(object):
    """ Complex valued function on the atoms of a probability space """

    def __init__(self, space, values):
        """ Store values as a read-only complex array """
        values = np.array(values, dtype=complex)
        if values.ndim != 1 or values.size != space.atom_count:
            raise OptionError(
                "Function has {0} values, the space has {1} atoms.".format(
                    values.size, space.atom_count))
        if not np.all(np.isfinite(values)):
            raise OptionError("Function values must be finite.")
        values.flags.writeable = False
        self.space = space
        self.values = values

    def __add__(self, other):
        _check_same_space(self, other)
        return Func(self.space, self.values + other.values)

    def __mul__(self, scalar):
        return Func(self.space, scalar * self.values)

    __rmul__ = __mul__

    def __abs__(self):
        return np.abs(self.values)

    def __len__(self):
        return self.values.size


def _check_same_space(*functions):
    """ Make sure all functions live on the same space """
    first = functions[0].space
    for function in functions[1:]:
        if function.space is not first and (
                function.space.atom_count != first.atom_count
                or not np.array_equal(function.space.weights, first.weights)):
            raise OptionError("Functions live on different spaces.")


def _check_belongs(space, function):
    """ Function must have one value per atom of the space """
    if len(function) != space.atom_count:
        raise OptionError(
            "Function has {0} values, the space has {1} atoms.".format(
                len(function), space.atom_count))


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Operations
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def uniform_grid_space(M):
    """
    Uniform grid on [0, 1) with M atoms

    Atoms sit at the left endpoints j/M so that discrete Fourier
    characters with different frequencies (mod M) are exactly
    orthogonal.
    """
    if int(M) != M or M < 1:
        raise OptionError(
            "Grid size must be a positive integer, got '{0}'.".format(M))
    M = int(M)
    log.details("Creating uniform grid with {0} atoms".format(M))
    return ProbSpace(
        np.full(M, 1.0 / M), np.arange(M, dtype=float) / M)


def expectation(space, g):
    """ Weighted sum of the function values """
    values = g.values if isinstance(g, Func) else np.asarray(g)
    _check_belongs(space, values)
    return complex(np.sum(space.weights * values))


def lp_norm(space, f, p):
    """ The L^p norm (E|f|^p)^(1/p), maximum over charged atoms for inf """
    if p != np.inf and not p >= 1:
        raise OptionError("Invalid exponent p = {0}, need p >= 1.".format(p))
    values = f.values if isinstance(f, Func) else np.asarray(f)
    _check_belongs(space, values)
    moduli = np.abs(values)[space.weights > 0]
    largest = moduli.max() if moduli.size else 0.0
    if largest == 0:
        return 0.0
    if p == np.inf:
        return float(largest)
    # Scale by the maximum to keep large exponents in range
    scaled = np.abs(values) / largest
    return float(largest * np.sum(space.weights * scaled ** p) ** (1.0 / p))


def inner_product(space, f, g):
    """ Weighted sum of f times the conjugate of g """
    if isinstance(f, Func) and isinstance(g, Func):
        _check_same_space(f, g)
    f_values = f.values if isinstance(f, Func) else np.asarray(f)
    g_values = g.values if isinstance(g, Func) else np.asarray(g)
    _check_belongs(space, f_values)
    _check_belongs(space, g_values)
    return complex(np.sum(space.weights * f_values * np.conj(g_values)))


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Input & Output
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def read_func(path, space=None):
    """
    Read function values from a two column ``re,im`` csv file

    One row per atom, no header. Unless a space is given, the uniform
    grid with as many atoms as rows is assumed.
    """
    log.info("Reading function values from '{0}'.".format(path))
    try:
        data = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except (OSError, ValueError) as error:
        log.debug(error)
        raise OptionError("Unable to read function from '{0}'.".format(path))
    if data.shape[1] != 2:
        raise OptionError(
            "Expected two columns (re,im) in '{0}', found {1}.".format(
                path, data.shape[1]))
    if space is None:
        space = uniform_grid_space(data.shape[0])
    return Func(space, data[:, 0] + 1j * data[:, 1])


def write_func(path, f):
    """ Write function values as ``re,im`` rows """
    data = np.column_stack([f.values.real, f.values.imag])
    np.savetxt(path, data, delimiter=",", fmt="%.17g")
