# coding: utf-8

"""
Orthonormal systems evaluated lazily

A system is an ordered family phi_1, ..., phi_n of functions on a
probability space. Systems are never stored as full matrices unless
they were given as one: each exposes

synthesize(J, a)
    values of sum a_i phi_i over the indices i in J

correlate(J, c)
    the vector sum_j c_j phi_i(omega_j) for i in J

columns(J)
    dense atom x |J| matrix of the selected functions

Fourier characters use the fast Fourier transform, Walsh functions
the fast Walsh-Hadamard transform and tabulated systems a dense
matrix. Indices are 1-based.
"""

from dataclasses import dataclass

import numpy as np

from orlicz.base import P1, MIN_GRID, MAX_ATOMS, OptionError
from orlicz.space import Func, lp_norm, uniform_grid_space
from orlicz.utils import log, parameters

# Largest supported Walsh dimension
MAX_WALSH_DIMENSION = 20

# Functions validated per block
CHUNK = 256


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Statistics
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

@dataclass
class SystemStatistics:
    """ Measured constants of a system """
    S: float
    max_ortho_defect: float
    max_sup: float
    p1: float = P1

    def as_dict(self):
        return dict(
            S=self.S, max_ortho_defect=self.max_ortho_defect,
            max_sup=self.max_sup, p1=self.p1)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  System
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

class System(object):
    """ General orthonormal system """

    # Human readable kind of the system
    kind = "system"

    def __init__(self, space, n, statistics=None):
        """ Space, number of functions and known constants """
        if n < 1:
            raise OptionError("System must contain at least one function.")
        self.space = space
        self.n = int(n)
        self.statistics = statistics

    def __len__(self):
        return self.n

    def __repr__(self):
        return "{0}(n={1}, atoms={2})".format(
            self.__class__.__name__, self.n, self.space.atom_count)

    @property
    def S(self):
        """ Largest L^p1 norm of a member """
        return self._statistics().S

    @property
    def max_sup(self):
        """ Largest modulus of a member """
        return self._statistics().max_sup

    @property
    def max_ortho_defect(self):
        """ Largest deviation of the Gram matrix from the identity """
        return self._statistics().max_ortho_defect

    def _statistics(self):
        if self.statistics is None:
            self.statistics = validate_system(self)
        return self.statistics

    def _indices(self, indices):
        """ Zero-based positions of 1-based indices """
        indices = np.asarray(getattr(indices, "indices", indices), dtype=int)
        if indices.ndim != 1:
            raise OptionError("Indices must form a flat list.")
        if indices.size and (indices.min() < 1 or indices.max() > self.n):
            raise OptionError(
                "Indices must lie in 1..{0}.".format(self.n))
        return indices - 1

    def _coefficients(self, positions, a):
        a = np.asarray(a, dtype=complex).ravel()
        if a.size != positions.size:
            raise OptionError("Expected {0} coefficients, got {1}.".format(
                positions.size, a.size))
        return a

    def synthesize(self, indices, a):
        """ Values of sum a_i phi_i """
        positions = self._indices(indices)
        a = self._coefficients(positions, a)
        return self._synthesize(positions, a)

    def correlate(self, indices, c):
        """ Vector sum_j c_j phi_i(omega_j) for the selected indices """
        positions = self._indices(indices)
        c = np.asarray(c, dtype=complex).ravel()
        if c.size != self.space.atom_count:
            raise OptionError("Expected {0} atom values, got {1}.".format(
                self.space.atom_count, c.size))
        return self._correlate(positions, c)

    def columns(self, indices):
        """ Dense atom x |J| matrix of the selected functions """
        return self._columns(self._indices(indices))

    def function(self, index):
        """ Member phi_index as a Func """
        return Func(self.space, self.columns([index])[:, 0])

    def gram_apply(self, indices, a):
        """ Apply the Gram matrix E[conj(phi_i) phi_j] of J to a """
        values = self.synthesize(indices, a)
        return np.conj(self.correlate(
            indices, self.space.weights * np.conj(values)))

    def scaled(self, factor):
        """ The system with every member multiplied by factor """
        return ScaledSystem(self, factor)

    def _synthesize(self, positions, a):
        return self._columns(positions) @ a

    def _correlate(self, positions, c):
        return c @ self._columns(positions)

    def _columns(self, positions):
        raise NotImplementedError()


class FourierSystem(System):
    """ Discrete Fourier characters on a uniform grid """

    kind = "fourier"

    def __init__(self, frequencies, M):
        """ Characters exp(-2 pi i k x) for the given integer frequencies """
        frequencies = np.asarray(frequencies, dtype=np.int64)
        if frequencies.ndim != 1 or frequencies.size == 0:
            raise OptionError("At least one frequency required.")
        if int(M) != M or M < 2 * frequencies.size:
            raise OptionError(
                "Grid size M = {0} must be at least twice the number of "
                "functions ({1}).".format(M, frequencies.size))
        M = int(M)
        if np.unique(frequencies % M).size != frequencies.size:
            raise OptionError("Frequencies must be distinct modulo M.")
        super(FourierSystem, self).__init__(
            uniform_grid_space(M), frequencies.size,
            SystemStatistics(S=1.0, max_ortho_defect=0.0, max_sup=1.0))
        self.M = M
        self.frequencies = frequencies
        self.residues = frequencies % M

    def _synthesize(self, positions, a):
        spectrum = np.zeros(self.M, dtype=complex)
        spectrum[self.residues[positions]] = a
        return np.fft.fft(spectrum)

    def _correlate(self, positions, c):
        return np.fft.fft(c)[self.residues[positions]]

    def _columns(self, positions):
        # Exact integer phases j*k mod M
        grid = np.arange(self.M, dtype=np.int64)
        phases = np.outer(grid, self.residues[positions]) % self.M
        return np.exp(-2j * np.pi * phases / self.M)


def _fwht(values):
    """ Unnormalized fast Walsh-Hadamard transform in natural order """
    values = np.array(values, dtype=complex)
    size = values.size
    half = 1
    while half < size:
        blocks = values.reshape(-1, 2, half)
        values = np.stack(
            [blocks[:, 0] + blocks[:, 1], blocks[:, 0] - blocks[:, 1]],
            axis=1).reshape(size)
        half *= 2
    return values


class WalshSystem(System):
    """ Walsh functions (-1)^popcount(k & j) on 2^d dyadic atoms """

    kind = "walsh"

    def __init__(self, d):
        if int(d) != d or not 1 <= d <= MAX_WALSH_DIMENSION:
            raise OptionError(
                "Walsh dimension must lie in 1..{0}, got {1}.".format(
                    MAX_WALSH_DIMENSION, d))
        self.d = int(d)
        size = 2 ** self.d
        # The constant function (k = 0) is left out
        super(WalshSystem, self).__init__(
            uniform_grid_space(size), size - 1,
            SystemStatistics(S=1.0, max_ortho_defect=0.0, max_sup=1.0))
        self.size = size

    def _synthesize(self, positions, a):
        spectrum = np.zeros(self.size, dtype=complex)
        spectrum[positions + 1] = a
        return _fwht(spectrum)

    def _correlate(self, positions, c):
        return _fwht(c)[positions + 1]

    def _columns(self, positions):
        common = np.bitwise_and.outer(
            np.arange(self.size, dtype=np.int64), positions + 1)
        parity = np.zeros(common.shape, dtype=np.int64)
        for bit in range(self.d):
            parity ^= (common >> bit) & 1
        return (1 - 2 * parity).astype(complex)


class TabulatedSystem(System):
    """ System given by a dense atom x n matrix of values """

    kind = "tabulated"

    def __init__(self, space, matrix, statistics=None):
        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != space.atom_count:
            raise OptionError(
                "Expected {0} rows of values, got shape {1}.".format(
                    space.atom_count, matrix.shape))
        if not np.all(np.isfinite(matrix)):
            raise OptionError("System values must be finite.")
        matrix.flags.writeable = False
        super(TabulatedSystem, self).__init__(
            space, matrix.shape[1], statistics)
        self.matrix = matrix

    def _columns(self, positions):
        return self.matrix[:, positions]


class ScaledSystem(System):
    """ A system with all members multiplied by a constant """

    def __init__(self, system, factor):
        super(ScaledSystem, self).__init__(system.space, system.n)
        self.base = system
        self.factor = complex(factor)
        self.kind = system.kind

    def _synthesize(self, positions, a):
        return self.base._synthesize(positions, self.factor * a)

    def _correlate(self, positions, c):
        return self.factor * self.base._correlate(positions, c)

    def _columns(self, positions):
        return self.factor * self.base._columns(positions)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Operations
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def default_grid(n):
    """ Default Fourier grid size for n characters """
    return max(4 * int(n), MIN_GRID)


def fourier_system(n, M=None):
    """ Characters with frequencies 1..n on the uniform grid of M atoms """
    if int(n) != n or n < 1:
        raise OptionError("Invalid number of functions '{0}'.".format(n))
    if M is None or M == 0:
        M = default_grid(n)
    if M > MAX_ATOMS:
        raise OptionError("Grid of {0} atoms is too large.".format(M))
    log.details("Fourier system with {0} characters on {1} atoms".format(
        n, M))
    return FourierSystem(np.arange(1, int(n) + 1), M)


def walsh_system(d):
    """ The 2^d - 1 nonconstant Walsh functions on 2^d dyadic atoms """
    log.details("Walsh system of dimension {0}".format(d))
    return WalshSystem(d)


def validate_system(system, p1=P1):
    """
    Measure the constants of a system

    Returns the largest L^p1 norm S, the largest deviation of the Gram
    matrix from the identity and the largest modulus of a member.
    Violations are reported, never raised, so that callers decide how
    strict to be.
    """
    if system is None or len(system) == 0:
        raise OptionError("Empty system.")
    if not p1 > 2:
        raise OptionError("Exponent p1 must exceed 2, got {0}.".format(p1))
    space = system.space
    weights = space.weights
    S = max_sup = defect = 0.0
    starts = range(0, system.n, CHUNK)
    for first in starts:
        block = np.arange(first + 1, min(first + CHUNK, system.n) + 1)
        left = system.columns(block)
        for column in left.T:
            S = max(S, lp_norm(space, column, p1))
        max_sup = max(max_sup, float(np.abs(left[weights > 0]).max()))
        for second in starts:
            if second < first:
                continue
            other = np.arange(second + 1, min(second + CHUNK, system.n) + 1)
            right = left if second == first else system.columns(other)
            gram = (left * weights[:, None]).T @ np.conj(right)
            if second == first:
                gram = gram - np.eye(block.size)
            defect = max(defect, float(np.abs(gram).max()))
    statistics = SystemStatistics(
        S=float(S), max_ortho_defect=defect, max_sup=max_sup, p1=p1)
    log.details("System statistics: {0}".format(statistics))
    return statistics


def read_system(path, space=None, p1=P1):
    """
    Load a system from a csv file

    One row per atom holding interleaved ``re,im`` pairs, one pair per
    function. The uniform grid is assumed unless a space is given. The
    system is validated on load and hypotheses which fail are logged.
    """
    log.info("Reading system from '{0}'.".format(path))
    try:
        data = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except (OSError, ValueError) as error:
        log.debug(error)
        raise OptionError("Unable to read system from '{0}'.".format(path))
    if data.shape[1] % 2:
        raise OptionError(
            "Expected interleaved re,im pairs in '{0}', found {1} "
            "columns.".format(path, data.shape[1]))
    if space is None:
        space = uniform_grid_space(data.shape[0])
    system = TabulatedSystem(space, data[:, 0::2] + 1j * data[:, 1::2])
    system.statistics = validate_system(system, p1)
    check_hypotheses(system.statistics)
    return system


def check_hypotheses(statistics, tolerance=1e-10):
    """ Log failed boundedness or orthonormality, return True if all hold """
    valid = True
    if statistics.max_sup > 1 + tolerance:
        log.warning("System is not bounded by one (sup = {0!r}).".format(
            statistics.max_sup))
        valid = False
    if statistics.max_ortho_defect > tolerance:
        log.warning("System is not orthonormal (defect = {0!r}).".format(
            statistics.max_ortho_defect))
        valid = False
    return valid


def make_system(text):
    """
    Create a system from its command line description

    Supported forms are ``fourier:n=...,M=...``, ``walsh:d=...`` and
    ``file:PATH``.
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "file":
        if not rest:
            raise OptionError("Missing path in '{0}'.".format(text))
        return read_system(rest)
    try:
        values = parameters(rest)
    except ValueError as error:
        raise OptionError(str(error))
    if kind == "fourier":
        if "n" not in values:
            raise OptionError("Fourier system needs n, e.g. fourier:n=64.")
        return fourier_system(values["n"], values.get("M"))
    if kind == "walsh":
        if "d" not in values:
            raise OptionError("Walsh system needs d, e.g. walsh:d=6.")
        return walsh_system(values["d"])
    raise OptionError("Unknown system '{0}'.".format(text))

