# coding: utf-8

"""
Operator norm estimation by ascent on the unit sphere

The restricted operator norm from l2(J) to the Orlicz space is the
maximum of a -> ||sum a_i phi_i|| over unit coefficient vectors. The
function is convex, so the maximum sits on the sphere but may have
many local maxima. Every estimate returned here is a true lower bound:
it is the norm of an explicit unit vector.

Coefficients are handled as real vectors of length 2|J| holding the
real parts followed by the imaginary parts.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from orlicz.base import (BACKTRACKING, INITIAL_STEP, ITERATIONS, REL_TOL,
                         RESTARTS, TOLERANCE, OptionError)
from orlicz.luxemburg import gradient_at, luxemburg_norm, luxemburg_norms
from orlicz.sampling import STREAM_ASCENT, STREAM_SPHERE, random_generator
from orlicz.utils import log

# Sufficient increase constant of the line search
ARMIJO = 1e-4

# Smallest step tried by the line search
MIN_STEP = 1e-12

# Power iteration
POWER_TOLERANCE = 1e-13
POWER_ITERATIONS = 10000

# Largest subset accepted by the exhaustive sampler
MAX_BRUTEFORCE_SIZE = 3


@dataclass
class OpNormEstimate:
    """ Lower bound for the restricted operator norm """
    value: float
    argmax: np.ndarray
    iterations: int
    converged: bool
    restarts_used: int
    values: list = field(default_factory=list)

    def as_dict(self):
        return dict(
            value=self.value, iterations=self.iterations,
            converged=self.converged, restarts_used=self.restarts_used,
            argmax_re=self.argmax.real.tolist(),
            argmax_im=self.argmax.imag.tolist())


@dataclass
class AscentOptions:
    """ Knobs of the projected gradient ascent """
    restarts: int = RESTARTS
    max_iters: int = ITERATIONS
    tol: float = TOLERANCE
    rel_tol: float = REL_TOL

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise OptionError("Restarts and iterations must be positive.")
        if not self.tol > 0:
            raise OptionError("Ascent tolerance must be positive.")


def _to_real(a):
    a = np.asarray(a, dtype=complex)
    return np.concatenate([a.real, a.imag])


def _to_complex(x):
    half = x.size // 2
    return x[:half] + 1j * x[half:]


def _gauge(a):
    """ Rotate so that the first nonzero coordinate is real positive """
    nonzero = np.flatnonzero(np.abs(a) > 0)
    if nonzero.size == 0:
        return a
    first = a[nonzero[0]]
    return a * (abs(first) / first)


def _indices(J):
    indices = tuple(getattr(J, "indices", J))
    if not indices:
        raise OptionError("Operator norm needs a nonempty index set.")
    return indices


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  L2 Operator
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def l2_top_singular(system, J, tol=POWER_TOLERANCE):
    """
    Largest singular value of a -> sum a_i phi_i into L2

    Power iteration on the Gram matrix of J applied through the
    system's transforms. Returns the value together with a unit
    maximizing coefficient vector.
    """
    indices = _indices(J)
    generator = random_generator(0, STREAM_SPHERE)
    vector = (generator.standard_normal(len(indices))
              + 1j * generator.standard_normal(len(indices)))
    vector /= np.linalg.norm(vector)
    eigenvalue = 0.0
    for iteration in range(POWER_ITERATIONS):
        image = system.gram_apply(indices, vector)
        updated = float(np.real(np.vdot(vector, image)))
        size = np.linalg.norm(image)
        if size == 0:
            return 0.0, vector
        vector = image / size
        if abs(updated - eigenvalue) <= tol * max(updated, 1e-300):
            eigenvalue = updated
            break
        eigenvalue = updated
    log.details("Power iteration stopped after {0} steps".format(
        iteration + 1))
    return float(np.sqrt(max(eigenvalue, 0.0))), _gauge(vector)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Ascent
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def _ascend(space, spec, system, indices, start, options):
    """ Projected gradient ascent from one starting point """

    def norm(point, guess=None):
        values = system.synthesize(indices, _to_complex(point))
        result = luxemburg_norm(space, spec, values, options.rel_tol, guess)
        return values, result.value

    def gradient(values, value):
        return gradient_at(space, spec, system, indices, values, value)

    x = start / np.linalg.norm(start)
    values, value = norm(x)
    direction = gradient(values, value)
    converged = False
    iteration = 0
    step = INITIAL_STEP
    for iteration in range(1, options.max_iters + 1):
        tangent = direction - np.dot(direction, x) * x
        slope = float(np.dot(tangent, tangent))
        if np.sqrt(slope) <= options.tol * max(1.0, value):
            converged = True
            break
        # Start from twice the last accepted step
        step = min(INITIAL_STEP, 2 * step)
        accepted = None
        while step >= MIN_STEP:
            candidate = x + step * tangent
            candidate /= np.linalg.norm(candidate)
            candidate_values, candidate_value = norm(candidate, value)
            if candidate_value >= value + ARMIJO * step * slope:
                accepted = candidate, candidate_values, candidate_value
                break
            step *= BACKTRACKING
        if accepted is None:
            # No ascent direction left at working precision
            converged = True
            break
        gain = accepted[2] - value
        x, values, value = accepted
        direction = gradient(values, value)
        log.data("Ascent step {0}: value {1!r}, step {2!r}".format(
            iteration, value, step))
        if gain <= options.tol * value:
            converged = True
            break
    return x, value, iteration, converged


def opnorm_ascent(space, spec, system, J, options=None, seed=0):
    """
    Estimate the restricted operator norm by ascent with restarts

    The first start is the top L2 singular vector, the remaining ones
    are seeded random unit vectors. The best local maximum wins, ties
    keep the first one found.
    """
    options = options or AscentOptions()
    indices = _indices(J)
    size = len(indices)
    generator = random_generator(seed, STREAM_ASCENT)
    starts = [_to_real(l2_top_singular(system, indices)[1])]
    for _ in range(options.restarts - 1):
        starts.append(generator.standard_normal(2 * size))

    best = None
    values = []
    total = 0
    all_converged = True
    for number, start in enumerate(starts):
        x, value, iterations, converged = _ascend(
            space, spec, system, indices, start, options)
        log.debug("Restart {0}: value {1!r} after {2} iterations{3}".format(
            number, value, iterations, "" if converged else " (capped)"))
        values.append(value)
        total += iterations
        all_converged = all_converged and converged
        if best is None or value > best[1]:
            best = x, value
    argmax = _gauge(_to_complex(best[0]))
    argmax /= np.linalg.norm(argmax)
    value = luxemburg_norm(
        space, spec, system.synthesize(indices, argmax), options.rel_tol).value
    return OpNormEstimate(
        value=value, argmax=argmax, iterations=total,
        converged=all_converged, restarts_used=len(starts), values=values)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Exhaustive Sampling
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def sphere_points(dimension, samples, seed=0):
    """
    Well spread points on the unit sphere of R^dimension

    A scrambled Sobol sequence is pushed through the normal quantile
    function and normalized. With a fixed seed, fewer samples give a
    prefix of the points drawn for more samples.
    """
    sampler = qmc.Sobol(
        d=dimension, scramble=True,
        seed=random_generator(seed, STREAM_SPHERE))
    power = max(0, int(np.ceil(np.log2(max(samples, 1)))))
    points = sampler.random_base2(m=power)[:samples]
    eps = np.finfo(float).eps
    normals = ndtri(np.clip(points, eps, 1 - eps))
    return normals / np.linalg.norm(normals, axis=1)[:, None]


def opnorm_bruteforce(space, spec, system, J, samples, seed=0,
                      rel_tol=REL_TOL, include_ascent=True):
    """
    Maximize the norm over many sphere points, for |J| <= 3 only

    Serves as a check of the ascent. The ascent output is included as
    one more candidate unless disabled.
    """
    indices = _indices(J)
    size = len(indices)
    if size > MAX_BRUTEFORCE_SIZE:
        raise OptionError(
            "Exhaustive sampling supports at most {0} indices.".format(
                MAX_BRUTEFORCE_SIZE))
    if samples < 1:
        raise OptionError("At least one sample required.")
    points = sphere_points(2 * size, samples, seed)
    coefficients = points[:, :size] + 1j * points[:, size:]
    columns = system.columns(indices)
    chunk = max(1, 2 ** 22 // space.atom_count)
    best_value = -np.inf
    best = None
    for first in range(0, samples, chunk):
        block = coefficients[first:first + chunk]
        norms = luxemburg_norms(space, spec, block @ columns.T, rel_tol)
        position = int(np.argmax(norms))
        if norms[position] > best_value:
            best_value = float(norms[position])
            best = block[position]
    iterations = samples
    if include_ascent:
        estimate = opnorm_ascent(
            space, spec, system, indices,
            AscentOptions(rel_tol=rel_tol), seed)
        iterations += estimate.iterations
        if estimate.value > best_value:
            best_value, best = estimate.value, estimate.argmax
    log.debug("Exhaustive maximum {0!r} from {1} samples".format(
        best_value, samples))
    return OpNormEstimate(
        value=best_value, argmax=_gauge(best), iterations=iterations,
        converged=True, restarts_used=samples)
