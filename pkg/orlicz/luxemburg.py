# coding: utf-8

"""
Luxemburg norm solver and its coefficient gradient

The norm is the infimum of all k > 0 with E[Phi(|f|/k)] <= 1. On a
finite space the modular is continuous, convex and nonincreasing in k.
Moduli are divided by their maximum first so that neither the L2
starting point nor the modular overflows. The root of E[Phi(|f|/k)] = 1
is bracketed by doubling or halving from the L2 norm, or by small
steps around a previous value when one is given, and the bracket is
then shrunk by Newton steps from below and secant steps from above.
A final safeguarded Newton step polishes the root to machine
precision, which keeps finite difference checks of the gradient
meaningful.
"""

from dataclasses import dataclass

import numpy as np

from orlicz.base import (MAX_BISECTIONS, MAX_DOUBLINGS, REL_TOL,
                         NumericalError, OptionError)
from orlicz.space import Func
from orlicz.utils import log

# Smallest starting point of the bracket search
TINY = 1e-300

# Largest accepted relative tolerance
MAX_REL_TOL = 1e-2

# Slack allowed for the modular at the returned value
MODULAR_SLACK = 1e-9

# First bracket step around a previous value
WARM_FACTOR = 1.01

# Bracket step of a cold start
COLD_FACTOR = 2.0


@dataclass
class NormResult:
    """ Luxemburg norm with solver diagnostics """
    value: float
    modular_at_value: float
    iterations: int
    bracket: tuple

    def __float__(self):
        return float(self.value)


def _values(space, f):
    """ Complex values of a function given as Func or array """
    values = f.values if isinstance(f, Func) else np.asarray(f, dtype=complex)
    if values.ndim != 1 or values.size != space.atom_count:
        raise OptionError(
            "Function has {0} values, the space has {1} atoms.".format(
                values.size, space.atom_count))
    if not np.all(np.isfinite(values)):
        raise OptionError("Function values must be finite.")
    return values


def _modular(weights, moduli, spec, k):
    """ E[Phi(|f|/k)] for precomputed moduli """
    return float(np.sum(weights * spec(moduli / k)))


def _modular_slope(weights, moduli, spec, k):
    """ Derivative of the modular in k: -E[Phi'(|f|/k) |f|] / k^2 """
    return -float(np.sum(weights * spec.deriv(moduli / k) * moduli)) / k ** 2


def modular(space, spec, f, k):
    """ The modular E[Phi(|f|/k)] """
    if not k > 0:
        raise OptionError("Modular needs k > 0, got {0}.".format(k))
    moduli = np.abs(_values(space, f))
    return _modular(space.weights, moduli, spec, k)


def _bracket(weights, moduli, spec, start, factor=COLD_FACTOR):
    """
    Find lo < hi with modular(lo) > 1 >= modular(hi)

    The step factor is squared after every miss until it reaches
    doubling.
    """
    steps = 0
    if _modular(weights, moduli, spec, start) <= 1:
        hi = start
        lo = hi / factor
        while _modular(weights, moduli, spec, lo) <= 1:
            steps += 1
            if steps > MAX_DOUBLINGS:
                raise NumericalError(
                    "Unable to bracket the Luxemburg norm from below.")
            factor = min(factor * factor, COLD_FACTOR)
            hi, lo = lo, lo / factor
    else:
        lo = start
        hi = lo * factor
        while _modular(weights, moduli, spec, hi) > 1:
            steps += 1
            if steps > MAX_DOUBLINGS:
                raise NumericalError(
                    "Unable to bracket the Luxemburg norm from above.")
            factor = min(factor * factor, COLD_FACTOR)
            lo, hi = hi, hi * factor
    return lo, hi, steps


def _refine(weights, moduli, spec, lo, hi, rel_tol):
    """
    Shrink the bracket until hi - lo <= rel_tol * hi

    By convexity a Newton step from lo stays below the root and the
    secant through lo and hi stays above it. Candidates outside the
    bracket, and iterations which do not halve it, fall back to
    bisection.
    """
    low_value = _modular(weights, moduli, spec, lo)
    high_value = _modular(weights, moduli, spec, hi)
    steps = 0
    while hi - lo > rel_tol * hi:
        steps += 1
        if steps > MAX_BISECTIONS:
            raise NumericalError(
                "Luxemburg solver did not converge in {0} steps.".format(
                    MAX_BISECTIONS))
        width = hi - lo
        candidates = []
        slope = _modular_slope(weights, moduli, spec, lo)
        if slope < 0:
            candidates.append(lo - (low_value - 1) / slope)
        if low_value > high_value:
            candidates.append(
                lo + (low_value - 1) * width / (low_value - high_value))
        for candidate in candidates:
            if not lo < candidate < hi:
                continue
            value = _modular(weights, moduli, spec, candidate)
            if value > 1:
                lo, low_value = candidate, value
            else:
                hi, high_value = candidate, value
        if hi - lo > 0.5 * width:
            middle = 0.5 * (lo + hi)
            if middle <= lo or middle >= hi:
                break
            value = _modular(weights, moduli, spec, middle)
            if value > 1:
                lo, low_value = middle, value
            else:
                hi, high_value = middle, value
        log.data("Solver step {0}: [{1!r}, {2!r}]".format(steps, lo, hi))
    return lo, hi, high_value, steps


def luxemburg_norm(space, spec, f, rel_tol=REL_TOL, guess=None):
    """
    Compute the Luxemburg norm of f

    Returns a NormResult whose value is within rel_tol of the infimum
    and satisfies modular(value) <= 1 up to a tiny slack. The zero
    function has norm zero. A positive guess, such as the norm of a
    nearby function, starts the bracket search next to it.
    """
    if not 0 < rel_tol <= MAX_REL_TOL:
        raise OptionError(
            "Relative tolerance must lie in (0, {0}], got {1}.".format(
                MAX_REL_TOL, rel_tol))
    weights = space.weights
    moduli = np.abs(_values(space, f))
    scale = float(np.max(moduli[weights > 0], initial=0.0))
    if not scale > 0:
        return NormResult(0.0, 0.0, 0, (0.0, 0.0))
    moduli = moduli / scale

    start = guess / scale if guess is not None else 0.0
    if 0 < start < np.inf:
        lo, hi, iterations = _bracket(
            weights, moduli, spec, start, WARM_FACTOR)
    else:
        start = max(float(np.sqrt(np.sum(weights * moduli ** 2))), TINY)
        lo, hi, iterations = _bracket(weights, moduli, spec, start)
    log.details("Luxemburg bracket [{0!r}, {1!r}]".format(
        lo * scale, hi * scale))
    bracket = (lo * scale, hi * scale)

    lo, hi, value_modular, steps = _refine(
        weights, moduli, spec, lo, hi, rel_tol)
    value = hi

    # Polish with a Newton step on modular(k) = 1, kept inside (lo, hi]
    slope = _modular_slope(weights, moduli, spec, value)
    if slope < 0:
        candidate = value - (value_modular - 1) / slope
        if lo < candidate <= hi:
            candidate_modular = _modular(weights, moduli, spec, candidate)
            if candidate_modular <= 1 + MODULAR_SLACK:
                value, value_modular = candidate, candidate_modular
    return NormResult(
        float(value * scale), float(value_modular),
        iterations + steps, bracket)


def luxemburg_norms(space, spec, values, rel_tol=REL_TOL):
    """
    Vectorized Luxemburg norms for each row of a value matrix

    Rows are functions on the space. Used to evaluate many candidate
    coefficient vectors at once, zero rows get zero norm.
    """
    values = np.asarray(values, dtype=complex)
    moduli = np.abs(values)
    weights = space.weights

    def modulars(k):
        return np.sum(weights * spec(moduli / k[:, None]), axis=1)

    result = np.zeros(moduli.shape[0])
    scales = np.max(np.where(weights > 0, moduli, 0.0), axis=1)
    active = scales > 0
    if not np.any(active):
        return result
    scales = scales[active]
    moduli = moduli[active] / scales[:, None]
    start = np.maximum(np.sqrt(np.sum(weights * moduli ** 2, axis=1)), TINY)
    lo = start.copy()
    hi = start.copy()
    feasible = modulars(start) <= 1
    lo[feasible] = start[feasible] / 2
    hi[~feasible] = start[~feasible] * 2
    for _ in range(MAX_DOUBLINGS):
        low_ok = modulars(lo) > 1
        high_ok = modulars(hi) <= 1
        if np.all(low_ok & high_ok):
            break
        shrink = ~low_ok
        hi[shrink], lo[shrink] = lo[shrink], lo[shrink] / 2
        grow = ~high_ok
        lo[grow], hi[grow] = hi[grow], hi[grow] * 2
    else:
        raise NumericalError("Unable to bracket the Luxemburg norms.")
    for _ in range(MAX_BISECTIONS):
        if np.all(hi - lo <= rel_tol * hi):
            break
        middle = 0.5 * (lo + hi)
        above = modulars(middle) > 1
        lo = np.where(above, middle, lo)
        hi = np.where(above, hi, middle)
    result[active] = hi * scales
    return result


def _coefficients(indices, a):
    a = np.asarray(a, dtype=complex)
    if a.size != len(indices):
        raise OptionError("Expected {0} coefficients, got {1}.".format(
            len(indices), a.size))
    if not np.any(a != 0):
        raise OptionError("Gradient is undefined at a = 0.")
    return a


def gradient_at(space, spec, system, indices, values, k):
    """
    Gradient for synthesized values whose Luxemburg norm is k

    Implicit differentiation of E[Phi(|f|/k)] = 1 gives
    dk = E[Phi'(|f|/k) d|f|] / E[Phi'(|f|/k) |f|/k].
    """
    if k == 0:
        raise OptionError("Gradient is undefined for a vanishing function.")
    moduli = np.abs(values)
    ratios = moduli / k
    derivatives = space.weights * spec.deriv(ratios)
    denominator = float(np.sum(derivatives * ratios))
    if not denominator > 0:
        raise NumericalError("Modular does not decrease at the norm.")
    phases = np.zeros_like(values)
    nonzero = moduli > 0
    phases[nonzero] = np.conj(values[nonzero]) / moduli[nonzero]
    correlations = system.correlate(indices, derivatives * phases)
    return np.concatenate(
        [correlations.real, -correlations.imag]) / denominator


def luxemburg_gradient(space, spec, system, J, a, rel_tol=REL_TOL):
    """
    Gradient of a -> ||sum a_i phi_i|| over i in J

    Computed by implicit differentiation of E[Phi(|f_a|/k)] = 1. The
    returned vector holds the partial derivatives with respect to the
    real parts of the coefficients followed by those with respect to
    the imaginary parts.
    """
    if system.space is not space and system.space.atom_count != len(space):
        raise OptionError("System does not live on the given space.")
    indices = getattr(J, "indices", J)
    values = system.synthesize(indices, _coefficients(indices, a))
    k = luxemburg_norm(space, spec, values, rel_tol).value
    return gradient_at(space, spec, system, indices, values, k)
