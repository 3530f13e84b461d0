# coding: utf-8

import numpy as np
import pytest

from orlicz.base import OptionError
from orlicz.luxemburg import (luxemburg_gradient, luxemburg_norm,
                              luxemburg_norms, modular)
from orlicz.space import Func, ProbSpace, lp_norm, uniform_grid_space
from orlicz.systems import fourier_system, walsh_system
from orlicz.young import (young_close2, young_kashin, young_power,
                          young_ryou)

# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Constants
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

RANDOM = np.random.default_rng(20240601)


def random_function(size, scale=1.0):
    return scale * (RANDOM.standard_normal(size)
                    + 1j * RANDOM.standard_normal(size))


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Norm
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~


@pytest.mark.parametrize("p", [2, 2.5, 3, 4])
@pytest.mark.parametrize("M", [64, 4096])
def test_power_matches_lp_norm(p, M):
    space = uniform_grid_space(M)
    spec = young_power(p)
    for _ in range(10):
        f = random_function(M, scale=RANDOM.uniform(1e-3, 1e3))
        expected = lp_norm(space, f, p)
        assert luxemburg_norm(space, spec, f).value == pytest.approx(
            expected, rel=1e-8)


def test_zero_function():
    space = uniform_grid_space(8)
    result = luxemburg_norm(space, young_close2(1), np.zeros(8))
    assert result.value == 0
    assert float(result) == 0


def test_zero_on_charged_atoms():
    space = ProbSpace([1.0, 0.0])
    assert luxemburg_norm(space, young_close2(1), [0, 5]).value == 0


def test_constant_function():
    """ Phi(1) = 1 so constants have their modulus as norm """
    space = uniform_grid_space(16)
    for alpha in [0.5, 1, 2]:
        value = luxemburg_norm(space, young_close2(alpha), np.full(16, 3j))
        assert value.value == pytest.approx(3, rel=1e-10)


def test_modular_at_norm():
    space = uniform_grid_space(128)
    spec = young_close2(1)
    f = random_function(128)
    result = luxemburg_norm(space, spec, f)
    assert result.modular_at_value <= 1 + 1e-9
    assert result.modular_at_value == pytest.approx(1, abs=1e-6)
    assert modular(space, spec, f, result.value) == pytest.approx(
        result.modular_at_value)
    low, high = result.bracket
    assert low < result.value <= high


def test_extreme_scales():
    space = uniform_grid_space(32)
    spec = young_close2(1)
    f = random_function(32)
    base = luxemburg_norm(space, spec, f).value
    for scale in [1e-150, 1e150]:
        value = luxemburg_norm(space, spec, scale * f).value
        assert value == pytest.approx(scale * base, rel=1e-8)


def test_extreme_magnitudes():
    """ Values whose squares leave the floating point range """
    space = uniform_grid_space(4)
    spec = young_power(2)
    for scale in [1e200, 1e-200]:
        f = np.full(4, scale)
        assert luxemburg_norm(space, spec, f).value == pytest.approx(
            lp_norm(space, f, 2), rel=1e-9)
        assert luxemburg_norms(space, spec, [f])[0] == pytest.approx(
            scale, rel=1e-9)
    f = random_function(32)
    base = luxemburg_norm(uniform_grid_space(32), young_close2(1), f).value
    for scale in [1e-250, 1e250]:
        value = luxemburg_norm(
            uniform_grid_space(32), young_close2(1), scale * f).value
        assert value == pytest.approx(scale * base, rel=1e-8)


def test_warm_start():
    space = uniform_grid_space(256)
    spec = young_close2(1)
    f = random_function(256)
    cold = luxemburg_norm(space, spec, f)
    # Plain bisection needs more than 30 halvings for rel_tol 1e-10
    assert cold.iterations < 25
    for guess in [cold.value, 1.05 * cold.value, cold.value / 3, 1e6]:
        warm = luxemburg_norm(space, spec, f, guess=guess)
        assert warm.value == pytest.approx(cold.value, rel=1e-9)
        assert warm.modular_at_value <= 1 + 1e-9
    assert luxemburg_norm(
        space, spec, f, guess=cold.value).iterations <= cold.iterations


@pytest.mark.parametrize("alpha", [0.5, 1, 2])
def test_norm_axioms(alpha):
    space = uniform_grid_space(64)
    spec = young_close2(alpha)
    for _ in range(20):
        f = random_function(64)
        g = random_function(64, scale=3)
        norm_f = luxemburg_norm(space, spec, f).value
        norm_g = luxemburg_norm(space, spec, g).value
        # Homogeneity
        factor = complex(*RANDOM.standard_normal(2))
        scaled = luxemburg_norm(space, spec, factor * f).value
        assert scaled == pytest.approx(abs(factor) * norm_f, rel=1e-8)
        # Triangle inequality
        total = luxemburg_norm(space, spec, f + g).value
        assert total <= (norm_f + norm_g) * (1 + 1e-8)
        # Pointwise monotonicity
        smaller = f * RANDOM.uniform(0, 1, 64)
        assert luxemburg_norm(space, spec, smaller).value <= norm_f * (
            1 + 1e-8)


def test_modular_nonincreasing():
    space = uniform_grid_space(64)
    ladder = np.logspace(-3, 3, 200)
    for spec in [young_close2(1), young_ryou(3, 0.5), young_kashin(1)]:
        f = random_function(64)
        values = [modular(space, spec, f, k) for k in ladder]
        assert np.all(np.diff(values) < 0)


def test_dense_grid_oracle():
    """ Two atoms with values 0 and 10: Phi(10/k) = 2 """
    space = uniform_grid_space(2)
    spec = young_close2(1)
    value = luxemburg_norm(space, spec, [0, 10]).value
    ladder = np.linspace(1, 20, 10 ** 6)
    feasible = ladder[0.5 * spec(10 / ladder) <= 1]
    step = ladder[1] - ladder[0]
    assert feasible[0] - step <= value <= feasible[0]
    assert value == pytest.approx(10 / np.sqrt(2), rel=1e-10)


def test_norm_dominates_l2():
    space = uniform_grid_space(64)
    f = random_function(64)
    assert luxemburg_norm(space, young_close2(1), f).value >= lp_norm(
        space, f, 2) * (1 - 1e-10)


def test_luxemburg_norms():
    space = uniform_grid_space(32)
    spec = young_ryou(3, 0.5)
    rows = np.array([random_function(32) for _ in range(5)] + [np.zeros(32)])
    values = luxemburg_norms(space, spec, rows)
    assert values[-1] == 0
    for row, value in zip(rows[:-1], values[:-1]):
        assert value == pytest.approx(
            luxemburg_norm(space, spec, row).value, rel=1e-9)


def test_invalid_arguments():
    space = uniform_grid_space(4)
    spec = young_close2(1)
    with pytest.raises(OptionError):
        luxemburg_norm(space, spec, np.ones(3))
    with pytest.raises(OptionError):
        luxemburg_norm(space, spec, [1, np.inf, 1, 1])
    with pytest.raises(OptionError):
        luxemburg_norm(space, spec, np.ones(4), rel_tol=0)
    with pytest.raises(OptionError):
        luxemburg_norm(space, spec, np.ones(4), rel_tol=0.5)
    with pytest.raises(OptionError):
        modular(space, spec, np.ones(4), 0)


def test_func_argument():
    space = uniform_grid_space(4)
    f = Func(space, [1, 1j, -1, -1j])
    assert luxemburg_norm(space, young_close2(1), f).value == pytest.approx(1)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Gradient
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def finite_differences(space, spec, system, J, a, step=1e-6):
    x = np.concatenate([a.real, a.imag])
    half = len(J)
    gradient = np.zeros(x.size)
    for index in range(x.size):
        shift = np.zeros(x.size)
        shift[index] = step
        values = []
        for point in [x + shift, x - shift]:
            coefficients = point[:half] + 1j * point[half:]
            values.append(luxemburg_norm(
                space, spec, system.synthesize(J, coefficients)).value)
        gradient[index] = (values[0] - values[1]) / (2 * step)
    return gradient


@pytest.mark.parametrize("system, J", [
    (fourier_system(8, 64), [1, 3, 5]),
    (fourier_system(16, 64), [2, 7, 11, 16]),
    (walsh_system(4), [1, 2, 7]),
    (walsh_system(5), [3, 30]),
    ])
@pytest.mark.parametrize("spec", [young_close2(1), young_power(4)])
def test_gradient(system, J, spec):
    space = system.space
    for _ in range(5):
        a = random_function(len(J))
        gradient = luxemburg_gradient(space, spec, system, J, a)
        expected = finite_differences(space, spec, system, J, a)
        assert np.linalg.norm(gradient - expected) <= 1e-5 * np.linalg.norm(
            expected)


def test_gradient_quadratic():
    """ For the L2 norm the gradient is the normalized coefficient vector """
    system = fourier_system(8, 64)
    a = random_function(3)
    gradient = luxemburg_gradient(
        system.space, young_power(2), system, [2, 4, 6], a)
    expected = np.concatenate([a.real, a.imag]) / np.linalg.norm(a)
    assert np.allclose(gradient, expected, rtol=1e-8, atol=1e-10)


def test_gradient_zero():
    system = fourier_system(4, 16)
    with pytest.raises(OptionError):
        luxemburg_gradient(
            system.space, young_close2(1), system, [1, 2], np.zeros(2))
    with pytest.raises(OptionError):
        luxemburg_gradient(
            system.space, young_close2(1), system, [1, 2], np.ones(3))


def test_gradient_logarithmic_region():
    """ Peaked sums reach the u^2 log^alpha(u) part of close2 """
    system = fourier_system(32, 128)
    J = list(range(1, 33))
    spec = young_close2(1)
    a = 1 + 0.1 * random_function(32)
    values = system.synthesize(J, a)
    norm = luxemburg_norm(system.space, spec, values).value
    assert np.max(np.abs(values)) / norm > np.e
    gradient = luxemburg_gradient(system.space, spec, system, J, a)
    expected = finite_differences(system.space, spec, system, J, a)
    assert np.linalg.norm(gradient - expected) <= 1e-5 * np.linalg.norm(
        expected)


def test_gradient_scale_invariant():
    system = fourier_system(16, 64)
    J = [1, 4, 9, 16]
    for spec in [young_close2(1), young_kashin(1)]:
        a = random_function(4)
        for factor in [2, 1e-3, 1e3]:
            assert np.allclose(
                luxemburg_gradient(system.space, spec, system, J, factor * a),
                luxemburg_gradient(system.space, spec, system, J, a),
                rtol=1e-7, atol=1e-10)
