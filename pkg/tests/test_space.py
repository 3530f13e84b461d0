# coding: utf-8

import numpy as np
import pytest

from orlicz.base import OptionError
from orlicz.space import (Func, ProbSpace, expectation, inner_product,
                          lp_norm, read_func, uniform_grid_space, write_func)

# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Probability Space
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~


def test_ProbSpace():
    space = ProbSpace([0.25, 0.75])
    assert space.atom_count == 2
    assert len(space) == 2
    assert not space.uniform()
    with pytest.raises(ValueError):
        space.weights[0] = 1


def test_ProbSpace_invalid():
    with pytest.raises(OptionError):
        ProbSpace([])
    with pytest.raises(OptionError):
        ProbSpace([0.5, 0.6])
    with pytest.raises(OptionError):
        ProbSpace([1.5, -0.5])
    with pytest.raises(OptionError):
        ProbSpace([0.5, 0.5], [0.0, 1.0])
    with pytest.raises(OptionError):
        ProbSpace([0.5, 0.5], [0.0])


def test_uniform_grid_space():
    space = uniform_grid_space(4)
    assert space.uniform()
    assert list(space.coordinates) == [0.0, 0.25, 0.5, 0.75]
    assert sum(space.weights) == pytest.approx(1.0)
    assert uniform_grid_space(1).weights[0] == 1.0
    for size in [0, -1, 2.5]:
        with pytest.raises(OptionError):
            uniform_grid_space(size)


def test_Func():
    space = uniform_grid_space(3)
    f = Func(space, [1, 2j, -1])
    g = Func(space, [1, 1, 1])
    assert list((f + g).values) == [2, 1 + 2j, 0]
    assert list((2 * f).values) == [2, 4j, -2]
    assert list(abs(f)) == [1, 2, 1]
    with pytest.raises(OptionError):
        Func(space, [1, 2])
    with pytest.raises(OptionError):
        Func(space, [1, np.nan, 2])
    with pytest.raises(OptionError):
        f + Func(uniform_grid_space(2), [1, 1])


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Operations
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

def test_expectation():
    space = ProbSpace([0.25, 0.75])
    assert expectation(space, [4, 0]) == pytest.approx(1)
    assert expectation(space, np.ones(2)) == pytest.approx(1)


def test_lp_norm():
    space = uniform_grid_space(4)
    f = Func(space, [1, -1, 1j, -1j])
    for p in [1, 2, 3.5, np.inf]:
        assert lp_norm(space, f, p) == pytest.approx(1, rel=1e-14)
    assert lp_norm(space, [2, 0, 0, 0], 2) == pytest.approx(1)
    assert lp_norm(space, np.zeros(4), 3) == 0
    with pytest.raises(OptionError):
        lp_norm(space, f, 0.5)


def test_lp_norm_large_exponent():
    space = uniform_grid_space(2)
    assert lp_norm(space, [1e200, 1e200], 50) == pytest.approx(1e200)


def test_lp_norm_zero_weight():
    space = ProbSpace([1.0, 0.0])
    assert lp_norm(space, [1, 100], np.inf) == 1


def test_inner_product():
    space = uniform_grid_space(2)
    assert inner_product(space, [1, 1j], [1, 1j]) == pytest.approx(1)
    assert inner_product(space, [1, 1], [1, -1]) == pytest.approx(0)
    assert inner_product(space, [1j, 1j], [1, 1]) == pytest.approx(1j)


def test_read_write_func(tmp_path):
    space = uniform_grid_space(3)
    f = Func(space, [1 + 2j, -0.5, 3j])
    path = str(tmp_path / "f.csv")
    write_func(path, f)
    g = read_func(path)
    assert g.space.atom_count == 3
    assert np.array_equal(g.values, f.values)


def test_read_func_invalid(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("1,2,3\n4,5,6\n")
    with pytest.raises(OptionError):
        read_func(str(path))
    with pytest.raises(OptionError):
        read_func(str(tmp_path / "missing.csv"))
    path.write_text("1,0\n2,0\n")
    with pytest.raises(OptionError):
        read_func(str(path), uniform_grid_space(3))


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#  Properties
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

RANDOM = np.random.default_rng(11)


def random_space(size):
    weights = RANDOM.uniform(0.1, 1, size)
    return ProbSpace(weights / weights.sum())


def random_values(size):
    return RANDOM.standard_normal(size) + 1j * RANDOM.standard_normal(size)


def test_expectation_linear():
    for _ in range(20):
        space = random_space(16)
        f, g = random_values(16), random_values(16)
        a, b = random_values(2)
        assert expectation(space, a * f + b * g) == pytest.approx(
            a * expectation(space, f) + b * expectation(space, g))


def test_lp_norm_monotone_in_p():
    exponents = [1, 1.5, 2, 3, 4, 8, 16, np.inf]
    for _ in range(20):
        space = random_space(32)
        f = random_values(32)
        norms = [lp_norm(space, f, p) for p in exponents]
        for smaller, larger in zip(norms, norms[1:]):
            assert smaller <= larger * (1 + 1e-12)


@pytest.mark.parametrize("p", [1, 2, 3.5, np.inf])
def test_lp_norm_triangle(p):
    for _ in range(20):
        space = random_space(32)
        f, g = random_values(32), 10 * random_values(32)
        assert lp_norm(space, f + g, p) <= (
            lp_norm(space, f, p) + lp_norm(space, g, p)) * (1 + 1e-12)
