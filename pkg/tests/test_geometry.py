import math

import numpy as np
import pytest

from dyadic_lasso.errors import DimensionError, ParameterError
from dyadic_lasso.geometry import (
    Design,
    NoiseLevel,
    derive_stream,
    empirical_inner,
    empirical_norm,
    gamma_emp,
    sample_regression,
    sample_sequence_model,
)


# ==========================================
# PRODUCTO EMPÍRICO Y CRITERIO
# ==========================================

@pytest.mark.parametrize(
    "u, v, expected",
    [
        ([1.0, 1.0], [1.0, 1.0], 1.0),
        ([1.0, 0.0], [0.0, 1.0], 0.0),
        ([3.0, 4.0], [3.0, 4.0], 12.5),
    ],
)
def test_empirical_inner(u, v, expected):
    assert empirical_inner(u, v, Design.grid(2)) == pytest.approx(expected)


def test_empirical_norm():
    assert empirical_norm([0.0, 0.0, 0.0], Design.grid(3)) == 0.0
    assert empirical_norm([1.0, 1.0, 1.0, 1.0], Design.grid(4)) == pytest.approx(1.0)
    assert empirical_norm([3.0, 4.0], Design.grid(2)) == pytest.approx(3.5355339, abs=1e-7)


def test_gamma_emp():
    design = Design.grid(2)
    assert gamma_emp([0.3, -1.2], [0.3, -1.2], design) == 0.0
    assert gamma_emp([1.0, 1.0], [0.0, 0.0], design) == pytest.approx(1.0)
    assert gamma_emp([2.0, 0.0], [0.0, 0.0], design) == pytest.approx(2.0)


def test_cauchy_schwarz_on_random_vectors():
    design = Design.grid(30)
    for case in range(100):
        rng = derive_stream(55, case)
        u, v = rng.standard_normal(30), rng.standard_normal(30)
        bound = empirical_norm(u, design) * empirical_norm(v, design)
        assert abs(empirical_inner(u, v, design)) <= bound * (1.0 + 1e-12)


def test_criterion_differences_do_not_depend_on_the_shift(rng):
    design = Design.grid(12)
    y, h, g = rng.standard_normal(12), rng.standard_normal(12), rng.standard_normal(12)
    shift = empirical_norm(y, design) ** 2
    shifted_h = gamma_emp(y, h, design) - shift
    shifted_g = gamma_emp(y, g, design) - shift
    assert shifted_h == pytest.approx(-2.0 * empirical_inner(y, h, design) + empirical_norm(h, design) ** 2)
    assert shifted_h - shifted_g == pytest.approx(gamma_emp(y, h, design) - gamma_emp(y, g, design))


def test_length_mismatch_is_rejected():
    with pytest.raises(DimensionError):
        empirical_inner([1.0, 2.0, 3.0], [1.0, 2.0], Design.grid(2))


def test_empty_design_is_rejected():
    with pytest.raises(DimensionError):
        Design(np.zeros((0, 1)))


def test_design_constructors(rng):
    grid = Design.grid(4)
    assert grid.n == 4 and grid.d == 1
    np.testing.assert_allclose(grid.points[:, 0], [0.0, 0.25, 0.5, 0.75])

    cloud = Design.uniform(30, 2, rng)
    assert cloud.points.shape == (30, 2)
    assert np.all((cloud.points >= 0.0) & (cloud.points <= 1.0))

    with pytest.raises(ParameterError):
        Design.grid(0)


def test_noise_level():
    level = NoiseLevel.from_regression(2.0, 4)
    assert level.eps == pytest.approx(1.0)
    assert level.sigma(4) == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        NoiseLevel(0.0)


# ==========================================
# MUESTREO Y FLUJOS
# ==========================================

def test_noiseless_regression_copies_target(rng):
    design = Design.grid(5)
    f = np.linspace(-1.0, 1.0, 5)
    np.testing.assert_array_equal(sample_regression(f, 0.0, design, rng), f)


def test_regression_noise_is_centered():
    n = 10_000
    y = sample_regression(np.zeros(n), 1.0, Design.grid(n), derive_stream(11))
    assert abs(y.mean()) <= 4.0 / math.sqrt(n)


def test_streams_are_deterministic():
    first = sample_regression(np.zeros(50), 1.0, Design.grid(50), derive_stream(5, 1, 2))
    second = sample_regression(np.zeros(50), 1.0, Design.grid(50), derive_stream(5, 1, 2))
    np.testing.assert_array_equal(first, second)


def test_streams_differ_by_key():
    a = derive_stream(5, 0).standard_normal(8)
    b = derive_stream(5, 1).standard_normal(8)
    assert not np.array_equal(a, b)


def test_negative_seed_is_rejected():
    with pytest.raises(ParameterError):
        derive_stream(-1)
    with pytest.raises(ParameterError):
        derive_stream(0, -2)


def test_sequence_model_without_noise(rng):
    theta = np.array([1.0, -0.5, 0.25])
    np.testing.assert_array_equal(sample_sequence_model(theta, 0.0, 3, rng), theta)


def test_sequence_model_pads_and_truncates(rng):
    y = sample_sequence_model([2.0, 1.0], 0.0, 4, rng)
    np.testing.assert_array_equal(y, [2.0, 1.0, 0.0, 0.0])
    y = sample_sequence_model([2.0, 1.0, 3.0], 0.0, 1, rng)
    np.testing.assert_array_equal(y, [2.0])


def test_sequence_model_variance():
    y = sample_sequence_model(np.zeros(10_000), 1.0, 10_000, derive_stream(3))
    assert 0.9 <= y.var() <= 1.1


def test_sequence_model_single_coordinate():
    eps = 0.3
    y = sample_sequence_model([5.0], eps, 1, derive_stream(42))
    first_normal = derive_stream(42).standard_normal(1)[0]
    assert y[0] == pytest.approx(5.0 + eps * first_normal)
