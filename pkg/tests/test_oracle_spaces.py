import math

import numpy as np
import pytest

from dyadic_lasso.dictionaries import make_orthonormal_sequence
from dyadic_lasso.errors import ParameterError, RegimeError
from dyadic_lasso.geometry import Design, derive_stream
from dyadic_lasso.oracle_spaces import (
    RateRegime,
    TargetKind,
    besov_norm,
    check_hypercube_regime,
    check_rates_regime,
    deterministic_lasso,
    deterministic_lasso_sequence,
    hypercube_target,
    interp_rate_bound,
    k_sandwich_check,
    lasso_rate_regime,
    make_power_law_target,
    make_sparse_target,
    make_step_target,
    oracle_curve,
    selected_rate_bound,
    strong_lq_norm,
    u_param,
    weak_lq_norm,
)


# ==========================================
# LASSO DETERMINISTA
# ==========================================

def test_deterministic_lasso_sequence_example():
    value, theta = deterministic_lasso_sequence([1.0, 0.2], 2, 1.0)
    assert value == pytest.approx(0.79)
    np.testing.assert_allclose(theta, [0.5, 0.0])


def test_deterministic_lasso_sequence_tail_is_bias():
    value, theta = deterministic_lasso_sequence([1.0, 0.0, 0.5], 1, 0.0)
    assert value == pytest.approx(0.25)
    np.testing.assert_allclose(theta, [1.0])


def test_without_penalty_oracle_vanishes(haar16, rng):
    f = rng.standard_normal(16)
    value, _ = deterministic_lasso(haar16, f, 0.0)
    assert value <= 1e-12


def test_orthonormal_matches_closed_form(rng):
    theta_star = rng.normal(0.0, 1.0, size=8)
    dictionary = make_orthonormal_sequence(8)
    for lam in (0.1, 0.7, 2.5):
        value, fit = deterministic_lasso(dictionary, dictionary.synthesize(theta_star), lam, tol=1e-12)
        closed_value, closed_theta = deterministic_lasso_sequence(theta_star, 8, lam)
        assert value == pytest.approx(closed_value, abs=1e-10)
        np.testing.assert_allclose(fit.theta, closed_theta, atol=1e-10)


def test_oracle_curve_is_concave_nondecreasing(haar16, rng):
    f = haar16.synthesize(rng.standard_normal(16))
    lambdas = np.linspace(0.05, 3.0, 25)
    curve = oracle_curve(haar16, f, lambdas, tol=1e-12)
    assert curve.values.shape == (25,)
    assert len(curve.minimizers) == 25
    assert np.all(curve.values >= 0.0)
    assert np.all(np.diff(curve.values) >= -1e-9)
    assert np.all(np.diff(curve.values, 2) <= 1e-6)


# ==========================================
# ENCUADRE POR EL K-FUNCIONAL
# ==========================================

def test_sandwich_single_coordinate():
    check = k_sandwich_check([1.0], 0.5)
    assert check.L == pytest.approx(0.4375, abs=1e-8)
    assert check.lower <= check.L <= check.upper
    assert check.passed
    assert 0.0 < check.delta_lower and 0.0 < check.delta_upper


def test_sandwich_zero_target():
    check = k_sandwich_check(np.zeros(3), 0.5)
    assert check.L == 0.0
    assert check.passed
    assert check.lower <= 1e-4 and check.upper <= 1e-4


def test_sandwich_large_lambda_saturates():
    # λ ≥ 2 max|f|: L = ‖f‖² y el ínfimo superior se alcanza con δ → ∞
    check = k_sandwich_check([1.0], 4.0)
    assert check.L == pytest.approx(1.0)
    assert check.upper == pytest.approx(1.0, abs=1e-4)
    assert check.passed


def test_sandwich_random_targets():
    rng = derive_stream(31)
    f = rng.standard_normal(10)
    for lam in rng.uniform(0.05, 3.0, size=5):
        assert k_sandwich_check(f, float(lam)).passed


def test_sandwich_rejects_bad_inputs():
    with pytest.raises(ParameterError):
        k_sandwich_check([1.0], 0.0)
    with pytest.raises(ParameterError):
        k_sandwich_check([1.0], 0.5, delta_grid=(2.0, 1.0))


# ==========================================
# NORMAS
# ==========================================

def test_besov_norm():
    assert besov_norm([1.0, 0.0, 0.0], 0.3) == pytest.approx(1.0)
    assert besov_norm(np.zeros(5), 0.3) == 0.0

    theta = 1.0 / np.arange(1, 101)
    best = 0.0
    for big_j in range(1, 101):
        tail = sum(theta[j - 1] ** 2 for j in range(big_j, 101))
        best = max(best, big_j ** 0.5 * tail)
    assert besov_norm(theta, 0.25) == pytest.approx(math.sqrt(best), rel=1e-12)


def test_lq_norms():
    assert strong_lq_norm([1.0], 1.5) == pytest.approx(1.0)
    assert weak_lq_norm([1.0], 1.5) == pytest.approx(1.0)
    assert weak_lq_norm(np.arange(1, 51) ** (-1.0 / 1.5), 1.5) == pytest.approx(1.0)
    rng = derive_stream(8)
    for _ in range(20):
        theta = rng.standard_normal(30)
        q = float(rng.uniform(1.05, 1.95))
        assert weak_lq_norm(theta, q) <= strong_lq_norm(theta, q) + 1e-12
    with pytest.raises(ParameterError):
        strong_lq_norm([1.0], 0.0)


# ==========================================
# OBJETIVOS
# ==========================================

def test_power_law_target_certificates():
    target = make_power_law_target(1.5, 0.1, 1.0, 512)
    assert target.kind is TargetKind.POWER_LAW
    assert target.length == 512
    certificates = target.certificates
    assert certificates.weak_lq <= 1.0 + 1e-12
    assert certificates.besov <= 1.0 + 1e-12
    assert 0.99 <= max(certificates.weak_lq, certificates.besov) <= 1.0 + 1e-12
    assert np.all(np.diff(np.abs(target.coefficients)) <= 0)

    doubled = make_power_law_target(1.5, 0.1, 2.0, 512)
    np.testing.assert_allclose(doubled.coefficients, 2.0 * target.coefficients)


def test_power_law_rejects_bad_index():
    with pytest.raises(ParameterError, match=r"\(1, 2\)"):
        make_power_law_target(2.5, 0.1, 1.0, 16)
    with pytest.raises(ParameterError):
        make_power_law_target(1.5, 0.1, 1.0, 0)


def test_sparse_target(orthonormal8):
    target = make_sparse_target([0, 3], [2.0, -1.0], 8)
    np.testing.assert_array_equal(target.coefficients, [2.0, 0, 0, -1.0, 0, 0, 0, 0])
    np.testing.assert_allclose(orthonormal8.analyze(target.on_design(orthonormal8)), target.coefficients)
    np.testing.assert_array_equal(target.padded(4), [2.0, 0.0, 0.0, -1.0])
    with pytest.raises(ParameterError):
        make_sparse_target([8], [1.0], 8)
    with pytest.raises(ParameterError):
        make_sparse_target([0, 1], [1.0], 8)


def test_target_longer_than_dictionary(orthonormal8):
    target = make_sparse_target([9], [1.0], 12)
    with pytest.raises(ParameterError):
        target.on_design(orthonormal8)


def test_step_target():
    design = Design.grid(4)
    target = make_step_target(design, [0.3, 0.6], [1.0, -2.0])
    assert target.kind is TargetKind.CUSTOM
    np.testing.assert_allclose(target.values, [0.0, 0.0, 1.0, -1.0])
    with pytest.raises(ParameterError):
        make_step_target(design, [0.3], [])


# ==========================================
# REGÍMENES E HIPERCUBO
# ==========================================

def test_u_param():
    assert u_param(1.0, 0.25) == pytest.approx(1.0)
    assert u_param(1.5, 0.2) == pytest.approx(-0.25)


def test_rates_regime():
    check_rates_regime(1.5, 0.1, 1.0, 0.01)
    with pytest.raises(RegimeError) as exc:
        check_rates_regime(1.5, 0.1, 1.0, 0.5)
    assert exc.value.exit_code == 4
    with pytest.raises(ParameterError, match=r"\(1, 2\)"):
        check_rates_regime(2.5, 0.1, 1.0, 0.01)


def test_hypercube_regime():
    assert check_hypercube_regime(1.5, 0.1, 1.0, 0.01) == pytest.approx(1.0)
    with pytest.raises(RegimeError):
        check_hypercube_regime(1.5, 0.2, 1.0, 0.01)
    with pytest.raises(RegimeError):
        check_hypercube_regime(1.5, 0.1, 1.0, 0.5)


def test_hypercube_target():
    target = hypercube_target(1.5, 0.1, 1.0, 0.01, derive_stream(0, 1, 0))
    magnitude = 0.01 * math.sqrt(math.log(100.0))
    assert target.kind is TargetKind.HYPERCUBE
    assert target.extras["p"] == 8192
    assert target.extras["d"] == 256
    assert target.extras["M"] == pytest.approx(magnitude)
    assert np.count_nonzero(target.coefficients) == 256
    np.testing.assert_allclose(target.coefficients[target.coefficients != 0], magnitude)
    assert np.sum(np.abs(target.coefficients) ** 1.5) <= 1.0
    assert target.certificates.besov <= 1.0


def test_hypercube_vertices_depend_on_stream():
    first = hypercube_target(1.5, 0.1, 1.0, 0.01, derive_stream(0, 1, 0))
    second = hypercube_target(1.5, 0.1, 1.0, 0.01, derive_stream(0, 1, 1))
    again = hypercube_target(1.5, 0.1, 1.0, 0.01, derive_stream(0, 1, 0))
    np.testing.assert_array_equal(first.coefficients, again.coefficients)
    assert not np.array_equal(first.coefficients, second.coefficients)


# ==========================================
# COTAS DE TASA
# ==========================================

def test_interp_rate_bound_crossover():
    p, R, q, r = 64, 1.0, 1.5, 0.2
    lam = R * p ** (-2.0 * r / q)
    first = R ** q * lam ** (2.0 - q)
    assert interp_rate_bound(p, lam, R, q, r) == pytest.approx(first)
    second = (R * p ** (-r)) ** (2.0 * q / (2.0 - q)) * lam ** (4.0 * (1.0 - q) / (2.0 - q))
    assert first == pytest.approx(second)
    assert interp_rate_bound(p, 0.5, 0.0, q, r) == 0.0


@pytest.mark.parametrize(
    "p, eps, q, r, regime",
    [
        (64, 1.0, 1.5, 0.1, RateRegime.NOISE),
        (2, 1e-4, 1.5, 0.1, RateRegime.TRUNCATION),
        (8192, 0.1, 1.5, 0.1, RateRegime.INTERPOLATION),
    ],
)
def test_lasso_rate_regime(p, eps, q, r, regime):
    found, bound = lasso_rate_regime(p, eps, 1.0, q, r)
    assert found is regime
    assert bound > 0.0


def test_noise_regime_bound():
    level = math.sqrt(math.log(64)) + 1.0
    _, bound = lasso_rate_regime(64, 1.0, 1.0, 1.5, 0.1)
    assert bound == pytest.approx(level)


def test_selected_and_ridge_rate_bounds():
    assert selected_rate_bound(0.01, 1.0, 1.5) == pytest.approx((0.01 * math.sqrt(math.log(100.0))) ** 0.5)
    with pytest.raises(ParameterError):
        selected_rate_bound(1.0, 1.0, 1.5)


# ==========================================
# ACEPTACIÓN
# ==========================================

@pytest.mark.slow
def test_sandwich_on_random_pairs():
    for case in range(50):
        rng = derive_stream(77, case)
        f = rng.normal(0.0, 1.0, size=int(rng.integers(1, 33)))
        lam = float(rng.uniform(0.01, 4.0))
        check = k_sandwich_check(f, lam)
        assert check.passed, check
