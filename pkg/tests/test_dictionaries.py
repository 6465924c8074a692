import math

import numpy as np
import pytest

from dyadic_lasso.dictionaries import (
    Dictionary,
    DictionaryFamily,
    dyadic_levels,
    enumerate_heaviside,
    heaviside_patterns,
    make_dictionary,
    make_fourier_grid,
    make_gaussian_design,
    make_haar_grid,
    make_orthonormal_sequence,
    normalize,
    truncate,
)
from dyadic_lasso.errors import (
    DegenerateDictionaryError,
    DimensionError,
    ParameterError,
    UnsupportedDimensionError,
)
from dyadic_lasso.geometry import Design, derive_stream, empirical_inner


# ==========================================
# NORMALIZACIÓN Y TRUNCACIÓN
# ==========================================

def test_normalize_scales_to_unit_norm():
    dictionary = normalize(Dictionary(np.array([[2.0], [2.0]]), Design.grid(2)))
    np.testing.assert_allclose(dictionary.matrix[:, 0], [1.0, 1.0])
    assert dictionary.normalized


def test_normalize_is_idempotent(haar16):
    again = normalize(haar16)
    np.testing.assert_allclose(again.matrix, haar16.matrix)


def test_zero_column_is_degenerate():
    raw = Dictionary(np.array([[1.0, 0.0], [1.0, 0.0]]), Design.grid(2))
    with pytest.raises(DegenerateDictionaryError) as exc:
        normalize(raw)
    assert exc.value.index == 1
    assert exc.value.exit_code == 2


def test_matrix_must_match_design():
    with pytest.raises(DimensionError):
        Dictionary(np.ones((3, 2)), Design.grid(2))


def test_truncate(haar16):
    assert truncate(haar16, haar16.p) is haar16
    single = truncate(haar16, 1)
    assert single.p == 1
    np.testing.assert_array_equal(single.column(0), haar16.column(0))
    np.testing.assert_array_equal(truncate(truncate(haar16, 8), 4).matrix, truncate(haar16, 4).matrix)
    with pytest.raises(ParameterError):
        truncate(haar16, 17)


def test_truncated_gram_is_leading_block(gaussian_dictionary):
    full = gaussian_dictionary.gram
    for p in (1, 5, 16, 24):
        np.testing.assert_allclose(truncate(gaussian_dictionary, p).gram, full[:p, :p], rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize(
    "p_max, expected",
    [(8, (1, 2, 4, 8)), (1, (1,)), (10, (1, 2, 4, 8, 10))],
)
def test_dyadic_levels(p_max, expected):
    levels = dyadic_levels(p_max)
    assert levels.levels == expected
    assert levels.p_max == p_max
    assert len(levels) == len(expected)


def test_dyadic_levels_reject_zero():
    with pytest.raises(ParameterError):
        dyadic_levels(0)


def test_synthesize_and_analyze(orthonormal8):
    theta = np.arange(8, dtype=float)
    y = orthonormal8.synthesize(theta)
    np.testing.assert_allclose(orthonormal8.analyze(y), theta)
    with pytest.raises(DimensionError):
        orthonormal8.synthesize(np.ones(3))


# ==========================================
# FAMILIAS
# ==========================================

def test_orthonormal_sequence():
    np.testing.assert_allclose(make_orthonormal_sequence(2).gram, np.eye(2))
    five = make_orthonormal_sequence(5)
    np.testing.assert_allclose(five.column_norms, np.ones(5))
    assert empirical_inner(five.column(0), five.column(1), five.design) == 0.0


def test_haar_is_orthonormal():
    haar = make_haar_grid(4)
    assert haar.p == 4
    np.testing.assert_allclose(haar.gram, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(make_haar_grid(32).gram, np.eye(32), atol=1e-12)


def test_haar_needs_power_of_two():
    with pytest.raises(ParameterError):
        make_haar_grid(6)


def test_fourier_columns():
    fourier = make_fourier_grid(8, 5)
    assert fourier.p == 5
    np.testing.assert_allclose(fourier.column_norms, np.ones(5))
    np.testing.assert_allclose(fourier.gram, np.eye(5), atol=1e-12)


def test_gaussian_design_is_reproducible():
    first = make_gaussian_design(50, 100, derive_stream(3))
    second = make_gaussian_design(50, 100, derive_stream(3))
    np.testing.assert_array_equal(first.matrix, second.matrix)
    np.testing.assert_allclose(first.column_norms, np.ones(100))


def test_make_dictionary_dispatch(rng):
    assert make_dictionary(DictionaryFamily.ORTHONORMAL, 16, 4).p == 4
    assert make_dictionary("haar", 16, 8).p == 8
    assert make_dictionary(DictionaryFamily.FOURIER, 16).p == 16
    assert make_dictionary(DictionaryFamily.GAUSSIAN, 20, 10, rng=rng).p == 10


def test_make_dictionary_requirements():
    with pytest.raises(ParameterError):
        make_dictionary(DictionaryFamily.GAUSSIAN, 20, 10)
    with pytest.raises(ParameterError):
        make_dictionary(DictionaryFamily.HEAVISIDE, 20)
    with pytest.raises(ParameterError):
        make_dictionary(DictionaryFamily.CUSTOM, 20)


def test_make_dictionary_caps_heaviside():
    design = Design.grid(5)
    dictionary = make_dictionary(DictionaryFamily.HEAVISIDE, 5, 1000, design=design)
    assert dictionary.p == enumerate_heaviside(design).p


# ==========================================
# HEAVISIDE
# ==========================================

def _pattern_set(matrix):
    return {tuple(int(v) for v in column) for column in matrix.T}


def test_heaviside_hand_enumeration():
    patterns = heaviside_patterns(Design(np.array([0.1, 0.5, 0.9])))
    expected = {(1, 1, 1), (0, 1, 1), (0, 0, 1), (1, 0, 0), (1, 1, 0)}
    assert _pattern_set(patterns) == expected
    assert patterns.shape[1] == 5 <= (3 + 1) ** 2


def test_heaviside_single_point():
    patterns = heaviside_patterns(Design(np.array([0.3])))
    assert _pattern_set(patterns) == {(1,)}


def test_heaviside_count_in_one_dimension(rng):
    n = 20
    design = Design.uniform(n, 1, rng)
    dictionary = enumerate_heaviside(design)
    assert dictionary.p <= 2 * n <= (n + 1) ** 2
    np.testing.assert_allclose(dictionary.column_norms, np.ones(dictionary.p))


def test_heaviside_two_dimensions(rng):
    design = Design.uniform(8, 2, rng)
    patterns = heaviside_patterns(design)
    assert patterns.shape[1] <= (8 + 1) ** 3
    assert len(_pattern_set(patterns)) == patterns.shape[1]
    assert np.all(patterns.sum(axis=0) > 0)
    # Los semiplanos que aíslan cada punto son realizables
    singletons = {column for column in _pattern_set(patterns) if sum(column) == 1}
    assert len(singletons) >= 3


def test_heaviside_rejects_three_dimensions(rng):
    with pytest.raises(UnsupportedDimensionError):
        heaviside_patterns(Design.uniform(5, 3, rng))


def test_heaviside_bound_formula():
    n = 10
    design = Design.grid(n)
    assert enumerate_heaviside(design).p <= (n + 1) ** 2
    assert math.isclose(enumerate_heaviside(design).p, 2 * n - 1)
