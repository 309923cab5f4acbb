from fractions import Fraction

import pytest

from plucker_lab.combinatorics import GrassmannShape, IndexTuple
from plucker_lab.errors import ConfigError, ShapeError
from plucker_lab.linalg import RationalMatrix, all_index_tuples, embed, plucker
from plucker_lab.services.generation import (
    GeneratorConfig,
    all_plucker_nonnegative,
    collapse_arc,
    duplicated_row_point,
    gaussian_like_tp,
    is_tnn,
    is_tp,
    random_grassmann_point,
    random_tnn,
    tp_perturb,
)


def test_config_validation():
    with pytest.raises(ConfigError):
        GeneratorConfig(seed=0, n=3, m=3, bound=0)
    with pytest.raises(ConfigError):
        GeneratorConfig(seed=0, n=3, m=3, density=2)
    with pytest.raises(ConfigError):
        GeneratorConfig(seed=-1, n=3, m=3)
    with pytest.raises(ConfigError):
        GeneratorConfig(seed=0, n=0, m=3)


def test_config_from_json():
    config = GeneratorConfig.from_json({"seed": 4, "n": 3, "m": 2, "bound": "5/2", "density": "1"})
    assert config.bound == Fraction(5, 2)
    assert config.density == 1
    assert GeneratorConfig.from_json(config.to_json()) == config
    with pytest.raises(ConfigError):
        GeneratorConfig.from_json({"n": 3, "m": 2})


def test_random_tnn_is_deterministic():
    config = GeneratorConfig(seed=123, n=4, m=3)
    assert random_tnn(config) == random_tnn(config)
    assert random_tnn(config).rows == 4
    assert random_tnn(config).cols == 3


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (3, 3), (4, 3)])
def test_random_tnn_is_tnn(seed, n, m):
    assert is_tnn(random_tnn(GeneratorConfig(seed, n, m)))


def test_zero_density_gives_positive_diagonal():
    matrix = random_tnn(GeneratorConfig(seed=9, n=4, m=4, density=0))
    for i in range(1, 5):
        for j in range(1, 5):
            if i == j:
                assert matrix[i, j] > 0
            else:
                assert matrix[i, j] == 0


def test_gaussian_kernel():
    assert gaussian_like_tp(1).as_lists() == [[1]]
    assert gaussian_like_tp(2).as_lists() == [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]
    assert is_tp(gaussian_like_tp(3))
    assert is_tp(gaussian_like_tp(4, Fraction(1, 3)))
    with pytest.raises(ConfigError):
        gaussian_like_tp(3, Fraction(3, 2))
    with pytest.raises(ConfigError):
        gaussian_like_tp(3, 0)


def test_tnn_predicates():
    assert is_tnn(RationalMatrix.identity(3))
    assert not is_tp(RationalMatrix.identity(3))
    assert not is_tnn(RationalMatrix.from_rows([[0, 1], [1, 0]]))


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
def test_embedded_tnn_points_are_nonnegative(m, n):
    shape = GrassmannShape(m, n)
    for seed in range(5):
        point = random_grassmann_point(GeneratorConfig(seed, n, m))
        assert all_plucker_nonnegative(point, shape)
        assert all_plucker_nonnegative(tp_perturb(point, shape=shape), shape, strict=True)


def test_tp_perturb_checks_shape():
    point = random_grassmann_point(GeneratorConfig(0, 3, 2))
    with pytest.raises(ShapeError):
        tp_perturb(point, shape=GrassmannShape(2, 2))


def test_duplicated_row_kills_minors_through_both_rows():
    shape = GrassmannShape(2, 3)
    point = random_grassmann_point(GeneratorConfig(2, 3, 2), Fraction(1, 2))
    assert duplicated_row_point(point, 2, 2) == point
    doubled = duplicated_row_point(point, 2, 3)
    assert plucker(doubled, IndexTuple(shape, (2, 3))) == 0
    assert doubled.row(3) == point.row(2)


@pytest.mark.parametrize("a,b", [(2, 4), (4, 5), (5, 2), (6, 1)])
def test_collapse_arc_keeps_point_nonnegative(a, b):
    shape = GrassmannShape(3, 3)
    for seed in range(3):
        point = random_grassmann_point(GeneratorConfig(seed, 3, 3), Fraction(1, 2))
        collapsed = collapse_arc(point, a, b)
        assert all_plucker_nonnegative(collapsed, shape)
        assert collapsed.row(a) == point.row(a)


def test_collapse_arc_with_even_columns_flips_wrapped_rows():
    shape = GrassmannShape(2, 2)
    point = random_grassmann_point(GeneratorConfig(1, 2, 2), Fraction(1, 2))
    collapsed = collapse_arc(point, 4, 1)
    assert collapsed.row(1) == tuple(-x for x in point.row(4))
    assert all(plucker(collapsed, t) >= 0 for t in all_index_tuples(shape))


def test_random_grassmann_point_shape():
    point = random_grassmann_point(GeneratorConfig(0, 4, 2))
    assert (point.rows, point.cols) == (6, 2)
    top = point.submatrix(range(1, 5), range(1, 3))
    assert embed(top) == point


def test_collapse_arc_without_wrap_duplicates_rows():
    point = random_grassmann_point(GeneratorConfig(4, 3, 3), Fraction(1, 2))
    expected = duplicated_row_point(duplicated_row_point(point, 2, 3), 2, 4)
    assert collapse_arc(point, 2, 4) == expected
