import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ttda.embed import (
    EmbeddingConfig,
    PointCloud,
    delay_embed,
    delay_from_period,
    distance_matrix,
    enclosing_radius,
    parse_fraction,
)
from ttda.errors import ConfigError, EmbeddingError
from ttda.signal import Signal


def test_embed_small():
    pc = delay_embed(np.array([0.0, 1, 2, 3, 4]), EmbeddingConfig(2, 2))
    assert pc.points.tolist() == [[0, 2], [1, 3], [2, 4]]
    assert pc.dimension == 2


def test_embed_constant():
    pc = delay_embed(np.full(30, 0.7), EmbeddingConfig(5, 3))
    assert len(pc) == 20
    assert np.all(pc.points == 0.7)


def test_sine_quarter_period_circle():
    x = np.sin(2 * np.pi * np.arange(400) / 320)
    pc = delay_embed(Signal(x, 48000.0), EmbeddingConfig(80, 2))
    r = np.hypot(pc.points[:, 0], pc.points[:, 1])
    assert np.max(np.abs(r - 1)) < 1e-9


def test_full_period_delay_on_diagonal():
    x = np.sin(2 * np.pi * np.arange(700) / 320) + 0.3 * np.sin(6 * np.pi * np.arange(700) / 320)
    pc = delay_embed(x, EmbeddingConfig(320, 2))
    assert np.max(np.abs(pc.points[:, 0] - pc.points[:, 1])) < 1e-9


def test_embed_too_long():
    with pytest.raises(EmbeddingError) as ei:
        delay_embed(np.zeros(10), EmbeddingConfig(10, 2))
    assert ei.value.max_tau == 9


def test_config_bounds():
    with pytest.raises(ConfigError):
        EmbeddingConfig(0, 2)
    with pytest.raises(ConfigError):
        EmbeddingConfig(1, 1)
    assert EmbeddingConfig(6, 2).delay_seconds(48000.0) == pytest.approx(0.125e-3)


@given(st.integers(2, 200), st.integers(1, 60), st.integers(2, 4))
def test_point_count_law(n, tau, d):
    x = np.arange(n, dtype=float)
    if (d - 1) * tau >= n:
        with pytest.raises(EmbeddingError):
            delay_embed(x, EmbeddingConfig(tau, d))
        return
    pc = delay_embed(x, EmbeddingConfig(tau, d))
    assert len(pc) == n - (d - 1) * tau
    assert np.array_equal(pc.points[:, -1], x[(d - 1) * tau :])


def test_distance_matrix_basics():
    assert distance_matrix(PointCloud(np.array([[0.0, 0], [3, 4]]))).values[0, 1] == 5.0
    single = distance_matrix(PointCloud(np.array([[1.0, 2.0]])))
    assert single.values.shape == (1, 1) and single.values[0, 0] == 0


def test_distance_matrix_recompute(rng):
    pts = rng.standard_normal((10, 2))
    D = distance_matrix(PointCloud(pts)).values
    oracle = np.array([[math.dist(p, q) for q in pts] for p in pts])
    assert np.max(np.abs(D - oracle)) < 1e-12
    assert np.array_equal(D, D.T) and np.all(np.diag(D) == 0)


@given(st.integers(3, 25), st.integers(0, 2**31 - 1))
def test_triangle_inequality(n, seed):
    D = distance_matrix(PointCloud(np.random.default_rng(seed).standard_normal((n, 2)))).values
    # D[i, j] <= D[i, k] + D[k, j], indexed (i, j, k)
    assert np.all(D[:, :, None] <= D[:, None, :] + D.T[None, :, :] + 1e-9)


def test_enclosing_radius():
    square = PointCloud(np.array([[0.0, 0], [1, 0], [0, 1], [1, 1]]))
    assert enclosing_radius(distance_matrix(square)) == pytest.approx(math.sqrt(2))
    assert enclosing_radius(distance_matrix(PointCloud(np.array([[0.0], [1.0]])))) == 1.0
    assert enclosing_radius(distance_matrix(PointCloud(np.array([[5.0, 5.0]])))) == 0.0


def test_delay_from_period():
    assert delay_from_period(150.0, Fraction(1, 2), 48000.0) == 160
    # 0.25 * 16000 / 261.6 = 15.29
    assert delay_from_period(261.6, Fraction(1, 4), 16000.0) == 15
    assert delay_from_period(261.6, "1/2", 16000.0) == 31
    with pytest.raises(ConfigError, match="rounds to 0"):
        delay_from_period(150.0, Fraction(1, 1000), 48000.0)


def test_delay_rounds_half_up():
    # exact half: 0.5 * 3 / 1 = 1.5 samples
    assert delay_from_period(1.0, Fraction(1, 2), 3.0) == 2
    assert delay_from_period(2.0, Fraction(1, 2), 10.0) == 3


def test_parse_fraction():
    assert parse_fraction("3/4") == Fraction(3, 4)
    assert parse_fraction(Fraction(1, 8)) == Fraction(1, 8)
    with pytest.raises(ConfigError):
        parse_fraction("x/4")
