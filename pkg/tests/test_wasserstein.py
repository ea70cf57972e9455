import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ttda.errors import DomainError
from ttda.homology.diagram import PersistenceDiagram
from ttda.wasserstein import augmented_cost_matrix, diagram_distance, optimal_matching

from oracles import brute_force, dyadic_diagram


def test_examples():
    assert diagram_distance([[0.0, 2.0]], []) == 1.0
    assert diagram_distance([[0.0, 2.0]], [[0.0, 2.0], [1.0, 1.2]]) == pytest.approx(0.1, abs=1e-15)
    assert diagram_distance([], []) == 0.0
    d = [[0.1, 0.7], [0.3, 0.35]]
    assert diagram_distance(d, d) == 0.0


def test_matching_pairs():
    m = optimal_matching([[0.0, 2.0]], [[0.0, 2.0]])
    assert m.pairs == [(0, 0)] and m.total_cost == 0.0
    m = optimal_matching([[0.0, 2.0]], [])
    assert m.pairs == [(0, None)] and m.total_cost == 1.0


def test_matching_covers_every_point(rng):
    for _ in range(20):
        p, q = dyadic_diagram(rng, 4), dyadic_diagram(rng, 3)
        m = optimal_matching(p, q)
        assert sorted(i for i, _ in m.pairs if i is not None) == list(range(4))
        assert sorted(j for _, j in m.pairs if j is not None) == list(range(3))
        assert math.fsum(m.costs) == m.total_cost


def test_infinite_rejected():
    with pytest.raises(DomainError, match="infinite"):
        diagram_distance([[0.0, math.inf]], [])


def test_mixed_dimension_needs_dim():
    d = PersistenceDiagram.from_pairs([(0.0, 1.0)], [(0.2, 0.6)])
    with pytest.raises(DomainError):
        diagram_distance(d, d)
    e = PersistenceDiagram.from_pairs([(0.0, 1.0)], [(0.2, 1.0)])
    assert diagram_distance(d, e, dim=1) == pytest.approx(0.4)
    assert diagram_distance(d, e, dim=0) == 0.0


def test_augmented_matrix_layout():
    C = augmented_cost_matrix(np.array([[0.0, 2.0]]), np.array([[0.0, 1.0]]))
    assert C[0, 0] == 1.0 and C[0, 1] == 1.0 and C[1, 0] == 0.5 and C[1, 1] == 0.0


def test_brute_force_agreement(rng):
    for _ in range(200):
        p = dyadic_diagram(rng, int(rng.integers(0, 7)))
        q = dyadic_diagram(rng, int(rng.integers(0, 7)))
        assert Fraction(diagram_distance(p, q)) == brute_force(p, q)


points = st.lists(
    st.tuples(st.floats(0, 5, allow_nan=False), st.floats(0, 3, allow_nan=False)).map(
        lambda t: (t[0], t[0] + t[1])
    ),
    max_size=6,
)


@given(points, points)
def test_symmetry(p, q):
    assert diagram_distance(p, q) == diagram_distance(q, p)


@given(points, points, points)
def test_triangle_inequality(p, q, r):
    assert diagram_distance(p, r) <= diagram_distance(p, q) + diagram_distance(q, r) + 1e-9


@given(points)
def test_identity(p):
    assert diagram_distance(p, list(reversed(p))) <= 1e-12


@given(points, st.floats(0, 5), st.floats(0, 2))
def test_adding_point_bounded(p, b, pers):
    base = diagram_distance(p, [])
    extra = diagram_distance(p + [(b, b + pers)], [])
    assert abs(extra - base) <= pers / 2 + 1e-12
    assert diagram_distance(p, p + [(b, b + pers)]) <= pers / 2 + 1e-12


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_homogeneity(rng, c):
    p, q = dyadic_diagram(rng, 5), dyadic_diagram(rng, 4)
    assert diagram_distance(p * c, q * c) == pytest.approx(c * diagram_distance(p, q), rel=1e-12)
