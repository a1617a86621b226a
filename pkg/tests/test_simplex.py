import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ditrace.errors import DitraceError
from ditrace.simplex import (
    TOLERANCE,
    SimplexPoint,
    degeneracy_map,
    face_map,
    random_simplex_point,
)
from ditrace.verify import check_simplicial_identities


def test_point_invariants():
    SimplexPoint((0.25, 0.75))
    with pytest.raises(DitraceError):
        SimplexPoint((0.5, 0.6))
    with pytest.raises(DitraceError):
        SimplexPoint((-0.1, 1.1))
    with pytest.raises(DitraceError):
        SimplexPoint(())


def test_face_inserts_zero():
    assert face_map(0, SimplexPoint((1.0,))).coords == (0.0, 1.0)
    assert face_map(2, SimplexPoint((0.5, 0.5))).coords == (0.5, 0.5, 0.0)


def test_degeneracy_merges_neighbours():
    assert degeneracy_map(0, SimplexPoint((0.3, 0.7))).coords == (1.0,)
    assert degeneracy_map(1, SimplexPoint((0.2, 0.3, 0.5))).coords == (0.2, 0.8)


def test_index_bounds():
    x = SimplexPoint((0.5, 0.5))
    with pytest.raises(DitraceError):
        face_map(3, x)
    with pytest.raises(DitraceError):
        face_map(-1, x)
    with pytest.raises(DitraceError):
        degeneracy_map(1, x)


def test_degeneracy_after_matching_face_is_identity():
    rng = random.Random(3)
    for n in range(1, 5):
        for j in range(n):
            x = random_simplex_point(rng, n - 1)
            for k in (j, j + 1):
                y = degeneracy_map(j, face_map(k, x))
                assert x.distance(y) <= TOLERANCE


@given(st.integers(0, 4), st.data())
def test_faces_preserve_the_simplex(n, data):
    coords = data.draw(st.lists(st.floats(0.01, 1.0), min_size=n + 1,
                                max_size=n + 1))
    total = sum(coords)
    normalized = [c / total for c in coords]
    normalized[-1] = 1.0 - sum(normalized[:-1])
    x = SimplexPoint(tuple(normalized))
    k = data.draw(st.integers(0, n + 1))
    y = face_map(k, x)
    assert y.dimension == n + 1
    assert abs(sum(y.coords) - 1.0) <= TOLERANCE


def test_identity_families_hold_numerically():
    result = check_simplicial_identities(seed=5, points=50, n_max=5)
    assert result.ok, result.detail
