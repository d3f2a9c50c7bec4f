from __future__ import annotations

import random

import pytest

from domain.gf import field_new
from domain.modvec import (
    DimensionError,
    TVector,
    VectorCase,
    VectorOrbit,
    classify_vector,
    distinguished_vector,
    embed_scalar_matrix,
    identity_matrix,
    iter_i1_vectors,
    iter_vectors,
    parse_vector,
    permutation_matrix,
    random_invertible_tmatrix,
    random_vector,
    reduce_to_distinguished,
    same_orbit,
    tmatrix_inverse,
    tmatrix_is_invertible,
    tmatrix_mul,
    vector_times_matrix,
)
from domain.ternion import Ternion, TernionRing
from domain.verification import reduction_is_sound


def _ring(p: int = 2, k: int = 1) -> TernionRing:
    return TernionRing(field_new(p, k))


def test_parse_vector_literals() -> None:
    ring = _ring(3)
    vector = parse_vector(ring, "0,2,1;0,1,2")
    assert vector == TVector((Ternion(0, 2, 1), Ternion(0, 1, 2)))
    assert str(vector) == "0,2,1;0,1,2"
    assert vector.n == 1


@pytest.mark.parametrize("text", ["0,1;0,0,0", "0,1,0", "0,1,0;;0,0,0", "0,3,0;0,0,0", "x"])
def test_malformed_vector_literals(text: str) -> None:
    with pytest.raises(DimensionError):
        parse_vector(_ring(3), text)


def test_vector_literal_length_must_match_n() -> None:
    with pytest.raises(DimensionError):
        parse_vector(_ring(), "0,1,0;0,0,0", n=2)


def test_classification_examples() -> None:
    ring = _ring()
    assert classify_vector(ring, parse_vector(ring, "0,1,0;0,0,0;0,0,0")) == VectorOrbit(VectorCase.CASE2)
    assert classify_vector(ring, parse_vector(ring, "0,1,1;0,0,1")) == VectorOrbit(VectorCase.CASE4)
    assert classify_vector(ring, parse_vector(ring, "1,1,0;0,1,0")) == VectorOrbit(VectorCase.CASE5)
    assert classify_vector(ring, parse_vector(ring, "1,0,0;0,0,1")) == VectorOrbit(VectorCase.CASE6)
    ring3 = _ring(3)
    assert classify_vector(ring3, parse_vector(ring3, "0,2,1;0,1,2")) == VectorOrbit(VectorCase.CASE3, 2)


def test_case3_orbit_carries_b() -> None:
    with pytest.raises(DimensionError):
        VectorOrbit(VectorCase.CASE3)
    with pytest.raises(DimensionError):
        VectorOrbit(VectorCase.CASE2, 1)
    assert str(VectorOrbit(VectorCase.CASE3, 1)) == "Case3(b=1)"


def test_case4_reduction_certificate() -> None:
    ring = _ring()
    vector = parse_vector(ring, "0,1,1;0,0,1")
    reduction = reduce_to_distinguished(ring, vector)
    assert reduction.vector == TVector((Ternion(0, 0, 1), Ternion(0, 1, 0)))
    assert vector_times_matrix(ring, vector, reduction.matrix) == reduction.vector
    assert tmatrix_is_invertible(ring, reduction.matrix)


@pytest.mark.parametrize(("p", "n"), [(2, 1), (3, 1), (2, 2)])
def test_reduction_is_sound_exhaustively(p: int, n: int) -> None:
    ring = _ring(p)
    for vector in iter_vectors(ring, n):
        assert reduction_is_sound(ring, vector), str(vector)


def test_reduction_is_sound_on_random_vectors_over_gf4() -> None:
    ring = _ring(2, 2)
    rng = random.Random(11)
    for _ in range(300):
        assert reduction_is_sound(ring, random_vector(ring, 2, rng))


def test_case6_without_a_unit_coordinate() -> None:
    ring = _ring(3)
    vector = parse_vector(ring, "2,1,0;0,0,0;0,2,1")
    reduction = reduce_to_distinguished(ring, vector)
    assert reduction.orbit.case is VectorCase.CASE6
    assert reduction.vector == distinguished_vector(ring, reduction.orbit, 2)


def test_orbits_are_invariant_under_invertible_matrices() -> None:
    ring = _ring(3)
    rng = random.Random(7)
    for _ in range(50):
        vector = random_vector(ring, 2, rng)
        matrix = random_invertible_tmatrix(ring, 3, rng)
        assert same_orbit(ring, vector, vector_times_matrix(ring, vector, matrix))


def test_same_orbit_requires_equal_lengths() -> None:
    ring = _ring()
    with pytest.raises(DimensionError):
        same_orbit(ring, parse_vector(ring, "0,0,0;0,0,0"), parse_vector(ring, "0,0,0;0,0,0;0,0,0"))


def test_matrix_inverse() -> None:
    ring = _ring(3)
    rng = random.Random(3)
    for _ in range(20):
        matrix = random_invertible_tmatrix(ring, 3, rng)
        assert tmatrix_mul(ring, matrix, tmatrix_inverse(ring, matrix)) == identity_matrix(ring, 3)


def test_singular_matrix_has_no_inverse() -> None:
    ring = _ring()
    singular = embed_scalar_matrix(ring, [[1, 1], [1, 1]])
    assert not tmatrix_is_invertible(ring, singular)
    with pytest.raises(DimensionError):
        tmatrix_inverse(ring, singular)


def test_permutation_matrix_moves_coordinates() -> None:
    ring = _ring(3)
    vector = parse_vector(ring, "1,0,0;0,1,0;0,0,1")
    moved = vector_times_matrix(ring, vector, permutation_matrix(ring, [2, 0, 1]))
    assert moved == parse_vector(ring, "0,1,0;0,0,1;1,0,0")
    with pytest.raises(DimensionError):
        permutation_matrix(ring, [0, 0, 1])


def test_vector_iteration_is_ordered_and_sliceable() -> None:
    ring = _ring()
    vectors = list(iter_vectors(ring, 1))
    assert len(vectors) == 64
    assert vectors == sorted(vectors)
    assert list(iter_vectors(ring, 1, 10, 20)) == vectors[10:20]
    assert len(list(iter_i1_vectors(ring, 2))) == 2 ** 6


def test_vectors_need_two_coordinates() -> None:
    with pytest.raises(DimensionError):
        TVector((Ternion(0, 0, 0),))
