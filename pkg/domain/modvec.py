from __future__ import annotations

import enum
import itertools
import logging
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from domain.ternion import (
    IdealKind,
    RightIdealClass,
    Ternion,
    TernionError,
    TernionRing,
    right_ideal_of,
)

logger = logging.getLogger(__name__)


class DimensionError(ValueError):
    pass


class VectorCase(enum.IntEnum):
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5
    CASE6 = 6


@dataclass(frozen=True, order=True)
class TVector:
    coords: tuple[Ternion, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 2:
            raise DimensionError("Vectors of R^(n+1) need n >= 1, i.e. at least two coordinates")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __len__(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return ";".join(str(t) for t in self.coords)

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.coords)

    def in_rad(self) -> bool:
        return all(t.in_rad() for t in self.coords)

    def in_i1(self) -> bool:
        return all(t.in_i1() for t in self.coords)


@dataclass(frozen=True, order=True)
class VectorOrbit:
    case: VectorCase
    b: int | None = None

    def __post_init__(self) -> None:
        if (self.case is VectorCase.CASE3) != (self.b is not None):
            raise DimensionError("Only Case3 orbits carry the parameter b")

    def __str__(self) -> str:
        if self.case is VectorCase.CASE3:
            return f"Case3(b={self.b})"
        return f"Case{int(self.case)}"


@dataclass(frozen=True)
class TMatrix:
    rows: tuple[tuple[Ternion, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.rows)
        if any(len(row) != size for row in self.rows):
            raise DimensionError("Ternion matrices must be square")

    @property
    def size(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Reduction:
    orbit: VectorOrbit
    matrix: TMatrix
    vector: TVector


_CASE_BY_KIND = {
    IdealKind.ZERO: VectorCase.CASE1,
    IdealKind.RAD: VectorCase.CASE2,
    IdealKind.RATIO: VectorCase.CASE3,
    IdealKind.I1: VectorCase.CASE4,
    IdealKind.I2: VectorCase.CASE5,
    IdealKind.FULL: VectorCase.CASE6,
}


def orbit_from_ideal(cls: RightIdealClass) -> VectorOrbit:
    return VectorOrbit(_CASE_BY_KIND[cls.kind], cls.b)


def zero_vector(ring: TernionRing, n: int) -> TVector:
    _check_n(n)
    return TVector((ring.zero,) * (n + 1))


def parse_vector(ring: TernionRing, text: str, n: int | None = None) -> TVector:
    parts = text.strip().split(";")
    try:
        coords = [ring.parse(part) for part in parts]
    except TernionError as exc:
        raise DimensionError(f"Malformed vector literal {text!r}: {exc}") from exc
    if n is not None and len(coords) != n + 1:
        raise DimensionError(f"Vector literal {text!r} has {len(coords)} coordinates, expected {n + 1}")
    return TVector(tuple(coords))


def _check_n(n: int) -> None:
    if n < 1:
        raise DimensionError(f"Dimension n must be at least 1, got {n}")


def vector_count(ring: TernionRing, n: int) -> int:
    return ring.order ** (n + 1)


def i1_vector_count(ring: TernionRing, n: int) -> int:
    return ring.field.q ** (2 * (n + 1))


def iter_vectors(ring: TernionRing, n: int, start: int = 0, stop: int | None = None) -> Iterator[TVector]:
    """All of R^(n+1) in lexicographic order of the serialization, optionally an index slice."""
    _check_n(n)
    product = itertools.product(ring.elements(), repeat=n + 1)
    for coords in itertools.islice(product, start, stop):
        yield TVector(coords)


def iter_i1_vectors(ring: TernionRing, n: int, start: int = 0, stop: int | None = None) -> Iterator[TVector]:
    """Vectors with every coordinate in I1, the set holding Cases 1-4."""
    _check_n(n)
    product = itertools.product(ring.i1_elements(), repeat=n + 1)
    for coords in itertools.islice(product, start, stop):
        yield TVector(coords)


def classify_vector(ring: TernionRing, vector: TVector) -> VectorOrbit:
    return orbit_from_ideal(right_ideal_of(ring, vector.coords))


def distinguished_vector(ring: TernionRing, orbit: VectorOrbit, n: int) -> TVector:
    _check_n(n)
    zero = ring.zero
    rest = (zero,) * (n - 1)
    if orbit.case is VectorCase.CASE1:
        return zero_vector(ring, n)
    if orbit.case is VectorCase.CASE2:
        return TVector((Ternion(0, 1, 0), zero) + rest)
    if orbit.case is VectorCase.CASE3:
        assert orbit.b is not None
        return TVector((ring.validate(Ternion(0, orbit.b, 1)), zero) + rest)
    if orbit.case is VectorCase.CASE4:
        return TVector((Ternion(0, 0, 1), Ternion(0, 1, 0)) + rest)
    if orbit.case is VectorCase.CASE5:
        return TVector((Ternion(1, 0, 0), zero) + rest)
    return TVector((ring.one, zero) + rest)


def identity_matrix(ring: TernionRing, size: int) -> TMatrix:
    return TMatrix(tuple(tuple(ring.one if i == j else ring.zero for j in range(size)) for i in range(size)))


def swap_matrix(ring: TernionRing, size: int, a: int, b: int) -> TMatrix:
    def entry(i: int, j: int) -> Ternion:
        source = b if i == a else a if i == b else i
        return ring.one if j == source else ring.zero

    return TMatrix(tuple(tuple(entry(i, j) for j in range(size)) for i in range(size)))


def permutation_matrix(ring: TernionRing, perm: Sequence[int]) -> TMatrix:
    """Matrix P with (X*P)[perm[i]] = X[i]."""
    size = len(perm)
    if sorted(perm) != list(range(size)):
        raise DimensionError(f"{list(perm)} is not a permutation")
    return TMatrix(tuple(tuple(ring.one if perm[i] == j else ring.zero for j in range(size)) for i in range(size)))


def diag_scalar_matrix(ring: TernionRing, size: int, index: int, c: int) -> TMatrix:
    return TMatrix(
        tuple(
            tuple((ring.scalar(c) if i == index else ring.one) if i == j else ring.zero for j in range(size))
            for i in range(size)
        )
    )


def row_matrix(ring: TernionRing, size: int, row_index: int, entries: Sequence[Ternion]) -> TMatrix:
    """Identity matrix with one row replaced."""
    if len(entries) != size:
        raise DimensionError("Replacement row has the wrong length")
    identity = identity_matrix(ring, size).rows
    return TMatrix(tuple(tuple(entries) if i == row_index else identity[i] for i in range(size)))


def embed_scalar_matrix(ring: TernionRing, rows: Sequence[Sequence[int]]) -> TMatrix:
    """The matrix (a_ij * I) over R of a matrix (a_ij) over F."""
    return TMatrix(tuple(tuple(ring.validate(ring.scalar(a)) for a in row) for row in rows))


def tmatrix_mul(ring: TernionRing, a: TMatrix, b: TMatrix) -> TMatrix:
    if a.size != b.size:
        raise DimensionError("Matrix sizes differ")
    size = a.size
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = ring.zero
            for k in range(size):
                acc = ring.add(acc, ring.mul(a.rows[i][k], b.rows[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return TMatrix(tuple(rows))


def vector_times_matrix(ring: TernionRing, vector: TVector, matrix: TMatrix) -> TVector:
    if len(vector) != matrix.size:
        raise DimensionError(f"Vector of length {len(vector)} cannot multiply a {matrix.size}x{matrix.size} matrix")
    coords = []
    for j in range(matrix.size):
        acc = ring.zero
        for i, coord in enumerate(vector.coords):
            acc = ring.add(acc, ring.mul(coord, matrix.rows[i][j]))
        coords.append(acc)
    return TVector(tuple(coords))


def left_multiply(ring: TernionRing, alpha: Ternion, vector: TVector) -> TVector:
    return TVector(tuple(ring.mul(alpha, t) for t in vector.coords))


def associated_field_matrix(matrix: TMatrix) -> list[list[int]]:
    """The 2m x 2m matrix over F made of the upper-triangular 2x2 blocks."""
    size = matrix.size
    out = [[0] * (2 * size) for _ in range(2 * size)]
    for i, row in enumerate(matrix.rows):
        for j, t in enumerate(row):
            out[2 * i][2 * j] = t.x
            out[2 * i][2 * j + 1] = t.y
            out[2 * i + 1][2 * j + 1] = t.z
    return out


def tmatrix_determinant(ring: TernionRing, matrix: TMatrix) -> int:
    return int(np.linalg.det(ring.field.matrix(associated_field_matrix(matrix))))


def tmatrix_is_invertible(ring: TernionRing, matrix: TMatrix) -> bool:
    return tmatrix_determinant(ring, matrix) != 0


def tmatrix_inverse(ring: TernionRing, matrix: TMatrix) -> TMatrix:
    if not tmatrix_is_invertible(ring, matrix):
        raise DimensionError("Matrix is not invertible over R")
    inverse = np.linalg.inv(ring.field.matrix(associated_field_matrix(matrix))).view(np.ndarray).astype(int).tolist()
    size = matrix.size
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if inverse[2 * i + 1][2 * j] != 0:
                raise DimensionError("Inverse lost the upper-triangular block structure")
            row.append(Ternion(inverse[2 * i][2 * j], inverse[2 * i][2 * j + 1], inverse[2 * i + 1][2 * j + 1]))
        rows.append(tuple(row))
    return TMatrix(tuple(rows))


def random_ternion(ring: TernionRing, rng: random.Random) -> Ternion:
    q = ring.field.q
    return Ternion(rng.randrange(q), rng.randrange(q), rng.randrange(q))


def random_vector(ring: TernionRing, n: int, rng: random.Random) -> TVector:
    return TVector(tuple(random_ternion(ring, rng) for _ in range(n + 1)))


def random_invertible_tmatrix(ring: TernionRing, size: int, rng: random.Random) -> TMatrix:
    while True:
        candidate = TMatrix(tuple(tuple(random_ternion(ring, rng) for _ in range(size)) for _ in range(size)))
        if tmatrix_is_invertible(ring, candidate):
            return candidate


def same_orbit(ring: TernionRing, a: TVector, b: TVector) -> bool:
    if len(a) != len(b):
        raise DimensionError(f"Vectors live in R^{len(a)} and R^{len(b)}")
    return classify_vector(ring, a) == classify_vector(ring, b)


def _first(vector: TVector, predicate, start: int = 0) -> int:
    return next(i for i in range(start, len(vector)) if predicate(vector.coords[i]))


class _Reducer:
    def __init__(self, ring: TernionRing, vector: TVector) -> None:
        self.ring = ring
        self.size = len(vector)
        self.current = vector
        self.matrix = identity_matrix(ring, self.size)

    def apply(self, label: str, factor: TMatrix) -> None:
        self.current = vector_times_matrix(self.ring, self.current, factor)
        self.matrix = tmatrix_mul(self.ring, self.matrix, factor)
        logger.debug("Reduction step %s -> %s", label, self.current)

    def swap(self, a: int, b: int) -> None:
        if a != b:
            self.apply(f"swap({a},{b})", swap_matrix(self.ring, self.size, a, b))

    def normalize(self, w: int) -> None:
        if w != 1:
            self.apply(f"scale({w}^-1)", diag_scalar_matrix(self.ring, self.size, 0, self.ring.field.inv(w)))

    def clear_with_scalars(self, label: str, ws: Sequence[int]) -> None:
        f = self.ring.field
        entries = [self.ring.one] + [self.ring.scalar(f.neg(w)) for w in ws]
        self.apply(label, row_matrix(self.ring, self.size, 0, entries))


def reduce_to_distinguished(ring: TernionRing, vector: TVector) -> Reduction:
    """Find an invertible A with X*A equal to the distinguished vector of the orbit of X."""
    f = ring.field
    orbit = classify_vector(ring, vector)
    r = _Reducer(ring, vector)
    case = orbit.case

    if case is VectorCase.CASE2:
        r.swap(0, _first(r.current, lambda t: t.y != 0))
        r.normalize(r.current.coords[0].y)
        r.clear_with_scalars("clear", [t.y for t in r.current.coords[1:]])
    elif case is VectorCase.CASE3:
        r.swap(0, _first(r.current, lambda t: t.z != 0))
        r.normalize(r.current.coords[0].z)
        r.clear_with_scalars("clear", [t.z for t in r.current.coords[1:]])
    elif case is VectorCase.CASE4:
        r.swap(0, _first(r.current, lambda t: t.z != 0))
        r.normalize(r.current.coords[0].z)
        r.clear_with_scalars("clear z", [t.z for t in r.current.coords[1:]])
        # now X = ((0, y0, 1), (0, -d1, 0), ..., (0, -dn, 0)) with some d_i != 0
        r.swap(1, _first(r.current, lambda t: t.y != 0, start=1))
        y0 = r.current.coords[0].y
        d = [f.neg(t.y) for t in r.current.coords]
        d1_inv = f.inv(d[1])
        entries = [ring.scalar(f.mul(y0, d1_inv)), ring.scalar(f.neg(d1_inv))]
        entries += [ring.scalar(f.neg(f.mul(d[j], d1_inv))) for j in range(2, r.size)]
        r.apply("clear y", row_matrix(ring, r.size, 1, entries))
    elif case is VectorCase.CASE5:
        r.swap(0, _first(r.current, lambda t: t.x != 0))
        r.normalize(r.current.coords[0].x)
        head = r.current.coords[0]
        entries = [Ternion(1, f.neg(head.y), 1)] + [ring.neg(t) for t in r.current.coords[1:]]
        r.apply("clear", row_matrix(ring, r.size, 0, entries))
    elif case is VectorCase.CASE6:
        if any(t.is_unit() for t in r.current.coords):
            r.swap(0, _first(r.current, lambda t: t.is_unit()))
        else:
            r.swap(0, _first(r.current, lambda t: t.x != 0))
            r.swap(1, _first(r.current, lambda t: t.z != 0, start=1))
            entries = [ring.one, ring.one] + [ring.zero] * (r.size - 2)
            r.apply("make unit", row_matrix(ring, r.size, 1, entries))
        head_inv = ring.inv(r.current.coords[0])
        entries = [head_inv] + [ring.neg(ring.mul(head_inv, t)) for t in r.current.coords[1:]]
        r.apply("clear", row_matrix(ring, r.size, 0, entries))

    return Reduction(orbit=orbit, matrix=r.matrix, vector=r.current)
