from __future__ import annotations

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from domain.gf import FiniteField
from domain.limits import DEFAULT_LIMITS, Limits
from domain.modvec import (
    DimensionError,
    TVector,
    embed_scalar_matrix,
    random_invertible_tmatrix,
    vector_times_matrix,
)
from domain.submod import CyclicSubmodule, enumerate_nfcs, enumerate_unimodular_submodules, submodule_elements
from domain.ternion import Ternion, TernionRing

logger = logging.getLogger(__name__)


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RadVector:
    coords: tuple[int, ...]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True, order=True)
class PGSubspace:
    """A subspace of F^(n+1) held by its reduced row-echelon basis."""

    ambient: int
    basis: tuple[RadVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def projective_dimension(self) -> int:
        return self.rank - 1

    def __str__(self) -> str:
        return "<" + " | ".join(str(v) for v in self.basis) + ">"


def rad_coordinates(vector: TVector) -> RadVector:
    """The coordinate map ((0,y0,0), ..., (0,yn,0)) -> (y0, ..., yn)."""
    if not vector.in_rad():
        raise DimensionError(f"{vector} does not lie in (rad R)^(n+1)")
    return RadVector(tuple(t.y for t in vector.coords))


def rad_vector_to_tvector(vector: RadVector) -> TVector:
    return TVector(tuple(Ternion(0, y, 0) for y in vector.coords))


def echelon(field: FiniteField, ambient: int, vectors: Iterable[RadVector]) -> PGSubspace:
    rows = [list(v.coords) for v in vectors if not v.is_zero()]
    if not rows:
        return PGSubspace(ambient, ())
    reduced = field.matrix(rows).row_reduce().view(np.ndarray).astype(int).tolist()
    basis = tuple(RadVector(tuple(row)) for row in reduced if any(row))
    return PGSubspace(ambient, basis)


def subspace_vectors(field: FiniteField, subspace: PGSubspace) -> frozenset[RadVector]:
    vectors = {RadVector((0,) * subspace.ambient)}
    for coeffs in itertools.product(field.indices(), repeat=subspace.rank):
        acc = [0] * subspace.ambient
        for c, row in zip(coeffs, subspace.basis):
            acc = [field.add(a, field.mul(c, r)) for a, r in zip(acc, row.coords)]
        vectors.add(RadVector(tuple(acc)))
    return frozenset(vectors)


def rad_trace_vectors(ring: TernionRing, submodule: CyclicSubmodule) -> frozenset[RadVector]:
    return frozenset(rad_coordinates(v) for v in submodule_elements(ring, submodule) if v.in_rad())


def rad_trace(ring: TernionRing, submodule: CyclicSubmodule) -> PGSubspace:
    """S meet (rad R)^(n+1), read in the coordinates of F^(n+1)."""
    return echelon(ring.field, submodule.n + 1, rad_trace_vectors(ring, submodule))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def pg_size(n: int, q: int) -> int:
    """Number of points of PG(n, q)."""
    return gaussian_binomial(n + 1, 1, q)


def _normalized_nonzero_vectors(field: FiniteField, ambient: int) -> list[RadVector]:
    points = []
    for coords in itertools.product(field.indices(), repeat=ambient):
        pivot = next((c for c in coords if c != 0), None)
        if pivot == 1:
            points.append(RadVector(coords))
    return points


def pg_oracle_points(field: FiniteField, n: int) -> set[PGSubspace]:
    if n < 1:
        raise ConstructionError("PG(n, q) needs n >= 1")
    return {PGSubspace(n + 1, (v,)) for v in _normalized_nonzero_vectors(field, n + 1)}


def pg_oracle_lines(field: FiniteField, n: int) -> set[PGSubspace]:
    if n < 1:
        raise ConstructionError("PG(n, q) needs n >= 1")
    points = _normalized_nonzero_vectors(field, n + 1)
    return {echelon(field, n + 1, pair) for pair in itertools.combinations(points, 2)}


@dataclass(frozen=True)
class LineCorrespondenceReport:
    q: int
    n: int
    nfcs_count: int
    line_count: int
    trace_count: int
    all_traces_are_lines: bool
    traces_equal_lines: bool
    fiber_sizes: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.all_traces_are_lines and self.traces_equal_lines and self.fiber_sizes == (self.q + 1,)


def verify_line_correspondence(
    ring: TernionRing,
    n: int,
    limits: Limits = DEFAULT_LIMITS,
    workers: int = 1,
    nfcs: Sequence[CyclicSubmodule] | None = None,
) -> LineCorrespondenceReport:
    """Compare the radical traces of all NFCS with an independently generated line set."""
    if nfcs is None:
        nfcs = enumerate_nfcs(ring, n, limits, workers)
    traces = Counter(rad_trace(ring, s) for s in nfcs)
    lines = pg_oracle_lines(ring.field, n)
    report = LineCorrespondenceReport(
        q=ring.field.q,
        n=n,
        nfcs_count=len(nfcs),
        line_count=len(lines),
        trace_count=len(traces),
        all_traces_are_lines=all(t.projective_dimension == 1 for t in traces),
        traces_equal_lines=set(traces) == lines,
        fiber_sizes=tuple(sorted(set(traces.values()))),
    )
    logger.debug("Line correspondence over GF(%d), n=%d: %s", ring.field.q, n, report)
    return report


def recover_points_via_nfcs(
    ring: TernionRing, n: int, limits: Limits = DEFAULT_LIMITS, nfcs: Sequence[CyclicSubmodule] | None = None
) -> set[PGSubspace]:
    """Points as the sets R X meet R Y meet (rad R)^(n+1) with more than one element, for distinct traces."""
    if n < 2:
        raise ConstructionError("Point recovery from NFCS pairs requires n >= 2")
    if nfcs is None:
        nfcs = enumerate_nfcs(ring, n, limits)
    traces = [rad_trace_vectors(ring, s) for s in nfcs]
    points: set[PGSubspace] = set()
    for first, second in itertools.combinations(traces, 2):
        if first == second:
            continue
        meet = first & second
        if len(meet) > 1:
            points.add(echelon(ring.field, n + 1, meet))
    return points


def recover_points_via_unimodular(
    ring: TernionRing, n: int, limits: Limits = DEFAULT_LIMITS, workers: int = 1
) -> set[PGSubspace]:
    submodules = enumerate_unimodular_submodules(ring, n, limits, workers)
    return {rad_trace(ring, s) for s in submodules}


def rad_action_check(ring: TernionRing, n: int, rng: random.Random, samples: int = 20) -> bool:
    """GL_{n+1}(R) preserves (rad R)^(n+1), and (a_ij * I) acts there as (a_ij) does on F^(n+1)."""
    field = ring.field
    rad_vectors = [RadVector(c) for c in itertools.product(field.indices(), repeat=n + 1)]
    for _ in range(samples):
        matrix = random_invertible_tmatrix(ring, n + 1, rng)
        for v in rad_vectors:
            if not vector_times_matrix(ring, rad_vector_to_tvector(v), matrix).in_rad():
                return False
        rows = _random_invertible_field_matrix(field, n + 1, rng)
        embedded = embed_scalar_matrix(ring, rows)
        for i in range(n + 1):
            unit = RadVector(tuple(1 if j == i else 0 for j in range(n + 1)))
            image = rad_coordinates(vector_times_matrix(ring, rad_vector_to_tvector(unit), embedded))
            if image.coords != tuple(rows[i]):
                return False
    return True


def _random_invertible_field_matrix(field: FiniteField, size: int, rng: random.Random) -> list[list[int]]:
    while True:
        rows = [[rng.randrange(field.q) for _ in range(size)] for _ in range(size)]
        if int(np.linalg.det(field.matrix(rows))) != 0:
            return rows
