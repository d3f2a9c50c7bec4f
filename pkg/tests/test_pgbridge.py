from __future__ import annotations

import random

import pytest

from domain.gf import field_new
from domain.modvec import DimensionError, parse_vector
from domain.pgbridge import (
    ConstructionError,
    PGSubspace,
    RadVector,
    echelon,
    gaussian_binomial,
    pg_oracle_lines,
    pg_oracle_points,
    pg_size,
    rad_action_check,
    rad_coordinates,
    rad_trace,
    recover_points_via_nfcs,
    recover_points_via_unimodular,
    subspace_vectors,
    verify_line_correspondence,
)
from domain.submod import generate
from domain.ternion import TernionRing


def _ring(p: int = 2, k: int = 1) -> TernionRing:
    return TernionRing(field_new(p, k))


def test_projective_space_sizes() -> None:
    assert gaussian_binomial(3, 2, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 5, 2) == 0
    assert pg_size(2, 2) == 7
    assert pg_size(1, 3) == 4
    assert pg_size(2, 3) == 13


@pytest.mark.parametrize(("p", "n", "lines"), [(2, 2, 7), (3, 2, 13), (2, 3, 35), (2, 1, 1)])
def test_oracle_line_counts(p: int, n: int, lines: int) -> None:
    field = field_new(p)
    assert len(pg_oracle_lines(field, n)) == lines
    assert len(pg_oracle_points(field, n)) == pg_size(n, p)


def test_echelon_normalizes_basis() -> None:
    field = field_new(3)
    assert echelon(field, 2, [RadVector((2, 2))]) == PGSubspace(2, (RadVector((1, 1)),))
    line = echelon(field, 3, [RadVector((1, 1, 0)), RadVector((0, 2, 1)), RadVector((1, 0, 1))])
    assert line.rank == 2
    assert line.projective_dimension == 1
    assert len(subspace_vectors(field, line)) == 9


def test_rad_coordinates_require_rad_vectors() -> None:
    ring = _ring()
    assert rad_coordinates(parse_vector(ring, "0,1,0;0,0,0")) == RadVector((1, 0))
    with pytest.raises(DimensionError):
        rad_coordinates(parse_vector(ring, "0,1,1;0,0,0"))


def test_trace_of_an_nfcs_is_a_line() -> None:
    ring = _ring()
    trace = rad_trace(ring, generate(ring, parse_vector(ring, "0,0,1;0,1,0;0,0,0")))
    assert trace.projective_dimension == 1
    assert trace == echelon(ring.field, 3, [RadVector((1, 0, 0)), RadVector((0, 1, 0))])


@pytest.mark.parametrize(
    ("p", "n", "nfcs", "lines"),
    [(2, 1, 3, 1), (2, 2, 21, 7), (3, 1, 4, 1), (3, 2, 52, 13), (2, 3, 105, 35)],
)
def test_lines_are_radical_traces(p: int, n: int, nfcs: int, lines: int) -> None:
    report = verify_line_correspondence(_ring(p), n)
    assert report.nfcs_count == nfcs
    assert report.line_count == lines
    assert report.fiber_sizes == (p + 1,)
    assert report.passed


def test_points_from_nfcs_pairs() -> None:
    ring = _ring()
    assert recover_points_via_nfcs(ring, 2) == pg_oracle_points(ring.field, 2)


def test_point_recovery_from_nfcs_needs_n_at_least_2() -> None:
    with pytest.raises(ConstructionError):
        recover_points_via_nfcs(_ring(), 1)


def test_points_from_unimodular_submodules() -> None:
    for p, n in ((2, 1), (3, 1), (2, 2)):
        ring = _ring(p)
        assert recover_points_via_unimodular(ring, n) == pg_oracle_points(ring.field, n)


def test_linear_group_acts_on_the_radical() -> None:
    assert rad_action_check(_ring(3), 1, random.Random(5))
    assert rad_action_check(_ring(2, 2), 2, random.Random(5), samples=5)
