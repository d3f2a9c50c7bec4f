from __future__ import annotations

import pytest

from domain.census import (
    brute_force_m,
    brute_force_mu,
    brute_force_outliers,
    closed_form_m,
    closed_form_mu,
    distinguishability_check,
    projective_identities,
)
from domain.gf import field_new
from domain.limits import BoundExceededError, DEFAULT_LIMITS
from domain.modvec import VectorCase
from domain.pgbridge import ConstructionError
from domain.ternion import TernionRing


def _ring(p: int = 2, k: int = 1) -> TernionRing:
    return TernionRing(field_new(p, k))


def test_orbit_counts_closed_form() -> None:
    assert closed_form_m(2, 2).m == (1, 7, 14, 42, 56, 392)
    assert closed_form_m(2, 1).m == (1, 3, 6, 6, 12, 36)
    for q, n in ((2, 1), (3, 2), (4, 3), (5, 1)):
        assert closed_form_m(q, n).total == q ** (3 * (n + 1))


@pytest.mark.parametrize(("p", "k", "n"), [(2, 1, 1), (2, 1, 2), (3, 1, 1), (2, 2, 1)])
def test_orbit_counts_match_enumeration(p: int, k: int, n: int) -> None:
    ring = _ring(p, k)
    census = brute_force_m(ring, n)
    assert census.m == closed_form_m(ring.field.q, n).m
    assert census.distinct_orbits == 5 + ring.field.q


def test_census_indexing_by_case() -> None:
    census = closed_form_m(2, 2)
    assert census[VectorCase.CASE4] == 42
    assert census[VectorCase.CASE6] == 392


def test_incidence_counts_closed_form() -> None:
    assert closed_form_mu(2, 2).values == (21, 21, 9, 3, 1)
    assert closed_form_mu(2, 1).values == (3, 3, 3, 1, 1)
    assert closed_form_mu(3, 2).values == (52, 52, 16, 4, 1)


def test_nfcs_times_units_is_m4() -> None:
    for q, n in ((2, 1), (2, 2), (3, 2), (4, 1), (5, 3)):
        assert closed_form_mu(q, n).mu * q * (q - 1) ** 2 == closed_form_m(q, n)[VectorCase.CASE4]


@pytest.mark.parametrize(("p", "n"), [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_incidence_counts_match_enumeration(p: int, n: int) -> None:
    census = brute_force_mu(_ring(p), n)
    assert census.values == closed_form_mu(p, n).values
    assert census.constant_per_case
    assert all(len(counts) == 1 for counts in census.per_b.values())
    assert all(census.double_counts.values())


def test_projective_identities() -> None:
    for q, n in ((2, 1), (2, 2), (3, 3), (4, 2), (7, 1)):
        assert all(projective_identities(q, n).values())


def test_vector_types_are_distinguishable_from_n_2() -> None:
    assert distinguishability_check(field_new(2), 2)
    assert distinguishability_check(field_new(3), 4)
    with pytest.raises(ConstructionError):
        distinguishability_check(field_new(2), 1)


def test_outliers_are_the_case4_vectors() -> None:
    outliers = brute_force_outliers(_ring(), 1)
    assert outliers.outliers == 6
    assert outliers.all_case4
    outliers = brute_force_outliers(_ring(), 2)
    assert outliers.outliers == 42
    assert outliers.all_case4


def test_invalid_parameters() -> None:
    with pytest.raises(ConstructionError):
        closed_form_m(2, 0)
    with pytest.raises(ConstructionError):
        closed_form_mu(1, 2)


def test_enumeration_respects_bound() -> None:
    with pytest.raises(BoundExceededError):
        brute_force_m(_ring(), 9)
    with pytest.raises(BoundExceededError):
        brute_force_mu(_ring(), 2, DEFAULT_LIMITS.with_scan_bound(10))
