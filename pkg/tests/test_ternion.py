from __future__ import annotations

import pytest

from domain.gf import field_new
from domain.limits import BoundExceededError
from domain.ternion import (
    FULL_IDEAL,
    I1_IDEAL,
    I2_IDEAL,
    RAD_IDEAL,
    ZERO_IDEAL,
    IdealKind,
    LeftIdealClass,
    RightIdealClass,
    Ternion,
    TernionError,
    TernionRing,
    enumerate_left_ideals,
    enumerate_right_ideals,
    jacobson_radical,
    left_annihilator_class,
    left_annihilator_elements,
    left_ideal_elements,
    right_ideal_elements,
    right_ideal_of,
)
from domain.verification import ideal_classes_match_closure, multiplication_law_holds


def _ring(p: int = 3, k: int = 1) -> TernionRing:
    return TernionRing(field_new(p, k))


def test_multiplication_and_inverse() -> None:
    ring = _ring()
    a = Ternion(2, 1, 2)
    assert ring.mul(Ternion(1, 2, 1), a) == Ternion(2, 2, 2)
    assert ring.inv(a) == Ternion(2, 2, 2)
    assert ring.mul(a, ring.inv(a)) == ring.one
    assert ring.mul(ring.inv(a), a) == ring.one


def test_multiplication_matches_matrices() -> None:
    assert multiplication_law_holds(_ring(2))
    assert multiplication_law_holds(_ring(2, 2))


def test_non_units_have_no_inverse() -> None:
    ring = _ring()
    with pytest.raises(TernionError):
        ring.inv(Ternion(0, 1, 1))
    with pytest.raises(TernionError):
        ring.inv(Ternion(1, 1, 0))


def test_unit_count() -> None:
    for p, k in ((2, 1), (3, 1), (2, 2)):
        ring = _ring(p, k)
        q = ring.field.q
        assert len(ring.units()) == ring.unit_count == q * (q - 1) ** 2
        assert len(ring.elements()) == q**3


def test_parse_rejects_bad_literals() -> None:
    ring = _ring()
    assert ring.parse("1, 2,0") == Ternion(1, 2, 0)
    with pytest.raises(TernionError):
        ring.parse("1,2")
    with pytest.raises(TernionError):
        ring.parse("1,5,0")
    with pytest.raises(TernionError):
        ring.parse("a,b,c")


def test_right_ideal_decision_procedure() -> None:
    ring = _ring()
    assert right_ideal_of(ring, []) == ZERO_IDEAL
    assert right_ideal_of(ring, [ring.zero]) == ZERO_IDEAL
    assert right_ideal_of(ring, [Ternion(0, 1, 0)]) == RAD_IDEAL
    assert right_ideal_of(ring, [Ternion(0, 2, 1)]) == RightIdealClass(IdealKind.RATIO, 2)
    assert right_ideal_of(ring, [Ternion(0, 2, 1), Ternion(0, 1, 2)]) == RightIdealClass(IdealKind.RATIO, 2)
    assert right_ideal_of(ring, [Ternion(0, 1, 0), Ternion(0, 0, 1)]) == I1_IDEAL
    assert right_ideal_of(ring, [Ternion(1, 0, 0)]) == I2_IDEAL
    assert right_ideal_of(ring, [Ternion(1, 0, 0), Ternion(0, 0, 1)]) == FULL_IDEAL
    assert right_ideal_of(ring, [Ternion(2, 0, 1)]) == FULL_IDEAL


def test_right_ideal_classes_agree_with_closure() -> None:
    assert ideal_classes_match_closure(_ring(2))
    assert ideal_classes_match_closure(_ring(3))


def test_ratio_ideal_requires_parameter() -> None:
    with pytest.raises(TernionError):
        RightIdealClass(IdealKind.RATIO)
    with pytest.raises(TernionError):
        LeftIdealClass(IdealKind.RAD)


def test_ideal_counts() -> None:
    for p, k in ((2, 1), (3, 1), (2, 2)):
        ring = _ring(p, k)
        q = ring.field.q
        rights = enumerate_right_ideals(ring)
        lefts = enumerate_left_ideals(ring)
        assert len(rights) == q + 5
        assert len(lefts) == q + 5
        assert frozenset(ring.elements()) in rights
        assert right_ideal_elements(ring, RAD_IDEAL) in rights


def test_ideal_enumeration_respects_bound() -> None:
    with pytest.raises(BoundExceededError):
        enumerate_right_ideals(_ring(11))


def test_jacobson_radical_is_rad() -> None:
    ring = _ring()
    rad = frozenset(ring.rad_elements())
    assert jacobson_radical(ring, "right") == rad
    assert jacobson_radical(ring, "left") == rad


def test_left_annihilator_classes() -> None:
    ring = _ring()
    assert left_annihilator_class(ring, ring.zero).kind is IdealKind.FULL
    assert left_annihilator_class(ring, Ternion(1, 2, 1)).kind is IdealKind.ZERO
    assert left_annihilator_class(ring, Ternion(0, 1, 2)) == LeftIdealClass(IdealKind.RATIO, (1, 1))
    assert left_annihilator_class(ring, Ternion(2, 1, 0)).kind is IdealKind.I1
    for a in ring.elements():
        assert left_ideal_elements(ring, left_annihilator_class(ring, a)) == left_annihilator_elements(ring, a)
