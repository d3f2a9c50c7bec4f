from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Iterable

from domain.gf import FiniteField
from domain.limits import DEFAULT_LIMITS, Limits, ensure_within

logger = logging.getLogger(__name__)


class TernionError(ValueError):
    pass


@dataclass(frozen=True, slots=True, order=True)
class Ternion:
    """The upper-triangular matrix [[x, y], [0, z]] as field element indices."""

    x: int
    y: int
    z: int

    def __str__(self) -> str:
        return f"{self.x},{self.y},{self.z}"

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def in_rad(self) -> bool:
        return self.x == 0 and self.z == 0

    def in_i1(self) -> bool:
        return self.x == 0

    def in_i2(self) -> bool:
        return self.z == 0

    def is_unit(self) -> bool:
        return self.x != 0 and self.z != 0


class IdealKind(enum.Enum):
    ZERO = "Zero"
    RAD = "Rad"
    RATIO = "Ratio"
    I1 = "I1"
    I2 = "I2"
    FULL = "Full"


@dataclass(frozen=True)
class RightIdealClass:
    kind: IdealKind
    b: int | None = None

    def __post_init__(self) -> None:
        if (self.kind is IdealKind.RATIO) != (self.b is not None):
            raise TernionError("Only Ratio right ideals carry the parameter b")

    def __str__(self) -> str:
        if self.kind is IdealKind.RATIO:
            return f"Ratio({self.b})"
        return self.kind.value


@dataclass(frozen=True)
class LeftIdealClass:
    """Left ideal tag; RATIO stands for I2(a:b) with the pair scaled so its first nonzero entry is 1."""

    kind: IdealKind
    ratio: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.kind is IdealKind.RAD:
            raise TernionError("The radical is the left ideal I2(0:1); use RATIO")
        if (self.kind is IdealKind.RATIO) != (self.ratio is not None):
            raise TernionError("Only Ratio left ideals carry a ratio")

    def __str__(self) -> str:
        if self.kind is IdealKind.RATIO and self.ratio is not None:
            return f"Ratio2({self.ratio[0]}:{self.ratio[1]})"
        return self.kind.value


ZERO_IDEAL = RightIdealClass(IdealKind.ZERO)
RAD_IDEAL = RightIdealClass(IdealKind.RAD)
I1_IDEAL = RightIdealClass(IdealKind.I1)
I2_IDEAL = RightIdealClass(IdealKind.I2)
FULL_IDEAL = RightIdealClass(IdealKind.FULL)


class TernionRing:
    def __init__(self, field: FiniteField) -> None:
        self.field = field
        self.zero = Ternion(0, 0, 0)
        self.one = Ternion(1, 0, 1)

    def __repr__(self) -> str:
        return f"TernionRing(GF({self.field.q}))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TernionRing):
            return NotImplemented
        return self.field == other.field

    def __hash__(self) -> int:
        return hash(("ternions", self.field))

    @property
    def order(self) -> int:
        return self.field.q**3

    @property
    def unit_count(self) -> int:
        q = self.field.q
        return q * (q - 1) ** 2

    def validate(self, t: Ternion) -> Ternion:
        q = self.field.q
        if not (0 <= t.x < q and 0 <= t.y < q and 0 <= t.z < q):
            raise TernionError(f"Ternion {t} has entries outside GF({q})")
        return t

    def parse(self, text: str) -> Ternion:
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 3 or not all(part.lstrip("-").isdigit() for part in parts):
            raise TernionError(f"Cannot parse ternion {text!r}; expected x,y,z")
        return self.validate(Ternion(*(int(part) for part in parts)))

    def add(self, a: Ternion, b: Ternion) -> Ternion:
        f = self.field
        return Ternion(f.add(a.x, b.x), f.add(a.y, b.y), f.add(a.z, b.z))

    def neg(self, a: Ternion) -> Ternion:
        f = self.field
        return Ternion(f.neg(a.x), f.neg(a.y), f.neg(a.z))

    def sub(self, a: Ternion, b: Ternion) -> Ternion:
        return self.add(a, self.neg(b))

    def mul(self, a: Ternion, b: Ternion) -> Ternion:
        f = self.field
        return Ternion(
            f.mul(a.x, b.x),
            f.add(f.mul(a.x, b.y), f.mul(a.y, b.z)),
            f.mul(a.z, b.z),
        )

    def scale(self, c: int, a: Ternion) -> Ternion:
        """Product with the central ternion c*I."""
        f = self.field
        return Ternion(f.mul(c, a.x), f.mul(c, a.y), f.mul(c, a.z))

    def scalar(self, c: int) -> Ternion:
        return Ternion(c, 0, c)

    def is_unit(self, a: Ternion) -> bool:
        return a.is_unit()

    def inv(self, a: Ternion) -> Ternion:
        if not a.is_unit():
            raise TernionError(f"Ternion {a} is not a unit")
        f = self.field
        x_inv = f.inv(a.x)
        z_inv = f.inv(a.z)
        return Ternion(x_inv, f.neg(f.mul(f.mul(x_inv, a.y), z_inv)), z_inv)

    def to_matrix(self, a: Ternion) -> list[list[int]]:
        return [[a.x, a.y], [0, a.z]]

    def elements(self) -> list[Ternion]:
        q = self.field.q
        return [Ternion(x, y, z) for x, y, z in itertools.product(range(q), repeat=3)]

    def units(self) -> list[Ternion]:
        return [t for t in self.elements() if t.is_unit()]

    def rad_elements(self) -> list[Ternion]:
        return [Ternion(0, y, 0) for y in self.field.indices()]

    def i1_elements(self) -> list[Ternion]:
        q = self.field.q
        return [Ternion(0, y, z) for y, z in itertools.product(range(q), repeat=2)]


def right_ideal_of(ring: TernionRing, gens: Iterable[Ternion]) -> RightIdealClass:
    """Classify the right ideal generated by gens without materializing it."""
    f = ring.field
    items = [ring.validate(g) for g in gens]
    nonzero = [g for g in items if not g.is_zero()]
    if not nonzero:
        return ZERO_IDEAL
    if all(g.in_i1() for g in nonzero):
        first = nonzero[0]
        proportional = all(f.sub(f.mul(first.y, g.z), f.mul(first.z, g.y)) == 0 for g in nonzero[1:])
        if not proportional:
            return I1_IDEAL
        if first.z == 0:
            return RAD_IDEAL
        return RightIdealClass(IdealKind.RATIO, f.div(first.y, first.z))
    if all(g.in_i2() for g in nonzero):
        return I2_IDEAL
    return FULL_IDEAL


def left_annihilator_class(ring: TernionRing, a: Ternion) -> LeftIdealClass:
    """Classify {t in R : t*a = 0}."""
    f = ring.field
    ring.validate(a)
    if a.is_zero():
        return LeftIdealClass(IdealKind.FULL)
    if a.is_unit():
        return LeftIdealClass(IdealKind.ZERO)
    if a.z != 0:
        # t = (p, r, s) kills a iff s = 0 and p*y + r*z = 0
        return LeftIdealClass(IdealKind.RATIO, (1, f.neg(f.div(a.y, a.z))))
    return LeftIdealClass(IdealKind.I1)


def right_ideal_elements(ring: TernionRing, cls: RightIdealClass) -> frozenset[Ternion]:
    f = ring.field
    if cls.kind is IdealKind.ZERO:
        return frozenset({ring.zero})
    if cls.kind is IdealKind.RAD:
        return frozenset(ring.rad_elements())
    if cls.kind is IdealKind.RATIO:
        assert cls.b is not None
        return frozenset(Ternion(0, f.mul(z, cls.b), z) for z in f.indices())
    if cls.kind is IdealKind.I1:
        return frozenset(ring.i1_elements())
    if cls.kind is IdealKind.I2:
        return frozenset(Ternion(x, y, 0) for x in f.indices() for y in f.indices())
    return frozenset(ring.elements())


def left_ideal_elements(ring: TernionRing, cls: LeftIdealClass) -> frozenset[Ternion]:
    f = ring.field
    if cls.kind is IdealKind.ZERO:
        return frozenset({ring.zero})
    if cls.kind is IdealKind.RATIO:
        assert cls.ratio is not None
        a, b = cls.ratio
        return frozenset(Ternion(f.mul(x, a), f.mul(x, b), 0) for x in f.indices())
    if cls.kind is IdealKind.I1:
        return frozenset(ring.i1_elements())
    if cls.kind is IdealKind.I2:
        return frozenset(Ternion(x, y, 0) for x in f.indices() for y in f.indices())
    return frozenset(ring.elements())


def f_span(ring: TernionRing, items: Iterable[Ternion]) -> frozenset[Ternion]:
    span = {ring.zero}
    for v in items:
        if v in span:
            continue
        span = {ring.add(s, ring.scale(c, v)) for s in span for c in ring.field.indices()}
    return frozenset(span)


def right_ideal_closure(ring: TernionRing, gens: Iterable[Ternion]) -> frozenset[Ternion]:
    """Oracle: the F-span of all g*r, which is closed under right multiplication."""
    elements = ring.elements()
    return f_span(ring, (ring.mul(g, r) for g in gens for r in elements))


def left_ideal_closure(ring: TernionRing, gens: Iterable[Ternion]) -> frozenset[Ternion]:
    elements = ring.elements()
    return f_span(ring, (ring.mul(r, g) for g in gens for r in elements))


def left_annihilator_elements(ring: TernionRing, a: Ternion) -> frozenset[Ternion]:
    return frozenset(t for t in ring.elements() if ring.mul(t, a).is_zero())


def _ideal_key(ideal: frozenset[Ternion]) -> tuple[int, list[Ternion]]:
    return (len(ideal), sorted(ideal))


def _enumerate_ideals(ring: TernionRing, side: str, limits: Limits) -> list[frozenset[Ternion]]:
    ensure_within(ring.field.q, limits.ideal_max_q, f"{side} ideal enumeration")
    closure = right_ideal_closure if side == "right" else left_ideal_closure
    principal = {closure(ring, [t]) for t in ring.elements()}
    ideals = set(principal)
    # the ideal generated by a pair is the sum of the two principal ideals
    for first, second in itertools.combinations(sorted(principal, key=_ideal_key), 2):
        ideals.add(f_span(ring, itertools.chain(first, second)))
    logger.debug("Found %d %s ideals over GF(%d)", len(ideals), side, ring.field.q)
    return sorted(ideals, key=_ideal_key)


def enumerate_right_ideals(ring: TernionRing, limits: Limits = DEFAULT_LIMITS) -> list[frozenset[Ternion]]:
    return _enumerate_ideals(ring, "right", limits)


def enumerate_left_ideals(ring: TernionRing, limits: Limits = DEFAULT_LIMITS) -> list[frozenset[Ternion]]:
    return _enumerate_ideals(ring, "left", limits)


def jacobson_radical(ring: TernionRing, side: str = "right", limits: Limits = DEFAULT_LIMITS) -> frozenset[Ternion]:
    """Intersection of all maximal one-sided ideals found by exhaustive enumeration."""
    ideals = _enumerate_ideals(ring, side, limits)
    proper = [ideal for ideal in ideals if len(ideal) < ring.order]
    maximal = [ideal for ideal in proper if not any(ideal < other for other in proper)]
    return frozenset.intersection(*maximal)
