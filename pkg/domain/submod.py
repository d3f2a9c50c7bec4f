from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Sequence

from domain.limits import DEFAULT_LIMITS, Limits, ensure_within
from domain.modvec import (
    TVector,
    VectorCase,
    classify_vector,
    i1_vector_count,
    iter_i1_vectors,
    iter_vectors,
    left_multiply,
    vector_count,
)
from domain.parallel import map_ranges
from domain.ternion import Ternion, TernionRing, right_ideal_closure

logger = logging.getLogger(__name__)


class SubmoduleError(ValueError):
    pass


class SubmoduleOrbit(enum.Enum):
    CS1 = "cs1"
    CS2 = "cs2"
    CS3 = "cs3"
    CS4 = "cs4"
    CS5 = "cs5"
    CS6 = "cs6"


_ORBIT_BY_CASE = {
    VectorCase.CASE1: SubmoduleOrbit.CS1,
    VectorCase.CASE2: SubmoduleOrbit.CS2,
    VectorCase.CASE3: SubmoduleOrbit.CS3,
    VectorCase.CASE4: SubmoduleOrbit.CS4,
    VectorCase.CASE5: SubmoduleOrbit.CS5,
    VectorCase.CASE6: SubmoduleOrbit.CS6,
}
FREE_CASES = frozenset({VectorCase.CASE4, VectorCase.CASE6})


@dataclass(frozen=True)
class CyclicSubmodule:
    canonical_generator: TVector
    orbit: SubmoduleOrbit
    free: bool
    unimodular: bool
    elements: frozenset[TVector] | None = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.canonical_generator.n

    def __str__(self) -> str:
        return f"R({self.canonical_generator})"


def submodule_orbit(ring: TernionRing, generator: TVector) -> SubmoduleOrbit:
    return _ORBIT_BY_CASE[classify_vector(ring, generator).case]


def span_elements(ring: TernionRing, generator: TVector) -> frozenset[TVector]:
    """{alpha * X : alpha in R}."""
    return frozenset(left_multiply(ring, alpha, generator) for alpha in ring.elements())


def orbit_invariant(elements: frozenset[TVector]) -> tuple[int, int, bool]:
    """(|R*X|, |R*X in rad^(n+1)|, whether R*X holds a unimodular vector), read off the elements alone."""
    in_rad = sum(1 for v in elements if v.in_rad())
    unimodular = any(any(t.x for t in v.coords) and any(t.z for t in v.coords) for v in elements)
    return len(elements), in_rad, unimodular


def is_free(ring: TernionRing, generator: TVector) -> bool:
    return classify_vector(ring, generator).case in FREE_CASES


def is_unimodular(ring: TernionRing, generator: TVector) -> bool:
    return classify_vector(ring, generator).case is VectorCase.CASE6


def vector_left_annihilator(ring: TernionRing, generator: TVector) -> frozenset[Ternion]:
    return frozenset(alpha for alpha in ring.elements() if left_multiply(ring, alpha, generator).is_zero())


def free_by_size(ring: TernionRing, generator: TVector) -> bool:
    return len(span_elements(ring, generator)) == ring.order


def free_by_annihilator(ring: TernionRing, generator: TVector) -> bool:
    return vector_left_annihilator(ring, generator) == frozenset({ring.zero})


def has_unit_linear_form(ring: TernionRing, generator: TVector) -> bool:
    """Whether some R-linear form sum(X_i * c_i) takes X to I, i.e. I lies in the right ideal I_X."""
    return ring.one in right_ideal_closure(ring, generator.coords)


def canonicalize(ring: TernionRing, generator: TVector, units: Sequence[Ternion] | None = None) -> TVector:
    """Smallest vector of the unit orbit {u * X}; for free X this names R*X uniquely."""
    if not is_free(ring, generator):
        raise SubmoduleError(f"{generator} does not generate a free submodule")
    return _unit_orbit_min(ring, generator, ring.units() if units is None else units)


def _unit_orbit_min(ring: TernionRing, generator: TVector, units: Sequence[Ternion]) -> TVector:
    return min(left_multiply(ring, u, generator) for u in units)


def _smallest_generator(ring: TernionRing, elements: frozenset[TVector]) -> TVector:
    for candidate in sorted(elements):
        if len(span_elements(ring, candidate)) == len(elements):
            return candidate
    raise SubmoduleError("Submodule has no generator among its elements")


def generate(ring: TernionRing, generator: TVector) -> CyclicSubmodule:
    elements = span_elements(ring, generator)
    case = classify_vector(ring, generator).case
    free = case in FREE_CASES
    canonical = _unit_orbit_min(ring, generator, ring.units()) if free else _smallest_generator(ring, elements)
    return CyclicSubmodule(
        canonical_generator=canonical,
        orbit=_ORBIT_BY_CASE[case],
        free=free,
        unimodular=case is VectorCase.CASE6,
        elements=elements,
    )


def submodule_elements(ring: TernionRing, submodule: CyclicSubmodule) -> frozenset[TVector]:
    if submodule.elements is not None:
        return submodule.elements
    return span_elements(ring, submodule.canonical_generator)


def submodule_equal(ring: TernionRing, a: CyclicSubmodule, b: CyclicSubmodule) -> bool:
    if a.n != b.n:
        raise SubmoduleError(f"Submodules of R^{a.n + 1} and R^{b.n + 1} cannot be compared")
    if a.free and b.free:
        return a.canonical_generator == b.canonical_generator
    return submodule_elements(ring, a) == submodule_elements(ring, b)


def _free_generators_chunk(
    ring: TernionRing, n: int, case: VectorCase, full_space: bool, start: int, stop: int
) -> set[TVector]:
    units = ring.units()
    vectors = iter_vectors(ring, n, start, stop) if full_space else iter_i1_vectors(ring, n, start, stop)
    found: set[TVector] = set()
    for vector in vectors:
        if classify_vector(ring, vector).case is case:
            found.add(_unit_orbit_min(ring, vector, units))
    return found


def _free_submodule(ring: TernionRing, generator: TVector, case: VectorCase) -> CyclicSubmodule:
    return CyclicSubmodule(
        canonical_generator=generator,
        orbit=_ORBIT_BY_CASE[case],
        free=True,
        unimodular=case is VectorCase.CASE6,
        elements=span_elements(ring, generator),
    )


def enumerate_nfcs(
    ring: TernionRing, n: int, limits: Limits = DEFAULT_LIMITS, workers: int = 1
) -> list[CyclicSubmodule]:
    """All non-unimodular free cyclic submodules, scanning only vectors with coordinates in I1."""
    total = i1_vector_count(ring, n)
    ensure_within(total, limits.i1_scan_bound, "NFCS enumeration")
    chunks = map_ranges(_free_generators_chunk, total, workers, ring, n, VectorCase.CASE4, False)
    generators = sorted(set().union(*chunks))
    logger.debug("Found %d NFCS in R^%d over GF(%d)", len(generators), n + 1, ring.field.q)
    return [_free_submodule(ring, g, VectorCase.CASE4) for g in generators]


def enumerate_unimodular_submodules(
    ring: TernionRing, n: int, limits: Limits = DEFAULT_LIMITS, workers: int = 1
) -> list[CyclicSubmodule]:
    total = vector_count(ring, n)
    ensure_within(total, limits.full_scan_bound, "unimodular submodule enumeration")
    chunks = map_ranges(_free_generators_chunk, total, workers, ring, n, VectorCase.CASE6, True)
    generators = sorted(set().union(*chunks))
    logger.debug("Found %d unimodular free submodules in R^%d", len(generators), n + 1)
    return [_free_submodule(ring, g, VectorCase.CASE6) for g in generators]
