from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from domain.gf import FiniteField
from domain.limits import DEFAULT_LIMITS, Limits, ensure_within
from domain.modvec import (
    TVector,
    VectorCase,
    VectorOrbit,
    classify_vector,
    i1_vector_count,
    iter_i1_vectors,
    iter_vectors,
    vector_count,
)
from domain.parallel import map_ranges
from domain.pgbridge import ConstructionError, pg_size
from domain.submod import CyclicSubmodule, enumerate_nfcs, enumerate_unimodular_submodules, submodule_elements
from domain.ternion import TernionRing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitCensus:
    q: int
    n: int
    m: tuple[int, int, int, int, int, int]
    orbit_counts: dict[VectorOrbit, int] | None = field(default=None, compare=False, repr=False)

    def __getitem__(self, case: int) -> int:
        return self.m[case - 1]

    @property
    def total(self) -> int:
        return sum(self.m)

    @property
    def distinct_orbits(self) -> int | None:
        return None if self.orbit_counts is None else len(self.orbit_counts)


@dataclass(frozen=True)
class IncidenceCensus:
    q: int
    n: int
    mu: int
    mu1: int
    mu2: int
    mu3: int
    mu4: int
    histogram: dict[VectorCase, tuple[int, ...]] = field(default_factory=dict, compare=False)
    per_b: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)
    double_counts: dict[str, bool] = field(default_factory=dict, compare=False)

    @property
    def values(self) -> tuple[int, int, int, int, int]:
        return (self.mu, self.mu1, self.mu2, self.mu3, self.mu4)

    @property
    def constant_per_case(self) -> bool:
        return all(len(counts) == 1 for counts in self.histogram.values())


@dataclass(frozen=True)
class OutlierCensus:
    q: int
    n: int
    outliers: int
    all_case4: bool


def _exact_div(numerator: int, denominator: int) -> int:
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise ArithmeticError(f"{denominator} does not divide {numerator}")
    return quotient


def _check_params(q: int, n: int) -> None:
    if n < 1:
        raise ConstructionError(f"Counting formulas need n >= 1, got {n}")
    if q < 2:
        raise ConstructionError(f"q must be a prime power, got {q}")


def closed_form_m(q: int, n: int) -> OrbitCensus:
    _check_params(q, n)
    a = q ** (n + 1) - 1
    m = (
        1,
        a,
        q * a,
        q * (q**n - 1) * a,
        q ** (n + 1) * a,
        q ** (n + 1) * a**2,
    )
    return OrbitCensus(q=q, n=n, m=m)


def _classify_chunk(ring: TernionRing, n: int, start: int, stop: int) -> Counter[VectorOrbit]:
    return Counter(classify_vector(ring, v) for v in iter_vectors(ring, n, start, stop))


def brute_force_m(ring: TernionRing, n: int, limits: Limits = DEFAULT_LIMITS, workers: int = 1) -> OrbitCensus:
    total = vector_count(ring, n)
    ensure_within(total, limits.full_scan_bound, "vector classification")
    counts: Counter[VectorOrbit] = Counter()
    for chunk in map_ranges(_classify_chunk, total, workers, ring, n):
        counts.update(chunk)
    by_case: Counter[VectorCase] = Counter()
    for orbit, count in counts.items():
        by_case[orbit.case] += count
    m = tuple(by_case[case] for case in VectorCase)
    return OrbitCensus(q=ring.field.q, n=n, m=m, orbit_counts=dict(sorted(counts.items())))


def closed_form_mu(q: int, n: int) -> IncidenceCensus:
    _check_params(q, n)
    mu = _exact_div((q**n - 1) * (q ** (n + 1) - 1), (q - 1) ** 2)
    mu2 = _exact_div((q + 1) * (q**n - 1), q - 1)
    mu3 = _exact_div(q**n - 1, q - 1)
    return IncidenceCensus(q=q, n=n, mu=mu, mu1=mu, mu2=mu2, mu3=mu3, mu4=1)


def projective_identities(q: int, n: int) -> dict[str, bool]:
    """The products of projective space sizes that the incidence numbers factor into."""
    census = closed_form_mu(q, n)
    return {
        "mu = |PG(n-1,q)|*|PG(n,q)|": census.mu == pg_size(n - 1, q) * pg_size(n, q),
        "mu2 = |PG(n-1,q)|*|PG(1,q)|": census.mu2 == pg_size(n - 1, q) * pg_size(1, q),
        "mu3 = |PG(n-1,q)|": census.mu3 == pg_size(n - 1, q),
    }


def nfcs_membership(ring: TernionRing, nfcs: Sequence[CyclicSubmodule]) -> Counter[TVector]:
    membership: Counter[TVector] = Counter()
    for submodule in nfcs:
        membership.update(submodule_elements(ring, submodule))
    return membership


def brute_force_mu(
    ring: TernionRing,
    n: int,
    limits: Limits = DEFAULT_LIMITS,
    workers: int = 1,
    nfcs: Sequence[CyclicSubmodule] | None = None,
) -> IncidenceCensus:
    """Count, for every vector with coordinates in I1, the NFCS containing it."""
    ensure_within(i1_vector_count(ring, n), limits.i1_scan_bound, "NFCS incidence census")
    if nfcs is None:
        nfcs = enumerate_nfcs(ring, n, limits, workers)
    membership = nfcs_membership(ring, nfcs)
    observed: dict[VectorCase, set[int]] = defaultdict(set)
    per_b: dict[int, set[int]] = defaultdict(set)
    case_sizes: Counter[VectorCase] = Counter()
    for vector in iter_i1_vectors(ring, n):
        orbit = classify_vector(ring, vector)
        count = membership[vector]
        observed[orbit.case].add(count)
        case_sizes[orbit.case] += 1
        if orbit.b is not None:
            per_b[orbit.b].add(count)

    def single(case: VectorCase) -> int:
        counts = observed[case]
        if len(counts) != 1:
            logger.warning("Incidence of %s vectors is not constant: %s", case.name, sorted(counts))
        return min(counts)

    q = ring.field.q
    mu = len(nfcs)
    mu2 = single(VectorCase.CASE2)
    mu3 = single(VectorCase.CASE3)
    double_counts = {
        "m2*mu2 = mu*(q^2-1)": case_sizes[VectorCase.CASE2] * mu2 == mu * (q * q - 1),
        "m3*mu3 = mu*q*(q-1)": case_sizes[VectorCase.CASE3] * mu3 == mu * q * (q - 1),
    }
    return IncidenceCensus(
        q=q,
        n=n,
        mu=mu,
        mu1=single(VectorCase.CASE1),
        mu2=mu2,
        mu3=mu3,
        mu4=single(VectorCase.CASE4),
        histogram={case: tuple(sorted(counts)) for case, counts in sorted(observed.items())},
        per_b={b: tuple(sorted(counts)) for b, counts in sorted(per_b.items())},
        double_counts=double_counts,
    )


def distinguishability_check(field: FiniteField, n: int) -> bool:
    """Whether the four vector types of N differ in the number of NFCS through them."""
    if n < 2:
        raise ConstructionError("The incidence numbers are only claimed distinct for n >= 2")
    census = closed_form_mu(field.q, n)
    return census.mu1 > census.mu2 > census.mu3 > census.mu4 == 1


def brute_force_outliers(
    ring: TernionRing, n: int, limits: Limits = DEFAULT_LIMITS, workers: int = 1
) -> OutlierCensus:
    """Vectors lying in no unimodular free cyclic submodule."""
    covered: set[TVector] = set()
    for submodule in enumerate_unimodular_submodules(ring, n, limits, workers):
        covered.update(submodule_elements(ring, submodule))
    outliers = 0
    all_case4 = True
    for vector in iter_vectors(ring, n):
        if vector in covered:
            continue
        outliers += 1
        if classify_vector(ring, vector).case is not VectorCase.CASE4:
            all_case4 = False
    return OutlierCensus(q=ring.field.q, n=n, outliers=outliers, all_case4=all_case4)
