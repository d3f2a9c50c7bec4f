from __future__ import annotations

import functools
import logging
import re
from dataclasses import dataclass
from typing import Any, Sequence

import galois
import numpy as np

from domain.limits import DEFAULT_MAX_FIELD_ORDER, TABLE_MAX_ORDER

logger = logging.getLogger(__name__)

ORDER_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


class FieldError(ValueError):
    pass


class FiniteField:
    """GF(q) with elements indexed 0..q-1 (0 additive, 1 multiplicative identity).

    Indices are the integer representation of the polynomial basis over the
    reduction polynomial, so arithmetic on plain ints is the hot path; FqElem
    wraps an index for callers that want operators.
    """

    def __init__(self, p: int, k: int) -> None:
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.galois_field = galois.GF(p)
            self.reduction_polynomial: tuple[int, ...] = (1, 0)
        else:
            poly = galois.irreducible_poly(p, k, method="min")
            self.galois_field = galois.GF(self.q, irreducible_poly=poly)
            self.reduction_polynomial = tuple(int(c) for c in poly.coeffs)
        self._add: list[list[int]] | None = None
        self._mul: list[list[int]] | None = None
        self._neg: list[int] | None = None
        self._inv: list[int] | None = None
        if k > 1 and self.q <= TABLE_MAX_ORDER:
            self._build_tables()

    def _build_tables(self) -> None:
        x = self.galois_field.elements
        self._add = (x[:, None] + x[None, :]).view(np.ndarray).astype(int).tolist()
        self._mul = (x[:, None] * x[None, :]).view(np.ndarray).astype(int).tolist()
        self._neg = (-x).view(np.ndarray).astype(int).tolist()
        inverses = (self.galois_field(1) / x[1:]).view(np.ndarray).astype(int).tolist()
        self._inv = [0] + inverses
        logger.debug("Built arithmetic tables for GF(%d)", self.q)

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, k={self.k})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return self.p == other.p and self.k == other.k

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __reduce__(self) -> tuple[Any, ...]:
        return (_cached_field, (self.p, self.k))

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise FieldError(f"Index {a} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return int(self.galois_field(a) + self.galois_field(b))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self._neg is not None:
            return self._neg[a]
        return int(-self.galois_field(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if self._mul is not None:
            return self._mul[a][b]
        return int(self.galois_field(a) * self.galois_field(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("Zero has no multiplicative inverse")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._inv is not None:
            return self._inv[a]
        return int(self.galois_field(1) / self.galois_field(a))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def indices(self) -> range:
        return range(self.q)

    def nonzero_indices(self) -> range:
        return range(1, self.q)

    def element(self, index: int) -> FqElem:
        self._check(index)
        return FqElem(self, index)

    def elements(self) -> list[FqElem]:
        return [FqElem(self, i) for i in range(self.q)]

    def matrix(self, rows: Sequence[Sequence[int]]) -> galois.FieldArray:
        return self.galois_field(np.array(rows, dtype=int).reshape(len(rows), -1))


@dataclass(frozen=True)
class FqElem:
    field: FiniteField
    index: int

    def __post_init__(self) -> None:
        self.field._check(self.index)

    def _same(self, other: FqElem) -> None:
        if self.field != other.field:
            raise FieldError(f"Cannot mix elements of {self.field!r} and {other.field!r}")

    def __lt__(self, other: FqElem) -> bool:
        self._same(other)
        return self.index < other.index

    def __add__(self, other: FqElem) -> FqElem:
        self._same(other)
        return FqElem(self.field, self.field.add(self.index, other.index))

    def __sub__(self, other: FqElem) -> FqElem:
        self._same(other)
        return FqElem(self.field, self.field.sub(self.index, other.index))

    def __mul__(self, other: FqElem) -> FqElem:
        self._same(other)
        return FqElem(self.field, self.field.mul(self.index, other.index))

    def __truediv__(self, other: FqElem) -> FqElem:
        self._same(other)
        return FqElem(self.field, self.field.div(self.index, other.index))

    def __neg__(self) -> FqElem:
        return FqElem(self.field, self.field.neg(self.index))

    def inverse(self) -> FqElem:
        return FqElem(self.field, self.field.inv(self.index))

    def is_zero(self) -> bool:
        return self.index == 0

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"FqElem({self.index} in GF({self.field.q}))"


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, k: int) -> FiniteField:
    logger.debug("Constructing GF(%d^%d)", p, k)
    return FiniteField(p, k)


def field_new(p: int, k: int = 1, max_order: int = DEFAULT_MAX_FIELD_ORDER) -> FiniteField:
    if k < 1:
        raise FieldError(f"Extension degree must be at least 1, got {k}")
    if p < 2 or not galois.is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p**k > max_order:
        raise FieldError(f"Field order {p}^{k} exceeds the configured bound {max_order}")
    return _cached_field(p, k)


def parse_order(text: str) -> tuple[int, int]:
    match = ORDER_RE.match(text)
    if not match:
        raise FieldError(f"Cannot parse field order {text!r}; expected P^K or N")
    base = int(match.group(1))
    if match.group(2) is not None:
        exponent = int(match.group(2))
        if exponent < 1 or base < 2 or not galois.is_prime(base):
            raise FieldError(f"{text!r} is not of the form P^K with P prime and K >= 1")
        return base, exponent
    if base < 2 or not galois.is_prime_power(base):
        raise FieldError(f"{base} is not a prime power")
    primes, multiplicities = galois.factors(base)
    return int(primes[0]), int(multiplicities[0])


def field_from_order(text: str, max_order: int = DEFAULT_MAX_FIELD_ORDER) -> FiniteField:
    p, k = parse_order(text)
    return field_new(p, k, max_order=max_order)
