from __future__ import annotations

import logging
from dataclasses import dataclass

DEFAULT_MAX_FIELD_ORDER = 2**20
DEFAULT_IDEAL_MAX_Q = 9
DEFAULT_FULL_SCAN_BOUND = 2**24
DEFAULT_I1_SCAN_BOUND = 2**24
DEFAULT_RANDOM_SAMPLES = 10_000
TABLE_MAX_ORDER = 256

logger = logging.getLogger(__name__)


class BoundExceededError(ValueError):
    pass


@dataclass(frozen=True)
class Limits:
    max_field_order: int = DEFAULT_MAX_FIELD_ORDER
    ideal_max_q: int = DEFAULT_IDEAL_MAX_Q
    full_scan_bound: int = DEFAULT_FULL_SCAN_BOUND
    i1_scan_bound: int = DEFAULT_I1_SCAN_BOUND
    random_samples: int = DEFAULT_RANDOM_SAMPLES

    def with_scan_bound(self, bound: int) -> Limits:
        if bound < 1:
            raise ValueError("Scan bound must be positive")
        return Limits(
            max_field_order=self.max_field_order,
            ideal_max_q=self.ideal_max_q,
            full_scan_bound=bound,
            i1_scan_bound=bound,
            random_samples=self.random_samples,
        )


DEFAULT_LIMITS = Limits()


def ensure_within(size: int, bound: int, what: str) -> None:
    logger.debug("Bound check for %s: %d of %d", what, size, bound)
    if size > bound:
        raise BoundExceededError(f"{what} needs {size} items, above the configured bound {bound}")
