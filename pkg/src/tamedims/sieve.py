"""Segmented sieve of Eratosthenes.

Memory is bounded by one segment plus the base primes up to sqrt(x), so
counting to 10**7 or 2*10**7 stays well under a few megabytes.
"""

from __future__ import annotations

from collections.abc import Iterator
from math import isqrt

import numpy as np

from .errors import SieveBudgetError

DEFAULT_SEGMENT = 1 << 18
DEFAULT_BUDGET = 256 * 1024 * 1024  # bytes


def _small_sieve(limit: int) -> np.ndarray:
    """All primes <= limit from a plain (unsegmented) sieve."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def check_budget(x: int, segment_size: int, memory_budget: int) -> None:
    root = isqrt(max(x, 0))
    # flag bytes for the base sieve and one window, 8 bytes per base prime
    needed = (root + 1) + segment_size + 8 * (root // 2 + 1)
    if needed > memory_budget:
        raise SieveBudgetError(
            f"sieving to {x} needs about {needed} bytes, budget is {memory_budget}"
        )


def sieve_window(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primality flags for the integers in [lo, hi).

    ``base`` must contain every prime up to isqrt(hi - 1).
    """
    size = hi - lo
    flags = np.ones(size, dtype=bool)
    if size <= 0:
        return flags
    for p in base:
        p = int(p)
        sq = p * p
        if sq >= hi:
            break
        start = max(sq, -(-lo // p) * p)
        flags[start - lo :: p] = False
    # 0 and 1 are not prime
    for k in (0, 1):
        if lo <= k < hi:
            flags[k - lo] = False
    return flags


def prime_segments(
    x: int,
    segment_size: int = DEFAULT_SEGMENT,
    memory_budget: int = DEFAULT_BUDGET,
) -> Iterator[np.ndarray]:
    """Yield int64 arrays of consecutive primes <= x, one per segment."""
    check_budget(x, segment_size, memory_budget)
    return _segments(x, segment_size)


def _segments(x: int, segment_size: int) -> Iterator[np.ndarray]:
    if x < 2:
        return
    base = _small_sieve(isqrt(x))
    for lo in range(0, x + 1, segment_size):
        hi = min(lo + segment_size, x + 1)
        flags = sieve_window(lo, hi, base)
        yield np.flatnonzero(flags).astype(np.int64) + lo


def primes_up_to(
    x: int,
    segment_size: int = DEFAULT_SEGMENT,
    memory_budget: int = DEFAULT_BUDGET,
) -> Iterator[int]:
    """Iterate over the primes <= x in increasing order.

    Raises SieveBudgetError up front (not on first ``next``) when the
    base sieve and one segment would not fit in ``memory_budget`` bytes.
    """
    segments = prime_segments(x, segment_size, memory_budget)
    return (int(p) for seg in segments for p in seg)


def prime_pi(x: int, segment_size: int = DEFAULT_SEGMENT) -> int:
    """Number of primes <= x."""
    return sum(len(seg) for seg in prime_segments(x, segment_size))
