"""Sophie Germain prime counts against the Hardy-Littlewood prediction.

Counts are exact.  Predictions use the density C / (ln n * ln(2n + 1))
with C = 2 * prod_{p > 2} p(p - 2)/(p - 1)**2, truncated at a prime bound.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterator, Sequence
from dataclasses import asdict, dataclass
from math import isqrt

import numpy as np

from .errors import InputRangeError
from .sieve import (
    DEFAULT_BUDGET,
    DEFAULT_SEGMENT,
    _small_sieve,
    check_budget,
    prime_pi,
    prime_segments,
    sieve_window,
)


@dataclass(frozen=True)
class ConstantEstimate:
    """Truncated Euler product; the full product lies in [value - error_bound, value]."""

    value: float
    error_bound: float
    prime_bound: int


@dataclass(frozen=True)
class SGCountReport:
    x: int
    actual: int
    predicted_simple: float
    predicted_sum: float
    constant_used: float
    ratio_simple: float
    ratio_sum: float
    prime_count: int
    sg_fraction: float

    def to_json(self) -> dict:
        return asdict(self)


def sg_prime_segments(x: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Yield arrays of the Sophie Germain primes <= x, in order.

    Each step sieves the window [lo, hi) for d and the matching window
    [2lo + 1, 2hi + 1) for 2d + 1, so memory stays O(segment).
    """
    if x < 2:
        return iter(())
    check_budget(2 * x + 1, 2 * segment_size, DEFAULT_BUDGET)
    return _sg_segments(x, segment_size)


def _sg_segments(x: int, segment_size: int) -> Iterator[np.ndarray]:
    base = _small_sieve(isqrt(2 * x + 1))
    for lo in range(0, x + 1, segment_size):
        hi = min(lo + segment_size, x + 1)
        low = sieve_window(lo, hi, base)
        high = sieve_window(2 * lo + 1, 2 * hi + 1, base)[::2]
        yield np.flatnonzero(low & high).astype(np.int64) + lo


def sg_primes_up_to(x: int) -> list[int]:
    return [int(d) for seg in sg_prime_segments(x) for d in seg]


def count_sg_primes(x: int) -> int:
    """Exact number of primes d <= x with 2d + 1 prime."""
    if x < 2:
        raise InputRangeError("x must be >= 2")
    return sum(len(seg) for seg in sg_prime_segments(x))


def bateman_horn_constant(prime_bound: int) -> ConstantEstimate:
    """2 * prod over odd primes p <= prime_bound of p(p-2)/(p-1)**2.

    Every omitted factor is 1 - 1/(p-1)**2, and the sum of 1/(k-1)**2
    over k > prime_bound is at most 1/(prime_bound - 1); with
    -log(1 - t) <= 4t/3 for t <= 1/4 that bounds the relative error of
    the truncation by 4 / (3 (prime_bound - 1)).
    """
    if prime_bound < 3:
        raise InputRangeError("prime_bound must be >= 3")
    logs = []
    for seg in prime_segments(prime_bound):
        p = seg[seg > 2].astype(np.float64)
        logs.extend(np.log1p(-1.0 / (p - 1.0) ** 2).tolist())
    value = 2.0 * math.exp(math.fsum(logs))
    tail = 4.0 / (3.0 * (prime_bound - 1))
    return ConstantEstimate(value, value * -math.expm1(-tail), prime_bound)


def predicted_sum(x: int, constant: float, chunk: int = 1 << 20) -> float:
    """sum_{n=3}^{x} C / (ln n * ln(2n + 1))."""
    parts = []
    for lo in range(3, x + 1, chunk):
        n = np.arange(lo, min(lo + chunk, x + 1), dtype=np.float64)
        parts.append(float(np.sum(1.0 / (np.log(n) * np.log(2.0 * n + 1.0)))))
    return constant * math.fsum(parts)


def predicted_simple(x: int, constant: float) -> float:
    return constant * x / math.log(x) ** 2


def sg_report(x: int, prime_bound: int = 10**6) -> SGCountReport:
    if x < 3:
        raise InputRangeError("x must be >= 3")
    c = bateman_horn_constant(prime_bound).value
    actual = count_sg_primes(x)
    simple = predicted_simple(x, c)
    summed = predicted_sum(x, c)
    pi = prime_pi(x)
    return SGCountReport(
        x=x,
        actual=actual,
        predicted_simple=simple,
        predicted_sum=summed,
        constant_used=c,
        ratio_simple=actual / simple,
        ratio_sum=actual / summed,
        prime_count=pi,
        sg_fraction=actual / pi,
    )


CSV_FIELDS = (
    "x",
    "actual",
    "predicted_simple",
    "predicted_sum",
    "ratio_simple",
    "ratio_sum",
    "prime_count",
    "sg_fraction",
    "constant_used",
)


def reports_to_csv(reports: Sequence[SGCountReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow({k: getattr(r, k) for k in CSV_FIELDS})
    return buf.getvalue()
