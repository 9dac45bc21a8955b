"""Which dimensions admit irreducible representations with rational inertia traces.

Tame case: a dimension d is realised over a local field with residue
field of size q exactly when some m prime to p has phi(m) == d and q
generating (Z/mZ)^x.  This criterion is necessary and sufficient.

Wild case: only the necessary condition (p - 1) | d is known, so a true
``wild_divisibility`` never asserts existence.

The abelian-variety verdict combines both: for a prime d with 2d + 1
composite and p not in {2, 3}, neither case can produce a
2d-dimensional irreducible representation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

from .errors import ConsistencyError, InputRangeError
from .ntcore import (
    divisors,
    euler_phi,
    inverse_totient,
    is_generator,
    is_prime,
    multiplicative_order,
)


@dataclass(frozen=True)
class LocalFieldParams:
    """Residue characteristic p and degree f of the residue field; q = p**f."""

    p: int
    f: int = 1
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputRangeError(f"p must be prime, got {self.p}")
        if self.f < 1:
            raise InputRangeError(f"f must be >= 1, got {self.f}")
        object.__setattr__(self, "q", self.p**self.f)


@dataclass(frozen=True)
class ShapeAnalysis:
    """Solutions of d == (v - 1) * v**a with v an odd prime other than p.

    ``small_case`` marks d in {1, 2}, the dimensions allowed outside that family.
    """

    d: int
    pairs: tuple[tuple[int, int], ...]
    small_case: bool


@dataclass(frozen=True)
class DimVerdict:
    d: int
    tame_witnesses: tuple[int, ...]
    tame_possible: bool
    wild_necessary_ok: bool
    shape_decompositions: tuple[tuple[int, int], ...]
    small_case: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "tame": {"possible": self.tame_possible, "witnesses": list(self.tame_witnesses)},
            "wild": {"divides": self.wild_necessary_ok},
            "shape_decompositions": [list(p) for p in self.shape_decompositions],
            "small_case": self.small_case,
        }


class Conclusion(str, enum.Enum):
    REDUCIBLE_FORCED = "ReducibleForced"
    NOT_DECIDED = "NotDecidedByPaper"


@dataclass(frozen=True)
class Reason:
    code: str
    message: str


@dataclass(frozen=True)
class AVVerdict:
    d: int
    rep_dim: int
    conclusion: Conclusion
    tame_possible: bool
    tame_witnesses: tuple[int, ...]
    wild_divides: bool
    reasons: tuple[Reason, ...] = ()

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "rep_dim": self.rep_dim,
            "conclusion": self.conclusion.value,
            "tame": {"possible": self.tame_possible, "witnesses": list(self.tame_witnesses)},
            "wild": {"divides": self.wild_divides},
            "reasons": [{"code": r.code, "message": r.message} for r in self.reasons],
        }


def tame_witnesses(K: LocalFieldParams, d: int) -> tuple[int, ...]:
    """All m prime to p with phi(m) == d and q a generator of (Z/mZ)^x."""
    return tuple(m for m in inverse_totient(d) if gcd(m, K.p) == 1 and is_generator(K.q, m))


def tame_admissible_dims(K: LocalFieldParams, max_dim: int) -> list[tuple[int, tuple[int, ...]]]:
    """Every d <= max_dim with at least one tame witness, paired with its witnesses."""
    out = []
    for d in range(1, max_dim + 1):
        w = tame_witnesses(K, d)
        if w:
            out.append((d, w))
    return out


def tame_shape_decompositions(d: int, p: int) -> ShapeAnalysis:
    if d < 1:
        raise InputRangeError("d must be >= 1")
    pairs = []
    for e in divisors(d):
        v = e + 1
        if v == 2 or v == p or not is_prime(v):
            continue
        rest, a = d // e, 0
        while rest % v == 0:
            rest //= v
            a += 1
        if rest == 1:
            pairs.append((v, a))
    return ShapeAnalysis(d, tuple(sorted(pairs)), d in (1, 2))


def wild_divisibility(K: LocalFieldParams, d: int) -> bool:
    """Necessary condition (p - 1) | d for a wildly ramified irreducible of dimension d."""
    return d % (K.p - 1) == 0


def dim_verdict(K: LocalFieldParams, d: int) -> DimVerdict:
    w = tame_witnesses(K, d)
    shape = tame_shape_decompositions(d, K.p)
    return DimVerdict(
        d=d,
        tame_witnesses=w,
        tame_possible=bool(w),
        wild_necessary_ok=wild_divisibility(K, d),
        shape_decompositions=shape.pairs,
        small_case=shape.small_case,
    )


def is_sophie_germain(d: int) -> bool:
    return d >= 2 and is_prime(d) and is_prime(2 * d + 1)


def mod3_family_check(d: int) -> bool:
    """True iff the prime d is 1 mod 3; then 3 | 2d + 1 is checked, not assumed."""
    if not is_prime(d):
        raise InputRangeError(f"{d} is not prime")
    if d % 3 != 1:
        return False
    if (2 * d + 1) % 3 != 0 or is_sophie_germain(d):
        raise ConsistencyError(f"prime {d} = 1 mod 3 but 2d+1 = {2 * d + 1} escaped the mod-3 argument")
    return True


def non_sophie_germain_primes(limit: int) -> list[int]:
    """Primes d <= limit with 2d + 1 composite."""
    return [d for d in range(2, limit + 1) if is_prime(d) and not is_prime(2 * d + 1)]


def av_verdict(K: LocalFieldParams, d: int) -> AVVerdict:
    """Forced reducibility of the 2d-dimensional Tate module of a d-dimensional abelian variety.

    Emits ReducibleForced only when d is prime, 2d + 1 is composite and
    p is not 2 or 3, after checking that the tame and the wild branch
    both rule out an irreducible 2d-dimensional representation.
    """
    if d < 1:
        raise InputRangeError("d must be >= 1")
    n = 2 * d
    witnesses = tame_witnesses(K, n)
    divides = wild_divisibility(K, n)

    failed = []
    if not is_prime(d):
        failed.append(Reason("d_not_prime", f"d = {d} is not prime"))
    if is_prime(2 * d + 1):
        failed.append(Reason("sophie_germain", f"2d + 1 = {2 * d + 1} is prime"))
    if K.p in (2, 3):
        failed.append(Reason("p_excluded", f"residue characteristic p = {K.p} is 2 or 3"))
    if failed:
        return AVVerdict(d, n, Conclusion.NOT_DECIDED, bool(witnesses), witnesses, divides, tuple(failed))

    shape = tame_shape_decompositions(n, K.p)
    if witnesses or shape.pairs:
        raise ConsistencyError(
            f"tame branch does not close for d={d}, q={K.q}: witnesses {witnesses}, shapes {shape.pairs}"
        )
    wild_primes = sorted(e + 1 for e in divisors(n) if is_prime(e + 1))
    if divides or K.p in wild_primes:
        raise ConsistencyError(f"wild branch does not close for d={d}, p={K.p}")

    reasons = (
        Reason(
            "tame_excluded",
            f"{n} = (v-1)v^a has no solution with v an odd prime != {K.p} "
            f"(a = 0 needs v = {n + 1}, composite; a >= 1 forces v = {d} and v - 1 = 2, false), "
            f"and no m prime to p with phi(m) = {n} has q = {K.q} as generator",
        ),
        Reason(
            "wild_excluded",
            f"(p-1) | {n} only for p in {wild_primes}; p = {K.p} is not among them",
        ),
    )
    return AVVerdict(d, n, Conclusion.REDUCIBLE_FORCED, False, (), False, reasons)


def witness_is_sound(K: LocalFieldParams, d: int, m: int) -> bool:
    """Independent re-check of the three defining conditions of a tame witness."""
    return gcd(m, K.p) == 1 and euler_phi(m) == d and multiplicative_order(K.q, m) == euler_phi(m)
