"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are kept in the power basis 1, zeta, ..., zeta**(phi(m)-1),
reduced modulo Phi_m.  Internally a coefficient vector is stored as a
tuple of integer numerators over one positive common denominator, with
gcd(numerators, denominator) == 1; this makes the representation
canonical, so equality and hashing are plain tuple comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from numbers import Rational
from typing import Optional, Union

import numpy as np

from .errors import ConsistencyError, FieldMismatchError, NotCoprimeError
from .ntcore import cyclotomic_poly, euler_phi

MAX_PHI = 1024
_INT64_SAFE = 1 << 62

Scalar = Union[int, Fraction]


def _vec_mat(vec: tuple[int, ...], mat_np: np.ndarray, mat_rows, mat_max: int):
    """Integer row vector times integer matrix, exact.

    Uses int64 when the worst-case magnitude provably fits, else Python ints.
    """
    n = len(vec)
    vmax = max(map(abs, vec), default=0)
    if vmax * mat_max * max(n, 1) < _INT64_SAFE:
        return tuple((np.asarray(vec, dtype=np.int64) @ mat_np).tolist())
    width = len(mat_rows[0]) if mat_rows else 0
    out = [0] * width
    for c, row in zip(vec, mat_rows):
        if c:
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return tuple(out)


class CyclotomicField:
    """Precomputed tables for Q(zeta_m); obtain instances via ``field(m)``."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("conductor must be >= 1")
        phi = euler_phi(m)
        if phi > MAX_PHI:
            raise ValueError(f"phi({m}) = {phi} exceeds the supported bound {MAX_PHI}")
        self.m = m
        self.phi = phi
        self.poly = cyclotomic_poly(m).coeffs
        self.units = tuple(x for x in range(m) if gcd(x, m) == 1)

        # zeta**k for 0 <= k < m in the power basis: shift, then fold the
        # zeta**phi term back with zeta**phi = -sum(poly[i] zeta**i).
        powers = []
        cur = [1] + [0] * (phi - 1)
        for _ in range(m):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * self.poly[i]
        self.powers = tuple(powers)
        self.powers_np = np.array(powers, dtype=np.int64).reshape(m, phi)
        self.power_max = int(np.abs(self.powers_np).max())

        # reduction rows for zeta**phi ... zeta**(2 phi - 2)
        self.red_rows = tuple(powers[(phi + j) % m] for j in range(phi - 1))
        self.red_np = np.array(self.red_rows, dtype=np.int64).reshape(phi - 1, phi)
        self.red_max = int(np.abs(self.red_np).max()) if phi > 1 else 0

    def reduce_product(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        """Coefficients of a*b mod Phi_m for integer vectors a, b."""
        phi = self.phi
        bound = (
            max(map(abs, a)) * max(map(abs, b)) * phi * (1 + (phi - 1) * self.red_max)
        )
        if bound < _INT64_SAFE:
            conv = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
            return tuple((conv[:phi] + conv[phi:] @ self.red_np).tolist())
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        for c, row in zip(conv[phi:], self.red_rows):
            if c:
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return tuple(out)

    @lru_cache(maxsize=256)
    def conj_matrix(self, s: int) -> tuple[np.ndarray, tuple]:
        """Matrix of zeta -> zeta**s on the power basis (row i is the image of zeta**i)."""
        idx = [(s * i) % self.m for i in range(self.phi)]
        rows = tuple(self.powers[i] for i in idx)
        return self.powers_np[idx], rows

    @cached_property
    def trace_matrix(self) -> tuple[np.ndarray, tuple, int]:
        """Row i is sum over units s of zeta**(s*i), i.e. the sum of all conjugates of zeta**i."""
        acc = np.zeros((self.phi, self.phi), dtype=np.int64)
        base = np.arange(self.phi)
        for s in self.units:
            acc += self.powers_np[(s * base) % self.m]
        rows = tuple(tuple(r) for r in acc.tolist())
        return acc, rows, int(np.abs(acc).max())

    def __repr__(self) -> str:
        return f"CyclotomicField({self.m})"


@lru_cache(maxsize=None)
def field(m: int) -> CyclotomicField:
    return CyclotomicField(m)


class CycloElt:
    """An element of Q(zeta_m).

    Construct from a coefficient sequence of length phi(m) in the power
    basis, or use ``zeta_power``/``CycloElt.rational``.  Arithmetic with
    ints and Fractions is supported; mixing conductors raises
    FieldMismatchError.
    """

    __slots__ = ("m", "_num", "_den", "_hash")

    def __init__(self, m: int, coeffs):
        fld = field(m)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != fld.phi:
            raise ValueError(f"expected {fld.phi} coefficients for m={m}, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        self._set(m, tuple(int(c * den) for c in coeffs), den)

    def _set(self, m: int, num: tuple[int, ...], den: int) -> None:
        g = gcd(den, *num)
        if g > 1:
            num = tuple(x // g for x in num)
            den //= g
        self.m = m
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _make(cls, m: int, num: tuple[int, ...], den: int = 1) -> CycloElt:
        obj = cls.__new__(cls)
        obj._set(m, num, den)
        return obj

    @classmethod
    def rational(cls, m: int, value: Scalar) -> CycloElt:
        value = Fraction(value)
        num = (value.numerator,) + (0,) * (field(m).phi - 1)
        return cls._make(m, num, value.denominator)

    @classmethod
    def zero(cls, m: int) -> CycloElt:
        return cls.rational(m, 0)

    @classmethod
    def one(cls, m: int) -> CycloElt:
        return cls.rational(m, 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def _is_const(self) -> bool:
        return not any(self._num[1:])

    def _coerce(self, other) -> Optional[CycloElt]:
        if isinstance(other, CycloElt):
            if other.m != self.m:
                raise FieldMismatchError(f"Q(zeta_{self.m}) vs Q(zeta_{other.m})")
            return other
        if isinstance(other, (int, Rational)):
            return CycloElt.rational(self.m, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._den == other._den:
            return CycloElt._make(self.m, tuple(map(int.__add__, self._num, other._num)), self._den)
        d1, d2 = self._den, other._den
        num = tuple(a * d2 + b * d1 for a, b in zip(self._num, other._num))
        return CycloElt._make(self.m, num, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> CycloElt:
        return CycloElt._make(self.m, tuple(-x for x in self._num), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def _scale(self, num: int, den: int) -> CycloElt:
        if den < 0:
            num, den = -num, -den
        return CycloElt._make(self.m, tuple(x * num for x in self._num), self._den * den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other._is_const():
            return self._scale(other._num[0], other._den)
        if self._is_const():
            return other._scale(self._num[0], self._den)
        num = field(self.m).reduce_product(self._num, other._num)
        return CycloElt._make(self.m, num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> CycloElt:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self._is_const():
            return CycloElt.rational(self.m, Fraction(self._den, self._num[0]))
        fld = field(self.m)
        r0 = [Fraction(c) for c in fld.poly]
        r1 = _trim([Fraction(x, self._den) for x in self._num])
        s0: list[Fraction] = [Fraction(0)]
        s1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        if not r1 or r1[0] == 0:
            raise ConsistencyError(f"{self!r} shares a factor with Phi_{self.m}")
        inv = [c / r1[0] for c in s1]
        _, inv = _poly_divmod(inv, [Fraction(c) for c in fld.poly])
        inv = inv + [Fraction(0)] * (fld.phi - len(inv))
        result = CycloElt(self.m, inv[: fld.phi])
        if result * self != 1:
            raise ConsistencyError("inverse check failed")
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other._is_const():
            if other._num[0] == 0:
                raise ZeroDivisionError("division by zero")
            return self._scale(other._den, other._num[0])
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e: int) -> CycloElt:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElt.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloElt):
            return self.m == other.m and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Rational)):
            value = Fraction(other)
            return (
                self._is_const()
                and self._den == value.denominator
                and self._num[0] == value.numerator
            )
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self._num, self._den))
        return self._hash

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"CycloElt(m={self.m}: {body})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [], a
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(quo) - 1, -1, -1):
        c = a[i + len(b) - 1] / lead
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(quo), _trim(a[: len(b) - 1])


def zeta_power(m: int, k: int) -> CycloElt:
    """zeta_m**k in canonical form; k is taken mod m."""
    fld = field(m)
    return CycloElt._make(m, fld.powers[k % m], 1)


def galois_conj(a: CycloElt, s: int) -> CycloElt:
    """Apply the automorphism zeta -> zeta**s."""
    if gcd(s, a.m) != 1:
        raise NotCoprimeError(f"gcd({s}, {a.m}) != 1")
    fld = field(a.m)
    mat_np, rows = fld.conj_matrix(s % a.m)
    num = _vec_mat(a.numerators, mat_np, rows, fld.power_max)
    return CycloElt._make(a.m, num, a.denominator)


def field_trace(a: CycloElt) -> Fraction:
    """Sum of galois_conj(a, s) over all units s mod m.

    The conjugates are summed through the precomputed table of
    sum_s zeta**(s*i), which is the same sum reorganised by linearity.
    """
    fld = field(a.m)
    mat_np, rows, mmax = fld.trace_matrix
    num = _vec_mat(a.numerators, mat_np, rows, mmax)
    if any(num[1:]):
        raise ConsistencyError(f"trace of {a!r} is not rational")
    return Fraction(num[0], a.denominator)


def is_rational(a: CycloElt) -> Optional[Fraction]:
    """The rational value of a, or None if a is not in Q."""
    if any(a.numerators[1:]):
        return None
    return Fraction(a.numerators[0], a.denominator)
