"""Elementary multiplicative number theory on machine-size integers.

The public functions accept integers in ``[0, 2**64)``; intermediate
values are plain Python ints and may be larger.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

from .errors import InputRangeError, NotCoprimeError
from .sieve import _small_sieve, primes_up_to, prime_pi  # noqa: F401  (re-export)

MAX_INPUT = (1 << 64) - 1
TRIAL_LIMIT = 10**6

# Deterministic for n < 3.3 * 10**24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

Factorization = tuple[tuple[int, int], ...]


def _check(n: int, lo: int = 1) -> None:
    if not lo <= n <= MAX_INPUT:
        raise InputRangeError(f"{n} is outside [{lo}, 2**64)")


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in _small_sieve(TRIAL_LIMIT))


def _miller_rabin(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**64."""
    _check(n, lo=0)
    return _miller_rabin(n)


def _brent(n: int) -> int:
    """A non-trivial factor of the odd composite n (Pollard rho, Brent's cycle)."""
    for c in range(1, n):
        y, r, g, z = 2, 1, 1, 1
        batch = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    z = z * abs(x - y) % n
                g = gcd(z, n)
                k += batch
            r *= 2
        if g == n:
            # the batch overshot; step one at a time from the saved point
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if _miller_rabin(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _brent(n)
    _split(f, out)
    _split(n // f, out)


def factorize(n: int) -> Factorization:
    """Prime factorization of n as sorted ``(prime, exponent)`` pairs.

    Trial division by primes below 10**6, then Pollard-Brent on whatever
    composite cofactor is left.

    >>> factorize(15)
    ((3, 1), (5, 1))
    >>> factorize(1)
    ()
    """
    _check(n)
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
        if p == 997 and n > 1 and _miller_rabin(n):
            break
    _split(n, found)
    return tuple(sorted(found.items()))


def divisors(n: int) -> list[int]:
    """Sorted list of the positive divisors of n."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    _check(n)
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    _check(n)
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def multiplicative_order(q: int, m: int) -> int:
    """Order of q in (Z/mZ)^x.

    Starts from phi(m) and strips prime factors while the power stays 1,
    so the cost is O(log^2 phi(m)) modular powers.
    """
    _check(m)
    if gcd(q, m) != 1:
        raise NotCoprimeError(f"gcd({q}, {m}) != 1")
    if m == 1:
        return 1
    q %= m
    order = euler_phi(m)
    for p, _ in factorize(order):
        while order % p == 0 and pow(q, order // p, m) == 1:
            order //= p
    return order


def is_generator(q: int, m: int) -> bool:
    """True iff q generates (Z/mZ)^x."""
    return multiplicative_order(q, m) == euler_phi(m)


def units_group_cyclic(m: int) -> bool:
    """True iff m is 1, 2, 4, v**k or 2*v**k for an odd prime v."""
    _check(m)
    if m in (1, 2, 4):
        return True
    if m % 2 == 0:
        m //= 2
        if m % 2 == 0:
            return False
    return len(factorize(m)) == 1


def inverse_totient(d: int) -> list[int]:
    """All m with euler_phi(m) == d, sorted.

    Every such m is a product of prime powers p**k with distinct p and
    (p - 1) * p**(k - 1) dividing d, so the candidates are the primes
    e + 1 for divisors e of d. Primes are consumed in decreasing order so
    each product is built exactly once.

    >>> inverse_totient(8)
    [15, 16, 20, 24, 30]
    """
    _check(d)
    candidates = sorted(
        (e + 1 for e in divisors(d) if _miller_rabin(e + 1)), reverse=True
    )
    found: list[int] = []

    def build(rest: int, start: int, acc: int) -> None:
        if rest == 1:
            found.append(acc)
        for i in range(start, len(candidates)):
            p = candidates[i]
            if rest % (p - 1):
                continue
            rest_p, pk = rest // (p - 1), p
            while True:
                build(rest_p, i + 1, acc * pk)
                if rest_p % p:
                    break
                rest_p //= p
                pk *= p

    build(d, 0, 1)
    return sorted(found)


@dataclass(frozen=True)
class CyclotomicPoly:
    """Integer coefficients of Phi_m, lowest degree first."""

    m: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Quotient of integer polynomials (ascending) by a monic divisor; must be exact."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dn]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("polynomial division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> CyclotomicPoly:
    """Phi_m by exact division of X**m - 1 by Phi_d for every proper divisor d."""
    _check(m)
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _exact_div(poly, cyclotomic_poly(d).coeffs)
    return CyclotomicPoly(m, tuple(poly))


def ramanujan_sum(m: int, k: int) -> int:
    """c_m(k) by Hoelder's formula mu(m/g) * phi(m) / phi(m/g), g = gcd(k, m)."""
    _check(m)
    g = gcd(k, m)
    n = m // g
    return moebius(n) * euler_phi(m) // euler_phi(n)


def product_of_factorization(fac: Factorization) -> int:
    return prod(p**e for p, e in fac)
