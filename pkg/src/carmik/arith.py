"""Arbitrary-precision integer primitives.

Primality policy
----------------
Below ``KERNEL_BOUND`` (2**63) primality is decided exactly by the kernel
backend's deterministic Miller-Rabin witness set.  At or above the bound,
``is_prime`` runs Miller-Rabin with the fixed, documented base set
``LARGE_BASES`` (the first 25 primes): a probable-prime method, but a
reproducible one, and the range this package actually exercises is
cross-checked exactly by the test suite.  ``exhaustive=True`` forces trial
division instead, for independent verification at small sizes.

Factorization is trial division over a cached small-prime list followed by
Brent's cycle method, recursing on cofactors.  Work is bounded by a digit
cap and an iteration budget; exceeding either raises
``FactorizationEffortError`` rather than ever returning a wrong answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from ._kernels import backend
from .errors import DomainError, EmptyRangeError, FactorizationEffortError

KERNEL_BOUND = 2**63

#: Miller-Rabin bases used for operands >= KERNEL_BOUND.
LARGE_BASES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)

#: Default digit cap for factorization effort.
DEFAULT_FACTOR_DIGITS = 64

_TRIAL_LIMIT = 20_000
_trial_primes: list[int] | None = None


def _small_primes() -> list[int]:
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = backend.primes_in_range(2, _TRIAL_LIMIT)
    return _trial_primes


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its complete prime factorization.

    ``factors`` is a tuple of (prime, exponent) pairs with strictly
    increasing primes; it is empty exactly when value == 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 0
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise DomainError("factors must be ascending primes with positive exponents")
            prev = p
            prod *= p**e
        if prod != self.value or self.value < 1:
            raise DomainError(f"factorization does not multiply back to {self.value}")

    @classmethod
    def of(cls, n: int | FactoredInteger, effort_digits: int | None = None) -> FactoredInteger:
        if isinstance(n, FactoredInteger):
            return n
        return factorize(n, effort_digits=effort_digits)

    @classmethod
    def from_factor_map(cls, factor_map: dict[int, int]) -> FactoredInteger:
        items = tuple(sorted(factor_map.items()))
        value = math.prod(p**e for p, e in items)
        return cls(value, items)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __int__(self) -> int:
        return self.value


def is_prime(n: int, *, exhaustive: bool = False) -> bool:
    """Exact below 2**63; reproducible probable-prime above (see module doc)."""
    if n < 2:
        return False
    if exhaustive:
        if n % 2 == 0:
            return n == 2
        f = 3
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    if n < KERNEL_BOUND:
        return backend.is_prime_u64(n)
    return _miller_rabin_large(n)


def _miller_rabin_large(n: int) -> bool:
    for p in LARGE_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in LARGE_BASES:
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


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending; both endpoints included."""
    if lo > hi:
        raise EmptyRangeError(f"empty range: lo={lo} > hi={hi}")
    if hi >= KERNEL_BOUND:
        raise FactorizationEffortError(f"sieving beyond {KERNEL_BOUND} is not supported")
    return backend.primes_in_range(max(lo, 0), hi)


def factorize(n: int, effort_digits: int | None = None) -> FactoredInteger:
    """Complete prime factorization of n >= 1.

    Raises FactorizationEffortError when n has more than ``effort_digits``
    decimal digits (default DEFAULT_FACTOR_DIGITS) or when the rho stage
    exceeds its iteration budget.
    """
    if n == 0:
        raise DomainError("0 has no prime factorization")
    if n < 0:
        raise DomainError("negative integers are not in the domain")
    cap = DEFAULT_FACTOR_DIGITS if effort_digits is None else effort_digits
    if len(str(n)) > cap:
        raise FactorizationEffortError(
            f"{len(str(n))}-digit operand exceeds the {cap}-digit effort cap"
        )
    factors: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    if m > 1:
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
            # Below the square of the trial bound any survivor is prime.
            factors[m] = factors.get(m, 0) + 1
        else:
            _factor_hard(m, factors)
    return FactoredInteger.from_factor_map(factors) if factors else FactoredInteger(1, ())


def _factor_hard(m: int, factors: dict[int, int]) -> None:
    """Split composite m (no factors below _TRIAL_LIMIT) with Brent's method."""
    stack = [m]
    while stack:
        v = stack.pop()
        if is_prime(v):
            factors[v] = factors.get(v, 0) + 1
            continue
        root = math.isqrt(v)
        if root * root == v:
            stack.extend((root, root))
            continue
        if v < KERNEL_BOUND:
            d = backend.brent_factor(v)
        else:
            d = _brent_big(v)
        stack.extend((d, v // d))


_BRENT_BIG_BUDGET = 2_000_000


def _brent_big(n: int) -> int:
    """Brent's cycle method for odd composite n above the kernel bound."""
    for c in range(1, 64):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        steps = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            steps += r
            if steps > _BRENT_BIG_BUDGET:
                raise FactorizationEffortError(
                    f"rho budget exhausted while splitting a {len(str(n))}-digit composite"
                )
            r *= 2
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g
    raise FactorizationEffortError("rho failed to split after 63 polynomial offsets")


def carmichael_lambda(n: int | FactoredInteger) -> int:
    """lambda(n): the exponent of the unit group mod n.

    Prime-power rules: lambda(p**e) = phi(p**e) for odd p and for 2, 4;
    lambda(2**e) = 2**(e-2) for e >= 3; combined with lcm.
    """
    fi = FactoredInteger.of(n)
    if fi.value < 1:
        raise DomainError("lambda is defined for n >= 1")
    result = 1
    for p, e in fi.factors:
        if p == 2 and e >= 3:
            block = 2 ** (e - 2)
        else:
            block = p ** (e - 1) * (p - 1)
        result = math.lcm(result, block)
    return result


def euler_phi(n: int | FactoredInteger) -> int:
    """Euler's totient, multiplicatively from the factorization."""
    fi = FactoredInteger.of(n)
    result = 1
    for p, e in fi.factors:
        result *= p ** (e - 1) * (p - 1)
    return result


def largest_prime_factor(y: int | FactoredInteger) -> int:
    fi = FactoredInteger.of(y)
    if fi.value < 2:
        raise DomainError("largest prime factor needs y >= 2")
    return fi.factors[-1][0]


def gcd_all(values: Iterable[int]) -> int:
    vals = list(values)
    if not vals:
        raise DomainError("gcd of an empty list is undefined")
    return math.gcd(*vals) if len(vals) > 1 else abs(vals[0])


def lcm_all(values: Iterable[int]) -> int:
    vals = list(values)
    if not vals:
        raise DomainError("lcm of an empty list is undefined")
    if any(v < 1 for v in vals):
        raise DomainError("lcm requires values >= 1")
    return math.lcm(*vals)
