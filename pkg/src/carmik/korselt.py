"""Carmichael certification, the K-invariant, and a brute-force census.

The certifier is factorization-based: n qualifies iff it is composite,
squarefree, and p - 1 | n - 1 for every prime p | n.  The census scans
every candidate the same way over a smallest-prime-factor table.  The
Fermat condition (a**n == a mod n for all a) is deliberately kept as an
independent oracle for tests, never as the primary method.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import arith
from ._kernels import backend
from .errors import DomainError, InternalConsistencyError

__all__ = [
    "CarmichaelCertificate",
    "KorseltRejection",
    "is_carmichael",
    "k_invariant",
    "census",
    "fermat_carmichael_oracle",
    "fermat_probe",
]


@dataclass(frozen=True)
class CarmichaelCertificate:
    """Positive Korselt verdict: n, its factorization, K, and the p-1 | n-1
    checks that were performed (all of which hold)."""

    n: int
    factors: arith.FactoredInteger
    k_invariant: int
    checks: tuple[tuple[int, bool], ...]

    def __post_init__(self):
        if self.n % 2 == 0 or self.factors.omega < 3 or not self.factors.is_squarefree():
            raise InternalConsistencyError(f"malformed certificate for {self.n}")
        if any(not flag for _, flag in self.checks) or self.k_invariant % 2 != 0:
            raise InternalConsistencyError(f"malformed certificate for {self.n}")

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class KorseltRejection:
    """Negative verdict carrying the first failed condition."""

    n: int
    reason: str
    prime: int | None = None

    def __bool__(self) -> bool:
        return False

    def describe(self) -> str:
        if self.reason == "prime":
            return f"{self.n} is prime"
        if self.reason == "not squarefree":
            return f"{self.n} is divisible by {self.prime}**2"
        if self.reason == "divisibility":
            return f"{self.prime} | {self.n} but {self.prime - 1} does not divide {self.n - 1}"
        return f"{self.n}: {self.reason}"


def k_invariant(factors: arith.FactoredInteger | list[int] | tuple[int, ...]) -> int:
    """gcd of p - 1 over the listed primes.

    Accepts a squarefree FactoredInteger or a bare prime list.  A single
    prime yields p - 1.
    """
    if isinstance(factors, arith.FactoredInteger):
        if not factors.is_squarefree():
            raise DomainError("K is defined for squarefree integers only")
        primes = factors.primes
    else:
        primes = tuple(factors)
    if not primes:
        raise DomainError("K needs at least one prime")
    return arith.gcd_all([p - 1 for p in primes])


def is_carmichael(
    n: int, effort_digits: int | None = None
) -> CarmichaelCertificate | KorseltRejection:
    """Korselt verdict for n >= 2.

    Returns a truthy CarmichaelCertificate or a falsy KorseltRejection whose
    reason names the first failed condition (prime input, a repeated prime,
    or the prime at which p - 1 | n - 1 breaks).
    """
    if n < 2:
        raise DomainError("Carmichael candidates start at 2")
    if arith.is_prime(n):
        return KorseltRejection(n, "prime")
    factors = arith.factorize(n, effort_digits=effort_digits)
    checks = []
    for p, e in factors.factors:
        if e > 1:
            return KorseltRejection(n, "not squarefree", prime=p)
        if (n - 1) % (p - 1) != 0:
            return KorseltRejection(n, "divisibility", prime=p)
        checks.append((p, True))
    return CarmichaelCertificate(
        n=n,
        factors=factors,
        k_invariant=k_invariant(factors),
        checks=tuple(checks),
    )


def census(limit: int, nu_filter: int | None = None) -> list[tuple[int, int]]:
    """All Carmichael numbers n <= limit with their K values, ascending.

    With nu_filter, only rows with K == nu_filter are returned.
    """
    if limit < 2:
        raise DomainError("census needs limit >= 2")
    if limit >= arith.KERNEL_BOUND:
        raise DomainError("census beyond the 64-bit kernel bound is not supported")
    rows = backend.carmichael_census(limit)
    if nu_filter is not None:
        rows = [(n, k) for n, k in rows if k == nu_filter]
    return rows


def fermat_carmichael_oracle(n: int) -> bool:
    """Independent oracle: n is composite and a**n == a (mod n) for ALL a < n.

    Exhaustive over every base, so only sensible for small n; used by the
    test suite to cross-check the Korselt path.
    """
    if n < 2 or arith.is_prime(n):
        return False
    return backend.fermat_all_bases(n)


def fermat_probe(n: int, bases: int = 200, seed: int = 0) -> bool:
    """a**n == a (mod n) for ``bases`` seeded-random a in [2, n - 2]."""
    rng = random.Random(seed)
    for _ in range(bases):
        a = rng.randrange(2, max(n - 1, 3))
        if pow(a, n, n) != a:
            return False
    return True
