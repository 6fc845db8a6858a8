"""Harvesting pipeline for the two coupled prime families.

Stages, in order: build the window product J; enumerate its divisors g
with a fixed prime count; bucket primes q = g*j + 1 by the smallest
admissible j; pick the fattest bucket j0; split it into two disjoint prime
sets Q1/Q2 with products L1/L2; search the coupled prime families P1/P2 of
the form p = d*k_i*nu + 1 for d | L_i; and verify the coprimality ledger
that pins gcd(p1 - 1, p2 - 1) to exactly nu.

Everything is deterministic: buckets assign each g at its smallest j,
ties in bucket selection break to the smallest j, the Q-split takes
ascending primes, and the k-search prefers larger families then smaller k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import arith, zerosum
from .errors import (
    ConfigError,
    DomainError,
    InternalConsistencyError,
    SearchExhaustedError,
)

__all__ = [
    "ConstructionConfig",
    "RBucket",
    "RMap",
    "ConstructionInstance",
    "BoundReport",
    "build_J",
    "enumerate_g",
    "populate_R",
    "select_j0",
    "split_Q",
    "squarefree_product",
    "search_P",
    "verify_pairwise_gcd",
    "bound_diagnostics",
]


@dataclass(frozen=True)
class ConstructionConfig:
    """Parameters of one construction run.

    omega_g and j_cap default to 0, meaning "derive from z": floor(ln z)
    (at least 1) for omega_g and ceil((ln z)**(2A)) for j_cap.  nu must be
    even: every prime factor of a certified number is odd, so the invariant
    gcd(p - 1) is always even.
    """

    z: int
    nu: int
    omega_g: int = 0
    omega_d: int = 1
    j_cap: int = 0
    k_cap: int = 10_000
    q_subset_size: int = 1
    exponent_a: float = 2.0
    min_count: int = 1
    factor_digits: int = arith.DEFAULT_FACTOR_DIGITS

    def __post_init__(self):
        if self.z < 4:
            raise ConfigError("z must be at least 4")
        if self.nu < 2 or self.nu % 2 != 0:
            raise ConfigError("nu must be an even integer >= 2")
        if self.omega_g < 0 or self.omega_d < 1:
            raise ConfigError("omega_g must be >= 0 (0 = derive), omega_d >= 1")
        if self.j_cap < 0 or self.k_cap < 1 or self.q_subset_size < 1 or self.min_count < 1:
            raise ConfigError("caps and sizes must be positive")
        if self.exponent_a <= 0:
            raise ConfigError("the conjectural exponent must be positive")

    @property
    def resolved_omega_g(self) -> int:
        return self.omega_g if self.omega_g else max(1, int(math.log(self.z)))

    @property
    def resolved_j_cap(self) -> int:
        if self.j_cap:
            return self.j_cap
        return math.ceil(math.log(self.z) ** (2 * self.exponent_a))


@dataclass(frozen=True)
class RBucket:
    """Primes q = g*j + 1 sharing the same j, with their g values."""

    j: int
    members: tuple[tuple[int, int], ...]  # (q, g), ascending by q

    def __len__(self) -> int:
        return len(self.members)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.members)


@dataclass(frozen=True)
class RMap:
    """Bucket map j -> RBucket plus the g values that never produced a prime.

    Misses are data, not errors: each records an unwitnessed g at this j cap.
    """

    buckets: dict[int, RBucket]
    misses: tuple[int, ...]


def build_J(z: int) -> arith.FactoredInteger:
    """Product of the primes in the window [ceil(z/2), z]."""
    if z < 2:
        raise DomainError("the prime window needs z >= 2")
    lo = (z + 1) // 2
    primes = arith.primes_in_range(lo, z)
    if not primes:
        raise DomainError(f"no primes in [{lo}, {z}]")
    return arith.FactoredInteger.from_factor_map({p: 1 for p in primes})


def enumerate_g(j_product: arith.FactoredInteger, omega_g: int) -> list[int]:
    """Squarefree divisors of J with exactly omega_g prime factors, ascending.

    The count is binomial(omega(J), omega_g); an oversized omega_g yields an
    empty list rather than an error.
    """
    if omega_g < 1:
        raise DomainError("omega_g must be >= 1")
    return sorted(math.prod(c) for c in combinations(j_product.primes, omega_g))


def populate_R(
    j_product: arith.FactoredInteger, omega_g: int, j_cap: int
) -> RMap:
    """Bucket each q = g*j + 1 at g's smallest admissible j <= j_cap.

    Admissible means gcd(j, g) = 1 and g*j + 1 prime.  Each g contributes at
    most one q; a q already claimed by an earlier g is skipped so that every
    prime appears in exactly one bucket (the decomposition of q - 1 is not
    always unique, so first-come by ascending g canonicalizes it).
    """
    if j_cap < 1:
        raise DomainError("j_cap must be >= 1")
    assignments: dict[int, list[tuple[int, int]]] = {}
    taken: set[int] = set()
    misses = []
    for g in enumerate_g(j_product, omega_g):
        for j in range(1, j_cap + 1):
            if math.gcd(j, g) != 1:
                continue
            q = g * j + 1
            if q in taken or not arith.is_prime(q):
                continue
            assignments.setdefault(j, []).append((q, g))
            taken.add(q)
            break
        else:
            misses.append(g)
    buckets = {
        j: RBucket(j=j, members=tuple(sorted(members)))
        for j, members in assignments.items()
    }
    return RMap(buckets=buckets, misses=tuple(misses))


def select_j0(rmap: RMap) -> tuple[int, RBucket]:
    """The fattest bucket; ties break to the smallest j."""
    if not rmap.buckets:
        raise DomainError("no buckets to select from")
    j0 = min(rmap.buckets, key=lambda j: (-len(rmap.buckets[j]), j))
    return j0, rmap.buckets[j0]


def split_Q(bucket: RBucket, size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """First `size` primes ascending as Q1, the next `size` as Q2."""
    if size < 1:
        raise DomainError("subset size must be >= 1")
    primes = bucket.primes
    if len(primes) < 2 * size:
        raise SearchExhaustedError(
            f"bucket j={bucket.j} holds {len(primes)} primes; {2 * size} needed",
            achieved=len(primes),
            required=2 * size,
        )
    return primes[:size], primes[size : 2 * size]


def squarefree_product(primes: tuple[int, ...]) -> arith.FactoredInteger:
    return arith.FactoredInteger.from_factor_map({p: 1 for p in primes})


def search_P(
    l_own: arith.FactoredInteger,
    l_other: arith.FactoredInteger,
    nu: int,
    omega_d: int,
    k_cap: int,
    min_count: int,
    k1: int | None = None,
) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Search k and the prime family {p = d*k*nu + 1 : d | l_own, omega(d) = omega_d}.

    First mode (k1 is None) tries k = nu*k' + 1 for k' = 1..k_cap; second
    mode tries k = nu*k'*k1 + 1, which is automatically coprime to both nu
    and k1.  Coprimality to L1*L2 is checked explicitly for every candidate
    k.  Among candidates reaching min_count hits, the largest family wins,
    ties to the smallest k.  Returns (k, ((p, d), ...)) with d ascending.
    """
    if nu % 2 != 0:
        raise DomainError("nu must be even")
    ll = l_own.value * l_other.value
    if k1 is not None and math.gcd(k1, nu * ll) != 1:
        raise DomainError("supplied k1 is not coprime to nu*L1*L2")
    divisors = sorted(
        math.prod(c) for c in combinations(l_own.primes, omega_d)
    )
    if not divisors:
        raise SearchExhaustedError(
            f"no divisor of {l_own.value} has {omega_d} prime factors",
            omega_d=omega_d,
            available=l_own.omega,
        )
    best: tuple[int, tuple[tuple[int, int], ...]] | None = None
    best_any = (0, 0)  # (size, k) over every candidate, for diagnostics
    for k_step in range(1, k_cap + 1):
        k = nu * k_step + 1 if k1 is None else nu * k_step * k1 + 1
        if math.gcd(k, ll) != 1:
            continue
        hits = tuple(
            (d * k * nu + 1, d) for d in divisors if arith.is_prime(d * k * nu + 1)
        )
        if len(hits) > best_any[0]:
            best_any = (len(hits), k)
        if len(hits) >= min_count and (best is None or len(hits) > len(best[1])):
            best = (k, hits)
            if len(hits) == len(divisors):
                break  # no candidate can beat a full family
    if best is None:
        raise SearchExhaustedError(
            f"no k <= {k_cap} produced {min_count} primes over {len(divisors)} divisors",
            k_cap=k_cap,
            min_count=min_count,
            divisors=len(divisors),
            best_size=best_any[0],
            best_k=best_any[1],
        )
    return best


def verify_pairwise_gcd(
    p1: tuple[tuple[int, int], ...],
    p2: tuple[tuple[int, int], ...],
    nu: int,
) -> tuple[bool, tuple[int, int, int] | None]:
    """Check gcd(p1 - 1, p2 - 1) == nu for every cross pair.

    Returns (True, None) or (False, (p1, p2, gcd)) for the first offending
    pair in index order.
    """
    if not p1 or not p2:
        raise DomainError("both families must be nonempty")
    for q1, _ in p1:
        for q2, _ in p2:
            g = math.gcd(q1 - 1, q2 - 1)
            if g != nu:
                return False, (q1, q2, g)
    return True, None


@dataclass(frozen=True)
class ConstructionInstance:
    """Everything one harvest produced, with its coprimality ledger."""

    config: ConstructionConfig
    j_product: arith.FactoredInteger
    j0: int
    q1: tuple[int, ...]
    q2: tuple[int, ...]
    l1: arith.FactoredInteger
    l2: arith.FactoredInteger
    k1: int
    k2: int
    p1: tuple[tuple[int, int], ...]  # (p, d), d | l1
    p2: tuple[tuple[int, int], ...]  # (p, d), d | l2

    def verify(self) -> None:
        """Assert the full invariant ledger; raises on the first violation."""
        cfg = self.config
        nu = cfg.nu
        if set(self.q1) & set(self.q2):
            raise InternalConsistencyError("Q1 and Q2 intersect")
        if self.l1.value != math.prod(self.q1) or self.l2.value != math.prod(self.q2):
            raise InternalConsistencyError("L_i is not the product of Q_i")
        window_lo = (cfg.z + 1) // 2
        for q in self.q1 + self.q2:
            if not arith.is_prime(q):
                raise InternalConsistencyError(f"{q} is not prime")
            g, rem = divmod(q - 1, self.j0)
            if rem or math.gcd(self.j0, g) != 1:
                raise InternalConsistencyError(f"{q} - 1 != g * {self.j0} with (j, g) = 1")
            gf = arith.factorize(g)
            if not gf.is_squarefree() or gf.omega != cfg.resolved_omega_g:
                raise InternalConsistencyError(f"cofactor of {q} has the wrong shape")
            if any(not (window_lo <= r <= cfg.z) for r in gf.primes):
                raise InternalConsistencyError(f"cofactor of {q} leaves the window")
        ll = self.l1.value * self.l2.value
        for label, k in (("k1", self.k1), ("k2", self.k2)):
            if math.gcd(k, nu * ll) != 1:
                raise InternalConsistencyError(f"{label} is not coprime to nu*L1*L2")
        if math.gcd(self.k1, self.k2) != 1:
            raise InternalConsistencyError("k1 and k2 are not coprime")
        for p, d in self.p1:
            if d * self.k1 * nu + 1 != p or self.l1.value % d != 0:
                raise InternalConsistencyError(f"{p} does not decompose over L1")
            if arith.factorize(d).omega != cfg.omega_d:
                raise InternalConsistencyError(f"divisor {d} has the wrong prime count")
            if (p - 1 - d * nu) % (d * nu * nu) != 0:
                raise InternalConsistencyError(f"{p} fails its congruence family")
        for p, d in self.p2:
            if d * self.k2 * nu + 1 != p or self.l2.value % d != 0:
                raise InternalConsistencyError(f"{p} does not decompose over L2")
            if arith.factorize(d).omega != cfg.omega_d:
                raise InternalConsistencyError(f"divisor {d} has the wrong prime count")
            if (p - 1 - d * nu) % (d * nu * nu * self.k1) != 0:
                raise InternalConsistencyError(f"{p} fails its congruence family")
        ok, bad = verify_pairwise_gcd(self.p1, self.p2, nu)
        if not ok:
            raise InternalConsistencyError(f"pairwise gcd violated at {bad}")
        # Structural reason the pairwise gcd collapses to nu:
        if math.gcd(self.l1.value * self.k1 * nu, self.l2.value * self.k2 * nu) != nu:
            raise InternalConsistencyError("gcd(L1*k1*nu, L2*k2*nu) != nu")
        lam = arith.lcm_all([q - 1 for q in self.q1 + self.q2])
        if (self.j_product.value * self.j0) % lam != 0:
            raise InternalConsistencyError("lambda(L1*L2) does not divide J*j0")

    # -- flat text serialization (resume/inspect format) -----------------

    def serialize(self) -> str:
        cfg = self.config
        lines = [
            "format = carmik-instance-v1",
            f"z = {cfg.z}",
            f"nu = {cfg.nu}",
            f"omega_g = {cfg.omega_g}",
            f"omega_d = {cfg.omega_d}",
            f"j_cap = {cfg.j_cap}",
            f"k_cap = {cfg.k_cap}",
            f"q_subset_size = {cfg.q_subset_size}",
            f"exponent_a = {cfg.exponent_a!r}",
            f"min_count = {cfg.min_count}",
            f"factor_digits = {cfg.factor_digits}",
            f"J = {self.j_product.value}",
            "J_primes = " + ",".join(str(p) for p in self.j_product.primes),
            f"j0 = {self.j0}",
            "Q1 = " + ",".join(str(q) for q in self.q1),
            "Q2 = " + ",".join(str(q) for q in self.q2),
            f"k1 = {self.k1}",
            f"k2 = {self.k2}",
            "P1 = " + ",".join(f"{p}:{d}" for p, d in self.p1),
            "P2 = " + ",".join(f"{p}:{d}" for p, d in self.p2),
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "ConstructionInstance":
        fields: dict[str, str] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
        if fields.get("format") != "carmik-instance-v1":
            raise DomainError("unrecognized instance document")
        cfg = ConstructionConfig(
            z=int(fields["z"]),
            nu=int(fields["nu"]),
            omega_g=int(fields["omega_g"]),
            omega_d=int(fields["omega_d"]),
            j_cap=int(fields["j_cap"]),
            k_cap=int(fields["k_cap"]),
            q_subset_size=int(fields["q_subset_size"]),
            exponent_a=float(fields["exponent_a"]),
            min_count=int(fields["min_count"]),
            factor_digits=int(fields["factor_digits"]),
        )
        q1 = tuple(int(x) for x in fields["Q1"].split(",") if x)
        q2 = tuple(int(x) for x in fields["Q2"].split(",") if x)

        def pairs(s):
            out = []
            for part in s.split(","):
                if part:
                    p, _, d = part.partition(":")
                    out.append((int(p), int(d)))
            return tuple(out)

        instance = cls(
            config=cfg,
            j_product=arith.factorize(int(fields["J"])),
            j0=int(fields["j0"]),
            q1=q1,
            q2=q2,
            l1=squarefree_product(q1),
            l2=squarefree_product(q2),
            k1=int(fields["k1"]),
            k2=int(fields["k2"]),
            p1=pairs(fields["P1"]),
            p2=pairs(fields["P2"]),
        )
        instance.verify()
        return instance


@dataclass(frozen=True)
class DiagRow:
    """One asymptotic-inequality row, compared in natural-log space."""

    name: str
    lhs_log: float
    rhs_log: float

    @property
    def holds(self) -> bool:
        return self.lhs_log <= self.rhs_log


@dataclass(frozen=True)
class BoundReport:
    """Numeric snapshot of the size bounds at this instance's parameters.

    The inequality rows are informational (the bounds assume z large); the
    divisibility of lcm(q - 1) into J * j0 is exact and is asserted in
    bound_diagnostics, not merely reported.
    """

    rows: tuple[DiagRow, ...]
    lambda_l1l2: int
    divides: bool

    def describe(self) -> str:
        out = []
        for r in self.rows:
            mark = "ok " if r.holds else "off"
            out.append(f"[{mark}] {r.name}: ln(lhs)={r.lhs_log:.3f} ln(rhs)={r.rhs_log:.3f}")
        out.append(f"[ok ] exponent of units mod L1*L2 divides J*j0 (lambda={self.lambda_l1l2})")
        return "\n".join(out)


def bound_diagnostics(instance: ConstructionInstance) -> BoundReport:
    """Evaluate the size-bound ledger at this instance's parameters.

    Informational rows compare, in log space, each family's asymptotic
    bound against the harvested values.  The one exact statement, that the
    unit-group exponent mod L1*L2 divides J*j0, is asserted.
    """
    if not instance.p1 or not instance.p2:
        raise DomainError("diagnostics need a complete instance")
    cfg = instance.config
    z = cfg.z
    a2 = 2 * cfg.exponent_a
    lz = math.log(z)
    llz = math.log(lz)
    qs = instance.q1 + instance.q2
    rows = [
        DiagRow("q lower bound", lz * math.log(z / 6), math.log(min(qs))),
        DiagRow("q upper bound", math.log(max(qs)), math.log(2) + lz * lz + a2 * llz),
        DiagRow(
            "L size",
            math.log(max(instance.l1.value, instance.l2.value)),
            math.exp((lz - 2 * llz) * lz) * (lz * lz + a2 * llz),
        ),
    ]
    lam = arith.lcm_all([q - 1 for q in qs])
    rows.append(DiagRow("unit exponent", math.log(lam), 0.8 * z))
    m_parts: dict[int, int] = {q: 1 for q in qs}
    for k in (instance.k1, instance.k2):
        for p, e in arith.factorize(k).factors:
            m_parts[p] = m_parts.get(p, 0) + e
    rows.append(
        DiagRow(
            "zero-sum threshold",
            zerosum.davenport_upper_bound_log(arith.FactoredInteger.from_factor_map(m_parts)),
            float(z),
        )
    )
    divides = (instance.j_product.value * instance.j0) % lam == 0
    if not divides:
        raise InternalConsistencyError("exponent of units mod L1*L2 must divide J*j0")
    return BoundReport(rows=tuple(rows), lambda_l1l2=lam, divides=divides)
