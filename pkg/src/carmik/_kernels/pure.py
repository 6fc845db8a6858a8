"""Pure-Python kernel backend.

Function-for-function twin of the compiled backend in ``_native.pyx``.
Everything here is exact integer arithmetic and deterministic; the two
backends must return identical values for identical arguments, which
``tests/test_kernels.py`` enforces.

All arguments are assumed to fit in an unsigned 64-bit word (the wrapper
layer routes larger operands to big-integer code paths).
"""

from math import gcd, isqrt

BACKEND_NAME = "pure"

# Deterministic Miller-Rabin witness set; correct for all n < 3.3e24,
# which covers the full 64-bit range this backend accepts.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Search outcome codes shared by the subset-product kernels.
FOUND = 0
NO_WITNESS = 1
BUDGET_EXCEEDED = 2


def is_prime_u64(n):
    """Exact primality for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
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


def _sieve_bytes(limit):
    """bytearray flags, flags[i] == 1 iff i prime, for 0 <= i <= limit."""
    if limit < 2:
        return bytearray(limit + 1)
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            start = p * p
            flags[start : limit + 1 : p] = b"\x00" * ((limit - start) // p + 1)
    return flags


def primes_in_range(lo, hi):
    """Ascending list of primes p with lo <= p <= hi (segmented sieve)."""
    if hi < 2 or hi < lo:
        return []
    lo = max(lo, 2)
    root = isqrt(hi)
    base = _sieve_bytes(root)
    base_primes = [i for i in range(2, root + 1) if base[i]]
    width = hi - lo + 1
    seg = bytearray(b"\x01") * width
    for p in base_primes:
        start = max(p * p, (lo + p - 1) // p * p)
        if start > hi:
            continue
        seg[start - lo : width : p] = b"\x00" * ((hi - start) // p + 1)
    if lo == 1:
        seg[0] = 0
    return [lo + i for i in range(width) if seg[i]]


def smallest_prime_factors(limit):
    """List spf with spf[n] = smallest prime factor of n (spf[0] = spf[1] = 0)."""
    spf = list(range(limit + 1))
    if limit >= 1:
        spf[1] = 0
    if limit >= 0:
        spf[0] = 0
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def carmichael_census(limit):
    """All (n, K) with n <= limit a Carmichael number.

    Korselt scan over a smallest-prime-factor table: n qualifies iff it is
    composite, squarefree, and p - 1 | n - 1 for every prime p | n.  K is
    gcd(p - 1) over the prime factors.  Even n can never qualify, so only
    odd n are scanned.
    """
    if limit < 3:
        return []
    spf = smallest_prime_factors(limit)
    out = []
    for n in range(9, limit + 1, 2):
        if spf[n] == n:
            continue
        m = n
        k = 0
        good = True
        while m > 1:
            p = spf[m]
            m //= p
            if m % p == 0 or (n - 1) % (p - 1) != 0:
                good = False
                break
            k = gcd(k, p - 1)
        if good:
            out.append((n, k))
    return out


def fermat_all_bases(n):
    """True iff a**n == a (mod n) for every a in [0, n)."""
    for a in range(n):
        if pow(a, n, n) != a:
            return False
    return True


def all_units_pow_one(n, exponent):
    """True iff a**exponent == 1 (mod n) for every a coprime to n."""
    for a in range(1, n):
        if gcd(a, n) == 1 and pow(a, exponent, n) != 1:
            return False
    return True


def first_unit_failing(n, exponent):
    """Smallest unit a mod n with a**exponent != 1 (mod n); 0 if none."""
    for a in range(1, n):
        if gcd(a, n) == 1 and pow(a, exponent, n) != 1:
            return a
    return 0


def count_coprime(n):
    """Brute-force totient: #{a in [1, n] : gcd(a, n) = 1}."""
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def first_prime_in_ap(modulus, residue, cap):
    """Least prime p == residue (mod modulus) with p <= cap.

    Returns (p, steps) where steps counts every progression term examined;
    (0, steps) when the cap is reached without finding a prime.
    """
    t = residue
    steps = 0
    while t <= cap:
        steps += 1
        if t >= 2 and is_prime_u64(t):
            return t, steps
        t += modulus
    return 0, steps


def ap_max_scan(l_lo, l_hi, caps):
    """Scan every (l, b) with l in [l_lo, l_hi], gcd(b, l) = 1, 0 < b < l.

    caps[i] is the search ceiling for l = l_lo + i.  Returns
    (per_l, misses): per_l holds one (l, b_of_max, max_p) triple per l
    (zeros when no class produced a prime), misses lists every (l, b)
    whose progression held no prime up to the cap.
    """
    per_l = []
    misses = []
    for i, l in enumerate(range(l_lo, l_hi + 1)):
        cap = caps[i]
        best_p = 0
        best_b = 0
        for b in range(1, l):
            if gcd(b, l) != 1:
                continue
            p, _ = first_prime_in_ap(l, b, cap)
            if p == 0:
                misses.append((l, b))
            elif p > best_p:
                best_p = p
                best_b = b
        per_l.append((l, best_b, best_p))
    return per_l, misses


def brent_factor(n):
    """A nontrivial factor of odd composite n (Brent's cycle method).

    Deterministic: polynomial offsets c = 1, 2, 3, ... are tried in order
    from the fixed start y = 2, so both backends split identically.
    """
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        f = _brent_round(n, c)
        if f != 0 and f != n:
            return f
        c += 1


def _brent_round(n, c):
    y, r, q = 2, 1, 1
    g = 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * (x - y if x > y else y - x) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        y = ys
        while g == 1:
            y = (y * y + c) % n
            g = gcd(x - y if x > y else y - x, n)
    if g == n:
        return 0
    return g


def prefix_run_witness(elements, modulus):
    """Indices of a consecutive run with product 1 mod modulus, or None.

    Pigeonhole pass over prefix products: a repeated prefix value brackets
    a run whose product is the identity.  Cheap, and on random input it
    resolves almost every query before the general searches run.
    """
    seen = {1: -1}
    pref = 1
    for i, e in enumerate(elements):
        pref = pref * e % modulus
        if pref in seen:
            return tuple(range(seen[pref] + 1, i + 1))
        seen[pref] = i
    return None


def subset_witness_exhaustive(elements, modulus, node_cap):
    """Depth-first search, indices ascending, for a subset with product 1.

    Returns (FOUND, indices) for the first witness in preorder (equivalently
    the lexicographically smallest index tuple), (NO_WITNESS, None) after a
    complete traversal, or (BUDGET_EXCEEDED, None) once node_cap > 0 nodes
    were visited.
    """
    n = len(elements)
    reduced = [e % modulus for e in elements]
    one = 1 % modulus
    path = []
    prods = [one]
    i = 0
    nodes = 0
    while True:
        if i < n:
            nodes += 1
            if node_cap and nodes > node_cap:
                return BUDGET_EXCEEDED, None
            p = prods[-1] * reduced[i] % modulus
            path.append(i)
            prods.append(p)
            if p == one:
                return FOUND, tuple(path)
            i += 1
        else:
            if not path:
                return NO_WITNESS, None
            i = path.pop() + 1
            prods.pop()


def subset_witness_mitm(elements, modulus, table_cap):
    """Meet-in-the-middle search for a subset with product 1 mod modulus.

    Subset products of the low half are tabulated, then subsets of the high
    half are matched against inverses.  Deterministic: both enumerations run
    in the same preorder as subset_witness_exhaustive, and the first match
    wins.  Requires every element to be a unit mod modulus.

    Returns the same (status, witness) protocol as the exhaustive search;
    the budget bounds the table size.
    """
    n = len(elements)
    reduced = [e % modulus for e in elements]
    one = 1 % modulus
    half = n // 2
    table = {}

    # Tabulate low-half subset products, keeping the first (lex-least)
    # subset per value. A product of 1 is a witness outright.
    path = []
    prods = [one]
    i = 0
    while True:
        if i < half:
            p = prods[-1] * reduced[i] % modulus
            path.append(i)
            prods.append(p)
            if p == one:
                return FOUND, tuple(path)
            if p not in table:
                if table_cap and len(table) >= table_cap:
                    return BUDGET_EXCEEDED, None
                table[p] = tuple(path)
            i += 1
        else:
            if not path:
                break
            i = path.pop() + 1
            prods.pop()

    # Walk high-half subsets; match the inverse of each product against
    # the table, and catch high-half-only witnesses directly.
    path = []
    prods = [one]
    i = half
    while True:
        if i < n:
            p = prods[-1] * reduced[i] % modulus
            path.append(i)
            prods.append(p)
            if p == one:
                return FOUND, tuple(path)
            mate = table.get(pow(p, -1, modulus))
            if mate is not None:
                return FOUND, mate + tuple(path)
            i += 1
        else:
            if not path:
                return NO_WITNESS, None
            i = path.pop() + 1
            prods.pop()
