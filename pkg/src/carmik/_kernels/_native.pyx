# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Function-for-function twin of ``pure.py``; see that module for the
contracts.  All heavy loops run on unsigned 64-bit words with 128-bit
intermediate products.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "native"

FOUND = 0
NO_WITNESS = 1
BUDGET_EXCEEDED = 2

ctypedef unsigned long long u64
ctypedef unsigned int u32

cdef extern from *:
    """
    typedef unsigned long long cm_u64;
    static inline cm_u64 cm_mulmod(cm_u64 a, cm_u64 b, cm_u64 m) {
        return (cm_u64)((unsigned __int128)a * b % m);
    }
    static inline cm_u64 cm_powmod(cm_u64 b, cm_u64 e, cm_u64 m) {
        cm_u64 r = 1 % m;
        b %= m;
        while (e) {
            if (e & 1) r = cm_mulmod(r, b, m);
            b = cm_mulmod(b, b, m);
            e >>= 1;
        }
        return r;
    }
    static inline cm_u64 cm_gcd(cm_u64 a, cm_u64 b) {
        while (b) { cm_u64 t = a % b; a = b; b = t; }
        return a;
    }
    static inline cm_u64 cm_invmod(cm_u64 a, cm_u64 m) {
        __int128 t = 0, newt = 1;
        __int128 r = m, newr = a % m;
        while (newr != 0) {
            __int128 q = r / newr;
            __int128 tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (t < 0) t += m;
        return (cm_u64)t;
    }
    """
    u64 cm_mulmod(u64 a, u64 b, u64 m) nogil
    u64 cm_powmod(u64 b, u64 e, u64 m) nogil
    u64 cm_gcd(u64 a, u64 b) nogil
    u64 cm_invmod(u64 a, u64 m) nogil


cdef u64[12] _MR_BASES
_MR_BASES[0] = 2; _MR_BASES[1] = 3; _MR_BASES[2] = 5; _MR_BASES[3] = 7
_MR_BASES[4] = 11; _MR_BASES[5] = 13; _MR_BASES[6] = 17; _MR_BASES[7] = 19
_MR_BASES[8] = 23; _MR_BASES[9] = 29; _MR_BASES[10] = 31; _MR_BASES[11] = 37


cdef bint _is_prime(u64 n) nogil:
    cdef int i, r, s
    cdef u64 d, a, x
    cdef bint composite
    if n < 2:
        return False
    for i in range(12):
        if n % _MR_BASES[i] == 0:
            return n == _MR_BASES[i]
    d = n - 1
    s = 0
    while d % 2 == 0:
        d >>= 1
        s += 1
    for i in range(12):
        a = _MR_BASES[i]
        x = cm_powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        composite = True
        for r in range(s - 1):
            x = cm_mulmod(x, x, n)
            if x == n - 1:
                composite = False
                break
        if composite:
            return False
    return True


def is_prime_u64(n):
    """Exact primality for 0 <= n < 2**64."""
    return bool(_is_prime(<u64> n))


cdef u64 _isqrt(u64 n) nogil:
    cdef u64 r = <u64> (n ** 0.5)
    while r > 0 and r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef char* _sieve_flags(u64 limit) except NULL:
    """malloc'd array, flag[i] == 1 iff i prime, 0 <= i <= limit."""
    cdef char* flags = <char*> malloc((limit + 1) * sizeof(char))
    cdef u64 i, p, m
    if flags == NULL:
        raise MemoryError()
    for i in range(limit + 1):
        flags[i] = 1
    flags[0] = 0
    if limit >= 1:
        flags[1] = 0
    p = 2
    while p * p <= limit:
        if flags[p]:
            m = p * p
            while m <= limit:
                flags[m] = 0
                m += p
        p += 1
    return flags


def primes_in_range(lo, hi):
    """Ascending list of primes p with lo <= p <= hi (segmented sieve)."""
    cdef u64 clo, chi, root, width, i, p, start
    cdef char* base = NULL
    cdef char* seg = NULL
    if hi < 2 or hi < lo:
        return []
    clo = <u64> max(lo, 2)
    chi = <u64> hi
    root = _isqrt(chi)
    out = []
    base = _sieve_flags(root)
    try:
        width = chi - clo + 1
        seg = <char*> malloc(width * sizeof(char))
        if seg == NULL:
            raise MemoryError()
        for i in range(width):
            seg[i] = 1
        p = 2
        while p <= root:
            if base[p]:
                start = p * p
                if start < clo:
                    start = (clo + p - 1) / p * p
                i = start
                while i <= chi:
                    seg[i - clo] = 0
                    i += p
            p += 1
        for i in range(width):
            if seg[i]:
                out.append(clo + i)
        return out
    finally:
        free(base)
        free(seg)


cdef u32* _spf_table(u64 limit) except NULL:
    if limit >= 4294967295UL:
        raise ValueError("spf table limited to the 32-bit range")
    cdef u32* spf = <u32*> malloc((limit + 1) * sizeof(u32))
    cdef u64 i, p, m
    if spf == NULL:
        raise MemoryError()
    for i in range(limit + 1):
        spf[i] = <u32> i
    spf[0] = 0
    if limit >= 1:
        spf[1] = 0
    p = 2
    while p * p <= limit:
        if spf[p] == p:
            m = p * p
            while m <= limit:
                if spf[m] == m:
                    spf[m] = <u32> p
                m += p
        p += 1
    return spf


def smallest_prime_factors(limit):
    """List spf with spf[n] = smallest prime factor of n (spf[0] = spf[1] = 0)."""
    cdef u64 climit = <u64> limit, i
    cdef u32* spf = _spf_table(climit)
    out = []
    try:
        for i in range(climit + 1):
            out.append(spf[i])
        return out
    finally:
        free(spf)


def carmichael_census(limit):
    """All (n, K) with n <= limit a Carmichael number (Korselt scan)."""
    cdef u64 climit, n, m, p, k
    cdef bint good
    cdef u32* spf
    if limit < 3:
        return []
    climit = <u64> limit
    spf = _spf_table(climit)
    out = []
    try:
        n = 9
        while n <= climit:
            if spf[n] != n:
                m = n
                k = 0
                good = True
                while m > 1:
                    p = spf[m]
                    m = m / p
                    if m % p == 0 or (n - 1) % (p - 1) != 0:
                        good = False
                        break
                    k = cm_gcd(k, p - 1)
                if good:
                    out.append((n, k))
            n += 2
        return out
    finally:
        free(spf)


def fermat_all_bases(n):
    """True iff a**n == a (mod n) for every a in [0, n)."""
    cdef u64 cn = <u64> n, a
    for a in range(cn):
        if cm_powmod(a, cn, cn) != a:
            return False
    return True


def all_units_pow_one(n, exponent):
    """True iff a**exponent == 1 (mod n) for every a coprime to n."""
    cdef u64 cn = <u64> n, ce = <u64> exponent, a
    for a in range(1, cn):
        if cm_gcd(a, cn) == 1 and cm_powmod(a, ce, cn) != 1:
            return False
    return True


def first_unit_failing(n, exponent):
    """Smallest unit a mod n with a**exponent != 1 (mod n); 0 if none."""
    cdef u64 cn = <u64> n, ce = <u64> exponent, a
    for a in range(1, cn):
        if cm_gcd(a, cn) == 1 and cm_powmod(a, ce, cn) != 1:
            return a
    return 0


def count_coprime(n):
    """Brute-force totient: #{a in [1, n] : gcd(a, n) = 1}."""
    cdef u64 cn = <u64> n, a, total = 0
    for a in range(1, cn + 1):
        if cm_gcd(a, cn) == 1:
            total += 1
    return total


def first_prime_in_ap(modulus, residue, cap):
    """Least prime p == residue (mod modulus) with p <= cap; see pure twin."""
    cdef u64 l = <u64> modulus, t = <u64> residue, ccap = <u64> cap
    cdef u64 steps = 0
    while t <= ccap:
        steps += 1
        if t >= 2 and _is_prime(t):
            return t, steps
        t += l
    return 0, steps


def ap_max_scan(l_lo, l_hi, caps):
    """Per-modulus worst least primes and misses; see the pure twin."""
    cdef u64 l, b, cap, t, best_p, best_b
    cdef u64 clo = <u64> l_lo, chi = <u64> l_hi
    cdef Py_ssize_t idx = 0
    per_l = []
    misses = []
    for l in range(clo, chi + 1):
        cap = <u64> caps[idx]
        idx += 1
        best_p = 0
        best_b = 0
        for b in range(1, l):
            if cm_gcd(b, l) != 1:
                continue
            t = b
            while t <= cap:
                if t >= 2 and _is_prime(t):
                    break
                t += l
            if t > cap:
                misses.append((l, b))
            elif t > best_p:
                best_p = t
                best_b = b
        per_l.append((l, best_b, best_p))
    return per_l, misses


cdef u64 _brent_round(u64 n, u64 c) nogil:
    cdef u64 y = 2, r = 1, q = 1, g = 1, m = 128
    cdef u64 x = y, ys = y, i, j, lim
    while g == 1:
        x = y
        for i in range(r):
            y = (cm_mulmod(y, y, n) + c) % n
        i = 0
        while i < r and g == 1:
            ys = y
            lim = m if m < r - i else r - i
            for j in range(lim):
                y = (cm_mulmod(y, y, n) + c) % n
                q = cm_mulmod(q, x - y if x > y else y - x, n)
            g = cm_gcd(q, n)
            i += m
        r *= 2
    if g == n:
        g = 1
        y = ys
        while g == 1:
            y = (cm_mulmod(y, y, n) + c) % n
            g = cm_gcd(x - y if x > y else y - x, n)
    if g == n:
        return 0
    return g


def brent_factor(n):
    """A nontrivial factor of odd composite n; identical path to the pure twin."""
    cdef u64 cn = <u64> n, c = 1, f
    if cn % 2 == 0:
        return 2
    while True:
        f = _brent_round(cn, c)
        if f != 0 and f != cn:
            return f
        c += 1


def prefix_run_witness(elements, modulus):
    """Consecutive-run witness via prefix-product pigeonhole, or None."""
    cdef u64 m = <u64> modulus, pref = 1
    cdef Py_ssize_t i, n = len(elements)
    seen = {1: -1}
    for i in range(n):
        pref = cm_mulmod(pref, <u64> elements[i] % m, m)
        prev = seen.get(pref)
        if prev is not None:
            return tuple(range(prev + 1, i + 1))
        seen[pref] = i
    return None


cdef tuple _collect(Py_ssize_t* path, Py_ssize_t depth):
    cdef Py_ssize_t j
    out = []
    for j in range(depth):
        out.append(path[j])
    return tuple(out)


def subset_witness_exhaustive(elements, modulus, node_cap):
    """Lex-first product-one subset by depth-first search; see pure twin."""
    cdef u64 m = <u64> modulus, p, one = 1 % (<u64> modulus)
    cdef Py_ssize_t n = len(elements), i, depth
    cdef u64 cap = <u64> node_cap, nodes = 0
    cdef u64* red
    cdef Py_ssize_t* path
    cdef u64* prods
    if n == 0:
        return NO_WITNESS, None
    red = <u64*> malloc(n * sizeof(u64))
    path = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    prods = <u64*> malloc((n + 1) * sizeof(u64))
    if red == NULL or path == NULL or prods == NULL:
        free(red); free(path); free(prods)
        raise MemoryError()
    try:
        for i in range(n):
            red[i] = <u64> elements[i] % m
        prods[0] = one
        depth = 0
        i = 0
        while True:
            if i < n:
                nodes += 1
                if cap and nodes > cap:
                    return BUDGET_EXCEEDED, None
                p = cm_mulmod(prods[depth], red[i], m)
                path[depth] = i
                depth += 1
                prods[depth] = p
                if p == one:
                    return FOUND, _collect(path, depth)
                i += 1
            else:
                if depth == 0:
                    return NO_WITNESS, None
                depth -= 1
                i = path[depth] + 1
    finally:
        free(red); free(path); free(prods)


def subset_witness_mitm(elements, modulus, table_cap):
    """Meet-in-the-middle product-one search; see the pure twin."""
    cdef u64 m = <u64> modulus, p, one = 1 % (<u64> modulus)
    cdef Py_ssize_t n = len(elements), half = n // 2, i, depth
    cdef Py_ssize_t cap = <Py_ssize_t> table_cap
    cdef u64* red
    cdef Py_ssize_t* path
    cdef u64* prods
    if n == 0:
        return NO_WITNESS, None
    red = <u64*> malloc(n * sizeof(u64))
    path = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    prods = <u64*> malloc((n + 1) * sizeof(u64))
    if red == NULL or path == NULL or prods == NULL:
        free(red); free(path); free(prods)
        raise MemoryError()
    table = {}
    try:
        for i in range(n):
            red[i] = <u64> elements[i] % m

        prods[0] = one
        depth = 0
        i = 0
        while True:
            if i < half:
                p = cm_mulmod(prods[depth], red[i], m)
                path[depth] = i
                depth += 1
                prods[depth] = p
                if p == one:
                    return FOUND, _collect(path, depth)
                if p not in table:
                    if cap and len(table) >= cap:
                        return BUDGET_EXCEEDED, None
                    table[p] = _collect(path, depth)
                i += 1
            else:
                if depth == 0:
                    break
                depth -= 1
                i = path[depth] + 1

        prods[0] = one
        depth = 0
        i = half
        while True:
            if i < n:
                p = cm_mulmod(prods[depth], red[i], m)
                path[depth] = i
                depth += 1
                prods[depth] = p
                if p == one:
                    return FOUND, _collect(path, depth)
                mate = table.get(cm_invmod(p, m))
                if mate is not None:
                    return FOUND, mate + _collect(path, depth)
                i += 1
            else:
                if depth == 0:
                    return NO_WITNESS, None
                depth -= 1
                i = path[depth] + 1
    finally:
        free(red); free(path); free(prods)
