"""Timing comparison: compiled kernels vs the pure-Python fallback.

Usage:  python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends (results are asserted identical) and
the table reports wall time per backend plus the speedup.
"""

import argparse
import math
import random
import time

from carmik._kernels import pure

try:
    from carmik._kernels import _native as native
except ImportError:
    native = None


def timed(fn, repeat):
    best = math.inf
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return value, best


def workloads():
    rng = random.Random(7)
    semiprimes = []
    while len(semiprimes) < 20:
        p = rng.randrange(2**25 | 1, 2**26, 2)
        q = rng.randrange(2**25 | 1, 2**26, 2)
        if pure.is_prime_u64(p) and pure.is_prime_u64(q):
            semiprimes.append(p * q)
    units105 = [a for a in range(1, 105) if math.gcd(a, 105) == 1]
    stress = [[rng.choice(units105) for _ in range(29)] for _ in range(200)]
    mr_values = [rng.randrange(2**62) for _ in range(20_000)]
    ap_caps = [int(l * math.log(l) ** 3) + 100 for l in range(2, 501)]

    yield "census to 1e6", lambda b: b.carmichael_census(1_000_000)
    yield "sieve [1e12, 1e12+1e6]", lambda b: b.primes_in_range(10**12, 10**12 + 10**6)
    yield "miller-rabin x 20k", lambda b: [b.is_prime_u64(n) for n in mr_values]
    yield "fermat all bases n=4999", lambda b: b.fermat_all_bases(4999)
    yield "unit sweep n=9973", lambda b: b.all_units_pow_one(9973, 9972)
    yield "ap scan l <= 500", lambda b: b.ap_max_scan(2, 500, ap_caps)
    yield "brent x 20 semiprimes", lambda b: [b.brent_factor(n) for n in semiprimes]
    yield "subset mitm x 200 (mod 105)", lambda b: [
        b.subset_witness_mitm(e, 105, 0) for e in stress
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if native is None:
        print("compiled backend unavailable; timing the pure backend only")
    header = f"{'workload':<30} {'pure':>10} {'native':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads():
        pure_value, pure_time = timed(lambda: fn(pure), args.repeat)
        if native is None:
            print(f"{name:<30} {pure_time:>9.3f}s {'-':>10} {'-':>9}")
            continue
        native_value, native_time = timed(lambda: fn(native), args.repeat)
        assert pure_value == native_value, f"backend mismatch in {name}"
        print(
            f"{name:<30} {pure_time:>9.3f}s {native_time:>9.3f}s "
            f"{pure_time / native_time:>8.1f}x"
        )


if __name__ == "__main__":
    main()
