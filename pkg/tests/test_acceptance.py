"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest verdicts.
"""

import math
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from carmik import ap_search, arith, korselt, pipeline, zerosum
from carmik._kernels import backend
from carmik.errors import CarmikError

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

EXPECTED_TO_10K = [
    (561, 2), (1105, 4), (1729, 6), (2465, 4), (2821, 6), (6601, 2), (8911, 6),
]
STRESS_MODULI = (5, 8, 15, 16, 21, 35, 105)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] acceptance {num}: {detail}")


def test_criterion_1_census():
    t0 = time.perf_counter()
    first = korselt.census(10_000)
    second = korselt.census(100_000)
    elapsed = time.perf_counter() - t0
    ok = first == EXPECTED_TO_10K and len(second) == 16 and elapsed < 60
    report(
        1,
        ok,
        f"census(1e4) = {len(first)} rows, census(1e5) = {len(second)} rows "
        f"in {elapsed:.2f}s",
    )
    assert first == EXPECTED_TO_10K
    assert len(second) == 16
    assert elapsed < 60


def test_criterion_2_korselt_fermat_equivalence():
    mismatches = []
    for n in range(2, 5001):
        if bool(korselt.is_carmichael(n)) != korselt.fermat_carmichael_oracle(n):
            mismatches.append(n)
    report(2, not mismatches, f"n <= 5000 exhaustive, {len(mismatches)} discrepancies")
    assert mismatches == []


def test_criterion_3_lambda_minimality():
    failures = []
    for n in range(2, 2001):
        lam = arith.carmichael_lambda(n)
        if not backend.all_units_pow_one(n, lam):
            failures.append((n, lam, "exponent"))
            continue
        for d in _proper_divisors(lam):
            if backend.first_unit_failing(n, d) == 0:
                failures.append((n, lam, d))
    report(3, not failures, f"n <= 2000, {len(failures)} failures")
    assert failures == []


def _proper_divisors(m):
    divs = [1]
    for p, e in arith.factorize(m).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return [d for d in divs if d < m]


def test_criterion_4_zero_sum_stress():
    t0 = time.perf_counter()
    checked = 0
    for m in STRESS_MODULI:
        length = math.ceil(zerosum.davenport_upper_bound(m))
        units = [a for a in range(1, m) if math.gcd(a, m) == 1]
        rng = random.Random(f"stress-{m}")
        for _ in range(1000):
            elems = [rng.choice(units) for _ in range(length)]
            witness = zerosum.find_product_one_subsequence(elems, m)
            assert witness is not None, (m, elems)
            assert witness.verify(elems, m)
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = checked == 7000 and elapsed < 30
    report(4, ok, f"{checked} sequences over {len(STRESS_MODULI)} moduli in {elapsed:.2f}s")
    assert checked == 7000
    assert elapsed < 30


@pytest.mark.parametrize("name,nu", [("nu2.cfg", 2), ("nu4.cfg", 4)])
def test_criterion_5_end_to_end_construction(name, nu):
    rc = pipeline.parse_config((CONFIG_DIR / name).read_text())
    assert rc.construction.nu == nu
    t0 = time.perf_counter()
    try:
        batch = pipeline.run_construction(rc)
    except CarmikError as exc:
        report(5, False, f"{name}: no certificate ({exc})")
        raise AssertionError(
            f"sample config {name} produced no certificate: {exc}"
        ) from exc
    elapsed = time.perf_counter() - t0
    assert len(batch.certificates) >= 1
    for cert in batch.certificates:
        pipeline.independent_recheck(cert.n, nu, bases=200, seed=rc.seed)
    ok = elapsed < 600
    report(5, ok, f"{name}: {len(batch.certificates)} certificates in {elapsed:.1f}s")
    assert elapsed < 600


def _instance_corpus():
    """Every instance the shipped and probe configs can harvest."""
    instances = []
    for name in ("nu2.cfg", "nu4.cfg"):
        rc = pipeline.parse_config((CONFIG_DIR / name).read_text())
        instances.append(pipeline.harvest_instance(rc.construction))
    from carmik.construction import ConstructionConfig

    for z, nu, s in ((74, 2, 2), (140, 2, 2), (105, 4, 2)):
        cc = ConstructionConfig(
            z=z, nu=nu, omega_g=1, omega_d=1, j_cap=40, k_cap=4000, q_subset_size=s
        )
        instances.append(pipeline.harvest_instance(cc))
    return instances


def test_criterion_6_ledger_invariants():
    violations = []
    count = 0
    for inst in _instance_corpus():
        count += 1
        nu = inst.config.nu
        ll = inst.l1.value * inst.l2.value
        checks = {
            "disjoint": not (set(inst.q1) & set(inst.q2)),
            "gcd_k1": math.gcd(inst.k1, nu * ll) == 1,
            "gcd_k2": math.gcd(inst.k2, nu * ll) == 1,
            "gcd_k1k2": math.gcd(inst.k1, inst.k2) == 1,
            "congruence_1": all(
                (p - 1 - d * nu) % (d * nu * nu) == 0 for p, d in inst.p1
            ),
            "congruence_2": all(
                (p - 1 - d * nu) % (d * nu * nu * inst.k1) == 0 for p, d in inst.p2
            ),
            "lambda_divides": (inst.j_product.value * inst.j0)
            % arith.lcm_all([q - 1 for q in inst.q1 + inst.q2])
            == 0,
            "pairwise": all(
                math.gcd(p1 - 1, p2 - 1) == nu
                for p1, _ in inst.p1
                for p2, _ in inst.p2
            ),
        }
        for key, good in checks.items():
            if not good:
                violations.append((inst.config.z, key))
        inst.verify()
    report(6, not violations, f"{count} instances, {len(violations)} violations")
    assert violations == []


def test_criterion_7_ap_scan_sanity():
    table = ap_search.heath_brown_scan(2, 2000, exponent=2.0)
    for l, b in table.misses:
        print(f"  miss: l={l}, b={b}")
    single = ap_search.heath_brown_scan(4, 4, exponent=2.0)
    pinned = single.global_max.ratio
    ok = table.misses == () and pinned == pytest.approx(5 / (4 * math.log(4) ** 2))
    detail = (
        f"all l in [2, 2000] succeed at cap l*ln(l)^3+100; "
        f"global max ratio {table.global_max.ratio:.4f} at "
        f"l={table.global_max.modulus}, b={table.global_max.residue}; "
        f"l=4 row gives {pinned:.4f}"
    )
    report(7, ok, detail)
    assert table.misses == ()
    assert pinned == pytest.approx(0.650, abs=5e-4)


def test_criterion_8_combinatorial_identity():
    bad = []
    for n in range(1, 61):
        for k in range(1, n + 1):
            if Fraction(math.comb(n, k)) < Fraction(n, k) ** k:
                bad.append((n, k))
    report(8, not bad, f"binomial(n,k) >= (n/k)^k for 1 <= k <= n <= 60, {len(bad)} failures")
    assert bad == []
