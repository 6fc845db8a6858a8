import itertools
import math
import random

import pytest

from carmik import arith, zerosum
from carmik.errors import DomainError, SearchExhaustedError


def brute_subset_count(elements, m, lo, hi):
    count = 0
    for size in range(lo, hi + 1):
        for combo in itertools.combinations(range(len(elements)), size):
            if math.prod(elements[i] for i in combo) % m == 1:
                count += 1
    return count


def random_units(rng, m, size):
    units = [a for a in range(1, m) if math.gcd(a, m) == 1]
    return [rng.choice(units) for _ in range(size)]


class TestUnitGroupStructure:
    def test_examples(self):
        assert zerosum.unit_group_structure(5).components == ((2, 4),)
        assert zerosum.unit_group_structure(2).components == ()
        assert zerosum.unit_group_structure(8).components == ((7, 2), (5, 2))

    def test_orders_multiply_to_phi_and_lcm_to_lambda(self):
        for m in range(2, 300):
            s = zerosum.unit_group_structure(m)
            orders = s.orders
            assert math.prod(orders) == arith.euler_phi(m), m
            assert math.lcm(*orders) == arith.carmichael_lambda(m) if orders else True

    def test_generator_orders_are_exact(self):
        for m in (5, 8, 15, 16, 21, 35, 105, 256, 441):
            s = zerosum.unit_group_structure(m)
            for g, order in s.components:
                assert pow(g, order, m) == 1
                for r in arith.factorize(order).primes:
                    assert pow(g, order // r, m) != 1, (m, g, order)

    def test_internal_direct_product_spans_all_units(self):
        for m in (5, 8, 12, 15, 16, 21, 24, 35, 40, 63, 100):
            s = zerosum.unit_group_structure(m)
            span = {1}
            for g, order in s.components:
                span = {x * pow(g, e, m) % m for x in span for e in range(order)}
            assert span == {a for a in range(1, m) if math.gcd(a, m) == 1}

    def test_domain(self):
        with pytest.raises(DomainError):
            zerosum.unit_group_structure(1)


class TestDiscreteLog:
    def test_roundtrip_random(self):
        rng = random.Random(11)
        for _ in range(60):
            m = rng.randrange(3, 5000)
            s = zerosum.unit_group_structure(m)
            x = random_units(rng, m, 1)[0]
            vec = zerosum.discrete_log_vector(s, x)
            recon = 1
            for (g, order), e in zip(s.components, vec):
                assert 0 <= e < order
                recon = recon * pow(g, e, m) % m
            assert recon == x, (m, x)

    def test_non_unit_rejected(self):
        s = zerosum.unit_group_structure(10)
        with pytest.raises(DomainError):
            zerosum.discrete_log_vector(s, 5)


class TestDavenportBound:
    def test_examples(self):
        assert zerosum.davenport_upper_bound(5) == pytest.approx(4.0)
        assert zerosum.davenport_upper_bound(2) == pytest.approx(1.0)
        assert zerosum.davenport_upper_bound(8) == pytest.approx(2 * (1 + math.log(2)))

    def test_log_variant_matches(self):
        for m in (5, 8, 105, 9699690):
            assert zerosum.davenport_upper_bound_log(m) == pytest.approx(
                math.log(zerosum.davenport_upper_bound(m))
            )


class TestFind:
    def test_examples_mod_5(self):
        w = zerosum.find_product_one_subsequence([2, 3], 5)
        assert w.indices == (0, 1)
        w = zerosum.find_product_one_subsequence([1, 2], 5)
        assert w.indices == (0,)
        assert zerosum.find_product_one_subsequence([2, 2], 5) is None

    def test_non_unit_rejected(self):
        with pytest.raises(DomainError):
            zerosum.find_product_one_subsequence([5, 2], 10)

    def test_empty(self):
        assert zerosum.find_product_one_subsequence([], 7) is None

    def test_every_returned_witness_verifies(self):
        rng = random.Random(5)
        for _ in range(300):
            m = rng.randrange(3, 2000)
            elems = random_units(rng, m, rng.randrange(1, 18))
            w = zerosum.find_product_one_subsequence(elems, m)
            if w is not None:
                assert w.verify(elems, m)

    def test_budget_exhaustion_raises(self):
        # Orders of 2 mod 11 never divide subset sizes below 10, so there
        # is no witness and the search must visit every node.
        elems = [2] * 9
        assert zerosum.find_product_one_subsequence(elems, 11) is None
        with pytest.raises(SearchExhaustedError):
            zerosum.find_product_one_subsequence(elems, 11, node_cap=10)

    def test_strategies_agree_with_exhaustive(self):
        rng = random.Random(99)
        checked = 0
        hard = 0
        while checked < 500:
            m = rng.randrange(3, 10_000)
            elems = random_units(rng, m, rng.randrange(1, 21))
            reduced = [e % m for e in elems]
            from carmik._kernels import pure

            if pure.prefix_run_witness(reduced, m) is None:
                hard += 1
            answers = {}
            for strategy in ("exhaustive", "mitm", "dlog"):
                w = zerosum.find_product_one_subsequence(elems, m, strategy=strategy)
                answers[strategy] = w is not None
                if w is not None:
                    assert w.verify(elems, m)
            assert answers["mitm"] == answers["exhaustive"]
            assert answers["dlog"] == answers["exhaustive"]
            checked += 1
        assert hard >= 50  # the prefix pass must not mask the comparison


class TestEnumerate:
    def test_example_window(self):
        ws = zerosum.enumerate_product_one_subsets([4, 4, 2, 3], 5, 2, 3)
        assert [w.indices for w in ws] == [(0, 1), (2, 3)]

    def test_len_min_beyond_input(self):
        assert zerosum.enumerate_product_one_subsets([2, 3], 5, 3, 4) == []

    def test_count_cap_truncates(self):
        ws = zerosum.enumerate_product_one_subsets([4, 4, 2, 3], 5, 2, 3, count_cap=1)
        assert [w.indices for w in ws] == [(0, 1)]

    def test_lexicographic_order(self):
        rng = random.Random(21)
        for _ in range(50):
            m = rng.randrange(3, 300)
            elems = random_units(rng, m, rng.randrange(1, 12))
            ws = zerosum.enumerate_product_one_subsets(elems, m)
            tuples = [w.indices for w in ws]
            assert tuples == sorted(tuples)
            for w in ws:
                assert w.verify(elems, m)

    def test_counting_matches_brute_force(self):
        rng = random.Random(31)
        for _ in range(50):
            m = rng.randrange(3, 500)
            n = rng.randrange(1, 15)
            elems = random_units(rng, m, n)
            lo = rng.randrange(1, n + 1)
            hi = rng.randrange(lo, n + 1)
            ws = zerosum.enumerate_product_one_subsets(elems, m, lo, hi)
            assert len(ws) == brute_subset_count(elems, m, lo, hi)

    def test_node_budget(self):
        with pytest.raises(SearchExhaustedError):
            zerosum.enumerate_product_one_subsets([2] * 12, 13, node_cap=5)


class TestStressSmall:
    def test_bound_lengths_always_yield_witnesses(self):
        rng = random.Random(404)
        for m in (5, 8, 15):
            length = math.ceil(zerosum.davenport_upper_bound(m))
            for _ in range(100):
                elems = random_units(rng, m, length)
                w = zerosum.find_product_one_subsequence(elems, m)
                assert w is not None and w.verify(elems, m)
