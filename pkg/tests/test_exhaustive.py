import math

import pytest

from modgroup import (
    CostCurve,
    EnumerationCapError,
    count_partitions,
    enumerate_partitions,
    evaluate,
    exact_pareto,
    synthesize_catalog,
    Partition,
)
from support import brute_force_front, literal_objectives, weakly_dominates


class TestCountPartitions:
    def test_small_binomial(self):
        assert count_partitions(5, 3) == 6

    def test_single_group(self):
        for m in (1, 7, 100):
            assert count_partitions(m, 1) == 1

    def test_total_over_all_group_counts(self):
        assert sum(count_partitions(20, n) for n in range(1, 21)) == 524_288

    def test_big_values_exact(self):
        assert count_partitions(65, 33) == math.comb(64, 32)

    @pytest.mark.parametrize("m,n", [(5, 6), (5, 0), (0, 1)])
    def test_domain(self, m, n):
        with pytest.raises(ValueError):
            count_partitions(m, n)


class TestEnumerate:
    def test_lexicographic_divider_order(self):
        got = [p.group_sizes for p in enumerate_partitions(4, 2)]
        assert got == [(1, 3), (2, 2), (3, 1)]

    def test_all_singletons(self):
        assert [p.group_sizes for p in enumerate_partitions(3, 3)] == [(1, 1, 1)]

    def test_cap_refusal_names_count_and_cap(self):
        with pytest.raises(EnumerationCapError) as err:
            enumerate_partitions(30, 15)
        assert err.value.count == 77_558_760
        assert err.value.cap == 10_000_000
        assert "77558760" in str(err.value)

    def test_cap_refusal_is_eager(self):
        # the error must fire at call time, not on first consumption
        with pytest.raises(EnumerationCapError):
            enumerate_partitions(30, 15, cap=1000)

    def test_cap_override_allows(self):
        stream = enumerate_partitions(10, 5, cap=math.comb(9, 4))
        assert sum(1 for _ in stream) == math.comb(9, 4)

    def test_counts_match_enumeration_exhaustively(self):
        # every (m <= 16, n <= m); larger m spot-checked below to bound runtime
        for m in range(1, 17):
            for n in range(1, m + 1):
                assert sum(1 for _ in enumerate_partitions(m, n)) == count_partitions(m, n)

    @pytest.mark.parametrize("m,n", [(20, 1), (20, 2), (20, 10), (20, 19), (20, 20)])
    def test_counts_match_enumeration_at_scale(self, m, n):
        assert sum(1 for _ in enumerate_partitions(m, n)) == count_partitions(m, n)

    def test_each_composition_valid_and_unique(self):
        seen = set()
        for p in enumerate_partitions(9, 4):
            assert p.m == 9 and p.n == 4 and min(p.group_sizes) >= 1
            seen.add(p.group_sizes)
        assert len(seen) == count_partitions(9, 4)


@pytest.fixture
def toy_curve():
    return CostCurve.from_parameters(2, 0.5, 1)


class TestExactPareto:
    def test_toy_front_against_brute_force(self, toy_catalog, toy_curve):
        triples = [literal_objectives(toy_catalog, toy_curve, sizes)
                   for sizes in [(1, 3), (2, 2), (3, 1)]]
        keep = brute_force_front(triples)
        expected = sorted(triples[i] for i in keep)
        got = exact_pareto(toy_catalog, toy_curve, 2)
        assert [pytest.approx(e.objectives.as_tuple(), rel=1e-12) for e in got] == expected

    def test_single_group_count_edges(self, toy_catalog, toy_curve):
        low = exact_pareto(toy_catalog, toy_curve, 1)
        assert len(low) == 1 and low[0].partition.group_sizes == (4,)
        high = exact_pareto(toy_catalog, toy_curve, 4)
        assert len(high) == 1 and high[0].partition.group_sizes == (1, 1, 1, 1)

    def test_front_weakly_dominates_everything(self):
        catalog = synthesize_catalog(10, 8)
        curve = CostCurve.from_parameters(10, 0.5, 2)
        front = [e.objectives.as_tuple() for e in exact_pareto(catalog, curve, 3)]
        for partition in enumerate_partitions(10, 3):
            triple = evaluate(catalog, curve, partition).as_tuple()
            assert any(weakly_dominates(f, triple) for f in front)

    def test_no_dominated_entries(self):
        catalog = synthesize_catalog(11, 4)
        curve = CostCurve.from_parameters(10, 0.5, 3)
        front = [e.objectives.as_tuple() for e in exact_pareto(catalog, curve, 4)]
        assert sorted(brute_force_front(front)) == list(range(len(front)))

    def test_propagates_cap(self):
        catalog = synthesize_catalog(30, 1)
        curve = CostCurve.from_parameters(10, 0.5, 3)
        with pytest.raises(EnumerationCapError):
            exact_pareto(catalog, curve, 15)

    def test_minimum_deviation_non_increasing_in_group_count(self):
        catalog = synthesize_catalog(10, 21)
        curve = CostCurve.from_parameters(10, 0.5, 2)
        previous = (math.inf, math.inf)
        for n in range(1, catalog.m + 1):
            best1 = min(evaluate(catalog, curve, p).dgamma1
                        for p in enumerate_partitions(catalog.m, n))
            best2 = min(evaluate(catalog, curve, p).dgamma2
                        for p in enumerate_partitions(catalog.m, n))
            assert best1 <= previous[0] + 1e-12
            assert best2 <= previous[1] + 1e-12
            previous = (best1, best2)
