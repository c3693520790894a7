#include <doctest.h>

#include "dpqs/oracle.hpp"

using namespace dpqs;
using Q = ExactNumber;

namespace {

PartitionerId dnf(StrategyId s, SwapScheme scheme = SwapScheme::Dijkstra)
{
    return PartitionerId::composed(s, scheme);
}

Q base_cost(unsigned n)
{
    return Q(n - 1) + ratio(n - 2, 3);
}

} // namespace

TEST_CASE("two elements sort with one comparison")
{
    SortConfig cfg;
    cfg.partitioner = PartitionerId::of(PartitionerKind::Yaroslavskiy);
    cfg.cutoff = 2;
    CHECK(exhaustive_average(2, cfg, MetricId::ComparisonsSort) == 1);
    cfg.cutoff = 1;
    CHECK(exhaustive_average(2, cfg, MetricId::ComparisonsSort) == 1);
}

TEST_CASE("enumeration covers every permutation")
{
    auto r = exhaustive_run(6, PartitionerId::of(PartitionerKind::Sedgewick),
                            MetricId::ComparisonsPartition);
    CHECK(r.permutations == 720);
    CHECK(r.runs == 720);
    auto coin = exhaustive_run(5, dnf(StrategyId::Coin), MetricId::Act);
    CHECK(coin.permutations == 120);
    CHECK(coin.runs == 120 * 8); // three inner elements, one flip each
    CHECK_THROWS_AS(exhaustive_average(10, dnf(StrategyId::NIdeal), MetricId::Act),
                    std::length_error);
    OracleOptions wide;
    wide.limit = 10;
    CHECK_NOTHROW(exhaustive_zero_crossings(2, wide));
}

TEST_CASE("worker count does not change results")
{
    OracleOptions one;
    OracleOptions many;
    many.workers = 3;
    SortConfig cfg;
    cfg.partitioner = dnf(StrategyId::LCounting, SwapScheme::Meyer);
    cfg.cutoff = 2;
    CHECK(exhaustive_average(7, cfg, MetricId::SwapsSort, one) ==
          exhaustive_average(7, cfg, MetricId::SwapsSort, many));
    CHECK(exhaustive_act_table(6, StrategyId::Coin, one) ==
          exhaustive_act_table(6, StrategyId::Coin, many));
}

TEST_CASE("partition comparisons equal the exact analysis")
{
    for (unsigned n = 3; n <= 7; ++n) {
        CAPTURE(n);
        for (auto s : {StrategyId::SmallerFirst, StrategyId::LargerFirst, StrategyId::Alternate,
                       StrategyId::Coin, StrategyId::SAbstract, StrategyId::SPrimeAbstract,
                       StrategyId::NIdeal, StrategyId::OOracle, StrategyId::LCounting}) {
            CAPTURE(to_string(s));
            CHECK(exhaustive_average(n, dnf(s), MetricId::ComparisonsPartition) ==
                  exact_partition_cost(s, n));
        }
    }
    // ACT of N_IDEAL at n = 6
    CHECK(exhaustive_average(6, dnf(StrategyId::NIdeal), MetricId::Act) ==
          exact_partition_cost(StrategyId::NIdeal, 6) - base_cost(6));
}

TEST_CASE("partition swaps equal the exact analysis")
{
    for (unsigned n = 3; n <= 7; ++n) {
        CAPTURE(n);
        CHECK(exhaustive_average(n, dnf(StrategyId::SmallerFirst, SwapScheme::Dijkstra),
                                 MetricId::SwapsPartition) ==
              swap_partition_cost(SwapScheme::Dijkstra, n));
        CHECK(exhaustive_average(n, dnf(StrategyId::LCounting, SwapScheme::Meyer),
                                 MetricId::SwapsPartition) ==
              swap_partition_cost(SwapScheme::Meyer, n));
        CHECK(exhaustive_average(n, PartitionerId::composed(std::nullopt, SwapScheme::Chen),
                                 MetricId::SwapsPartition) ==
              swap_partition_cost(SwapScheme::Chen, n));
        CHECK(exhaustive_average(n, dnf(StrategyId::NIdeal, SwapScheme::MeyerSwitching),
                                 MetricId::SwapsPartition) ==
              swap_partition_cost(SwapScheme::MeyerSwitching, n));
    }
}

TEST_CASE("per pivot pair ACT tables")
{
    auto o = exhaustive_act_table(4, StrategyId::OOracle);
    CHECK(o.at({1, 1}) == ratio(1, 2));
    auto dp = act_oracle_dp(6);
    for (const auto& [key, v] : exhaustive_act_table(8, StrategyId::OOracle))
        CHECK(v == dp[key.first][key.second]);
    for (const auto& [key, v] : exhaustive_act_table(6, StrategyId::LCounting))
        CHECK(v == act_past_dp(key.first, key.second));
    for (const auto& [key, v] : exhaustive_act_table(6, StrategyId::SmallerFirst))
        CHECK(v == key.second);
    auto t = exhaustive_act_table(7, StrategyId::SAbstract);
    CHECK(t.size() == 21);
    for (const auto& [key, v] : t)
        CHECK(v == expected_act(StrategyId::SAbstract, key.first, key.second, 7));
}

TEST_CASE("misplaced groups")
{
    for (unsigned n : {3u, 5u, 7u}) {
        auto g = exhaustive_misplaced(n);
        for (const auto& x : g)
            CHECK(x == ratio(n - 3, 12));
        CHECK(exhaustive_average(n, dnf(StrategyId::NIdeal), MetricId::MisplacedCounts) ==
              ratio(n - 3, 2));
    }
}

TEST_CASE("sample of five pivot pair frequencies")
{
    for (unsigned n : {5u, 6u, 7u}) {
        auto f = exhaustive_pivot_pair_frequencies(n, PivotSelector::sample5());
        Q total = 0;
        Q c5(binomial(n, 5));
        for (unsigned p = 1; p <= n; ++p)
            for (unsigned q = p + 1; q <= n; ++q) {
                Q want = Q((p - 1) * (q - p - 1) * (n - q)) / c5;
                auto it = f.find({p, q});
                Q got = it == f.end() ? Q(0) : it->second;
                CHECK(got == want);
                total += got;
            }
        CHECK(total == 1);
    }
    auto direct = exhaustive_pivot_pair_frequencies(5, PivotSelector::direct());
    for (const auto& [key, v] : direct)
        CHECK(v == ratio(1, 10));
}

TEST_CASE("zero crossings by enumeration")
{
    for (unsigned n : {2u, 4u, 6u, 8u})
        CHECK(exhaustive_zero_crossings(n) == expected_zero_crossings(n));
    CHECK_THROWS(exhaustive_zero_crossings(3));
}

TEST_CASE("metric names")
{
    for (auto m : {MetricId::ComparisonsPartition, MetricId::ComparisonsSort,
                   MetricId::SwapsPartition, MetricId::SwapsSort, MetricId::Act,
                   MetricId::MisplacedCounts})
        CHECK(parse_metric(to_string(m)) == m);
    CHECK_THROWS(parse_metric("x"));
    SortConfig cfg;
    CHECK_THROWS(exhaustive_average(4, cfg, MetricId::Act));
    CHECK_THROWS(exhaustive_average(4, dnf(StrategyId::NIdeal), MetricId::SwapsSort));
}
