#include <doctest.h>

#include "dpqs/analysis.hpp"

#include <cmath>

using namespace dpqs;
using Q = ExactNumber;

TEST_CASE("exact partition cost hand values")
{
    CHECK(exact_partition_cost(StrategyId::NIdeal, 4) == ratio(23, 6));
    CHECK(exact_partition_cost(StrategyId::SmallerFirst, 4) == ratio(13, 3));
    CHECK(exact_partition_cost(StrategyId::NIdeal, 2) == 1);
    CHECK(exact_partition_cost(StrategyId::Coin, 3) == Q(2) + ratio(1, 3) + ratio(1, 3));
    CHECK_THROWS(exact_partition_cost(StrategyId::NSampling, 10));
    CHECK_THROWS(exact_partition_cost(StrategyId::NIdeal, 1));
}

TEST_CASE("closed forms agree with term-by-term sums")
{
    for (unsigned n = 2; n <= 40; ++n) {
        CAPTURE(n);
        for (auto s : {StrategyId::SmallerFirst, StrategyId::LargerFirst, StrategyId::Alternate,
                       StrategyId::Coin, StrategyId::SAbstract, StrategyId::SPrimeAbstract,
                       StrategyId::NIdeal})
            CHECK(exact_partition_cost(s, n) == direct_partition_cost(s, n));
        for (auto sc : {SwapScheme::Dijkstra, SwapScheme::Meyer, SwapScheme::Chen,
                        SwapScheme::MeyerSwitching})
            CHECK(swap_partition_cost(sc, n) == direct_swap_cost(sc, n));
    }
}

TEST_CASE("long double tables track the exact tables")
{
    for (int i = 0; i <= 7; ++i) {
        auto series = static_cast<CostSeries>(i);
        auto ex = partition_cost_table_exact(series, 60);
        auto fl = partition_cost_table(series, 60);
        for (unsigned n = 0; n <= 60; ++n)
            CHECK(std::fabs(static_cast<double>(fl[n] - to_long_double(ex[n]))) < 1e-9);
        CHECK(parse_cost_series(to_string(series)) == series);
    }
    CHECK_THROWS(parse_cost_series("nope"));
}

TEST_CASE("mirror sum of S and S'")
{
    for (unsigned n = 2; n <= 30; ++n) {
        Q base = Q(n - 1) + ratio(n - 2, 3);
        Q sum = 0;
        for (unsigned s = 0; s + 2 <= n; ++s)
            for (unsigned l = 0; s + l + 2 <= n; ++l)
                sum += s + l;
        Q rhs = 2 * base + sum / Q(binomial(n, 2));
        CHECK(exact_partition_cost(StrategyId::SAbstract, n) +
                  exact_partition_cost(StrategyId::SPrimeAbstract, n) ==
              rhs);
    }
}

TEST_CASE("oracle strategy DP")
{
    auto e = act_oracle_dp(50);
    CHECK(e[1][0] == 0);
    CHECK(e[1][1] == ratio(1, 2));
    for (unsigned i = 0; i <= 50; ++i)
        for (unsigned j = 0; i + j <= 50; ++j) {
            CHECK(e[i][j] >= 0);
            CHECK(e[i][j] <= std::min(i, j));
            CHECK(e[i][j] == e[j][i]);
            if (i + j + 1 <= 50) {
                CHECK(e[i + 1][j] >= e[i][j]);
                CHECK(e[i][j + 1] >= e[i][j]);
            }
        }
}

TEST_CASE("counting strategy DP")
{
    for (unsigned l = 0; l <= 20; ++l)
        CHECK(act_past_dp(0, l) == 0);
    CHECK(act_past_dp(1, 1) == ratio(3, 2));
    CHECK(act_past_dp(1, 0) == 1); // tie goes to q, single small element is wrong
    auto o = act_oracle_dp(12);
    auto t = act_past_table(12);
    for (unsigned s = 0; s <= 12; ++s)
        for (unsigned l = 0; s + l <= 12; ++l) {
            CHECK(t[s][l] >= o[s][l]);
            CHECK(t[s][l] == act_past_dp(s, l));
        }
    CHECK_THROWS_AS(act_past_dp(3000, 3000), std::length_error);
}

TEST_CASE("swap costs")
{
    // SwapA: 2 + sum(s + l) / C(n, 2)
    CHECK(swap_partition_cost(SwapScheme::Dijkstra, 4) == Q(2) + ratio(8, 6));
    CHECK(swap_partition_cost(SwapScheme::Dijkstra, 2) == 2);
    // single inner element: only larges cost a swap under Meyer
    CHECK(expected_swaps(SwapScheme::Meyer, 1, 0, 3) == 2);
    CHECK(expected_swaps(SwapScheme::Meyer, 0, 1, 3) == 3);
    CHECK(expected_swaps(SwapScheme::Chen, 1, 1, 4) == Q(2) + ratio(1, 2));
    // slopes 2/3, 1/2, 5/18
    unsigned n = 100000;
    auto slope = [&](SwapScheme sc) {
        return Q((swap_partition_cost(sc, 2 * n) - swap_partition_cost(sc, n)) / n).get_d();
    };
    CHECK(slope(SwapScheme::Dijkstra) == doctest::Approx(2.0 / 3).epsilon(1e-4));
    CHECK(slope(SwapScheme::Meyer) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(slope(SwapScheme::Chen) == doctest::Approx(5.0 / 18).epsilon(1e-4));
}

TEST_CASE("misplaced groups and lower bound")
{
    for (unsigned n : {3u, 7u, 9u, 20u})
        for (const auto& g : misplaced_group_means(n))
            CHECK(g == ratio(n - 3, 12));
    CHECK(misplaced_lower_bound(7) == 1);
    CHECK_THROWS(misplaced_group_means(2));
}

TEST_CASE("Yaroslavskiy ACT model")
{
    // n = 4: pairs (s,l) with s+l <= 2, sum l(2s+m) / (2 * 6)
    // (0,1): 1, (0,2): 0, (1,1): 2 -> 3/12
    CHECK(yaroslavskiy_act_model(4) == ratio(1, 4));
    Q a = yaroslavskiy_act_model(200000);
    CHECK(Q(a / 200000).get_d() == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("recurrence boundary values")
{
    auto p = partition_cost_table_exact(CostSeries::NIdeal, 12);
    auto c = recurrence_solve(p);
    CHECK(c[0] == 0);
    CHECK(c[1] == 0);
    CHECK(c[2] == 1);
    // n = 3: P = 2 + 1/3; recursion on one element after each pivot pair
    CHECK(c[3] == ratio(7, 3));
    auto fl = recurrence_solve(partition_cost_table(CostSeries::NIdeal, 12));
    for (unsigned n = 0; n <= 12; ++n)
        CHECK(std::fabs(static_cast<double>(fl[n] - to_long_double(c[n]))) < 1e-9);

    auto p5 = p;
    auto c5 = recurrence_solve(p5, PivotModel::Sample5);
    auto f5 = recurrence_solve(partition_cost_table(CostSeries::NIdeal, 12), PivotModel::Sample5);
    for (unsigned n = 0; n <= 12; ++n)
        CHECK(std::fabs(static_cast<double>(f5[n] - to_long_double(c5[n]))) < 1e-9);
    CHECK(c5[4] == c[4]);
}

TEST_CASE("leading coefficients from the recurrence")
{
    const unsigned n = 500000;
    auto lin = recurrence_solve(linear_cost_table(1.0L, 2 * n));
    CHECK(leading_coefficient_estimate(lin, n) == doctest::Approx(1.2).epsilon(1e-3));
    auto ni = recurrence_solve(partition_cost_table(CostSeries::NIdeal, 2 * n));
    CHECK(leading_coefficient_estimate(ni, n) == doctest::Approx(1.8).epsilon(0.01 / 1.8));
    auto ob = recurrence_solve(partition_cost_table(CostSeries::Oblivious, 2 * n));
    CHECK(leading_coefficient_estimate(ob, n) == doctest::Approx(2.0).epsilon(0.005));
    CHECK_THROWS(leading_coefficient_estimate(ob, n + 1));

    const unsigned m = 4000;
    auto lin5 = recurrence_solve(linear_cost_table(1.0L, 2 * m), PivotModel::Sample5, 0.0L);
    CHECK(leading_coefficient_estimate(lin5, m) == doctest::Approx(20.0 / 19).epsilon(2e-3));
}

TEST_CASE("sampling coefficients")
{
    CHECK(median_qs_coefficient(5) == ratio(60, 37));
    CHECK(median_qs_coefficient(1) == 2);
    CHECK(tertile_dpqs_coefficient(5, 1) == ratio(20, 19));
    CHECK_THROWS(median_qs_coefficient(4));
    CHECK_THROWS(tertile_dpqs_coefficient(7, 1));
    CHECK_THROWS(sample_k_partition_cost(6, 20));
    CHECK_THROWS(sample_k_partition_cost(5, 4));
    CHECK_THROWS(sample5_partition_cost(Sample5Model::NIdeal, 4));
}

TEST_CASE("sample of five partition cost by direct enumeration")
{
    // n = 5: the sample is the whole array; s, m, l over the remaining three.
    // N model: 4/3 n + 2/C(5,5) * sum_{s<=l} s^2 m l -> only (1,1,1): 1
    CHECK(sample5_partition_cost(Sample5Model::NIdeal, 5) == ratio(20, 3) + 2);
    // k = 5 variant (s, m, l >= 1 by the binomial weights): same at n = 5
    CHECK(sample_k_partition_cost(5, 5) == ratio(20, 3) + 2);
    for (unsigned n = 5; n <= 40; ++n)
        CHECK(sample_k_partition_cost(5, n) == sample5_partition_cost(Sample5Model::NIdeal, n));

    unsigned n = 2000;
    double y = slope_estimate(sample5_partition_cost(Sample5Model::YaroslavskiyModel, n),
                              sample5_partition_cost(Sample5Model::YaroslavskiyModel, 2 * n), n);
    double ni = slope_estimate(sample5_partition_cost(Sample5Model::NIdeal, n),
                               sample5_partition_cost(Sample5Model::NIdeal, 2 * n), n);
    CHECK(y == doctest::Approx(34.0 / 21).epsilon(1e-3));
    CHECK(ni == doctest::Approx(37.0 / 24).epsilon(1e-3));
}

TEST_CASE("zero crossings")
{
    CHECK(expected_zero_crossings(2) == 1);
    CHECK(expected_zero_crossings(4) == ratio(13, 12));
    CHECK(expected_zero_crossings(6) == ratio(52, 45));
    CHECK(expected_zero_crossings(8) == ratio(341, 280));
    CHECK_THROWS(expected_zero_crossings(5));
    auto z = zero_crossing_series(64);
    for (unsigned n = 2; n <= 64; n += 2)
        CHECK(static_cast<double>(z[n]) ==
              doctest::Approx(to_long_double(expected_zero_crossings(n))).epsilon(1e-12));
    auto big = zero_crossing_series(1u << 13);
    double prev = 0;
    for (unsigned n = 2; n + 2 <= (1u << 13); n += 2) {
        CHECK(big[n + 2] >= big[n]);
    }
    for (unsigned e = 6; e < 13; ++e) {
        double d = static_cast<double>(big[1u << (e + 1)] - big[1u << e]);
        if (e > 6)
            CHECK(std::fabs(d - prev) < 0.05);
        prev = d;
    }
}

TEST_CASE("rendering")
{
    CHECK(to_fraction(Q(2)) == "2/1");
    CHECK(to_fraction(Q(-3, 6)) == "-1/2");
    CHECK(to_decimal(ratio(2, 3), 4) == "0.6667");
    CHECK(to_decimal(ratio(-1, 8), 2) == "-0.13");
    CHECK(to_decimal(Q(5), 0) == "5");
    CHECK(from_int128(static_cast<__int128>(1) << 100) == Q(mpz_class("1267650600228229401496703205376")));
    CHECK(harmonic(3) == ratio(11, 6));
    BinomialTable b(10);
    CHECK(b(10, 3) == 120);
    CHECK(b(3, 5) == 0);
    CHECK(b(-1, 0) == 0);
}
