#pragma once

#include "dpqs/classify.hpp"
#include "dpqs/partition.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dpqs {

using ExactNumber = mpq_class;

mpz_class binomial(unsigned long n, unsigned long k);
ExactNumber harmonic(unsigned long n);
ExactNumber from_int128(__int128 v);
// num/den in canonical form; mpq_class(num, den) alone is not reduced.
ExactNumber ratio(const mpz_class& num, const mpz_class& den);

std::string to_fraction(const ExactNumber& x); // "num/den", den always present
std::string to_decimal(const ExactNumber& x, int digits);
long double to_long_double(const ExactNumber& x);

// Pascal triangle of exact binomials up to a fixed n.
class BinomialTable {
public:
    explicit BinomialTable(unsigned n);
    const mpz_class& operator()(long n, long k) const;

private:
    unsigned n_;
    std::vector<std::vector<mpz_class>> rows_;
    mpz_class zero_;
};

// ---- comparisons of one partition step (uniform pivot pair) ----

// Strategies with an exact expected additional cost for fixed (s, l).
bool has_exact_act(StrategyId s);

// E[ACT | s, l] for a subarray of n elements (s + l <= n - 2).
ExactNumber expected_act(StrategyId strategy, unsigned s, unsigned l, unsigned n);

// (n-1) + (n-2)/3 + sum_{s+l<=n-2} E[ACT|s,l] / C(n,2), evaluated term by term.
ExactNumber direct_partition_cost(StrategyId strategy, unsigned n);

// Same value, through closed forms where they exist (O(1) per n for the
// oblivious family, N_IDEAL, S and S'), DP tables for O_ORACLE and L_COUNTING.
ExactNumber exact_partition_cost(StrategyId strategy, unsigned n);

// ---- swaps of one partition step, including the two pivot placements ----

ExactNumber expected_swaps(SwapScheme scheme, unsigned s, unsigned l, unsigned n);
ExactNumber direct_swap_cost(SwapScheme scheme, unsigned n);
ExactNumber swap_partition_cost(SwapScheme scheme, unsigned n);

// ---- cost tables for recurrences ----

enum class CostSeries : std::uint8_t {
    Oblivious,
    NIdeal,
    S,
    SPrime,
    SwapA,
    SwapB,
    SwapC,
    SwapBSwitching,
};

std::string_view to_string(CostSeries s);
CostSeries parse_cost_series(std::string_view name);
bool is_swap_series(CostSeries s);

// Values for n = 0..max_n; entries for n < 2 are zero.
std::vector<ExactNumber> partition_cost_table_exact(CostSeries series, unsigned max_n);
std::vector<long double> partition_cost_table(CostSeries series, unsigned max_n);
std::vector<long double> linear_cost_table(long double a, unsigned max_n);

enum class PivotModel : std::uint8_t { UniformPair, Sample5 };

// E(C_n) from E(P_n). C_0 = C_1 = 0. For Sample5 the sample-sorting cost
// (default: expected insertion-sort comparisons on five keys, 463/60) is
// charged at every level with n >= 5; smaller subarrays use the uniform pair.
std::vector<ExactNumber> recurrence_solve(const std::vector<ExactNumber>& partition_costs,
                                          PivotModel model = PivotModel::UniformPair);
std::vector<long double> recurrence_solve(const std::vector<long double>& partition_costs,
                                          PivotModel model = PivotModel::UniformPair,
                                          long double sample_cost = 463.0L / 60.0L);

// (C(2n) - 2 C(n)) / (2n ln 2): exact for a n ln n + b n.
double leading_coefficient_estimate(const std::vector<long double>& table, std::size_t n);

// ---- strategies O and L ----

// E[i][j] for i + j <= n: expected extra comparisons of O with i small and
// j large elements left.
std::vector<std::vector<ExactNumber>> act_oracle_dp(unsigned n);

// Expected ACT of L at fixed (s, l), by counting paths over
// (seen_small, seen_large). Throws std::length_error if (s+1)(l+1) > budget.
ExactNumber act_past_dp(unsigned s, unsigned l, std::uint64_t budget = 4'000'000);

// Per-(s,l) ACT of L for all s + l <= m, sharing one binomial table.
std::vector<std::vector<ExactNumber>> act_past_table(unsigned m);

// ---- pivot sampling ----

enum class Sample5Model : std::uint8_t { YaroslavskiyModel, NIdeal };

ExactNumber sample5_partition_cost(Sample5Model model, unsigned n);
ExactNumber sample_k_partition_cost(unsigned k, unsigned n);

ExactNumber median_qs_coefficient(unsigned k);
ExactNumber tertile_dpqs_coefficient(unsigned k, const ExactNumber& a);

// (P(2n) - P(n)) / n
double slope_estimate(const ExactNumber& p_n, const ExactNumber& p_2n, unsigned n);

struct Table1Row {
    unsigned k;
    double median_qs;
    double tertile_dpqs;
    double reference_median_qs;
    double reference_tertile_dpqs;
};

// Tertile slopes from the sample-of-k partition cost at n and 2n.
std::vector<Table1Row> table1(unsigned n = 10000);

// ---- zero crossings, misplaced elements, Yaroslavskiy model ----

// n even; s uniform on 1..n/2.
ExactNumber expected_zero_crossings(unsigned n);
// E(Z_n) for even n = 2, 4, ..., max_n (index n), floating point.
std::vector<long double> zero_crossing_series(unsigned max_n);

// Six group means: small in medium/large block, medium in small/large block,
// large in small/medium block. Blocks are the final ranges of the n-2 inner slots.
std::array<ExactNumber, 6> misplaced_group_means(unsigned n);
ExactNumber misplaced_lower_bound(unsigned n);

ExactNumber yaroslavskiy_act_model(unsigned n);

} // namespace dpqs
