#pragma once

#include "dpqs/analysis.hpp"
#include "dpqs/sort.hpp"

#include <array>
#include <map>
#include <utility>
#include <variant>

namespace dpqs {

enum class MetricId : std::uint8_t {
    ComparisonsPartition, // includes the pivot-ordering comparison
    ComparisonsSort,
    SwapsPartition, // excludes the pivot-ordering swap
    SwapsSort,
    Act,            // partition comparisons - (n-2) - m
    MisplacedCounts // total misplaced inner elements, subject ignored
};

std::string_view to_string(MetricId m);
MetricId parse_metric(std::string_view name);

struct OracleOptions {
    unsigned limit = 9;
    unsigned workers = 1; // 0: one per hardware thread
    SampleRule rule = SampleRule::PaperNinth;
};

using OracleSubject = std::variant<PartitionerId, SortConfig>;

struct OracleResult {
    ExactNumber mean;
    std::uint64_t permutations = 0;
    std::uint64_t runs = 0; // permutations times coin-tree leaves
};

// Exact mean of a metric over all n! permutations of 1..n. Coin flips are
// expanded into a full tree, each leaf weighted by its exact probability.
OracleResult exhaustive_run(unsigned n, const OracleSubject& subject, MetricId metric,
                            const OracleOptions& opt = {});
ExactNumber exhaustive_average(unsigned n, const OracleSubject& subject, MetricId metric,
                               const OracleOptions& opt = {});

using PairTable = std::map<std::pair<unsigned, unsigned>, ExactNumber>;

// Mean ACT of the classification strategy for each (s, l), direct pivots.
PairTable exhaustive_act_table(unsigned n, StrategyId strategy, const OracleOptions& opt = {});

// Same six groups as misplaced_group_means, by enumeration.
std::array<ExactNumber, 6> exhaustive_misplaced(unsigned n, const OracleOptions& opt = {});

// Probability of each pivot pair (p, q) (values, p < q) after pivot selection.
PairTable exhaustive_pivot_pair_frequencies(unsigned n, const PivotSelector& selector,
                                            const OracleOptions& opt = {});

// Mean number of balanced suffixes over all arrangements of s small and n - s
// large elements, s uniform on 1..n/2.
ExactNumber exhaustive_zero_crossings(unsigned n, const OracleOptions& opt = {});

} // namespace dpqs
