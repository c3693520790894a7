#pragma once

#include "dpqs/classify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpqs::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format : std::uint8_t { Csv, Json, Table };

// Rows of rendered cells; numeric columns are emitted as JSON numbers.
struct Table {
    std::vector<std::string> columns;
    std::vector<bool> numeric;
    std::vector<std::vector<std::string>> rows;
};

void write_table(const Table& t, Format f, std::ostream& out);

struct RunSpec {
    std::string command;
    std::vector<std::uint64_t> sizes;
    std::uint64_t trials = 10;
    std::uint64_t seed = 1;
    std::vector<std::string> partitioners;
    std::vector<std::string> strategies;
    std::optional<std::string> swap_scheme;
    std::string selector = "direct";
    std::size_t cutoff = 16;
    SampleRule rule = SampleRule::PaperNinth;
    std::optional<std::string> input;
    Format format = Format::Csv;
    std::optional<std::string> out;
    unsigned workers = 1;
    bool timing = false;
    bool emit = false;
    std::string pivot_model = "uniform";
    std::vector<std::string> quantities;
    std::uint64_t exact_limit = 500;
    std::uint64_t oracle_limit = 9;
    std::optional<std::string> inject_fault; // oracle-check: perturb one expected value
};

// "3,5,8", "3..8", stepped "2..16+2" and doubling "64..8192*2" are accepted.
std::vector<std::uint64_t> parse_sizes(const std::string& text);

struct BenchRecord {
    std::uint64_t n = 0;
    std::string strategy; // algorithm label
    std::string selector;
    std::uint64_t trials = 0;
    double mean_comparisons = 0;
    double stderr_comparisons = 0;
    double mean_swaps = 0;
    double stderr_swaps = 0;
    double scaled_comparisons = 0; // mean / (n ln n)
    std::uint64_t seed = 0;
    std::string generator_id;
    std::string keys; // "int" or "string"
    std::optional<double> mean_seconds;
};

std::vector<BenchRecord> cmd_bench(const RunSpec& spec);
Table bench_table(const std::vector<BenchRecord>& records, bool timing);

Table cmd_sort(const RunSpec& spec, std::ostream* emit);
Table cmd_exact(const RunSpec& spec);
Table cmd_table1(const RunSpec& spec);
Table cmd_zerocross(const RunSpec& spec);

struct CheckReport {
    Table table;
    std::vector<std::string> mismatches;
};
CheckReport cmd_oracle_check(const RunSpec& spec);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dpqs::cli
