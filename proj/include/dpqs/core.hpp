#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Arrays are indexed from 0. A subarray is the closed range [left, right].

namespace dpqs {

struct CostCounters {
    std::uint64_t comparisons = 0;
    std::uint64_t swaps = 0;

    CostCounters& operator+=(const CostCounters& o)
    {
        comparisons += o.comparisons;
        swaps += o.swaps;
        return *this;
    }
};

// Integer or byte-string key. Kinds never mix inside one array.
using Key = std::variant<std::int64_t, std::string>;

class KeyKindMismatch : public std::invalid_argument {
public:
    KeyKindMismatch() : std::invalid_argument("compare_lt: mixed key kinds") {}
};

template <class T>
inline bool compare_lt(const T& a, const T& b, CostCounters& c)
{
    ++c.comparisons;
    return a < b;
}

bool compare_lt(const Key& a, const Key& b, CostCounters& c);

template <class T>
inline void swap_elements(std::span<T> arr, std::size_t i, std::size_t j, CostCounters& c)
{
    if (i >= arr.size() || j >= arr.size())
        throw std::out_of_range("swap_elements: index out of range");
    ++c.swaps;
    using std::swap;
    swap(arr[i], arr[j]);
}

inline constexpr std::string_view kGeneratorId = "mt19937_64/lemire-fisher-yates";

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

// Deterministic seed mixing (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

template <class T>
void shuffle(std::span<T> arr, Rng& rng)
{
    for (std::size_t i = arr.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        using std::swap;
        swap(arr[i - 1], arr[j]);
    }
}

std::vector<std::int64_t> random_permutation(std::size_t n, std::uint64_t seed);

template <class T>
bool verify_sorted_permutation(std::span<const T> output, std::span<const T> input)
{
    if (output.size() != input.size())
        return false;
    if (!std::is_sorted(output.begin(), output.end()))
        return false;
    if (std::is_sorted(input.begin(), input.end()))
        return std::equal(input.begin(), input.end(), output.begin());
    std::vector<T> a(input.begin(), input.end());
    std::sort(a.begin(), a.end());
    return std::equal(a.begin(), a.end(), output.begin());
}

template <class T>
bool verify_sorted_permutation(const std::vector<T>& output, const std::vector<T>& input)
{
    return verify_sorted_permutation(std::span<const T>(output), std::span<const T>(input));
}

} // namespace dpqs
