#pragma once

#include "dpqs/classify.hpp"
#include "dpqs/core.hpp"
#include "dpqs/partition.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dpqs {

enum class SelectorMode : std::uint8_t { DirectEnds, Sample5Tertiles, SampleK, MedianOfK };

struct PivotSelector {
    SelectorMode mode = SelectorMode::DirectEnds;
    unsigned k = 0;

    static PivotSelector direct() { return {}; }
    static PivotSelector sample5() { return {SelectorMode::Sample5Tertiles, 5}; }
    static PivotSelector sample(unsigned k) { return {SelectorMode::SampleK, k}; }
    static PivotSelector median(unsigned k) { return {SelectorMode::MedianOfK, k}; }

    unsigned sample_size() const
    {
        switch (mode) {
        case SelectorMode::DirectEnds:
            return 2;
        case SelectorMode::Sample5Tertiles:
            return 5;
        default:
            return k;
        }
    }
};

// Accepts "direct", "sample5", "sample:K", "median:K".
PivotSelector parse_selector(std::string_view text);
std::string label(const PivotSelector& s);
void validate(const PivotSelector& s);

struct SortConfig {
    PartitionerId partitioner;
    PivotSelector selector;
    std::size_t cutoff = 16; // subarrays of at most this size go to insertion sort
    std::uint64_t seed = 0;  // drives coin-flipping strategies
};

void validate(const SortConfig& cfg);

template <class T>
void insertion_sort(std::span<T> a, std::size_t left, std::size_t right, CostCounters& c)
{
    if (right <= left)
        return;
    if (right >= a.size())
        throw std::out_of_range("insertion_sort: right out of range");
    for (std::size_t i = left + 1; i <= right; ++i)
        for (std::size_t j = i; j > left && compare_lt(a[j], a[j - 1], c); --j)
            swap_elements(a, j, j - 1, c);
}

namespace detail {

// Evenly spaced sample positions including both ends, sorted in place by a
// counted insertion sort over those positions.
template <class T>
std::vector<std::size_t> sort_sample(std::span<T> a, std::size_t left, std::size_t right,
                                     unsigned k, CostCounters& c)
{
    std::vector<std::size_t> pos(k);
    std::size_t span = right - left;
    for (unsigned i = 0; i < k; ++i)
        pos[i] = left + (k == 1 ? 0 : i * span / (k - 1));
    for (unsigned i = 1; i < k; ++i)
        for (unsigned j = i; j > 0 && compare_lt(a[pos[j]], a[pos[j - 1]], c); --j)
            swap_elements(a, pos[j], pos[j - 1], c);
    return pos;
}

} // namespace detail

// Moves the chosen pivots to a[left] and a[right]. Subarrays smaller than the
// sample fall back to the end elements.
template <class T>
void select_pivots(std::span<T> a, std::size_t left, std::size_t right,
                   const PivotSelector& sel, CostCounters& c)
{
    if (sel.mode == SelectorMode::DirectEnds || sel.mode == SelectorMode::MedianOfK)
        return;
    unsigned k = sel.sample_size();
    if (right - left + 1 < k)
        return;
    auto pos = detail::sort_sample(a, left, right, k, c);
    unsigned t1 = (k + 1) / 3 - 1;
    unsigned t2 = 2 * (k + 1) / 3 - 1;
    swap_elements(a, pos[t1], pos[0], c);
    swap_elements(a, pos[t2], pos[k - 1], c);
}

template <class T>
void select_median(std::span<T> a, std::size_t left, std::size_t right,
                   const PivotSelector& sel, CostCounters& c)
{
    if (sel.mode != SelectorMode::MedianOfK || sel.k <= 1 || right - left + 1 < sel.k)
        return;
    auto pos = detail::sort_sample(a, left, right, sel.k, c);
    swap_elements(a, pos[(sel.k + 1) / 2 - 1], pos[0], c);
}

namespace detail {

struct Segment {
    std::size_t lo; // half-open [lo, hi)
    std::size_t hi;
    std::size_t size() const { return hi - lo; }
};

template <class T>
void dqs(std::span<T> a, Segment seg, const SortConfig& cfg, CostCounters& c, CoinSource* coin)
{
    while (seg.size() > 1) {
        std::size_t left = seg.lo;
        std::size_t right = seg.hi - 1;
        if (seg.size() <= cfg.cutoff) {
            insertion_sort(a, left, right, c);
            return;
        }
        select_pivots(a, left, right, cfg.selector, c);
        if (compare_lt(a[right], a[left], c))
            swap_elements(a, left, right, c);
        PartitionResult r = partition(a, left, right, cfg.partitioner, c, coin);
        Segment parts[3] = {{left, r.pos_p}, {r.pos_p + 1, r.pos_q}, {r.pos_q + 1, right + 1}};
        std::size_t big = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (parts[i].size() > parts[big].size())
                big = i;
        for (std::size_t i = 0; i < 3; ++i)
            if (i != big)
                dqs(a, parts[i], cfg, c, coin);
        seg = parts[big];
    }
}

template <class T>
void single_pivot_qs(std::span<T> a, Segment seg, const SortConfig& cfg, CostCounters& c)
{
    while (seg.size() > 1) {
        std::size_t left = seg.lo;
        std::size_t right = seg.hi - 1;
        if (seg.size() <= cfg.cutoff) {
            insertion_sort(a, left, right, c);
            return;
        }
        select_median(a, left, right, cfg.selector, c);
        const T pivot = a[left];
        std::size_t i = left;
        for (std::size_t j = left + 1; j <= right; ++j) {
            if (compare_lt(a[j], pivot, c)) {
                ++i;
                swap_elements(a, i, j, c);
            }
        }
        swap_elements(a, left, i, c);
        Segment lo{left, i};
        Segment hi{i + 1, right + 1};
        if (lo.size() < hi.size()) {
            single_pivot_qs(a, lo, cfg, c);
            seg = hi;
        } else {
            single_pivot_qs(a, hi, cfg, c);
            seg = lo;
        }
    }
}

} // namespace detail

template <class T>
void dual_pivot_quicksort(std::span<T> a, const SortConfig& cfg, CostCounters& c,
                          CoinSource* coin = nullptr)
{
    validate(cfg);
    RngCoin own(cfg.seed);
    if (coin == nullptr)
        coin = &own;
    detail::dqs(a, {0, a.size()}, cfg, c, coin);
}

// Single-pivot quicksort; the pivot is a[left] or the median of a sample of k.
template <class T>
void classic_quicksort(std::span<T> a, const SortConfig& cfg, CostCounters& c)
{
    if (cfg.cutoff < 1)
        throw std::invalid_argument("cutoff must be at least 1");
    if (cfg.selector.mode != SelectorMode::DirectEnds && cfg.selector.mode != SelectorMode::MedianOfK)
        throw std::invalid_argument("classic quicksort takes direct or median:K pivots");
    validate(cfg.selector);
    detail::single_pivot_qs(a, {0, a.size()}, cfg, c);
}

// Median-of-three single-pivot quicksort.
template <class T>
void clever_quicksort(std::span<T> a, const SortConfig& cfg, CostCounters& c)
{
    SortConfig m = cfg;
    m.selector = PivotSelector::median(3);
    classic_quicksort(a, m, c);
}

} // namespace dpqs
