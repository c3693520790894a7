#pragma once

#include "dpqs/classify.hpp"
#include "dpqs/core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dpqs {

struct PartitionResult {
    std::size_t pos_p = 0;
    std::size_t pos_q = 0;
};

enum class SwapScheme : std::uint8_t {
    Dijkstra,       // SwapA
    Meyer,          // SwapB
    Chen,           // SwapC, fixed two-stage comparison order
    MeyerSwitching, // SwapB run small-first or mirrored large-first, decided by s vs l
};

enum class PartitionerKind : std::uint8_t {
    Yaroslavskiy,
    Sedgewick,
    SedgewickModified,
    SimpleSmall,
    SimpleLarge,
    NSampled,
    Composed,
};

struct PartitionerId {
    PartitionerKind kind = PartitionerKind::Yaroslavskiy;
    std::optional<StrategyId> strategy; // Composed only
    SwapScheme scheme = SwapScheme::Dijkstra;
    SampleRule rule = SampleRule::PaperNinth;

    static PartitionerId of(PartitionerKind k, SampleRule r = SampleRule::PaperNinth)
    {
        PartitionerId id;
        id.kind = k;
        id.rule = r;
        return id;
    }
    static PartitionerId composed(std::optional<StrategyId> s, SwapScheme sc,
                                  SampleRule r = SampleRule::PaperNinth)
    {
        PartitionerId id;
        id.kind = PartitionerKind::Composed;
        id.strategy = s;
        id.scheme = sc;
        id.rule = r;
        return id;
    }
};

std::string_view to_string(SwapScheme s);
SwapScheme parse_swap_scheme(std::string_view name);
std::string_view to_string(PartitionerKind k);
PartitionerKind parse_partitioner_kind(std::string_view name);

// Throws std::invalid_argument for combinations that have no meaning.
void validate(const PartitionerId& id);
std::string label(const PartitionerId& id);

// Every partitioner id with a meaningful configuration.
std::vector<PartitionerId> all_partitioners(SampleRule rule = SampleRule::PaperNinth);

namespace detail {

using Index = std::ptrdiff_t;

template <class T>
void check_range(std::span<T> a, std::size_t left, std::size_t right)
{
    if (right <= left)
        throw std::invalid_argument("partition: requires right - left >= 1");
    if (right >= a.size())
        throw std::out_of_range("partition: right out of range");
}

template <class T>
struct Ops {
    std::span<T> a;
    CostCounters& c;

    bool lt(const T& x, const T& y) { return compare_lt(x, y, c); }
    void swap(Index i, Index j)
    {
        swap_elements(a, static_cast<std::size_t>(i), static_cast<std::size_t>(j), c);
    }
};

} // namespace detail

// All partitioners expect p = a[left] and q = a[right] already ordered.

template <class T>
PartitionResult yaroslavskiy_partition(std::span<T> a, std::size_t left, std::size_t right,
                                       CostCounters& c)
{
    using detail::Index;
    detail::check_range(a, left, right);
    detail::Ops<T> op{a, c};
    const T p = a[left];
    const T q = a[right];
    Index l = static_cast<Index>(left) + 1;
    Index g = static_cast<Index>(right) - 1;
    Index k = l;
    while (k <= g) {
        if (op.lt(a[k], p)) {
            op.swap(k, l);
            ++l;
        } else if (op.lt(q, a[k])) {
            while (op.lt(q, a[g]) && k < g)
                --g;
            op.swap(k, g);
            --g;
            if (op.lt(a[k], p)) {
                op.swap(k, l);
                ++l;
            }
        }
        ++k;
    }
    op.swap(static_cast<Index>(left), l - 1);
    op.swap(static_cast<Index>(right), g + 1);
    return {static_cast<std::size_t>(l - 1), static_cast<std::size_t>(g + 1)};
}

namespace detail {

// Smaller-pivot-first loop with Dijkstra-style swaps; stops after `budget`
// classifications. Region layout: [l0,l) small, [l,k) medium, (g,hi] large.
template <class T>
std::size_t simple_small_loop(Ops<T>& op, const T& p, const T& q, Index& l, Index& k, Index& g,
                              std::size_t budget)
{
    std::size_t done = 0;
    auto& a = op.a;
    while (k <= g && done < budget) {
        if (op.lt(a[k], p)) {
            op.swap(k, l);
            ++l;
            ++k;
        } else if (op.lt(a[k], q)) {
            ++k;
        } else {
            op.swap(k, g);
            --g;
        }
        ++done;
    }
    return done;
}

// Larger-pivot-first loop, same layout. The scan for large elements at g is
// guarded by k <= g, and the exchange test is k < g.
template <class T>
void simple_large_loop(Ops<T>& op, const T& p, const T& q, Index& l, Index& k, Index& g)
{
    auto& a = op.a;
    while (k <= g) {
        while (k <= g && op.lt(q, a[g]))
            --g;
        if (k > g)
            break;
        while (k < g && op.lt(a[k], q)) {
            if (op.lt(a[k], p)) {
                op.swap(k, l);
                ++l;
            }
            ++k;
        }
        if (k < g) {
            op.swap(k, g);
            if (op.lt(a[k], p)) {
                op.swap(l, k);
                ++l;
            }
            --g;
        } else if (op.lt(a[k], p)) {
            op.swap(k, l);
            ++l;
        }
        ++k;
    }
}

template <class T>
PartitionResult place_pivots(Ops<T>& op, std::size_t left, std::size_t right, Index l, Index g)
{
    op.swap(static_cast<Index>(left), l - 1);
    op.swap(static_cast<Index>(right), g + 1);
    return {static_cast<std::size_t>(l - 1), static_cast<std::size_t>(g + 1)};
}

} // namespace detail

template <class T>
PartitionResult simple_partition_small(std::span<T> a, std::size_t left, std::size_t right,
                                       CostCounters& c)
{
    using detail::Index;
    detail::check_range(a, left, right);
    detail::Ops<T> op{a, c};
    const T p = a[left];
    const T q = a[right];
    Index l = static_cast<Index>(left) + 1;
    Index g = static_cast<Index>(right) - 1;
    Index k = l;
    detail::simple_small_loop(op, p, q, l, k, g, static_cast<std::size_t>(-1));
    return detail::place_pivots(op, left, right, l, g);
}

template <class T>
PartitionResult simple_partition_large(std::span<T> a, std::size_t left, std::size_t right,
                                       CostCounters& c)
{
    using detail::Index;
    detail::check_range(a, left, right);
    detail::Ops<T> op{a, c};
    const T p = a[left];
    const T q = a[right];
    Index l = static_cast<Index>(left) + 1;
    Index g = static_cast<Index>(right) - 1;
    Index k = l;
    detail::simple_large_loop(op, p, q, l, k, g);
    return detail::place_pivots(op, left, right, l, g);
}

// Smaller pivot first for the first sz classifications, then larger pivot
// first if more large than small elements were seen.
template <class T>
PartitionResult strategy_n_partition(std::span<T> a, std::size_t left, std::size_t right,
                                     CostCounters& c, SampleRule rule = SampleRule::PaperNinth)
{
    using detail::Index;
    detail::check_range(a, left, right);
    detail::Ops<T> op{a, c};
    const T p = a[left];
    const T q = a[right];
    const Index lo = static_cast<Index>(left) + 1;
    const Index hi = static_cast<Index>(right) - 1;
    Index l = lo;
    Index g = hi;
    Index k = l;
    std::size_t budget = sample_size(rule, right - left + 1);
    detail::simple_small_loop(op, p, q, l, k, g, budget);
    Index smalls = l - lo;
    Index larges = hi - g;
    if (larges > smalls)
        detail::simple_large_loop(op, p, q, l, k, g);
    else
        detail::simple_small_loop(op, p, q, l, k, g, static_cast<std::size_t>(-1));
    return detail::place_pivots(op, left, right, l, g);
}

// Hole-based partitioning. Each hole move and each double exchange counts as
// one swap; the final pivot writes are not counted.
template <class T>
PartitionResult sedgewick_partition(std::span<T> a, std::size_t left, std::size_t right,
                                    CostCounters& c)
{
    using detail::Index;
    detail::check_range(a, left, right);
    detail::Ops<T> op{a, c};
    const T p = a[left];
    const T q = a[right];
    Index i = static_cast<Index>(left);
    Index i1 = i;
    Index j = static_cast<Index>(right);
    Index j1 = j;
    while (true) {
        ++i;
        while (!op.lt(q, a[i])) {
            if (i >= j)
                goto done;
            if (op.lt(a[i], p)) {
                a[i1] = a[i];
                ++i1;
                a[i] = a[i1];
                ++c.swaps;
            }
            ++i;
        }
        --j;
        while (!op.lt(a[j], p)) {
            if (op.lt(q, a[j])) {
                a[j1] = a[j];
                --j1;
                a[j] = a[j1];
                ++c.swaps;
            }
            if (i >= j)
                goto done;
            --j;
        }
        a[i1] = a[j];
        a[j1] = a[i];
        ++i1;
        --j1;
        a[i] = a[i1];
        a[j] = a[j1];
        ++c.swaps;
    }
done:
    a[i1] = p;
    a[j1] = q;
    return {static_cast<std::size_t>(i1), static_cast<std::size_t>(j1)};
}

template <class T>
PartitionResult sedgewick_modified_partition(std::span<T> a, std::size_t left, std::size_t right,
                                             CostCounters& c)
{
    using detail::Index;
    detail::check_range(a, left, right);
    detail::Ops<T> op{a, c};
    const T p = a[left];
    const T q = a[right];
    Index i = static_cast<Index>(left);
    Index i1 = i;
    Index j = static_cast<Index>(right);
    Index j1 = j;
    while (true) {
        ++i;
        while (true) {
            if (i >= j)
                goto done;
            if (op.lt(a[i], p)) {
                a[i1] = a[i];
                ++i1;
                a[i] = a[i1];
                ++c.swaps;
            } else if (op.lt(q, a[i])) {
                break;
            }
            ++i;
        }
        --j;
        while (true) {
            if (op.lt(q, a[j])) {
                a[j1] = a[j];
                --j1;
                a[j] = a[j1];
                ++c.swaps;
            } else if (op.lt(a[j], p)) {
                break;
            }
            if (i >= j)
                goto done;
            --j;
        }
        a[i1] = a[j];
        a[j1] = a[i];
        ++i1;
        --j1;
        a[i] = a[i1];
        a[j] = a[j1];
        ++c.swaps;
    }
done:
    a[i1] = p;
    a[j1] = q;
    return {static_cast<std::size_t>(i1), static_cast<std::size_t>(j1)};
}

namespace detail {

inline constexpr signed char kUnknown = -1;

// Classification front end for the swap schemes: consults the strategy once
// per element and remembers classes of elements that were inspected but not
// yet settled. The memo travels with the elements on every swap.
template <class T>
struct DnfContext {
    Ops<T> op;
    T p;
    T q;
    Index lo;
    ClassifierState st;
    std::vector<signed char>& memo;

    ElementClass classify(Index pos)
    {
        signed char& m = memo[static_cast<std::size_t>(pos - lo)];
        if (m != kUnknown) {
            auto cls = static_cast<ElementClass>(m);
            m = kUnknown;
            return cls;
        }
        return classify_next(st, op.a[pos], p, q, op.c);
    }
    void remember(Index pos, ElementClass cls)
    {
        memo[static_cast<std::size_t>(pos - lo)] = static_cast<signed char>(cls);
    }
    void swap(Index i, Index j)
    {
        op.swap(i, j);
        std::swap(memo[static_cast<std::size_t>(i - lo)], memo[static_cast<std::size_t>(j - lo)]);
    }
};

inline std::vector<signed char>& dnf_memo(std::size_t size)
{
    thread_local std::vector<signed char> memo;
    memo.assign(size, kUnknown);
    return memo;
}

// Layout while running: [lo,i) small, [i,j] open, (j,k] medium, (k,hi] large.
template <class T>
void dijkstra_swap(DnfContext<T>& x, Index& i, Index& k, Index hi)
{
    Index j = hi;
    k = hi;
    while (i <= j) {
        switch (x.classify(j)) {
        case ElementClass::Small:
            x.swap(i, j);
            ++i;
            break;
        case ElementClass::Medium:
            --j;
            break;
        case ElementClass::Large:
            x.swap(j, k);
            --j;
            --k;
            break;
        }
    }
}

template <class T>
void meyer_swap(DnfContext<T>& x, Index& i, Index& k, Index hi)
{
    Index j = hi;
    k = hi;
    while (i <= j) {
        switch (x.classify(j)) {
        case ElementClass::Small: {
            bool found = false;
            while (i < j) {
                ElementClass ci = x.classify(i);
                if (ci != ElementClass::Small) {
                    x.remember(i, ci);
                    found = true;
                    break;
                }
                ++i;
            }
            if (found)
                x.swap(i, j);
            ++i;
            break;
        }
        case ElementClass::Medium:
            --j;
            break;
        case ElementClass::Large:
            x.swap(j, k);
            --j;
            --k;
            break;
        }
    }
}

// Mirror image of meyer_swap: scans left to right and skips large elements
// already sitting in the large block.
// Layout: [lo,k) small, [k,j) medium, [j,i] open, (i,hi] large.
template <class T>
void meyer_swap_mirrored(DnfContext<T>& x, Index& k, Index& i, Index lo, Index hi)
{
    Index j = lo;
    k = lo;
    i = hi;
    while (j <= i) {
        switch (x.classify(j)) {
        case ElementClass::Large: {
            bool found = false;
            while (j < i) {
                ElementClass ci = x.classify(i);
                if (ci != ElementClass::Large) {
                    x.remember(i, ci);
                    found = true;
                    break;
                }
                --i;
            }
            if (found)
                x.swap(i, j);
            --i;
            break;
        }
        case ElementClass::Medium:
            ++j;
            break;
        case ElementClass::Small:
            x.swap(j, k);
            ++j;
            ++k;
            break;
        }
    }
}

// Two stages: small elements to the left (one comparison with p each), then
// large elements to the right of the remainder (one comparison with q each).
// Returns the start of the medium block and the start of the large block.
template <class T>
std::pair<Index, Index> chen_swap(Ops<T>& op, const T& p, const T& q, Index lo, Index hi)
{
    auto& a = op.a;
    Index i = lo;
    Index j = hi;
    while (true) {
        while (i <= j && op.lt(a[i], p))
            ++i;
        while (j > i && !op.lt(a[j], p))
            --j;
        if (j > i) {
            op.swap(i, j);
            ++i;
            --j;
        } else {
            break;
        }
    }
    const Index b = i;
    Index u = b;
    Index v = hi;
    while (true) {
        while (u <= v && !op.lt(q, a[u]))
            ++u;
        while (v > u && op.lt(q, a[v]))
            --v;
        if (v > u) {
            op.swap(u, v);
            ++u;
            --v;
        } else {
            break;
        }
    }
    return {b, u};
}

} // namespace detail

template <class T>
PartitionResult dnf_partition(std::span<T> a, std::size_t left, std::size_t right,
                              CostCounters& c, SwapScheme scheme,
                              std::optional<StrategyId> strategy, CoinSource* coin = nullptr,
                              SampleRule rule = SampleRule::PaperNinth)
{
    using detail::Index;
    detail::check_range(a, left, right);
    detail::Ops<T> op{a, c};
    const T p = a[left];
    const T q = a[right];
    const Index lo = static_cast<Index>(left) + 1;
    const Index hi = static_cast<Index>(right) - 1;

    if (scheme == SwapScheme::Chen) {
        auto [b, u] = detail::chen_swap(op, p, q, lo, hi);
        op.swap(static_cast<Index>(left), b - 1);
        op.swap(static_cast<Index>(right), u);
        return {static_cast<std::size_t>(b - 1), static_cast<std::size_t>(u)};
    }
    if (!strategy)
        throw std::invalid_argument("dnf_partition: scheme requires a strategy");

    std::optional<std::uint64_t> os;
    std::optional<std::uint64_t> ol;
    if (needs_oracle(*strategy)) {
        auto [s, l] = census(std::span<const T>(a.data(), a.size()), lo, hi, p, q);
        os = s;
        ol = l;
    }
    RngCoin fallback(0);
    if (coin == nullptr && needs_coin(*strategy))
        coin = &fallback;
    ClassifierState st = make_state(*strategy, right - left + 1, os, ol, coin, rule);
    auto& memo = detail::dnf_memo(static_cast<std::size_t>(hi - lo + 1));
    detail::DnfContext<T> x{op, p, q, lo, st, memo};

    Index small_end = lo; // one past the small block
    Index large_begin = hi + 1;
    switch (scheme) {
    case SwapScheme::Dijkstra: {
        Index k = hi;
        detail::dijkstra_swap(x, small_end, k, hi);
        large_begin = k + 1;
        break;
    }
    case SwapScheme::Meyer: {
        Index k = hi;
        detail::meyer_swap(x, small_end, k, hi);
        large_begin = k + 1;
        break;
    }
    case SwapScheme::MeyerSwitching: {
        bool small_first = true;
        if (*strategy == StrategyId::NIdeal) {
            small_first = *os > *ol;
        } else if (*strategy == StrategyId::NSampling) {
            // classify the sample at the right end, then decide
            Index sz = static_cast<Index>(x.st.sample_budget);
            for (Index pos = hi; pos >= lo && hi - pos < sz; --pos)
                x.remember(pos, classify_next(x.st, a[pos], p, q, c));
            small_first = x.st.seen_small >= x.st.seen_large;
        } else {
            throw std::invalid_argument("swap-b-switching requires n-ideal or n-sampling");
        }
        if (small_first) {
            Index k = hi;
            detail::meyer_swap(x, small_end, k, hi);
            large_begin = k + 1;
        } else {
            Index i = hi;
            detail::meyer_swap_mirrored(x, small_end, i, lo, hi);
            large_begin = i + 1;
        }
        break;
    }
    case SwapScheme::Chen:
        break;
    }
    op.swap(static_cast<Index>(left), small_end - 1);
    op.swap(static_cast<Index>(right), large_begin);
    return {static_cast<std::size_t>(small_end - 1), static_cast<std::size_t>(large_begin)};
}

template <class T>
PartitionResult partition(std::span<T> a, std::size_t left, std::size_t right,
                          const PartitionerId& id, CostCounters& c, CoinSource* coin = nullptr)
{
    switch (id.kind) {
    case PartitionerKind::Yaroslavskiy:
        return yaroslavskiy_partition(a, left, right, c);
    case PartitionerKind::Sedgewick:
        return sedgewick_partition(a, left, right, c);
    case PartitionerKind::SedgewickModified:
        return sedgewick_modified_partition(a, left, right, c);
    case PartitionerKind::SimpleSmall:
        return simple_partition_small(a, left, right, c);
    case PartitionerKind::SimpleLarge:
        return simple_partition_large(a, left, right, c);
    case PartitionerKind::NSampled:
        return strategy_n_partition(a, left, right, c, id.rule);
    case PartitionerKind::Composed:
        return dnf_partition(a, left, right, c, id.scheme, id.strategy, coin, id.rule);
    }
    throw std::invalid_argument("partition: unknown partitioner");
}

} // namespace dpqs
