#pragma once

#include "dpqs/core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace dpqs {

enum class PivotChoice : std::uint8_t { PFirst, QFirst };

enum class ElementClass : std::uint8_t { Small, Medium, Large };

enum class StrategyId : std::uint8_t {
    SmallerFirst,
    LargerFirst,
    Alternate,
    Coin,
    SAbstract,
    SPrimeAbstract,
    NSampling,
    LCounting,
    OOracle,
    NIdeal,
};

inline constexpr std::array<StrategyId, 10> kAllStrategies = {
    StrategyId::SmallerFirst, StrategyId::LargerFirst, StrategyId::Alternate,
    StrategyId::Coin,         StrategyId::SAbstract,   StrategyId::SPrimeAbstract,
    StrategyId::NSampling,    StrategyId::LCounting,   StrategyId::OOracle,
    StrategyId::NIdeal,
};

// Sample size used by N_SAMPLING: max(floor(n/100), 7) or ceil(n^(2/3)).
enum class SampleRule : std::uint8_t { PaperNinth, Theory };

std::string_view to_string(StrategyId s);
StrategyId parse_strategy(std::string_view name);
std::string_view to_string(SampleRule r);
SampleRule parse_sample_rule(std::string_view name);

std::uint64_t sample_size(SampleRule rule, std::uint64_t n);

// Strategies that need the true small/large counts of the subarray.
bool needs_oracle(StrategyId s);
// Strategies that consume coin flips.
bool needs_coin(StrategyId s);

class CoinSource {
public:
    virtual ~CoinSource() = default;
    // true with probability num/den
    virtual bool flip(std::uint64_t num, std::uint64_t den) = 0;
};

class RngCoin : public CoinSource {
public:
    explicit RngCoin(std::uint64_t seed) : seed_(seed) {}
    bool flip(std::uint64_t num, std::uint64_t den) override;

private:
    std::uint64_t seed_;
    std::optional<Rng> rng_; // seeded on first use

};

struct ClassifierState {
    StrategyId strategy = StrategyId::SmallerFirst;
    std::uint64_t seen_small = 0;
    std::uint64_t seen_medium = 0;
    std::uint64_t seen_large = 0;
    std::optional<std::uint64_t> oracle_small;
    std::optional<std::uint64_t> oracle_large;
    std::uint64_t sample_budget = 0;
    std::optional<PivotChoice> locked_choice;
    CoinSource* coin = nullptr;

    std::uint64_t level() const { return seen_small + seen_medium + seen_large; }
    void record(ElementClass cls);
};

// n is the subarray length including both pivots.
ClassifierState make_state(StrategyId strategy, std::uint64_t n,
                           std::optional<std::uint64_t> oracle_small = std::nullopt,
                           std::optional<std::uint64_t> oracle_large = std::nullopt,
                           CoinSource* coin = nullptr,
                           SampleRule rule = SampleRule::PaperNinth);

[[noreturn, gnu::cold]] void missing_input(const ClassifierState& st, const char* what);

inline void ClassifierState::record(ElementClass cls)
{
    switch (cls) {
    case ElementClass::Small:
        ++seen_small;
        break;
    case ElementClass::Medium:
        ++seen_medium;
        break;
    case ElementClass::Large:
        ++seen_large;
        break;
    }
    if (strategy == StrategyId::NSampling && !locked_choice && level() >= sample_budget)
        locked_choice = seen_small < seen_large ? PivotChoice::QFirst : PivotChoice::PFirst;
}

inline PivotChoice choose_first_pivot(ClassifierState& st)
{
    using enum StrategyId;
    auto need_oracle = [&] {
        if (!st.oracle_small || !st.oracle_large) [[unlikely]]
            missing_input(st, "oracle counts");
    };
    auto need_coin = [&] {
        if (st.coin == nullptr) [[unlikely]]
            missing_input(st, "a coin source");
    };
    switch (st.strategy) {
    case SmallerFirst:
        return PivotChoice::PFirst;
    case LargerFirst:
        return PivotChoice::QFirst;
    case Alternate:
        return st.level() % 2 == 0 ? PivotChoice::PFirst : PivotChoice::QFirst;
    case Coin:
        need_coin();
        return st.coin->flip(1, 2) ? PivotChoice::PFirst : PivotChoice::QFirst;
    case SAbstract: {
        need_oracle();
        std::uint64_t total = *st.oracle_small + *st.oracle_large;
        if (total == 0)
            return PivotChoice::PFirst;
        need_coin();
        return st.coin->flip(*st.oracle_small, total) ? PivotChoice::QFirst : PivotChoice::PFirst;
    }
    case SPrimeAbstract: {
        need_oracle();
        std::uint64_t total = *st.oracle_small + *st.oracle_large;
        if (total == 0)
            return PivotChoice::QFirst;
        need_coin();
        return st.coin->flip(*st.oracle_small, total) ? PivotChoice::PFirst : PivotChoice::QFirst;
    }
    case NSampling:
        return st.locked_choice.value_or(PivotChoice::PFirst);
    case LCounting:
        return st.seen_small > st.seen_large ? PivotChoice::PFirst : PivotChoice::QFirst;
    case OOracle:
        need_oracle();
    {
        // signed: with duplicate keys the census and the classifier may disagree
        auto rest_s = static_cast<std::int64_t>(*st.oracle_small - st.seen_small);
        auto rest_l = static_cast<std::int64_t>(*st.oracle_large - st.seen_large);
        return rest_s > rest_l ? PivotChoice::PFirst : PivotChoice::QFirst;
    }
    case NIdeal:
        need_oracle();
        return *st.oracle_small > *st.oracle_large ? PivotChoice::PFirst : PivotChoice::QFirst;
    }
    return PivotChoice::PFirst;
}

// Classification with a fixed first pivot; no precondition check.
template <class T>
inline ElementClass classify_counted(const T& key, const T& p, const T& q, PivotChoice choice,
                                     CostCounters& c)
{
    if (choice == PivotChoice::PFirst) {
        if (compare_lt(key, p, c))
            return ElementClass::Small;
        return compare_lt(key, q, c) ? ElementClass::Medium : ElementClass::Large;
    }
    if (compare_lt(q, key, c))
        return ElementClass::Large;
    return compare_lt(key, p, c) ? ElementClass::Small : ElementClass::Medium;
}

template <class T>
ElementClass classify_element(const T& key, const T& p, const T& q, PivotChoice choice,
                              CostCounters& c)
{
    CostCounters scratch;
    if (!compare_lt(p, q, scratch))
        throw std::invalid_argument("classify_element: requires p < q");
    return classify_counted(key, p, q, choice, c);
}

// Picks the first pivot, classifies, and updates the state.
template <class T>
inline ElementClass classify_next(ClassifierState& st, const T& key, const T& p, const T& q,
                                  CostCounters& c)
{
    ElementClass cls = classify_counted(key, p, q, choose_first_pivot(st), c);
    st.record(cls);
    return cls;
}

// Uncounted small/large census of a[lo..hi] used to feed oracle strategies.
template <class T>
std::pair<std::uint64_t, std::uint64_t> census(std::span<const T> a, std::ptrdiff_t lo,
                                               std::ptrdiff_t hi, const T& p, const T& q)
{
    std::uint64_t s = 0;
    std::uint64_t l = 0;
    CostCounters scratch;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
        if (compare_lt(a[i], p, scratch))
            ++s;
        else if (compare_lt(q, a[i], scratch))
            ++l;
    }
    return {s, l};
}

struct ClassificationRun {
    std::vector<ElementClass> classes;
    std::vector<PivotChoice> choices;
    CostCounters counters;
    std::uint64_t wrong = 0;
};

template <class T>
ClassificationRun classify_sequence(std::span<const T> keys, const T& p, const T& q,
                                    ClassifierState& st)
{
    CostCounters scratch;
    if (!compare_lt(p, q, scratch))
        throw std::invalid_argument("classify_sequence: requires p < q");
    ClassificationRun run;
    run.classes.reserve(keys.size());
    run.choices.reserve(keys.size());
    for (const T& k : keys) {
        PivotChoice ch = choose_first_pivot(st);
        ElementClass cls = classify_counted(k, p, q, ch, run.counters);
        st.record(cls);
        run.classes.push_back(cls);
        run.choices.push_back(ch);
        if ((cls == ElementClass::Small && ch == PivotChoice::QFirst) ||
            (cls == ElementClass::Large && ch == PivotChoice::PFirst))
            ++run.wrong;
    }
    return run;
}

template <class T>
ClassificationRun classify_sequence(std::span<const T> keys, const T& p, const T& q,
                                    StrategyId strategy, std::uint64_t seed,
                                    SampleRule rule = SampleRule::PaperNinth)
{
    RngCoin coin(seed);
    std::optional<std::uint64_t> s;
    std::optional<std::uint64_t> l;
    if (needs_oracle(strategy)) {
        auto [cs, cl] = census(keys, 0, static_cast<std::ptrdiff_t>(keys.size()) - 1, p, q);
        s = cs;
        l = cl;
    }
    ClassifierState st = make_state(strategy, keys.size() + 2, s, l, &coin, rule);
    return classify_sequence(keys, p, q, st);
}

std::uint64_t act_of_run(std::span<const ElementClass> classes,
                         std::span<const PivotChoice> choices);

} // namespace dpqs
