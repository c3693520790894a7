#include "dpqs/classify.hpp"

#include <cmath>
#include <string>

namespace dpqs {

namespace {

struct StrategyName {
    StrategyId id;
    std::string_view name;
};

constexpr std::array<StrategyName, 10> kStrategyNames = {{
    {StrategyId::SmallerFirst, "smaller-first"},
    {StrategyId::LargerFirst, "larger-first"},
    {StrategyId::Alternate, "alternate"},
    {StrategyId::Coin, "coin"},
    {StrategyId::SAbstract, "s-abstract"},
    {StrategyId::SPrimeAbstract, "s-prime-abstract"},
    {StrategyId::NSampling, "n-sampling"},
    {StrategyId::LCounting, "l-counting"},
    {StrategyId::OOracle, "o-oracle"},
    {StrategyId::NIdeal, "n-ideal"},
}};

} // namespace

std::string_view to_string(StrategyId s)
{
    for (const auto& e : kStrategyNames)
        if (e.id == s)
            return e.name;
    return "unknown";
}

StrategyId parse_strategy(std::string_view name)
{
    for (const auto& e : kStrategyNames)
        if (e.name == name)
            return e.id;
    throw std::invalid_argument("unknown strategy: " + std::string(name));
}

std::string_view to_string(SampleRule r)
{
    return r == SampleRule::PaperNinth ? "paper-ninth" : "theory";
}

SampleRule parse_sample_rule(std::string_view name)
{
    if (name == "paper-ninth")
        return SampleRule::PaperNinth;
    if (name == "theory")
        return SampleRule::Theory;
    throw std::invalid_argument("unknown sample rule: " + std::string(name));
}

std::uint64_t sample_size(SampleRule rule, std::uint64_t n)
{
    if (rule == SampleRule::PaperNinth)
        return std::max<std::uint64_t>(n / 100, 7);
    // smallest x with x^3 >= n^2
    auto x = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n) * static_cast<double>(n)));
    auto cube = [](std::uint64_t v) { return static_cast<unsigned __int128>(v) * v * v; };
    unsigned __int128 target = static_cast<unsigned __int128>(n) * n;
    while (x > 0 && cube(x - 1) >= target)
        --x;
    while (cube(x) < target)
        ++x;
    return x;
}

bool needs_oracle(StrategyId s)
{
    return s == StrategyId::SAbstract || s == StrategyId::SPrimeAbstract ||
           s == StrategyId::OOracle || s == StrategyId::NIdeal;
}

bool needs_coin(StrategyId s)
{
    return s == StrategyId::Coin || s == StrategyId::SAbstract || s == StrategyId::SPrimeAbstract;
}

bool RngCoin::flip(std::uint64_t num, std::uint64_t den)
{
    if (num == 0)
        return false;
    if (num >= den)
        return true;
    if (!rng_)
        rng_.emplace(seed_);
    return rng_->below(den) < num;
}

ClassifierState make_state(StrategyId strategy, std::uint64_t n,
                           std::optional<std::uint64_t> oracle_small,
                           std::optional<std::uint64_t> oracle_large, CoinSource* coin,
                           SampleRule rule)
{
    ClassifierState st;
    st.strategy = strategy;
    st.oracle_small = oracle_small;
    st.oracle_large = oracle_large;
    st.coin = coin;
    if (strategy == StrategyId::NSampling)
        st.sample_budget = sample_size(rule, n);
    return st;
}

void missing_input(const ClassifierState& st, const char* what)
{
    throw std::invalid_argument("strategy " + std::string(to_string(st.strategy)) + " requires " +
                                what);
}

std::uint64_t act_of_run(std::span<const ElementClass> classes,
                         std::span<const PivotChoice> choices)
{
    if (classes.size() != choices.size())
        throw std::invalid_argument("act_of_run: length mismatch");
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if ((classes[i] == ElementClass::Small && choices[i] == PivotChoice::QFirst) ||
            (classes[i] == ElementClass::Large && choices[i] == PivotChoice::PFirst))
            ++w;
    }
    return w;
}

} // namespace dpqs
