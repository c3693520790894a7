#include "dpqs/sort.hpp"

#include <charconv>

namespace dpqs {

namespace {

unsigned parse_k(std::string_view text, std::string_view whole)
{
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("bad selector: " + std::string(whole));
    return k;
}

} // namespace

PivotSelector parse_selector(std::string_view text)
{
    PivotSelector s;
    if (text == "direct")
        s = PivotSelector::direct();
    else if (text == "sample5")
        s = PivotSelector::sample5();
    else if (text.starts_with("sample:"))
        s = PivotSelector::sample(parse_k(text.substr(7), text));
    else if (text.starts_with("median:"))
        s = PivotSelector::median(parse_k(text.substr(7), text));
    else
        throw std::invalid_argument("unknown selector: " + std::string(text));
    validate(s);
    return s;
}

std::string label(const PivotSelector& s)
{
    switch (s.mode) {
    case SelectorMode::DirectEnds:
        return "direct";
    case SelectorMode::Sample5Tertiles:
        return "sample5";
    case SelectorMode::SampleK:
        return "sample:" + std::to_string(s.k);
    case SelectorMode::MedianOfK:
        return "median:" + std::to_string(s.k);
    }
    return "unknown";
}

void validate(const PivotSelector& s)
{
    switch (s.mode) {
    case SelectorMode::DirectEnds:
    case SelectorMode::Sample5Tertiles:
        return;
    case SelectorMode::SampleK:
        if (s.k % 2 == 0 || (s.k + 1) % 3 != 0)
            throw std::invalid_argument("sample:K needs odd k with k+1 divisible by 3");
        return;
    case SelectorMode::MedianOfK:
        if (s.k < 1 || s.k % 2 == 0)
            throw std::invalid_argument("median:K needs odd k");
        return;
    }
}

void validate(const SortConfig& cfg)
{
    if (cfg.cutoff < 1)
        throw std::invalid_argument("cutoff must be at least 1");
    validate(cfg.partitioner);
    validate(cfg.selector);
    if (cfg.selector.mode == SelectorMode::MedianOfK)
        throw std::invalid_argument("median:K is for single-pivot baselines");
}

} // namespace dpqs
