#include "dpqs/partition.hpp"

#include <array>

namespace dpqs {

namespace {

constexpr std::array<std::pair<SwapScheme, std::string_view>, 4> kSchemeNames = {{
    {SwapScheme::Dijkstra, "swap-a"},
    {SwapScheme::Meyer, "swap-b"},
    {SwapScheme::Chen, "swap-c"},
    {SwapScheme::MeyerSwitching, "swap-b-switching"},
}};

constexpr std::array<std::pair<PartitionerKind, std::string_view>, 7> kKindNames = {{
    {PartitionerKind::Yaroslavskiy, "yaroslavskiy"},
    {PartitionerKind::Sedgewick, "sedgewick"},
    {PartitionerKind::SedgewickModified, "sedgewick-modified"},
    {PartitionerKind::SimpleSmall, "simple-small"},
    {PartitionerKind::SimpleLarge, "simple-large"},
    {PartitionerKind::NSampled, "n-sampled"},
    {PartitionerKind::Composed, "composed"},
}};

} // namespace

std::string_view to_string(SwapScheme s)
{
    for (const auto& [id, name] : kSchemeNames)
        if (id == s)
            return name;
    return "unknown";
}

SwapScheme parse_swap_scheme(std::string_view name)
{
    if (name == "a")
        return SwapScheme::Dijkstra;
    if (name == "b")
        return SwapScheme::Meyer;
    if (name == "c")
        return SwapScheme::Chen;
    if (name == "b-switching")
        return SwapScheme::MeyerSwitching;
    for (const auto& [id, n] : kSchemeNames)
        if (n == name)
            return id;
    throw std::invalid_argument("unknown swap scheme: " + std::string(name));
}

std::string_view to_string(PartitionerKind k)
{
    for (const auto& [id, name] : kKindNames)
        if (id == k)
            return name;
    return "unknown";
}

PartitionerKind parse_partitioner_kind(std::string_view name)
{
    for (const auto& [id, n] : kKindNames)
        if (n == name)
            return id;
    throw std::invalid_argument("unknown partitioner: " + std::string(name));
}

void validate(const PartitionerId& id)
{
    if (id.kind != PartitionerKind::Composed) {
        if (id.strategy)
            throw std::invalid_argument(std::string(to_string(id.kind)) +
                                        " has a built-in strategy; none may be given");
        return;
    }
    switch (id.scheme) {
    case SwapScheme::Chen:
        if (id.strategy)
            throw std::invalid_argument("swap-c has a fixed comparison order; no strategy allowed");
        break;
    case SwapScheme::Dijkstra:
    case SwapScheme::Meyer:
        if (!id.strategy)
            throw std::invalid_argument(std::string(to_string(id.scheme)) + " requires a strategy");
        break;
    case SwapScheme::MeyerSwitching:
        if (id.strategy != StrategyId::NIdeal && id.strategy != StrategyId::NSampling)
            throw std::invalid_argument("swap-b-switching requires n-ideal or n-sampling");
        break;
    }
}

std::string label(const PartitionerId& id)
{
    if (id.kind != PartitionerKind::Composed)
        return std::string(to_string(id.kind));
    std::string s = std::string(to_string(id.scheme));
    if (id.strategy)
        s += "/" + std::string(to_string(*id.strategy));
    return s;
}

std::vector<PartitionerId> all_partitioners(SampleRule rule)
{
    std::vector<PartitionerId> v;
    for (auto k : {PartitionerKind::Yaroslavskiy, PartitionerKind::Sedgewick,
                   PartitionerKind::SedgewickModified, PartitionerKind::SimpleSmall,
                   PartitionerKind::SimpleLarge, PartitionerKind::NSampled})
        v.push_back(PartitionerId::of(k, rule));
    for (auto s : kAllStrategies) {
        v.push_back(PartitionerId::composed(s, SwapScheme::Dijkstra, rule));
        v.push_back(PartitionerId::composed(s, SwapScheme::Meyer, rule));
    }
    v.push_back(PartitionerId::composed(std::nullopt, SwapScheme::Chen, rule));
    v.push_back(PartitionerId::composed(StrategyId::NIdeal, SwapScheme::MeyerSwitching, rule));
    v.push_back(PartitionerId::composed(StrategyId::NSampling, SwapScheme::MeyerSwitching, rule));
    return v;
}

} // namespace dpqs
