#include "dpqs/core.hpp"

#include <numeric>

namespace dpqs {

bool compare_lt(const Key& a, const Key& b, CostCounters& c)
{
    if (a.index() != b.index())
        throw KeyKindMismatch();
    ++c.comparisons;
    if (a.index() == 0)
        return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("Rng::below: bound must be positive");
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = next();
            m = static_cast<unsigned __int128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

static std::uint64_t splitmix(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b)
{
    return splitmix(splitmix(splitmix(master) ^ a) ^ b);
}

std::vector<std::int64_t> random_permutation(std::size_t n, std::uint64_t seed)
{
    std::vector<std::int64_t> v(n);
    std::iota(v.begin(), v.end(), std::int64_t{1});
    Rng rng(seed);
    shuffle(std::span<std::int64_t>(v), rng);
    return v;
}

} // namespace dpqs
