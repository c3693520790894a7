#include "dpqs/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace dpqs {

std::string_view to_string(MetricId m)
{
    switch (m) {
    case MetricId::ComparisonsPartition:
        return "comparisons-partition";
    case MetricId::ComparisonsSort:
        return "comparisons-sort";
    case MetricId::SwapsPartition:
        return "swaps-partition";
    case MetricId::SwapsSort:
        return "swaps-sort";
    case MetricId::Act:
        return "act";
    case MetricId::MisplacedCounts:
        return "misplaced";
    }
    return "unknown";
}

MetricId parse_metric(std::string_view name)
{
    for (auto m : {MetricId::ComparisonsPartition, MetricId::ComparisonsSort,
                   MetricId::SwapsPartition, MetricId::SwapsSort, MetricId::Act,
                   MetricId::MisplacedCounts})
        if (to_string(m) == name)
            return m;
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

namespace {

using Perm = std::vector<std::int64_t>;

// Replays a fixed prefix of outcomes and extends it with false; advance()
// moves to the next leaf in depth-first order.
class ScriptedCoin : public CoinSource {
public:
    bool flip(std::uint64_t num, std::uint64_t den) override
    {
        if (num == 0)
            return false;
        if (num >= den)
            return true;
        bool v = false;
        if (pos_ < path_.size())
            v = path_[pos_];
        else
            path_.push_back(false);
        ++pos_;
        weight_ *= v ? ratio(num, den) : ratio(den - num, den);
        branched_ = true;
        return v;
    }

    bool branched() const { return branched_; }
    const ExactNumber& weight() const { return weight_; }

    bool advance()
    {
        path_.resize(pos_);
        while (!path_.empty() && path_.back())
            path_.pop_back();
        pos_ = 0;
        weight_ = 1;
        branched_ = false;
        if (path_.empty())
            return false;
        path_.back() = true;
        return true;
    }

private:
    std::vector<bool> path_;
    std::size_t pos_ = 0;
    ExactNumber weight_ = 1;
    bool branched_ = false;
};

struct Accumulator {
    mpz_class certain = 0; // sum over runs without random choices
    ExactNumber weighted = 0;
    std::uint64_t permutations = 0;
    std::uint64_t runs = 0;

    void add(std::uint64_t v, const ScriptedCoin& coin)
    {
        ++runs;
        if (!coin.branched())
            certain += static_cast<unsigned long>(v);
        else if (v != 0)
            weighted += coin.weight() * static_cast<unsigned long>(v);
    }

    ExactNumber total() const { return ExactNumber(certain) + weighted; }
};

void check_limit(unsigned n, const OracleOptions& opt)
{
    if (n > opt.limit)
        throw std::length_error("exhaustive enumeration: n = " + std::to_string(n) +
                                " exceeds limit " + std::to_string(opt.limit));
}

unsigned worker_count(const OracleOptions& opt, unsigned tasks)
{
    unsigned w = opt.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.workers;
    return std::max(1u, std::min(w, tasks));
}

// Calls body(task, perm) for every permutation of 1..n. Task t covers the
// permutations starting with t + 1; tasks are spread over the workers.
template <class Body>
void for_each_permutation(unsigned n, const OracleOptions& opt, Body&& body)
{
    unsigned tasks = std::max(1u, n);
    auto run_task = [&](unsigned t) {
        Perm p(n);
        std::iota(p.begin(), p.end(), 1);
        if (n == 0) {
            body(t, p);
            return;
        }
        std::rotate(p.begin(), p.begin() + t, p.begin() + t + 1);
        do {
            body(t, p);
        } while (std::next_permutation(p.begin() + 1, p.end()));
    };
    unsigned workers = worker_count(opt, tasks);
    if (workers == 1) {
        for (unsigned t = 0; t < tasks; ++t)
            run_task(t);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (unsigned t = w; t < tasks; t += workers)
                    run_task(t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

template <class Run>
void expand_coins(Run&& run, Accumulator& acc)
{
    ScriptedCoin coin;
    do {
        acc.add(run(&coin), coin);
    } while (coin.advance());
}

struct Misplaced {
    std::array<std::uint64_t, 6> groups{};
};

// Groups: small in M, small in L, medium in S, medium in L, large in S, large in M.
Misplaced count_misplaced(const Perm& a)
{
    Misplaced r;
    std::size_t n = a.size();
    if (n < 3)
        return r;
    std::int64_t p = std::min(a.front(), a.back());
    std::int64_t q = std::max(a.front(), a.back());
    std::size_t s = static_cast<std::size_t>(p - 1);
    std::size_t m = static_cast<std::size_t>(q - p - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        std::size_t slot = i - 1;
        int block = slot < s ? 0 : (slot < s + m ? 1 : 2);
        int cls = a[i] < p ? 0 : (a[i] < q ? 1 : 2);
        if (cls == block)
            continue;
        static constexpr int index[3][3] = {{-1, 0, 1}, {2, -1, 3}, {4, 5, -1}};
        ++r.groups[static_cast<std::size_t>(index[cls][block])];
    }
    return r;
}

std::uint64_t metric_value(const Perm& perm, const OracleSubject& subject, MetricId metric,
                           CoinSource* coin)
{
    if (metric == MetricId::MisplacedCounts) {
        auto g = count_misplaced(perm).groups;
        return std::accumulate(g.begin(), g.end(), std::uint64_t{0});
    }
    Perm a = perm;
    std::span<std::int64_t> sp(a);
    CostCounters c;
    if (const auto* cfg = std::get_if<SortConfig>(&subject)) {
        if (metric != MetricId::ComparisonsSort && metric != MetricId::SwapsSort)
            throw std::invalid_argument("sort subjects support sort metrics only");
        dual_pivot_quicksort(sp, *cfg, c, coin);
        return metric == MetricId::ComparisonsSort ? c.comparisons : c.swaps;
    }
    const auto& id = std::get<PartitionerId>(subject);
    if (metric == MetricId::ComparisonsSort || metric == MetricId::SwapsSort)
        throw std::invalid_argument("partitioner subjects support partition metrics only");
    std::size_t right = a.size() - 1;
    if (compare_lt(a[right], a[0], c))
        std::swap(a[0], a[right]);
    std::uint64_t m = static_cast<std::uint64_t>(a[right] - a[0] - 1);
    CostCounters pc;
    partition(sp, 0, right, id, pc, coin);
    switch (metric) {
    case MetricId::ComparisonsPartition:
        return pc.comparisons + c.comparisons;
    case MetricId::SwapsPartition:
        return pc.swaps;
    case MetricId::Act:
        return pc.comparisons - (a.size() - 2) - m;
    default:
        break;
    }
    throw std::invalid_argument("unsupported metric");
}

mpz_class factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace

OracleResult exhaustive_run(unsigned n, const OracleSubject& subject, MetricId metric,
                            const OracleOptions& opt)
{
    check_limit(n, opt);
    if (const auto* id = std::get_if<PartitionerId>(&subject)) {
        validate(*id);
        if (n < 2 && metric != MetricId::MisplacedCounts)
            throw std::invalid_argument("partition metrics need n >= 2");
    } else {
        validate(std::get<SortConfig>(subject));
    }
    std::vector<Accumulator> acc(std::max(1u, n));
    for_each_permutation(n, opt, [&](unsigned t, const Perm& p) {
        ++acc[t].permutations;
        expand_coins([&](CoinSource* coin) { return metric_value(p, subject, metric, coin); },
                     acc[t]);
    });
    OracleResult r;
    ExactNumber total = 0;
    for (const auto& a : acc) {
        total += a.total();
        r.permutations += a.permutations;
        r.runs += a.runs;
    }
    r.mean = total / ExactNumber(factorial(n));
    r.mean.canonicalize();
    return r;
}

ExactNumber exhaustive_average(unsigned n, const OracleSubject& subject, MetricId metric,
                               const OracleOptions& opt)
{
    return exhaustive_run(n, subject, metric, opt).mean;
}

PairTable exhaustive_act_table(unsigned n, StrategyId strategy, const OracleOptions& opt)
{
    check_limit(n, opt);
    if (n < 2)
        throw std::invalid_argument("exhaustive_act_table: n >= 2");
    unsigned tasks = n;
    // per task: (s, l) -> accumulator
    std::vector<std::map<std::pair<unsigned, unsigned>, Accumulator>> acc(tasks);
    for_each_permutation(n, opt, [&](unsigned t, const Perm& p) {
        std::int64_t lo = std::min(p.front(), p.back());
        std::int64_t hi = std::max(p.front(), p.back());
        std::span<const std::int64_t> inner(p.data() + 1, n - 2);
        auto [s, l] = census(inner, 0, static_cast<std::ptrdiff_t>(n) - 3, lo, hi);
        auto& a = acc[t][{static_cast<unsigned>(s), static_cast<unsigned>(l)}];
        ++a.permutations;
        expand_coins(
            [&](CoinSource* coin) {
                ClassifierState st = make_state(strategy, n, s, l, coin, opt.rule);
                return classify_sequence(inner, lo, hi, st).wrong;
            },
            a);
    });
    PairTable out;
    std::map<std::pair<unsigned, unsigned>, std::pair<ExactNumber, std::uint64_t>> merged;
    for (const auto& m : acc)
        for (const auto& [key, a] : m) {
            auto& slot = merged[key];
            slot.first += a.total();
            slot.second += a.permutations;
        }
    for (auto& [key, v] : merged) {
        ExactNumber mean = v.first / ExactNumber(static_cast<unsigned long>(v.second));
        mean.canonicalize();
        out[key] = mean;
    }
    return out;
}

std::array<ExactNumber, 6> exhaustive_misplaced(unsigned n, const OracleOptions& opt)
{
    check_limit(n, opt);
    if (n < 3)
        throw std::invalid_argument("exhaustive_misplaced: n >= 3");
    std::vector<std::array<std::uint64_t, 6>> acc(n);
    for_each_permutation(n, opt, [&](unsigned t, const Perm& p) {
        auto g = count_misplaced(p).groups;
        for (std::size_t i = 0; i < 6; ++i)
            acc[t][i] += g[i];
    });
    std::array<ExactNumber, 6> out;
    mpz_class f = factorial(n);
    for (std::size_t i = 0; i < 6; ++i) {
        mpz_class sum = 0;
        for (const auto& a : acc)
            sum += static_cast<unsigned long>(a[i]);
        out[i] = ratio(sum, f);
    }
    return out;
}

PairTable exhaustive_pivot_pair_frequencies(unsigned n, const PivotSelector& selector,
                                            const OracleOptions& opt)
{
    check_limit(n, opt);
    validate(selector);
    if (n < 2)
        throw std::invalid_argument("exhaustive_pivot_pair_frequencies: n >= 2");
    std::vector<std::map<std::pair<unsigned, unsigned>, std::uint64_t>> acc(n);
    for_each_permutation(n, opt, [&](unsigned t, const Perm& p) {
        Perm a = p;
        CostCounters c;
        select_pivots(std::span<std::int64_t>(a), 0, n - 1, selector, c);
        auto lo = static_cast<unsigned>(std::min(a.front(), a.back()));
        auto hi = static_cast<unsigned>(std::max(a.front(), a.back()));
        ++acc[t][{lo, hi}];
    });
    std::map<std::pair<unsigned, unsigned>, mpz_class> merged;
    for (const auto& m : acc)
        for (const auto& [key, v] : m)
            merged[key] += static_cast<unsigned long>(v);
    PairTable out;
    mpz_class f = factorial(n);
    for (const auto& [key, v] : merged)
        out[key] = ratio(v, f);
    return out;
}

ExactNumber exhaustive_zero_crossings(unsigned n, const OracleOptions& opt)
{
    check_limit(n, opt);
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("exhaustive_zero_crossings: n must be even and positive");
    // all permutations of 1..n; values <= s are small
    std::vector<std::vector<std::uint64_t>> acc(n, std::vector<std::uint64_t>(n / 2 + 1, 0));
    for_each_permutation(n, opt, [&](unsigned t, const Perm& p) {
        for (unsigned s = 1; s <= n / 2; ++s) {
            long balance = 0;
            std::uint64_t zeros = 0;
            for (unsigned i = n; i-- > 0;) {
                balance += p[i] <= static_cast<std::int64_t>(s) ? 1 : -1;
                zeros += balance == 0;
            }
            acc[t][s] += zeros;
        }
    });
    mpz_class total = 0;
    for (const auto& a : acc)
        for (auto v : a)
            total += static_cast<unsigned long>(v);
    // mean over permutations, then over the n/2 values of s
    return ratio(total, factorial(n) * (n / 2));
}

} // namespace dpqs
