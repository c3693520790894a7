#include "dpqs/cli.hpp"

#include "dpqs/analysis.hpp"
#include "dpqs/oracle.hpp"
#include "dpqs/sort.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace dpqs::cli {

namespace {

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string fmt_ld(long double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10Lf", v);
    return buf;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string r = "\"";
    for (char ch : s) {
        if (ch == '"')
            r += '"';
        r += ch;
    }
    return r + "\"";
}

template <class F>
auto usage_guard(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::length_error& e) {
        throw UsageError(e.what());
    }
}

std::uint64_t parse_u64(const std::string& s)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: " + s);
    }
    if (pos != s.size())
        throw UsageError("not a number: " + s);
    return v;
}

} // namespace

void write_table(const Table& t, Format f, std::ostream& out)
{
    switch (f) {
    case Format::Csv: {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << csv_escape(row[i]);
            out << '\n';
        }
        return;
    }
    case Format::Json: {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (t.numeric[i] && !row[i].empty())
                    obj[t.columns[i]] = nlohmann::ordered_json::parse(row[i]);
                else
                    obj[t.columns[i]] = row[i];
            }
            arr.push_back(std::move(obj));
        }
        out << arr.dump(2) << '\n';
        return;
    }
    case Format::Table: {
        std::vector<std::size_t> w(t.columns.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = t.columns[i].size();
        for (const auto& row : t.rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                w[i] = std::max(w[i], row[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::string pad(w[i] - cells[i].size(), ' ');
                out << (i ? "  " : "") << (t.numeric[i] ? pad + cells[i] : cells[i] + pad);
            }
            out << '\n';
        };
        line(t.columns);
        for (const auto& row : t.rows)
            line(row);
        return;
    }
    }
}

std::vector<std::uint64_t> parse_sizes(const std::string& text)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_u64(item));
            continue;
        }
        std::string hi_text = item.substr(dots + 2);
        bool doubling = false;
        std::uint64_t step = 1;
        if (auto mark = hi_text.find_first_of("*+"); mark != std::string::npos) {
            doubling = hi_text[mark] == '*';
            step = parse_u64(hi_text.substr(mark + 1));
            hi_text.resize(mark);
            if (doubling && step != 2)
                throw UsageError("only *2 is supported: " + item);
        }
        std::uint64_t lo = parse_u64(item.substr(0, dots));
        std::uint64_t hi = parse_u64(hi_text);
        if (lo > hi || step == 0 || (doubling && lo == 0))
            throw UsageError("bad size range: " + item);
        for (std::uint64_t v = lo; v <= hi; v = doubling ? v * 2 : v + step)
            out.push_back(v);
    }
    if (out.empty())
        throw UsageError("empty size list");
    return out;
}

// ---------------------------------------------------------------------------
// algorithms

namespace {

struct Algorithm {
    enum class Family { Dual, Classic, Clever } family = Family::Dual;
    PartitionerId id;
    std::string label;
};

Algorithm parse_algorithm(const std::string& token, SampleRule rule)
{
    Algorithm a;
    if (token == "classic" || token == "clever") {
        a.family = token == "classic" ? Algorithm::Family::Classic : Algorithm::Family::Clever;
        a.label = token;
        return a;
    }
    usage_guard([&] {
        auto slash = token.find('/');
        if (slash != std::string::npos) {
            a.id = PartitionerId::composed(parse_strategy(token.substr(slash + 1)),
                                           parse_swap_scheme(token.substr(0, slash)), rule);
        } else if (token.rfind("swap-", 0) == 0) {
            a.id = PartitionerId::composed(std::nullopt, parse_swap_scheme(token), rule);
        } else {
            PartitionerKind k = parse_partitioner_kind(token);
            if (k == PartitionerKind::Composed)
                throw std::invalid_argument("use SCHEME/STRATEGY, e.g. swap-b/n-ideal");
            a.id = PartitionerId::of(k, rule);
        }
        validate(a.id);
        return 0;
    });
    a.label = label(a.id);
    return a;
}

std::vector<Algorithm> algorithms(const RunSpec& spec)
{
    std::vector<Algorithm> v;
    if (spec.swap_scheme) {
        if (spec.strategies.empty())
            v.push_back(parse_algorithm(*spec.swap_scheme, spec.rule));
        for (const auto& s : spec.strategies)
            v.push_back(parse_algorithm(*spec.swap_scheme + "/" + s, spec.rule));
    } else {
        for (const auto& s : spec.strategies)
            v.push_back(parse_algorithm("swap-a/" + s, spec.rule));
    }
    for (const auto& p : spec.partitioners) {
        if (p == "all") {
            for (const auto& id : all_partitioners(spec.rule))
                v.push_back({Algorithm::Family::Dual, id, label(id)});
        } else {
            v.push_back(parse_algorithm(p, spec.rule));
        }
    }
    if (v.empty())
        v.push_back(parse_algorithm("yaroslavskiy", spec.rule));
    return v;
}

SortConfig sort_config(const RunSpec& spec, const Algorithm& a, std::uint64_t seed)
{
    SortConfig cfg;
    cfg.partitioner = a.id;
    cfg.selector = usage_guard([&] { return parse_selector(spec.selector); });
    cfg.cutoff = spec.cutoff;
    cfg.seed = seed;
    usage_guard([&] {
        if (a.family == Algorithm::Family::Dual)
            validate(cfg);
        else if (cfg.cutoff < 1)
            throw std::invalid_argument("cutoff must be at least 1");
        return 0;
    });
    return cfg;
}

template <class T>
CostCounters run_algorithm(std::span<T> keys, const Algorithm& a, const SortConfig& cfg)
{
    CostCounters c;
    switch (a.family) {
    case Algorithm::Family::Dual:
        dual_pivot_quicksort(keys, cfg, c);
        break;
    case Algorithm::Family::Classic:
        usage_guard([&] {
            classic_quicksort(keys, cfg, c);
            return 0;
        });
        break;
    case Algorithm::Family::Clever:
        clever_quicksort(keys, cfg, c);
        break;
    }
    return c;
}

std::vector<std::string> read_lines(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read input file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

template <class F>
void parallel_for(std::uint64_t count, unsigned workers, F&& body)
{
    unsigned w = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    w = static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(count, 1)));
    if (w <= 1) {
        for (std::uint64_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(w);
    for (unsigned k = 0; k < w; ++k)
        pool.emplace_back([&, k] {
            try {
                for (std::uint64_t i = k; i < count; i += w)
                    body(i);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

// ---------------------------------------------------------------------------
// bench

std::vector<BenchRecord> cmd_bench(const RunSpec& spec)
{
    if (spec.trials < 1)
        throw UsageError("trials must be at least 1");
    std::vector<std::string> corpus;
    if (spec.input) {
        corpus = read_lines(*spec.input);
        std::sort(corpus.begin(), corpus.end());
        corpus.erase(std::unique(corpus.begin(), corpus.end()), corpus.end());
    }
    std::vector<std::uint64_t> sizes = spec.sizes;
    if (sizes.empty()) {
        if (!spec.input)
            throw UsageError("bench needs --n or --sizes");
        sizes.push_back(corpus.size());
    }
    auto algos = algorithms(spec);
    std::vector<BenchRecord> out;
    for (std::uint64_t n : sizes) {
        if (spec.input && n > corpus.size())
            throw UsageError("input has only " + std::to_string(corpus.size()) +
                             " distinct lines, n = " + std::to_string(n));
        for (const auto& algo : algos) {
            sort_config(spec, algo, 0); // validate once up front
            struct Trial {
                std::uint64_t comparisons = 0;
                std::uint64_t swaps = 0;
                double seconds = 0;
            };
            std::vector<Trial> trials(spec.trials);
            parallel_for(spec.trials, spec.workers, [&](std::uint64_t t) {
                std::uint64_t trial_seed = derive_seed(spec.seed, n, t);
                SortConfig cfg = sort_config(spec, algo, derive_seed(trial_seed, 1));
                CostCounters c;
                bool ok = false;
                auto start = std::chrono::steady_clock::now();
                if (spec.input) {
                    std::vector<std::string> keys = corpus;
                    Rng rng(trial_seed);
                    shuffle(std::span<std::string>(keys), rng);
                    keys.resize(n);
                    std::vector<std::string> in = keys;
                    start = std::chrono::steady_clock::now();
                    c = run_algorithm(std::span<std::string>(keys), algo, cfg);
                    trials[t].seconds = std::chrono::duration<double>(
                                            std::chrono::steady_clock::now() - start)
                                            .count();
                    ok = verify_sorted_permutation(keys, in);
                } else {
                    auto keys = random_permutation(n, trial_seed);
                    start = std::chrono::steady_clock::now();
                    c = run_algorithm(std::span<std::int64_t>(keys), algo, cfg);
                    trials[t].seconds = std::chrono::duration<double>(
                                            std::chrono::steady_clock::now() - start)
                                            .count();
                    ok = true;
                    for (std::uint64_t i = 0; i < n; ++i)
                        ok = ok && keys[i] == static_cast<std::int64_t>(i + 1);
                }
                if (!ok)
                    throw std::runtime_error("output not sorted: " + algo.label);
                trials[t].comparisons = c.comparisons;
                trials[t].swaps = c.swaps;
            });
            BenchRecord r;
            r.n = n;
            r.strategy = algo.label;
            r.selector = algo.family == Algorithm::Family::Clever ? "median:3" : spec.selector;
            r.trials = spec.trials;
            r.seed = spec.seed;
            r.generator_id = std::string(kGeneratorId);
            r.keys = spec.input ? "string" : "int";
            long double sc = 0;
            long double ss = 0;
            long double secs = 0;
            for (const auto& t : trials) {
                sc += t.comparisons;
                ss += t.swaps;
                secs += t.seconds;
            }
            long double k = static_cast<long double>(spec.trials);
            long double mc = sc / k;
            long double ms = ss / k;
            long double vc = 0;
            long double vs = 0;
            for (const auto& t : trials) {
                vc += (t.comparisons - mc) * (t.comparisons - mc);
                vs += (t.swaps - ms) * (t.swaps - ms);
            }
            if (spec.trials > 1) {
                vc /= (k - 1);
                vs /= (k - 1);
            }
            r.mean_comparisons = static_cast<double>(mc);
            r.mean_swaps = static_cast<double>(ms);
            r.stderr_comparisons = spec.trials > 1 ? static_cast<double>(std::sqrt(vc / k)) : 0.0;
            r.stderr_swaps = spec.trials > 1 ? static_cast<double>(std::sqrt(vs / k)) : 0.0;
            r.scaled_comparisons =
                n >= 2 ? static_cast<double>(mc / (n * std::log(static_cast<long double>(n)))) : 0.0;
            if (spec.timing)
                r.mean_seconds = static_cast<double>(secs / k);
            out.push_back(r);
        }
    }
    return out;
}

Table bench_table(const std::vector<BenchRecord>& records, bool timing)
{
    Table t;
    t.columns = {"n",           "strategy",          "selector",     "trials",
                 "mean_comparisons", "stderr_comparisons", "mean_swaps", "stderr_swaps",
                 "scaled_comparisons", "seed",        "generator_id", "keys"};
    t.numeric = {true, false, false, true, true, true, true, true, true, true, false, false};
    if (timing) {
        t.columns.push_back("mean_seconds");
        t.numeric.push_back(true);
    }
    for (const auto& r : records) {
        std::vector<std::string> row = {std::to_string(r.n),
                                        r.strategy,
                                        r.selector,
                                        std::to_string(r.trials),
                                        fmt("%.4f", r.mean_comparisons),
                                        fmt("%.4f", r.stderr_comparisons),
                                        fmt("%.4f", r.mean_swaps),
                                        fmt("%.4f", r.stderr_swaps),
                                        fmt("%.6f", r.scaled_comparisons),
                                        std::to_string(r.seed),
                                        r.generator_id,
                                        r.keys};
        if (timing)
            row.push_back(fmt("%.6f", r.mean_seconds.value_or(0.0)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// sort

Table cmd_sort(const RunSpec& spec, std::ostream* emit)
{
    auto algos = algorithms(spec);
    if (algos.size() != 1)
        throw UsageError("sort takes exactly one algorithm");
    const Algorithm& algo = algos.front();
    SortConfig cfg = sort_config(spec, algo, spec.seed);
    Table t;
    t.columns = {"n", "strategy", "selector", "cutoff", "seed", "keys", "comparisons", "swaps",
                 "verified"};
    t.numeric = {true, false, false, true, true, false, true, true, false};
    CostCounters c;
    bool ok = false;
    std::uint64_t n = 0;
    if (spec.input) {
        auto keys = read_lines(*spec.input);
        auto in = keys;
        n = keys.size();
        c = run_algorithm(std::span<std::string>(keys), algo, cfg);
        ok = verify_sorted_permutation(keys, in);
        if (emit)
            for (const auto& k : keys)
                *emit << k << '\n';
    } else {
        if (spec.sizes.size() != 1)
            throw UsageError("sort needs one --n or an --input file");
        n = spec.sizes.front();
        auto keys = random_permutation(n, spec.seed);
        auto in = keys;
        c = run_algorithm(std::span<std::int64_t>(keys), algo, cfg);
        ok = verify_sorted_permutation(keys, in);
        if (emit)
            for (auto k : keys)
                *emit << k << '\n';
    }
    t.rows.push_back({std::to_string(n), algo.label,
                      algo.family == Algorithm::Family::Clever ? "median:3" : spec.selector,
                      std::to_string(spec.cutoff), std::to_string(spec.seed),
                      spec.input ? "string" : "int", std::to_string(c.comparisons),
                      std::to_string(c.swaps), ok ? "true" : "false"});
    return t;
}

// ---------------------------------------------------------------------------
// exact

namespace {

struct ExactSubject {
    std::string name;
    std::optional<StrategyId> strategy;
    std::optional<SwapScheme> scheme;
    bool y_model = false;
};

ExactSubject parse_exact_subject(const std::string& token)
{
    ExactSubject s;
    s.name = token;
    if (token == "yaroslavskiy") {
        s.y_model = true;
        return s;
    }
    if (token.rfind("swap-", 0) == 0) {
        s.scheme = usage_guard([&] { return parse_swap_scheme(token); });
        return s;
    }
    s.strategy = usage_guard([&] { return parse_strategy(token); });
    return s;
}

std::optional<CostSeries> series_of(const ExactSubject& s)
{
    if (s.scheme) {
        switch (*s.scheme) {
        case SwapScheme::Dijkstra:
            return CostSeries::SwapA;
        case SwapScheme::Meyer:
            return CostSeries::SwapB;
        case SwapScheme::Chen:
            return CostSeries::SwapC;
        case SwapScheme::MeyerSwitching:
            return CostSeries::SwapBSwitching;
        }
    }
    if (!s.strategy)
        return std::nullopt;
    switch (*s.strategy) {
    case StrategyId::SmallerFirst:
    case StrategyId::LargerFirst:
    case StrategyId::Alternate:
    case StrategyId::Coin:
        return CostSeries::Oblivious;
    case StrategyId::NIdeal:
        return CostSeries::NIdeal;
    case StrategyId::SAbstract:
        return CostSeries::S;
    case StrategyId::SPrimeAbstract:
        return CostSeries::SPrime;
    default:
        return std::nullopt;
    }
}

struct PivotModelSpec {
    enum class Kind { Uniform, Sample5, SampleK } kind = Kind::Uniform;
    unsigned k = 0;
    std::string label;
};

PivotModelSpec parse_pivot_model(const std::string& text)
{
    PivotModelSpec m;
    m.label = text;
    if (text == "uniform")
        return m;
    if (text == "sample5") {
        m.kind = PivotModelSpec::Kind::Sample5;
        m.k = 5;
        return m;
    }
    if (text.rfind("sample:", 0) == 0) {
        m.kind = PivotModelSpec::Kind::SampleK;
        m.k = static_cast<unsigned>(parse_u64(text.substr(7)));
        if (m.k % 2 == 0 || (m.k + 1) % 3 != 0)
            throw UsageError("sample:K needs odd K with K+1 divisible by 3");
        return m;
    }
    throw UsageError("unknown pivot model: " + text);
}

struct Value {
    std::optional<ExactNumber> exact;
    long double decimal = 0;
};

Value exact_value(const ExactNumber& x)
{
    return {x, to_long_double(x)};
}

class ExactEngine {
public:
    ExactEngine(const ExactSubject& s, const PivotModelSpec& m, std::uint64_t exact_limit)
        : s_(s), m_(m), exact_limit_(exact_limit)
    {
        if (m_.kind != PivotModelSpec::Kind::Uniform && s_.scheme)
            throw UsageError("swap schemes are analysed with the uniform pivot model only");
        if (m_.kind == PivotModelSpec::Kind::Uniform && s_.y_model)
            throw UsageError("the yaroslavskiy model is available for sample5 only");
        if (m_.kind == PivotModelSpec::Kind::Sample5 && !s_.y_model &&
            s_.strategy != StrategyId::NIdeal)
            throw UsageError("sample5 supports n-ideal and yaroslavskiy");
        if (m_.kind == PivotModelSpec::Kind::SampleK && s_.strategy != StrategyId::NIdeal)
            throw UsageError("sample:K supports n-ideal only");
    }

    ExactNumber partition(unsigned n)
    {
        return usage_guard([&]() -> ExactNumber {
            switch (m_.kind) {
            case PivotModelSpec::Kind::Uniform:
                if (s_.scheme)
                    return swap_partition_cost(*s_.scheme, n);
                return exact_partition_cost(*s_.strategy, n);
            case PivotModelSpec::Kind::Sample5:
                if (n < 5)
                    return uniform_small(n);
                return sample5_partition_cost(
                    s_.y_model ? Sample5Model::YaroslavskiyModel : Sample5Model::NIdeal, n);
            case PivotModelSpec::Kind::SampleK:
                return sample_k_partition_cost(m_.k, n);
            }
            return 0;
        });
    }

    Value slope(unsigned n)
    {
        ExactNumber d = (partition(2 * n) - partition(n)) / n;
        d.canonicalize();
        return exact_value(d);
    }

    Value sort(unsigned n)
    {
        if (m_.kind == PivotModelSpec::Kind::SampleK)
            throw UsageError("sort cost is not tabulated for sample:K");
        if (n <= exact_limit_) {
            ensure_exact(n);
            return exact_value(sort_exact_[n]);
        }
        if (m_.kind == PivotModelSpec::Kind::Sample5)
            throw UsageError("sample5 sort cost beyond --exact-limit is not supported");
        ensure_float(n);
        return {std::nullopt, sort_float_[n]};
    }

    Value coefficient(unsigned n)
    {
        switch (m_.kind) {
        case PivotModelSpec::Kind::Uniform: {
            if (2ull * n <= exact_limit_) {
                ensure_exact(2 * n);
                std::vector<long double> t(sort_exact_.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    t[i] = to_long_double(sort_exact_[i]);
                return {std::nullopt, leading_coefficient_estimate(t, n)};
            }
            ensure_float(2 * n);
            return {std::nullopt, leading_coefficient_estimate(sort_float_, n)};
        }
        case PivotModelSpec::Kind::Sample5:
        case PivotModelSpec::Kind::SampleK: {
            ExactNumber h = harmonic(m_.k + 1) - harmonic((m_.k + 1) / 3);
            ExactNumber c = slope(n).exact.value() / h;
            c.canonicalize();
            return exact_value(c);
        }
        }
        return {};
    }

private:
    ExactNumber uniform_small(unsigned n)
    {
        if (s_.y_model)
            return ExactNumber(n - 1) + ratio(n - 2, 3) + yaroslavskiy_act_model(n);
        return exact_partition_cost(StrategyId::NIdeal, n);
    }

    void ensure_exact(unsigned n)
    {
        if (sort_exact_.size() > n)
            return;
        std::vector<ExactNumber> p(n + 1, ExactNumber(0));
        auto series = series_of(s_);
        if (m_.kind == PivotModelSpec::Kind::Uniform && series) {
            p = partition_cost_table_exact(*series, n);
        } else {
            for (unsigned k = 2; k <= n; ++k)
                p[k] = partition(k);
        }
        sort_exact_ = recurrence_solve(p, m_.kind == PivotModelSpec::Kind::Sample5
                                              ? PivotModel::Sample5
                                              : PivotModel::UniformPair);
    }

    void ensure_float(unsigned n)
    {
        if (sort_float_.size() > n)
            return;
        auto series = series_of(s_);
        if (!series)
            throw UsageError(s_.name + ": no closed form; raise --exact-limit or lower n");
        sort_float_ = recurrence_solve(partition_cost_table(*series, n));
    }

    ExactSubject s_;
    PivotModelSpec m_;
    std::uint64_t exact_limit_;
    std::vector<ExactNumber> sort_exact_;
    std::vector<long double> sort_float_;
};

} // namespace

Table cmd_exact(const RunSpec& spec)
{
    if (spec.sizes.empty())
        throw UsageError("exact needs --n or --sizes");
    std::vector<std::string> subjects = spec.strategies;
    if (spec.swap_scheme)
        subjects.push_back(*spec.swap_scheme);
    if (subjects.empty())
        subjects.push_back("n-ideal");
    std::vector<std::string> quantities = spec.quantities;
    if (quantities.empty())
        quantities = {"partition", "coefficient"};
    for (const auto& q : quantities)
        if (q != "partition" && q != "slope" && q != "sort" && q != "coefficient")
            throw UsageError("unknown quantity: " + q);
    PivotModelSpec model = parse_pivot_model(spec.pivot_model);

    Table t;
    t.columns = {"n", "strategy", "pivot_model", "quantity", "value_exact", "value_decimal"};
    t.numeric = {true, false, false, false, false, true};
    for (const auto& name : subjects) {
        ExactEngine engine(parse_exact_subject(name), model, spec.exact_limit);
        for (std::uint64_t n64 : spec.sizes) {
            if (n64 < 2 || n64 > 100'000'000)
                throw UsageError("exact: n out of range");
            auto n = static_cast<unsigned>(n64);
            for (const auto& q : quantities) {
                Value v;
                if (q == "partition")
                    v = exact_value(engine.partition(n));
                else if (q == "slope")
                    v = engine.slope(n);
                else if (q == "sort")
                    v = engine.sort(n);
                else
                    v = engine.coefficient(n);
                t.rows.push_back({std::to_string(n), name, model.label, q,
                                  v.exact ? to_fraction(*v.exact) : "",
                                  v.exact ? to_decimal(*v.exact, 10) : fmt_ld(v.decimal)});
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// table1, zerocross

Table cmd_table1(const RunSpec& spec)
{
    unsigned n = spec.sizes.empty() ? 10000u : static_cast<unsigned>(spec.sizes.front());
    if (n < 41)
        throw UsageError("table1 needs n >= 41");
    Table t;
    t.columns = {"k", "median_qs", "tertile_dpqs", "reference_median_qs",
                 "reference_tertile_dpqs"};
    t.numeric = {true, true, true, true, true};
    for (const auto& r : table1(n))
        t.rows.push_back({std::to_string(r.k), fmt("%.4f", r.median_qs),
                          fmt("%.4f", r.tertile_dpqs), fmt("%.3f", r.reference_median_qs),
                          fmt("%.3f", r.reference_tertile_dpqs)});
    return t;
}

Table cmd_zerocross(const RunSpec& spec)
{
    std::vector<std::uint64_t> sizes = spec.sizes;
    if (sizes.empty())
        sizes = parse_sizes("2..16+2");
    std::uint64_t max_n = 0;
    for (auto n : sizes) {
        if (n == 0 || n % 2 != 0)
            throw UsageError("zerocross: n must be even and positive");
        max_n = std::max(max_n, n);
    }
    if (max_n > 100'000'000)
        throw UsageError("zerocross: n too large");
    auto series = zero_crossing_series(static_cast<unsigned>(max_n));
    Table t;
    t.columns = {"n", "value_exact", "value_decimal", "doubling_difference"};
    t.numeric = {true, false, true, true};
    for (auto n : sizes) {
        std::string exact;
        std::string decimal = fmt_ld(series[n]);
        if (n <= spec.exact_limit) {
            ExactNumber z = expected_zero_crossings(static_cast<unsigned>(n));
            exact = to_fraction(z);
            decimal = to_decimal(z, 10);
        }
        std::string diff;
        if (n >= 4 && (n / 2) % 2 == 0)
            diff = fmt_ld(series[n] - series[n / 2]);
        t.rows.push_back({std::to_string(n), exact, decimal, diff});
    }
    return t;
}

// ---------------------------------------------------------------------------
// oracle-check

CheckReport cmd_oracle_check(const RunSpec& spec)
{
    std::vector<std::uint64_t> sizes = spec.sizes;
    if (sizes.empty())
        sizes = parse_sizes("3..8");
    OracleOptions opt;
    opt.limit = static_cast<unsigned>(spec.oracle_limit);
    opt.workers = spec.workers;
    opt.rule = spec.rule;

    CheckReport rep;
    rep.table.columns = {"check", "n", "expected", "observed", "status"};
    rep.table.numeric = {false, true, false, false, false};
    auto record = [&](const std::string& name, unsigned n, ExactNumber expected,
                      const ExactNumber& observed, const std::string& detail = "") {
        if (spec.inject_fault && name.rfind(*spec.inject_fault, 0) == 0) {
            expected += ratio(1, 1000);
            expected.canonicalize();
        }
        bool ok = expected == observed && detail.empty();
        rep.table.rows.push_back({name, std::to_string(n), to_fraction(expected),
                                  to_fraction(observed), ok ? "pass" : "FAIL"});
        if (!ok) {
            std::string msg = name + " at n=" + std::to_string(n) + ": expected " +
                              to_fraction(expected) + ", observed " + to_fraction(observed);
            if (!detail.empty())
                msg += " (" + detail + ")";
            rep.mismatches.push_back(msg);
        }
    };

    const StrategyId strategies[] = {StrategyId::SmallerFirst, StrategyId::LargerFirst,
                                     StrategyId::Alternate,    StrategyId::Coin,
                                     StrategyId::SAbstract,    StrategyId::SPrimeAbstract,
                                     StrategyId::NIdeal,       StrategyId::OOracle,
                                     StrategyId::LCounting};
    usage_guard([&] {
        for (std::uint64_t n64 : sizes) {
            auto n = static_cast<unsigned>(n64);
            if (n > opt.limit)
                throw std::length_error("n = " + std::to_string(n) + " exceeds the oracle limit");
            if (n == 2) {
                SortConfig cfg;
                cfg.cutoff = 2;
                record("sort-comparisons/yaroslavskiy", n, 1,
                       exhaustive_average(n, cfg, MetricId::ComparisonsSort, opt));
            }
            if (n >= 2) {
                for (auto s : strategies)
                    record("partition-comparisons/" + std::string(to_string(s)), n,
                           exact_partition_cost(s, n),
                           exhaustive_average(n, PartitionerId::composed(s, SwapScheme::Dijkstra),
                                              MetricId::ComparisonsPartition, opt));
                const std::pair<SwapScheme, std::optional<StrategyId>> schemes[] = {
                    {SwapScheme::Dijkstra, StrategyId::SmallerFirst},
                    {SwapScheme::Meyer, StrategyId::SmallerFirst},
                    {SwapScheme::Chen, std::nullopt},
                    {SwapScheme::MeyerSwitching, StrategyId::NIdeal}};
                for (const auto& [scheme, strat] : schemes)
                    record("partition-swaps/" + std::string(to_string(scheme)), n,
                           swap_partition_cost(scheme, n),
                           exhaustive_average(n, PartitionerId::composed(strat, scheme),
                                              MetricId::SwapsPartition, opt));
            }
            if (n >= 3) {
                auto dp = act_oracle_dp(n - 2);
                for (auto s : {StrategyId::OOracle, StrategyId::LCounting}) {
                    auto table = exhaustive_act_table(n, s, opt);
                    ExactNumber sum_expected = 0;
                    ExactNumber sum_observed = 0;
                    std::string detail;
                    for (const auto& [key, v] : table) {
                        ExactNumber want = s == StrategyId::OOracle
                                               ? dp[key.first][key.second]
                                               : act_past_dp(key.first, key.second);
                        sum_expected += want;
                        sum_observed += v;
                        if (want != v && detail.empty())
                            detail = "first difference at (s,l)=(" + std::to_string(key.first) +
                                     "," + std::to_string(key.second) + ")";
                    }
                    record("act-table/" + std::string(to_string(s)), n, sum_expected,
                           sum_observed, detail);
                }
                auto observed = exhaustive_misplaced(n, opt);
                auto expected = misplaced_group_means(n);
                const char* names[] = {"small-in-medium", "small-in-large", "medium-in-small",
                                       "medium-in-large", "large-in-small", "large-in-medium"};
                for (std::size_t i = 0; i < 6; ++i)
                    record(std::string("misplaced/") + names[i], n, expected[i], observed[i]);
            }
            if (n >= 2 && n % 2 == 0)
                record("zero-crossings", n, expected_zero_crossings(n),
                       exhaustive_zero_crossings(n, opt));
        }
        return 0;
    });
    return rep;
}

// ---------------------------------------------------------------------------
// entry point

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Dual-pivot quicksort laboratory"};
    app.require_subcommand(1);
    RunSpec spec;
    std::string sizes_text;
    std::string format_text = "csv";
    std::string rule_text = "paper-ninth";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n,--sizes", sizes_text, "sizes: 10,20 or 3..8 or 2..16+2 or 64..8192*2");
        sub->add_option("--seed", spec.seed, "master seed");
        sub->add_option("--format", format_text, "csv, json or table")
            ->check(CLI::IsMember({"csv", "json", "table"}));
        sub->add_option("--out", spec.out, "output file (default stdout)");
        sub->add_option("--workers", spec.workers, "worker threads (0: all cores)");
        sub->add_option("--sample-rule", rule_text, "paper-ninth or theory")
            ->check(CLI::IsMember({"paper-ninth", "theory"}));
    };
    auto add_algorithm = [&](CLI::App* sub) {
        sub->add_option("--partitioner", spec.partitioners,
                        "yaroslavskiy, sedgewick, ..., SCHEME/STRATEGY, classic, clever, all")
            ->delimiter(',');
        sub->add_option("--strategy", spec.strategies, "classification strategies")
            ->delimiter(',');
        sub->add_option("--swap-scheme", spec.swap_scheme, "swap-a, swap-b, swap-c, swap-b-switching");
        sub->add_option("--selector", spec.selector, "direct, sample5, sample:K, median:K");
        sub->add_option("--cutoff", spec.cutoff, "insertion sort threshold");
    };

    auto* sort = app.add_subcommand("sort", "sort one input and report its cost");
    add_common(sort);
    add_algorithm(sort);
    sort->add_option("--input", spec.input, "newline-delimited keys");
    sort->add_flag("--emit", spec.emit, "print the sorted keys instead of the record");

    auto* bench = app.add_subcommand("bench", "average costs over random inputs");
    add_common(bench);
    add_algorithm(bench);
    bench->add_option("--trials", spec.trials, "trials per size");
    bench->add_option("--input", spec.input, "string corpus, one key per line");
    bench->add_flag("--timing", spec.timing, "append wall-clock seconds (not reproducible)");

    auto* exact = app.add_subcommand("exact", "exact average costs");
    add_common(exact);
    exact->add_option("--strategy", spec.strategies, "strategies or swap schemes")
        ->delimiter(',');
    exact->add_option("--swap-scheme", spec.swap_scheme, "swap scheme");
    exact->add_option("--pivot-model", spec.pivot_model, "uniform, sample5 or sample:K");
    exact->add_option("--quantity", spec.quantities, "partition, slope, sort, coefficient")
        ->delimiter(',');
    exact->add_option("--exact-limit", spec.exact_limit, "largest n for rational sort tables");

    auto* t1 = app.add_subcommand("table1", "leading coefficients with sampled pivots");
    add_common(t1);

    auto* zc = app.add_subcommand("zerocross", "expected number of zero crossings");
    add_common(zc);
    zc->add_option("--exact-limit", spec.exact_limit, "largest n rendered as a fraction");

    auto* oc = app.add_subcommand("oracle-check", "exhaustive enumeration against exact values");
    add_common(oc);
    oc->add_option("--oracle-limit", spec.oracle_limit, "largest n to enumerate");
    oc->add_option("--inject-fault", spec.inject_fault, "perturb checks with this name prefix")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        spec.command = app.get_subcommands().front()->get_name();
        if (!sizes_text.empty())
            spec.sizes = parse_sizes(sizes_text);
        spec.format = format_text == "json" ? Format::Json
                      : format_text == "table" ? Format::Table
                                               : Format::Csv;
        spec.rule = parse_sample_rule(rule_text);

        std::ofstream file;
        std::ostream* sink = &out;
        if (spec.out) {
            file.open(*spec.out);
            if (!file)
                throw UsageError("cannot write " + *spec.out);
            sink = &file;
        }

        if (spec.command == "sort") {
            std::ostringstream keys;
            Table t = cmd_sort(spec, spec.emit ? &keys : nullptr);
            if (spec.emit)
                *sink << keys.str();
            else
                write_table(t, spec.format, *sink);
        } else if (spec.command == "bench") {
            write_table(bench_table(cmd_bench(spec), spec.timing), spec.format, *sink);
        } else if (spec.command == "exact") {
            write_table(cmd_exact(spec), spec.format, *sink);
        } else if (spec.command == "table1") {
            write_table(cmd_table1(spec), spec.format, *sink);
        } else if (spec.command == "zerocross") {
            write_table(cmd_zerocross(spec), spec.format, *sink);
        } else if (spec.command == "oracle-check") {
            CheckReport rep = cmd_oracle_check(spec);
            write_table(rep.table, spec.format, *sink);
            if (!rep.mismatches.empty()) {
                for (const auto& m : rep.mismatches)
                    err << "mismatch: " << m << '\n';
                return kExitMismatch;
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace dpqs::cli
