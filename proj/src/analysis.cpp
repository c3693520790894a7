#include "dpqs/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace dpqs {

using i128 = __int128;

mpz_class binomial(unsigned long n, unsigned long k)
{
    mpz_class r;
    if (k > n)
        return r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

ExactNumber harmonic(unsigned long n)
{
    ExactNumber h = 0;
    for (unsigned long i = 1; i <= n; ++i)
        h += ratio(1, i);
    return h;
}

ExactNumber ratio(const mpz_class& num, const mpz_class& den)
{
    ExactNumber r(num, den);
    r.canonicalize();
    return r;
}

ExactNumber from_int128(i128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
    mpz_class r = (hi << 64) + lo;
    if (neg)
        r = -r;
    return ExactNumber(r);
}

std::string to_fraction(const ExactNumber& v)
{
    ExactNumber x = v;
    x.canonicalize();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_decimal(const ExactNumber& x, int digits)
{
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    ExactNumber a = abs(x) * scale + ratio(1, 2);
    mpz_class r = a.get_num() / a.get_den();
    std::string s = r.get_str();
    if (s.size() <= static_cast<std::size_t>(digits))
        s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    if (digits > 0)
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    if (x < 0 && r != 0)
        s.insert(0, "-");
    return s;
}

long double to_long_double(const ExactNumber& x)
{
    // enough for the ranges used here; mpq_get_d rounds correctly
    return static_cast<long double>(x.get_d());
}

BinomialTable::BinomialTable(unsigned n) : n_(n), rows_(n + 1)
{
    for (unsigned i = 0; i <= n; ++i) {
        rows_[i].resize(i + 1);
        rows_[i][0] = 1;
        rows_[i][i] = 1;
        for (unsigned j = 1; j < i; ++j)
            rows_[i][j] = rows_[i - 1][j - 1] + rows_[i - 1][j];
    }
}

const mpz_class& BinomialTable::operator()(long n, long k) const
{
    if (n < 0 || k < 0 || k > n)
        return zero_;
    if (n > static_cast<long>(n_))
        throw std::out_of_range("BinomialTable: n too large");
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------

bool has_exact_act(StrategyId s)
{
    return s != StrategyId::NSampling;
}

ExactNumber expected_act(StrategyId strategy, unsigned s, unsigned l, unsigned n)
{
    if (n < 2 || s + l > n - 2)
        throw std::invalid_argument("expected_act: requires s + l <= n - 2");
    unsigned inner = n - 2;
    switch (strategy) {
    case StrategyId::SmallerFirst:
        return l;
    case StrategyId::LargerFirst:
        return s;
    case StrategyId::Alternate: {
        if (inner == 0)
            return 0;
        unsigned fp = (inner + 1) / 2;
        unsigned fq = inner / 2;
        return ratio(fq * s + fp * l, inner);
    }
    case StrategyId::Coin:
        return ratio(s + l, 2);
    case StrategyId::SAbstract:
        if (s + l == 0)
            return 0;
        return ratio(s * s + l * l, s + l);
    case StrategyId::SPrimeAbstract:
        if (s + l == 0)
            return 0;
        return ratio(2 * s * l, s + l);
    case StrategyId::NIdeal:
        return s > l ? l : s;
    case StrategyId::OOracle:
        return act_oracle_dp(s + l)[s][l];
    case StrategyId::LCounting:
        return act_past_dp(s, l);
    case StrategyId::NSampling:
        break;
    }
    throw std::invalid_argument("expected_act: no exact value for " +
                                std::string(to_string(strategy)));
}

namespace {

ExactNumber comparison_base(unsigned n)
{
    return ExactNumber(n - 1) + ratio(n - 2, 3);
}

ExactNumber pairs(unsigned n)
{
    return ExactNumber(binomial(n, 2));
}

} // namespace

ExactNumber direct_partition_cost(StrategyId strategy, unsigned n)
{
    if (n < 2)
        throw std::invalid_argument("partition cost needs n >= 2");
    if (!has_exact_act(strategy))
        throw std::invalid_argument("no exact partition cost for " +
                                    std::string(to_string(strategy)));
    unsigned inner = n - 2;
    std::vector<std::vector<ExactNumber>> table;
    if (strategy == StrategyId::OOracle)
        table = act_oracle_dp(inner);
    else if (strategy == StrategyId::LCounting)
        table = act_past_table(inner);
    ExactNumber sum = 0;
    for (unsigned s = 0; s <= inner; ++s)
        for (unsigned l = 0; s + l <= inner; ++l)
            sum += table.empty() ? expected_act(strategy, s, l, n) : table[s][l];
    sum /= pairs(n);
    sum.canonicalize();
    return comparison_base(n) + sum;
}

namespace {

struct Ratio {
    i128 num;
    i128 den;
};

i128 c3(i128 m) // C(m+2, 3)
{
    return m * (m + 1) * (m + 2) / 6;
}

// Sum over all (s, l) with s + l <= M of the per-pair quantity of the series.
Ratio series_total(CostSeries series, i128 m)
{
    if (m <= 0)
        return {0, 1};
    switch (series) {
    case CostSeries::Oblivious:
        return {c3(m), 1};
    case CostSeries::NIdeal:
        return {m * (m + 2) * (2 * m - 1) / 24, 1};
    case CostSeries::S:
        return {m * (4 * m * m + 15 * m + 17), 18};
    case CostSeries::SPrime:
        return {m * (m - 1) * (2 * m + 5), 18};
    case CostSeries::SwapA:
        return {2 * c3(m), 1};
    case CostSeries::SwapB:
        return {(m + 1) * (m + 2) * (3 * m - 1), 12};
    case CostSeries::SwapC:
        return {(m - 1) * (5 * m * m + 14 * m + 6), 36};
    case CostSeries::SwapBSwitching: {
        // 2 C(m+2,3) - Q(m)/m, Q(m) = sum of max(s,l)^2
        i128 q48 = (m % 2 == 0) ? m * (m + 2) * (7 * m * m + 16 * m + 6)
                                : (m + 1) * (7 * m * m * m + 23 * m * m + 15 * m + 3);
        return {96 * c3(m) * m - q48, 48 * m};
    }
    }
    return {0, 1};
}

} // namespace

std::string_view to_string(CostSeries s)
{
    switch (s) {
    case CostSeries::Oblivious:
        return "oblivious";
    case CostSeries::NIdeal:
        return "n-ideal";
    case CostSeries::S:
        return "s-abstract";
    case CostSeries::SPrime:
        return "s-prime-abstract";
    case CostSeries::SwapA:
        return "swap-a";
    case CostSeries::SwapB:
        return "swap-b";
    case CostSeries::SwapC:
        return "swap-c";
    case CostSeries::SwapBSwitching:
        return "swap-b-switching";
    }
    return "unknown";
}

CostSeries parse_cost_series(std::string_view name)
{
    for (auto s : {CostSeries::Oblivious, CostSeries::NIdeal, CostSeries::S, CostSeries::SPrime,
                   CostSeries::SwapA, CostSeries::SwapB, CostSeries::SwapC,
                   CostSeries::SwapBSwitching})
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("unknown cost series: " + std::string(name));
}

bool is_swap_series(CostSeries s)
{
    return s == CostSeries::SwapA || s == CostSeries::SwapB || s == CostSeries::SwapC ||
           s == CostSeries::SwapBSwitching;
}

std::vector<ExactNumber> partition_cost_table_exact(CostSeries series, unsigned max_n)
{
    std::vector<ExactNumber> t(max_n + 1, ExactNumber(0));
    for (unsigned n = 2; n <= max_n; ++n) {
        Ratio r = series_total(series, n - 2);
        ExactNumber total = from_int128(r.num) / from_int128(r.den) / pairs(n);
        ExactNumber base = is_swap_series(series) ? ExactNumber(2) : comparison_base(n);
        t[n] = base + total;
        t[n].canonicalize();
    }
    return t;
}

std::vector<long double> partition_cost_table(CostSeries series, unsigned max_n)
{
    std::vector<long double> t(max_n + 1, 0.0L);
    for (unsigned n = 2; n <= max_n; ++n) {
        Ratio r = series_total(series, n - 2);
        long double pairs_n = static_cast<long double>(n) * (n - 1) / 2.0L;
        long double total = static_cast<long double>(r.num) / static_cast<long double>(r.den);
        long double base = is_swap_series(series) ? 2.0L : (n - 1) + (n - 2) / 3.0L;
        t[n] = base + total / pairs_n;
    }
    return t;
}

std::vector<long double> linear_cost_table(long double a, unsigned max_n)
{
    std::vector<long double> t(max_n + 1, 0.0L);
    for (unsigned n = 2; n <= max_n; ++n)
        t[n] = a * n;
    return t;
}

ExactNumber exact_partition_cost(StrategyId strategy, unsigned n)
{
    if (n < 2)
        throw std::invalid_argument("partition cost needs n >= 2");
    CostSeries series;
    switch (strategy) {
    case StrategyId::SmallerFirst:
    case StrategyId::LargerFirst:
    case StrategyId::Alternate:
    case StrategyId::Coin:
        series = CostSeries::Oblivious;
        break;
    case StrategyId::NIdeal:
        series = CostSeries::NIdeal;
        break;
    case StrategyId::SAbstract:
        series = CostSeries::S;
        break;
    case StrategyId::SPrimeAbstract:
        series = CostSeries::SPrime;
        break;
    default:
        return direct_partition_cost(strategy, n);
    }
    Ratio r = series_total(series, n - 2);
    ExactNumber v = comparison_base(n) + from_int128(r.num) / from_int128(r.den) / pairs(n);
    v.canonicalize();
    return v;
}

// ---------------------------------------------------------------------------

ExactNumber expected_swaps(SwapScheme scheme, unsigned s, unsigned l, unsigned n)
{
    if (n < 2 || s + l > n - 2)
        throw std::invalid_argument("expected_swaps: requires s + l <= n - 2");
    unsigned inner = n - 2;
    unsigned m = inner - s - l;
    auto displaced = [&](unsigned c) {
        return inner == 0 ? ExactNumber(0) : ratio(c * (inner - c), inner);
    };
    ExactNumber v = 2;
    switch (scheme) {
    case SwapScheme::Dijkstra:
        v += s + l;
        break;
    case SwapScheme::Meyer:
        v += displaced(s) + l;
        break;
    case SwapScheme::Chen:
        v += displaced(s);
        if (m + l > 0)
            v += ratio(l * m, m + l);
        break;
    case SwapScheme::MeyerSwitching:
        v += s > l ? displaced(s) + l : displaced(l) + s;
        break;
    }
    v.canonicalize();
    return v;
}

ExactNumber direct_swap_cost(SwapScheme scheme, unsigned n)
{
    if (n < 2)
        throw std::invalid_argument("swap cost needs n >= 2");
    ExactNumber sum = 0;
    for (unsigned s = 0; s + 2 <= n; ++s)
        for (unsigned l = 0; s + l + 2 <= n; ++l)
            sum += expected_swaps(scheme, s, l, n);
    sum /= pairs(n);
    sum.canonicalize();
    return sum;
}

ExactNumber swap_partition_cost(SwapScheme scheme, unsigned n)
{
    if (n < 2)
        throw std::invalid_argument("swap cost needs n >= 2");
    CostSeries series = CostSeries::SwapA;
    switch (scheme) {
    case SwapScheme::Dijkstra:
        series = CostSeries::SwapA;
        break;
    case SwapScheme::Meyer:
        series = CostSeries::SwapB;
        break;
    case SwapScheme::Chen:
        series = CostSeries::SwapC;
        break;
    case SwapScheme::MeyerSwitching:
        series = CostSeries::SwapBSwitching;
        break;
    }
    Ratio r = series_total(series, n - 2);
    ExactNumber v = 2 + from_int128(r.num) / from_int128(r.den) / pairs(n);
    v.canonicalize();
    return v;
}

// ---------------------------------------------------------------------------

std::vector<ExactNumber> recurrence_solve(const std::vector<ExactNumber>& p, PivotModel model)
{
    std::size_t max_n = p.size() == 0 ? 0 : p.size() - 1;
    std::vector<ExactNumber> c(p.size(), ExactNumber(0));
    const ExactNumber sample_cost(463, 60);
    ExactNumber s0 = 0; // sum_{k<=n-2} C_k
    ExactNumber s1 = 0; // sum_{k<=n-2} k C_k
    for (std::size_t n = 2; n <= max_n; ++n) {
        s0 += c[n - 2];
        s1 += ExactNumber(static_cast<unsigned long>(n - 2)) * c[n - 2];
        if (model == PivotModel::Sample5 && n >= 5) {
            ExactNumber acc = 0;
            for (std::size_t s = 1; s + 2 <= n; ++s)
                acc += ExactNumber(binomial(n - 1 - s, 3) * static_cast<unsigned long>(s)) * c[s];
            c[n] = p[n] + sample_cost + 3 * acc / ExactNumber(binomial(n, 5));
        } else {
            ExactNumber w = ExactNumber(static_cast<unsigned long>(n - 1)) * s0 - s1;
            c[n] = p[n] + 6 * w / ExactNumber(static_cast<unsigned long>(n * (n - 1)));
        }
        c[n].canonicalize();
    }
    return c;
}

std::vector<long double> recurrence_solve(const std::vector<long double>& p, PivotModel model,
                                          long double sample_cost)
{
    std::size_t max_n = p.size() == 0 ? 0 : p.size() - 1;
    std::vector<long double> c(p.size(), 0.0L);
    long double s0 = 0;
    long double s1 = 0;
    for (std::size_t n = 2; n <= max_n; ++n) {
        long double ld_n = static_cast<long double>(n);
        s0 += c[n - 2];
        s1 += (ld_n - 2) * c[n - 2];
        if (model == PivotModel::Sample5 && n >= 5) {
            long double acc = 0;
            for (std::size_t s = 1; s + 2 <= n; ++s) {
                long double r = static_cast<long double>(n - 1 - s);
                acc += static_cast<long double>(s) * (r * (r - 1) * (r - 2) / 6.0L) * c[s];
            }
            long double c5 = ld_n * (ld_n - 1) * (ld_n - 2) * (ld_n - 3) * (ld_n - 4) / 120.0L;
            c[n] = p[n] + sample_cost + 3.0L * acc / c5;
        } else {
            c[n] = p[n] + 6.0L * ((ld_n - 1) * s0 - s1) / (ld_n * (ld_n - 1));
        }
    }
    return c;
}

double leading_coefficient_estimate(const std::vector<long double>& t, std::size_t n)
{
    if (2 * n >= t.size() || n < 2)
        throw std::out_of_range("leading_coefficient_estimate: table too short");
    long double num = t[2 * n] - 2 * t[n];
    return static_cast<double>(num / (2.0L * n * std::log(2.0L)));
}

// ---------------------------------------------------------------------------

std::vector<std::vector<ExactNumber>> act_oracle_dp(unsigned n)
{
    std::vector<std::vector<ExactNumber>> e(n + 1);
    for (unsigned i = 0; i <= n; ++i)
        e[i].assign(n + 1 - i, ExactNumber(0));
    for (unsigned total = 2; total <= n; ++total) {
        for (unsigned i = 1; i < total; ++i) {
            unsigned j = total - i;
            bool p_first = i > j;
            ExactNumber small = (p_first ? 0 : 1) + e[i - 1][j];
            ExactNumber large = (p_first ? 1 : 0) + e[i][j - 1];
            e[i][j] = (i * small + j * large) / total;
            e[i][j].canonicalize();
        }
    }
    return e;
}

namespace {

ExactNumber past_dp(unsigned s, unsigned l, const BinomialTable& bin)
{
    mpz_class t = 0;
    for (unsigned a = 0; a <= s; ++a) {
        for (unsigned b = 0; b <= l; ++b) {
            if (a == s && b == l)
                continue;
            long rem = static_cast<long>(s + l - a - b);
            const mpz_class& paths = bin(a + b, a);
            if (a > b) {
                if (b < l)
                    t += paths * bin(rem - 1, s - a);
            } else if (a < s) {
                t += paths * bin(rem - 1, static_cast<long>(s - a) - 1);
            }
        }
    }
    ExactNumber v(t, bin(s + l, s));
    v.canonicalize();
    return v;
}

} // namespace

ExactNumber act_past_dp(unsigned s, unsigned l, std::uint64_t budget)
{
    if (static_cast<std::uint64_t>(s + 1) * (l + 1) > budget)
        throw std::length_error("act_past_dp: state budget exceeded");
    BinomialTable bin(s + l);
    return past_dp(s, l, bin);
}

std::vector<std::vector<ExactNumber>> act_past_table(unsigned m)
{
    BinomialTable bin(m);
    std::vector<std::vector<ExactNumber>> t(m + 1);
    for (unsigned s = 0; s <= m; ++s) {
        t[s].resize(m + 1 - s);
        for (unsigned l = 0; s + l <= m; ++l)
            t[s][l] = past_dp(s, l, bin);
    }
    return t;
}

// ---------------------------------------------------------------------------

ExactNumber sample5_partition_cost(Sample5Model model, unsigned n)
{
    if (n < 5)
        throw std::invalid_argument("sample5_partition_cost: n >= 5");
    const i128 inner = n - 2;
    mpz_class total = 0;
    for (i128 s = 0; s + 1 <= inner; ++s) {
        i128 row = 0;
        for (i128 l = 0; s + l <= inner - 1; ++l) {
            i128 m = inner - s - l;
            if (model == Sample5Model::YaroslavskiyModel)
                row += l * (2 * s + m) * s * m * l;
            else if (s <= l)
                row += s * s * m * l;
        }
        total += from_int128(row).get_num();
    }
    ExactNumber sum(total);
    ExactNumber c5(binomial(n, 5));
    ExactNumber v = ratio(4 * n, 3);
    if (model == Sample5Model::YaroslavskiyModel)
        v += sum / (c5 * static_cast<unsigned long>(n - 2));
    else
        v += 2 * sum / c5;
    v.canonicalize();
    return v;
}

ExactNumber sample_k_partition_cost(unsigned k, unsigned n)
{
    if (k % 2 == 0 || (k + 1) % 3 != 0)
        throw std::invalid_argument("sample_k_partition_cost: needs odd k with k+1 divisible by 3");
    if (n < k)
        throw std::invalid_argument("sample_k_partition_cost: needs n >= k");
    const unsigned t = (k - 2) / 3;
    std::vector<mpz_class> b(n + 1);
    for (unsigned x = 0; x <= n; ++x)
        b[x] = binomial(x, t);
    mpz_class total = 0;
    mpz_class inner;
    const long m_all = static_cast<long>(n) - 2;
    for (long s = static_cast<long>(t); 2 * s <= m_all; ++s) {
        long r = m_all - s; // m + l
        inner = 0;
        for (long l = s; l <= r - static_cast<long>(t); ++l)
            mpz_addmul(inner.get_mpz_t(), b[static_cast<std::size_t>(r - l)].get_mpz_t(),
                       b[static_cast<std::size_t>(l)].get_mpz_t());
        inner *= b[static_cast<std::size_t>(s)];
        inner *= s;
        total += inner;
    }
    ExactNumber v = ratio(4 * n, 3) + 2 * ExactNumber(total) / ExactNumber(binomial(n, k));
    v.canonicalize();
    return v;
}

ExactNumber median_qs_coefficient(unsigned k)
{
    if (k % 2 == 0)
        throw std::invalid_argument("median_qs_coefficient: k must be odd");
    return 1 / (harmonic(k + 1) - harmonic((k + 1) / 2));
}

ExactNumber tertile_dpqs_coefficient(unsigned k, const ExactNumber& a)
{
    if (k % 2 == 0 || (k + 1) % 3 != 0)
        throw std::invalid_argument("tertile_dpqs_coefficient: needs odd k with k+1 divisible by 3");
    return a / (harmonic(k + 1) - harmonic((k + 1) / 3));
}

double slope_estimate(const ExactNumber& p_n, const ExactNumber& p_2n, unsigned n)
{
    ExactNumber d = (p_2n - p_n) / n;
    return d.get_d();
}

std::vector<Table1Row> table1(unsigned n)
{
    struct Printed {
        unsigned k;
        double median;
        double tertile;
    };
    const Printed printed[] = {{5, 1.622, 1.623}, {11, 1.531, 1.545}, {17, 1.501, 1.523},
                               {41, 1.468, 1.504}};
    std::vector<Table1Row> rows;
    for (const auto& pr : printed) {
        double a = slope_estimate(sample_k_partition_cost(pr.k, n),
                                  sample_k_partition_cost(pr.k, 2 * n), n);
        ExactNumber h = harmonic(pr.k + 1) - harmonic((pr.k + 1) / 3);
        Table1Row row;
        row.k = pr.k;
        row.median_qs = median_qs_coefficient(pr.k).get_d();
        row.tertile_dpqs = a / h.get_d();
        row.reference_median_qs = pr.median;
        row.reference_tertile_dpqs = pr.tertile;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------

ExactNumber expected_zero_crossings(unsigned n)
{
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("expected_zero_crossings: n must be even and positive");
    ExactNumber sum = 0;
    for (unsigned s = 1; s <= n / 2; ++s) {
        mpz_class row = 0;
        for (unsigned i = 1; i <= s; ++i)
            row += binomial(2 * i, i) * binomial(n - 2 * i, s - i);
        sum += ratio(row, binomial(n, s));
    }
    ExactNumber v = 2 * sum / n;
    v.canonicalize();
    return v;
}

std::vector<long double> zero_crossing_series(unsigned max_n)
{
    // t[s] = T_s(n) / C(n, s), where T_s(n) counts (sequence, balanced suffix)
    // pairs over sequences with s small elements.
    std::vector<long double> out(max_n + 1, 0.0L);
    std::vector<long double> t(max_n + 1, 0.0L);
    for (unsigned n = 1; n <= max_n; ++n) {
        long double ld_n = n;
        for (unsigned s = n; s >= 1; --s) {
            long double keep = (s < n) ? t[s] * (ld_n - s) / ld_n : 0.0L;
            t[s] = keep + t[s - 1] * s / ld_n;
            if (n % 2 == 0 && s == n / 2)
                t[s] += 1.0L;
        }
        if (n % 2 == 0) {
            long double sum = 0;
            for (unsigned s = 1; s <= n / 2; ++s)
                sum += t[s];
            out[n] = 2.0L * sum / ld_n;
        }
    }
    return out;
}

std::array<ExactNumber, 6> misplaced_group_means(unsigned n)
{
    if (n < 3)
        throw std::invalid_argument("misplaced_group_means: n >= 3");
    unsigned inner = n - 2;
    mpz_class sm = 0;
    mpz_class sl = 0;
    mpz_class ml = 0;
    for (unsigned s = 0; s <= inner; ++s)
        for (unsigned l = 0; s + l <= inner; ++l) {
            unsigned m = inner - s - l;
            sm += s * m;
            sl += s * l;
            ml += m * l;
        }
    ExactNumber d = pairs(n) * inner;
    ExactNumber a(sm);
    ExactNumber b(sl);
    ExactNumber c(ml);
    a /= d;
    b /= d;
    c /= d;
    // small in M, small in L, medium in S, medium in L, large in S, large in M
    return {a, b, a, c, b, c};
}

ExactNumber misplaced_lower_bound(unsigned n)
{
    ExactNumber total = 0;
    for (const auto& g : misplaced_group_means(n))
        total += g;
    return total / 2;
}

ExactNumber yaroslavskiy_act_model(unsigned n)
{
    if (n < 3)
        return 0;
    i128 m = n - 2;
    // sum over s + l <= m of l (2s + m') with m' = m - s - l
    i128 sum = (m - 1) * m * (m + 1) * (m + 2) / 8;
    ExactNumber v = from_int128(sum) / (pairs(n) * static_cast<unsigned long>(m));
    v.canonicalize();
    return v;
}

} // namespace dpqs
