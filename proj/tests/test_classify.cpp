#include <doctest.h>

#include "dpqs/classify.hpp"

using namespace dpqs;
using E = ElementClass;
using C = PivotChoice;

TEST_CASE("choose_first_pivot policy table")
{
    auto lc = make_state(StrategyId::LCounting, 10);
    lc.seen_small = 3;
    lc.seen_large = 1;
    CHECK(choose_first_pivot(lc) == C::PFirst);
    lc.seen_small = 1;
    CHECK(choose_first_pivot(lc) == C::QFirst); // tie goes to q

    auto o = make_state(StrategyId::OOracle, 12, 5, 5);
    CHECK(choose_first_pivot(o) == C::QFirst);
    o.seen_large = 1;
    CHECK(choose_first_pivot(o) == C::PFirst);

    auto alt = make_state(StrategyId::Alternate, 10);
    alt.seen_medium = 4;
    CHECK(choose_first_pivot(alt) == C::PFirst);
    alt.seen_medium = 5;
    CHECK(choose_first_pivot(alt) == C::QFirst);

    auto sf = make_state(StrategyId::SmallerFirst, 5);
    auto lf = make_state(StrategyId::LargerFirst, 5);
    CHECK(choose_first_pivot(sf) == C::PFirst);
    CHECK(choose_first_pivot(lf) == C::QFirst);

    auto ni = make_state(StrategyId::NIdeal, 10, 4, 3);
    CHECK(choose_first_pivot(ni) == C::PFirst);
    auto ni2 = make_state(StrategyId::NIdeal, 10, 3, 3);
    CHECK(choose_first_pivot(ni2) == C::QFirst);
}

TEST_CASE("oracle strategies demand oracle counts")
{
    auto o = make_state(StrategyId::OOracle, 10);
    CHECK_THROWS_AS(choose_first_pivot(o), std::invalid_argument);
    RngCoin coin(1);
    auto s = make_state(StrategyId::SAbstract, 10, std::nullopt, std::nullopt, &coin);
    CHECK_THROWS_AS(choose_first_pivot(s), std::invalid_argument);
}

TEST_CASE("S strategies with no small or large elements never flip")
{
    auto s = make_state(StrategyId::SAbstract, 6, 0, 0);
    CHECK(choose_first_pivot(s) == C::PFirst);
    auto sp = make_state(StrategyId::SPrimeAbstract, 6, 0, 0);
    CHECK(choose_first_pivot(sp) == C::QFirst);
}

TEST_CASE("N_SAMPLING locks after the sample")
{
    CHECK(sample_size(SampleRule::PaperNinth, 100) == 7);
    CHECK(sample_size(SampleRule::PaperNinth, 1000) == 10);
    CHECK(sample_size(SampleRule::Theory, 1000) == 100);
    CHECK(sample_size(SampleRule::Theory, 10) == 5); // 10^(2/3) = 4.64

    auto st = make_state(StrategyId::NSampling, 9); // budget 7
    for (int i = 0; i < 7; ++i) {
        CHECK(choose_first_pivot(st) == C::PFirst);
        st.record(i < 3 ? E::Small : E::Large);
    }
    REQUIRE(st.locked_choice.has_value());
    CHECK(choose_first_pivot(st) == C::QFirst);

    auto tie = make_state(StrategyId::NSampling, 9);
    for (int i = 0; i < 7; ++i)
        tie.record(i == 0 ? E::Small : (i == 1 ? E::Large : E::Medium));
    CHECK(choose_first_pivot(tie) == C::PFirst);
}

TEST_CASE("classify_element costs")
{
    CostCounters c;
    CHECK(classify_element<int>(1, 2, 4, C::PFirst, c) == E::Small);
    CHECK(c.comparisons == 1);
    CHECK(classify_element<int>(3, 2, 4, C::PFirst, c) == E::Medium);
    CHECK(c.comparisons == 3);
    CHECK(classify_element<int>(5, 2, 4, C::PFirst, c) == E::Large);
    CHECK(c.comparisons == 5);
    CHECK(classify_element<int>(5, 2, 4, C::QFirst, c) == E::Large);
    CHECK(c.comparisons == 6);
    CHECK(classify_element<int>(1, 2, 4, C::QFirst, c) == E::Small);
    CHECK(c.comparisons == 8);
    CHECK_THROWS_AS(classify_element<int>(1, 4, 2, C::PFirst, c), std::invalid_argument);
    CHECK_THROWS_AS(classify_element<int>(1, 3, 3, C::PFirst, c), std::invalid_argument);
}

TEST_CASE("classify_sequence hand traces")
{
    std::vector<int> keys{1, 3, 5};
    auto r = classify_sequence(std::span<const int>(keys), 2, 4, StrategyId::SmallerFirst, 0);
    CHECK(r.classes == std::vector<E>{E::Small, E::Medium, E::Large});
    CHECK(r.counters.comparisons == 5);
    CHECK(r.wrong == 1);

    auto l = classify_sequence(std::span<const int>(keys), 2, 4, StrategyId::LargerFirst, 0);
    CHECK(l.wrong == 1);
    CHECK(l.counters.comparisons == 5);

    std::vector<int> none;
    auto e = classify_sequence(std::span<const int>(none), 2, 4, StrategyId::Coin, 0);
    CHECK(e.counters.comparisons == 0);
    CHECK(e.wrong == 0);
}

TEST_CASE("accounting identity holds for every strategy on random inputs")
{
    for (auto strategy : kAllStrategies) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto perm = random_permutation(40, seed);
            std::int64_t p = perm[0] < perm[39] ? perm[0] : perm[39];
            std::int64_t q = perm[0] < perm[39] ? perm[39] : perm[0];
            std::vector<std::int64_t> keys(perm.begin() + 1, perm.end() - 1);
            auto r = classify_sequence(std::span<const std::int64_t>(keys), p, q, strategy,
                                       seed);
            std::uint64_t m = 0;
            std::uint64_t s = 0;
            std::uint64_t l = 0;
            for (auto k : keys) {
                m += (k > p && k < q);
                s += (k < p);
                l += (k > q);
            }
            CHECK(r.counters.comparisons == keys.size() + m + r.wrong);
            CHECK(r.wrong == act_of_run(r.classes, r.choices));
            for (std::size_t i = 0; i < keys.size(); ++i) {
                E want = keys[i] < p ? E::Small : (keys[i] < q ? E::Medium : E::Large);
                CHECK(r.classes[i] == want);
            }
            if (strategy == StrategyId::NIdeal)
                CHECK(r.wrong == (s > l ? l : s));
            if (strategy == StrategyId::OOracle)
                CHECK(r.wrong <= std::min(s, l));
            if (strategy == StrategyId::SmallerFirst)
                CHECK(r.wrong == l);
            if (strategy == StrategyId::LargerFirst)
                CHECK(r.wrong == s);
        }
    }
}

TEST_CASE("act_of_run")
{
    CHECK(act_of_run(std::vector<E>{E::Small, E::Medium, E::Large},
                     std::vector<C>{C::PFirst, C::PFirst, C::PFirst}) == 1);
    CHECK(act_of_run(std::vector<E>{E::Small, E::Small, E::Large},
                     std::vector<C>{C::QFirst, C::QFirst, C::PFirst}) == 3);
    CHECK(act_of_run(std::vector<E>{E::Medium, E::Medium}, std::vector<C>{C::PFirst, C::QFirst}) ==
          0);
    CHECK_THROWS_AS(act_of_run(std::vector<E>{E::Small}, std::vector<C>{}), std::invalid_argument);
}
