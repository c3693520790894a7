#include <doctest.h>

#include "dpqs/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace dpqs::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "dpqs");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string temp_path(const std::string& name)
{
    return "/tmp/dpqs_test_" + name;
}

} // namespace

TEST_CASE("size lists")
{
    CHECK(parse_sizes("3..6") == std::vector<std::uint64_t>{3, 4, 5, 6});
    CHECK(parse_sizes("2..8+2") == std::vector<std::uint64_t>{2, 4, 6, 8});
    CHECK(parse_sizes("64..512*2") == std::vector<std::uint64_t>{64, 128, 256, 512});
    CHECK(parse_sizes("10,20") == std::vector<std::uint64_t>{10, 20});
    CHECK_THROWS_AS(parse_sizes("5..3"), UsageError);
    CHECK_THROWS_AS(parse_sizes("x"), UsageError);
    CHECK_THROWS_AS(parse_sizes(""), UsageError);
}

TEST_CASE("bench output is reproducible and independent of workers")
{
    std::vector<std::string> args = {"bench",       "--sizes",    "200,300",
                                     "--trials",    "6",          "--seed",
                                     "42",          "--partitioner", "yaroslavskiy,swap-a/coin,clever"};
    auto a = invoke(args);
    auto b = invoke(args);
    args.insert(args.end(), {"--workers", "3"});
    auto c = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(count_lines(a.out) == 1 + 2 * 3);
    CHECK(a.out.rfind("n,strategy,selector,trials,mean_comparisons,stderr_comparisons,mean_swaps,"
                      "stderr_swaps,scaled_comparisons,seed,generator_id,keys\n",
                      0) == 0);
    auto d = invoke({"bench", "--n", "200", "--trials", "6", "--seed", "43"});
    CHECK(d.out != a.out);
}

TEST_CASE("bench timing column is opt-in")
{
    auto r = invoke({"bench", "--n", "100", "--trials", "2", "--timing"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mean_seconds") != std::string::npos);
}

TEST_CASE("bench and sort in string mode")
{
    std::string path = temp_path("words.txt");
    {
        std::ofstream f(path);
        f << "pear\napple\nfig\napple\nkiwi\nplum\n";
    }
    auto r = invoke({"bench", "--input", path, "--trials", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["keys"] == "string");
    CHECK(j[0]["n"] == 5); // duplicates removed
    CHECK(invoke({"bench", "--input", path, "--n", "9"}).code == kExitUsage);

    auto s = invoke({"sort", "--input", path, "--emit", "--partitioner", "sedgewick"});
    CHECK(s.out == "apple\napple\nfig\nkiwi\npear\nplum\n");
    auto rec = invoke({"sort", "--n", "50", "--strategy", "n-ideal", "--swap-scheme", "swap-b"});
    CHECK(rec.out.find("swap-b/n-ideal") != std::string::npos);
    CHECK(rec.out.find(",true\n") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with 1")
{
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"bench", "--bogus"}).code == kExitUsage);
    CHECK(invoke({"bench", "--n", "10", "--strategy", "nope"}).code == kExitUsage);
    CHECK(invoke({"bench", "--n", "10", "--swap-scheme", "swap-c", "--strategy", "coin"}).code ==
          kExitUsage);
    CHECK(invoke({"bench", "--n", "10", "--selector", "sample:6"}).code == kExitUsage);
    CHECK(invoke({"bench", "--input", "/nonexistent/file"}).code == kExitUsage);
    CHECK(invoke({"exact", "--n", "10", "--strategy", "n-sampling"}).code == kExitUsage);
    CHECK(invoke({"zerocross", "--n", "5"}).code == kExitUsage);
    CHECK(invoke({"oracle-check", "--sizes", "11"}).code == kExitUsage);
    CHECK(invoke({"bench", "--help"}).code == kExitOk);
}

TEST_CASE("exact tables")
{
    auto r = invoke({"exact", "--n", "4", "--strategy", "n-ideal,smaller-first", "--quantity",
                     "partition"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "n,strategy,pivot_model,quantity,value_exact,value_decimal\n"
                   "4,n-ideal,uniform,partition,23/6,3.8333333333\n"
                   "4,smaller-first,uniform,partition,13/3,4.3333333333\n");
    auto sort = invoke({"exact", "--n", "2", "--quantity", "sort"});
    CHECK(sort.out.find("2,n-ideal,uniform,sort,1/1,1.0000000000") != std::string::npos);
    auto big = invoke({"exact", "--n", "100000", "--strategy", "s-prime-abstract", "--quantity",
                       "coefficient"});
    CHECK(big.out.find(",1.86") != std::string::npos);
    auto swap = invoke({"exact", "--n", "50000", "--swap-scheme", "swap-c", "--quantity", "slope"});
    CHECK(swap.out.find(",0.2777") != std::string::npos);
}

TEST_CASE("table1 and zerocross")
{
    auto t = invoke({"table1", "--n", "300"});
    REQUIRE(t.code == 0);
    CHECK(count_lines(t.out) == 5);
    CHECK(t.out.find("5,1.6216,") != std::string::npos);

    auto z = invoke({"zerocross", "--sizes", "2,4,8"});
    REQUIRE(z.code == 0);
    CHECK(z.out == "n,value_exact,value_decimal,doubling_difference\n"
                   "2,1/1,1.0000000000,\n"
                   "4,13/12,1.0833333333,0.0833333333\n"
                   "8,341/280,1.2178571429,0.1345238095\n");
}

TEST_CASE("oracle-check passes and reports injected faults")
{
    auto ok = invoke({"oracle-check", "--sizes", "2..5"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(ok.err.empty());

    auto bad = invoke({"oracle-check", "--sizes", "4", "--inject-fault",
                       "partition-comparisons/n-ideal"});
    CHECK(bad.code == kExitMismatch);
    CHECK(bad.err.find("partition-comparisons/n-ideal at n=4") != std::string::npos);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("output file")
{
    std::string path = temp_path("out.csv");
    auto r = invoke({"zerocross", "--n", "2", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("2,1/1") != std::string::npos);
    std::remove(path.c_str());
}
