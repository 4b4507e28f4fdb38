#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latdist/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "latdist");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = latdist::cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name)
{
    std::ifstream in(std::filesystem::path(LATDIST_GOLDEN_DIR) / name);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_golden(const std::vector<std::string>& args, const std::string& name)
{
    auto r = run_cli(args);
    CHECK(r.code == 0);
    CHECK(r.out == golden(name));
}

} // namespace

TEST_CASE("golden CSV per command")
{
    check_golden({"square-stats", "--side", "2,3"}, "square_stats.csv");
    check_golden({"lshape", "--n", "1,2,3,12"}, "lshape.csv");
    check_golden({"rect", "--n", "64,4096", "--alpha", "1/3,2/5"}, "rect.csv");
    check_golden({"identities", "--n", "64,4096", "--alpha", "1/3,2/5"}, "identities.csv");
    check_golden({"rhat", "--k", "1,10,100,1000"}, "rhat.csv");
    check_golden({"landau", "--limit", "1,10,100,1000"}, "landau.csv");
    check_golden({"arcs", "--nmax", "50", "--beta", "1/4"}, "arcs.csv");
    check_golden({"oracle-check", "--limit", "2000"}, "oracle_check.csv");
    check_golden({"accept", "--suite", "fast"}, "accept_fast.csv");
}

TEST_CASE("spec CLI examples")
{
    auto sq = run_cli({"square-stats", "--side", "3"});
    CHECK(sq.code == 0);
    CHECK(sq.out.find("\n3,9,5,1248,") != std::string::npos);

    auto rect = run_cli({"rect", "--n", "64", "--alpha", "1/3"});
    CHECK(rect.code == 0);
    CHECK(rect.out.find("\n64,1/3,16,4,8,45,") != std::string::npos);
    CHECK(rect.out.find(",45,45,") != std::string::npos);

    auto bad = run_cli({"rect", "--n", "10", "--alpha", "9/20"});
    CHECK(bad.code == 2);
    CHECK(bad.err.rfind("error: validation: sublattice empty", 0) == 0);
    CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
}

TEST_CASE("validation and capacity exit statuses")
{
    CHECK(run_cli({"rect", "--n", "64", "--alpha", "0.3"}).code == 2);
    CHECK(run_cli({"rect", "--n", "64", "--alpha", "1/2"}).code == 2);
    CHECK(run_cli({"arcs", "--nmax", "10", "--beta", "0.2"}).code == 2);
    CHECK(run_cli({"square-stats"}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({"square-stats", "--side", "3", "--format", "xml"}).code == 2);
    auto cap = run_cli({"lshape", "--n", "1000000"});
    CHECK(cap.code == 3);
    CHECK(cap.err.rfind("error: capacity:", 0) == 0);
    CHECK(run_cli({"square-stats", "--side", "100000"}).code == 3);
}

TEST_CASE("help documents every schema")
{
    auto r = run_cli({"--help"});
    CHECK(r.code == 0);
    for (const char* col : {"side,N,x,energy,csBound,gapRatio,energy_over_N3lnN,x_sqrtlnN_over_N",
                            "k,rhat,rhat_over_klnk", "N,count,count_sqrtlnN_over_N", "check,cases,mismatches",
                            "id,criterion,status,measured", "n,alpha,sumR,sumD,sumR2,sumD2,sumBinomR2,sumBinomD2,holds"})
        CHECK(r.out.find(col) != std::string::npos);
}

TEST_CASE("JSON output carries wide integers as strings")
{
    auto r = run_cli({"square-stats", "--side", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j[0]["N"] == 9);
    CHECK(j[0]["energy"] == "1248");
    CHECK(j[0]["gapRatio"].is_number_float());
    CHECK(r.out == golden("square_stats.json"));
}

TEST_CASE("output is byte-identical across thread counts")
{
    for (std::vector<std::string> args : {std::vector<std::string>{"square-stats", "--side", "64,101"},
                                          {"rect", "--n", "65536", "--alpha", "3/10,2/5"},
                                          {"arcs", "--nmax", "70000", "--beta", "1/4", "--records-only"}}) {
        auto one = run_cli(args);
        args.insert(args.end(), {"--threads", "4"});
        auto four = run_cli(args);
        CHECK(one.code == 0);
        CHECK(one.out == four.out);
    }
}

TEST_CASE("output file and sieve cache directory")
{
    auto dir = std::filesystem::temp_directory_path() / "latdist_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto out_path = (dir / "out.csv").string();
    auto r = run_cli({"landau", "--limit", "100", "-o", out_path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "N,count,count_sqrtlnN_over_N");

    auto cache = (dir / "cache").string();
    auto first = run_cli({"oracle-check", "--limit", "3000", "--cache-dir", cache});
    CHECK(first.code == 0);
    CHECK(std::filesystem::exists(std::filesystem::path(cache) / "spf_3000.bin"));
    auto second = run_cli({"oracle-check", "--limit", "3000", "--cache-dir", cache});
    CHECK(second.code == 0);
    CHECK(second.out == first.out);

    // a corrupted cache is rejected, not used
    {
        std::fstream f(std::filesystem::path(cache) / "spf_3000.bin", std::ios::binary | std::ios::in | std::ios::out);
        f.write("XXXX", 4);
    }
    CHECK(run_cli({"oracle-check", "--limit", "3000", "--cache-dir", cache}).code == 2);
    std::filesystem::remove_all(dir);
}
