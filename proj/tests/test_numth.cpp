#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "latdist/error.hpp"
#include "latdist/numth.hpp"
#include "oracles.hpp"

using namespace latdist;
using namespace latdist::numth;

TEST_CASE("r_bruteforce examples")
{
    CHECK(r_bruteforce(3) == 0);
    CHECK(r_bruteforce(25) == 4);
    CHECK(r_bruteforce(2) == 1);
    CHECK(r_bruteforce(1) == 2);
    CHECK_THROWS_AS(r_bruteforce(0), ValidationError);
    for (std::uint64_t k = 1; k <= 2000; ++k) CHECK(r_bruteforce(k) == oracle::r_quadrant(k));
}

TEST_CASE("spf sieve small tables")
{
    auto s = build_spf_sieve(10);
    CHECK(s.spf(9) == 3);
    CHECK(s.spf(7) == 7);
    CHECK(s.spf(10) == 2);
    CHECK(build_spf_sieve(2).spf(2) == 2);
    CHECK_THROWS_AS(build_spf_sieve(1), ValidationError);
    CHECK_THROWS_AS(build_spf_sieve(1000, 100), CapacityError);
    CHECK_THROWS_AS(build_spf_sieve(kMaxSieveLimit + 1, ~std::uint64_t(0)), CapacityError);
}

TEST_CASE("spf sieve invariants against trial division")
{
    auto s = build_spf_sieve(20000);
    for (std::uint64_t k = 2; k <= 20000; ++k) {
        std::uint64_t p = s.spf(k);
        CHECK(k % p == 0);
        CHECK(p == oracle::smallest_factor(k));
        CHECK((p == k) == oracle::is_prime(k));
        CHECK((p * p <= k || p == k));
    }
}

TEST_CASE("spf sieve at 10^7")
{
    auto s = build_spf_sieve(10000000);
    CHECK(oracle::is_prime(9999991));
    CHECK(s.spf(9999991) == 9999991);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick(2, 10000000);
    for (int i = 0; i < 500; ++i) {
        auto k = pick(rng);
        CHECK(s.spf(k) == oracle::smallest_factor(k));
    }
}

TEST_CASE("r_fast examples and exhaustive agreement")
{
    auto s = build_spf_sieve(100000);
    CHECK(r_fast(25, s) == 4);
    CHECK(r_full_plane(25, s) == 12);
    CHECK(r_fast(1, s) == 2);
    CHECK(r_fast(3, s) == 0);
    CHECK_THROWS_AS(r_fast(100001, s), ValidationError);
    for (std::uint64_t k = 1; k <= 100000; ++k) REQUIRE(r_fast(k, s) == r_bruteforce(k));
    for (std::uint64_t k = 1; k <= 400; ++k) CHECK(r_full_plane(k, s) == oracle::r_plane(k));
}

TEST_CASE("rhat table")
{
    auto t = rhat_table(10);
    std::vector<std::uint32_t> expect{0, 2, 1, 0, 2, 2, 0, 0, 1, 2, 2};
    CHECK(t.rvals == expect);
    CHECK(t.rhat[10] == 22);
    CHECK(rhat_table(1).rhat[1] == 4);
    CHECK_THROWS_AS(rhat_table(0), ValidationError);
    CHECK_THROWS_AS(rhat_table(100, 50), CapacityError);

    // rvals agree with the oracle at random points; rhat increments are r^2
    const std::uint64_t limit = 1 << 20;
    auto big = rhat_table(limit);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> pick(1, limit);
    for (int i = 0; i < 1000; ++i) {
        auto k = pick(rng);
        REQUIRE(big.rvals[k] == r_bruteforce(k));
    }
    for (std::uint64_t k = 1; k <= limit; ++k)
        REQUIRE(big.rhat[k] - big.rhat[k - 1] == std::uint64_t(big.rvals[k]) * big.rvals[k]);
}

TEST_CASE("landau count")
{
    CHECK(landau_count(10) == 7);
    CHECK(landau_count(100) == 43);
    CHECK(landau_count(1) == 1);
    std::uint64_t brute = 0, prev = 0;
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        if (oracle::r_quadrant(n) > 0) ++brute;
        auto c = landau_count(n);
        CHECK(c == brute);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("sieve cache round trip and rejection")
{
    auto dir = std::filesystem::temp_directory_path() / "latdist_sieve_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "spf.bin";
    auto s = build_spf_sieve(5000);
    save_sieve(path, s);
    CHECK(std::filesystem::file_size(path) == 4 + 8 + 4 * 4999);

    auto loaded = load_sieve(path, 5000);
    for (std::uint64_t k = 2; k <= 5000; ++k) REQUIRE(loaded.spf(k) == s.spf(k));
    CHECK_THROWS_AS(load_sieve(path, 4000), ValidationError);

    // header layout: magic, then little-endian limit
    std::ifstream in(path, std::ios::binary);
    unsigned char head[14];
    in.read(reinterpret_cast<char*>(head), 14);
    CHECK(std::string(head, head + 4) == "SPF1");
    CHECK(head[4] == (5000 & 0xff));
    CHECK(head[5] == (5000 >> 8));
    CHECK(head[12] == 2); // spf(2) = 2
    in.close();

    {
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.write("SPF0", 4);
    }
    CHECK_THROWS_AS(load_sieve(path, 5000), ValidationError);
    std::filesystem::remove_all(dir);
}
