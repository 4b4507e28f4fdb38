#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "latdist/diststats.hpp"
#include "latdist/error.hpp"
#include "oracles.hpp"

using namespace latdist;
using namespace latdist::diststats;

namespace {

std::vector<oracle::Pt> as_oracle(const PointSet& ps)
{
    std::vector<oracle::Pt> out;
    for (auto p : ps.points()) out.emplace_back(p.x, p.y);
    return out;
}

bool matches(const DistanceHistogram& h, const std::map<std::uint64_t, std::uint64_t>& m)
{
    if (h.distinct() != m.size()) return false;
    std::size_t i = 0;
    for (const auto& [k, c] : m) {
        if (h.entries()[i].first != k || h.entries()[i].second != c) return false;
        ++i;
    }
    return true;
}

PointSet random_set(std::mt19937_64& rng, int max_points, int span)
{
    std::uniform_int_distribution<int> coord(-span, span);
    std::uniform_int_distribution<int> size(2, max_points);
    std::set<Point> pts;
    int target = size(rng);
    while (int(pts.size()) < target) pts.insert({coord(rng), coord(rng)});
    return PointSet(std::vector<Point>(pts.begin(), pts.end()));
}

} // namespace

TEST_CASE("histogram_bruteforce examples")
{
    auto h = histogram_bruteforce(PointSet::grid(2, 2));
    CHECK(h.entries() == std::vector<DistanceHistogram::Entry>{{1, 8}, {2, 4}});
    CHECK(h.total_ordered_pairs() == 12);

    auto two = histogram_bruteforce(PointSet({{0, 0}, {3, 4}}));
    CHECK(two.entries() == std::vector<DistanceHistogram::Entry>{{25, 2}});

    auto line = histogram_bruteforce(PointSet({{0, 0}, {1, 0}, {2, 0}}));
    CHECK(line.entries() == std::vector<DistanceHistogram::Entry>{{1, 4}, {4, 2}});

    CHECK_THROWS_AS(histogram_bruteforce(PointSet({{0, 0}})), ValidationError);
    CHECK_THROWS_AS(PointSet({{1, 1}, {1, 1}}), ValidationError);
}

TEST_CASE("sparse path for wide point sets")
{
    PointSet ps({{0, 0}, {40000, 0}, {0, 1}});
    auto h = histogram_bruteforce(ps);
    CHECK(matches(h, oracle::histogram(as_oracle(ps))));
}

TEST_CASE("histogram_rect_fast examples")
{
    CHECK(histogram_rect_fast(2, 2).entries() == std::vector<DistanceHistogram::Entry>{{1, 8}, {2, 4}});
    auto h33 = histogram_rect_fast(3, 3);
    CHECK(h33.entries() == std::vector<DistanceHistogram::Entry>{{1, 24}, {2, 16}, {4, 12}, {5, 16}, {8, 4}});
    CHECK(h33.total_ordered_pairs() == 72);
    CHECK(histogram_rect_fast(2, 1).entries() == std::vector<DistanceHistogram::Entry>{{1, 2}});
    CHECK_THROWS_AS(histogram_rect_fast(1, 1), ValidationError);
    CHECK_THROWS_AS(histogram_rect_fast(100, 100, 1, 1000), CapacityError);
}

TEST_CASE("histogram_rect_fast equals the oracle on all small grids")
{
    for (int w = 1; w <= 12; ++w)
        for (int h = 1; h <= 12; ++h) {
            if (w * h < 2) continue;
            auto fast = histogram_rect_fast(w, h);
            REQUIRE(matches(fast, oracle::histogram(oracle::grid(w, h))));
            REQUIRE(fast == histogram_bruteforce(PointSet::grid(w, h)));
        }
}

TEST_CASE("histogram invariants")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto ps = random_set(rng, 30, 20);
        auto h = histogram_bruteforce(ps);
        std::uint64_t sum = 0;
        for (const auto& [k, c] : h.entries()) {
            CHECK(k > 0);
            CHECK(c > 0);
            CHECK(c % 2 == 0);
            sum += c;
        }
        CHECK(sum == ps.size() * ps.size() - ps.size());
    }
    CHECK_THROWS_AS(DistanceHistogram({{1, 2}}, 3), ValidationError);
    CHECK_THROWS_AS(DistanceHistogram({{0, 2}}, 2), ValidationError);
}

TEST_CASE("thread count does not change the histogram")
{
    auto one = histogram_rect_fast(97, 61, 1);
    CHECK(one == histogram_rect_fast(97, 61, 3));
    CHECK(one == histogram_rect_fast(97, 61, 8));
}

TEST_CASE("quadruple_stats examples")
{
    auto s = quadruple_stats(histogram_rect_fast(2, 2));
    CHECK(s.distinct == 2);
    CHECK(s.energy == 80);
    CHECK(s.cs_bound.num == 144);
    CHECK(s.cs_bound.den == 2);
    CHECK(double(s.gap_ratio) == doctest::Approx(10.0 / 9.0).epsilon(1e-15));

    auto one = quadruple_stats(DistanceHistogram({{25, 2}}, 2));
    CHECK(one.distinct == 1);
    CHECK(one.energy == 4);
    CHECK(one.cs_bound.value() == 4);
    CHECK(one.gap_ratio == 1);

    auto s33 = quadruple_stats(histogram_rect_fast(3, 3));
    CHECK(s33.distinct == 5);
    CHECK(s33.energy == 1248);
    CHECK(double(s33.cs_bound.value()) == doctest::Approx(1036.8));
}

TEST_CASE("quadruple_bruteforce examples and energy oracle")
{
    CHECK(quadruple_bruteforce(PointSet::grid(2, 2)) == 80);
    CHECK(quadruple_bruteforce(PointSet({{0, 0}, {3, 4}})) == 4);
    CHECK(quadruple_bruteforce(PointSet::grid(3, 3)) == 1248);
    CHECK_THROWS_AS(quadruple_bruteforce(PointSet::grid(9, 8)), CapacityError);

    std::vector<PointSet> corpus;
    for (std::uint32_t w = 1; w <= 16; ++w)
        for (std::uint32_t h = 1; w * h <= 16; ++h)
            if (w * h >= 2) corpus.push_back(PointSet::grid(w, h));
    for (std::uint32_t n = 1; n <= 8; ++n) corpus.push_back(PointSet::lshape(n));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) corpus.push_back(random_set(rng, 16, 8));
    for (const auto& ps : corpus) {
        auto direct = oracle::quadruples(as_oracle(ps));
        REQUIRE(quadruple_bruteforce(ps) == direct);
        REQUIRE(quadruple_stats(histogram_bruteforce(ps)).energy == direct);
    }
}

TEST_CASE("Cauchy-Schwarz gap is at least one, with equality iff counts are equal")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        auto h = histogram_bruteforce(random_set(rng, 20, 6));
        auto s = quadruple_stats(h);
        // exact: energy * x >= total^2
        u128 lhs = s.energy * s.distinct;
        u128 rhs = u128(s.total_ordered_pairs) * s.total_ordered_pairs;
        CHECK(lhs >= rhs);
        bool uniform = true;
        for (const auto& e : h.entries()) uniform = uniform && e.second == h.entries()[0].second;
        CHECK((lhs == rhs) == uniform);
    }
    auto s = quadruple_stats(DistanceHistogram({{1, 4}, {2, 4}, {5, 4}}, 4));
    CHECK(s.gap_ratio == 1);
}

TEST_CASE("checked 128-bit arithmetic reports overflow")
{
    u128 max = ~u128(0);
    CHECK_THROWS_AS(checked_add(max, 1), OverflowError);
    CHECK_THROWS_AS(checked_mul(max / 2 + 1, 2), OverflowError);
    CHECK(checked_add(max - 1, 1) == max);
    CHECK(to_string(max) == "340282366920938463463374607431768211455");
}

TEST_CASE("square lattice report small sides")
{
    auto r2 = square_lattice_report(2);
    CHECK(r2.n == 4);
    CHECK(r2.stats.distinct == 2);
    CHECK(r2.stats.energy == 80);
    auto r3 = square_lattice_report(3);
    CHECK(r3.n == 9);
    CHECK(r3.stats.distinct == 5);
    CHECK(r3.stats.energy == 1248);
    CHECK_THROWS_AS(square_lattice_report(1), ValidationError);
}

TEST_CASE("second moment exceeds squared mean on square lattices")
{
    for (std::uint64_t m : {256, 512, 1024}) {
        auto h = histogram_rect_fast(m, m);
        long double x = h.distinct(), sum = 0, sum2 = 0;
        for (const auto& [k, c] : h.entries()) {
            sum += c;
            sum2 += (long double)c * c;
        }
        CHECK((sum2 / x) / ((sum / x) * (sum / x)) > 1.5L);
    }
}

TEST_CASE("interior circle bound at side 1000")
{
    auto h = histogram_rect_fast(1000, 1000);
    auto c = interior_circle_check(h, 1000, 10, 0.64L);
    CHECK(c.max_key == 10000);
    CHECK(c.keys_checked > 0);
    CHECK(c.violations == 0);
    CHECK(c.min_ratio >= 0.64L);
    CHECK(c.max_ratio <= 1.0L);
    // a tighter margin with a lower factor near 1 must fail
    CHECK(interior_circle_check(h, 1000, 10, 0.99L).violations > 0);
}

TEST_CASE("lshape report matches brute force")
{
    auto r1 = lshape_report(1);
    CHECK(r1.distinct == 1);
    CHECK(r1.energy == 4);

    auto r2 = lshape_report(2);
    CHECK(r2.distinct == 4); // keys 1, 2, 5, 8
    CHECK(r2.energy == 40);
    CHECK(r2.trivial_energy == 16);

    for (std::uint32_t n = 1; n <= 40; ++n) {
        auto ps = PointSet::lshape(n);
        auto h = oracle::histogram(as_oracle(ps));
        auto s = quadruple_stats(histogram_bruteforce(ps));
        auto r = lshape_report(n);
        REQUIRE(r.distinct == h.size());
        REQUIRE(r.energy == s.energy);
        REQUIRE(r.gap_ratio == doctest::Approx(double(s.gap_ratio)));
        u128 trivial = 0, intra = 0;
        for (std::uint64_t i = 1; i <= n / 2; ++i) {
            trivial += square(h.count(i * i) ? h.at(i * i) : 0);
            intra += square(4 * (n - i));
        }
        REQUIRE(r.trivial_energy == trivial);
        REQUIRE(r.trivial_energy_intra == intra);
        CHECK(r.energy >= r.trivial_energy);
        CHECK(r.gap_ratio >= 1);
    }
}

TEST_CASE("lshape Pythagorean cross pairs join the integer classes")
{
    // (3,0)-(0,4) has length 5, same class as intra-axis distance 5
    auto r = lshape_report(12);
    auto h = oracle::histogram(as_oracle(PointSet::lshape(12)));
    CHECK(h.at(25) > 4 * (12 - 5));
    CHECK(r.trivial_energy > r.trivial_energy_intra);
}
