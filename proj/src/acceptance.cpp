#include "latdist/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "latdist/arcs.hpp"
#include "latdist/diststats.hpp"
#include "latdist/error.hpp"
#include "latdist/numth.hpp"
#include "latdist/rectlat.hpp"

namespace latdist::acceptance {

namespace {

using diststats::Point;
using diststats::PointSet;

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double spread(const std::vector<long double>& v)
{
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return double(*hi / *lo);
}

std::string join(const std::vector<long double>& v)
{
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + fmt("%.4Lf", x);
    return s;
}

std::vector<PointSet> quadruple_corpus()
{
    std::vector<PointSet> corpus;
    for (std::uint32_t w = 1; w <= 16; ++w)
        for (std::uint32_t h = 1; w * h <= 16; ++h)
            if (w * h >= 2) corpus.push_back(PointSet::grid(w, h));
    for (std::uint32_t n = 1; n <= 8; ++n) corpus.push_back(PointSet::lshape(n));
    std::mt19937_64 rng(20130501);
    std::uniform_int_distribution<int> coord(-8, 8);
    std::uniform_int_distribution<int> size(2, 16);
    for (int s = 0; s < 50; ++s) {
        std::set<Point> pts;
        int target = size(rng);
        while (int(pts.size()) < target) pts.insert({coord(rng), coord(rng)});
        corpus.emplace_back(std::vector<Point>(pts.begin(), pts.end()));
    }
    return corpus;
}

CriterionResult oracle_equivalence(unsigned threads)
{
    std::uint64_t grids = 0, grid_mismatch = 0;
    for (std::uint32_t w = 2; w <= 12; ++w)
        for (std::uint32_t h = 2; h <= 12; ++h) {
            ++grids;
            if (diststats::histogram_rect_fast(w, h, threads) != diststats::histogram_bruteforce(PointSet::grid(w, h)))
                ++grid_mismatch;
        }
    auto corpus = quadruple_corpus();
    std::uint64_t quad_mismatch = 0;
    for (const auto& ps : corpus)
        if (diststats::quadruple_bruteforce(ps) != diststats::quadruple_stats(diststats::histogram_bruteforce(ps)).energy)
            ++quad_mismatch;
    return {1, "oracle equivalence", grid_mismatch == 0 && quad_mismatch == 0,
            fmt("grids=%llu mismatches=%llu; point sets=%zu energy mismatches=%llu", (unsigned long long)grids,
                (unsigned long long)grid_mismatch, corpus.size(), (unsigned long long)quad_mismatch)};
}

CriterionResult r_function_equivalence()
{
    constexpr std::uint64_t kLimit = 100000;
    auto sieve = numth::build_spf_sieve(kLimit);
    std::uint64_t mismatches = 0;
    for (std::uint64_t k = 1; k <= kLimit; ++k)
        if (numth::r_fast(k, sieve) != numth::r_bruteforce(k)) ++mismatches;
    return {2, "r-function equivalence", mismatches == 0, fmt("k<=%llu mismatches=%llu", (unsigned long long)kLimit,
                                                             (unsigned long long)mismatches)};
}

CriterionResult identities(unsigned threads)
{
    std::uint64_t specs = 0, failures = 0;
    for (const char* a : {"3/10", "7/20", "2/5", "9/20"})
        for (std::uint64_t n : {std::uint64_t(1) << 12, std::uint64_t(1) << 16, std::uint64_t(1) << 20}) {
            ++specs;
            auto spec = rectlat::build_spec(n, Rational::parse(a));
            auto rep = rectlat::verify_identities(rectlat::rep_counts(spec, threads));
            if (!rep.holds() || rep.sum_r != spec.sublattice_size()) ++failures;
        }
    return {3, "identities (2)-(4)", failures == 0,
            fmt("specs=%llu failures=%llu", (unsigned long long)specs, (unsigned long long)failures)};
}

CriterionResult lemma_exhaustive()
{
    constexpr std::uint64_t kLimit = 20000;
    std::uint64_t pairs = 0, failures = 0;
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t m = 1; m <= kLimit; ++m) {
        divisors.clear();
        for (std::uint64_t d = 1; d * d <= m; ++d)
            if (m % d == 0) {
                divisors.push_back(d);
                if (d * d != m) divisors.push_back(m / d);
            }
        for (auto m1 : divisors)
            for (auto m3 : divisors) {
                std::uint64_t m2 = m / m1, m4 = m / m3;
                auto t = rectlat::four_number_lemma(m1, m2, m3, m4);
                ++pairs;
                if (!(t.s1 * t.s2 == m1 && t.s3 * t.s4 == m2 && t.s1 * t.s3 == m3 && t.s2 * t.s4 == m4)) ++failures;
            }
    }
    return {4, "four-number lemma", failures == 0,
            fmt("m<=%llu factorization pairs=%llu failures=%llu", (unsigned long long)kLimit,
                (unsigned long long)pairs, (unsigned long long)failures)};
}

CriterionResult theorem3_band()
{
    std::vector<long double> ratios;
    for (int e : {14, 17, 20}) {
        std::uint64_t n = std::uint64_t(1) << e;
        auto spec = rectlat::build_spec(n, Rational::make(2, 5));
        ratios.push_back((long double)rectlat::distinct_distances_rect(spec) / (long double)n);
    }
    bool ok = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        ok = ok && std::fabs(ratios[i] - 1) <= std::fabs(ratios[i - 1] - 1);
    ok = ok && ratios.back() >= 0.85L && ratios.back() <= 1.02L;
    return {5, "D_alpha(n)/n band", ok, "D/n at n=2^14,2^17,2^20 (alpha=2/5): " + join(ratios)};
}

CriterionResult proposition4_band(unsigned threads)
{
    bool ok = true;
    std::string measured;
    for (const char* a : {"3/10", "2/5"}) {
        std::vector<long double> ratios;
        for (int e : {14, 16, 18, 20}) {
            std::uint64_t n = std::uint64_t(1) << e;
            auto spec = rectlat::build_spec(n, Rational::parse(a));
            auto sums = rectlat::sum_binom_d2(rectlat::rep_counts(spec, threads));
            long double ln = std::log((long double)n);
            ratios.push_back((long double)sums.total / ((long double)spec.interval_scale * ln * ln));
        }
        double s = spread(ratios);
        ok = ok && s <= 4.0;
        measured += fmt("alpha=%s ratios=", a) + join(ratios) + fmt(" max/min=%.3f; ", s);
    }
    return {6, "S/(T ln^2 n) band", ok, measured};
}

CriterionResult theorem2_band()
{
    auto table = numth::rhat_table(std::uint64_t(1) << 24);
    std::vector<long double> ratios;
    for (int e : {20, 22, 24}) {
        std::uint64_t k = std::uint64_t(1) << e;
        ratios.push_back((long double)table.rhat[k] / ((long double)k * std::log((long double)k)));
    }
    bool ok = true;
    for (std::size_t i = 1; i < ratios.size(); ++i) ok = ok && std::fabs(ratios[i] / ratios[i - 1] - 1) < 0.10L;
    return {7, "rhat(k)/(k ln k) band", ok, "k=2^20,2^22,2^24: " + join(ratios)};
}

CriterionResult theorem1_band()
{
    std::vector<long double> ratios;
    for (int e : {20, 22, 24}) {
        std::uint64_t n = std::uint64_t(1) << e;
        ratios.push_back((long double)numth::landau_count(n) * std::sqrt(std::log((long double)n)) / (long double)n);
    }
    bool ok = true;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        ok = ok && ratios[i] >= 0.70L && ratios[i] <= 1.00L;
        if (i > 0) ok = ok && ratios[i] <= ratios[i - 1];
    }
    return {8, "Landau-Ramanujan band", ok, "N=2^20,2^22,2^24: " + join(ratios)};
}

CriterionResult square_energy(unsigned threads)
{
    std::vector<long double> energy, gap;
    for (std::uint64_t m : {256, 512, 1024, 2048}) {
        auto r = diststats::square_lattice_report(m, threads);
        energy.push_back(r.energy_over_n3_ln_n);
        gap.push_back(r.gap_over_sqrt_ln_n);
    }
    double se = spread(energy), sg = spread(gap);
    return {9, "square-lattice energy tightness", se <= 1.5 && sg <= 1.3,
            "|Q|/(N^3 ln N)=" + join(energy) + fmt(" max/min=%.3f; ", se) + "gap/sqrt(ln N)=" + join(gap) +
                fmt(" max/min=%.3f", sg)};
}

CriterionResult interior_circle(unsigned threads)
{
    constexpr std::uint64_t kSide = 1000;
    auto h = diststats::histogram_rect_fast(kSide, kSide, threads);
    auto c = diststats::interior_circle_check(h, kSide, 10, 0.64L);
    return {10, "interior-circle bound", c.violations == 0 && c.keys_checked > 0,
            fmt("keys=%llu violations=%llu ratio range=[%.4Lf, %.4Lf]", (unsigned long long)c.keys_checked,
                (unsigned long long)c.violations, c.min_ratio, c.max_ratio)};
}

CriterionResult lshape_band()
{
    std::vector<long double> trivial, growth;
    for (int e : {10, 12, 14}) {
        std::uint64_t n = std::uint64_t(1) << e;
        auto r = diststats::lshape_report(n);
        auto r2 = diststats::lshape_report(2 * n);
        trivial.push_back((long double)r.trivial_energy / ((long double)n * n * n));
        growth.push_back(r2.gap_ratio / r.gap_ratio);
    }
    bool ok = spread(trivial) <= 1.3;
    for (auto g : growth) ok = ok && g >= 1.6L && g <= 2.2L;
    return {11, "L-shape discrepancy", ok,
            "trivialEnergy/n^3=" + join(trivial) + fmt(" max/min=%.3f; ", spread(trivial)) +
                "gap(2n)/gap(n)=" + join(growth)};
}

CriterionResult arc_explorer(unsigned threads)
{
    std::uint64_t mismatches = 0, checked = 0;
    for (const char* b : {"1/6", "1/4", "2/5"}) {
        auto beta = Rational::parse(b);
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            auto c = arcs::circle_points(n);
            if (c.points.empty()) continue;
            ++checked;
            if (arcs::max_arc_count(c, beta).max_count != arcs::max_arc_count_bruteforce(c, beta)) ++mismatches;
        }
    }
    auto rows = arcs::conjecture_scan(std::uint64_t(1) << 20, Rational::make(1, 6), threads);
    std::uint64_t running = rows.empty() ? 0 : rows.back().running_max;
    return {12, "arc explorer", mismatches == 0 && running <= 2,
            fmt("sweep vs oracle circles=%llu mismatches=%llu; beta=1/6 running max over N<=2^20 = %llu",
                (unsigned long long)checked, (unsigned long long)mismatches, (unsigned long long)running)};
}

} // namespace

std::vector<int> suite_criteria(Suite suite)
{
    if (suite == Suite::Fast) return {1, 2, 4, 10};
    return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
}

CriterionResult run_criterion(int id, unsigned threads)
{
    auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
    case 1: r = oracle_equivalence(threads); break;
    case 2: r = r_function_equivalence(); break;
    case 3: r = identities(threads); break;
    case 4: r = lemma_exhaustive(); break;
    case 5: r = theorem3_band(); break;
    case 6: r = proposition4_band(threads); break;
    case 7: r = theorem2_band(); break;
    case 8: r = theorem1_band(); break;
    case 9: r = square_energy(threads); break;
    case 10: r = interior_circle(threads); break;
    case 11: r = lshape_band(); break;
    case 12: r = arc_explorer(threads); break;
    default: throw ValidationError("unknown acceptance criterion " + std::to_string(id));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_suite(Suite suite, unsigned threads,
                                       const std::function<void(const CriterionResult&)>& on_result)
{
    std::vector<CriterionResult> results;
    for (int id : suite_criteria(suite)) {
        results.push_back(run_criterion(id, threads));
        if (on_result) on_result(results.back());
    }
    return results;
}

} // namespace latdist::acceptance
