#include "latdist/rectlat.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "latdist/error.hpp"
#include "latdist/parallel.hpp"

namespace latdist::rectlat {

namespace {

bool alpha_in_range(Rational a)
{
    return a.num > 0 && 2 * a.num < a.den;
}

SparseCounts run_lengths(std::vector<std::uint64_t>& keys)
{
    std::sort(keys.begin(), keys.end());
    SparseCounts out;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        out.emplace_back(keys[i], std::uint32_t(j - i));
        i = j;
    }
    return out;
}

} // namespace

RectLatticeSpec build_spec(std::uint64_t n, Rational alpha)
{
    if (!alpha_in_range(alpha)) throw ValidationError("alpha must lie in (0, 1/2), got " + alpha.str());
    if (n < 1) throw ValidationError("n must be >= 1");
    RectLatticeSpec s;
    s.n = n;
    s.alpha = alpha;
    s.width = floor_pow(n, Rational::make(alpha.den - alpha.num, alpha.den));
    s.height = floor_pow(n, alpha);
    s.i_min = ceil_scaled_pow(2, n, alpha);
    s.interval_scale = floor_pow(n, Rational::make(2 * alpha.num, alpha.den));
    if (s.i_min > s.width)
        throw ValidationError("sublattice empty (n=" + std::to_string(n) + " below n0(alpha) for alpha=" +
                              alpha.str() + ")");
    return s;
}

std::uint64_t smallest_nonempty_n(Rational alpha, std::uint64_t search_limit)
{
    if (!alpha_in_range(alpha)) throw ValidationError("alpha must lie in (0, 1/2), got " + alpha.str());
    for (std::uint64_t n = 1; n <= search_limit; ++n)
        if (ceil_scaled_pow(2, n, alpha) <= floor_pow(n, Rational::make(alpha.den - alpha.num, alpha.den)))
            return n;
    return 0;
}

RepCounts rep_counts(const RectLatticeSpec& spec, unsigned threads)
{
    if (spec.sublattice_size() > kSublatticeCeiling)
        throw CapacityError("sublattice size " + std::to_string(spec.sublattice_size()) + " exceeds ceiling");
    const std::uint64_t rows = spec.width - spec.i_min + 1;
    const std::uint64_t cols = spec.height + 1;
    std::vector<std::uint64_t> sums(spec.sublattice_size());
    std::vector<std::uint64_t> diffs(spec.sublattice_size());
    for_each_chunk(rows, threads, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::uint64_t r = begin; r < end; ++r) {
            std::uint64_t i = spec.i_min + r;
            for (std::uint64_t j = 0; j < cols; ++j) {
                sums[r * cols + j] = i * i + j * j;
                diffs[r * cols + j] = i * i - j * j; // i >= 2 n^alpha > j
            }
        }
    });
    RepCounts rc;
    rc.spec = spec;
    rc.r_counts = run_lengths(sums);
    rc.d_counts = run_lengths(diffs);
    return rc;
}

IdentityReport verify_identities(const RepCounts& rc)
{
    IdentityReport rep;
    for (const auto& [m, c] : rc.r_counts) {
        rep.sum_r = checked_add(rep.sum_r, c);
        rep.sum_r2 = checked_add(rep.sum_r2, square(c));
        rep.sum_binom_r2 = checked_add(rep.sum_binom_r2, choose2(c));
    }
    for (const auto& [m, c] : rc.d_counts) {
        rep.sum_d = checked_add(rep.sum_d, c);
        rep.sum_d2 = checked_add(rep.sum_d2, square(c));
        rep.sum_binom_d2 = checked_add(rep.sum_binom_d2, choose2(c));
    }
    return rep;
}

FourTuple four_number_lemma(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3, std::uint64_t m4)
{
    if (m1 == 0 || m2 == 0 || m3 == 0 || m4 == 0) throw ValidationError("four-number lemma needs positive integers");
    if (u128(m1) * m2 != u128(m3) * m4) throw ValidationError("four-number lemma needs m1*m2 == m3*m4");
    FourTuple t;
    t.s1 = std::gcd(m1, m3);
    t.s2 = m1 / t.s1;
    t.s3 = m3 / t.s1;
    t.s4 = m4 / t.s2;
    return t;
}

std::uint64_t interval_index(std::uint64_t m, std::uint64_t scale)
{
    return isqrt(m / scale);
}

IntervalSums sum_binom_d2(const RepCounts& rc)
{
    IntervalSums out;
    const std::uint64_t scale = rc.spec.interval_scale;
    bool first = true;
    for (const auto& [m, c] : rc.d_counts) {
        std::uint64_t l = interval_index(m, scale);
        if (first) {
            out.l_min = l;
            first = false;
        }
        out.l_max = l;
        u128 b = choose2(c);
        out.total = checked_add(out.total, b);
        if (b == 0) continue;
        if (out.per_interval.empty() || out.per_interval.back().first != l)
            out.per_interval.emplace_back(l, 0);
        out.per_interval.back().second += b;
    }
    return out;
}

std::uint64_t distinct_distances_rect(std::uint64_t width, std::uint64_t height, std::uint64_t ceiling)
{
    if (width == 0 && height == 0) return 0;
    std::uint64_t max_key = width * width + height * height;
    if (max_key >= ceiling) throw CapacityError("distance bitset of " + std::to_string(max_key) + " bits exceeds ceiling");
    std::vector<std::uint64_t> bits(max_key / 64 + 1, 0);
    for (std::uint64_t dx = 0; dx <= width; ++dx)
        for (std::uint64_t dy = 0; dy <= height; ++dy) {
            std::uint64_t v = dx * dx + dy * dy;
            bits[v >> 6] |= std::uint64_t(1) << (v & 63);
        }
    bits[0] &= ~std::uint64_t(1);
    std::uint64_t count = 0;
    for (auto w : bits) count += std::uint64_t(__builtin_popcountll(w));
    return count;
}

DalphaReport dalpha_report(std::uint64_t n, Rational alpha, unsigned threads)
{
    DalphaReport rep;
    rep.spec = build_spec(n, alpha);
    auto rc = rep_counts(rep.spec, threads);
    rep.distinct = distinct_distances_rect(rep.spec);
    rep.sublattice_size = rep.spec.sublattice_size();
    rep.identities = verify_identities(rc);
    rep.intervals = sum_binom_d2(rc);
    rep.r_keys = rc.r_counts.size();

    std::vector<std::uint32_t> ks;
    ks.reserve(rc.r_counts.size());
    for (const auto& [m, k] : rc.r_counts) {
        ks.push_back(k);
        rep.excess_sum += k - 1;
    }
    std::sort(ks.begin(), ks.end());
    for (std::size_t i = 0; i < ks.size();) {
        std::size_t j = i;
        while (j < ks.size() && ks[j] == ks[i]) ++j;
        rep.mk_histogram.emplace_back(ks[i], j - i);
        i = j;
    }
    return rep;
}

WitnessCheck check_interval_witnesses(const RectLatticeSpec& spec)
{
    struct Rep {
        std::uint64_t m, i, j;
    };
    std::vector<Rep> reps;
    reps.reserve(spec.sublattice_size());
    for (std::uint64_t i = spec.i_min; i <= spec.width; ++i)
        for (std::uint64_t j = 0; j <= spec.height; ++j) reps.push_back({i * i - j * j, i, j});
    std::sort(reps.begin(), reps.end(), [](const Rep& x, const Rep& y) {
        return x.m != y.m ? x.m < y.m : x.i < y.i;
    });

    const Rational two_alpha = Rational::make(2 * spec.alpha.num, spec.alpha.den);
    const std::uint64_t n = spec.n;
    const Rational a = spec.alpha;
    WitnessCheck wc;
    for (std::size_t lo = 0; lo < reps.size();) {
        std::size_t hi = lo;
        while (hi < reps.size() && reps[hi].m == reps[lo].m) ++hi;
        const std::uint64_t m = reps[lo].m;
        const std::uint64_t l = interval_index(m, spec.interval_scale);
        // real-exponent bucket agrees with the floor bucket iff l^2 n^(2a) <= m
        const bool slack = l == 0 || cmp_scaled_pow(m, l * l, n, two_alpha) < 0;
        for (std::size_t x = lo; x < hi; ++x)
            for (std::size_t y = lo; y < hi; ++y) {
                // a > c (then b > d as well)
                if (reps[x].i <= reps[y].i) continue;
                ++wc.pairs;
                if (slack) {
                    ++wc.exempt;
                    continue;
                }
                ++wc.checked;
                const std::uint64_t ai = reps[x].i, bj = reps[x].j, ci = reps[y].i, dj = reps[y].j;
                auto t = four_number_lemma(ai - ci, ai + ci, bj - dj, bj + dj);
                auto cmp = [&](std::uint64_t v, std::uint64_t c) { return cmp_scaled_pow(v, c, n, a); };
                const std::uint64_t p12 = t.s1 * t.s2, p13 = t.s1 * t.s3, p24 = t.s2 * t.s4, p34 = t.s3 * t.s4;
                bool ok = p12 == ai - ci && p34 == ai + ci && p13 == bj - dj && p24 == bj + dj;
                ok = ok && cmp(ci, l) >= 0 && cmp(ai, l + 2) < 0;
                ok = ok && cmp(p34, 2 * l) >= 0 && cmp(p34, 2 * l + 4) < 0;
                ok = ok && p12 >= 1 && p13 >= 1 && p24 >= 1;
                ok = ok && cmp(p12, 2) <= 0 && cmp(p13, 2) <= 0 && cmp(p24, 2) <= 0;
                ok = ok && l * t.s2 <= t.s3 && l * t.s1 <= t.s4;
                if (!ok) ++wc.violations;
            }
        lo = hi;
    }
    return wc;
}

} // namespace latdist::rectlat
