#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latdist/rational.hpp"
#include "latdist/wide.hpp"

namespace latdist::rectlat {

inline constexpr std::uint64_t kBitsetCeiling = std::uint64_t(1) << 36;
inline constexpr std::uint64_t kSublatticeCeiling = std::uint64_t(1) << 28;

/// The rectangular lattice 0 <= i <= width, 0 <= j <= height with
/// width = floor(n^(1-alpha)), height = floor(n^alpha), and its sublattice
/// i_min <= i <= width where i_min = ceil(2 n^alpha).
struct RectLatticeSpec {
    std::uint64_t n = 0;
    Rational alpha;
    std::uint64_t width = 0;
    std::uint64_t height = 0;
    std::uint64_t i_min = 0;
    std::uint64_t interval_scale = 0; // floor(n^(2 alpha))

    std::uint64_t lattice_size() const { return (width + 1) * (height + 1); }
    std::uint64_t sublattice_size() const { return (width - i_min + 1) * (height + 1); }
};

/// Sorted (key, count) runs.
using SparseCounts = std::vector<std::pair<std::uint64_t, std::uint32_t>>;

struct RepCounts {
    RectLatticeSpec spec;
    SparseCounts r_counts; // m -> |{(i,j) in R' : i^2 + j^2 = m}|
    SparseCounts d_counts; // m -> |{(i,j) in R' : i^2 - j^2 = m}|
};

struct IdentityReport {
    u128 sum_r = 0, sum_d = 0;
    u128 sum_r2 = 0, sum_d2 = 0;
    u128 sum_binom_r2 = 0, sum_binom_d2 = 0;

    bool holds() const { return sum_r == sum_d && sum_r2 == sum_d2 && sum_binom_r2 == sum_binom_d2; }
};

struct FourTuple {
    std::uint64_t s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    friend bool operator==(const FourTuple&, const FourTuple&) = default;
};

struct IntervalSums {
    u128 total = 0; // S = sum_m C(d(m), 2)
    std::vector<std::pair<std::uint64_t, u128>> per_interval; // (l, sum over I_l), l ascending, nonempty buckets
    std::uint64_t l_min = 0;
    std::uint64_t l_max = 0;
};

struct DalphaReport {
    RectLatticeSpec spec;
    std::uint64_t distinct = 0; // D of the full lattice
    std::uint64_t sublattice_size = 0;
    std::uint64_t r_keys = 0; // sum_k |M_k|
    u128 excess_sum = 0;      // sum_{k>=2} (k-1) |M_k|
    IdentityReport identities;
    IntervalSums intervals;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> mk_histogram; // k -> |M_k|

    bool chain_holds() const
    {
        return distinct + excess_sum >= sublattice_size && r_keys + excess_sum == sublattice_size &&
               excess_sum <= identities.sum_binom_r2 && identities.sum_binom_r2 == intervals.total;
    }
};

/// Throws ValidationError for alpha outside (0, 1/2), n < 1, or an empty
/// sublattice (i_min > width).
RectLatticeSpec build_spec(std::uint64_t n, Rational alpha);

/// Smallest n <= search_limit whose sublattice is nonempty, 0 if none.
std::uint64_t smallest_nonempty_n(Rational alpha, std::uint64_t search_limit);

RepCounts rep_counts(const RectLatticeSpec& spec, unsigned threads = 1);

/// Throws OverflowError rather than wrapping.
IdentityReport verify_identities(const RepCounts& rc);

/// Given m1 m2 = m3 m4, returns s with m1 = s1 s2, m2 = s3 s4, m3 = s1 s3,
/// m4 = s2 s4, using s1 = gcd(m1, m3). Throws ValidationError otherwise.
FourTuple four_number_lemma(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3, std::uint64_t m4);

/// Bucket index l with l^2 T <= m < (l+1)^2 T, T = spec.interval_scale.
std::uint64_t interval_index(std::uint64_t m, std::uint64_t scale);

IntervalSums sum_binom_d2(const RepCounts& rc);

/// Distinct positive dx^2 + dy^2 for 0 <= dx <= width, 0 <= dy <= height.
std::uint64_t distinct_distances_rect(std::uint64_t width, std::uint64_t height,
                                      std::uint64_t ceiling = kBitsetCeiling);
inline std::uint64_t distinct_distances_rect(const RectLatticeSpec& spec)
{
    return distinct_distances_rect(spec.width, spec.height);
}

DalphaReport dalpha_report(std::uint64_t n, Rational alpha, unsigned threads = 1);

/// Witness-level check of the interval inequalities: for every pair of
/// sublattice points (a, b), (c, d) with a^2 - b^2 = c^2 - d^2 and a > c, the
/// four-number tuple of (a-c)(a+c) = (b-d)(b+d) is tested against
///   l n^a <= a, c < (l+2) n^a
///   2 l n^a <= s3 s4 < (2l+4) n^a
///   1 <= s1 s2, s1 s3, s2 s4 <= 2 n^a
///   l s2 <= s3,  l s1 <= s4
/// with every real power compared exactly. Pairs whose floor bucket differs
/// from the real-exponent bucket, or that land in bucket 0, are exempt.
struct WitnessCheck {
    std::uint64_t pairs = 0;
    std::uint64_t checked = 0;
    std::uint64_t exempt = 0;
    std::uint64_t violations = 0;
};
WitnessCheck check_interval_witnesses(const RectLatticeSpec& spec);

} // namespace latdist::rectlat
