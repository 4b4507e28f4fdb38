#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latdist/wide.hpp"

namespace latdist::diststats {

inline constexpr std::uint64_t kDenseKeyCeiling = std::uint64_t(1) << 28;
inline constexpr std::size_t kBruteforceHistogramMaxPoints = 10000;
inline constexpr std::size_t kBruteforceQuadrupleMaxPoints = 64;

struct Point {
    std::int32_t x = 0;
    std::int32_t y = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

inline std::uint64_t squared_distance(Point a, Point b)
{
    std::int64_t dx = std::int64_t(a.x) - b.x;
    std::int64_t dy = std::int64_t(a.y) - b.y;
    return std::uint64_t(dx * dx) + std::uint64_t(dy * dy);
}

/// A finite set of distinct integer points.
class PointSet {
public:
    PointSet() = default;
    /// Throws ValidationError on duplicate points.
    explicit PointSet(std::vector<Point> points);

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    /// {0..w-1} x {0..h-1}
    static PointSet grid(std::uint32_t w, std::uint32_t h);
    /// {(1,0)..(n,0)} U {(0,1)..(0,n)}
    static PointSet lshape(std::uint32_t n);

private:
    std::vector<Point> points_;
};

/// Ordered-pair multiplicities keyed by exact squared distance. Entries are
/// kept sorted by key; every count is at most N^2 - N, so 64-bit storage is
/// exact and counts widen to 128 bits in every sum.
class DistanceHistogram {
public:
    using Entry = std::pair<std::uint64_t, std::uint64_t>;

    DistanceHistogram() = default;
    /// Keys must be strictly increasing with nonzero counts.
    DistanceHistogram(std::vector<Entry> entries, std::uint64_t point_count);
    /// Compacts a dense key-indexed count array.
    static DistanceHistogram from_dense(const std::vector<std::uint64_t>& dense, std::uint64_t point_count);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t distinct() const { return entries_.size(); }
    std::uint64_t point_count() const { return point_count_; }
    std::uint64_t total_ordered_pairs() const { return total_; }
    /// Count for a squared distance, 0 if absent.
    std::uint64_t count(std::uint64_t key) const;

    friend bool operator==(const DistanceHistogram&, const DistanceHistogram&) = default;

private:
    std::vector<Entry> entries_;
    std::uint64_t point_count_ = 0;
    std::uint64_t total_ = 0;
};

/// Exact rational num/den.
struct WideFraction {
    u128 num = 0;
    u128 den = 1;
    long double value() const { return (long double)num / (long double)den; }
};

struct QuadrupleStats {
    std::uint64_t distinct = 0; // x
    std::uint64_t total_ordered_pairs = 0;
    u128 energy = 0;            // |Q| = sum |E_i|^2
    WideFraction cs_bound;      // (N^2 - N)^2 / x
    long double gap_ratio = 0;  // energy * x / (N^2 - N)^2
};

struct SquareLatticeReport {
    std::uint64_t side = 0;
    std::uint64_t n = 0; // side^2
    QuadrupleStats stats;
    long double energy_over_n3_ln_n = 0;
    long double x_sqrt_ln_n_over_n = 0;
    long double gap_over_sqrt_ln_n = 0;
};

struct LShapeReport {
    std::uint64_t n = 0;
    std::uint64_t distinct = 0;
    u128 trivial_energy = 0;       // sum_{1<=i<=n/2} d_i^2, d_i the full class count at distance i
    u128 trivial_energy_intra = 0; // same with only the intra-axis part 4(n-i) of d_i
    u128 energy = 0;
    WideFraction cs_bound;
    long double gap_ratio = 0;
};

/// All ordered pairs of distinct points. Throws CapacityError above
/// kBruteforceHistogramMaxPoints and ValidationError below 2 points.
DistanceHistogram histogram_bruteforce(const PointSet& ps);

/// Histogram of the full W x H grid from difference vectors, weighted by the
/// number of placements (W-dx)(H-dy) and the sign multiplicity.
DistanceHistogram histogram_rect_fast(std::uint64_t w, std::uint64_t h, unsigned threads = 1,
                                      std::uint64_t key_ceiling = kDenseKeyCeiling);

/// Throws OverflowError if the energy leaves 128 bits.
QuadrupleStats quadruple_stats(const DistanceHistogram& h);

/// Direct count of ordered (a,p,b,q) with |ap| = |bq| > 0.
u128 quadruple_bruteforce(const PointSet& ps);

SquareLatticeReport square_lattice_report(std::uint64_t side, unsigned threads = 1);

LShapeReport lshape_report(std::uint64_t n);

/// Checks that every class with squared distance t <= (side/margin)^2 in the
/// side x side grid histogram satisfies
///   lower_factor * N * r_Z2(t) <= |E_t| <= N * r_Z2(t).
struct InteriorCircleCheck {
    std::uint64_t side = 0;
    std::uint64_t max_key = 0;
    std::uint64_t keys_checked = 0;
    std::uint64_t violations = 0;
    long double min_ratio = 0; // min |E_t| / (N r_Z2(t)) over keys with r_Z2(t) > 0
    long double max_ratio = 0;
};
InteriorCircleCheck interior_circle_check(const DistanceHistogram& h, std::uint64_t side, std::uint64_t margin,
                                          long double lower_factor);

} // namespace latdist::diststats
