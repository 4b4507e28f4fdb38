#include "latdist/diststats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "latdist/error.hpp"
#include "latdist/numth.hpp"
#include "latdist/parallel.hpp"

namespace latdist::diststats {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points))
{
    auto sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("point set contains duplicate points");
}

PointSet PointSet::grid(std::uint32_t w, std::uint32_t h)
{
    std::vector<Point> pts;
    pts.reserve(std::size_t(w) * h);
    for (std::uint32_t x = 0; x < w; ++x)
        for (std::uint32_t y = 0; y < h; ++y) pts.push_back({std::int32_t(x), std::int32_t(y)});
    return PointSet(std::move(pts));
}

PointSet PointSet::lshape(std::uint32_t n)
{
    std::vector<Point> pts;
    pts.reserve(2 * std::size_t(n));
    for (std::uint32_t i = 1; i <= n; ++i) pts.push_back({std::int32_t(i), 0});
    for (std::uint32_t i = 1; i <= n; ++i) pts.push_back({0, std::int32_t(i)});
    return PointSet(std::move(pts));
}

DistanceHistogram::DistanceHistogram(std::vector<Entry> entries, std::uint64_t point_count)
    : entries_(std::move(entries)), point_count_(point_count)
{
    u128 total = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].first == 0 || entries_[i].second == 0)
            throw ValidationError("histogram entries must have positive keys and counts");
        if (i > 0 && entries_[i - 1].first >= entries_[i].first)
            throw ValidationError("histogram keys must be strictly increasing");
        total += entries_[i].second;
    }
    if (total != u128(point_count) * point_count - point_count)
        throw ValidationError("histogram total " + to_string(total) + " != N^2 - N");
    total_ = std::uint64_t(total);
}

DistanceHistogram DistanceHistogram::from_dense(const std::vector<std::uint64_t>& dense, std::uint64_t point_count)
{
    std::vector<Entry> entries;
    for (std::uint64_t k = 1; k < dense.size(); ++k)
        if (dense[k] != 0) entries.emplace_back(k, dense[k]);
    return DistanceHistogram(std::move(entries), point_count);
}

std::uint64_t DistanceHistogram::count(std::uint64_t key) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& e, std::uint64_t k) { return e.first < k; });
    return it != entries_.end() && it->first == key ? it->second : 0;
}

DistanceHistogram histogram_bruteforce(const PointSet& ps)
{
    const auto& pts = ps.points();
    if (pts.size() < 2) throw ValidationError("histogram needs at least 2 points");
    if (pts.size() > kBruteforceHistogramMaxPoints)
        throw CapacityError("brute-force histogram limited to " + std::to_string(kBruteforceHistogramMaxPoints) +
                            " points");
    std::uint64_t max_key = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) max_key = std::max(max_key, squared_distance(pts[i], pts[j]));

    if (max_key < kDenseKeyCeiling) {
        std::vector<std::uint64_t> dense(max_key + 1, 0);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (i != j) ++dense[squared_distance(pts[i], pts[j])];
        return DistanceHistogram::from_dense(dense, pts.size());
    }
    std::map<std::uint64_t, std::uint64_t> sparse;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j) ++sparse[squared_distance(pts[i], pts[j])];
    return DistanceHistogram({sparse.begin(), sparse.end()}, pts.size());
}

DistanceHistogram histogram_rect_fast(std::uint64_t w, std::uint64_t h, unsigned threads, std::uint64_t key_ceiling)
{
    if (w == 0 || h == 0 || w * h < 2) throw ValidationError("grid must contain at least 2 points");
    if (w > (1u << 31) || h > (1u << 31)) throw CapacityError("grid side exceeds 32-bit coordinates");
    std::uint64_t max_key = (w - 1) * (w - 1) + (h - 1) * (h - 1);
    if (max_key >= key_ceiling)
        throw CapacityError("grid diameter^2 " + std::to_string(max_key) + " exceeds dense ceiling " +
                            std::to_string(key_ceiling));

    unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(w)));
    std::vector<std::vector<std::uint64_t>> partial(workers);
    for_each_chunk(w, workers, [&](std::size_t begin, std::size_t end, unsigned worker) {
        auto& dense = partial[worker];
        dense.assign(max_key + 1, 0);
        for (std::uint64_t dx = begin; dx < end; ++dx)
            for (std::uint64_t dy = 0; dy < h; ++dy) {
                if (dx == 0 && dy == 0) continue;
                std::uint64_t sign = dx > 0 && dy > 0 ? 4 : 2;
                dense[dx * dx + dy * dy] += (w - dx) * (h - dy) * sign;
            }
    });
    for (unsigned k = 1; k < partial.size(); ++k) {
        for (std::size_t i = 0; i < partial[0].size(); ++i) partial[0][i] += partial[k][i];
        partial[k] = {};
    }
    return DistanceHistogram::from_dense(partial[0], w * h);
}

namespace {

WideFraction cs_bound_of(std::uint64_t total, std::uint64_t distinct)
{
    return {square(total), distinct};
}

long double gap_ratio_of(u128 energy, std::uint64_t total, std::uint64_t distinct)
{
    return (long double)energy * (long double)distinct / (long double)square(total);
}

} // namespace

QuadrupleStats quadruple_stats(const DistanceHistogram& h)
{
    if (h.distinct() == 0) throw ValidationError("histogram is empty");
    QuadrupleStats s;
    s.distinct = h.distinct();
    s.total_ordered_pairs = h.total_ordered_pairs();
    for (const auto& [key, count] : h.entries()) s.energy = checked_add(s.energy, square(count), "quadruple energy");
    s.cs_bound = cs_bound_of(s.total_ordered_pairs, s.distinct);
    s.gap_ratio = gap_ratio_of(s.energy, s.total_ordered_pairs, s.distinct);
    return s;
}

u128 quadruple_bruteforce(const PointSet& ps)
{
    const auto& pts = ps.points();
    if (pts.size() > kBruteforceQuadrupleMaxPoints)
        throw CapacityError("brute-force quadruple count limited to " +
                            std::to_string(kBruteforceQuadrupleMaxPoints) + " points");
    std::vector<std::uint64_t> seg; // |ap|^2 for every ordered pair (a, p)
    seg.reserve(pts.size() * pts.size());
    for (const auto& a : pts)
        for (const auto& p : pts) seg.push_back(squared_distance(a, p));
    u128 count = 0;
    for (auto ap : seg) {
        if (ap == 0) continue;
        for (auto bq : seg)
            if (bq == ap) ++count;
    }
    return count;
}

SquareLatticeReport square_lattice_report(std::uint64_t side, unsigned threads)
{
    if (side < 2) throw ValidationError("square lattice side must be >= 2");
    SquareLatticeReport r;
    r.side = side;
    r.n = side * side;
    r.stats = quadruple_stats(histogram_rect_fast(side, side, threads));
    long double n = (long double)r.n;
    long double ln_n = std::log(n);
    r.energy_over_n3_ln_n = (long double)r.stats.energy / (n * n * n * ln_n);
    r.x_sqrt_ln_n_over_n = (long double)r.stats.distinct * std::sqrt(ln_n) / n;
    r.gap_over_sqrt_ln_n = r.stats.gap_ratio / std::sqrt(ln_n);
    return r;
}

LShapeReport lshape_report(std::uint64_t n)
{
    if (n < 1) throw ValidationError("L-shape needs n >= 1");
    if (n > (std::uint64_t(1) << 16)) throw CapacityError("L-shape n exceeds 2^16");
    LShapeReport r;
    r.n = n;
    const std::uint64_t points = 2 * n;
    const std::uint64_t max_key = 2 * n * n;
    const std::uint64_t segment = std::uint64_t(1) << 23;

    // Class count at key t: 4(n-i) intra-axis ordered pairs when t = i^2 with
    // 1 <= i < n, plus 2 ordered pairs per cross representation a^2 + b^2 = t
    // with 1 <= a, b <= n. Keys are processed in segments to bound memory.
    std::vector<std::uint16_t> cross;
    for (std::uint64_t lo = 1; lo <= max_key; lo += segment) {
        std::uint64_t hi = std::min(max_key + 1, lo + segment);
        cross.assign(hi - lo, 0);
        for (std::uint64_t a = 1; a <= n && a * a < hi; ++a) {
            std::uint64_t a2 = a * a;
            std::uint64_t bmin = lo > a2 ? std::max<std::uint64_t>(1, isqrt_ceil(lo - a2)) : 1;
            std::uint64_t bmax = std::min(n, isqrt(hi - 1 - a2));
            for (std::uint64_t b = bmin; b <= bmax; ++b) ++cross[a2 + b * b - lo];
        }
        std::uint64_t next_root = isqrt_ceil(lo);
        for (std::uint64_t t = lo; t < hi; ++t) {
            std::uint64_t count = 2 * std::uint64_t(cross[t - lo]);
            const std::uint64_t i = next_root;
            const bool axis = i * i == t && i < n;
            if (i * i == t) ++next_root;
            if (axis) count += 4 * (n - i);
            if (count == 0) continue;
            ++r.distinct;
            r.energy = checked_add(r.energy, square(count), "L-shape energy");
            if (axis && i <= n / 2) {
                r.trivial_energy += square(count);
                r.trivial_energy_intra += square(4 * (n - i));
            }
        }
    }
    std::uint64_t total = points * points - points;
    r.cs_bound = cs_bound_of(total, r.distinct);
    r.gap_ratio = gap_ratio_of(r.energy, total, r.distinct);
    return r;
}

InteriorCircleCheck interior_circle_check(const DistanceHistogram& h, std::uint64_t side, std::uint64_t margin,
                                          long double lower_factor)
{
    if (margin == 0) throw ValidationError("margin divisor must be positive");
    InteriorCircleCheck c;
    c.side = side;
    c.max_key = (side / margin) * (side / margin);
    if (c.max_key < 2) return c;
    auto sieve = numth::build_spf_sieve(c.max_key);
    long double n = (long double)(side * side);
    c.min_ratio = INFINITY;
    for (std::uint64_t t = 1; t <= c.max_key; ++t) {
        std::uint64_t rz = numth::r_full_plane(t, sieve);
        std::uint64_t e = h.count(t);
        if (rz == 0) {
            if (e != 0) ++c.violations;
            continue;
        }
        ++c.keys_checked;
        long double bound = n * (long double)rz;
        long double ratio = (long double)e / bound;
        c.min_ratio = std::min(c.min_ratio, ratio);
        c.max_ratio = std::max(c.max_ratio, ratio);
        // upper side exact in integers
        if (u128(e) > u128(side * side) * rz || (long double)e < lower_factor * bound) ++c.violations;
    }
    return c;
}

} // namespace latdist::diststats
