#include "latdist/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latdist/error.hpp"
#include "latdist/parallel.hpp"
#include "latdist/wide.hpp"

namespace latdist::arcs {

namespace {

int half(LatticePoint p)
{
    return p.b > 0 || (p.b == 0 && p.a > 0) ? 0 : 1;
}

__int128 cross(LatticePoint p, LatticePoint q)
{
    return (__int128)p.a * q.b - (__int128)p.b * q.a;
}

std::uint64_t chord2(LatticePoint p, LatticePoint q)
{
    std::int64_t da = p.a - q.a, db = p.b - q.b;
    return std::uint64_t(da * da) + std::uint64_t(db * db);
}

void check_beta(Rational beta)
{
    if (beta.num <= 0 || 2 * beta.num >= beta.den) throw ValidationError("beta must lie in (0, 1/2), got " + beta.str());
}

long double angular_width(std::uint64_t n, Rational beta)
{
    return std::pow((long double)n, (long double)beta.num / beta.den - 0.5L);
}

// Points whose squared chord from the window start is at most this value lie
// inside the window (the width never exceeds 1 radian, so chord is monotone).
std::uint64_t chord_threshold(std::uint64_t n, long double width)
{
    long double s = std::sin(width / 2);
    long double c2 = 4.0L * (long double)n * s * s;
    return std::uint64_t(std::floor(c2 * (1.0L + 1e-12L)));
}

// Quadrant representations (a >= 0, b >= 0) expanded to all sign orbits.
void expand_orbits(std::vector<LatticePoint>& out, std::int64_t a, std::int64_t b)
{
    out.push_back({a, b});
    if (a != 0) out.push_back({-a, b});
    if (b != 0) out.push_back({a, -b});
    if (a != 0 && b != 0) out.push_back({-a, -b});
}

void sort_by_angle(std::vector<LatticePoint>& pts)
{
    std::sort(pts.begin(), pts.end(), angle_less);
}

std::uint64_t axis_count(const CirclePoints& c, Rational beta)
{
    std::uint64_t count = 0;
    for (const auto& p : c.points)
        if (cmp_scaled_pow(std::uint64_t(p.b < 0 ? -p.b : p.b), 1, c.n, beta) < 0) ++count;
    return count;
}

} // namespace

bool angle_less(LatticePoint p, LatticePoint q)
{
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    return cross(p, q) > 0;
}

CirclePoints circle_points(std::uint64_t n)
{
    if (n == 0) throw ValidationError("circle radius^2 must be >= 1");
    CirclePoints c;
    c.n = n;
    for (std::uint64_t a = 0, top = isqrt(n); a <= top; ++a) {
        std::uint64_t rest = n - a * a;
        std::uint64_t b = isqrt(rest);
        if (b * b == rest) expand_orbits(c.points, std::int64_t(a), std::int64_t(b));
    }
    sort_by_angle(c.points);
    return c;
}

ArcScanResult max_arc_count(const CirclePoints& circle, Rational beta)
{
    check_beta(beta);
    ArcScanResult r;
    r.n = circle.n;
    r.beta = beta;
    long double width = angular_width(circle.n, beta);
    r.angular_width = double(width);
    r.arc_length = double(std::pow((long double)circle.n, (long double)beta.num / beta.den));
    r.point_count = circle.points.size();
    r.axis_count = axis_count(circle, beta);

    const auto& p = circle.points;
    const std::size_t k = p.size();
    if (k == 0) return r;
    const std::uint64_t threshold = chord_threshold(circle.n, width);
    auto inside = [&](LatticePoint start, LatticePoint q) { return cross(start, q) >= 0 && chord2(start, q) <= threshold; };

    std::size_t best_start = 0;
    std::size_t end = 0;
    for (std::size_t i = 0; i < k; ++i) {
        end = std::max(end, i + 1);
        while (end < i + k && inside(p[i], p[end % k])) ++end;
        if (end - i > r.max_count) {
            r.max_count = end - i;
            best_start = i;
        }
    }
    double angle = std::atan2(double(p[best_start].b), double(p[best_start].a));
    r.witness_start_angle = angle < 0 ? angle + 2 * std::numbers::pi : angle;
    return r;
}

ArcScanResult max_arc_count(std::uint64_t n, Rational beta)
{
    return max_arc_count(circle_points(n), beta);
}

std::uint64_t max_arc_count_bruteforce(const CirclePoints& circle, Rational beta)
{
    check_beta(beta);
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    const long double width = angular_width(circle.n, beta);
    std::vector<long double> theta;
    for (const auto& q : circle.points) theta.push_back(std::atan2((long double)q.b, (long double)q.a));
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        std::uint64_t count = 0;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            long double d = std::fmod(theta[j] - theta[i] + 2 * two_pi, two_pi);
            if (j == i || d <= width) ++count;
        }
        best = std::max(best, count);
    }
    return best;
}

std::vector<ScanRow> conjecture_scan(std::uint64_t n_max, Rational beta, unsigned threads)
{
    check_beta(beta);
    if (n_max < 1) throw ValidationError("scan bound must be >= 1");
    constexpr std::uint64_t kBlock = std::uint64_t(1) << 16;
    const std::uint64_t blocks = (n_max + kBlock - 1) / kBlock;
    std::vector<std::vector<ScanRow>> partial(std::max(1u, threads));

    for_each_chunk(blocks, threads, [&](std::size_t b0, std::size_t b1, unsigned worker) {
        auto& out = partial[worker];
        struct Rep {
            std::uint64_t n;
            std::int64_t a, b;
        };
        std::vector<Rep> reps;
        for (std::uint64_t blk = b0; blk < b1; ++blk) {
            const std::uint64_t lo = 1 + blk * kBlock;
            const std::uint64_t hi = std::min(n_max + 1, lo + kBlock);
            reps.clear();
            for (std::uint64_t a = 0; a * a < hi; ++a) {
                std::uint64_t a2 = a * a;
                std::uint64_t bmin = lo > a2 ? isqrt_ceil(lo - a2) : 0;
                std::uint64_t bmax = isqrt(hi - 1 - a2);
                for (std::uint64_t b = bmin; b <= bmax; ++b) reps.push_back({a2 + b * b, std::int64_t(a), std::int64_t(b)});
            }
            std::sort(reps.begin(), reps.end(), [](const Rep& x, const Rep& y) {
                return x.n != y.n ? x.n < y.n : x.a < y.a;
            });
            for (std::size_t i = 0; i < reps.size();) {
                std::size_t j = i;
                CirclePoints c;
                c.n = reps[i].n;
                for (; j < reps.size() && reps[j].n == reps[i].n; ++j) expand_orbits(c.points, reps[j].a, reps[j].b);
                sort_by_angle(c.points);
                out.push_back({max_arc_count(c, beta), 0});
                i = j;
            }
        }
    });

    std::vector<ScanRow> rows;
    for (auto& part : partial) rows.insert(rows.end(), part.begin(), part.end());
    std::uint64_t running = 0;
    for (auto& row : rows) {
        running = std::max(running, row.result.max_count);
        row.running_max = running;
    }
    return rows;
}

} // namespace latdist::arcs
