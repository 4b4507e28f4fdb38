#pragma once

#include <cstdint>
#include <vector>

#include "latdist/rational.hpp"

namespace latdist::arcs {

struct LatticePoint {
    std::int64_t a = 0;
    std::int64_t b = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// All integer points on a^2 + b^2 = N, sorted by angle in [0, 2pi).
struct CirclePoints {
    std::uint64_t n = 0;
    std::vector<LatticePoint> points;
};

struct ArcScanResult {
    std::uint64_t n = 0;
    Rational beta;
    double arc_length = 0;    // N^beta
    double angular_width = 0; // N^beta / sqrt(N)
    std::uint64_t point_count = 0;
    std::uint64_t max_count = 0;
    double witness_start_angle = 0;
    std::uint64_t axis_count = 0; // |{(a,b) on the circle : |b| < N^beta}|
};

struct ScanRow {
    ArcScanResult result;
    std::uint64_t running_max = 0;
};

/// Strict counter-clockwise order starting from the positive x-axis.
bool angle_less(LatticePoint p, LatticePoint q);

CirclePoints circle_points(std::uint64_t n);

/// Largest number of circle points inside a closed arc of length N^beta,
/// by a two-pointer sweep. Membership is decided with integer cross products
/// and squared chord lengths against an upward-rounded chord threshold.
/// Requires 0 < beta < 1/2.
ArcScanResult max_arc_count(std::uint64_t n, Rational beta);
ArcScanResult max_arc_count(const CirclePoints& circle, Rational beta);

/// O(k^2) reference: every start point against every point, with angles in
/// long double.
std::uint64_t max_arc_count_bruteforce(const CirclePoints& circle, Rational beta);

/// Rows for every N <= n_max on at least one lattice circle, ascending N,
/// with the running maximum of max_count.
std::vector<ScanRow> conjecture_scan(std::uint64_t n_max, Rational beta, unsigned threads = 1);

} // namespace latdist::arcs
