#pragma once

#include <cstdint>
#include <string>

#include "latdist/error.hpp"

namespace latdist {

using u128 = unsigned __int128;

inline std::string to_string(u128 v)
{
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), char('0' + int(v % 10)));
        v /= 10;
    }
    return s;
}

inline u128 checked_add(u128 a, u128 b, const char* what = "128-bit sum")
{
    u128 r = a + b;
    if (r < a) throw OverflowError(std::string(what) + " overflows 128 bits");
    return r;
}

inline u128 checked_mul(u128 a, u128 b, const char* what = "128-bit product")
{
    if (a != 0 && b > ~u128(0) / a) throw OverflowError(std::string(what) + " overflows 128 bits");
    return a * b;
}

inline u128 square(std::uint64_t v) { return u128(v) * v; }

// C(k, 2) for any 64-bit k, exact.
inline u128 choose2(std::uint64_t k) { return k < 2 ? 0 : u128(k) * (k - 1) / 2; }

// floor(sqrt(v)), exact for all 64-bit v.
inline std::uint64_t isqrt(std::uint64_t v)
{
    if (v == 0) return 0;
    auto r = std::uint64_t(__builtin_sqrtl((long double)v));
    while (u128(r) * r > v) --r;
    while (u128(r + 1) * (r + 1) <= v) ++r;
    return r;
}

inline bool is_square(std::uint64_t v)
{
    auto r = isqrt(v);
    return r * r == v;
}

// ceil(sqrt(v))
inline std::uint64_t isqrt_ceil(std::uint64_t v)
{
    auto r = isqrt(v);
    return r * r == v ? r : r + 1;
}

} // namespace latdist
