#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace latdist {

/// Exact non-negative rational p/q in lowest terms. Exponents (alpha, beta)
/// are only ever held in this form so that lattice bounds stay integer-exact.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    /// Parses "p/q" or a bare integer "p". Decimal forms such as "0.45" are
    /// rejected with ValidationError.
    static Rational parse(std::string_view text);
    static Rational make(std::int64_t num, std::int64_t den);

    double to_double() const { return double(num) / double(den); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b)
    {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
};

/// floor(n^e) for a rational exponent e = p/q, computed by an exact integer
/// q-th root of n^p.
std::uint64_t floor_pow(std::uint64_t n, Rational e);

/// ceil(c * n^e), exact.
std::uint64_t ceil_scaled_pow(std::uint64_t c, std::uint64_t n, Rational e);

/// Exact three-way comparison of v against the real number c * n^e.
std::strong_ordering cmp_scaled_pow(std::uint64_t v, std::uint64_t c, std::uint64_t n, Rational e);

} // namespace latdist
