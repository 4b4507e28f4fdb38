#include "latdist/rational.hpp"

#include <charconv>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "latdist/error.hpp"

namespace latdist {

using boost::multiprecision::cpp_int;

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("malformed rational \"" + std::string(whole) + "\" (expected p/q)");
    return v;
}

cpp_int ipow(std::uint64_t base, std::int64_t exp)
{
    return boost::multiprecision::pow(cpp_int(base), unsigned(exp));
}

// Largest r with r^q <= v.
cpp_int iroot(const cpp_int& v, std::int64_t q)
{
    if (v <= 1 || q == 1) return v;
    // Bracket by bit length, then bisect.
    auto bits = boost::multiprecision::msb(v) + 1;
    cpp_int lo = 0;
    cpp_int hi = cpp_int(1) << (bits / unsigned(q) + 1);
    while (lo < hi) {
        cpp_int mid = (lo + hi + 1) >> 1;
        if (boost::multiprecision::pow(mid, unsigned(q)) <= v)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::uint64_t to_u64(const cpp_int& v)
{
    if (v > cpp_int(UINT64_MAX)) throw OverflowError("power exceeds 64-bit range");
    return v.convert_to<std::uint64_t>();
}

} // namespace

Rational Rational::make(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw ValidationError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num < 0) throw ValidationError("negative rational");
    auto g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

Rational Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return make(parse_int(text, text), 1);
    return make(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

std::string Rational::str() const
{
    return std::to_string(num) + "/" + std::to_string(den);
}

std::uint64_t floor_pow(std::uint64_t n, Rational e)
{
    return to_u64(iroot(ipow(n, e.num), e.den));
}

std::uint64_t ceil_scaled_pow(std::uint64_t c, std::uint64_t n, Rational e)
{
    // smallest i with i^q >= c^q n^p
    cpp_int target = ipow(c, e.den) * ipow(n, e.num);
    cpp_int r = iroot(target, e.den);
    if (boost::multiprecision::pow(r, unsigned(e.den)) != target) ++r;
    return to_u64(r);
}

std::strong_ordering cmp_scaled_pow(std::uint64_t v, std::uint64_t c, std::uint64_t n, Rational e)
{
    cpp_int lhs = ipow(v, e.den);
    cpp_int rhs = ipow(c, e.den) * ipow(n, e.num);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace latdist
