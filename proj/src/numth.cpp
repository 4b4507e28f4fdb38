#include "latdist/numth.hpp"

#include <array>
#include <fstream>
#include <string>

#include "latdist/error.hpp"
#include "latdist/wide.hpp"

namespace latdist::numth {

std::uint64_t r_bruteforce(std::uint64_t k)
{
    if (k == 0) throw ValidationError("r(k) requires k >= 1");
    std::uint64_t count = 0;
    for (std::uint64_t i = 0, top = isqrt(k); i <= top; ++i)
        if (is_square(k - i * i)) ++count;
    return count;
}

SpfSieve build_spf_sieve(std::uint64_t limit, std::uint64_t ceiling)
{
    if (limit < 2) throw ValidationError("sieve limit must be >= 2");
    if (limit > kMaxSieveLimit || limit > ceiling)
        throw CapacityError("sieve limit " + std::to_string(limit) + " exceeds ceiling " +
                            std::to_string(std::min(ceiling, kMaxSieveLimit)));
    SpfSieve s;
    s.limit_ = limit;
    s.table_.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (s.table_[i] == 0) {
            s.table_[i] = std::uint32_t(i);
            primes.push_back(std::uint32_t(i));
        }
        for (std::uint32_t p : primes) {
            std::uint64_t c = i * p;
            if (p > s.table_[i] || c > limit) break;
            s.table_[c] = p;
        }
    }
    return s;
}

SpfSieve SpfSieve::from_entries(std::uint64_t limit, std::vector<std::uint32_t> entries)
{
    if (limit < 2 || entries.size() != limit - 1) throw ValidationError("sieve entry count does not match limit");
    SpfSieve s;
    s.limit_ = limit;
    s.table_.reserve(limit + 1);
    s.table_.push_back(0);
    s.table_.push_back(0);
    s.table_.insert(s.table_.end(), entries.begin(), entries.end());
    return s;
}

std::uint64_t r_full_plane(std::uint64_t k, const SpfSieve& sieve)
{
    if (k == 0) throw ValidationError("r(k) requires k >= 1");
    if (k > sieve.limit() && k > 1)
        throw ValidationError("k=" + std::to_string(k) + " outside sieve range " + std::to_string(sieve.limit()));
    std::uint64_t product = 1;
    while (k > 1) {
        std::uint32_t p = sieve.spf(k);
        unsigned e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        if (p % 4 == 1)
            product *= e + 1;
        else if (p % 4 == 3 && e % 2 == 1)
            return 0;
    }
    return 4 * product;
}

std::uint64_t r_fast(std::uint64_t k, const SpfSieve& sieve)
{
    return r_full_plane(k, sieve) / 4 + (is_square(k) ? 1 : 0);
}

RhatTable rhat_table(std::uint64_t limit, std::uint64_t ceiling)
{
    if (limit < 1) throw ValidationError("rhat limit must be >= 1");
    if (limit > ceiling) throw CapacityError("rhat limit " + std::to_string(limit) + " exceeds ceiling");
    RhatTable t;
    t.limit = limit;
    t.rvals.assign(limit + 1, 0);
    for (std::uint64_t i = 0, top = isqrt(limit); i <= top; ++i) {
        std::uint64_t i2 = i * i;
        for (std::uint64_t j = 0, jt = isqrt(limit - i2); j <= jt; ++j) ++t.rvals[i2 + j * j];
    }
    t.rvals[0] = 0;
    t.rhat.assign(limit + 1, 0);
    for (std::uint64_t k = 1; k <= limit; ++k)
        t.rhat[k] = t.rhat[k - 1] + std::uint64_t(t.rvals[k]) * t.rvals[k];
    return t;
}

std::uint64_t landau_count(std::uint64_t limit, std::uint64_t ceiling)
{
    if (limit < 1) throw ValidationError("landau limit must be >= 1");
    if (limit > ceiling) throw CapacityError("landau limit " + std::to_string(limit) + " exceeds ceiling");
    std::vector<std::uint64_t> bits(limit / 64 + 1, 0);
    for (std::uint64_t i = 0, top = isqrt(limit); i <= top; ++i) {
        std::uint64_t i2 = i * i;
        for (std::uint64_t j = i, jt = isqrt(limit - i2); j <= jt; ++j) {
            std::uint64_t v = i2 + j * j;
            bits[v >> 6] |= std::uint64_t(1) << (v & 63);
        }
    }
    bits[0] &= ~std::uint64_t(1); // 0 is not counted
    std::uint64_t count = 0;
    for (auto w : bits) count += std::uint64_t(__builtin_popcountll(w));
    return count;
}

namespace {

constexpr std::array<char, 4> kMagic{'S', 'P', 'F', '1'};

void put_le(std::ostream& out, std::uint64_t v, int bytes)
{
    for (int b = 0; b < bytes; ++b) out.put(char((v >> (8 * b)) & 0xff));
}

std::uint64_t get_le(std::istream& in, int bytes)
{
    unsigned char buf[8] = {};
    in.read(reinterpret_cast<char*>(buf), bytes);
    if (!in) throw ValidationError("sieve cache truncated");
    std::uint64_t v = 0;
    for (int b = bytes - 1; b >= 0; --b) v = (v << 8) | buf[b];
    return v;
}

} // namespace

void save_sieve(const std::filesystem::path& path, const SpfSieve& sieve)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open sieve cache for writing: " + path.string());
    out.write(kMagic.data(), kMagic.size());
    put_le(out, sieve.limit(), 8);
    std::vector<char> buf;
    buf.reserve(4 * (sieve.limit() - 1));
    for (std::uint64_t k = 2; k <= sieve.limit(); ++k) {
        std::uint32_t v = sieve.spf(k);
        for (int b = 0; b < 4; ++b) buf.push_back(char((v >> (8 * b)) & 0xff));
    }
    out.write(buf.data(), std::streamsize(buf.size()));
    if (!out) throw ValidationError("failed writing sieve cache: " + path.string());
}

SpfSieve load_sieve(const std::filesystem::path& path, std::uint64_t expected_limit)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open sieve cache: " + path.string());
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw ValidationError("sieve cache has bad magic");
    std::uint64_t limit = get_le(in, 8);
    if (limit != expected_limit)
        throw ValidationError("sieve cache limit " + std::to_string(limit) + " != expected " +
                              std::to_string(expected_limit));
    if (limit < 2 || limit > kMaxSieveLimit) throw ValidationError("sieve cache limit out of range");
    std::vector<unsigned char> raw(4 * (limit - 1));
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
    if (!in) throw ValidationError("sieve cache truncated");
    std::vector<std::uint32_t> entries(limit - 1);
    for (std::size_t i = 0; i < entries.size(); ++i)
        entries[i] = std::uint32_t(raw[4 * i]) | std::uint32_t(raw[4 * i + 1]) << 8 |
                     std::uint32_t(raw[4 * i + 2]) << 16 | std::uint32_t(raw[4 * i + 3]) << 24;
    return SpfSieve::from_entries(limit, std::move(entries));
}

} // namespace latdist::numth
