#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace latdist::numth {

// Memory ceilings. Sieve entries are 4 bytes, so the default sieve ceiling
// is 4 GiB of table; rhat tables cost 12 bytes per k.
inline constexpr std::uint64_t kMaxSieveLimit = (std::uint64_t(1) << 32) - 1;
inline constexpr std::uint64_t kDefaultSieveCeiling = std::uint64_t(1) << 30;
inline constexpr std::uint64_t kDefaultTableCeiling = std::uint64_t(1) << 28;

/// Smallest-prime-factor table for 2..limit.
class SpfSieve {
public:
    SpfSieve() = default;

    std::uint64_t limit() const { return limit_; }
    /// Smallest prime factor of k, 2 <= k <= limit.
    std::uint32_t spf(std::uint64_t k) const { return table_[k]; }
    bool is_prime(std::uint64_t k) const { return k >= 2 && table_[k] == k; }

    /// Entries for k = 2..limit, in order.
    const std::uint32_t* data() const { return table_.data() + 2; }

    static SpfSieve from_entries(std::uint64_t limit, std::vector<std::uint32_t> entries);

private:
    friend SpfSieve build_spf_sieve(std::uint64_t, std::uint64_t);
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> table_; // indexed by k; slots 0 and 1 unused
};

/// r(k) and its prefix second moments, both in the quadrant convention.
struct RhatTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> rvals; // rvals[k] = r(k), rvals[0] unused
    std::vector<std::uint64_t> rhat;  // rhat[k] = sum_{i<=k} r(i)^2, rhat[0] = 0
};

/// Number of (i, j) with i, j >= 0 and i^2 + j^2 = k, by scanning i.
std::uint64_t r_bruteforce(std::uint64_t k);

/// Linear sieve of smallest prime factors. Throws CapacityError when limit
/// exceeds `ceiling` (or the 32-bit entry range) and ValidationError if limit < 2.
SpfSieve build_spf_sieve(std::uint64_t limit, std::uint64_t ceiling = kDefaultSieveCeiling);

/// All-sign count |{(a, b) in Z^2 : a^2 + b^2 = k}| from the factorisation of k.
std::uint64_t r_full_plane(std::uint64_t k, const SpfSieve& sieve);

/// Quadrant-convention r(k) = r_full_plane(k) / 4 + [k is a square].
std::uint64_t r_fast(std::uint64_t k, const SpfSieve& sieve);

/// r(1..limit) by direct pair accumulation, then squared prefix sums.
RhatTable rhat_table(std::uint64_t limit, std::uint64_t ceiling = kDefaultTableCeiling);

/// |{1 <= k <= limit : k = i^2 + j^2}|.
std::uint64_t landau_count(std::uint64_t limit, std::uint64_t ceiling = std::uint64_t(1) << 34);

// Sieve cache file: "SPF1", limit as u64 LE, then limit-1 u32 LE entries for
// k = 2..limit.
void save_sieve(const std::filesystem::path& path, const SpfSieve& sieve);
SpfSieve load_sieve(const std::filesystem::path& path, std::uint64_t expected_limit);

} // namespace latdist::numth
