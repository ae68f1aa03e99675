#pragma once

#include "bagen/types.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>

#if defined(__SSE4_2__)
#include <nmmintrin.h>
#endif

namespace bagen {

/*
 * The two hash families used to walk the edge array. Both map an integer
 * r >= 1 to a pseudorandom value in 0..r-1:
 *
 *   crc:    ((crc32c(seed0, r) << 32) + crc32c(seed1, r)) mod r
 *   simple: high 64 bits of ((r * M) mod 2^64) * r
 *
 * The functors also accept a separate (key, bound) pair; the generator uses
 * that form when the admissible range of a chain step differs from the
 * position being hashed (self-loop avoidance).
 */

enum class HashKind { Crc, Simple };

inline constexpr std::uint64_t kDefaultMultiplier = 3141592653589793238ULL;
inline constexpr std::uint32_t kSaltMix32         = 0x9E3779B9U;
inline constexpr std::uint64_t kSaltMix64         = 0x9E3779B97F4A7C15ULL;

struct HashConfig {
    HashKind kind               = HashKind::Crc;
    std::uint64_t seed0         = 0;
    std::uint64_t seed1         = 1;
    std::uint64_t attempt_salt  = 0;
    std::uint64_t multiplier    = kDefaultMultiplier;

    // Same family, different attempt index for rejection resampling.
    HashConfig salted(std::uint64_t salt) const {
        HashConfig c   = *this;
        c.attempt_salt = salt;
        return c;
    }

    friend bool operator==(const HashConfig&, const HashConfig&) = default;
};

inline std::string_view to_string(HashKind k) { return k == HashKind::Crc ? "crc" : "simple"; }

namespace detail {

inline constexpr std::uint32_t kCrc32cPoly = 0x82F63B78U; // reflected 0x1EDC6F41

// Slicing-by-8 tables: kCrcTables[k][b] is the CRC of byte b followed by k zero bytes.
inline constexpr auto kCrcTables = [] {
    std::array<std::array<std::uint32_t, 256>, 8> t{};
    for (std::uint32_t b = 0; b < 256; ++b) {
        std::uint32_t c = b;
        for (int k = 0; k < 8; ++k) c = (c >> 1) ^ ((c & 1U) ? kCrc32cPoly : 0U);
        t[0][b] = c;
    }
    for (std::size_t k = 1; k < 8; ++k)
        for (std::size_t b = 0; b < 256; ++b) t[k][b] = (t[k - 1][b] >> 8) ^ t[0][t[k - 1][b] & 0xFFU];
    return t;
}();

} // namespace detail

// Table-driven CRC32-C over the 8 little-endian bytes of `word`, with no
// pre- or post-inversion. Bit-identical to _mm_crc32_u64(seed, word).
constexpr std::uint32_t crc32c_u64_software(std::uint32_t seed, std::uint64_t word) noexcept {
    const auto& t       = detail::kCrcTables;
    const std::uint64_t x = word ^ seed;
    return t[7][x & 0xFF] ^ t[6][(x >> 8) & 0xFF] ^ t[5][(x >> 16) & 0xFF] ^ t[4][(x >> 24) & 0xFF]
           ^ t[3][(x >> 32) & 0xFF] ^ t[2][(x >> 40) & 0xFF] ^ t[1][(x >> 48) & 0xFF] ^ t[0][x >> 56];
}

inline constexpr bool kHardwareCrc =
#if defined(__SSE4_2__)
    true;
#else
    false;
#endif

inline std::uint32_t crc32c_u64(std::uint32_t seed, std::uint64_t word) noexcept {
#if defined(__SSE4_2__)
    return static_cast<std::uint32_t>(_mm_crc32_u64(seed, word));
#else
    return crc32c_u64_software(seed, word);
#endif
}

class CrcHash {
public:
    explicit CrcHash(const HashConfig& cfg) noexcept
        : seed0_(static_cast<std::uint32_t>(cfg.seed0 + cfg.attempt_salt)),
          seed1_(static_cast<std::uint32_t>(cfg.seed1 + cfg.attempt_salt * kSaltMix32)) {}

    std::uint64_t bits(std::uint64_t key) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(crc32c_u64(seed0_, key)) << 32;
        h += crc32c_u64(seed1_, key);
        return h;
    }

    std::uint64_t operator()(std::uint64_t key, std::uint64_t bound) const noexcept { return bits(key) % bound; }
    std::uint64_t operator()(std::uint64_t r) const noexcept { return bits(r) % r; }

private:
    std::uint32_t seed0_;
    std::uint32_t seed1_;
};

class SimpleHash {
public:
    explicit SimpleHash(const HashConfig& cfg) noexcept
        : mult_(cfg.multiplier + 2 * cfg.attempt_salt * kSaltMix64) {}

    std::uint64_t operator()(std::uint64_t key, std::uint64_t bound) const noexcept {
        const unsigned __int128 p = static_cast<unsigned __int128>(key * mult_) * bound;
        return static_cast<std::uint64_t>(p >> 64);
    }
    std::uint64_t operator()(std::uint64_t r) const noexcept { return (*this)(r, r); }

private:
    std::uint64_t mult_;
};

inline std::uint64_t h_crc(std::uint64_t r, const HashConfig& cfg) {
    if (r == 0) throw std::domain_error("h_crc: argument must be >= 1");
    return CrcHash(cfg)(r);
}

inline std::uint64_t h_simple(std::uint64_t r, const HashConfig& cfg) {
    if (r == 0) throw std::domain_error("h_simple: argument must be >= 1");
    return SimpleHash(cfg)(r);
}

inline std::uint64_t hash(std::uint64_t r, const HashConfig& cfg) {
    return cfg.kind == HashKind::Crc ? h_crc(r, cfg) : h_simple(r, cfg);
}

// Invokes f with the concrete functor for cfg.kind so hot loops are
// instantiated once per hash family.
template <typename F>
decltype(auto) with_hash(const HashConfig& cfg, F&& f) {
    if (cfg.kind == HashKind::Crc) return std::forward<F>(f)(CrcHash(cfg));
    return std::forward<F>(f)(SimpleHash(cfg));
}

} // namespace bagen
