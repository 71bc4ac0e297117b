#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

namespace veclat {

// FNV-1a, 64 bit. Multi-byte values are fed little-endian so the digest is
// endianness-independent.
class Fnv1a64 {
public:
    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001B3ull;
        }
    }

    void update_u64_le(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            unsigned char byte = static_cast<unsigned char>(v >> (8 * i));
            hash_ ^= byte;
            hash_ *= 0x100000001B3ull;
        }
    }

    void update_double_le(double v) { update_u64_le(std::bit_cast<std::uint64_t>(v)); }

    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xCBF29CE484222325ull;
};

/// Canonical rounding used for cross-layout/cross-thread checksums: the low
/// 8 mantissa bits are cleared (absorbs ulp-level noise) and -0 folds to +0.
inline std::uint64_t rounded_double_bits(double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    if ((bits << 1) == 0) bits = 0;
    return bits & ~std::uint64_t{0xFF};
}

} // namespace veclat
