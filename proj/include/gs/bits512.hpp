#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "gs/label.hpp"

namespace gs {

/// 512-bit quantity: the DHT address/identifier width. Bit 0 is the most
/// significant bit (top bit of bytes[0]); comparison order follows that.
struct Bits512 {
    std::array<uint8_t, 64> bytes{};

    auto operator<=>(const Bits512&) const = default;

    bool bit(unsigned i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1; }

    void set_bit(unsigned i, bool v) {
        uint8_t mask = uint8_t(1u << (7 - (i & 7)));
        if (v)
            bytes[i >> 3] |= mask;
        else
            bytes[i >> 3] &= uint8_t(~mask);
    }

    Bits512 operator^(const Bits512& o) const {
        Bits512 r;
        for (size_t i = 0; i < bytes.size(); ++i) r.bytes[i] = bytes[i] ^ o.bytes[i];
        return r;
    }

    bool is_zero() const {
        for (uint8_t b : bytes)
            if (b) return false;
        return true;
    }

    /// Index of the highest set bit counted from the LSB (bit 511 of the
    /// MSB-first numbering maps to 0). -1 for zero.
    int highest_bit() const {
        for (unsigned i = 0; i < 512; ++i)
            if (bit(i)) return int(511 - i);
        return -1;
    }

    std::string to_hex() const;
};

/// XOR distance, compared as a 512-bit big-endian integer.
inline Bits512 xor_distance(const Bits512& a, const Bits512& b) { return a ^ b; }

}  // namespace gs
