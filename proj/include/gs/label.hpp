#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "gs/bytes.hpp"

namespace gs {

using Bits128 = std::array<uint8_t, 16>;

/// 128-bit opaque identifier naming a vertex, edge type or context.
/// Text form is the usual lowercase hyphenated UUID; equality is bitwise.
struct Label {
    Bits128 bytes{};

    auto operator<=>(const Label&) const = default;

    bool is_zero() const {
        for (uint8_t b : bytes)
            if (b != 0) return false;
        return true;
    }

    /// Bit i, MSB first: bit 0 is the top bit of bytes[0].
    bool bit(unsigned i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1; }

    void set_bit(unsigned i, bool v) {
        uint8_t mask = uint8_t(1u << (7 - (i & 7)));
        if (v)
            bytes[i >> 3] |= mask;
        else
            bytes[i >> 3] &= uint8_t(~mask);
    }

    std::string to_string() const;
    static std::optional<Label> try_parse(std::string_view text);
    static Label from_string(std::string_view text);  // throws ParseError
};

/// Seeded source of fresh labels (RFC 4122 random variant). The sequence is
/// a pure function of the seed.
class LabelRng {
public:
    explicit LabelRng(uint64_t seed) : eng_(seed) {}

    Label next() {
        Label l;
        for (int i = 0; i < 16; i += 8) {
            uint64_t w = eng_();
            for (int j = 0; j < 8; ++j) l.bytes[i + j] = static_cast<uint8_t>(w >> (56 - 8 * j));
        }
        l.bytes[6] = uint8_t((l.bytes[6] & 0x0F) | 0x40);  // version 4
        l.bytes[8] = uint8_t((l.bytes[8] & 0x3F) | 0x80);  // variant 10
        return l;
    }

private:
    std::mt19937_64 eng_;
};

inline Label new_label(LabelRng& rng) { return rng.next(); }

}  // namespace gs
