#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gs/bytes.hpp"
#include "gs/label.hpp"

namespace gs {

/// Registry of value types the network itself understands. Each type is a
/// fixed 128-bit label; anything else travels through opaquely.
namespace value_types {

constexpr Bits128 make_registry_bits(uint8_t n) {
    // 00000000-0000-4000-8000-00000000000n
    Bits128 b{};
    b[6] = 0x40;
    b[8] = 0x80;
    b[15] = n;
    return b;
}

inline const Label utf8_string{make_registry_bits(1)};
inline const Label bytes{make_registry_bits(2)};
inline const Label int64{make_registry_bits(3)};
inline const Label float64{make_registry_bits(4)};
inline const Label timestamp{make_registry_bits(5)};

/// Registry name for a known type label, or nullopt for an opaque one.
std::optional<std::string> name_of(const Label& type);
std::optional<Label> by_name(std::string_view name);

/// Known fixed payload width in bytes (int64/float64/timestamp), or nullopt.
std::optional<size_t> fixed_width(const Label& type);

}  // namespace value_types

/// A typed array of bits. int64/float64/timestamp payloads are exactly
/// 8 bytes big-endian; utf8-string payloads must be valid UTF-8. Unknown
/// type labels carry arbitrary payloads.
struct Value {
    Label type;
    Bytes payload;

    auto operator<=>(const Value&) const = default;

    static Value from_string(std::string_view text);
    static Value from_bytes(Bytes data);
    static Value from_int64(int64_t v);
    static Value from_float64(double v);
    static Value from_timestamp(uint64_t micros);

    std::string as_string() const;  // requires utf8-string type
    int64_t as_int64() const;
    double as_float64() const;
    uint64_t as_timestamp() const;

    /// True iff the payload is consistent with the declared type.
    bool well_formed() const;
};

}  // namespace gs
