#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gs {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

std::string to_hex(ByteView data);

std::string base64_encode(ByteView data);
std::optional<Bytes> base64_decode(std::string_view text);

bool is_valid_utf8(ByteView data);

inline void put_u32_be(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline void put_u64_be(Bytes& out, uint64_t v) {
    put_u32_be(out, static_cast<uint32_t>(v >> 32));
    put_u32_be(out, static_cast<uint32_t>(v));
}

inline uint32_t get_u32_be(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

inline uint64_t get_u64_be(const uint8_t* p) {
    return (uint64_t(get_u32_be(p)) << 32) | get_u32_be(p + 4);
}

}  // namespace gs
