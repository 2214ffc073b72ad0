#include "gs/value.hpp"

#include <bit>
#include <cstring>

#include "gs/errors.hpp"

namespace gs {

namespace value_types {

std::optional<std::string> name_of(const Label& type) {
    if (type == utf8_string) return "utf8-string";
    if (type == bytes) return "bytes";
    if (type == int64) return "int64";
    if (type == float64) return "float64";
    if (type == timestamp) return "timestamp";
    return std::nullopt;
}

std::optional<Label> by_name(std::string_view name) {
    if (name == "utf8-string") return utf8_string;
    if (name == "bytes") return bytes;
    if (name == "int64") return int64;
    if (name == "float64") return float64;
    if (name == "timestamp") return timestamp;
    return std::nullopt;
}

std::optional<size_t> fixed_width(const Label& type) {
    if (type == int64 || type == float64 || type == timestamp) return size_t{8};
    return std::nullopt;
}

}  // namespace value_types

Value Value::from_string(std::string_view text) {
    return Value{value_types::utf8_string, Bytes(text.begin(), text.end())};
}

Value Value::from_bytes(Bytes data) { return Value{value_types::bytes, std::move(data)}; }

Value Value::from_int64(int64_t v) {
    Bytes p;
    put_u64_be(p, static_cast<uint64_t>(v));
    return Value{value_types::int64, std::move(p)};
}

Value Value::from_float64(double v) {
    Bytes p;
    put_u64_be(p, std::bit_cast<uint64_t>(v));
    return Value{value_types::float64, std::move(p)};
}

Value Value::from_timestamp(uint64_t micros) {
    Bytes p;
    put_u64_be(p, micros);
    return Value{value_types::timestamp, std::move(p)};
}

std::string Value::as_string() const {
    if (type != value_types::utf8_string) throw Error("value is not a utf8-string");
    return std::string(payload.begin(), payload.end());
}

int64_t Value::as_int64() const {
    if (type != value_types::int64 || payload.size() != 8) throw Error("value is not an int64");
    return static_cast<int64_t>(get_u64_be(payload.data()));
}

double Value::as_float64() const {
    if (type != value_types::float64 || payload.size() != 8) throw Error("value is not a float64");
    return std::bit_cast<double>(get_u64_be(payload.data()));
}

uint64_t Value::as_timestamp() const {
    if (type != value_types::timestamp || payload.size() != 8) throw Error("value is not a timestamp");
    return get_u64_be(payload.data());
}

bool Value::well_formed() const {
    if (auto w = value_types::fixed_width(type)) return payload.size() == *w;
    if (type == value_types::utf8_string) return is_valid_utf8(payload);
    return true;  // bytes and opaque types accept anything
}

}  // namespace gs
