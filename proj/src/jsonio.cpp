#include "gs/jsonio.hpp"

#include <json.hpp>
#include <sstream>

#include "gs/errors.hpp"
#include "gs/wire.hpp"

namespace gs {

using nlohmann::json;

namespace {

json value_to_json(const Value& v) {
    json j;
    if (auto name = value_types::name_of(v.type))
        j["type"] = *name;
    else
        j["type"] = v.type.to_string();
    if (v.type == value_types::utf8_string)
        j["data"] = std::string(v.payload.begin(), v.payload.end());
    else if (v.type == value_types::int64)
        j["data"] = v.as_int64();
    else if (v.type == value_types::float64)
        j["data"] = v.as_float64();
    else if (v.type == value_types::timestamp)
        j["data"] = v.as_timestamp();
    else
        j["data"] = base64_encode(v.payload);
    return j;
}

Value value_from_json(const json& j) {
    if (!j.contains("type") || !j.contains("data"))
        throw MalformedTuple("value object needs type and data");
    std::string type_str = j.at("type").get<std::string>();
    Label type;
    if (auto t = value_types::by_name(type_str))
        type = *t;
    else
        type = Label::from_string(type_str);

    const json& data = j.at("data");
    if (type == value_types::utf8_string) {
        if (!data.is_string()) throw MalformedTuple("utf8-string data must be a JSON string");
        return Value::from_string(data.get<std::string>());
    }
    if (type == value_types::int64) {
        if (!data.is_number_integer()) throw MalformedTuple("int64 data must be a JSON integer");
        return Value::from_int64(data.get<int64_t>());
    }
    if (type == value_types::float64) {
        if (!data.is_number()) throw MalformedTuple("float64 data must be a JSON number");
        return Value::from_float64(data.get<double>());
    }
    if (type == value_types::timestamp) {
        if (!data.is_number_unsigned() && !data.is_number_integer())
            throw MalformedTuple("timestamp data must be a JSON integer");
        return Value::from_timestamp(data.get<uint64_t>());
    }
    if (!data.is_string()) throw MalformedTuple("opaque value data must be base64");
    auto bytes = base64_decode(data.get<std::string>());
    if (!bytes) throw MalformedTuple("invalid base64 in value data");
    return Value{type, std::move(*bytes)};
}

NodeRef noderef_from_json(const json& j) {
    if (j.is_string()) return Label::from_string(j.get<std::string>());
    if (j.is_object()) return value_from_json(j);
    throw MalformedTuple("slot must be a UUID string or a value object");
}

json noderef_to_json(const NodeRef& n) {
    if (const Label* l = as_label(n)) return l->to_string();
    return value_to_json(*as_value(n));
}

}  // namespace

std::string tuple_to_json(const Tuple& t) {
    json j;
    j["s"] = t.subject.to_string();
    j["p"] = t.predicate.to_string();
    j["o"] = noderef_to_json(t.object);
    j["c"] = t.context.to_string();
    j["ts"] = t.timestamp_us;
    if (t.signer) j["signer"] = t.signer->to_string();
    if (t.signature)
        j["sig"] = base64_encode(ByteView(t.signature->data(), t.signature->size()));
    return j.dump();
}

Tuple tuple_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), size_t(e.byte));
    }
    if (!j.is_object()) throw MalformedTuple("tuple line must be a JSON object");
    for (const char* field : {"s", "p", "o", "c", "ts"})
        if (!j.contains(field)) throw MalformedTuple(std::string("missing field '") + field + "'");

    Tuple t = make_tuple_checked(noderef_from_json(j.at("s")), noderef_from_json(j.at("p")),
                                 noderef_from_json(j.at("o")), noderef_from_json(j.at("c")),
                                 j.at("ts").get<uint64_t>());
    if (j.contains("signer") != j.contains("sig"))
        throw MalformedTuple("signer and sig must appear together");
    if (j.contains("signer")) {
        t.signer = Label::from_string(j.at("signer").get<std::string>());
        auto sig = base64_decode(j.at("sig").get<std::string>());
        if (!sig || sig->size() != 64) throw MalformedTuple("sig must be 64 base64 bytes");
        Signature s;
        std::copy(sig->begin(), sig->end(), s.begin());
        t.signature = s;
    }
    return t;
}

std::string binding_to_json(const Binding& b) {
    json j;
    for (const auto& [var, term] : b) {
        if (const Label* l = std::get_if<Label>(&term))
            j[var] = l->to_string();
        else
            j[var] = value_to_json(std::get<Value>(term));
    }
    return j.dump();
}

std::string delivery_to_json(const Delivery& d) {
    if (const Tuple* t = d.tuple()) return tuple_to_json(*t);
    return binding_to_json(*d.binding());
}

JsonlParseResult parse_jsonl(const std::string& text) {
    JsonlParseResult out;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.tuples.push_back(tuple_from_json(line));
        } catch (const Error& e) {
            out.errors.emplace_back(lineno, e.what());
        }
    }
    return out;
}

}  // namespace gs
