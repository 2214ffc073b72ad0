#pragma once

#include <string>
#include <vector>

#include "gs/node.hpp"
#include "gs/tuple.hpp"

namespace gs {

// Text form of a tuple, one JSON object per line in .jsonl files:
//   {"s":"<uuid>","p":"<uuid>","o":<object>,"c":"<uuid>","ts":<micros>,
//    "signer":"<uuid>","sig":"<base64>"}
// where <object> is a UUID string for vertex objects, or a value object
//   {"type":"utf8-string","data":"..."}    (data: string)
//   {"type":"bytes","data":"<base64>"}
//   {"type":"int64","data":-42}            (JSON integer)
//   {"type":"float64","data":1.5}          (JSON number)
//   {"type":"timestamp","data":123456}     (JSON integer, micros)
//   {"type":"<uuid>","data":"<base64>"}    (opaque type)

std::string tuple_to_json(const Tuple& t);
Tuple tuple_from_json(const std::string& line);  // throws MalformedTuple / ParseError

std::string binding_to_json(const Binding& b);
std::string delivery_to_json(const Delivery& d);

struct JsonlParseResult {
    std::vector<Tuple> tuples;
    std::vector<std::pair<size_t, std::string>> errors;  // (1-based line, message)
};

/// Parses a whole .jsonl document; blank lines are skipped, bad lines are
/// reported individually and do not stop the rest.
JsonlParseResult parse_jsonl(const std::string& text);

}  // namespace gs
