#pragma once

#include <array>
#include <compare>
#include <optional>
#include <variant>

#include "gs/label.hpp"
#include "gs/value.hpp"

namespace gs {

/// A vertex reference: either a named vertex or an inline value node.
/// Value nodes are only legal on the object side of an edge.
using NodeRef = std::variant<Label, Value>;

inline bool is_value(const NodeRef& n) { return std::holds_alternative<Value>(n); }
inline const Label* as_label(const NodeRef& n) { return std::get_if<Label>(&n); }
inline const Value* as_value(const NodeRef& n) { return std::get_if<Value>(&n); }

using Signature = std::array<uint8_t, 64>;

/// One edge statement: subject --predicate--> object, inside a context
/// sub-graph, stamped with creator time, optionally signed.
struct Tuple {
    Label subject;
    Label predicate;
    NodeRef object;
    Label context;
    uint64_t timestamp_us = 0;
    std::optional<Label> signer;
    std::optional<Signature> signature;

    bool operator==(const Tuple&) const = default;

    bool is_signed() const { return signer.has_value(); }
};

/// Builds an unsigned well-formed tuple from typed parts.
Tuple make_tuple(Label subject, Label predicate, NodeRef object, Label context,
                 uint64_t timestamp_us);

/// Builds a tuple from four untyped slots, as the ingestion layers do.
/// Throws MalformedTuple when a value node lands in the subject, predicate
/// or context slot, or when the object value is not well formed.
Tuple make_tuple_checked(NodeRef subject, NodeRef predicate, NodeRef object, NodeRef context,
                         uint64_t timestamp_us);

}  // namespace gs
