#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gs/filter.hpp"
#include "gs/names.hpp"
#include "gs/tuple.hpp"

namespace gs {

struct Variable {
    std::string name;  // without the leading '?'
    bool operator==(const Variable&) const = default;
    auto operator<=>(const Variable&) const = default;
};

/// One term of a triple pattern: a binding variable, a ground label, or a
/// ground value (object position only).
using PatternTerm = std::variant<Variable, Label, Value>;

inline const Variable* as_variable(const PatternTerm& t) { return std::get_if<Variable>(&t); }

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;

    bool operator==(const TriplePattern&) const = default;

    std::set<std::string> variables() const;
};

/// A parsed SUBSCRIBE query: projected variables plus the list of triple
/// patterns. Every projected variable occurs in at least one pattern.
struct Query {
    std::vector<std::string> projected;
    std::vector<TriplePattern> patterns;

    bool operator==(const Query&) const = default;
};

/// Grammar:
///   SUBSCRIBE ?v (, ?v)* WHERE pattern (. pattern)* [.]
///   pattern := term term term
///   term    := ?var | name-or-UUID | 'quoted string'
/// Bare names resolve through the supplied directory.
Query parse_query(std::string_view text, const NameDirectory& names);

/// A variable's binding: the vertex label or value it matched.
using BoundTerm = std::variant<Label, Value>;

/// Map from variable name to bound term; a variable binds at most once.
using Binding = std::map<std::string, BoundTerm>;

}  // namespace gs
