#pragma once

#include <string>
#include <variant>

#include "gs/names.hpp"
#include "gs/tuple.hpp"

namespace gs {

struct Wildcard {
    bool operator==(const Wildcard&) const = default;
    auto operator<=>(const Wildcard&) const = default;
};

/// One template slot: anything, a specific label, or a specific value.
/// Exact values are only legal in the object slot.
using Slot = std::variant<Wildcard, Label, Value>;

inline bool is_wildcard(const Slot& s) { return std::holds_alternative<Wildcard>(s); }

/// The network's subscription primitive: a 4-slot pattern matched against
/// every tuple. A wildcard context reproduces the 3-slot behaviour.
struct FilterTemplate {
    Slot subject = Wildcard{};
    Slot predicate = Wildcard{};
    Slot object = Wildcard{};
    Slot context = Wildcard{};

    bool operator==(const FilterTemplate&) const = default;

    /// Throws MalformedTuple when an exact value sits outside the object slot.
    static FilterTemplate make(Slot subject, Slot predicate, Slot object, Slot context);

    std::string to_string(const NameDirectory* names = nullptr) const;
};

/// True iff every slot matches: wildcards match anything, labels match an
/// equal vertex label (never a value object), values match an equal value.
bool matches(const FilterTemplate& f, const Tuple& t);

/// Count of non-wildcard slots, 0-4. Higher is more selective.
int selectivity_rank(const FilterTemplate& f);

/// The fully ground template built from a tuple's own four components.
FilterTemplate template_from_tuple(const Tuple& t);

/// Parses the CLI text form "[s, p, o, c]" where each element is a UUID, a
/// name in the directory, a 'quoted string' value, or *.
FilterTemplate parse_template(std::string_view text, const NameDirectory& names);

}  // namespace gs
