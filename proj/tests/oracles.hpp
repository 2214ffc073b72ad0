#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "gs/bits512.hpp"
#include "gs/filter.hpp"
#include "gs/query.hpp"
#include "gs/tuple.hpp"
#include "gs/wire.hpp"

namespace gs::testing {

// --- nested-loop join oracle -----------------------------------------------

inline BoundTerm oracle_object_term(const NodeRef& o) {
    if (const Label* l = as_label(o)) return BoundTerm{*l};
    return BoundTerm{*as_value(o)};
}

inline bool oracle_unify(const PatternTerm& term, const BoundTerm& actual, Binding& binding) {
    if (const Variable* v = as_variable(term)) {
        auto it = binding.find(v->name);
        if (it == binding.end()) {
            binding.emplace(v->name, actual);
            return true;
        }
        return it->second == actual;
    }
    if (const Label* l = std::get_if<Label>(&term)) {
        const Label* al = std::get_if<Label>(&actual);
        return al && *al == *l;
    }
    const Value& val = std::get<Value>(term);
    const Value* av = std::get_if<Value>(&actual);
    return av && *av == val;
}

inline void oracle_recurse(const Query& q, const std::vector<Tuple>& tuples, size_t depth,
                           Binding binding, std::set<Binding>& results) {
    if (depth == q.patterns.size()) {
        Binding projected;
        for (const std::string& v : q.projected) projected.emplace(v, binding.at(v));
        results.insert(std::move(projected));
        return;
    }
    const TriplePattern& p = q.patterns[depth];
    for (const Tuple& t : tuples) {
        Binding next = binding;
        if (!oracle_unify(p.subject, BoundTerm{t.subject}, next)) continue;
        if (!oracle_unify(p.predicate, BoundTerm{t.predicate}, next)) continue;
        if (!oracle_unify(p.object, oracle_object_term(t.object), next)) continue;
        oracle_recurse(q, tuples, depth + 1, std::move(next), results);
    }
}

/// The full projected result of evaluating q over the tuple set by plain
/// nested loops.
inline std::set<Binding> nested_loop_oracle(const Query& q, const std::vector<Tuple>& tuples) {
    std::set<Binding> results;
    oracle_recurse(q, tuples, 0, Binding{}, results);
    return results;
}

// --- linear-scan filter oracle ----------------------------------------------

inline std::set<Bits128> linear_scan_hashes(const FilterTemplate& f,
                                            const std::vector<Tuple>& tuples) {
    std::set<Bits128> out;
    for (const Tuple& t : tuples)
        if (matches(f, t)) out.insert(canonical_hash(t));
    return out;
}

inline std::set<Bits128> hashes_of(const std::vector<Tuple>& tuples) {
    std::set<Bits128> out;
    for (const Tuple& t : tuples) out.insert(canonical_hash(t));
    return out;
}

// --- per-bit interleave placement oracle -------------------------------------

/// Interleaves `width`-bit components by explicit per-bit placement:
/// walks j = 0..width-1 and, for each component in order, appends its bit
/// (width-1-j). Returns the bits MSB-first as a vector<bool>.
inline std::vector<bool> placement_oracle(const std::vector<std::vector<bool>>& components) {
    const size_t width = components.front().size();
    std::vector<bool> out;
    for (size_t j = 0; j < width; ++j)
        for (const auto& comp : components) out.push_back(comp[j]);
    return out;
}

inline std::vector<bool> msb_bits(uint64_t v, size_t width) {
    std::vector<bool> bits(width);
    for (size_t i = 0; i < width; ++i) bits[i] = (v >> (width - 1 - i)) & 1;
    return bits;
}

inline uint64_t bits_to_u64(const std::vector<bool>& bits) {
    uint64_t v = 0;
    for (bool b : bits) v = (v << 1) | uint64_t(b);
    return v;
}

// --- random instance generators ----------------------------------------------

struct Pools {
    std::vector<Label> entities;
    std::vector<Label> predicates;
    std::vector<Label> contexts;
    std::vector<Value> values;
};

inline Pools make_pools(LabelRng& lrng, size_t entities = 10, size_t predicates = 4,
                        size_t contexts = 2, size_t values = 4) {
    Pools p;
    for (size_t i = 0; i < entities; ++i) p.entities.push_back(lrng.next());
    for (size_t i = 0; i < predicates; ++i) p.predicates.push_back(lrng.next());
    for (size_t i = 0; i < contexts; ++i) p.contexts.push_back(lrng.next());
    for (size_t i = 0; i < values; ++i)
        p.values.push_back(Value::from_string("v" + std::to_string(i)));
    return p;
}

inline Tuple random_pool_tuple(std::mt19937_64& rng, const Pools& p, uint64_t ts) {
    Label s = p.entities[rng() % p.entities.size()];
    Label pred = p.predicates[rng() % p.predicates.size()];
    Label c = p.contexts[rng() % p.contexts.size()];
    NodeRef o;
    if (rng() % 4 == 0)
        o = p.values[rng() % p.values.size()];
    else
        o = p.entities[rng() % p.entities.size()];
    return make_tuple(s, pred, o, c, ts);
}

/// A connected random query over the pools: <= max_patterns patterns,
/// <= max_vars distinct variables, predicates always ground.
inline Query random_query(std::mt19937_64& rng, const Pools& p, size_t max_patterns = 5,
                          size_t max_vars = 4) {
    const size_t n_patterns = 1 + rng() % max_patterns;
    const size_t n_vars = 1 + rng() % max_vars;
    std::vector<std::string> vars;
    for (size_t i = 0; i < n_vars; ++i) vars.push_back("v" + std::to_string(i));

    Query q;
    std::set<std::string> used;
    for (size_t i = 0; i < n_patterns; ++i) {
        TriplePattern pat;
        // subject: variable (sharing an already-used one when possible) or entity
        auto pick_var = [&]() -> std::string {
            if (!used.empty() && rng() % 2 == 0) {
                auto it = used.begin();
                std::advance(it, rng() % used.size());
                return *it;
            }
            return vars[rng() % vars.size()];
        };
        if (rng() % 4 != 0)
            pat.subject = Variable{pick_var()};
        else
            pat.subject = p.entities[rng() % p.entities.size()];
        pat.predicate = p.predicates[rng() % p.predicates.size()];
        switch (rng() % 4) {
            case 0:
                pat.object = p.entities[rng() % p.entities.size()];
                break;
            case 1:
                pat.object = p.values[rng() % p.values.size()];
                break;
            default:
                pat.object = Variable{pick_var()};
        }
        if (pat.variables().empty()) pat.subject = Variable{pick_var()};
        for (const std::string& v : pat.variables()) used.insert(v);
        q.patterns.push_back(std::move(pat));
    }
    // project a nonempty subset of the used variables
    std::vector<std::string> used_list(used.begin(), used.end());
    size_t n_proj = 1 + rng() % used_list.size();
    for (size_t i = 0; i < n_proj; ++i) q.projected.push_back(used_list[i]);
    return q;
}

}  // namespace gs::testing
