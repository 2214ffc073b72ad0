#pragma once

#include <set>
#include <vector>

#include "gs/query.hpp"
#include "gs/wire.hpp"

namespace gs {

/// Derives one filter template per pattern: variables become wildcards,
/// ground terms are kept, context is always a wildcard.
std::vector<FilterTemplate> derive_alpha_templates(const Query& q);

/// Stable reorder by descending template selectivity, keeping the chain
/// connected: after the first pattern, prefer patterns sharing a variable
/// with the ones already placed. The emitted result set is unchanged.
Query reorder_patterns(const Query& q);

/// Incremental dataflow network for one query: a linear chain
/// BM0 -> JV1(AM1) -> BM1 -> ... -> BMn, where each alpha memory holds the
/// tuples matching one pattern and each beta memory holds partial bindings.
/// Memories are sets and only ever grow.
class ReteNetwork {
public:
    explicit ReteNetwork(Query q);

    /// Inserts t into every alpha memory whose template matches, propagates
    /// activations downstream, and returns the projected bindings that
    /// became complete for the first time during this call.
    std::vector<Binding> feed(const Tuple& t);

    const Query& query() const { return query_; }
    size_t alpha_count() const { return stages_.size(); }
    size_t beta_count() const { return stages_.size() + 1; }  // including BM0
    size_t alpha_size(size_t i) const { return stages_[i].alpha_tuples.size(); }
    size_t beta_size(size_t i) const;  // i in [0, beta_count)
    const FilterTemplate& alpha_template(size_t i) const { return stages_[i].templ; }
    const std::set<std::string>& join_variables(size_t i) const { return stages_[i].join_vars; }
    size_t emitted_count() const { return emitted_.size(); }

private:
    struct Stage {  // AMi + JVi + the BM it feeds
        TriplePattern pattern;
        FilterTemplate templ;
        std::set<std::string> join_vars;  // vars shared with earlier patterns
        std::set<Bits128> alpha_seen;     // canonical hashes, duplicate guard
        std::vector<Tuple> alpha_tuples;
        std::set<Binding> beta;  // BMi
    };

    void insert_beta(size_t stage, const Binding& b, std::vector<Binding>& out);
    void left_activate(size_t stage, const Binding& b, std::vector<Binding>& out);

    Query query_;
    std::vector<Stage> stages_;
    std::set<Binding> empty_beta_;  // BM0: the single empty binding
    std::set<Binding> emitted_;    // projected results already returned
};

/// Binds a pattern's variables from a matching tuple. Returns false when a
/// variable repeats inside the pattern with conflicting values.
bool extract_binding(const TriplePattern& p, const Tuple& t, Binding& out);

/// True when the two bindings agree on every shared variable.
bool compatible(const Binding& a, const Binding& b);

}  // namespace gs
