#include "gs/rete.hpp"

#include <algorithm>

#include "gs/errors.hpp"

namespace gs {

namespace {

Slot term_to_slot(const PatternTerm& t) {
    if (as_variable(t)) return Wildcard{};
    if (const Label* l = std::get_if<Label>(&t)) return *l;
    return std::get<Value>(t);
}

BoundTerm object_to_term(const NodeRef& o) {
    if (const Label* l = as_label(o)) return *l;
    return *as_value(o);
}

bool bind_one(Binding& b, const PatternTerm& term, BoundTerm actual) {
    const Variable* v = as_variable(term);
    if (!v) return true;  // ground term, already matched by the template
    auto [it, inserted] = b.emplace(v->name, std::move(actual));
    if (inserted) return true;
    return it->second == actual;
}

}  // namespace

std::vector<FilterTemplate> derive_alpha_templates(const Query& q) {
    std::vector<FilterTemplate> out;
    out.reserve(q.patterns.size());
    for (const TriplePattern& p : q.patterns) {
        FilterTemplate f;
        f.subject = term_to_slot(p.subject);
        f.predicate = term_to_slot(p.predicate);
        f.object = term_to_slot(p.object);
        f.context = Wildcard{};
        out.push_back(std::move(f));
    }
    return out;
}

Query reorder_patterns(const Query& q) {
    const auto templates = derive_alpha_templates(q);
    std::vector<int> ranks(q.patterns.size());
    for (size_t i = 0; i < templates.size(); ++i) ranks[i] = selectivity_rank(templates[i]);

    std::vector<bool> placed(q.patterns.size(), false);
    std::set<std::string> bound_vars;
    Query out;
    out.projected = q.projected;

    for (size_t step = 0; step < q.patterns.size(); ++step) {
        // candidates connected to what is already placed, falling back to all
        int best = -1;
        bool best_connected = false;
        for (size_t i = 0; i < q.patterns.size(); ++i) {
            if (placed[i]) continue;
            auto vars = q.patterns[i].variables();
            bool connected = std::any_of(vars.begin(), vars.end(), [&](const std::string& v) {
                return bound_vars.count(v) > 0;
            });
            if (step == 0) connected = true;  // nothing placed yet
            if (best < 0 || (connected && !best_connected) ||
                (connected == best_connected && ranks[i] > ranks[size_t(best)])) {
                best = int(i);
                best_connected = connected;
            }
        }
        placed[size_t(best)] = true;
        auto vars = q.patterns[size_t(best)].variables();
        bound_vars.insert(vars.begin(), vars.end());
        out.patterns.push_back(q.patterns[size_t(best)]);
    }
    return out;
}

ReteNetwork::ReteNetwork(Query q) : query_(std::move(q)) {
    auto templates = derive_alpha_templates(query_);
    std::set<std::string> earlier_vars;
    stages_.reserve(query_.patterns.size());
    for (size_t i = 0; i < query_.patterns.size(); ++i) {
        Stage s;
        s.pattern = query_.patterns[i];
        s.templ = templates[i];
        for (const std::string& v : s.pattern.variables())
            if (earlier_vars.count(v)) s.join_vars.insert(v);
        auto vars = s.pattern.variables();
        earlier_vars.insert(vars.begin(), vars.end());
        stages_.push_back(std::move(s));
    }
    empty_beta_.insert(Binding{});  // BM0 seed
}

size_t ReteNetwork::beta_size(size_t i) const {
    return i == 0 ? empty_beta_.size() : stages_[i - 1].beta.size();
}

bool extract_binding(const TriplePattern& p, const Tuple& t, Binding& out) {
    return bind_one(out, p.subject, t.subject) && bind_one(out, p.predicate, t.predicate) &&
           bind_one(out, p.object, object_to_term(t.object));
}

bool compatible(const Binding& a, const Binding& b) {
    // both maps are ordered; walk them in lockstep
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first)
            ++ia;
        else if (ib->first < ia->first)
            ++ib;
        else {
            if (!(ia->second == ib->second)) return false;
            ++ia;
            ++ib;
        }
    }
    return true;
}

std::vector<Binding> ReteNetwork::feed(const Tuple& t) {
    std::vector<Binding> out;
    const Bits128 h = canonical_hash(t);
    for (size_t i = 0; i < stages_.size(); ++i) {
        Stage& s = stages_[i];
        if (!matches(s.templ, t)) continue;
        if (!s.alpha_seen.insert(h).second) continue;  // set semantics
        s.alpha_tuples.push_back(t);

        Binding tb;
        if (!extract_binding(s.pattern, t, tb)) continue;  // repeated-var clash

        // right activation: join the new tuple against BM(i-1)
        const std::set<Binding>& upstream = (i == 0) ? empty_beta_ : stages_[i - 1].beta;
        for (const Binding& b : upstream) {
            if (!compatible(b, tb)) continue;
            Binding merged = b;
            merged.insert(tb.begin(), tb.end());
            insert_beta(i, merged, out);
        }
    }
    return out;
}

void ReteNetwork::insert_beta(size_t stage, const Binding& b, std::vector<Binding>& out) {
    if (!stages_[stage].beta.insert(b).second) return;
    if (stage + 1 == stages_.size()) {
        Binding projected;
        for (const std::string& v : query_.projected) projected.emplace(v, b.at(v));
        if (emitted_.insert(projected).second) out.push_back(std::move(projected));
        return;
    }
    left_activate(stage + 1, b, out);
}

void ReteNetwork::left_activate(size_t stage, const Binding& b, std::vector<Binding>& out) {
    Stage& s = stages_[stage];
    for (const Tuple& t : s.alpha_tuples) {
        Binding tb;
        if (!extract_binding(s.pattern, t, tb)) continue;
        if (!compatible(b, tb)) continue;
        Binding merged = b;
        merged.insert(tb.begin(), tb.end());
        insert_beta(stage, merged, out);
    }
}

}  // namespace gs
