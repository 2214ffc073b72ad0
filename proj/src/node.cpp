#include "gs/node.hpp"

#include "gs/errors.hpp"
#include "gs/wire.hpp"

namespace gs {

std::vector<PublishReceipt> Node::publish(const std::vector<Tuple>& tuples, const KeyPair* kp) {
    std::vector<PublishReceipt> receipts;
    receipts.reserve(tuples.size());
    for (size_t i = 0; i < tuples.size(); ++i) {
        PublishReceipt r;
        r.index = i;
        try {
            Tuple t = tuples[i];
            if (kp && !t.is_signed()) t = sign_tuple(t, *kp);
            encode(t);  // well-formedness gate: throws on malformed tuples
            r.accepted = true;
            r.hash = canonical_hash(t);
            r.outcome = std::make_shared<StoreOutcome>();
            auto outcome = r.outcome;
            peer_.store_tuple(t, [outcome](StoreResult res) {
                outcome->settled = true;
                outcome->result = res;
            });
        } catch (const Error& e) {
            r.accepted = false;
            r.error = e.what();
        }
        receipts.push_back(std::move(r));
    }
    return receipts;
}

Node::Session* Node::find_open(SessionId sid) {
    auto it = sessions_.find(sid);
    if (it == sessions_.end() || !it->second.open) return nullptr;
    return &it->second;
}

const Node::Session* Node::find_session(SessionId sid) const {
    auto it = sessions_.find(sid);
    return it == sessions_.end() ? nullptr : &it->second;
}

SessionId Node::open_template_session(const FilterTemplate& f, SessionId parent) {
    SessionId sid = next_session_++;
    Session s;
    s.id = sid;
    s.templ = f;
    s.parent = parent;
    s.period_us = sim_.config().period_us;
    sessions_.emplace(sid, std::move(s));

    requery(sid);  // historic snapshot
    sessions_.at(sid).timer = sim_.schedule(
        sessions_.at(sid).period_us, [this, sid] { requery(sid); },
        /*periodic=*/true, int(peer_.index()));
    return sid;
}

SessionId Node::subscribe_template(const FilterTemplate& f) {
    return open_template_session(f, 0);
}

SessionId Node::subscribe_query(std::string_view text, const NameDirectory& names) {
    Query q = reorder_patterns(parse_query(text, names));

    SessionId sid = next_session_++;
    Session s;
    s.id = sid;
    s.query = std::make_unique<QueryState>(q);
    sessions_.emplace(sid, std::move(s));

    for (const FilterTemplate& f : derive_alpha_templates(q))
        sessions_.at(sid).query->children.push_back(open_template_session(f, sid));
    return sid;
}

void Node::requery(SessionId sid) {
    Session* s = find_open(sid);
    if (!s) return;
    // the timer keeps firing once per period; each firing is one standing
    // re-query against the network
    peer_.lookup(pattern_address(s->templ),
                 [this, sid](LookupResult result) { on_lookup(sid, std::move(result)); });
}

void Node::on_lookup(SessionId sid, LookupResult result) {
    Session* s = find_open(sid);
    if (!s) return;  // unsubscribed while the lookup was in flight
    if (result.status == OpStatus::BranchBudgetExceeded) {
        s->error = SessionError::BranchBudgetExceeded;
        return;
    }
    if (result.status == OpStatus::Unreachable && s->error == SessionError::None)
        s->error = SessionError::Unreachable;

    for (const Tuple& t : result.tuples) {
        if (!matches(s->templ, t)) continue;
        if (!s->seen.insert(canonical_hash(t)).second) continue;  // at most once

        if (s->parent != 0) {
            // internal alpha subscription: feed the query's join network
            Session* parent = find_open(s->parent);
            if (!parent || !parent->query) continue;
            for (Binding& b : parent->query->net.feed(t))
                enqueue(*parent, Delivery{sim_.now(), std::move(b)});
        } else {
            enqueue(*s, Delivery{sim_.now(), t});
        }
    }
}

void Node::enqueue(Session& s, Delivery d) {
    s.queue.push_back(std::move(d));
    if (auto cap = sim_.config().session_queue_cap; cap && s.queue.size() > *cap) {
        s.queue.pop_front();  // best effort: oldest goes first
        ++dropped_;
    }
}

std::vector<Delivery> Node::poll(SessionId sid, size_t max) {
    Session* s = find_open(sid);
    if (!s) throw SessionClosed();
    std::vector<Delivery> out;
    while (!s->queue.empty() && out.size() < max) {
        out.push_back(std::move(s->queue.front()));
        s->queue.pop_front();
    }
    return out;
}

void Node::unsubscribe(SessionId sid) {
    auto it = sessions_.find(sid);
    if (it == sessions_.end() || !it->second.open) return;  // idempotent
    Session& s = it->second;
    s.open = false;
    sim_.cancel(s.timer);
    s.queue.clear();
    if (s.query)
        for (SessionId child : s.query->children) unsubscribe(child);
}

SessionError Node::session_error(SessionId sid) const {
    const Session* s = find_session(sid);
    if (!s) return SessionError::None;
    if (s->query) {
        for (SessionId child : s->query->children) {
            const Session* c = find_session(child);
            if (c && c->error != SessionError::None) return c->error;
        }
    }
    return s->error;
}

}  // namespace gs
