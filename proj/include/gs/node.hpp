#pragma once

#include <deque>
#include <memory>
#include <set>

#include "gs/peer.hpp"
#include "gs/query.hpp"
#include "gs/rete.hpp"
#include "gs/signing.hpp"

namespace gs {

using SessionId = uint64_t;

/// One item handed to a subscriber: a matching tuple (template sessions)
/// or a projected variable binding (query sessions), stamped with the
/// virtual time it entered the session queue.
struct Delivery {
    uint64_t delivered_at_us = 0;
    std::variant<Tuple, Binding> item;

    bool operator==(const Delivery&) const = default;

    const Tuple* tuple() const { return std::get_if<Tuple>(&item); }
    const Binding* binding() const { return std::get_if<Binding>(&item); }
};

enum class SessionError { None, BranchBudgetExceeded, Unreachable };

struct StoreOutcome {
    bool settled = false;
    StoreResult result;
};

struct PublishReceipt {
    size_t index = 0;  // position in the published sequence
    bool accepted = false;
    Bits128 hash{};     // canonical hash, when accepted
    std::string error;  // when rejected
    std::shared_ptr<StoreOutcome> outcome;  // filled once the store settles
};

/// The two-primitive service surface agents program against: publish and
/// subscribe, plus pull-style delivery. Nothing else leaks through.
class NodeApi {
public:
    virtual ~NodeApi() = default;

    virtual uint64_t now() const = 0;

    /// Fire-and-forget: tuples are (optionally) signed, encoded and handed
    /// to the DHT. Malformed tuples are rejected per item; the rest proceed.
    virtual std::vector<PublishReceipt> publish(const std::vector<Tuple>& tuples,
                                                const KeyPair* kp = nullptr) = 0;

    /// Snapshot of everything currently matching, then a re-query every
    /// period; unseen matches land in the delivery queue.
    virtual SessionId subscribe_template(const FilterTemplate& f) = 0;

    /// Compiles the query, opens one template subscription per derived
    /// alpha template, feeds deliveries through the join network and queues
    /// newly complete projected bindings.
    virtual SessionId subscribe_query(std::string_view text, const NameDirectory& names) = 0;

    /// Removes and returns up to max queued deliveries, oldest first.
    virtual std::vector<Delivery> poll(SessionId sid, size_t max) = 0;

    /// Cancels the periodic re-query and discards the queue. Idempotent.
    virtual void unsubscribe(SessionId sid) = 0;

    virtual SessionError session_error(SessionId sid) const = 0;
};

class Node : public NodeApi {
public:
    Node(Simulator& sim, Peer& peer) : sim_(sim), peer_(peer) {}

    uint64_t now() const override { return sim_.now(); }
    std::vector<PublishReceipt> publish(const std::vector<Tuple>& tuples,
                                        const KeyPair* kp = nullptr) override;
    SessionId subscribe_template(const FilterTemplate& f) override;
    SessionId subscribe_query(std::string_view text, const NameDirectory& names) override;
    std::vector<Delivery> poll(SessionId sid, size_t max) override;
    void unsubscribe(SessionId sid) override;
    SessionError session_error(SessionId sid) const override;

    Peer& peer() { return peer_; }

    /// Dropped-oldest counter across all of this node's sessions (only
    /// nonzero when a session queue cap is configured).
    size_t dropped_deliveries() const { return dropped_; }

private:
    struct QueryState {
        Query compiled;  // after reordering
        ReteNetwork net;
        std::vector<SessionId> children;

        explicit QueryState(Query q) : compiled(q), net(std::move(q)) {}
    };

    struct Session {
        SessionId id = 0;
        bool open = true;
        FilterTemplate templ;
        std::set<Bits128> seen;
        std::deque<Delivery> queue;
        uint64_t period_us = 0;
        TimerHandle timer;
        SessionError error = SessionError::None;
        SessionId parent = 0;  // nonzero for the internal children of a query
        std::unique_ptr<QueryState> query;
    };

    Session* find_open(SessionId sid);
    const Session* find_session(SessionId sid) const;
    SessionId open_template_session(const FilterTemplate& f, SessionId parent);
    void requery(SessionId sid);
    void on_lookup(SessionId sid, LookupResult result);
    void enqueue(Session& s, Delivery d);

    Simulator& sim_;
    Peer& peer_;
    std::map<SessionId, Session> sessions_;
    SessionId next_session_ = 1;
    size_t dropped_ = 0;
};

}  // namespace gs
