#pragma once

#include <functional>
#include <map>
#include <memory>

#include "gs/interleave.hpp"
#include "gs/messages.hpp"
#include "gs/sim.hpp"
#include "gs/trie.hpp"

namespace gs {

enum class OpStatus {
    Ok,
    Unreachable,           // remote peers were attempted, none responded
    BranchBudgetExceeded,  // 2^wildcards over the configured cap
};

struct StoreResult {
    OpStatus status = OpStatus::Ok;
    size_t replicas = 0;  // peers (self included) that stored the tuple
};

struct LookupResult {
    OpStatus status = OpStatus::Ok;
    std::vector<Tuple> tuples;  // deduplicated, canonical-hash order
    size_t branches = 0;        // concretized prefixes contacted
};

/// One DHT participant: routing table, local trie store, and the iterative
/// Kademlia machinery, all driven by simulator events. Operations are
/// asynchronous; callbacks fire when the operation settles.
class Peer {
public:
    Peer(Simulator& sim, size_t index, NodeId id);
    ~Peer();

    const NodeId& id() const { return id_; }
    size_t index() const { return index_; }
    RoutingTable& table() { return table_; }
    const RoutingTable& table() const { return table_; }
    TrieStore& local_store() { return store_; }
    const TrieStore& local_store() const { return store_; }

    /// Finds the K closest peers to the tuple's address and stores the
    /// tuple on each (self included when it qualifies).
    void store_tuple(const Tuple& t, std::function<void(StoreResult)> done);

    /// Wildcard-branching lookup: concretizes every don't-care among the
    /// first B = ceil(log2 N)+k_slack positions, routes each branch to the
    /// K closest peers, and unions their full-pattern trie scans.
    void lookup(const LookupPattern& pattern, std::function<void(LookupResult)> done);

    /// Exact-address lookup; equivalent to a zero-wildcard pattern lookup.
    void lookup_exact(const InterleavedAddress& addr, std::function<void(LookupResult)> done);

    void ping(const NodeId& target, std::function<void(bool)> done);

    /// Inserts the bootstrap contact and looks up our own id.
    void join(const NodeId& bootstrap, std::function<void()> done);

    /// Self-lookup to densify routing tables.
    void refresh(std::function<void()> done);

    void handle_datagram(const Bytes& bytes);

private:
    struct NodeLookupState;
    struct StoreState;
    struct WildcardState;

    void send_request(const NodeId& to, Message msg,
                      std::function<void(std::optional<Message>)> reply_cb);
    void send_response(const NodeId& to, Message msg);
    void handle_request(const Message& m);

    struct ProbeStats {
        bool attempted = false;  // at least one remote was queried
        bool responded = false;  // at least one remote replied
    };

    /// Iterative FIND_NODE convergence; yields the responsive peers closest
    /// to the target (at most K, sorted by distance).
    void find_closest(const Bits512& target,
                      std::function<void(std::vector<NodeId>, ProbeStats)> done);

    unsigned effective_width() const;

    Simulator& sim_;
    size_t index_;
    NodeId id_;
    RoutingTable table_;
    TrieStore store_;

    struct PendingRpc {
        std::function<void(std::optional<Message>)> cb;
        TimerHandle timeout;
    };
    std::map<uint64_t, PendingRpc> pending_;
    uint64_t next_rpc_id_ = 1;
};

}  // namespace gs
