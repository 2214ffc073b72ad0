#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "gs/bytes.hpp"
#include "gs/filter.hpp"
#include "gs/routing.hpp"
#include "gs/tuple.hpp"

namespace gs {

class Peer;
class Node;

struct SimConfig {
    uint64_t seed = 1;
    size_t peers = 1;
    uint64_t latency_min_us = 1000;  // per-hop virtual delay, uniform in [min, max]
    uint64_t latency_max_us = 1000;
    double drop_rate = 0.0;

    size_t k = 20;      // replication / bucket size
    size_t alpha = 3;   // lookup concurrency
    size_t branch_cap = 4096;
    unsigned k_slack = 3;
    std::optional<size_t> n_estimate;  // effective-width N; defaults to `peers`

    uint64_t rpc_timeout_us = 200'000;
    uint64_t period_us = 1'000'000;  // session re-query period
    std::optional<size_t> session_queue_cap;
    size_t event_budget = 20'000'000;  // livelock guard, per run call
};

struct TraceEvent {
    uint64_t t;
    int peer;
    std::string kind;
    std::string digest;

    bool operator==(const TraceEvent&) const = default;
};

/// Handle for a scheduled event; cancel() makes the event a no-op.
struct TimerHandle {
    std::shared_ptr<uint8_t> state;  // 0 pending, 1 cancelled, 2 fired
    bool periodic = false;

    bool pending() const { return state && *state == 0; }
};

/// Deterministic discrete-event harness hosting the peers. One event at a
/// time, ties broken by schedule order; identical config and script give a
/// bit-identical event trace.
class Simulator {
public:
    explicit Simulator(const SimConfig& cfg);
    ~Simulator();

    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    uint64_t now() const { return now_; }
    size_t peer_count() const { return peers_.size(); }
    Peer& peer(size_t i) { return *peers_[i]; }
    const Peer& peer(size_t i) const { return *peers_[i]; }
    Node& node(size_t i) { return *nodes_[i]; }
    const SimConfig& config() const { return cfg_; }

    /// Processes events until none but periodic timers remain; returns the
    /// virtual time reached. Throws SimBudgetExceeded on livelock.
    uint64_t run_until_idle();

    /// Processes everything scheduled up to and including `t` (periodic
    /// timers and their cascades too) and advances the clock to `t`.
    void run_until(uint64_t t);
    void run_for(uint64_t dt) { run_until(now_ + dt); }

    // --- test oracles and instrumentation ---

    /// Ground truth: the union over every peer's trie of tuples matching f.
    std::vector<Tuple> global_oracle_scan(const FilterTemplate& f) const;

    /// The k peer ids closest to target by XOR distance, over all peers.
    std::vector<NodeId> global_closest(const Bits512& target, size_t k) const;

    size_t messages_sent() const { return messages_sent_; }
    void set_drop_rate(double r) { cfg_.drop_rate = r; }

    void enable_trace(bool on) { trace_enabled_ = on; }
    const std::vector<TraceEvent>& trace() const { return trace_; }
    void write_trace_jsonl(std::ostream& out) const;

    // --- surface used by peers and nodes ---

    TimerHandle schedule(uint64_t delay, std::function<void()> fn, bool periodic = false,
                         int peer = -1);
    void cancel(TimerHandle& h);
    void send_bytes(size_t from_index, const NodeId& to, Bytes bytes);
    void trace_event(int peer, const char* kind, ByteView payload);

private:
    struct Event {
        bool periodic;
        uint64_t interval;  // reschedule step for periodic events
        int peer;
        std::shared_ptr<uint8_t> state;
        std::function<void()> fn;
    };

    void dispatch(Event& ev, size_t& processed);
    double next_unit_double();

    SimConfig cfg_;
    uint64_t now_ = 0;
    uint64_t seq_ = 0;
    size_t nonperiodic_pending_ = 0;
    size_t messages_sent_ = 0;
    std::map<std::pair<uint64_t, uint64_t>, Event> queue_;  // (time, seq) -> event
    std::mt19937_64 net_rng_;
    std::vector<std::unique_ptr<Peer>> peers_;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::map<NodeId, size_t> directory_;
    bool trace_enabled_ = false;
    std::vector<TraceEvent> trace_;
};

}  // namespace gs
