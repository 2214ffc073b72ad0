#include "gs/sim.hpp"

#include <json.hpp>

#include "gs/errors.hpp"
#include "gs/node.hpp"
#include "gs/peer.hpp"
#include "gs/wire.hpp"

namespace gs {

namespace {

NodeId draw_node_id(std::mt19937_64& rng) {
    NodeId id;
    for (int i = 0; i < 64; i += 8) {
        uint64_t w = rng();
        for (int j = 0; j < 8; ++j) id.bytes[i + j] = uint8_t(w >> (56 - 8 * j));
    }
    return id;
}

}  // namespace

Simulator::Simulator(const SimConfig& cfg) : cfg_(cfg), net_rng_(cfg.seed) {
    if (cfg_.peers < 1) throw Error("peer count must be >= 1");
    if (cfg_.latency_max_us < cfg_.latency_min_us) throw Error("latency range inverted");

    std::mt19937_64 id_rng(cfg_.seed ^ 0x9e3779b97f4a7c15ULL);
    for (size_t i = 0; i < cfg_.peers; ++i) {
        NodeId id = draw_node_id(id_rng);
        while (directory_.count(id)) id = draw_node_id(id_rng);
        peers_.push_back(std::make_unique<Peer>(*this, i, id));
        directory_[id] = i;
    }
    for (size_t i = 0; i < cfg_.peers; ++i)
        nodes_.push_back(std::make_unique<Node>(*this, *peers_[i]));

    // sequential bootstrap through peer 0, then one refresh round to
    // densify the tables
    for (size_t i = 1; i < cfg_.peers; ++i) {
        bool joined = false;
        peers_[i]->join(peers_[0]->id(), [&joined] { joined = true; });
        run_until_idle();
        (void)joined;
    }
    for (size_t i = 0; i < cfg_.peers; ++i) {
        peers_[i]->refresh([] {});
        run_until_idle();
    }
}

Simulator::~Simulator() = default;

double Simulator::next_unit_double() {
    return double(net_rng_() >> 11) * 0x1.0p-53;  // uniform in [0,1)
}

TimerHandle Simulator::schedule(uint64_t delay, std::function<void()> fn, bool periodic,
                                int peer) {
    TimerHandle h;
    h.state = std::make_shared<uint8_t>(0);
    h.periodic = periodic;
    Event ev{periodic, delay, peer, h.state, std::move(fn)};
    if (!periodic) ++nonperiodic_pending_;
    queue_.emplace(std::make_pair(now_ + delay, seq_++), std::move(ev));
    return h;
}

void Simulator::cancel(TimerHandle& h) {
    if (!h.state || *h.state != 0) return;
    *h.state = 1;
    if (!h.periodic) {
        // the queue entry still exists; account for it now
        if (nonperiodic_pending_ > 0) --nonperiodic_pending_;
    }
}

void Simulator::send_bytes(size_t from_index, const NodeId& to, Bytes bytes) {
    ++messages_sent_;
    trace_event(int(from_index), "send", bytes);
    auto it = directory_.find(to);
    if (it == directory_.end()) return;  // unknown destination: lost
    size_t to_index = it->second;

    double drop_draw = next_unit_double();
    uint64_t latency = cfg_.latency_min_us;
    if (cfg_.latency_max_us > cfg_.latency_min_us)
        latency += net_rng_() % (cfg_.latency_max_us - cfg_.latency_min_us + 1);
    if (drop_draw < cfg_.drop_rate) {
        trace_event(int(to_index), "drop", bytes);
        return;
    }
    auto payload = std::make_shared<Bytes>(std::move(bytes));
    schedule(
        latency,
        [this, to_index, payload] {
            trace_event(int(to_index), "deliver", *payload);
            peers_[to_index]->handle_datagram(*payload);
        },
        /*periodic=*/false, int(to_index));
}

void Simulator::trace_event(int peer, const char* kind, ByteView payload) {
    if (!trace_enabled_) return;
    TraceEvent ev;
    ev.t = now_;
    ev.peer = peer;
    ev.kind = kind;
    ev.digest = payload.empty() ? std::string() : to_hex(digest128(payload));
    trace_.push_back(std::move(ev));
}

void Simulator::dispatch(Event& ev, size_t& processed) {
    if (*ev.state != 0) return;  // cancelled
    if (!ev.periodic) {
        *ev.state = 2;
        if (nonperiodic_pending_ > 0) --nonperiodic_pending_;
    }
    ev.fn();
    if (++processed > cfg_.event_budget) throw SimBudgetExceeded(cfg_.event_budget);
}

uint64_t Simulator::run_until_idle() {
    size_t processed = 0;
    while (!queue_.empty() && nonperiodic_pending_ > 0) {
        auto it = queue_.begin();
        uint64_t t = it->first.first;
        Event ev = std::move(it->second);
        queue_.erase(it);
        if (*ev.state != 0) continue;  // dead event: no clock advance
        now_ = t;
        dispatch(ev, processed);
        if (ev.periodic && *ev.state == 0)
            queue_.emplace(std::make_pair(now_ + ev.interval, seq_++), std::move(ev));
    }
    return now_;
}

void Simulator::run_until(uint64_t t_end) {
    size_t processed = 0;
    while (!queue_.empty() && queue_.begin()->first.first <= t_end) {
        auto it = queue_.begin();
        uint64_t t = it->first.first;
        Event ev = std::move(it->second);
        queue_.erase(it);
        if (*ev.state != 0) continue;
        now_ = t;
        dispatch(ev, processed);
        if (ev.periodic && *ev.state == 0)
            queue_.emplace(std::make_pair(now_ + ev.interval, seq_++), std::move(ev));
    }
    if (t_end > now_) now_ = t_end;
}

std::vector<Tuple> Simulator::global_oracle_scan(const FilterTemplate& f) const {
    std::map<Bits128, Tuple> acc;
    for (const auto& p : peers_) {
        p->local_store().for_each([&](const InterleavedAddress&, const Tuple& t) {
            if (matches(f, t)) acc.emplace(canonical_hash(t), t);
        });
    }
    std::vector<Tuple> out;
    out.reserve(acc.size());
    for (auto& [h, t] : acc) out.push_back(t);
    return out;
}

std::vector<NodeId> Simulator::global_closest(const Bits512& target, size_t k) const {
    std::vector<NodeId> ids;
    ids.reserve(peers_.size());
    for (const auto& p : peers_) ids.push_back(p->id());
    std::sort(ids.begin(), ids.end(), [&](const NodeId& a, const NodeId& b) {
        return xor_distance(a, target) < xor_distance(b, target);
    });
    if (ids.size() > k) ids.resize(k);
    return ids;
}

void Simulator::write_trace_jsonl(std::ostream& out) const {
    for (const TraceEvent& ev : trace_) {
        nlohmann::json j;
        j["t"] = ev.t;
        j["peer"] = ev.peer;
        j["ev"] = ev.kind;
        j["digest"] = ev.digest;
        out << j.dump() << "\n";
    }
}

}  // namespace gs
