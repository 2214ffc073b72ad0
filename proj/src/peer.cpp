#include "gs/peer.hpp"

#include <algorithm>

#include "gs/errors.hpp"
#include "gs/wire.hpp"

namespace gs {

Peer::Peer(Simulator& sim, size_t index, NodeId id)
    : sim_(sim), index_(index), id_(id), table_(id, sim.config().k) {}

Peer::~Peer() = default;

unsigned Peer::effective_width() const {
    EffectiveWidthParams p;
    p.n_peers = sim_.config().n_estimate.value_or(sim_.config().peers);
    p.k_slack = sim_.config().k_slack;
    return p.effective_width();
}

void Peer::send_request(const NodeId& to, Message msg,
                        std::function<void(std::optional<Message>)> reply_cb) {
    msg.rpc_id = next_rpc_id_++;
    msg.sender = id_;
    uint64_t rpc_id = msg.rpc_id;

    PendingRpc pending;
    pending.cb = std::move(reply_cb);
    pending.timeout = sim_.schedule(
        sim_.config().rpc_timeout_us,
        [this, rpc_id] {
            auto it = pending_.find(rpc_id);
            if (it == pending_.end()) return;
            auto cb = std::move(it->second.cb);
            pending_.erase(it);
            cb(std::nullopt);
        },
        /*periodic=*/false, int(index_));
    pending_[rpc_id] = std::move(pending);
    sim_.send_bytes(index_, to, encode_message(msg));
}

void Peer::send_response(const NodeId& to, Message msg) {
    msg.sender = id_;
    sim_.send_bytes(index_, to, encode_message(msg));
}

void Peer::handle_datagram(const Bytes& bytes) {
    auto msg = decode_message(bytes);
    if (!msg) return;  // unparseable datagrams are dropped silently
    table_.update(msg->sender);
    if (msg->is_request()) {
        handle_request(*msg);
        return;
    }
    auto it = pending_.find(msg->rpc_id);
    if (it == pending_.end()) return;  // late reply, already timed out
    sim_.cancel(it->second.timeout);
    auto cb = std::move(it->second.cb);
    pending_.erase(it);
    cb(std::move(*msg));
}

void Peer::handle_request(const Message& m) {
    Message reply;
    reply.rpc_id = m.rpc_id;
    switch (m.type) {
        case MsgType::Ping:
            reply.type = MsgType::Pong;
            reply.payload = PongPayload{};
            break;
        case MsgType::Store: {
            const auto& p = std::get<StorePayload>(m.payload);
            try {
                Tuple t = decode(p.packet);
                store_.insert(t);
            } catch (const DecodeError&) {
                // bad packet: acknowledge nothing, still reply to unblock the sender
            }
            reply.type = MsgType::StoreOk;
            reply.payload = StoreOkPayload{};
            break;
        }
        case MsgType::FindNode: {
            const auto& p = std::get<FindNodePayload>(m.payload);
            reply.type = MsgType::Nodes;
            reply.payload = NodesPayload{table_.closest(p.target, table_.bucket_size())};
            break;
        }
        case MsgType::FindTuples: {
            const auto& p = std::get<FindTuplesPayload>(m.payload);
            TuplesPayload out;
            for (const Tuple& t : store_.scan(p.pattern)) out.packets.push_back(encode(t));
            reply.type = MsgType::Tuples;
            reply.payload = std::move(out);
            break;
        }
        default:
            return;
    }
    send_response(m.sender, std::move(reply));
}

// ---------------------------------------------------------------------------
// iterative node lookup

struct Peer::NodeLookupState : std::enable_shared_from_this<Peer::NodeLookupState> {
    enum CandState { Fresh, InFlight, Done, Failed };
    struct Cand {
        NodeId id;
        CandState state = Fresh;
    };

    Peer* peer;
    Bits512 target;
    size_t k, alpha;
    std::vector<Cand> cands;  // sorted by distance to target
    size_t inflight = 0;
    Peer::ProbeStats stats;
    bool finished = false;
    std::function<void(std::vector<NodeId>, Peer::ProbeStats)> done;

    void add_candidate(const NodeId& id) {
        if (id == peer->id()) return;
        for (const Cand& c : cands)
            if (c.id == id) return;
        Cand nc{id, Fresh};
        auto pos = std::lower_bound(cands.begin(), cands.end(), nc,
                                    [&](const Cand& a, const Cand& b) {
                                        return xor_distance(a.id, target) <
                                               xor_distance(b.id, target);
                                    });
        cands.insert(pos, nc);
    }

    void step() {
        if (finished) return;
        // query fresh candidates among the k closest non-failed, alpha at a time;
        // fresh candidates beyond the k closest never get queried
        size_t considered = 0;
        bool fresh_waiting = false;
        for (Cand& c : cands) {
            if (c.state == Failed) continue;
            if (considered++ >= k) break;
            if (c.state != Fresh) continue;
            if (inflight < alpha)
                launch(c);
            else
                fresh_waiting = true;
        }
        if (inflight == 0 && !fresh_waiting) finish();
    }

    void launch(Cand& c) {
        c.state = InFlight;
        ++inflight;
        stats.attempted = true;
        NodeId target_id = c.id;
        Message req;
        req.type = MsgType::FindNode;
        req.payload = FindNodePayload{target};
        auto self = shared_from_this();
        peer->send_request(target_id, std::move(req),
                           [self, target_id](std::optional<Message> reply) {
                               self->on_reply(target_id, std::move(reply));
                           });
    }

    void on_reply(const NodeId& from, std::optional<Message> reply) {
        --inflight;
        for (Cand& c : cands) {
            if (c.id != from) continue;
            c.state = (reply && reply->type == MsgType::Nodes) ? Done : Failed;
            break;
        }
        if (reply && reply->type == MsgType::Nodes) {
            stats.responded = true;
            for (const NodeId& id : std::get<NodesPayload>(reply->payload).nodes)
                add_candidate(id);
        }
        step();
    }

    void finish() {
        if (finished) return;
        finished = true;
        std::vector<NodeId> out;
        for (const Cand& c : cands) {
            if (c.state != Done) continue;
            out.push_back(c.id);
            if (out.size() == k) break;
        }
        done(std::move(out), stats);
    }
};

void Peer::find_closest(const Bits512& target,
                        std::function<void(std::vector<NodeId>, ProbeStats)> done) {
    auto st = std::make_shared<NodeLookupState>();
    st->peer = this;
    st->target = target;
    st->k = sim_.config().k;
    st->alpha = sim_.config().alpha;
    st->done = std::move(done);
    for (const NodeId& id : table_.closest(target, st->k)) st->add_candidate(id);
    if (st->cands.empty()) {
        st->finished = true;
        st->done({}, ProbeStats{});
        return;
    }
    st->step();
}

void Peer::join(const NodeId& bootstrap, std::function<void()> done) {
    table_.update(bootstrap);
    refresh(std::move(done));
}

void Peer::refresh(std::function<void()> done) {
    find_closest(id_, [done = std::move(done)](std::vector<NodeId>, ProbeStats) { done(); });
}

void Peer::ping(const NodeId& target, std::function<void(bool)> done) {
    Message req;
    req.type = MsgType::Ping;
    req.payload = PingPayload{};
    send_request(target, std::move(req), [done = std::move(done)](std::optional<Message> reply) {
        done(reply && reply->type == MsgType::Pong);
    });
}

// ---------------------------------------------------------------------------
// store

struct Peer::StoreState : std::enable_shared_from_this<Peer::StoreState> {
    Peer* peer;
    Tuple tuple;
    size_t outstanding = 0;
    size_t replicas = 0;
    Peer::ProbeStats stats;
    std::function<void(StoreResult)> done;

    void settle() {
        if (outstanding > 0) return;
        StoreResult r;
        r.replicas = replicas;
        r.status = (stats.attempted && !stats.responded) ? OpStatus::Unreachable : OpStatus::Ok;
        done(r);
    }
};

void Peer::store_tuple(const Tuple& t, std::function<void(StoreResult)> done) {
    auto st = std::make_shared<StoreState>();
    st->peer = this;
    st->tuple = t;
    st->done = std::move(done);
    const Bits512 addr = tuple_address(t);

    find_closest(addr, [this, st, addr](std::vector<NodeId> closest, ProbeStats stats) {
        st->stats = stats;
        // storage set: responsive peers plus self, k closest to the address
        std::vector<NodeId> targets = std::move(closest);
        targets.push_back(id_);
        std::sort(targets.begin(), targets.end(), [&](const NodeId& a, const NodeId& b) {
            return xor_distance(a, addr) < xor_distance(b, addr);
        });
        if (targets.size() > sim_.config().k) targets.resize(sim_.config().k);

        Bytes packet = encode(st->tuple);
        st->outstanding = 1;  // guard against synchronous completion
        for (const NodeId& id : targets) {
            if (id == id_) {
                store_.insert(st->tuple);
                ++st->replicas;
                continue;
            }
            ++st->outstanding;
            st->stats.attempted = true;
            Message req;
            req.type = MsgType::Store;
            req.payload = StorePayload{packet};
            send_request(id, std::move(req), [st](std::optional<Message> reply) {
                --st->outstanding;
                if (reply && reply->type == MsgType::StoreOk) {
                    ++st->replicas;
                    st->stats.responded = true;
                }
                st->settle();
            });
        }
        --st->outstanding;
        st->settle();
    });
}

// ---------------------------------------------------------------------------
// wildcard-branching lookup

struct Peer::WildcardState : std::enable_shared_from_this<Peer::WildcardState> {
    Peer* peer;
    LookupPattern pattern;
    size_t branches = 0;
    size_t outstanding_branches = 0;
    Peer::ProbeStats stats;
    std::map<Bits128, Tuple> found;
    std::function<void(LookupResult)> done;

    void merge_packets(const std::vector<Bytes>& packets) {
        for (const Bytes& p : packets) {
            try {
                Tuple t = decode(p);
                found.emplace(canonical_hash(t), std::move(t));
            } catch (const DecodeError&) {
            }
        }
    }

    void settle() {
        if (outstanding_branches > 0) return;
        LookupResult r;
        r.branches = branches;
        r.status = (stats.attempted && !stats.responded) ? OpStatus::Unreachable : OpStatus::Ok;
        r.tuples.reserve(found.size());
        for (auto& [h, t] : found) r.tuples.push_back(std::move(t));
        done(std::move(r));
    }
};

void Peer::lookup(const LookupPattern& pattern, std::function<void(LookupResult)> done) {
    auto st = std::make_shared<WildcardState>();
    st->peer = this;
    st->pattern = pattern;
    st->done = std::move(done);

    const unsigned width = effective_width();
    std::vector<unsigned> wild_positions;
    for (unsigned i = 0; i < width; ++i)
        if (pattern.is_wildcard(i)) wild_positions.push_back(i);

    if (wild_positions.size() >= 63 ||
        (size_t(1) << wild_positions.size()) > sim_.config().branch_cap) {
        LookupResult r;
        r.status = OpStatus::BranchBudgetExceeded;
        r.branches = 0;
        done(std::move(r));
        return;
    }

    const size_t n_branches = size_t(1) << wild_positions.size();
    st->branches = n_branches;
    st->outstanding_branches = n_branches;

    // local answer is always part of the union
    for (const Tuple& t : store_.scan(pattern)) st->found.emplace(canonical_hash(t), t);

    for (size_t combo = 0; combo < n_branches; ++combo) {
        // concretize the prefix wildcards; the rest route as zeros
        Bits512 addr = pattern.bits;
        for (size_t j = 0; j < wild_positions.size(); ++j)
            addr.set_bit(wild_positions[j], (combo >> j) & 1);

        find_closest(addr, [this, st](std::vector<NodeId> closest, ProbeStats stats) {
            st->stats.attempted |= stats.attempted;
            st->stats.responded |= stats.responded;
            if (closest.empty()) {
                --st->outstanding_branches;
                st->settle();
                return;
            }
            auto fetches = std::make_shared<size_t>(closest.size());
            for (const NodeId& id : closest) {
                st->stats.attempted = true;
                Message req;
                req.type = MsgType::FindTuples;
                req.payload = FindTuplesPayload{st->pattern};
                send_request(id, std::move(req), [st, fetches](std::optional<Message> reply) {
                    if (reply && reply->type == MsgType::Tuples) {
                        st->stats.responded = true;
                        st->merge_packets(std::get<TuplesPayload>(reply->payload).packets);
                    }
                    if (--*fetches == 0) {
                        --st->outstanding_branches;
                        st->settle();
                    }
                });
            }
        });
    }
}

void Peer::lookup_exact(const InterleavedAddress& addr, std::function<void(LookupResult)> done) {
    LookupPattern p;
    p.bits = addr;  // zero wildcards
    lookup(p, std::move(done));
}

}  // namespace gs
