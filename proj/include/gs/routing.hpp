#pragma once

#include <optional>
#include <vector>

#include "gs/bits512.hpp"

namespace gs {

using NodeId = Bits512;

/// Kademlia k-buckets over 512-bit XOR distance. Bucket i holds peers whose
/// distance to the owner lies in [2^i, 2^(i+1)); entries are ordered least
/// recently seen first. A full bucket keeps its existing (responsive)
/// entries and drops the newcomer; the network here is churn-free.
class RoutingTable {
public:
    RoutingTable(NodeId self, size_t bucket_size) : self_(self), k_(bucket_size) {
        buckets_.resize(512);
    }

    const NodeId& self() const { return self_; }
    size_t bucket_size() const { return k_; }

    /// Records contact with a peer. Refreshes its recency if known, appends
    /// if the bucket has room, otherwise drops it. Self is ignored.
    void update(const NodeId& peer);

    /// The `count` known peers closest to target by XOR distance.
    std::vector<NodeId> closest(const Bits512& target, size_t count) const;

    bool contains(const NodeId& peer) const;
    size_t size() const;

    /// Bucket index for a peer: floor(log2(distance)), or nullopt for self.
    std::optional<size_t> bucket_index(const NodeId& peer) const;

    const std::vector<NodeId>& bucket(size_t i) const { return buckets_[i]; }

private:
    NodeId self_;
    size_t k_;
    std::vector<std::vector<NodeId>> buckets_;  // [i]: LRS first
};

}  // namespace gs
