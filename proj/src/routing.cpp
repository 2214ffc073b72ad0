#include "gs/routing.hpp"

#include <algorithm>

namespace gs {

std::optional<size_t> RoutingTable::bucket_index(const NodeId& peer) const {
    int hb = xor_distance(self_, peer).highest_bit();
    if (hb < 0) return std::nullopt;  // self
    return size_t(hb);
}

void RoutingTable::update(const NodeId& peer) {
    auto idx = bucket_index(peer);
    if (!idx) return;
    std::vector<NodeId>& b = buckets_[*idx];
    auto it = std::find(b.begin(), b.end(), peer);
    if (it != b.end()) {
        b.erase(it);
        b.push_back(peer);  // most recently seen last
        return;
    }
    if (b.size() < k_) b.push_back(peer);
}

std::vector<NodeId> RoutingTable::closest(const Bits512& target, size_t count) const {
    std::vector<NodeId> all;
    for (const auto& b : buckets_) all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end(), [&](const NodeId& a, const NodeId& b2) {
        return xor_distance(a, target) < xor_distance(b2, target);
    });
    if (all.size() > count) all.resize(count);
    return all;
}

bool RoutingTable::contains(const NodeId& peer) const {
    auto idx = bucket_index(peer);
    if (!idx) return false;
    const auto& b = buckets_[*idx];
    return std::find(b.begin(), b.end(), peer) != b.end();
}

size_t RoutingTable::size() const {
    size_t n = 0;
    for (const auto& b : buckets_) n += b.size();
    return n;
}

}  // namespace gs
