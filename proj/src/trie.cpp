#include "gs/trie.hpp"

namespace gs {

namespace {

int first_diff_bit(const Bits512& a, const Bits512& b) {
    for (unsigned byte = 0; byte < 64; ++byte) {
        uint8_t d = a.bytes[byte] ^ b.bytes[byte];
        if (!d) continue;
        for (unsigned bit = 0; bit < 8; ++bit)
            if (d & (0x80u >> bit)) return int(byte * 8 + bit);
    }
    return -1;
}

}  // namespace

bool TrieStore::insert(const InterleavedAddress& addr, const Tuple& t) {
    const Bits128 h = canonical_hash(t);
    if (!root_) {
        root_ = std::make_unique<Node>();
        root_->key = addr;
        root_->tuples.emplace(h, t);
        ++leaves_;
        ++size_;
        return true;
    }
    // descend to the candidate leaf
    Node* n = root_.get();
    while (!n->is_leaf()) n = (addr.bit(n->crit_bit) ? n->one : n->zero).get();

    int diff = first_diff_bit(n->key, addr);
    if (diff < 0) {
        bool fresh = n->tuples.emplace(h, t).second;
        if (fresh) ++size_;
        return fresh;
    }

    // split: walk again from the root until the crit position passes diff
    auto leaf = std::make_unique<Node>();
    leaf->key = addr;
    leaf->tuples.emplace(h, t);
    ++leaves_;
    ++size_;

    std::unique_ptr<Node>* slot = &root_;
    while (*slot && !(*slot)->is_leaf() && int((*slot)->crit_bit) < diff)
        slot = addr.bit((*slot)->crit_bit) ? &(*slot)->one : &(*slot)->zero;

    auto inner = std::make_unique<Node>();
    inner->crit_bit = unsigned(diff);
    std::unique_ptr<Node> displaced = std::move(*slot);
    if (addr.bit(unsigned(diff))) {
        inner->one = std::move(leaf);
        inner->zero = std::move(displaced);
    } else {
        inner->zero = std::move(leaf);
        inner->one = std::move(displaced);
    }
    *slot = std::move(inner);
    return true;
}

std::vector<Tuple> TrieStore::lookup(const InterleavedAddress& addr) const {
    std::vector<Tuple> out;
    const Node* n = root_.get();
    if (!n) return out;
    while (!n->is_leaf()) n = (addr.bit(n->crit_bit) ? n->one : n->zero).get();
    if (n->key != addr) return out;
    out.reserve(n->tuples.size());
    for (const auto& [h, t] : n->tuples) out.push_back(t);
    return out;
}

void TrieStore::scan_node(const Node* n, const LookupPattern& p,
                          std::map<Bits128, const Tuple*>& acc) {
    if (!n) return;
    if (n->is_leaf()) {
        // skipped positions are unchecked during descent; verify in full
        if (!p.matches(n->key)) return;
        for (const auto& [h, t] : n->tuples) acc.emplace(h, &t);
        return;
    }
    if (p.is_wildcard(n->crit_bit)) {
        scan_node(n->zero.get(), p, acc);
        scan_node(n->one.get(), p, acc);
    } else if (p.bits.bit(n->crit_bit)) {
        scan_node(n->one.get(), p, acc);
    } else {
        scan_node(n->zero.get(), p, acc);
    }
}

std::vector<Tuple> TrieStore::scan(const LookupPattern& pattern) const {
    std::map<Bits128, const Tuple*> acc;
    scan_node(root_.get(), pattern, acc);
    std::vector<Tuple> out;
    out.reserve(acc.size());
    for (const auto& [h, t] : acc) out.push_back(*t);
    return out;
}

void TrieStore::visit(const Node* n,
                      const std::function<void(const InterleavedAddress&, const Tuple&)>& fn) {
    if (!n) return;
    if (n->is_leaf()) {
        for (const auto& [h, t] : n->tuples) fn(n->key, t);
        return;
    }
    visit(n->zero.get(), fn);
    visit(n->one.get(), fn);
}

void TrieStore::for_each(
    const std::function<void(const InterleavedAddress&, const Tuple&)>& fn) const {
    visit(root_.get(), fn);
}

}  // namespace gs
