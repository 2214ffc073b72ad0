#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "gs/interleave.hpp"
#include "gs/wire.hpp"

namespace gs {

/// A peer's local tuple store: a binary trie keyed by interleaved address.
/// Internal nodes exist only at distinguishing bit positions (crit-bit
/// style); each leaf holds the set of tuples stored under one address,
/// keyed by canonical hash. Wildcard scans descend both children at
/// don't-care positions.
class TrieStore {
public:
    TrieStore() = default;

    /// Returns true when the tuple was new (set semantics per address).
    bool insert(const Tuple& t) { return insert(tuple_address(t), t); }
    bool insert(const InterleavedAddress& addr, const Tuple& t);

    /// Exactly the tuples stored under addr, in canonical-hash order.
    std::vector<Tuple> lookup(const InterleavedAddress& addr) const;

    /// Every stored tuple whose address matches the pattern, deduplicated
    /// and ordered by canonical hash. Equivalent to a linear scan filter.
    std::vector<Tuple> scan(const LookupPattern& pattern) const;

    void for_each(const std::function<void(const InterleavedAddress&, const Tuple&)>& fn) const;

    size_t size() const { return size_; }        // stored tuples
    size_t address_count() const { return leaves_; }

private:
    struct Node {
        // leaf iff children are empty
        unsigned crit_bit = 0;  // internal: position where children diverge
        std::unique_ptr<Node> zero, one;
        InterleavedAddress key;                // leaf only
        std::map<Bits128, Tuple> tuples;       // leaf only
        bool is_leaf() const { return !zero && !one; }
    };

    static void scan_node(const Node* n, const LookupPattern& p,
                          std::map<Bits128, const Tuple*>& acc);
    static void visit(const Node* n,
                      const std::function<void(const InterleavedAddress&, const Tuple&)>& fn);

    std::unique_ptr<Node> root_;
    size_t size_ = 0;
    size_t leaves_ = 0;
};

}  // namespace gs
