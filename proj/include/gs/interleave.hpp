#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gs/bits512.hpp"
#include "gs/filter.hpp"
#include "gs/tuple.hpp"

namespace gs {

/// A tuple's DHT key. Built only by interleave(); round-trips through
/// deinterleave().
using InterleavedAddress = Bits512;

/// MSB-first round-robin bit interleave of the four 128-bit components
/// (subject, predicate, object, context): output bit 4j+m is bit (127-j)
/// of component m. Every component thus contributes to the key prefix.
InterleavedAddress interleave(const std::array<Bits128, 4>& components);

std::array<Bits128, 4> deinterleave(const InterleavedAddress& addr);

/// The tuple's address: interleave of subject, predicate, object component
/// and context, where a value object contributes the 128-bit digest of its
/// (type, payload) pair. Timestamp, signer and signature are excluded, so
/// restatements of the same fact collide on address.
InterleavedAddress tuple_address(const Tuple& t);

/// 512 trits, one per address bit: 0, 1 or don't-care. Wildcard trits come
/// from whole wildcard components, interleaved into position.
struct LookupPattern {
    Bits512 bits;  // concrete bits; zero where wildcard
    Bits512 mask;  // 1 = wildcard at this position

    bool operator==(const LookupPattern&) const = default;

    bool is_wildcard(unsigned i) const { return mask.bit(i); }

    bool matches(const Bits512& addr) const {
        for (size_t b = 0; b < 64; ++b) {
            uint8_t diff = uint8_t((addr.bytes[b] ^ bits.bytes[b]) & ~mask.bytes[b]);
            if (diff) return false;
        }
        return true;
    }

    size_t wildcard_count(unsigned prefix_len = 512) const {
        size_t n = 0;
        for (unsigned i = 0; i < prefix_len; ++i)
            if (mask.bit(i)) ++n;
        return n;
    }

    /// Wire form: 2 bits per trit, 4 trits per byte, MSB first.
    /// 00 = zero, 01 = one, 10 = wildcard.
    std::array<uint8_t, 128> encode_trits() const;
    static std::optional<LookupPattern> decode_trits(const std::array<uint8_t, 128>& data);
};

/// The filter template reshuffled the same way as tuple addresses: exact
/// labels/values contribute their 128 bits (values via the digest),
/// wildcard components contribute 128 don't-cares.
LookupPattern pattern_address(const FilterTemplate& f);

/// Number of peers and slack that determine how many address bits actually
/// steer routing: B = ceil(log2 N) + k_slack, capped at 512.
struct EffectiveWidthParams {
    size_t n_peers = 1;
    unsigned k_slack = 3;

    unsigned effective_width() const;
};

/// Per-peer stored-tuple counts under N ideal, uniformly spaced peer ids
/// (tuples assigned to the XOR-closest id). A quick uniformity probe for
/// the interleaved key distribution.
std::vector<size_t> address_balance_report(const std::vector<Tuple>& tuples, size_t n_peers);

}  // namespace gs
