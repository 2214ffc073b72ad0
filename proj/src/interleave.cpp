#include "gs/interleave.hpp"

#include <bit>

#include "gs/errors.hpp"
#include "gs/wire.hpp"

namespace gs {

InterleavedAddress interleave(const std::array<Bits128, 4>& components) {
    InterleavedAddress out;
    for (unsigned j = 0; j < 128; ++j) {
        for (unsigned m = 0; m < 4; ++m) {
            unsigned src = 127 - j;  // MSB first
            bool b = (components[m][src >> 3] >> (7 - (src & 7))) & 1;
            out.set_bit(4 * j + m, b);
        }
    }
    return out;
}

std::array<Bits128, 4> deinterleave(const InterleavedAddress& addr) {
    std::array<Bits128, 4> out{};
    for (unsigned j = 0; j < 128; ++j) {
        for (unsigned m = 0; m < 4; ++m) {
            if (!addr.bit(4 * j + m)) continue;
            unsigned dst = 127 - j;
            out[m][dst >> 3] |= uint8_t(1u << (7 - (dst & 7)));
        }
    }
    return out;
}

namespace {

Bits128 object_component(const NodeRef& o) {
    if (const Label* l = as_label(o)) return l->bytes;
    return value_digest(*as_value(o));
}

}  // namespace

InterleavedAddress tuple_address(const Tuple& t) {
    return interleave(
        {t.subject.bytes, t.predicate.bytes, object_component(t.object), t.context.bytes});
}

LookupPattern pattern_address(const FilterTemplate& f) {
    std::array<Bits128, 4> comp_bits{};
    std::array<bool, 4> comp_wild{};
    const Slot* slots[4] = {&f.subject, &f.predicate, &f.object, &f.context};
    for (unsigned m = 0; m < 4; ++m) {
        if (is_wildcard(*slots[m])) {
            comp_wild[m] = true;
        } else if (const Label* l = std::get_if<Label>(slots[m])) {
            comp_bits[m] = l->bytes;
        } else {
            comp_bits[m] = value_digest(std::get<Value>(*slots[m]));
        }
    }
    LookupPattern p;
    p.bits = interleave(comp_bits);
    std::array<Bits128, 4> wild_bits{};
    for (unsigned m = 0; m < 4; ++m)
        if (comp_wild[m]) wild_bits[m].fill(0xFF);
    p.mask = interleave(wild_bits);
    return p;
}

std::array<uint8_t, 128> LookupPattern::encode_trits() const {
    std::array<uint8_t, 128> out{};
    for (unsigned i = 0; i < 512; ++i) {
        uint8_t trit = mask.bit(i) ? 2 : (bits.bit(i) ? 1 : 0);
        out[i >> 2] |= uint8_t(trit << (6 - 2 * (i & 3)));
    }
    return out;
}

std::optional<LookupPattern> LookupPattern::decode_trits(const std::array<uint8_t, 128>& data) {
    LookupPattern p;
    for (unsigned i = 0; i < 512; ++i) {
        uint8_t trit = (data[i >> 2] >> (6 - 2 * (i & 3))) & 3;
        if (trit == 3) return std::nullopt;
        if (trit == 2)
            p.mask.set_bit(i, true);
        else
            p.bits.set_bit(i, trit == 1);
    }
    return p;
}

unsigned EffectiveWidthParams::effective_width() const {
    unsigned b = k_slack;
    if (n_peers > 1) b += unsigned(std::bit_width(n_peers - 1));  // ceil(log2 n)
    return b > 512 ? 512 : b;
}

std::vector<size_t> address_balance_report(const std::vector<Tuple>& tuples, size_t n_peers) {
    if (n_peers == 0) throw Error("peer count must be positive");
    // ideal ids: top 64 bits evenly spaced, remainder zero
    std::vector<Bits512> ids(n_peers);
    for (size_t i = 0; i < n_peers; ++i) {
        uint64_t top = uint64_t((static_cast<unsigned __int128>(i) << 64) / n_peers);
        for (int b = 0; b < 8; ++b) ids[i].bytes[b] = uint8_t(top >> (56 - 8 * b));
    }
    std::vector<size_t> counts(n_peers, 0);
    for (const Tuple& t : tuples) {
        Bits512 addr = tuple_address(t);
        size_t best = 0;
        Bits512 best_d = xor_distance(addr, ids[0]);
        for (size_t i = 1; i < n_peers; ++i) {
            Bits512 d = xor_distance(addr, ids[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        ++counts[best];
    }
    return counts;
}

}  // namespace gs
