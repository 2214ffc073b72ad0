#include "gs/wire.hpp"

#include <sodium.h>

#include "gs/errors.hpp"

namespace gs {

namespace {

void put_label(Bytes& out, const Label& l) { out.insert(out.end(), l.bytes.begin(), l.bytes.end()); }

Bytes encode_without_signature(const Tuple& t) {
    const Value* v = as_value(t.object);
    if (v && !v->well_formed()) throw MalformedTuple("object value payload violates its declared type");

    Bytes out;
    out.reserve(wire::kUnsignedHeaderSize + (v ? v->payload.size() : 0) + (t.signer ? 16 : 0));
    out.push_back(wire::kMagic0);
    out.push_back(wire::kMagic1);
    out.push_back(wire::kVersion);
    uint8_t flags = 0;
    if (v) flags |= wire::kFlagObjectIsValue;
    if (t.signer) flags |= wire::kFlagSignerPresent;
    out.push_back(flags);
    put_label(out, t.subject);
    put_label(out, t.predicate);
    put_label(out, v ? v->type : *as_label(t.object));
    put_label(out, t.context);
    put_u64_be(out, t.timestamp_us);
    if (t.signer) put_label(out, *t.signer);
    if (v) {
        put_u32_be(out, static_cast<uint32_t>(v->payload.size()));
        out.insert(out.end(), v->payload.begin(), v->payload.end());
    } else {
        put_u32_be(out, 0);  // the "non-value" encoding
    }
    return out;
}

struct Reader {
    ByteView data;
    size_t pos = 0;

    void need(size_t n) {
        if (pos + n > data.size())
            throw DecodeError(DecodeErrorKind::Truncated, "packet truncated", pos);
    }
    uint8_t u8() {
        need(1);
        return data[pos++];
    }
    Label label() {
        need(16);
        Label l;
        std::copy(data.begin() + pos, data.begin() + pos + 16, l.bytes.begin());
        pos += 16;
        return l;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = get_u64_be(data.data() + pos);
        pos += 8;
        return v;
    }
    uint32_t u32() {
        need(4);
        uint32_t v = get_u32_be(data.data() + pos);
        pos += 4;
        return v;
    }
    Bytes take(size_t n) {
        need(n);
        Bytes out(data.begin() + pos, data.begin() + pos + n);
        pos += n;
        return out;
    }
};

Tuple decode_one(Reader& r) {
    size_t start = r.pos;
    if (r.u8() != wire::kMagic0 || r.u8() != wire::kMagic1)
        throw DecodeError(DecodeErrorKind::BadMagic, "bad magic", start);
    if (uint8_t ver = r.u8(); ver != wire::kVersion)
        throw DecodeError(DecodeErrorKind::BadVersion,
                          "unsupported version " + std::to_string(ver), start + 2);
    uint8_t flags = r.u8();
    if (flags & ~(wire::kFlagObjectIsValue | wire::kFlagSignerPresent))
        throw DecodeError(DecodeErrorKind::InconsistentFlags, "reserved flag bits set", start + 3);

    Tuple t;
    t.subject = r.label();
    t.predicate = r.label();
    Label object_slot = r.label();
    t.context = r.label();
    t.timestamp_us = r.u64();
    if (flags & wire::kFlagSignerPresent) t.signer = r.label();
    uint32_t payload_len = r.u32();

    if (flags & wire::kFlagObjectIsValue) {
        if (auto w = value_types::fixed_width(object_slot); w && payload_len != *w)
            throw DecodeError(DecodeErrorKind::InconsistentFlags,
                              "payload length inconsistent with value type", start);
        Value v{object_slot, r.take(payload_len)};
        if (!v.well_formed())
            throw DecodeError(DecodeErrorKind::MalformedValue, "payload violates value type", start);
        t.object = std::move(v);
    } else {
        if (payload_len != 0)
            throw DecodeError(DecodeErrorKind::InconsistentFlags,
                              "nonzero payload length with label object", start);
        t.object = object_slot;
    }
    if (flags & wire::kFlagSignerPresent) {
        Bytes sig = r.take(64);
        Signature s;
        std::copy(sig.begin(), sig.end(), s.begin());
        t.signature = s;
    }
    return t;
}

}  // namespace

Bytes encode(const Tuple& t) {
    if (t.signer.has_value() != t.signature.has_value())
        throw MalformedTuple("signature present iff signer present");
    Bytes out = encode_without_signature(t);
    if (t.signature) out.insert(out.end(), t.signature->begin(), t.signature->end());
    return out;
}

Bytes signing_bytes(const Tuple& t) { return encode_without_signature(t); }

Tuple decode(ByteView bytes) {
    Reader r{bytes};
    Tuple t = decode_one(r);
    if (r.pos != bytes.size())
        throw DecodeError(DecodeErrorKind::TrailingGarbage, "trailing bytes after packet", r.pos);
    return t;
}

std::vector<Tuple> decode_stream(ByteView bytes) {
    Reader r{bytes};
    std::vector<Tuple> out;
    while (r.pos < bytes.size()) out.push_back(decode_one(r));
    return out;
}

Bits128 digest128(ByteView bytes) {
    Bits128 out;
    crypto_generichash(out.data(), out.size(), bytes.data(), bytes.size(), nullptr, 0);
    return out;
}

Bits128 canonical_hash(const Tuple& t) { return digest128(signing_bytes(t)); }

Bits128 value_digest(const Value& v) {
    Bytes buf;
    buf.reserve(16 + v.payload.size());
    buf.insert(buf.end(), v.type.bytes.begin(), v.type.bytes.end());
    buf.insert(buf.end(), v.payload.begin(), v.payload.end());
    return digest128(buf);
}

}  // namespace gs
