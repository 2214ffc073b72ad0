#pragma once

#include <vector>

#include "gs/bytes.hpp"
#include "gs/tuple.hpp"

namespace gs {

// Packet layout, all multi-byte integers big-endian:
//
//   magic 0x47 0x53, version 0x01,
//   flags (bit0 object-is-value, bit1 signer-present, bits 2-7 zero),
//   subject 16B, predicate 16B,
//   object slot 16B (vertex label, or the value type label when bit0 set),
//   context 16B, timestamp 8B,
//   signer 16B (iff bit1),
//   payload-length 4B (zero when the object is a label),
//   payload bytes,
//   signature 64B (iff bit1).
//
// Files of concatenated packets use the .gsp extension.

namespace wire {
constexpr uint8_t kMagic0 = 0x47;  // 'G'
constexpr uint8_t kMagic1 = 0x53;  // 'S'
constexpr uint8_t kVersion = 0x01;
constexpr uint8_t kFlagObjectIsValue = 0x01;
constexpr uint8_t kFlagSignerPresent = 0x02;
constexpr size_t kUnsignedHeaderSize = 80;  // magic..timestamp + payload-length
}  // namespace wire

/// Canonical byte encoding of one tuple. Equal tuples produce identical
/// bytes; this is what tuple identity and signatures are defined over.
Bytes encode(const Tuple& t);

/// The bytes a signature covers: everything encode() emits except the
/// trailing signature itself (the signer field and its flag bit included).
Bytes signing_bytes(const Tuple& t);

/// Decodes exactly one packet; trailing bytes are an error.
Tuple decode(ByteView bytes);

/// Decodes a back-to-back sequence of packets (e.g. a .gsp file).
std::vector<Tuple> decode_stream(ByteView bytes);

/// 128-bit digest of the packet bytes with the signature excluded.
/// Equal tuples hash equal; used for de-duplication everywhere.
Bits128 canonical_hash(const Tuple& t);

/// 128-bit digest of a value's (type label, payload) pair; the object
/// component of a value-object tuple's DHT address.
Bits128 value_digest(const Value& v);

Bits128 digest128(ByteView bytes);

}  // namespace gs
