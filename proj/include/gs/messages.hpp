#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gs/bytes.hpp"
#include "gs/interleave.hpp"
#include "gs/routing.hpp"

namespace gs {

// Peer wire messages (simulator transport). Versioned record encoding,
// big-endian:
//
//   u8 version (1), u8 type, u64 rpc-id, 64B sender id, payload:
//     PING / PONG / STORE_OK  : empty
//     STORE                   : u32 length, packet bytes
//     FIND_NODE               : 64B target
//     NODES                   : u16 count, count x 64B ids
//     FIND_TUPLES             : 128B pattern (2 bits per trit: 00=0, 01=1, 10=*)
//     TUPLES                  : u16 count, count x (u32 length, packet bytes)
//
// Stability matters only within one simulation run.

enum class MsgType : uint8_t {
    Ping = 1,
    Pong = 2,
    Store = 3,
    StoreOk = 4,
    FindNode = 5,
    Nodes = 6,
    FindTuples = 7,
    Tuples = 8,
};

struct PingPayload {};
struct PongPayload {};
struct StorePayload {
    Bytes packet;
};
struct StoreOkPayload {};
struct FindNodePayload {
    Bits512 target;
};
struct NodesPayload {
    std::vector<NodeId> nodes;
};
struct FindTuplesPayload {
    LookupPattern pattern;
};
struct TuplesPayload {
    std::vector<Bytes> packets;
};

struct Message {
    MsgType type;
    uint64_t rpc_id = 0;
    NodeId sender;
    std::variant<PingPayload, PongPayload, StorePayload, StoreOkPayload, FindNodePayload,
                 NodesPayload, FindTuplesPayload, TuplesPayload>
        payload;

    bool is_request() const {
        return type == MsgType::Ping || type == MsgType::Store || type == MsgType::FindNode ||
               type == MsgType::FindTuples;
    }
};

Bytes encode_message(const Message& m);
std::optional<Message> decode_message(ByteView bytes);

}  // namespace gs
