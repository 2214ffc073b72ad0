#include "gs/messages.hpp"

namespace gs {

namespace {
constexpr uint8_t kMsgVersion = 1;

void put_bits512(Bytes& out, const Bits512& b) {
    out.insert(out.end(), b.bytes.begin(), b.bytes.end());
}

struct Cursor {
    ByteView data;
    size_t pos = 0;

    bool take(size_t n) { return pos + n <= data.size(); }
    std::optional<uint8_t> u8() {
        if (!take(1)) return std::nullopt;
        return data[pos++];
    }
    std::optional<uint16_t> u16() {
        if (!take(2)) return std::nullopt;
        uint16_t v = uint16_t((data[pos] << 8) | data[pos + 1]);
        pos += 2;
        return v;
    }
    std::optional<uint32_t> u32() {
        if (!take(4)) return std::nullopt;
        uint32_t v = get_u32_be(data.data() + pos);
        pos += 4;
        return v;
    }
    std::optional<uint64_t> u64() {
        if (!take(8)) return std::nullopt;
        uint64_t v = get_u64_be(data.data() + pos);
        pos += 8;
        return v;
    }
    std::optional<Bits512> bits512() {
        if (!take(64)) return std::nullopt;
        Bits512 b;
        std::copy(data.begin() + pos, data.begin() + pos + 64, b.bytes.begin());
        pos += 64;
        return b;
    }
    std::optional<Bytes> blob(size_t n) {
        if (!take(n)) return std::nullopt;
        Bytes b(data.begin() + pos, data.begin() + pos + n);
        pos += n;
        return b;
    }
};

}  // namespace

Bytes encode_message(const Message& m) {
    Bytes out;
    out.push_back(kMsgVersion);
    out.push_back(static_cast<uint8_t>(m.type));
    put_u64_be(out, m.rpc_id);
    put_bits512(out, m.sender);
    switch (m.type) {
        case MsgType::Ping:
        case MsgType::Pong:
        case MsgType::StoreOk:
            break;
        case MsgType::Store: {
            const auto& p = std::get<StorePayload>(m.payload);
            put_u32_be(out, uint32_t(p.packet.size()));
            out.insert(out.end(), p.packet.begin(), p.packet.end());
            break;
        }
        case MsgType::FindNode:
            put_bits512(out, std::get<FindNodePayload>(m.payload).target);
            break;
        case MsgType::Nodes: {
            const auto& p = std::get<NodesPayload>(m.payload);
            out.push_back(uint8_t(p.nodes.size() >> 8));
            out.push_back(uint8_t(p.nodes.size()));
            for (const NodeId& id : p.nodes) put_bits512(out, id);
            break;
        }
        case MsgType::FindTuples: {
            auto trits = std::get<FindTuplesPayload>(m.payload).pattern.encode_trits();
            out.insert(out.end(), trits.begin(), trits.end());
            break;
        }
        case MsgType::Tuples: {
            const auto& p = std::get<TuplesPayload>(m.payload);
            out.push_back(uint8_t(p.packets.size() >> 8));
            out.push_back(uint8_t(p.packets.size()));
            for (const Bytes& pk : p.packets) {
                put_u32_be(out, uint32_t(pk.size()));
                out.insert(out.end(), pk.begin(), pk.end());
            }
            break;
        }
    }
    return out;
}

std::optional<Message> decode_message(ByteView bytes) {
    Cursor c{bytes};
    auto ver = c.u8();
    if (!ver || *ver != kMsgVersion) return std::nullopt;
    auto type = c.u8();
    if (!type || *type < 1 || *type > 8) return std::nullopt;
    auto rpc_id = c.u64();
    auto sender = c.bits512();
    if (!rpc_id || !sender) return std::nullopt;

    Message m;
    m.type = static_cast<MsgType>(*type);
    m.rpc_id = *rpc_id;
    m.sender = *sender;
    switch (m.type) {
        case MsgType::Ping:
            m.payload = PingPayload{};
            break;
        case MsgType::Pong:
            m.payload = PongPayload{};
            break;
        case MsgType::StoreOk:
            m.payload = StoreOkPayload{};
            break;
        case MsgType::Store: {
            auto len = c.u32();
            if (!len) return std::nullopt;
            auto blob = c.blob(*len);
            if (!blob) return std::nullopt;
            m.payload = StorePayload{std::move(*blob)};
            break;
        }
        case MsgType::FindNode: {
            auto target = c.bits512();
            if (!target) return std::nullopt;
            m.payload = FindNodePayload{*target};
            break;
        }
        case MsgType::Nodes: {
            auto count = c.u16();
            if (!count) return std::nullopt;
            NodesPayload p;
            p.nodes.reserve(*count);
            for (size_t i = 0; i < *count; ++i) {
                auto id = c.bits512();
                if (!id) return std::nullopt;
                p.nodes.push_back(*id);
            }
            m.payload = std::move(p);
            break;
        }
        case MsgType::FindTuples: {
            auto blob = c.blob(128);
            if (!blob) return std::nullopt;
            std::array<uint8_t, 128> arr;
            std::copy(blob->begin(), blob->end(), arr.begin());
            auto pat = LookupPattern::decode_trits(arr);
            if (!pat) return std::nullopt;
            m.payload = FindTuplesPayload{*pat};
            break;
        }
        case MsgType::Tuples: {
            auto count = c.u16();
            if (!count) return std::nullopt;
            TuplesPayload p;
            p.packets.reserve(*count);
            for (size_t i = 0; i < *count; ++i) {
                auto len = c.u32();
                if (!len) return std::nullopt;
                auto blob = c.blob(*len);
                if (!blob) return std::nullopt;
                p.packets.push_back(std::move(*blob));
            }
            m.payload = std::move(p);
            break;
        }
    }
    if (c.pos != bytes.size()) return std::nullopt;
    return m;
}

}  // namespace gs
