#include "gs/bits512.hpp"

#include "gs/bytes.hpp"

namespace gs {

std::string Bits512::to_hex() const { return gs::to_hex(ByteView(bytes.data(), bytes.size())); }

}  // namespace gs
