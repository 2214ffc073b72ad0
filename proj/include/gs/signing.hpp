#pragma once

#include <array>
#include <map>
#include <optional>

#include "gs/bytes.hpp"
#include "gs/label.hpp"
#include "gs/tuple.hpp"

namespace gs {

using PublicKey = std::array<uint8_t, 32>;
using SecretKey = std::array<uint8_t, 64>;

/// Detached-signature scheme with 64-byte signatures. The reference
/// implementation is Ed25519; anything deterministic with the same shapes
/// can stand in behind this interface.
class SignatureScheme {
public:
    virtual ~SignatureScheme() = default;
    virtual Signature sign(const SecretKey& sk, ByteView msg) const = 0;
    virtual bool verify(const PublicKey& pk, ByteView msg, const Signature& sig) const = 0;
};

const SignatureScheme& default_scheme();  // Ed25519

struct KeyPair {
    Label signer;
    PublicKey public_key{};
    SecretKey secret_key{};

    /// Deterministic: equal (signer, seed) pairs give equal keys.
    static KeyPair generate(Label signer, uint64_t seed);
};

/// Out-of-band mapping from signer labels to verification keys. The paper
/// keeps this association in the graph itself; here it is an explicit
/// registry populated during setup.
class KeyRegistry {
public:
    void register_key(Label signer, PublicKey pk) { keys_[signer] = pk; }
    void register_key(const KeyPair& kp) { keys_[kp.signer] = kp.public_key; }
    const PublicKey* find(const Label& signer) const {
        auto it = keys_.find(signer);
        return it == keys_.end() ? nullptr : &it->second;
    }

private:
    std::map<Label, PublicKey> keys_;
};

enum class VerifyResult {
    Accepted,
    RejectedUnsigned,
    RejectedUnknownSigner,
    RejectedBadSignature,
};

/// Returns a copy of t carrying kp's signer label and a signature over the
/// canonical bytes of everything but the signature itself. t must be
/// unsigned.
Tuple sign_tuple(const Tuple& t, const KeyPair& kp,
                 const SignatureScheme& scheme = default_scheme());

/// Accepts iff the tuple is signed, the signer is registered, and the
/// signature checks out. Unsigned tuples are rejected; policy is the
/// caller's call.
VerifyResult verify_tuple(const Tuple& t, const KeyRegistry& reg,
                          const SignatureScheme& scheme = default_scheme());

}  // namespace gs
