#include "gs/signing.hpp"

#include <sodium.h>

#include <cstring>

#include "gs/errors.hpp"
#include "gs/wire.hpp"

namespace gs {

namespace {

struct SodiumInit {
    SodiumInit() {
        if (sodium_init() < 0) throw Error("libsodium initialization failed");
    }
};

class Ed25519 : public SignatureScheme {
public:
    Ed25519() { static SodiumInit init; }

    Signature sign(const SecretKey& sk, ByteView msg) const override {
        Signature sig{};
        crypto_sign_detached(sig.data(), nullptr, msg.data(), msg.size(), sk.data());
        return sig;
    }

    bool verify(const PublicKey& pk, ByteView msg, const Signature& sig) const override {
        return crypto_sign_verify_detached(sig.data(), msg.data(), msg.size(), pk.data()) == 0;
    }
};

}  // namespace

const SignatureScheme& default_scheme() {
    static Ed25519 scheme;
    return scheme;
}

KeyPair KeyPair::generate(Label signer, uint64_t seed) {
    default_scheme();  // force sodium init
    std::array<uint8_t, crypto_sign_SEEDBYTES> kseed{};
    Bytes seed_input;
    seed_input.insert(seed_input.end(), signer.bytes.begin(), signer.bytes.end());
    put_u64_be(seed_input, seed);
    crypto_generichash(kseed.data(), kseed.size(), seed_input.data(), seed_input.size(), nullptr, 0);

    KeyPair kp;
    kp.signer = signer;
    crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), kseed.data());
    return kp;
}

Tuple sign_tuple(const Tuple& t, const KeyPair& kp, const SignatureScheme& scheme) {
    if (t.is_signed()) throw Error("tuple already signed");
    Tuple signed_t = t;
    signed_t.signer = kp.signer;
    signed_t.signature = scheme.sign(kp.secret_key, signing_bytes(signed_t));
    return signed_t;
}

VerifyResult verify_tuple(const Tuple& t, const KeyRegistry& reg, const SignatureScheme& scheme) {
    if (!t.signer || !t.signature) return VerifyResult::RejectedUnsigned;
    const PublicKey* pk = reg.find(*t.signer);
    if (!pk) return VerifyResult::RejectedUnknownSigner;
    return scheme.verify(*pk, signing_bytes(t), *t.signature) ? VerifyResult::Accepted
                                                              : VerifyResult::RejectedBadSignature;
}

}  // namespace gs
