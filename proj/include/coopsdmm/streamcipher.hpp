#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "coopsdmm/field.hpp"

namespace coopsdmm::streamcipher {

using field::FieldElement;
using field::PrimeField;
using field::SeededPrg;

inline constexpr std::size_t kKeyBytes = 32;
inline constexpr std::size_t kNonceBytes = 8;

struct CipherKey {
    std::array<std::uint8_t, kKeyBytes> bytes{};
    static CipherKey random(SeededPrg& prg);
    bool operator==(const CipherKey&) const = default;
};

struct Nonce {
    std::array<std::uint8_t, kNonceBytes> bytes{};
    static Nonce random(SeededPrg& prg);
    bool operator==(const Nonce&) const = default;
};

struct Ciphertext {
    Nonce nonce;
    std::vector<FieldElement> body; // m + z, same length as the plaintext
};

/// Which keyed expansion backs `expand`. Chacha20 is the production profile;
/// TestStream is a keyed splitmix generator, NOT cryptographically strong,
/// for reproducible fixtures only.
enum class PrfKind { Chacha20, TestStream };

/// Raw keystream of the production primitive: ChaCha20 with an 8-byte nonce
/// and a 64-bit little-endian block counter (nonce || counter layout).
void chacha20_keystream(const CipherKey& key, const Nonce& nonce, std::uint64_t counter,
                        std::span<std::uint8_t> out);

/// Variable output-length keyed expansion over F_q: counter mode on the
/// underlying primitive, rejection-sampled to uniform field elements.
std::vector<FieldElement> expand(const CipherKey& key, const Nonce& nonce, std::size_t len,
                                 const PrimeField& field, PrfKind kind = PrfKind::Chacha20);

/// Fresh-nonce stream encryption: body = m + expand(k, r, |m|).
Ciphertext encrypt(const CipherKey& key, std::span<const FieldElement> message, SeededPrg& nonce_prg,
                   const PrimeField& field, PrfKind kind = PrfKind::Chacha20);

/// body - expand(k, r, |body|); a wrong key yields garbage by construction.
std::vector<FieldElement> decrypt(const CipherKey& key, const Ciphertext& c, const PrimeField& field,
                                  PrfKind kind = PrfKind::Chacha20);

// Wire layout: nonce bytes, then each element as a little-endian 8-byte word.
std::vector<std::uint8_t> serialize(const Ciphertext& c);
Ciphertext parse(std::span<const std::uint8_t> wire, const PrimeField& field);

} // namespace coopsdmm::streamcipher
