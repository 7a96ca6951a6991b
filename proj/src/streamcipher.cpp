#include "coopsdmm/streamcipher.hpp"

#include <cstring>

namespace coopsdmm::streamcipher {

namespace {

inline std::uint32_t rotl32(std::uint32_t x, int n) { return (x << n) | (x >> (32 - n)); }

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) {
    a += b; d ^= a; d = rotl32(d, 16);
    c += d; b ^= c; b = rotl32(b, 12);
    a += b; d ^= a; d = rotl32(d, 8);
    c += d; b ^= c; b = rotl32(b, 7);
}

inline std::uint32_t load_le32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

inline void store_le32(std::uint8_t* p, std::uint32_t v) {
    p[0] = std::uint8_t(v);
    p[1] = std::uint8_t(v >> 8);
    p[2] = std::uint8_t(v >> 16);
    p[3] = std::uint8_t(v >> 24);
}

void chacha20_block(const CipherKey& key, const Nonce& nonce, std::uint64_t counter,
                    std::uint8_t out[64]) {
    // "expand 32-byte k", 8 key words, 64-bit counter, 8-byte nonce.
    std::uint32_t state[16];
    state[0] = 0x61707865;
    state[1] = 0x3320646e;
    state[2] = 0x79622d32;
    state[3] = 0x6b206574;
    for (int i = 0; i < 8; ++i) state[4 + i] = load_le32(key.bytes.data() + 4 * i);
    state[12] = std::uint32_t(counter);
    state[13] = std::uint32_t(counter >> 32);
    state[14] = load_le32(nonce.bytes.data());
    state[15] = load_le32(nonce.bytes.data() + 4);

    std::uint32_t x[16];
    std::memcpy(x, state, sizeof(x));
    for (int round = 0; round < 10; ++round) {
        quarter_round(x[0], x[4], x[8], x[12]);
        quarter_round(x[1], x[5], x[9], x[13]);
        quarter_round(x[2], x[6], x[10], x[14]);
        quarter_round(x[3], x[7], x[11], x[15]);
        quarter_round(x[0], x[5], x[10], x[15]);
        quarter_round(x[1], x[6], x[11], x[12]);
        quarter_round(x[2], x[7], x[8], x[13]);
        quarter_round(x[3], x[4], x[9], x[14]);
    }
    for (int i = 0; i < 16; ++i) store_le32(out + 4 * i, x[i] + state[i]);
}

// Byte source abstraction so the expansion logic is shared by both profiles.
class KeystreamReader {
public:
    KeystreamReader(const CipherKey& key, const Nonce& nonce, PrfKind kind)
        : key_(key), nonce_(nonce), kind_(kind) {
        if (kind_ == PrfKind::TestStream) {
            // Keyed, deterministic, NOT cryptographically strong.
            std::uint64_t h = 0xcbf29ce484222325ULL;
            auto mix = [&h](std::uint8_t b) {
                h ^= b;
                h *= 0x100000001b3ULL;
            };
            for (auto b : key_.bytes) mix(b);
            for (auto b : nonce_.bytes) mix(b);
            test_state_ = h;
        }
    }

    std::uint64_t next_word() {
        std::uint8_t bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = next_byte();
        std::uint64_t w = 0;
        for (int i = 7; i >= 0; --i) w = (w << 8) | bytes[i];
        return w;
    }

private:
    std::uint8_t next_byte() {
        if (kind_ == PrfKind::TestStream) {
            if (test_fill_ == 0) {
                std::uint64_t z = (test_state_ += 0x9e3779b97f4a7c15ULL);
                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                test_word_ = z ^ (z >> 31);
                test_fill_ = 8;
            }
            std::uint8_t b = std::uint8_t(test_word_);
            test_word_ >>= 8;
            --test_fill_;
            return b;
        }
        if (offset_ == 64) {
            chacha20_block(key_, nonce_, counter_++, block_);
            offset_ = 0;
        }
        return block_[offset_++];
    }

    CipherKey key_;
    Nonce nonce_;
    PrfKind kind_;
    std::uint8_t block_[64];
    std::size_t offset_ = 64;
    std::uint64_t counter_ = 0;
    std::uint64_t test_state_ = 0;
    std::uint64_t test_word_ = 0;
    int test_fill_ = 0;
};

} // namespace

CipherKey CipherKey::random(SeededPrg& prg) {
    CipherKey k;
    prg.fill_bytes(k.bytes);
    return k;
}

Nonce Nonce::random(SeededPrg& prg) {
    Nonce n;
    prg.fill_bytes(n.bytes);
    return n;
}

void chacha20_keystream(const CipherKey& key, const Nonce& nonce, std::uint64_t counter,
                        std::span<std::uint8_t> out) {
    std::uint8_t block[64];
    std::size_t i = 0;
    while (i < out.size()) {
        chacha20_block(key, nonce, counter++, block);
        std::size_t n = std::min<std::size_t>(64, out.size() - i);
        std::memcpy(out.data() + i, block, n);
        i += n;
    }
}

std::vector<FieldElement> expand(const CipherKey& key, const Nonce& nonce, std::size_t len,
                                 const PrimeField& field, PrfKind kind) {
    KeystreamReader reader(key, nonce, kind);
    const std::uint64_t q = field.modulus();
    const std::uint64_t zone = q * (UINT64_MAX / q);
    std::vector<FieldElement> out;
    out.reserve(len);
    while (out.size() < len) {
        std::uint64_t w = reader.next_word();
        if (w >= zone) continue; // rejection keeps the draw exactly uniform
        out.emplace_back(w % q, field);
    }
    return out;
}

Ciphertext encrypt(const CipherKey& key, std::span<const FieldElement> message, SeededPrg& nonce_prg,
                   const PrimeField& field, PrfKind kind) {
    Ciphertext c;
    c.nonce = Nonce::random(nonce_prg);
    auto z = expand(key, c.nonce, message.size(), field, kind);
    c.body.reserve(message.size());
    for (std::size_t i = 0; i < message.size(); ++i) {
        if (message[i].field() != field) throw FieldMismatch();
        c.body.push_back(message[i] + z[i]);
    }
    return c;
}

std::vector<FieldElement> decrypt(const CipherKey& key, const Ciphertext& c, const PrimeField& field,
                                  PrfKind kind) {
    auto z = expand(key, c.nonce, c.body.size(), field, kind);
    std::vector<FieldElement> m;
    m.reserve(c.body.size());
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (c.body[i].field() != field) throw FieldMismatch();
        m.push_back(c.body[i] - z[i]);
    }
    return m;
}

std::vector<std::uint8_t> serialize(const Ciphertext& c) {
    std::vector<std::uint8_t> wire;
    wire.reserve(kNonceBytes + 8 * c.body.size());
    wire.insert(wire.end(), c.nonce.bytes.begin(), c.nonce.bytes.end());
    for (const auto& e : c.body) {
        std::uint64_t v = e.value();
        for (int i = 0; i < 8; ++i) wire.push_back(std::uint8_t(v >> (8 * i)));
    }
    return wire;
}

Ciphertext parse(std::span<const std::uint8_t> wire, const PrimeField& field) {
    if (wire.size() < kNonceBytes || (wire.size() - kNonceBytes) % 8 != 0)
        throw ConfigError("ciphertext wire: bad length");
    Ciphertext c;
    std::copy(wire.begin(), wire.begin() + kNonceBytes, c.nonce.bytes.begin());
    std::size_t count = (wire.size() - kNonceBytes) / 8;
    c.body.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t v = 0;
        for (int b = 7; b >= 0; --b) v = (v << 8) | wire[kNonceBytes + 8 * i + b];
        if (v >= field.modulus()) throw ConfigError("ciphertext wire: element out of range");
        c.body.emplace_back(v, field);
    }
    return c;
}

} // namespace coopsdmm::streamcipher
