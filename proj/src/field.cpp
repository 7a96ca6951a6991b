#include "coopsdmm/field.hpp"

namespace coopsdmm::field {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod_u128(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((u128)a * b % q);
}

std::uint64_t powmod_u128(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t result = 1 % q;
    std::uint64_t base = a % q;
    while (e > 0) {
        if (e & 1) result = mulmod_u128(result, base, q);
        base = mulmod_u128(base, base, q);
        e >>= 1;
    }
    return result;
}

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
    if (a % n == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod_u128(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u128(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic for all 64-bit integers with this base set.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t modulus) : q_(modulus) {
    if (modulus >= (1ULL << 63))
        throw ConfigError("field modulus must be below 2^63");
    if (!is_prime_u64(modulus))
        throw ConfigError("field modulus " + std::to_string(modulus) + " is not prime");
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field()) throw FieldMismatch();
}
} // namespace

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    std::uint64_t s = a + b; // no overflow: a, b < q < 2^63
    return s >= q ? s - q : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return a >= b ? a - b : a + q - b;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return mulmod_u128(a, b, q);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    return powmod_u128(a, e, q);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q) {
    if (a % q == 0) throw DivisionByZero();
    return powmod_u128(a % q, q - 2, q); // Fermat; q is prime
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {add_mod(a.value(), b.value(), a.field().modulus()), a.field()};
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {sub_mod(a.value(), b.value(), a.field().modulus()), a.field()};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {mul_mod(a.value(), b.value(), a.field().modulus()), a.field()};
}

FieldElement neg(const FieldElement& a) {
    std::uint64_t q = a.field().modulus();
    return {a.value() == 0 ? 0 : q - a.value(), a.field()};
}

FieldElement inv(const FieldElement& a) {
    return {inv_mod(a.value(), a.field().modulus()), a.field()};
}

FieldElement pow(const FieldElement& a, std::uint64_t e) {
    // 0^0 = 1 (empty product).
    return {pow_mod(a.value(), e, a.field().modulus()), a.field()};
}

std::uint64_t SeededPrg::next_u64() {
    return splitmix64(state_);
}

std::uint64_t SeededPrg::next_below(std::uint64_t bound) {
    // Rejection sampling over the largest multiple of `bound`.
    std::uint64_t zone = bound * (UINT64_MAX / bound);
    for (;;) {
        std::uint64_t w = next_u64();
        if (w < zone) return w % bound;
    }
}

FieldElement SeededPrg::next_element(const PrimeField& field) {
    return {next_below(field.modulus()), field};
}

void SeededPrg::fill_bytes(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t w = next_u64();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
            out[i] = static_cast<std::uint8_t>(w >> (8 * b));
        }
    }
}

SeededPrg SeededPrg::fork(std::uint64_t salt) {
    std::uint64_t mixed = next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    return SeededPrg(mixed);
}

} // namespace coopsdmm::field
