#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coopsdmm/errors.hpp"

namespace coopsdmm::field {

/// Prime field F_q, q an odd-or-even prime below 2^63. The modulus is
/// verified by a deterministic Miller-Rabin test at construction.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t modulus);

    std::uint64_t modulus() const { return q_; }
    bool operator==(const PrimeField& other) const { return q_ == other.q_; }
    bool operator!=(const PrimeField& other) const { return q_ != other.q_; }

private:
    std::uint64_t q_;
};

bool is_prime_u64(std::uint64_t n);

/// Canonical representative in [0, q). Immutable value type.
class FieldElement {
public:
    FieldElement(std::uint64_t value, const PrimeField& field)
        : v_(value % field.modulus()), f_(field) {}

    std::uint64_t value() const { return v_; }
    const PrimeField& field() const { return f_; }
    bool is_zero() const { return v_ == 0; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.v_ == b.v_ && a.f_ == b.f_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    std::uint64_t v_;
    PrimeField f_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, std::uint64_t e);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }

// Raw modular helpers used by the dense matrix kernels.
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q);

/// Deterministic, seedable generator of uniform field elements and raw bytes.
/// splitmix64 underneath; a simulation tool, not a cryptographic source.
class SeededPrg {
public:
    explicit SeededPrg(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform over [0, q) by rejection sampling; no modulo bias.
    FieldElement next_element(const PrimeField& field);
    std::uint64_t next_below(std::uint64_t bound); // uniform over [0, bound)
    void fill_bytes(std::span<std::uint8_t> out);
    /// Derives an independent substream; advances this stream by one draw.
    SeededPrg fork(std::uint64_t salt);

private:
    std::uint64_t state_;
};

inline FieldElement sample_uniform(SeededPrg& prg, const PrimeField& field) {
    return prg.next_element(field);
}

} // namespace coopsdmm::field
