#pragma once

#include "coopsdmm/schemes.hpp"

namespace coopsdmm::schemes::detail {

using simnet::Party;
using simnet::Phase;
using simnet::Transcript;

inline constexpr std::uint64_t kKeyWords = streamcipher::kKeyBytes / 8;
inline constexpr std::uint64_t kNonceWords = streamcipher::kNonceBytes / 8;

/// Per-server uploads for a bundle list plus the evaluation-point notices.
void record_upload(Transcript& transcript, std::span<const ShareBundle> bundles,
                   std::uint64_t& aux_symbols);

/// Responder identity notices (the straggler remark bookkeeping).
void record_identities(Transcript& transcript, std::span<const std::size_t> responders,
                       std::uint64_t& aux_symbols);

/// Reshapes a keystream expansion into a mask matrix.
matgrid::FieldMatrix expand_matrix(const streamcipher::CipherKey& key, const streamcipher::Nonce& nonce,
                                   std::size_t rows, std::size_t cols, const PrimeField& field,
                                   streamcipher::PrfKind prf);

struct CoopRetrieveOutcome {
    matgrid::FieldMatrix sum;
    std::vector<std::vector<std::size_t>> groups;
};

/// Cooperative retrieval of the x^theta coefficient from the responder
/// products: every responder weighs its product by its Lagrange coefficient,
/// group members forward to the representative, representatives answer, the
/// user adds the answers.
CoopRetrieveOutcome cooperative_coefficient_retrieve(std::span<const std::size_t> responders,
                                                     std::span<const FieldElement> responder_points,
                                                     std::span<const matgrid::FieldMatrix> products,
                                                     std::size_t theta, std::size_t x,
                                                     Transcript& transcript, std::uint64_t& aux_symbols);

/// Encrypted hub retrieval: responders mask their products with keyed
/// pseudorandom expansions and forward the masked blocks to the first
/// responder, which applies the decode weights and answers once; the user
/// re-derives the masks from the keys, applies the same weights, subtracts.
/// Returns one matrix per weight row.
std::vector<matgrid::FieldMatrix> encrypted_hub_retrieve(
    std::span<const std::size_t> responders, std::span<const FieldElement> responder_points,
    std::span<const matgrid::FieldMatrix> products, const matgrid::FieldMatrix& weights,
    const PrimeField& field, streamcipher::PrfKind prf, SeededPrg& key_prg, Transcript& transcript,
    std::uint64_t& aux_symbols, const char* answer_payload);

} // namespace coopsdmm::schemes::detail
