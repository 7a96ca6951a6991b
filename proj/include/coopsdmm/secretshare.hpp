#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coopsdmm/matgrid.hpp"

namespace coopsdmm::secretshare {

using field::FieldElement;
using field::PrimeField;
using field::SeededPrg;
using matgrid::FieldMatrix;

/// Secure coded storage instance: rho message symbols and K - rho uniform
/// symbols encoded through the K x N generator G, one share per server.
/// X is the claimed collusion resistance of the lower K - rho rows.
struct StoragePlan {
    FieldMatrix generator; // K x N
    std::size_t rho;
    std::size_t collusion_resistance; // X

    StoragePlan(FieldMatrix g, std::size_t rho_, std::size_t x);

    std::size_t dimension() const { return generator.rows(); } // K
    std::size_t servers() const { return generator.cols(); }   // N
    const PrimeField& field() const { return generator.field(); }
    /// The lowest K - rho rows of G (the randomness rows).
    FieldMatrix lower_rows() const;
};

/// [N, K] Shamir plan on distinct points (0 allowed): G rows are
/// x^(K-1) down to 1, rho = 1, X = K - 1.
StoragePlan shamir_plan(std::span<const FieldElement> points, std::size_t k);

using ShareVector = std::vector<FieldElement>; // y_i on server i

/// Disjoint server-index sets covering [0, N).
struct ComponentPartition {
    std::vector<std::vector<std::size_t>> components;
    void validate(std::size_t servers) const;
    std::size_t size() const { return components.size(); } // gamma
};

/// (m, s) G with s drawn uniformly.
ShareVector share(const StoragePlan& plan, std::span<const FieldElement> message, SeededPrg& prg);
/// Deterministic variant with caller-chosen randomness (|s| = K - rho).
ShareVector share_with_randomness(const StoragePlan& plan, std::span<const FieldElement> message,
                                  std::span<const FieldElement> randomness);

/// Solves for the full (m, s) vector from >= K shares on independent columns;
/// returns the message part. Throws SingularMatrix if the columns are
/// dependent or too few.
std::vector<FieldElement> recover(const StoragePlan& plan,
                                  std::span<const std::pair<std::size_t, FieldElement>> shares);

/// Coefficients alpha over the given columns with sum_i alpha_i y_i = m_target
/// for every encoding, i.e. G|_indices alpha = e_target. Empty optional when
/// e_target is outside the column span.
std::optional<std::vector<FieldElement>> recovery_coefficients(const StoragePlan& plan,
                                                               std::span<const std::size_t> indices,
                                                               std::size_t target);

struct CoopRecovery {
    std::vector<FieldElement> responses; // r_c per component
    FieldElement message;                // sum of responses
};

/// Component-wise recovery: each component's representative aggregates
/// r_c = sum alpha_i y_i; the responses sum to the secret. Download = gamma.
/// alpha must satisfy sum_i alpha_i y_i = m_0 over the full share set.
CoopRecovery coop_recover(const StoragePlan& plan, const ShareVector& shares,
                          const ComponentPartition& partition, std::span<const FieldElement> alpha);

/// Partition recovery with per-component coefficients: m_target is returned
/// when e_target lies in the span of the compressed columns
/// sum_{j in V_c} alpha_j g^j, otherwise the empty optional (Unrecoverable).
std::optional<FieldElement> coop_partition_recover(const StoragePlan& plan, const ShareVector& shares,
                                                   const ComponentPartition& partition,
                                                   std::span<const FieldElement> alpha,
                                                   std::size_t target);

/// Random search for alphas making `target` recoverable under the partition.
std::optional<std::vector<FieldElement>> search_partition_alphas(const StoragePlan& plan,
                                                                 const ComponentPartition& partition,
                                                                 std::size_t target, SeededPrg& prg,
                                                                 std::size_t attempts = 1000);

struct AuditVerdict {
    bool pass = false;          // exhaustive distribution-identity check
    bool rank_check = false;    // every X-subset of G_{>rho} has rank X
    bool criteria_agree = false;
    std::optional<std::vector<std::size_t>> failing_subset;
    std::uint64_t enumeration_rows = 0; // q^(K-rho) * C(N, X)
    std::string to_json() const;
};

/// Exhaustive secrecy audit: for every X-subset T and every message pair the
/// multiset of observed share tuples over all randomness must coincide.
/// Refuses when q^(K-rho) * C(N, X) exceeds the budget.
AuditVerdict secrecy_audit(const StoragePlan& plan, std::size_t x, std::uint64_t budget = 10'000'000);

} // namespace coopsdmm::secretshare
