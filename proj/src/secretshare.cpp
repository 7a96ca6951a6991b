#include "coopsdmm/secretshare.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "coopsdmm/polycode.hpp"

namespace coopsdmm::secretshare {

StoragePlan::StoragePlan(FieldMatrix g, std::size_t rho_, std::size_t x)
    : generator(std::move(g)), rho(rho_), collusion_resistance(x) {
    if (rho > generator.rows())
        throw ConfigError("storage plan: rho exceeds K");
    if (generator.rows() > generator.cols())
        throw ConfigError("storage plan: K exceeds N");
}

FieldMatrix StoragePlan::lower_rows() const {
    FieldMatrix lower(dimension() - rho, servers(), field());
    for (std::size_t i = rho; i < dimension(); ++i)
        for (std::size_t j = 0; j < servers(); ++j)
            lower.set_raw(i - rho, j, generator.raw(i, j));
    return lower;
}

StoragePlan shamir_plan(std::span<const FieldElement> points, std::size_t k) {
    polycode::require_distinct(points);
    if (k == 0 || k > points.size()) throw ConfigError("shamir plan: require 1 <= K <= N");
    const PrimeField& f = points[0].field();
    FieldMatrix g(k, points.size(), f);
    // Row 0 holds x_i^(K-1) down to the all-ones last row; zero points are fine.
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t row = 0; row < k; ++row)
            g.set(row, i, field::pow(points[i], k - 1 - row));
    return StoragePlan(std::move(g), 1, k - 1);
}

void ComponentPartition::validate(std::size_t servers) const {
    std::vector<bool> seen(servers, false);
    for (const auto& comp : components) {
        if (comp.empty()) throw ConfigError("partition: empty component");
        for (std::size_t i : comp) {
            if (i >= servers || seen[i]) throw ConfigError("partition: indices must partition [0, N)");
            seen[i] = true;
        }
    }
    for (bool s : seen)
        if (!s) throw ConfigError("partition: indices must partition [0, N)");
}

ShareVector share_with_randomness(const StoragePlan& plan, std::span<const FieldElement> message,
                                  std::span<const FieldElement> randomness) {
    if (message.size() != plan.rho) throw ConfigError("share: message length must equal rho");
    if (randomness.size() != plan.dimension() - plan.rho)
        throw ConfigError("share: randomness length must equal K - rho");
    FieldMatrix row(1, plan.dimension(), plan.field());
    for (std::size_t i = 0; i < message.size(); ++i) row.set(0, i, message[i]);
    for (std::size_t i = 0; i < randomness.size(); ++i) row.set(0, plan.rho + i, randomness[i]);
    FieldMatrix encoded = matgrid::matmul(row, plan.generator);
    ShareVector y;
    y.reserve(plan.servers());
    for (std::size_t j = 0; j < plan.servers(); ++j) y.push_back(encoded.at(0, j));
    return y;
}

ShareVector share(const StoragePlan& plan, std::span<const FieldElement> message, SeededPrg& prg) {
    std::vector<FieldElement> s;
    s.reserve(plan.dimension() - plan.rho);
    for (std::size_t i = plan.rho; i < plan.dimension(); ++i) s.push_back(prg.next_element(plan.field()));
    return share_with_randomness(plan, message, s);
}

std::vector<FieldElement> recover(const StoragePlan& plan,
                                  std::span<const std::pair<std::size_t, FieldElement>> shares) {
    if (shares.size() < plan.dimension())
        throw SingularMatrix("recover: fewer shares than K");
    // (m, s) G|_T = y|_T  =>  transpose to a linear system in (m, s).
    FieldMatrix system(shares.size(), plan.dimension(), plan.field());
    std::vector<FieldElement> rhs;
    rhs.reserve(shares.size());
    for (std::size_t row = 0; row < shares.size(); ++row) {
        auto [idx, value] = shares[row];
        if (idx >= plan.servers()) throw ConfigError("recover: share index out of range");
        for (std::size_t k = 0; k < plan.dimension(); ++k)
            system.set_raw(row, k, plan.generator.raw(k, idx));
        rhs.push_back(value);
    }
    auto solution = matgrid::solve(system, rhs);
    if (!solution) throw SingularMatrix("recover: share columns are dependent or inconsistent");
    solution->resize(plan.rho, FieldElement(0, plan.field()));
    return *solution;
}

std::optional<std::vector<FieldElement>> recovery_coefficients(const StoragePlan& plan,
                                                               std::span<const std::size_t> indices,
                                                               std::size_t target) {
    if (target >= plan.dimension()) throw ConfigError("recovery_coefficients: target out of range");
    // Solve G|_indices alpha = e_target.
    FieldMatrix cols(plan.dimension(), indices.size(), plan.field());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] >= plan.servers()) throw ConfigError("recovery_coefficients: index out of range");
        for (std::size_t k = 0; k < plan.dimension(); ++k)
            cols.set_raw(k, j, plan.generator.raw(k, indices[j]));
    }
    std::vector<FieldElement> e;
    e.reserve(plan.dimension());
    for (std::size_t k = 0; k < plan.dimension(); ++k)
        e.emplace_back(k == target ? 1 : 0, plan.field());
    auto alpha = matgrid::solve(cols, e);
    if (alpha) return alpha;
    // solve() demands full column rank; fall back to a rank probe so that
    // redundant share sets (N > K) still yield coefficients.
    FieldMatrix aug(plan.dimension(), indices.size() + 1, plan.field());
    for (std::size_t k = 0; k < plan.dimension(); ++k) {
        for (std::size_t j = 0; j < indices.size(); ++j) aug.set_raw(k, j, cols.raw(k, j));
        aug.set_raw(k, indices.size(), k == target ? 1 : 0);
    }
    if (matgrid::rank(aug) != matgrid::rank(cols)) return std::nullopt; // e_target outside the span
    // Reduce to an independent column subset, solve there, re-embed.
    std::vector<std::size_t> chosen;
    FieldMatrix probe(plan.dimension(), 0, plan.field());
    std::size_t current_rank = 0;
    for (std::size_t j = 0; j < indices.size(); ++j) {
        FieldMatrix trial(plan.dimension(), chosen.size() + 1, plan.field());
        for (std::size_t k = 0; k < plan.dimension(); ++k) {
            for (std::size_t c = 0; c < chosen.size(); ++c) trial.set_raw(k, c, cols.raw(k, chosen[c]));
            trial.set_raw(k, chosen.size(), cols.raw(k, j));
        }
        if (matgrid::rank(trial) > current_rank) {
            chosen.push_back(j);
            ++current_rank;
        }
    }
    FieldMatrix reduced(plan.dimension(), chosen.size(), plan.field());
    for (std::size_t k = 0; k < plan.dimension(); ++k)
        for (std::size_t c = 0; c < chosen.size(); ++c) reduced.set_raw(k, c, cols.raw(k, chosen[c]));
    auto partial = matgrid::solve(reduced, e);
    if (!partial) return std::nullopt;
    std::vector<FieldElement> full(indices.size(), FieldElement(0, plan.field()));
    for (std::size_t c = 0; c < chosen.size(); ++c) full[chosen[c]] = (*partial)[c];
    return full;
}

CoopRecovery coop_recover(const StoragePlan& plan, const ShareVector& shares,
                          const ComponentPartition& partition, std::span<const FieldElement> alpha) {
    if (plan.rho != 1) throw ConfigError("coop_recover: the component-wise scheme stores one symbol");
    if (shares.size() != plan.servers() || alpha.size() != plan.servers())
        throw ConfigError("coop_recover: need a share and a coefficient per server");
    partition.validate(plan.servers());
    CoopRecovery out{{}, FieldElement(0, plan.field())};
    out.responses.reserve(partition.size());
    for (const auto& comp : partition.components) {
        FieldElement r(0, plan.field());
        for (std::size_t i : comp) r = r + alpha[i] * shares[i];
        out.responses.push_back(r);
        out.message = out.message + r;
    }
    return out;
}

namespace {

// Compressed column sum_{j in V_c} alpha_j g^j for each component.
FieldMatrix compressed_columns(const StoragePlan& plan, const ComponentPartition& partition,
                               std::span<const FieldElement> alpha) {
    FieldMatrix w(plan.dimension(), partition.size(), plan.field());
    for (std::size_t c = 0; c < partition.size(); ++c)
        for (std::size_t j : partition.components[c])
            for (std::size_t k = 0; k < plan.dimension(); ++k)
                w.set(k, c, w.at(k, c) + alpha[j] * plan.generator.at(k, j));
    return w;
}

} // namespace

std::optional<FieldElement> coop_partition_recover(const StoragePlan& plan, const ShareVector& shares,
                                                   const ComponentPartition& partition,
                                                   std::span<const FieldElement> alpha,
                                                   std::size_t target) {
    if (shares.size() != plan.servers() || alpha.size() != plan.servers())
        throw ConfigError("coop_partition_recover: need a share and a coefficient per server");
    if (target >= plan.rho) throw ConfigError("coop_partition_recover: target is not a message index");
    partition.validate(plan.servers());
    FieldMatrix w = compressed_columns(plan, partition, alpha);
    std::vector<FieldElement> e;
    e.reserve(plan.dimension());
    for (std::size_t k = 0; k < plan.dimension(); ++k)
        e.emplace_back(k == target ? 1 : 0, plan.field());
    // beta with W beta = e_target; span test via rank comparison.
    FieldMatrix aug(plan.dimension(), partition.size() + 1, plan.field());
    for (std::size_t k = 0; k < plan.dimension(); ++k) {
        for (std::size_t c = 0; c < partition.size(); ++c) aug.set_raw(k, c, w.raw(k, c));
        aug.set_raw(k, partition.size(), k == target ? 1 : 0);
    }
    if (matgrid::rank(aug) != matgrid::rank(w)) return std::nullopt;
    auto beta = matgrid::solve(w, e);
    std::vector<FieldElement> beta_full;
    if (beta) {
        beta_full = *beta;
    } else {
        // Dependent compressed columns: solve on an independent subset.
        std::vector<std::size_t> chosen;
        std::size_t current_rank = 0;
        for (std::size_t c = 0; c < partition.size(); ++c) {
            FieldMatrix trial(plan.dimension(), chosen.size() + 1, plan.field());
            for (std::size_t k = 0; k < plan.dimension(); ++k) {
                for (std::size_t cc = 0; cc < chosen.size(); ++cc) trial.set_raw(k, cc, w.raw(k, chosen[cc]));
                trial.set_raw(k, chosen.size(), w.raw(k, c));
            }
            if (matgrid::rank(trial) > current_rank) {
                chosen.push_back(c);
                ++current_rank;
            }
        }
        FieldMatrix reduced(plan.dimension(), chosen.size(), plan.field());
        for (std::size_t k = 0; k < plan.dimension(); ++k)
            for (std::size_t cc = 0; cc < chosen.size(); ++cc) reduced.set_raw(k, cc, w.raw(k, chosen[cc]));
        auto partial = matgrid::solve(reduced, e);
        if (!partial) return std::nullopt;
        beta_full.assign(partition.size(), FieldElement(0, plan.field()));
        for (std::size_t cc = 0; cc < chosen.size(); ++cc) beta_full[chosen[cc]] = (*partial)[cc];
    }
    // Responses r_c, combined with beta.
    FieldElement m(0, plan.field());
    for (std::size_t c = 0; c < partition.size(); ++c) {
        FieldElement r(0, plan.field());
        for (std::size_t j : partition.components[c]) r = r + alpha[j] * shares[j];
        m = m + beta_full[c] * r;
    }
    return m;
}

std::optional<std::vector<FieldElement>> search_partition_alphas(const StoragePlan& plan,
                                                                 const ComponentPartition& partition,
                                                                 std::size_t target, SeededPrg& prg,
                                                                 std::size_t attempts) {
    partition.validate(plan.servers());
    std::vector<FieldElement> e;
    for (std::size_t k = 0; k < plan.dimension(); ++k)
        e.emplace_back(k == target ? 1 : 0, plan.field());
    for (std::size_t a = 0; a < attempts; ++a) {
        std::vector<FieldElement> alpha;
        alpha.reserve(plan.servers());
        for (std::size_t i = 0; i < plan.servers(); ++i) alpha.push_back(prg.next_element(plan.field()));
        FieldMatrix w = compressed_columns(plan, partition, alpha);
        FieldMatrix aug(plan.dimension(), partition.size() + 1, plan.field());
        for (std::size_t k = 0; k < plan.dimension(); ++k) {
            for (std::size_t c = 0; c < partition.size(); ++c) aug.set_raw(k, c, w.raw(k, c));
            aug.set_raw(k, partition.size(), e[k].value());
        }
        if (matgrid::rank(aug) == matgrid::rank(w)) return alpha;
    }
    return std::nullopt;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Saturating q^e.
std::uint64_t pow_sat(std::uint64_t q, std::size_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > cap / q) return cap + 1;
        r *= q;
    }
    return r;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool next_odometer(std::vector<std::uint64_t>& digits, std::uint64_t base) {
    for (auto& d : digits) {
        if (++d < base) return true;
        d = 0;
    }
    return false;
}

} // namespace

AuditVerdict secrecy_audit(const StoragePlan& plan, std::size_t x, std::uint64_t budget) {
    const std::size_t n = plan.servers();
    const std::size_t k = plan.dimension();
    const std::uint64_t q = plan.field().modulus();
    if (x == 0 || x > n) throw ConfigError("secrecy_audit: require 1 <= X <= N");

    const std::uint64_t subsets = binomial(n, x);
    const std::uint64_t randomness_rows = pow_sat(q, k - plan.rho, budget);
    AuditVerdict verdict;
    if (randomness_rows > budget || subsets > budget || randomness_rows > budget / std::max<std::uint64_t>(subsets, 1))
        throw BudgetExceeded("secrecy_audit: q^(K-rho) * C(N,X) exceeds the budget");
    verdict.enumeration_rows = randomness_rows * subsets;
    const std::uint64_t message_rows = pow_sat(q, plan.rho, budget);
    if (message_rows > budget || verdict.enumeration_rows > (16 * budget) / message_rows)
        throw BudgetExceeded("secrecy_audit: message enumeration exceeds the budget");

    // Rank condition: every X-subset of the lower rows has rank X.
    FieldMatrix lower = plan.lower_rows();
    verdict.rank_check = true;
    std::vector<std::size_t> combo(x);
    for (std::size_t i = 0; i < x; ++i) combo[i] = i;
    do {
        FieldMatrix sub(lower.rows(), x, plan.field());
        for (std::size_t r = 0; r < lower.rows(); ++r)
            for (std::size_t c = 0; c < x; ++c) sub.set_raw(r, c, lower.raw(r, combo[c]));
        if (matgrid::rank(sub) != x) {
            verdict.rank_check = false;
            break;
        }
    } while (next_combination(combo, n));

    // Exhaustive distribution identity.
    verdict.pass = true;
    for (std::size_t i = 0; i < x; ++i) combo[i] = i;
    do {
        std::optional<std::map<std::vector<std::uint64_t>, std::uint64_t>> reference;
        std::vector<std::uint64_t> message_digits(plan.rho, 0);
        bool subset_ok = true;
        do {
            std::vector<FieldElement> message;
            message.reserve(plan.rho);
            for (auto d : message_digits) message.emplace_back(d, plan.field());
            std::map<std::vector<std::uint64_t>, std::uint64_t> histogram;
            std::vector<std::uint64_t> rand_digits(k - plan.rho, 0);
            do {
                std::vector<FieldElement> s;
                s.reserve(rand_digits.size());
                for (auto d : rand_digits) s.emplace_back(d, plan.field());
                ShareVector y = share_with_randomness(plan, message, s);
                std::vector<std::uint64_t> view;
                view.reserve(x);
                for (std::size_t c : combo) view.push_back(y[c].value());
                ++histogram[view];
            } while (next_odometer(rand_digits, q));
            if (!reference) {
                reference = std::move(histogram);
            } else if (*reference != histogram) {
                subset_ok = false;
                break;
            }
        } while (next_odometer(message_digits, q));
        if (!subset_ok) {
            verdict.pass = false;
            verdict.failing_subset = combo;
            break;
        }
    } while (next_combination(combo, n));

    verdict.criteria_agree = (verdict.pass == verdict.rank_check);
    return verdict;
}

std::string AuditVerdict::to_json() const {
    std::ostringstream out;
    out << "{\"pass\":" << (pass ? "true" : "false");
    if (failing_subset) {
        out << ",\"failing_subset\":[";
        for (std::size_t i = 0; i < failing_subset->size(); ++i) {
            if (i) out << ',';
            out << (*failing_subset)[i];
        }
        out << ']';
    }
    out << ",\"rank_check\":" << (rank_check ? "true" : "false")
        << ",\"criteria_agree\":" << (criteria_agree ? "true" : "false")
        << ",\"enumeration_rows\":" << enumeration_rows << '}';
    return out.str();
}

} // namespace coopsdmm::secretshare
