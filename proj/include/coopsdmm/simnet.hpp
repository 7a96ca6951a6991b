#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>

#include "coopsdmm/secretshare.hpp"
#include "coopsdmm/transcript.hpp"

namespace coopsdmm::simnet {

using secretshare::ComponentPartition;

/// Undirected cooperation/collusion graph on the servers; no self-loops.
class CoopGraph {
public:
    explicit CoopGraph(std::size_t vertices) : n_(vertices) {}

    static CoopGraph empty(std::size_t vertices) { return CoopGraph(vertices); }
    static CoopGraph complete(std::size_t vertices);
    /// Cliques over the given vertex groups.
    static CoopGraph from_groups(std::size_t vertices, std::span<const std::vector<std::size_t>> groups);

    void add_edge(std::size_t a, std::size_t b);
    bool has_edge(std::size_t a, std::size_t b) const;
    std::size_t vertices() const { return n_; }

    /// Largest component size; the collusion parameter X of the graph.
    std::size_t max_component_size() const;

private:
    std::size_t n_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
};

/// Connected components in canonical order (by smallest member).
ComponentPartition components(const CoopGraph& g);

/// Seeded latency model with optional permanent non-responders. Latencies
/// are deterministic per seed; ties broken by server index.
class StragglerModel {
public:
    static StragglerModel uniform(std::uint64_t seed, std::size_t servers);
    /// Latency equal to the server index (responders in index order).
    static StragglerModel in_index_order(std::size_t servers);

    StragglerModel& with_non_responders(std::vector<std::size_t> servers);

    std::size_t servers() const { return latency_.size(); }
    bool responds(std::size_t server) const;
    /// Responding servers sorted by (latency, index).
    std::vector<std::size_t> response_order() const;
    /// The fastest `count` responders; throws InsufficientResponders.
    std::vector<std::size_t> fastest(std::size_t count) const;

private:
    StragglerModel() = default;
    std::vector<std::uint64_t> latency_;
    std::set<std::size_t> non_responders_;
};

/// One side of an indistinguishability experiment: the deterministic view
/// each server receives as a function of an exhaustively enumerated
/// randomness assignment (digits in [0, q)).
struct ProbeInstance {
    field::PrimeField field;
    std::size_t servers;
    std::size_t randomness_dim;
    std::function<std::vector<std::uint64_t>(std::span<const std::uint64_t>, std::size_t)> view;
};

struct ProbeVerdict {
    bool pass = false;
    std::optional<std::vector<std::size_t>> witness_subset;
    std::uint64_t rows = 0; // q^dim * C(N, X)
    std::string to_json() const;
};

/// Exhaustive X-collusion probe: for every X-subset the multiset of joint
/// views over all randomness must be identical between the two instances.
ProbeVerdict security_probe(const ProbeInstance& a, const ProbeInstance& b, std::size_t x,
                            std::uint64_t budget = 10'000'000);

} // namespace coopsdmm::simnet
