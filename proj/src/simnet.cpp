#include "coopsdmm/simnet.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace coopsdmm::simnet {

CoopGraph CoopGraph::complete(std::size_t vertices) {
    CoopGraph g(vertices);
    for (std::size_t i = 0; i < vertices; ++i)
        for (std::size_t j = i + 1; j < vertices; ++j) g.add_edge(i, j);
    return g;
}

CoopGraph CoopGraph::from_groups(std::size_t vertices, std::span<const std::vector<std::size_t>> groups) {
    CoopGraph g(vertices);
    for (const auto& group : groups)
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j) g.add_edge(group[i], group[j]);
    return g;
}

void CoopGraph::add_edge(std::size_t a, std::size_t b) {
    if (a == b) throw ConfigError("coop graph: self-loops are not allowed");
    if (a >= n_ || b >= n_) throw ConfigError("coop graph: vertex out of range");
    edges_.insert({std::min(a, b), std::max(a, b)});
}

bool CoopGraph::has_edge(std::size_t a, std::size_t b) const {
    return edges_.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::size_t CoopGraph::max_component_size() const {
    auto parts = components(*this);
    std::size_t best = 0;
    for (const auto& c : parts.components) best = std::max(best, c.size());
    return best;
}

ComponentPartition components(const CoopGraph& g) {
    const std::size_t n = g.vertices();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.has_edge(i, j)) parent[find(i)] = find(j);
    std::map<std::size_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < n; ++i) buckets[find(i)].push_back(i);
    ComponentPartition out;
    std::vector<std::vector<std::size_t>> comps;
    for (auto& [root, members] : buckets) comps.push_back(std::move(members));
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    out.components = std::move(comps);
    return out;
}

StragglerModel StragglerModel::uniform(std::uint64_t seed, std::size_t servers) {
    StragglerModel m;
    field::SeededPrg prg(seed);
    m.latency_.resize(servers);
    for (auto& l : m.latency_) l = prg.next_u64();
    return m;
}

StragglerModel StragglerModel::in_index_order(std::size_t servers) {
    StragglerModel m;
    m.latency_.resize(servers);
    for (std::size_t i = 0; i < servers; ++i) m.latency_[i] = i;
    return m;
}

StragglerModel& StragglerModel::with_non_responders(std::vector<std::size_t> servers) {
    for (std::size_t s : servers) {
        if (s >= latency_.size()) throw ConfigError("straggler model: server out of range");
        non_responders_.insert(s);
    }
    return *this;
}

bool StragglerModel::responds(std::size_t server) const {
    return non_responders_.count(server) == 0;
}

std::vector<std::size_t> StragglerModel::response_order() const {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < latency_.size(); ++i)
        if (responds(i)) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        return latency_[a] != latency_[b] ? latency_[a] < latency_[b] : a < b;
    });
    return order;
}

std::vector<std::size_t> StragglerModel::fastest(std::size_t count) const {
    auto order = response_order();
    if (order.size() < count)
        throw InsufficientResponders("need " + std::to_string(count) + " responders, have " +
                                     std::to_string(order.size()));
    order.resize(count);
    return order;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
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

ProbeVerdict security_probe(const ProbeInstance& a, const ProbeInstance& b, std::size_t x,
                            std::uint64_t budget) {
    if (a.field != b.field || a.servers != b.servers || a.randomness_dim != b.randomness_dim)
        throw ConfigError("security_probe: instances must share field, servers and randomness shape");
    if (x == 0 || x > a.servers) throw ConfigError("security_probe: require 1 <= X <= N");
    const std::uint64_t q = a.field.modulus();

    std::uint64_t assignments = 1;
    for (std::size_t i = 0; i < a.randomness_dim; ++i) {
        if (assignments > budget / q) throw BudgetExceeded("security_probe: q^dim exceeds the budget");
        assignments *= q;
    }
    const std::uint64_t subsets = binomial(a.servers, x);
    if (subsets == 0 || assignments > budget / subsets)
        throw BudgetExceeded("security_probe: q^dim * C(N,X) exceeds the budget");

    ProbeVerdict verdict;
    verdict.rows = assignments * subsets;
    verdict.pass = true;

    std::vector<std::size_t> combo(x);
    for (std::size_t i = 0; i < x; ++i) combo[i] = i;
    do {
        std::map<std::vector<std::uint64_t>, std::int64_t> balance;
        for (int side = 0; side < 2; ++side) {
            const ProbeInstance& inst = side == 0 ? a : b;
            std::vector<std::uint64_t> digits(a.randomness_dim, 0);
            do {
                std::vector<std::uint64_t> joint;
                for (std::size_t server : combo) {
                    auto view = inst.view(digits, server);
                    joint.insert(joint.end(), view.begin(), view.end());
                }
                balance[joint] += side == 0 ? 1 : -1;
            } while (next_odometer(digits, q));
        }
        for (const auto& [view, count] : balance) {
            if (count != 0) {
                verdict.pass = false;
                verdict.witness_subset = combo;
                break;
            }
        }
        if (!verdict.pass) break;
    } while (next_combination(combo, a.servers));

    return verdict;
}

std::string ProbeVerdict::to_json() const {
    std::ostringstream out;
    out << "{\"pass\":" << (pass ? "true" : "false");
    if (witness_subset) {
        out << ",\"witness_subset\":[";
        for (std::size_t i = 0; i < witness_subset->size(); ++i) {
            if (i) out << ',';
            out << (*witness_subset)[i];
        }
        out << ']';
    }
    out << ",\"rows\":" << rows << '}';
    return out.str();
}

} // namespace coopsdmm::simnet
